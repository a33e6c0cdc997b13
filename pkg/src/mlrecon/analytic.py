"""Closed-form error approximations for two-trace ML reconstruction.

Per-symbol event rates are second order in p.  The exponential "success"
expressions give the probability that no uncorrectable event occurs in a
word of length n; the matching failure probability is ``1 - success``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class ApproxParams:
    q: int = 2
    p: float = 0.0
    n: int = 1
    t: int = 2

    def __post_init__(self):
        if self.q < 2:
            raise ValueError("q must be >= 2")
        if not 0.0 <= self.p < 1.0:
            raise ValueError("p must lie in [0, 1)")
        if self.n < 1 or self.t < 1:
            raise ValueError("n and t must be >= 1")


def _check_q(q: int) -> None:
    if q < 2:
        raise ValueError("q must be >= 2")


# deletion, two traces

def p_run_del(q: int, p: float) -> float:
    _check_q(q)
    return (q + 1) / (q - 1) * p * p


def p_alt_del(q: int, p: float) -> float:
    _check_q(q)
    return 2 * p * p


def p_err_two_del(q: int, p: float) -> float:
    _check_q(q)
    return (3 * q - 1) / (q - 1) * p * p


def success_two_del(q: int, p: float, n: int) -> float:
    return math.exp(-p_err_two_del(q, p) * n)


def failure_two_del(q: int, p: float, n: int) -> float:
    return 1.0 - success_two_del(q, p, n)


def success_svt(q: int, p: float, n: int) -> float:
    """No run event, and at most one alternating event."""
    r, a = p_run_del(q, p), p_alt_del(q, p)
    return (1 - r) ** n * (1 - a) ** n + (1 - r) ** n * n * a * (1 - a) ** (n - 1)


def success_vt(q: int, p: float, n: int) -> float:
    """As SVT, plus the case of exactly one run event and no alternation."""
    r, a = p_run_del(q, p), p_alt_del(q, p)
    return success_svt(q, p, n) + n * r * (1 - r) ** (n - 1) * (1 - a) ** n


# insertion, two traces

def p_run_ins(q: int, p: float) -> float:
    _check_q(q)
    return (q + 1) / (q * (q - 1)) * p * p


def p_alt_ins(q: int, p: float) -> float:
    _check_q(q)
    return 2 / q * p * p


def p_err_two_ins(q: int, p: float) -> float:
    _check_q(q)
    return (3 * q - 1) / (q * (q - 1)) * p * p


def success_two_ins(q: int, p: float, n: int) -> float:
    """exp(-2/(q-1) p^2 n), the stated insertion exponent."""
    _check_q(q)
    return math.exp(-2 / (q - 1) * p * p * n)


def success_two_ins_sum(q: int, p: float, n: int) -> float:
    """Variant whose exponent is the sum of the run and alternation rates."""
    return math.exp(-p_err_two_ins(q, p) * n)


# substitution channels

def z_err(p: float, t: int) -> float:
    if t < 1:
        raise ValueError("t must be >= 1")
    return p ** t


def _check_odd(t: int) -> None:
    if t < 1 or t % 2 == 0:
        raise ValueError("BSC majority formulas need odd t")


def bsc_err(p: float, t: int) -> float:
    """Majority vote over t copies is wrong."""
    _check_odd(t)
    return sum(math.comb(t, i) * p ** (t - i) * (1 - p) ** i for i in range((t - 1) // 2 + 1))


def z_fail(p: float, t: int, n: int) -> float:
    return 1 - (1 - z_err(p, t)) ** n


def bsc_fail(p: float, t: int, n: int) -> float:
    return 1 - (1 - bsc_err(p, t)) ** n


def binary_entropy(p: float) -> float:
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def _xlog2(a: float, b: float) -> float:
    """a * log2(b) with 0 * log(0) = 0."""
    return 0.0 if a == 0.0 else a * math.log2(b)


def bsc_capacity_t(p: float, t: int) -> float:
    """Capacity of t parallel BSC(p) copies read jointly.

    Sums over the number i of copies that flipped the bit; an output
    pattern with i flips has probability p^i (1-p)^(t-i) + p^(t-i) (1-p)^i.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    total = 1.0
    for i in range(t + 1):
        a = p ** i * (1 - p) ** (t - i)
        b = p ** (t - i) * (1 - p) ** i
        total += math.comb(t, i) * (_xlog2(a, a) - _xlog2(a, a + b))
    return total


FORMULAS = {
    "perr-del": lambda q, p, n, t: p_err_two_del(q, p),
    "prun-del": lambda q, p, n, t: p_run_del(q, p),
    "palt-del": lambda q, p, n, t: p_alt_del(q, p),
    "success-del": lambda q, p, n, t: success_two_del(q, p, n),
    "success-vt": lambda q, p, n, t: success_vt(q, p, n),
    "success-svt": lambda q, p, n, t: success_svt(q, p, n),
    "perr-ins": lambda q, p, n, t: p_err_two_ins(q, p),
    "prun-ins": lambda q, p, n, t: p_run_ins(q, p),
    "palt-ins": lambda q, p, n, t: p_alt_ins(q, p),
    "success-ins": lambda q, p, n, t: success_two_ins(q, p, n),
    "success-ins-sum": lambda q, p, n, t: success_two_ins_sum(q, p, n),
    "z-err": lambda q, p, n, t: z_err(p, t),
    "bsc-err": lambda q, p, n, t: bsc_err(p, t),
    "z-fail": lambda q, p, n, t: z_fail(p, t, n),
    "bsc-fail": lambda q, p, n, t: bsc_fail(p, t, n),
    "capacity": lambda q, p, n, t: bsc_capacity_t(p, t),
}

# formulas whose value is a success probability; the CLI also prints 1 - value
SUCCESS_FORMULAS = {"success-del", "success-vt", "success-svt", "success-ins", "success-ins-sum"}
