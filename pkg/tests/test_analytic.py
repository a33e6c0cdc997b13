import math

import numpy as np
import pytest

from mlrecon import analytic as A

TOL = 1e-12


def close(a, b):
    return abs(a - b) <= TOL * max(1.0, abs(b))


def test_deletion_rates():
    assert close(A.p_run_del(2, 0.01), 3e-4)
    assert close(A.p_run_del(4, 0.02), 5 / 3 * 4e-4)
    assert A.p_run_del(3, 0.0) == 0.0
    assert close(A.p_alt_del(2, 0.01), 2e-4)
    assert close(A.p_alt_del(4, 0.05), 5e-3)
    assert close(A.p_err_two_del(2, 0.01), 5e-4)
    assert close(A.p_err_two_del(4, 0.02), 11 / 3 * 4e-4)
    with pytest.raises(ValueError):
        A.p_run_del(1, 0.1)


def test_deletion_success():
    assert close(A.success_two_del(2, 0.01, 450), math.exp(-0.225))
    assert close(A.success_two_del(2, 0.02, 450), math.exp(-0.9))
    assert A.success_two_del(2, 0.0, 450) == 1.0
    assert close(A.failure_two_del(2, 0.01, 450), 1 - math.exp(-0.225))
    r, a = 3e-4, 2e-4
    svt = (1 - r) ** 450 * (1 - a) ** 450 + (1 - r) ** 450 * 450 * a * (1 - a) ** 449
    assert close(A.success_svt(2, 0.01, 450), svt)
    assert close(A.success_vt(2, 0.01, 450), svt + 450 * r * (1 - r) ** 449 * (1 - a) ** 450)
    assert A.success_vt(2, 0.0, 450) == 1.0 and A.success_svt(2, 0.0, 450) == 1.0


def test_insertion_rates():
    assert close(A.p_err_two_ins(2, 0.02), 1e-3)
    assert close(A.p_run_ins(2, 0.02), 1.5 * 4e-4)
    assert close(A.p_alt_ins(2, 0.02), 4e-4)
    assert close(A.success_two_ins(2, 0.01, 500), math.exp(-0.1))
    assert close(A.success_two_ins_sum(2, 0.01, 500), math.exp(-0.125))
    for f in (A.p_run_ins, A.p_alt_ins, A.p_err_two_ins):
        assert f(3, 0.0) == 0.0
    for p in np.linspace(0, 0.1, 11):
        assert close(A.p_run_ins(2, p) + A.p_alt_ins(2, p), A.p_err_two_ins(2, p))


def test_substitution_channels():
    assert close(A.z_err(0.1, 2), 0.01)
    assert close(A.bsc_err(0.1, 3), 0.028)
    assert A.z_fail(0.0, 3, 100) == 0.0
    with pytest.raises(ValueError):
        A.bsc_err(0.1, 2)
    for p in np.linspace(0, 0.5, 11):
        for t in (1, 2, 3):
            assert close(A.z_fail(p, t, 50), 1 - (1 - A.z_err(p, t)) ** 50)
        assert close(A.bsc_fail(p, 3, 50), 1 - (1 - A.bsc_err(p, 3)) ** 50)


def test_capacity():
    assert A.bsc_capacity_t(0.0, 1) == 1.0
    assert A.bsc_capacity_t(0.0, 4) == 1.0
    assert abs(A.bsc_capacity_t(0.5, 1)) < TOL
    assert abs(A.bsc_capacity_t(0.11, 1) - 0.5) < 5e-4
    for p in np.linspace(0.01, 0.99, 99):
        assert abs(A.bsc_capacity_t(p, 1) - (1 - A.binary_entropy(p))) < TOL
    # more copies never hurt
    for p in (0.05, 0.2, 0.4):
        caps = [A.bsc_capacity_t(p, t) for t in range(1, 6)]
        assert all(b >= a - TOL for a, b in zip(caps, caps[1:]))


@pytest.mark.parametrize("q", range(2, 65))
def test_error_rate_is_sum_of_components(q):
    for p in np.linspace(0, 0.1, 21):
        assert close(A.p_err_two_del(q, p), A.p_run_del(q, p) + A.p_alt_del(q, p))


def test_success_monotone_and_bounded():
    ps = np.linspace(0, 0.1, 41)
    ns = [1, 10, 100, 450, 1000, 2000]
    for q in (2, 4):
        for f in (A.success_two_del, A.success_vt, A.success_svt, A.success_two_ins,
                  A.success_two_ins_sum):
            grid = np.array([[f(q, p, n) for n in ns] for p in ps])
            assert ((grid >= 0) & (grid <= 1)).all()
            assert (np.diff(grid, axis=0) <= TOL).all()
            assert (np.diff(grid, axis=1) <= TOL).all()


def test_code_dominance():
    for q in (2, 3, 4):
        for p in np.linspace(0.001, 0.05, 25):
            for n in (10, 100, 450, 1000):
                assert A.success_vt(q, p, n) >= A.success_svt(q, p, n) >= A.success_two_del(q, p, n)


def test_params_validation():
    A.ApproxParams(q=4, p=0.01, n=450, t=2)
    with pytest.raises(ValueError):
        A.ApproxParams(q=1)
    with pytest.raises(ValueError):
        A.ApproxParams(p=1.0)
