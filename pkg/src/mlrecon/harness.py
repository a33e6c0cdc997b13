"""Monte Carlo experiments for two-trace reconstruction.

Each trial draws a word, passes it twice through the channel, decodes, and
records the Levenshtein distance of the estimate together with ground-truth
event counts.  Per-trial generators are derived from
``(master_seed, p_index, trial_index)``, and all aggregates are integer
sums, so results do not depend on how trials are split across workers.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from typing import Sequence

import numpy as np

from . import _kernels as K
from . import analytic
from .channels import transmit_array
from .codes import SVTCode, VTCode, sample_codeword_array
from .mldecode import Status, TieRule, decode_arrays, two_step_decode_arrays
from .seqcore import Word, is_two_symbol_alternation, run_decompose
from .subseq import DEFAULT_CAP

CHANNELS = ("del", "ins")
SOURCES = ("space", "code")
LENGTH_RULES = ("auto", "fixed", "free")
CODE_DECODERS = ("filter", "two_step")

CSV_COLUMNS = (
    "p", "trials", "lev_error_rate", "lev_error_stderr", "failure_rate",
    "failure_stderr", "run_event_rate", "alt_event_rate", "other_event_rate",
    "overflow_count", "pred_perr", "pred_success", "pred_success_vt",
    "pred_success_svt",
)

_CHUNK = 2000


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    channel: str = "del"
    q: int = 2
    n: int = 450
    p_grid: tuple[float, ...] = (0.01,)
    trials: int = 200_000
    code: VTCode | SVTCode | None = None
    tie: TieRule = TieRule.UNIFORM_RANDOM
    master_seed: int = 0
    source: str = "space"
    length_rule: str = "auto"
    code_decoder: str = "filter"
    cap: int = DEFAULT_CAP
    workers: int = 1

    def __post_init__(self):
        if self.channel not in CHANNELS:
            raise ConfigError(f"channel must be one of {CHANNELS}")
        if self.q < 2:
            raise ConfigError("q must be >= 2")
        if self.n < 1:
            raise ConfigError("n must be >= 1")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if not self.p_grid:
            raise ConfigError("p grid is empty")
        for p in self.p_grid:
            if not 0.0 <= p < 1.0:
                raise ConfigError(f"p must lie in [0, 1), got {p}")
        if self.source not in SOURCES:
            raise ConfigError(f"source must be one of {SOURCES}")
        if self.source == "code" and self.code is None:
            raise ConfigError("codeword source requires a code")
        if self.code is not None:
            if self.q != 2:
                raise ConfigError("VT/SVT codes are binary")
            if self.code.n != self.n:
                raise ConfigError(f"code length {self.code.n} differs from n={self.n}")
        if self.length_rule not in LENGTH_RULES:
            raise ConfigError(f"length rule must be one of {LENGTH_RULES}")
        if self.code_decoder not in CODE_DECODERS:
            raise ConfigError(f"code decoder must be one of {CODE_DECODERS}")
        if self.code_decoder == "two_step" and self.channel != "del":
            raise ConfigError("the two-step code decoder is defined for deletions only")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")

    @property
    def free_length(self) -> bool:
        if self.length_rule == "auto":
            return self.code is None
        return self.length_rule == "free"


@dataclass(frozen=True)
class TrialRecord:
    transmitted: Word
    traces: tuple[Word, ...]
    status: Status
    chosen: Word | None
    levenshtein: int
    event_class: str
    run_pairs: int = 0
    alt_pairs: int = 0


@dataclass
class Tally:
    """Integer counters; merging is plain addition."""

    trials: int = 0
    lev_sum: int = 0
    lev_sq: int = 0
    failures: int = 0
    strict_failures: int = 0
    run_pairs: int = 0
    run_sq: int = 0
    alt_pairs: int = 0
    alt_sq: int = 0
    other: int = 0
    overflow: int = 0
    no_candidate: int = 0

    def __iadd__(self, other: "Tally") -> "Tally":
        for f in fields(self):
            setattr(self, f.name, getattr(self, f.name) + getattr(other, f.name))
        return self


@dataclass(frozen=True)
class SummaryRow:
    p: float
    trials: int
    lev_error_rate: float
    lev_error_stderr: float
    failure_rate: float
    failure_stderr: float
    run_event_rate: float
    alt_event_rate: float
    other_event_rate: float
    overflow_count: int
    pred_perr: float
    pred_success: float
    pred_success_vt: float | None
    pred_success_svt: float | None
    extra: dict = field(default_factory=dict)

    @property
    def success_rate(self) -> float:
        return 1.0 - self.failure_rate


def trial_rng(master_seed: int, p_index: int, trial_index: int) -> np.random.Generator:
    ss = np.random.SeedSequence(master_seed, spawn_key=(p_index, trial_index))
    return np.random.Generator(np.random.PCG64(ss))


def classify_event(x: Word, del_positions_1: Sequence[int], del_positions_2: Sequence[int]) -> str:
    """Event class of a deletion pattern with at most one deletion per trace.

    Returns ``"none"``, ``"run"``, ``"alternating"`` or ``"other"``; any
    pattern that is not exactly one deletion in each trace (besides the
    error-free one) is ``"other"``.
    """
    d1, d2 = list(del_positions_1), list(del_positions_2)
    if not d1 and not d2:
        return "none"
    if len(d1) != 1 or len(d2) != 1:
        return "other"
    lo, hi = sorted((d1[0], d2[0]))
    if not 0 <= lo <= hi < len(x):
        raise IndexError("deletion position outside the word")
    for run in run_decompose(x):
        if run.start <= lo and hi < run.start + run.length:
            return "run"
    if is_two_symbol_alternation(x[lo:hi + 1]):
        return "alternating"
    return "other"


def _source_word(cfg: ExperimentConfig, rng) -> np.ndarray:
    if cfg.source == "code":
        return sample_codeword_array(cfg.code, rng)
    return rng.integers(0, cfg.q, size=cfg.n, dtype=np.int8)


def _one_trial(cfg: ExperimentConfig, p: float, rng):
    """Array-level trial: returns (x, traces, raw decode, d_L, runs, alts, any_event)."""
    x = _source_word(cfg, rng)
    deletion = cfg.channel == "del"
    family = "deletion" if deletion else "insertion"
    y1, pos1, s1 = transmit_array(x, family, p, cfg.q, rng)
    y2, pos2, s2 = transmit_array(x, family, p, cfg.q, rng)
    if cfg.code is not None and cfg.code_decoder == "two_step":
        raw = two_step_decode_arrays([y1, y2], cfg.n, cfg.code, tie=cfg.tie,
                                     cap=cfg.cap, rng=rng)
    else:
        raw = decode_arrays([y1, y2], cfg.n, cfg.q, deletion=deletion, code=cfg.code,
                            tie=cfg.tie, cap=cfg.cap, rng=rng, free=cfg.free_length)
    if raw.chosen is None:
        dist = cfg.n
    else:
        c = raw.chosen
        dist = x.shape[0] + c.shape[0] - 2 * int(K.lcs_length(x, c))
    if deletion:
        runs, alts = K.count_deletion_events(x, pos1, pos2)
    else:
        runs, alts = K.count_insertion_events(x, pos1.astype(np.int64), s1,
                                              pos2.astype(np.int64), s2)
    any_event = pos1.shape[0] > 0 or pos2.shape[0] > 0
    return x, (y1, y2), raw, dist, int(runs), int(alts), any_event


def _event_class(runs: int, alts: int, any_event: bool) -> str:
    if runs:
        return "run"
    if alts:
        return "alternating"
    return "other" if any_event else "none"


def run_trial(cfg: ExperimentConfig, p_index: int, trial_index: int) -> TrialRecord:
    p = cfg.p_grid[p_index]
    rng = trial_rng(cfg.master_seed, p_index, trial_index)
    x, ys, raw, dist, runs, alts, any_event = _one_trial(cfg, p, rng)
    q = cfg.q
    return TrialRecord(
        Word.from_array(x, q), tuple(Word.from_array(y, q) for y in ys), raw.status,
        Word.from_array(raw.chosen, q) if raw.chosen is not None else None,
        dist, _event_class(runs, alts, any_event), runs, alts)


def _run_chunk(cfg: ExperimentConfig, p_index: int, start: int, stop: int) -> Tally:
    p = cfg.p_grid[p_index]
    t = Tally()
    for ti in range(start, stop):
        rng = trial_rng(cfg.master_seed, p_index, ti)
        x, _, raw, dist, runs, alts, _ = _one_trial(cfg, p, rng)
        correct = raw.chosen is not None and dist == 0
        t.trials += 1
        t.lev_sum += dist
        t.lev_sq += dist * dist
        t.failures += not correct
        t.strict_failures += not (correct and raw.status is Status.OK)
        t.run_pairs += runs
        t.run_sq += runs * runs
        t.alt_pairs += alts
        t.alt_sq += alts * alts
        t.other += (not correct) and runs == 0 and alts == 0
        t.overflow += raw.status is Status.CANDIDATE_OVERFLOW
        t.no_candidate += raw.status is Status.NO_CANDIDATE
    return t


def _run_chunk_star(args) -> Tally:
    return _run_chunk(*args)


def _mean_stderr(total: int, sq: int, count: int, scale: float) -> tuple[float, float]:
    """Mean and standard error of per-trial values, divided by ``scale``."""
    mean = total / count
    if count < 2:
        return mean / scale, 0.0
    var = max(sq - total * total / count, 0.0) / (count - 1)
    return mean / scale, math.sqrt(var / count) / scale


def summarize(cfg: ExperimentConfig, p: float, t: Tally) -> SummaryRow:
    n, q = cfg.n, cfg.q
    lev, lev_se = _mean_stderr(t.lev_sum, t.lev_sq, t.trials, n)
    run_rate, run_se = _mean_stderr(t.run_pairs, t.run_sq, t.trials, n)
    alt_rate, alt_se = _mean_stderr(t.alt_pairs, t.alt_sq, t.trials, n)
    fail = t.failures / t.trials
    strict = t.strict_failures / t.trials
    extra = {
        "run_event_stderr": run_se,
        "alt_event_stderr": alt_se,
        "no_candidate_count": t.no_candidate,
        "strict_failure_rate": strict,
        "strict_failure_stderr": math.sqrt(strict * (1 - strict) / t.trials),
    }
    if cfg.channel == "del":
        pred_perr = analytic.p_err_two_del(q, p)
        pred_success = analytic.success_two_del(q, p, n)
        pred_vt = analytic.success_vt(q, p, n)
        pred_svt = analytic.success_svt(q, p, n)
        extra["pred_run"] = analytic.p_run_del(q, p)
        extra["pred_alt"] = analytic.p_alt_del(q, p)
    else:
        pred_perr = analytic.p_err_two_ins(q, p)
        pred_success = analytic.success_two_ins(q, p, n)
        pred_vt = pred_svt = None
        extra["pred_run"] = analytic.p_run_ins(q, p)
        extra["pred_alt"] = analytic.p_alt_ins(q, p)
        extra["pred_success_ins_sum"] = analytic.success_two_ins_sum(q, p, n)
    return SummaryRow(
        p=p, trials=t.trials, lev_error_rate=lev, lev_error_stderr=lev_se,
        failure_rate=fail, failure_stderr=math.sqrt(fail * (1 - fail) / t.trials),
        run_event_rate=run_rate, alt_event_rate=alt_rate,
        other_event_rate=t.other / t.trials, overflow_count=t.overflow,
        pred_perr=pred_perr, pred_success=pred_success,
        pred_success_vt=pred_vt, pred_success_svt=pred_svt, extra=extra)


def run_tallies(cfg: ExperimentConfig) -> list[Tally]:
    jobs = [(cfg, pi, s, min(s + _CHUNK, cfg.trials))
            for pi in range(len(cfg.p_grid)) for s in range(0, cfg.trials, _CHUNK)]
    tallies = [Tally() for _ in cfg.p_grid]
    if cfg.workers == 1:
        results = map(_run_chunk_star, jobs)
        for job, t in zip(jobs, results):
            tallies[job[1]] += t
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            for job, t in zip(jobs, pool.map(_run_chunk_star, jobs)):
                tallies[job[1]] += t
    return tallies


def run_experiment(cfg: ExperimentConfig) -> list[SummaryRow]:
    tallies = run_tallies(cfg)
    rows = [summarize(cfg, p, t) for p, t in zip(cfg.p_grid, tallies)]
    return sorted(rows, key=lambda r: r.p)


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def row_dict(row: SummaryRow) -> dict:
    return {c: getattr(row, c) for c in CSV_COLUMNS}


def to_csv(rows: Sequence[SummaryRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in sorted(rows, key=lambda r: r.p):
        w.writerow([_cell(getattr(r, c)) for c in CSV_COLUMNS])
    return buf.getvalue()


def to_json(rows: Sequence[SummaryRow]) -> str:
    out = []
    for r in sorted(rows, key=lambda r: r.p):
        d = row_dict(r)
        d.update(r.extra)
        out.append(d)
    return json.dumps(out, indent=2)


def emit(rows: Sequence[SummaryRow], fmt: str = "csv", path=None) -> str:
    """Serialise rows as CSV or JSON; writes to ``path`` when given."""
    if fmt == "csv":
        text = to_csv(rows)
    elif fmt == "json":
        text = to_json(rows)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text


def read_csv(text: str) -> list[dict]:
    """Parse emitted CSV back into dicts of numbers (``None`` for blanks)."""
    rows = []
    for rec in csv.DictReader(io.StringIO(text)):
        d = {}
        for k, v in rec.items():
            if v == "":
                d[k] = None
            elif k in ("trials", "overflow_count"):
                d[k] = int(v)
            else:
                d[k] = float(v)
        rows.append(d)
    return rows
