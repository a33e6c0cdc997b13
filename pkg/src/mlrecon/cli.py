"""Command-line interface: ``mlrecon <command> ...``."""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import analytic, oracle
from .channels import ChannelSpec
from .codes import SVTCode, VTCode, default_svt_window, enumerate_codewords
from .harness import ConfigError, ExperimentConfig, emit, run_experiment
from .mldecode import TieRule, ml_decode_deletion, ml_decode_insertion
from .seqcore import Word
from .subseq import (EmptyCandidateSet, embedding_number, enumerate_common_subsequences,
                     enumerate_common_supersequences, lcs_length, scs_length)

TIE_NAMES = {"random": TieRule.UNIFORM_RANDOM, "lex": TieRule.LEXICOGRAPHIC_MIN}


def _word(text: str, q: int) -> Word:
    return Word.parse(text, q)


def _build_code(args, n: int):
    kind = getattr(args, "code", "none")
    if kind == "none":
        return None
    if kind == "vt":
        return VTCode(n, args.vt_a)
    window = args.svt_p if args.svt_p is not None else default_svt_window(n)
    return SVTCode(n, args.svt_a, args.svt_b, window)


def _add_code_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--code", choices=("none", "vt", "svt"), default="none")
    p.add_argument("--vt-a", type=int, default=0)
    p.add_argument("--svt-a", type=int, default=0)
    p.add_argument("--svt-b", type=int, default=0)
    p.add_argument("--svt-p", type=int, default=None,
                   help="SVT window parameter (default ceil(log2 n) + 2)")


def cmd_emb(args) -> int:
    print(embedding_number(_word(args.x, args.q), _word(args.y, args.q)))
    return 0


def cmd_scs(args) -> int:
    y1, y2 = _word(args.y1, args.q), _word(args.y2, args.q)
    if args.enumerate is None:
        print(scs_length(y1, y2))
        return 0
    try:
        cs = enumerate_common_supersequences(y1, y2, args.enumerate, args.cap)
    except EmptyCandidateSet as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    for w in cs:
        print(w)
    if cs.truncated:
        print("# truncated", file=sys.stderr)
    return 0


def cmd_lcs(args) -> int:
    y1, y2 = _word(args.y1, args.q), _word(args.y2, args.q)
    if args.enumerate is None:
        print(lcs_length(y1, y2))
        return 0
    cs = enumerate_common_subsequences(y1, y2, args.enumerate, args.cap)
    for w in cs:
        print(w)
    if cs.truncated:
        print("# truncated", file=sys.stderr)
    return 0


def _read_traces(path: str, q: int) -> list[Word]:
    with open(path, encoding="utf-8") as fh:
        return [_word(line.strip(), q) for line in fh if line.strip() and not line.startswith("#")]


def cmd_decode(args) -> int:
    traces = _read_traces(args.traces, args.q)
    code = _build_code(args, args.n)
    rng = np.random.default_rng(args.seed)
    fn = ml_decode_deletion if args.channel == "del" else ml_decode_insertion
    res = fn(traces, args.n, code=code, tie=TIE_NAMES[args.tie], cap=args.cap, rng=rng,
             free=args.free_length)
    print(f"chosen: {res.chosen if res.chosen is not None else '-'}")
    print(f"status: {res.status.value}")
    print(f"tie_size: {res.tie_size}")
    print(f"candidates: {len(res.candidates)}")
    if args.list:
        for w, s in zip(res.candidates, res.scores):
            print(f"{w}\t{s}")
    return 0


def cmd_code_list(args) -> int:
    code = VTCode(args.n, args.a) if args.type == "vt" else SVTCode(
        args.n, args.a, args.b, args.p_window if args.p_window is not None
        else default_svt_window(args.n))
    for w in enumerate_codewords(code):
        print(w)
    return 0


def cmd_analyze(args) -> int:
    fn = analytic.FORMULAS[args.formula]
    if args.sweep:
        grid = np.linspace(args.p_min, args.p_max, args.p_steps)
        print("p,value")
        for p in grid:
            print(f"{float(p)!r},{fn(args.q, float(p), args.n, args.t)!r}")
        return 0
    v = fn(args.q, args.p, args.n, args.t)
    if args.formula in analytic.SUCCESS_FORMULAS:
        print(f"success: {v!r}")
        print(f"failure: {1 - v!r}")
    else:
        print(repr(v))
    return 0


def _p_grid(args) -> tuple[float, ...]:
    if args.p_list:
        return tuple(float(v) for v in args.p_list.split(","))
    if args.p_steps < 1:
        raise ConfigError("--p-steps must be >= 1")
    if args.p_steps == 1:
        return (args.p_min,)
    return tuple(float(v) for v in np.linspace(args.p_min, args.p_max, args.p_steps))


def cmd_simulate(args) -> int:
    code = _build_code(args, args.n)
    cfg = ExperimentConfig(
        channel=args.channel, q=args.q, n=args.n, p_grid=_p_grid(args),
        trials=args.trials, code=code, tie=TIE_NAMES[args.tie], master_seed=args.seed,
        source=args.source, length_rule=args.length,
        code_decoder=args.code_decoder.replace("-", "_"), cap=args.cap,
        workers=args.workers)
    rows = run_experiment(cfg)
    text = emit(rows, args.format, args.out)
    if args.out is None:
        sys.stdout.write(text)
    return 0


def cmd_oracle(args) -> int:
    q = args.q
    if args.op == "emb":
        print(oracle.embedding_by_enumeration(_word(args.words[0], q), _word(args.words[1], q)))
    elif args.op == "scs":
        y1, y2 = _word(args.words[0], q), _word(args.words[1], q)
        for w in sorted(oracle.supersequences_by_scan(y1, y2, args.length)):
            print(w)
    else:
        spec = ChannelSpec("deletion" if args.channel == "del" else "insertion", args.p, q)
        traces = [_word(t, q) for t in args.words]
        for w, prob in oracle.bayes_ml_by_scan(traces, args.length, q, spec):
            print(f"{w}\t{float(prob)!r}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mlrecon", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("emb", help="embedding number Emb(x; y)")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--q", type=int, default=2)
    p.set_defaults(func=cmd_emb)

    for name, func in (("scs", cmd_scs), ("lcs", cmd_lcs)):
        p = sub.add_parser(name, help=f"{name.upper()} length or fixed-length enumeration")
        p.add_argument("y1")
        p.add_argument("y2")
        p.add_argument("--q", type=int, default=2)
        p.add_argument("--enumerate", type=int, metavar="L", default=None)
        p.add_argument("--cap", type=int, default=1_000_000)
        p.set_defaults(func=func)

    p = sub.add_parser("decode", help="ML decode traces read from a file")
    p.add_argument("--channel", choices=("del", "ins"), default="del")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, default=2)
    _add_code_args(p)
    p.add_argument("--tie", choices=tuple(TIE_NAMES), default="lex")
    p.add_argument("--traces", required=True)
    p.add_argument("--cap", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--free-length", action="store_true",
                   help="allow outputs shorter (del) or longer (ins) than n")
    p.add_argument("--list", action="store_true", help="also print every candidate and score")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("code", help="code utilities")
    csub = p.add_subparsers(dest="code_command", required=True)
    c = csub.add_parser("list", help="list codewords (n <= 28)")
    c.add_argument("--type", choices=("vt", "svt"), required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--a", type=int, default=0)
    c.add_argument("--b", type=int, default=0)
    c.add_argument("--p-window", type=int, default=None)
    c.set_defaults(func=cmd_code_list)

    p = sub.add_parser("analyze", help="evaluate a closed-form expression")
    p.add_argument("--formula", choices=tuple(analytic.FORMULAS), required=True)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--p", type=float, default=0.01)
    p.add_argument("--n", type=int, default=450)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--sweep", action="store_true", help="CSV over a p grid")
    p.add_argument("--p-min", type=float, default=0.005)
    p.add_argument("--p-max", type=float, default=0.05)
    p.add_argument("--p-steps", type=int, default=10)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("simulate", help="Monte Carlo experiment")
    p.add_argument("--channel", choices=("del", "ins"), default="del")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--n", type=int, default=450)
    p.add_argument("--p-min", type=float, default=0.005)
    p.add_argument("--p-max", type=float, default=0.05)
    p.add_argument("--p-steps", type=int, default=10)
    p.add_argument("--p-list", default=None, help="comma-separated p values (overrides the range)")
    p.add_argument("--trials", type=int, default=200_000)
    _add_code_args(p)
    p.add_argument("--source", choices=("space", "code"), default="space")
    p.add_argument("--tie", choices=tuple(TIE_NAMES), default="random")
    p.add_argument("--length", choices=("auto", "fixed", "free"), default="auto",
                   help="candidate length rule (auto: free without a code, fixed with one)")
    p.add_argument("--code-decoder", choices=("filter", "two-step"), default="filter")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--cap", type=int, default=1_000_000)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("oracle", help="brute-force reference computations")
    p.add_argument("op", choices=("emb", "scs", "bayes"))
    p.add_argument("words", nargs="+")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--length", type=int, default=None, help="L for scs, n for bayes")
    p.add_argument("--channel", choices=("del", "ins"), default="del")
    p.add_argument("--p", type=float, default=0.1)
    p.set_defaults(func=cmd_oracle)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "oracle" and args.op != "emb" and args.length is None:
        ap.error("--length is required for oracle scs/bayes")
    try:
        return args.func(args)
    except (ConfigError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
