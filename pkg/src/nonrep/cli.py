"""Command-line entry point: ``nonrep <command> ...``.

Exit codes: 0 success/PASS, 1 verification failure or exceeded budget,
2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bench, bounds, geometry, logcodec, search
from .checker import is_nonrepetitive
from .core import DifferenceSet, ListAssignment, NonrepError, PartialSequence, default_list_size
from .generator import BudgetExceeded, ExecutionTrace, GeneratorConfig, generate

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _diffs(args) -> DifferenceSet:
    if args.diffs is not None:
        return DifferenceSet.parse(args.diffs)
    return DifferenceSet.up_to(args.k)


def _add_diffs(p, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--k", type=int, help="use differences 1..k")
    g.add_argument("--diffs", help="comma-separated differences")


def _read(path):
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path) as fp:
        return fp.read()


def _emit(args, payload: dict, text: str):
    print(json.dumps(payload) if args.json else text)


def cmd_generate(args):
    K = _diffs(args)
    if args.lists:
        lists = ListAssignment.from_json(_read(args.lists))
    else:
        lists = ListAssignment.uniform(args.n, args.list_size or default_list_size(K.k))
    cfg = GeneratorConfig(args.n, K, lists, args.seed, args.max_choices)
    if args.save_config:
        with open(args.save_config, "w") as fp:
            json.dump(cfg.to_dict(), fp)
    try:
        seq, trace = generate(cfg)
    except BudgetExceeded as exc:
        print(f"FAIL: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.trace:
        with open(args.trace, "w") as fp:
            trace.dump(fp, cfg)
    _emit(args, {"sequence": seq.snapshot(), "M": trace.M}, seq.to_text())
    return EXIT_OK


def cmd_verify(args):
    K = _diffs(args)
    seq = PartialSequence.from_text(_read(args.input))
    report = is_nonrepetitive(seq, K, exhaustive=args.exhaustive)
    payload = {"pass": report.nonrepetitive,
               "witnesses": [[w.first, w.d, w.h] for w in report.witnesses]}
    if report.nonrepetitive:
        _emit(args, payload, "PASS")
        return EXIT_OK
    lines = [str(w) for w in report.witnesses]
    _emit(args, payload, "\n".join(lines))
    return EXIT_FAIL


def cmd_search(args):
    K = _diffs(args)
    result = search.longest_sequence(
        args.q, K, args.cap, budget=args.budget, checkpoint=args.checkpoint,
        checkpoint_every=args.checkpoint_every, resume=args.resume)
    print(json.dumps(result.to_dict()))
    return EXIT_OK


def cmd_geom(args):
    cfg = geometry.Configuration.from_json(_read(args.config))
    if args.geom_cmd == "color":
        try:
            run = geometry.color_configuration(cfg, args.colors, args.seed)
        except BudgetExceeded as exc:
            print(f"FAIL: {exc}", file=sys.stderr)
            return EXIT_FAIL
        colors = run.coloring[1:]
        _emit(args, {"coloring": colors, "M": run.M}, " ".join(map(str, colors)))
        return EXIT_OK
    colors = [int(tok) for tok in _read(args.coloring).split()]
    report = geometry.verify_coloring(cfg, colors)
    payload = {"pass": report.nonrepetitive,
               "witnesses": [[li, w.first, w.d, w.h] for li, w in report.witnesses]}
    if report.nonrepetitive:
        _emit(args, payload, "PASS")
        return EXIT_OK
    _emit(args, payload, "\n".join(f"line {li}: {w}" for li, w in report.witnesses))
    return EXIT_FAIL


def _load_config(path) -> GeneratorConfig:
    text = _read(path)
    first = text.lstrip().split("\n", 1)[0]
    obj = json.loads(first)
    if isinstance(obj, dict) and obj.get("type") == "header":
        return GeneratorConfig.from_dict(obj)
    return GeneratorConfig.from_dict(json.loads(text))


def cmd_log(args):
    if args.log_cmd == "encode":
        trace, _ = ExecutionTrace.load(_read(args.trace).splitlines())
        log = logcodec.encode(trace)
        with open(args.out, "w") as fp:
            fp.write(log.to_json())
        return EXIT_OK
    if args.log_cmd == "decode":
        log = logcodec.Log.from_json(_read(args.log))
        ranks = logcodec.decode(log, _load_config(args.config))
        _emit(args, {"ranks": ranks}, " ".join(map(str, ranks)))
        return EXIT_OK
    q = args.q or default_list_size(args.k)
    M = bounds.crossing_M(args.n, args.k, q)
    _emit(args, {"n": args.n, "k": args.k, "q": q, "crossing_M": M}, str(M))
    return EXIT_OK


def cmd_bench(args):
    K = DifferenceSet.up_to(args.k)
    summary, results = bench.run_trials(args.n, K, args.q, args.trials, args.seed, args.workers)
    if args.out:
        bench.write_report(args.out, summary, results)
    print(json.dumps(summary) if args.json else
          " ".join(f"{key}={val}" for key, val in summary.items()))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nonrep", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kw):
        p = sub.add_parser(name, **kw)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    p = add("generate", cmd_generate, help="build a sequence with the randomized algorithm")
    p.add_argument("--n", type=int, required=True)
    _add_diffs(p)
    p.add_argument("--list-size", type=int)
    p.add_argument("--lists", help="JSON file: array of per-position symbol arrays")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max-choices", type=int)
    p.add_argument("--trace", help="write the execution trace as JSON lines")
    p.add_argument("--save-config", help="write the run configuration as JSON")

    p = add("verify", cmd_verify, help="check a sequence for squares")
    _add_diffs(p)
    p.add_argument("--input", help="sequence file (default: stdin)")
    p.add_argument("--exhaustive", action="store_true", help="list every witness")

    p = add("search", cmd_search, help="exhaustive search for the longest sequence")
    p.add_argument("--q", type=int, required=True)
    _add_diffs(p)
    p.add_argument("--cap", type=int, required=True)
    p.add_argument("--budget", type=int, default=search.DEFAULT_BUDGET)
    p.add_argument("--checkpoint", help="file to save the DFS state to")
    p.add_argument("--checkpoint-every", type=int, default=search.DEFAULT_CHECKPOINT_EVERY)
    p.add_argument("--resume", help="checkpoint file to resume from")

    p = add("geom", cmd_geom, help="color point-line configurations")
    gsub = p.add_subparsers(dest="geom_cmd", required=True)
    g = gsub.add_parser("color")
    g.add_argument("--config", required=True)
    g.add_argument("--colors", type=int, required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--json", action="store_true")
    g = gsub.add_parser("verify")
    g.add_argument("--config", required=True)
    g.add_argument("--coloring", required=True)
    g.add_argument("--json", action="store_true")

    p = add("log", cmd_log, help="encode/decode run logs and evaluate the counting bound")
    lsub = p.add_subparsers(dest="log_cmd", required=True)
    g = lsub.add_parser("encode")
    g.add_argument("--trace", required=True)
    g.add_argument("--out", required=True)
    g.add_argument("--json", action="store_true")
    g = lsub.add_parser("decode")
    g.add_argument("--log", required=True)
    g.add_argument("--config", required=True, help="config JSON or a trace file with header")
    g.add_argument("--json", action="store_true")
    g = lsub.add_parser("bound")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--q", type=int)
    g.add_argument("--json", action="store_true")

    p = add("bench", cmd_bench, help="termination statistics over seeded trials")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="directory for trials.csv and summary.json")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (NonrepError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
