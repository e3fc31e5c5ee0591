"""Command-line front end.

    endotree sample tree|mapping|independent-tree
    endotree convert map-to-tree|tree-to-map
    endotree verify exhaustive
    endotree experiment concentration|cycles|core-size|na-check
    endotree stats bounds

Exit status: 0 on success, 1 when a verification or experiment check
fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

from . import analysis, experiments, formats, oracle
from .bijection import Variant, map_to_tree_with_report, tree_to_map
from .graph_core import DoublyRootedTree
from .sampler import DEFAULT_SEED, SeededRng, sample_independent_tree, sample_mapping, sample_tree

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _grid(flag: str):
    def parse(text: str) -> list[float]:
        try:
            return experiments.parse_grid(text)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"{flag}: {exc}") from None

    return parse


def _add_common(p: argparse.ArgumentParser, *, k: bool = False, trials: bool = False) -> None:
    p.add_argument("--n", type=int, required=True)
    if k:
        p.add_argument("--k", type=int)
    if trials:
        p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--out", metavar="FILE")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="endotree", description=__doc__.splitlines()[0])
    top = parser.add_subparsers(dest="command", required=True)

    sample = top.add_parser("sample", help="draw seeded random mappings or trees")
    sample.add_argument("what", choices=["tree", "mapping", "independent-tree"])
    _add_common(sample, k=True)
    sample.add_argument("--count", type=int, default=1)
    sample.add_argument("--format", choices=["text", "json"], default="text")

    convert = top.add_parser("convert", help="apply a bijection or its inverse")
    convert.add_argument("direction", choices=["map-to-tree", "tree-to-map"])
    convert.add_argument("--variant", choices=["joyal", "renyi"], default="renyi")
    convert.add_argument("--in", dest="infile", metavar="FILE")
    convert.add_argument("--out", metavar="FILE")
    convert.add_argument("--root1", type=int)
    convert.add_argument("--root2", type=int)

    verify = top.add_parser("verify", help="exhaustive small-n verification")
    verify.add_argument("mode", choices=["exhaustive"])
    _add_common(verify, k=True)
    verify.add_argument("--variant", choices=["joyal", "renyi"], default="renyi")

    exp = top.add_parser("experiment", help="Monte Carlo experiments")
    exp.add_argument("kind", choices=["concentration", "cycles", "core-size", "na-check"])
    _add_common(exp, k=True, trials=True)
    exp.add_argument("--s-grid", type=_grid("--s-grid"), default="0.05:1.0:0.05")
    exp.add_argument("--t-grid", type=_grid("--t-grid"), default="0.5:2.0:0.5")
    exp.add_argument("--format", choices=["csv", "json"], default="csv")

    stats = top.add_parser("stats", help="closed-form bound values")
    stats.add_argument("what", choices=["bounds"])
    stats.add_argument("--n", type=int, required=True)
    stats.add_argument("--k", type=int, required=True)
    stats.add_argument("--s-grid", type=_grid("--s-grid"), default="0.05:1.0:0.05")
    stats.add_argument("--out", metavar="FILE")
    return parser


def _validate(args) -> None:
    def need(cond: bool, flag: str, msg: str) -> None:
        if not cond:
            raise InputError(f"{flag}: {msg}")

    if getattr(args, "n", None) is not None:
        need(args.n >= 1, "--n", "must be at least 1")
    k = getattr(args, "k", None)
    if k is not None:
        need(1 <= k < args.n, "--k", f"must satisfy 1 <= k < n (n={args.n})")
    if getattr(args, "trials", None) is not None:
        need(args.trials >= 1, "--trials", "must be at least 1")
    if getattr(args, "count", None) is not None:
        need(args.count >= 1, "--count", "must be at least 1")
    if getattr(args, "workers", None) is not None:
        need(args.workers >= 1, "--workers", "must be at least 1")
    if getattr(args, "seed", None) is not None:
        need(0 <= args.seed < 2**64, "--seed", "must be a 64-bit unsigned integer")
    cmd = args.command
    if cmd == "sample" and args.what == "independent-tree":
        need(k is not None, "--k", "required for independent-tree")
    if cmd == "verify":
        need(args.n <= 7, "--n", "exhaustive verification is capped at 7")
    if cmd == "experiment":
        if args.kind in ("concentration", "na-check"):
            need(k is not None, "--k", f"required for {args.kind}")
        if args.kind == "cycles":
            need(args.n - (k or 0) >= 2, "--n", "need at least two vertices outside S")
        grid = args.s_grid if args.kind == "concentration" else args.t_grid
        if args.kind in ("concentration", "cycles"):
            need(min(grid) > 0, "--s-grid" if args.kind == "concentration" else "--t-grid",
                 "values must be positive")
    if cmd == "stats":
        need(min(args.s_grid) > 0, "--s-grid", "values must be positive")


def _read_input(path: str | None) -> str:
    if path is None:
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"--in {path}: {exc.strerror}") from None


def _cmd_sample(args) -> tuple[str, int]:
    chunks = []
    for i in range(args.count):
        rng = SeededRng(args.seed, i)
        if args.what == "mapping":
            f = sample_mapping(args.n, rng)
            chunks.append(json.dumps(list(f.to_one_based())) + "\n" if args.format == "json"
                          else formats.format_mapping(f))
            continue
        if args.what == "tree":
            t = sample_tree(args.n, rng)
        else:
            t = sample_independent_tree(args.n, args.k, rng)
        if args.format == "json":
            chunks.append(json.dumps({"n": t.n, "edges": (t.canonical_edges + 1).tolist()}) + "\n")
        else:
            chunks.append(formats.format_tree(t))
    return "".join(chunks), EXIT_OK


def _cmd_convert(args) -> tuple[str, int]:
    variant = Variant.parse(args.variant)
    text = _read_input(args.infile)
    try:
        if args.direction == "map-to-tree":
            out = []
            for f in formats.parse_mappings(text):
                d, rep = map_to_tree_with_report(f, variant)
                out.append(formats.format_drt_json(d, variant=variant.value, report=rep.as_dict()))
            return "".join(out), EXIT_OK
        if text.lstrip().startswith("{"):
            trees = [formats.parse_drt_json(ln) for ln in text.splitlines() if ln.strip()]
        else:
            if args.root1 is None or args.root2 is None:
                raise InputError("--root1/--root2: required with tree text input")
            t = formats.parse_tree(text)
            for flag, r in (("--root1", args.root1), ("--root2", args.root2)):
                if not 1 <= r <= t.n:
                    raise InputError(f"{flag}: must lie in 1..{t.n}")
            trees = [DoublyRootedTree(t, args.root1 - 1, args.root2 - 1)]
    except formats.FormatError as exc:
        raise InputError(f"--in {args.infile or '<stdin>'}: {exc}") from None
    return "".join(formats.format_mapping(tree_to_map(d, variant)) for d in trees), EXIT_OK


def _cmd_verify(args) -> tuple[str, int]:
    if args.k is not None:
        report = oracle.verify_restricted_exhaustive(args.n, args.k, workers=args.workers)
    else:
        report = oracle.verify_bijection_exhaustive(args.n, Variant.parse(args.variant), args.workers)
    return report.to_json() + "\n", EXIT_OK if report.success else EXIT_FAIL


def _cmd_experiment(args) -> tuple[str, int]:
    if args.kind == "concentration":
        rep = experiments.run_concentration_experiment(
            args.n, args.k, args.trials, args.s_grid, args.seed, args.workers)
    elif args.kind == "cycles":
        rep = experiments.run_cycle_experiment(
            args.n, args.trials, args.t_grid, args.seed, args.k, args.workers)
        if rep.extra.get("collapse_mismatches"):
            return _render(rep, args.format), EXIT_FAIL
    elif args.kind == "core-size":
        rep = experiments.run_core_size_experiment(args.n, args.trials, args.seed, args.workers)
    else:
        na = experiments.na_covariance_check(args.n, args.k, args.trials, args.seed)
        return na.to_json() + "\n", EXIT_OK
    return _render(rep, args.format), EXIT_OK


def _render(rep, fmt: str) -> str:
    return rep.to_csv() if fmt == "csv" else rep.to_json() + "\n"


def _cmd_stats(args) -> tuple[str, int]:
    n, k = args.n, args.k
    bounds = analysis.ConcentrationBounds.for_params(n, k)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "k", "s", "expected_exact", "expected_asymptotic",
                "indep_two_sided", "indep_lower", "indep_upper",
                "chernoff_two_sided", "chernoff_lower", "chernoff_upper",
                "azuma", "cycle_tail", "cycle_tail_restricted"])
    for s in args.s_grid:
        ind = analysis.independent_set_bounds(n, k, s)
        ch = analysis.chernoff_binomial_bounds(bounds.expected_n_exact, s) \
            if bounds.expected_n_exact > 0 else (math.nan,) * 3
        cyc = analysis.cycle_tail_bound(n, s) if n >= 2 else math.nan
        cyc_r = analysis.cycle_tail_bound(n, s, k) if n - k >= 2 else math.nan
        row = [bounds.expected_n_exact, bounds.expected_n_asymptotic, *ind, *ch,
               analysis.azuma_comparison_bound(n, k, s), cyc, cyc_r]
        w.writerow([n, k, s] + [experiments._fmt(v) for v in row])
    return buf.getvalue(), EXIT_OK


COMMANDS = {
    "sample": _cmd_sample,
    "convert": _cmd_convert,
    "verify": _cmd_verify,
    "experiment": _cmd_experiment,
    "stats": _cmd_stats,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _validate(args)
        text, code = COMMANDS[args.command](args)
    except InputError as exc:
        print(f"endotree: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"endotree: error: --out {args.out}: {exc.strerror}", file=sys.stderr)
            return EXIT_INPUT
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
