"""Command-line interface.

Subcommands:

* ``solve``   - solve an instance file, print/write the solution document;
* ``gen``     - emit a seeded random instance document;
* ``verify``  - check a solution document against its instance;
* ``compare`` - run solver and exhaustive oracle over a suite, report agreement;
* ``oracle``  - solve an instance by exhaustive enumeration only.

Exit codes: 0 success, 2 bad input, 3 verification failure or solver/oracle
disagreement, 4 breached internal invariant (always a bug, never bad input).

The ``RRST_LOG`` environment variable (error|info|debug, default error)
controls diagnostic logging on stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time

from .config import SolveConfig
from .errors import (
    GroundTooLarge,
    InputError,
    InternalError,
    ParseError,
    RRSTError,
    TooManyTrees,
    ValidationError,
)
from .gen import builtin_small_suite, generate_instance
from .instance import Instance, load_instance, serialize_instance
from .matroids import MatroidInstance, load_matroid_instance
from .oracle import BruteResult, brute_force_rrmb, brute_force_rrst
from .rational import rat_str
from .solver import (
    serialize_solution,
    solve_rrmb,
    solve_rrst,
    verify_basis_solution,
    verify_tree_solution,
)

log = logging.getLogger("rrst")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_VERIFY = 3
EXIT_INTERNAL = 4

_LOG_LEVELS = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}


def _configure_logging() -> None:
    raw = os.environ.get("RRST_LOG", "error")
    if raw not in _LOG_LEVELS:
        raise ValidationError(
            f"RRST_LOG must be one of {sorted(_LOG_LEVELS)}, got {raw!r}"
        )
    logging.basicConfig(
        level=_LOG_LEVELS[raw], stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _config_from_args(args) -> SolveConfig:
    try:
        return SolveConfig(
            mode=args.mode,
            separation=args.separation,
            cuts_per_round=args.cuts,
            lp_dump_dir=getattr(args, "lp_dump_dir", None),
        )
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc


def _iteration_logger(info) -> None:
    log.debug(
        "iteration %d: objective=%s quota=%d dropped=%d fixed=%d banked=%d",
        info.index,
        rat_str(info.objective),
        info.quota,
        len(info.dropped_overlap) + len(info.dropped_x) + len(info.dropped_y),
        len(info.fixed_x) + len(info.fixed_y),
        len(info.banked),
    )


def cmd_solve(args) -> int:
    config = _config_from_args(args)
    observer = _iteration_logger if log.isEnabledFor(logging.DEBUG) else None
    if args.matroid:
        minst = load_matroid_instance(args.input)
        log.info("matroid instance: |ground|=%d rank=%d k=%d",
                 len(minst.matroid.ground), minst.matroid.full_rank(), minst.k)
        sol = solve_rrmb(minst, config, on_iteration=observer)
    else:
        inst = load_instance(args.input)
        log.info("tree instance: n=%d m=%d k=%d", inst.n, inst.m, inst.k)
        sol = solve_rrst(inst, config, on_iteration=observer)
    log.info("solved: total=%s iterations=%d rounds=%d cuts=%d",
             rat_str(sol.total), sol.iterations, sol.rounds, sol.cuts)
    _write_text(args.output, serialize_solution(sol))
    return EXIT_OK


def cmd_gen(args) -> int:
    inst = generate_instance(args.nodes, args.density, args.k, args.cost_max, args.seed)
    _write_text(args.output, serialize_instance(inst))
    return EXIT_OK


def _load_solution_doc(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in solution document: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("solution document must be a JSON object")
    return doc


def cmd_verify(args) -> int:
    doc = _load_solution_doc(args.solution)
    try:
        if args.matroid:
            minst = load_matroid_instance(args.instance)
            failures = verify_basis_solution(minst, doc)
        else:
            inst = load_instance(args.instance)
            failures = verify_tree_solution(inst, doc)
    except ValidationError as exc:
        # a malformed selection is itself a failed check against the instance
        failures = [str(exc)]
    if failures:
        for line in failures:
            print(f"verification failed: {line}", file=sys.stderr)
        return EXIT_VERIFY
    print("ok")
    return EXIT_OK


def cmd_oracle(args) -> int:
    if args.matroid:
        res = brute_force_rrmb(load_matroid_instance(args.input), prune=args.prune)
    else:
        res = brute_force_rrst(load_instance(args.input), prune=args.prune)
    doc = {
        "X": list(res.X),
        "Y": list(res.Y),
        "Z": list(res.Z),
        "first_stage": rat_str(res.first_stage),
        "second_stage": rat_str(res.second_stage),
        "total": rat_str(res.total),
        "pairs_scanned": res.pairs_scanned,
    }
    _write_text(args.output, json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n")
    return EXIT_OK


def _parse_seed_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    if not sep:
        lo = hi = text
    try:
        a, b = int(lo), int(hi)
    except ValueError as exc:
        raise ValidationError(f"--seeds expects A..B with integers, got {text!r}") from exc
    if b < a:
        raise ValidationError(f"--seeds range {text!r} is empty")
    return range(a, b + 1)


def _suite_from_dir(path: str) -> list[tuple[str, Instance]]:
    try:
        names = sorted(f for f in os.listdir(path) if f.endswith(".json"))
    except OSError as exc:
        raise ValidationError(f"cannot read suite directory {path!r}: {exc}") from exc
    if not names:
        raise ValidationError(f"suite directory {path!r} contains no .json instances")
    return [(name, load_instance(os.path.join(path, name))) for name in names]


def _compare_instances(args) -> list[tuple[str, Instance]]:
    if args.suite is not None and args.seeds is not None:
        raise ValidationError("give either --suite or --seeds, not both")
    if args.suite is not None:
        if args.suite == "builtin-small":
            return builtin_small_suite()
        return _suite_from_dir(args.suite)
    if args.seeds is not None:
        if args.nodes is None:
            raise ValidationError("--seeds needs --nodes")
        out = []
        for seed in _parse_seed_range(args.seeds):
            # sweep the recovery budget across seeds unless pinned by --k
            k = args.k if args.k is not None else seed % args.nodes
            inst = generate_instance(args.nodes, args.density, k, args.cost_max, seed)
            out.append((f"seed{seed}-n{args.nodes}-k{k}", inst))
        return out
    raise ValidationError("compare needs --suite or --seeds")


def _run_report(name: str, inst: Instance, config: SolveConfig, with_oracle: bool) -> dict:
    report: dict = {
        "name": name,
        "n": inst.n,
        "m": inst.m,
        "k": inst.k,
        "total": None,
        "iterations": None,
        "rounds": None,
        "cuts": None,
        "wall_ms": None,
        "oracle_total": None,
        "agree": None,
        "error": None,
    }
    t0 = time.perf_counter()
    try:
        sol = solve_rrst(inst, config)
    except RRSTError as exc:
        report["error"] = f"{type(exc).__name__}: {exc}"
        return report
    report["wall_ms"] = round((time.perf_counter() - t0) * 1000, 3)
    report["total"] = rat_str(sol.total)
    report["iterations"] = sol.iterations
    report["rounds"] = sol.rounds
    report["cuts"] = sol.cuts
    if with_oracle:
        try:
            ref = brute_force_rrst(inst, prune=True)
        except (TooManyTrees, GroundTooLarge) as exc:
            report["error"] = f"oracle skipped: {type(exc).__name__}: {exc}"
            return report
        report["oracle_total"] = rat_str(ref.total)
        report["agree"] = sol.total == ref.total
    return report


def cmd_compare(args) -> int:
    config = _config_from_args(args)
    instances = _compare_instances(args)
    log.info("comparing %d instances", len(instances))
    out = sys.stdout if args.output in (None, "-") else open(args.output, "w", encoding="utf-8")
    disagreements = 0
    internal = 0
    try:
        for name, inst in instances:
            report = _run_report(name, inst, config, with_oracle=not args.no_oracle)
            if report["agree"] is False:
                disagreements += 1
                log.error("disagreement on %s: solver=%s oracle=%s",
                          name, report["total"], report["oracle_total"])
            if report["error"] is not None and not report["error"].startswith("oracle skipped"):
                internal += 1
                log.error("solver failure on %s: %s", name, report["error"])
            out.write(json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    if internal:
        return EXIT_INTERNAL
    if disagreements:
        return EXIT_VERIFY
    return EXIT_OK


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", default="batch", help="batch (default) or strict fixing")
    p.add_argument("--separation", default="mincut", help="mincut (default) or exhaustive")
    p.add_argument("--cuts", default="one", help="cuts per round: one (default) or all")


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rrst",
        description="Exact solver for robust recoverable spanning trees and matroid bases.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("--input", required=True, help="instance document (JSON)")
    p.add_argument("--output", default=None, help="solution path (default stdout)")
    p.add_argument("--matroid", action="store_true", help="input is a matroid instance")
    p.add_argument("--lp-dump-dir", default=None, help="write cut LPs as text here")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("gen", help="generate a seeded random instance")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--density", type=float, default=0.5,
                   help="probability of each non-tree edge (default 0.5)")
    p.add_argument("--k", type=int, required=True, help="recovery budget")
    p.add_argument("--cost-max", type=int, default=20, help="cost range upper bound (default 20)")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--output", default=None, help="instance path (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="check a solution document against its instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--solution", required=True)
    p.add_argument("--matroid", action="store_true", help="instance is a matroid instance")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compare", help="run solver vs exhaustive oracle over a suite")
    p.add_argument("--suite", default=None,
                   help="'builtin-small' or a directory of instance documents")
    p.add_argument("--seeds", default=None, help="seed range A..B for generated instances")
    p.add_argument("--nodes", type=int, default=None, help="nodes for generated instances")
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--cost-max", type=int, default=20)
    p.add_argument("--k", type=int, default=None,
                   help="pin the recovery budget (default: sweep by seed)")
    p.add_argument("--no-oracle", action="store_true", help="skip the exhaustive reference")
    p.add_argument("--output", default=None, help="report path (default stdout)")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("oracle", help="solve by exhaustive enumeration")
    p.add_argument("--input", required=True)
    p.add_argument("--output", default=None)
    p.add_argument("--matroid", action="store_true")
    p.add_argument("--prune", action="store_true", help="bound-prune the pair scan")
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    try:
        _configure_logging()
        args = _parser().parse_args(argv)
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (TooManyTrees, GroundTooLarge) as exc:
        # enumeration guards trip on inputs too large for the oracle route
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RRSTError as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
