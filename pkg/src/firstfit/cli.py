"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 I/O or parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import adversary, generators
from .errors import FormatError, PosetError, SizeError
from .intervals import assign_intervals, build_groups, property_1_violations, property_2_violations
from .partition import (
    OrderedChainPartition,
    dumps_partition,
    first_fit,
    linear_bound,
    verify_ff_partition,
)
from .poset import Poset, contains_r_plus_s, dumps_poset, iter_bits, loads_poset, width
from .society import check_trace, dumps_trace, evolve, loads_trace, run_evolution

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

FAMILIES = ("random", "interval", "bounded-height", "rs-free")
CSV_HEADER = ["seed", "n", "r", "s", "w", "m", "bound", "ratio", "evo_n", "max_group", "order_strategy", "ms"]


def derive_seed(*parts: int) -> int:
    """Stable 32-bit seed from a tuple of non-negative integers."""
    return int(np.random.SeedSequence(list(parts)).generate_state(1)[0])


def _write(args, text: str) -> None:
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _read_poset(path: str) -> Poset:
    with open(path, encoding="utf-8") as fh:
        return loads_poset(fh.read())


def _format_ratio(m: int, w: int) -> str:
    return str(Fraction(m, w)) if w else ""


def make_poset(family: str, n: int, seed: int, r: int = 2, s: int = 2, edge_prob: float = 0.2, hmax: int = 3) -> Poset:
    if family == "random":
        return generators.random_poset(n, edge_prob, seed)
    if family == "interval":
        return generators.random_interval_order(n, seed)
    if family == "bounded-height":
        return generators.random_bounded_height_poset(n, hmax, seed, edge_prob)
    if family == "rs-free":
        return generators.random_rs_free(n, r, s, edge_prob, seed)
    raise ValueError(f"unknown family {family!r}")


# subcommands -------------------------------------------------------------------


def cmd_gen(args) -> int:
    p = make_poset(args.family, args.n, args.seed, args.r, args.s, args.edge_prob, args.hmax)
    _write(args, dumps_poset(p))
    return EXIT_OK


def cmd_ff(args) -> int:
    p = _read_poset(args.poset)
    order = generators.order_strategies(p, args.order, args.seed)
    cp = first_fit(p, order)
    w = width(p)
    bound = linear_bound(w, args.r, args.s)
    free = contains_r_plus_s(p, args.r, args.s) is None
    summary = (
        f"m={cp.m} w={w} bound={bound} ratio={_format_ratio(cp.m, w)} "
        f"rs_free={'yes' if free else 'no'}\n"
    )
    _write(args, dumps_partition(cp) + summary)
    return EXIT_CHECK if free and cp.m > bound else EXIT_OK


def _verify_instance(p: Poset, r: int, s: int, order) -> dict[str, bool]:
    ia = assign_intervals(p, r)
    results = {
        "property_1": not property_1_violations(p, ia, r),
        "property_2": not property_2_violations(p, ia, s),
    }
    cp = first_fit(p, order)
    results["ff_partition"] = verify_ff_partition(p, cp)
    results["bound"] = cp.m <= linear_bound(width(p), r, s)
    results.update(check_trace(run_evolution(p, cp, r, s)))
    return results


def cmd_verify(args) -> int:
    p = _read_poset(args.poset)
    out = io.StringIO()
    witness = contains_r_plus_s(p, args.r, args.s)
    if witness is not None:
        out.write(
            f"REJECT input contains {args.r}+{args.s}: chain_a={list(witness.chain_a)} "
            f"chain_b={list(witness.chain_b)}; property_2 not applicable\n"
        )
        _write(args, out.getvalue())
        return EXIT_CHECK
    failures = []
    if args.trace:
        with open(args.trace, encoding="utf-8") as fh:
            trace = loads_trace(fh.read())
        gf = build_groups(assign_intervals(p, trace.r))
        results = {"groups_match": gf == trace.groups}
        results["chains_form_ff_partition"] = _chains_are_ff(p, trace.chains)
        results.update(check_trace(trace))
        failures += _report(out, "trace", results)
    for trial in range(args.trials):
        order = generators.order_strategies(p, "random", derive_seed(args.seed, trial))
        results = _verify_instance(p, args.r, args.s, order)
        bad = _report(out, f"trial {trial}", results)
        if bad and not failures:
            _write_repro(args, p, order, bad)
        failures += bad
    out.write(f"{'FAIL' if failures else 'PASS'} {len(failures)} failing checks\n")
    _write(args, out.getvalue())
    return EXIT_CHECK if failures else EXIT_OK


def _chains_are_ff(p: Poset, chains) -> bool:
    cp = OrderedChainPartition(tuple(tuple(iter_bits(c)) for c in chains))
    return verify_ff_partition(p, cp)


def _report(out, label: str, results: dict[str, bool]) -> list[str]:
    bad = []
    for name, ok in results.items():
        out.write(f"{'PASS' if ok else 'FAIL'} {label} {name}\n")
        if not ok:
            bad.append(f"{label} {name}")
    return bad


def _write_repro(args, p: Poset, order, bad: list[str]) -> None:
    path = args.repro or "verify-repro.txt"
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# failing checks: {', '.join(bad)}\n")
        fh.write(f"# r={args.r} s={args.s} order={','.join(map(str, order))}\n")
        fh.write(dumps_poset(p))


@dataclass(frozen=True)
class ExperimentTask:
    seed: int
    n: int
    r: int
    s: int
    family: str
    order_strategy: str
    edge_prob: float
    timing: bool


def run_trial(task: ExperimentTask) -> list:
    start = time.perf_counter()
    p = make_poset(task.family, task.n, task.seed, task.r, task.s, task.edge_prob, hmax=task.r - 1)
    order = generators.order_strategies(p, task.order_strategy, task.seed)
    cp = first_fit(p, order)
    w = width(p)
    bound = linear_bound(w, task.r, task.s)
    gf = build_groups(assign_intervals(p, task.r))
    trace = evolve(gf, cp.masks, task.r, task.s)
    ms = round((time.perf_counter() - start) * 1000) if task.timing else 0
    return [
        task.seed, p.n, task.r, task.s, w, cp.m, bound, _format_ratio(cp.m, w),
        trace.n, max((len(g) for g in gf.groups), default=0), task.order_strategy, ms,
    ]


def cmd_experiment(args) -> int:
    sizes = args.sizes or list(range(args.n_min, args.n_max + 1, args.n_step))
    tasks = [
        ExperimentTask(
            derive_seed(args.seed, n, trial), n, args.r, args.s, args.generator,
            args.order_strategy, args.edge_prob, args.timing,
        )
        for n in sizes
        for trial in range(args.trials)
    ]
    if args.threads > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            rows = list(pool.map(run_trial, tasks))
    else:
        rows = [run_trial(t) for t in tasks]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    writer.writerows(rows)
    _write(args, buf.getvalue())
    violations = [row for row in rows if row[5] > row[6]]
    for row in violations:
        print(f"bound violated: {row}", file=sys.stderr)
    return EXIT_CHECK if violations else EXIT_OK


def cmd_evolve(args) -> int:
    p = _read_poset(args.poset)
    order = generators.order_strategies(p, args.order, args.seed)
    trace = run_evolution(p, first_fit(p, order), args.r, args.s)
    _write(args, dumps_trace(trace))
    return EXIT_OK


def cmd_adversary(args) -> int:
    if args.replay:
        with open(args.replay, encoding="utf-8") as fh:
            moves = adversary.loads_transcript(fh.read())
        rp = adversary.replay(moves)
        _write(args, f"m={rp.chains} max_width={rp.max_prefix_width} elements={rp.poset.n}\n")
        return EXIT_OK
    res = adversary.adversary_game_value(args.max_elements, args.width_cap, args.chain_target)
    if not res.forced:
        _write(args, "not forced\n")
        return EXIT_OK
    _write(args, adversary.dumps_transcript(res.transcript))
    return EXIT_OK


# parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--threads", type=int, default=1)

    rs = argparse.ArgumentParser(add_help=False)
    rs.add_argument("--r", type=int, default=2)
    rs.add_argument("--s", type=int, default=2)

    parser = argparse.ArgumentParser(prog="firstfit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common, rs], help="generate a poset file")
    g.add_argument("--family", choices=FAMILIES, default="rs-free")
    g.add_argument("--n", type=int, default=30)
    g.add_argument("--edge-prob", type=float, default=0.2)
    g.add_argument("--hmax", type=int, default=3)
    g.set_defaults(func=cmd_gen)

    f = sub.add_parser("ff", parents=[common, rs], help="run First-Fit on a poset file")
    f.add_argument("poset")
    f.add_argument("--order", choices=generators.ORDER_STRATEGIES, default="random")
    f.set_defaults(func=cmd_ff)

    v = sub.add_parser("verify", parents=[common, rs], help="run every structural and bound check on a poset")
    v.add_argument("poset")
    v.add_argument("--trials", type=int, default=5)
    v.add_argument("--trace", help="also replay and check a dumped trace")
    v.add_argument("--repro", help="where to write a failing instance")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("experiment", parents=[common, rs], help="bound sweep to CSV")
    e.add_argument("--generator", choices=FAMILIES[1:], default="rs-free")
    e.add_argument("--order-strategy", choices=generators.ORDER_STRATEGIES, default="random")
    e.add_argument("--sizes", type=int, nargs="+")
    e.add_argument("--n-min", type=int, default=10)
    e.add_argument("--n-max", type=int, default=50)
    e.add_argument("--n-step", type=int, default=10)
    e.add_argument("--trials", type=int, default=3)
    e.add_argument("--edge-prob", type=float, default=0.2)
    e.add_argument("--timing", action="store_true", help="fill the ms column (breaks byte determinism)")
    e.set_defaults(func=cmd_experiment)

    ev = sub.add_parser("evolve", parents=[common, rs], help="dump a full evolution trace")
    ev.add_argument("poset")
    ev.add_argument("--order", choices=generators.ORDER_STRATEGIES, default="random")
    ev.set_defaults(func=cmd_evolve)

    a = sub.add_parser("adversary", parents=[common], help="exhaustive adversary search")
    a.add_argument("--width-cap", type=int, default=2)
    a.add_argument("--chain-target", type=int, default=3)
    a.add_argument("--max-elements", type=int, default=10)
    a.add_argument("--replay", help="replay a transcript file instead of searching")
    a.set_defaults(func=cmd_adversary)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "r") and (args.r < 2 or args.s < 2):
        parser.error("--r and --s must be at least 2")
    if getattr(args, "trials", 1) < 1:
        parser.error("--trials must be at least 1")
    try:
        return args.func(args)
    except SizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except PosetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO if isinstance(exc, ValueError) else EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
