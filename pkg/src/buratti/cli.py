"""Command-line workbench.

Exit codes: 0 success, 1 usage error, 2 not found (or invalid record),
3 budget exhausted.
"""
from __future__ import annotations

import argparse
import json
import sys

from .diameter import ExtendConfig, anchored_tree, extend_diameter, improve_diameter
from .errors import BudgetExhausted, BurattiError, NotFoundError
from .exchange import realize_tree
from .modular import Modulus, orbit_images, parse_multiset
from .oracle import composite_best_effort
from .realization import from_record, to_dot, to_record, tree_diameter_vertices, verify
from .solver import SolveBudget, search, two_length_conditions
from .survey import default_jobs, run_survey

EXIT_OK, EXIT_USAGE, EXIT_NOT_FOUND, EXIT_BUDGET = 0, 1, 2, 3

_PATH_KINDS = {"cyclic": "cyclic-path", "linear": "linear-path"}


def _emit(obj) -> None:
    print(json.dumps(obj, ensure_ascii=False))


def _failure(status: str, **extra) -> dict:
    return {"status": status, **extra}


def _realize_tree(m, L, args):
    if not m.is_prime:
        T = composite_best_effort(m, L, node_limit=args.budget_nodes)
        if T is not None and args.diameter_at_least and tree_diameter_vertices(T) < args.diameter_at_least:
            raise NotFoundError("composite search found no tree of the requested diameter")
        return T
    if args.diameter_at_least is None:
        return realize_tree(m, L)
    T = extend_diameter(m, L, ExtendConfig(seed=args.seed or 0))
    goal = args.diameter_at_least
    if tree_diameter_vertices(T) < goal:
        T, ok, _ = improve_diameter(T, goal)
        if not ok:
            T = anchored_tree(m, L, goal)
    return T


def cmd_realize(args) -> int:
    base = {"p": args.p, "kind": _PATH_KINDS.get(args.kind, args.kind), "target": args.multiset}
    try:
        m = Modulus(args.p)
        linear = args.kind == "linear"
        L = parse_multiset(args.multiset, m, linear=linear)
        L.require_target()
        if args.kind == "tree":
            R = _realize_tree(m, L, args)
            kind = "tree"
            if R is None:
                _emit(_failure("not-found", **base))
                return EXIT_NOT_FOUND
        else:
            kind = _PATH_KINDS[args.kind]
            budget = SolveBudget(
                node_limit=args.budget_nodes,
                deterministic_order=args.seed is None,
                seed=args.seed or 0,
            )
            out = search(m, L, kind, budget)
            if out.status != "found":
                _emit(_failure(out.status, nodes=out.nodes, **base))
                return EXIT_NOT_FOUND if out.status == "not-found" else EXIT_BUDGET
            R = out.path
    except BudgetExhausted as exc:
        _emit(_failure("budget-exhausted", nodes=exc.nodes, **base))
        return EXIT_BUDGET
    except NotFoundError as exc:
        _emit(_failure("not-found", reason=str(exc), **base))
        return EXIT_NOT_FOUND
    except (BurattiError, ValueError) as exc:
        _emit(_failure("usage-error", error=str(exc), **base))
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(to_record(R, L, kind))
    return EXIT_OK


def _load_record(path: str):
    with open(path) as fh:
        return from_record(json.load(fh))


def cmd_verify(args) -> int:
    try:
        R, target, kind = _load_record(args.record)
        report = verify(R, target, kind)
    except (OSError, json.JSONDecodeError, BurattiError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit({
        "valid": report.valid,
        "kind": kind,
        "target": str(target),
        "achieved": str(report.achieved),
        "diameter_vertices": report.diameter_vertices,
        "problems": list(report.problems),
    })
    return EXIT_OK if report.valid else EXIT_NOT_FOUND


def cmd_export_dot(args) -> int:
    try:
        R, target, kind = _load_record(args.record)
    except (OSError, json.JSONDecodeError, BurattiError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = to_dot(R, target, kind)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_orbit(args) -> int:
    try:
        m = Modulus(args.p)
        L = parse_multiset(args.multiset, m)
        images = orbit_images(m, L)
    except (BurattiError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for k, image in images:
        print(f"k={k}: {image}")
    print(f"distinct: {len({image for _, image in images})}")
    return EXIT_OK


def cmd_feasible(args) -> int:
    try:
        cond = two_length_conditions(args.q, args.d, args.t, args.a)
    except (BurattiError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    b = args.q - 1 - args.a
    print(f"multiset: {{{args.d}^{args.a},{args.t}^{b}}} q={args.q}")
    print(f"gcd(q,d,t) = {cond['gcd(q,d,t)']} -> {'ok' if cond['coprime'] else 'fails'}")
    print(f"gcd(t,q)-1 = {cond['lower']} <= a = {args.a} <= q-gcd(d,q) = {cond['upper']} -> "
          f"{'ok' if cond['in_range'] else 'fails'}")
    print(f"feasible: {'true' if cond['feasible'] else 'false'}")
    return EXIT_OK


def cmd_survey(args) -> int:
    try:
        run_survey(
            args.p,
            kind=args.kind,
            out=args.out,
            jobs=args.jobs,
            resume=args.resume,
            seed=args.seed or 0,
            budget_nodes=args.budget_nodes,
            timing=args.timing,
            log=sys.stderr,
        )
    except (BurattiError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="buratti", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("realize", help="build and verify one realization")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--multiset", required=True)
    p.add_argument("--kind", choices=("tree", "cyclic", "linear"), required=True)
    p.add_argument("--diameter-at-least", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--budget-nodes", type=int, default=10**10)
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("survey", help="sweep every multiset for one modulus")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--kind", choices=("cyclic", "tree", "both"), default="cyclic")
    p.add_argument("--out")
    p.add_argument("--jobs", type=int, default=default_jobs())
    p.add_argument("--resume", action="store_true")
    p.add_argument("--seed", type=int)
    p.add_argument("--budget-nodes", type=int, default=10**10)
    p.add_argument("--timing", action="store_true", help="add wall-clock elapsed to each record")
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("orbit", help="images of a multiset under every phi_k")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--multiset", required=True)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("feasible", help="two-length realizability law")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.set_defaults(func=cmd_feasible)

    p = sub.add_parser("verify", help="re-check a stored realization record")
    p.add_argument("--record", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export-dot", help="render a realization record as DOT")
    p.add_argument("--record", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_dot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
