"""Exhaustive sweep over every target multiset for one modulus.

Each multiset is an independent task; results stream into a ``.partial``
JSON-lines file as they finish so an interrupted run can resume, and the
final file is written sorted, via a temporary file and an atomic rename.
"""
from __future__ import annotations

import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .diameter import ExtendConfig, extend_diameter
from .errors import BudgetExhausted
from .modular import Modulus, all_multisets, parse_multiset
from .oracle import composite_best_effort
from .realization import tree_diameter_vertices
from .solver import SolveBudget, search

KINDS = ("cyclic", "tree", "both")


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("BURATTI_JOBS", "1")))
    except ValueError:
        return 1


def evaluate(p: int, multiset: str, kind: str, budget_nodes: int, seed: int = 0, timing: bool = False) -> dict:
    """One SurveyRecord as a plain dict with fixed key order."""
    m = Modulus(p)
    L = parse_multiset(multiset, m)
    t0 = time.perf_counter()
    cyclic = tree = diameter = None
    nodes = 0
    if kind in ("cyclic", "both"):
        out = search(m, L, "cyclic-path", SolveBudget(node_limit=budget_nodes))
        nodes = out.nodes
        cyclic = {"found": "yes", "not-found": "no"}.get(out.status, "unknown")
        if out.path is not None:
            diameter = p
    if kind in ("tree", "both"):
        if m.is_prime:
            T = extend_diameter(m, L, ExtendConfig(seed=seed))
        else:
            try:
                T = composite_best_effort(m, L, node_limit=budget_nodes)
            except BudgetExhausted:
                T = None
                tree = "unknown"
        if T is not None:
            tree = "yes"
            diameter = max(diameter or 0, tree_diameter_vertices(T))
        elif tree is None:
            tree = "no"
    rec = {
        "p": p,
        "multiset": str(L),
        "cyclic_realizable": cyclic,
        "tree_realizable": tree,
        "achieved_diameter": diameter,
        "solver_nodes": nodes,
    }
    if timing:
        rec["elapsed"] = round(time.perf_counter() - t0, 6)
    return rec


def _evaluate_star(args):
    return evaluate(*args)


def _read_jsonl(path: Path) -> dict[str, dict]:
    done = {}
    if not path.exists():
        return done
    with path.open() as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError:
                continue  # torn last line from an interrupted write
            done[rec["multiset"]] = rec
    return done


def _dump(rec: dict) -> str:
    return json.dumps(rec, separators=(",", ":"))


def run_survey(
    p: int,
    kind: str = "cyclic",
    out: str | os.PathLike | None = None,
    jobs: int | None = None,
    resume: bool = False,
    seed: int = 0,
    budget_nodes: int = 10**10,
    timing: bool = False,
    log=sys.stderr,
) -> list[dict]:
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    m = Modulus(p)
    out = Path(out) if out is not None else Path(f"survey_p{p}_{kind}.jsonl")
    partial = out.with_name(out.name + ".partial")
    jobs = default_jobs() if jobs is None else max(1, jobs)

    done: dict[str, dict] = {}
    if resume:
        done.update(_read_jsonl(out))
        done.update(_read_jsonl(partial))
    elif partial.exists():
        partial.unlink()

    todo = [str(L) for L in all_multisets(m) if str(L) not in done]
    tasks = [(p, s, kind, budget_nodes, seed, timing) for s in todo]
    with partial.open("a") as sink:
        if jobs == 1 or len(tasks) < 2:
            results = map(_evaluate_star, tasks)
            for rec in results:
                done[rec["multiset"]] = rec
                sink.write(_dump(rec) + "\n")
                sink.flush()
        else:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                for rec in pool.map(_evaluate_star, tasks, chunksize=max(1, len(tasks) // (8 * jobs))):
                    done[rec["multiset"]] = rec
                    sink.write(_dump(rec) + "\n")
                    sink.flush()

    records = [done[key] for key in sorted(done)]
    tmp = out.with_name(out.name + ".tmp")
    with tmp.open("w") as fh:
        for rec in records:
            fh.write(_dump(rec) + "\n")
    os.replace(tmp, out)
    partial.unlink(missing_ok=True)

    if log is not None:
        for field in ("cyclic_realizable", "tree_realizable"):
            tally: dict[str, int] = {}
            for rec in records:
                if rec[field] is not None:
                    tally[rec[field]] = tally.get(rec[field], 0) + 1
            if tally:
                summary = ", ".join(f"{k}={v}" for k, v in sorted(tally.items()))
                print(f"p={p} {field}: {summary} ({len(records)} multisets)", file=log)
    return records
