"""Hamiltonian-path realizations by exact backtracking, plus transfer along phi_k."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from math import gcd
from typing import NamedTuple

import numpy as np

from . import kernels
from .errors import BudgetExhausted, UsageError
from .modular import LengthMultiset, Modulus, map_multiset, sigma
from .realization import PathRealization, Realization, TreeRealization, verify

_CHUNK = 1 << 22


@dataclass(frozen=True)
class SolveBudget:
    node_limit: int = 10**11
    time_limit: float | None = None  # seconds
    deterministic_order: bool = True
    seed: int = 0

    def __post_init__(self):
        if self.node_limit <= 0:
            raise UsageError("node_limit must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise UsageError("time_limit must be positive")


class SearchOutcome(NamedTuple):
    status: str  # "found" | "not-found" | "budget-exhausted"
    path: PathRealization | None
    nodes: int


def search(m: Modulus, L: LengthMultiset, kind: str = "cyclic-path", budget: SolveBudget | None = None) -> SearchOutcome:
    """Run the backtracking search and report status and node count.

    ``not-found`` is returned only when the search space is exhausted;
    running out of budget yields ``budget-exhausted``.
    """
    budget = budget or SolveBudget()
    if kind not in ("cyclic-path", "linear-path"):
        raise UsageError(f"path search has no kind {kind!r}")
    linear = kind == "linear-path"
    if L.modulus != m:
        raise UsageError("multiset belongs to a different modulus")
    if L.size != m.p - 1:
        raise UsageError(f"target {L} has {L.size} lengths, need {m.p - 1}")
    p = m.p
    counts = np.zeros(p, dtype=np.int64)
    for d, a in L.items:
        counts[d] = a
    support = list(L.support)
    if not budget.deterministic_order:
        random.Random(budget.seed).shuffle(support)
    order = np.array(support, dtype=np.int64)

    path = np.zeros(p, dtype=np.int64)
    used = np.zeros(p, dtype=np.int64)
    choice = np.zeros(p, dtype=np.int64)
    visited = np.zeros(p, dtype=np.uint8)
    visited[0] = 1
    state = np.zeros(2, dtype=np.int64)

    nodes = 0
    t0 = time.monotonic()
    while True:
        quota = min(_CHUNK, budget.node_limit - nodes)
        status, spent = kernels.path_search(p, counts, order, linear, path, used, choice, visited, state, quota)
        nodes += int(spent)
        if status == kernels.FOUND:
            tag = "search" if budget.deterministic_order else f"search(seed={budget.seed})"
            R = PathRealization(m, tuple(path.tolist()), tag)
            report = verify(R, L, kind)
            assert report.valid, report.problems
            return SearchOutcome("found", R, nodes)
        if status == kernels.EXHAUSTED:
            return SearchOutcome("not-found", None, nodes)
        over_time = budget.time_limit is not None and time.monotonic() - t0 > budget.time_limit
        if nodes >= budget.node_limit or over_time:
            return SearchOutcome("budget-exhausted", None, nodes)


def _solve(m, L, kind, budget):
    out = search(m, L, kind, budget)
    if out.status == "budget-exhausted":
        raise BudgetExhausted(f"search for {L} (p={m.p}) stopped after {out.nodes} nodes", out.nodes)
    return out.path


def solve_cyclic(m: Modulus, L: LengthMultiset, budget: SolveBudget | None = None) -> PathRealization | None:
    """Hamiltonian path with cyclic lengths ``L``, or None if none exists.

    Raises BudgetExhausted when the budget runs out first.
    """
    return _solve(m, L, "cyclic-path", budget)


def solve_linear(m: Modulus, L: LengthMultiset, budget: SolveBudget | None = None) -> PathRealization | None:
    if not L.linear:
        L = LengthMultiset(L.modulus, L.items, linear=True)
    return _solve(m, L, "linear-path", budget)


def two_length_conditions(q: int, d: int, t: int, a: int, b: int | None = None) -> dict:
    """Evaluate each clause of the two-length realizability law for ``{d^a, t^b}``."""
    if b is None:
        b = q - 1 - a
    if q < 3:
        raise UsageError("q must be at least 3")
    if a < 0 or b < 0 or a + b != q - 1:
        raise UsageError(f"need a, b >= 0 with a + b = q - 1 = {q - 1}, got a={a}, b={b}")
    if not (1 <= d <= q // 2 and 1 <= t <= q // 2):
        raise UsageError(f"lengths must lie in 1..{q // 2}")
    if d == t:
        raise UsageError("the two lengths must differ")
    g = gcd(gcd(q, d), t)
    low = gcd(t, q) - 1
    high = q - gcd(d, q)
    return {
        "gcd(q,d,t)": g,
        "coprime": g == 1,
        "lower": low,
        "upper": high,
        "in_range": low <= a <= high,
        "feasible": g == 1 and low <= a <= high,
    }


def two_length_feasible(q: int, d: int, t: int, a: int, b: int | None = None) -> bool:
    return two_length_conditions(q, d, t, a, b)["feasible"]


def transfer(m: Modulus, k: int, R: Realization) -> Realization:
    """Relabel every vertex ``v`` as ``k*v mod p``."""
    m.check_unit(k)
    tag = f"transfer(k={k})"
    prov = f"{R.provenance};{tag}" if R.provenance else tag
    if isinstance(R, PathRealization):
        return PathRealization(m, tuple(sigma(m, k, v) for v in R.order), prov)
    return TreeRealization(m, tuple((sigma(m, k, u), sigma(m, k, v)) for u, v in R.edges), prov)


def solve_123_family(m: Modulus, k: int, a: int, b: int, c: int, budget: SolveBudget | None = None) -> PathRealization:
    """Path for ``{phi_k(1)^a, phi_k(2)^b, phi_k(3)^c}`` via the ``{1,2,3}`` instance.

    The base instance is always realizable for prime p, so an exhausted
    search here means a bug, not a counterexample.
    """
    m.require_prime("solve_123_family")
    if min(a, b, c) < 0 or a + b + c != m.p - 1:
        raise UsageError(f"need a + b + c = {m.p - 1}")
    if not 1 <= k <= m.n:
        raise UsageError(f"k must lie in 1..{m.n}")
    if c > 0 and m.n < 3 or b > 0 and m.n < 2:
        raise UsageError(f"p={m.p} has no room for the requested lengths")
    base = LengthMultiset.from_counts(m, {1: a, 2: b, 3: c})
    R = solve_cyclic(m, base, budget)
    if R is None:
        raise RuntimeError(f"no path for {base} at p={m.p}; the base family should always be realizable")
    out = transfer(m, k, R)
    image = map_multiset(m, k, base)
    report = verify(out, image, "cyclic-path")
    assert report.valid, report.problems
    return out

