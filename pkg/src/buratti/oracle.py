"""Exhaustive enumeration on tiny instances.

Nothing here is clever on purpose: these routines are the ground truth the
solver and the exchange engine are checked against.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import BudgetExhausted, SizeRefusedError, UsageError
from .modular import LengthMultiset, Modulus, cyclic_length
from .realization import PathRealization, TreeRealization, tree_diameter_vertices

MAX_PATH_P = 12
MAX_TREE_P = 9


@dataclass(frozen=True)
class EnumerationResult:
    target: LengthMultiset
    kind: str
    count: int
    witnesses: tuple = ()


def _kind(kind: str) -> str:
    aliases = {"cyclic": "cyclic-path", "linear": "linear-path"}
    kind = aliases.get(kind, kind)
    if kind not in ("cyclic-path", "linear-path"):
        raise UsageError(f"unknown path kind {kind!r}")
    return kind


def enumerate_paths(m: Modulus, L: LengthMultiset, kind: str = "cyclic", cap: int = 16) -> EnumerationResult:
    """Count Hamiltonian paths realizing ``L``, a path and its reverse counted once."""
    kind = _kind(kind)
    if m.p > MAX_PATH_P:
        raise SizeRefusedError(f"path enumeration is limited to p <= {MAX_PATH_P}, got {m.p}")
    if L.size != m.p - 1:
        raise UsageError(f"target {L} has {L.size} lengths, need {m.p - 1}")
    linear = kind == "linear-path"
    counts = np.zeros(m.p, dtype=np.int64)
    for d, a in L.items:
        counts[d] = a
    witnesses = np.zeros((max(cap, 0), m.p), dtype=np.int64)
    total, stored = kernels.enumerate_matching(m.p, counts, linear, max(cap, 0), witnesses)
    total = int(total)
    if not linear:
        # every directed path rotates to exactly one that starts at 0
        total = m.p * total // 2
    paths = tuple(PathRealization(m, tuple(row), "enumeration") for row in witnesses[:stored].tolist())
    return EnumerationResult(L, kind, total, paths)


@lru_cache(maxsize=None)
def _census(p: int) -> dict[tuple[tuple[int, int], ...], int]:
    m = Modulus(p)
    if p > MAX_PATH_P:
        raise SizeRefusedError(f"path census is limited to p <= {MAX_PATH_P}, got {p}")
    raw = kernels.cyclic_census(p, m.n)
    out = {}
    for code in np.flatnonzero(raw).tolist():
        items, c = [], code
        for d in range(1, m.n + 1):
            c, a = divmod(c, p)
            if a:
                items.append((d, a))
        out[tuple(items)] = p * int(raw[code]) // 2
    return out


def cyclic_census(m: Modulus) -> dict[LengthMultiset, int]:
    """Number of cyclic realizations of every realizable multiset, in one sweep."""
    return {LengthMultiset(m, items): c for items, c in _census(m.p).items()}


def _all_edges(m: Modulus):
    return [(u, v) for u in range(m.p) for v in range(u + 1, m.p)]


def _tree_search(m: Modulus, L: LengthMultiset, node_limit: int | None = None):
    """Yield every edge set of a spanning tree realizing ``L``.

    Chooses edges in lexicographic order, skipping any that would close a
    cycle, and gives up on a branch once the remaining edges cannot supply
    the lengths still owed. Raises BudgetExhausted past ``node_limit``.
    """
    edges = _all_edges(m)
    lengths = [cyclic_length(m, u, v) for u, v in edges]
    E = len(edges)
    top = m.n
    suffix = np.zeros((E + 1, top + 1), dtype=np.int64)
    for i in range(E - 1, -1, -1):
        suffix[i] = suffix[i + 1]
        suffix[i, lengths[i]] += 1
    need = [0] * (top + 1)
    for d, a in L.items:
        need[d] = a
    chosen: list[tuple[int, int]] = []
    nodes = [0]

    def find(parent, x):
        while parent[x] != x:
            x = parent[x]
        return x

    def rec(start, parent, remaining):
        if remaining == 0:
            yield tuple(chosen)
            return
        for i in range(start, E):
            if E - i < remaining:
                return
            d = lengths[i]
            if need[d] == 0:
                continue
            u, v = edges[i]
            ru, rv = find(parent, u), find(parent, v)
            if ru == rv:
                continue
            nodes[0] += 1
            if node_limit is not None and nodes[0] > node_limit:
                raise BudgetExhausted(f"tree search for {L} passed {node_limit} nodes", nodes[0])
            need[d] -= 1
            if all(need[x] <= suffix[i + 1, x] for x in range(1, top + 1)):
                child = list(parent)
                child[ru] = rv
                chosen.append((u, v))
                yield from rec(i + 1, child, remaining - 1)
                chosen.pop()
            need[d] += 1

    yield from rec(0, list(range(m.p)), m.p - 1)


def enumerate_trees(m: Modulus, L: LengthMultiset, cap: int = 16, min_diameter: int | None = None) -> EnumerationResult:
    """Count spanning trees on ``0..p-1`` whose cyclic lengths are ``L``."""
    if m.p > MAX_TREE_P:
        raise SizeRefusedError(f"tree enumeration is limited to p <= {MAX_TREE_P}, got {m.p}")
    if L.size != m.p - 1:
        raise UsageError(f"target {L} has {L.size} lengths, need {m.p - 1}")
    count = 0
    found = []
    for edges in _tree_search(m, L):
        T = TreeRealization(m, edges, "enumeration")
        if min_diameter is not None and tree_diameter_vertices(T) < min_diameter:
            continue
        count += 1
        if len(found) < cap:
            found.append(T)
    return EnumerationResult(L, "tree", count, tuple(found))


def _support_connects(m: Modulus, L: LengthMultiset) -> bool:
    """Whether the edges of the lengths in ``L`` connect all labels at all."""
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for d in L.support:
            for w in ((u + d) % m.p, (u - d) % m.p):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    return len(seen) == m.p


def composite_best_effort(m: Modulus, L: LengthMultiset, node_limit: int = 2_000_000) -> TreeRealization | None:
    """Tree realization for composite p by exhaustive search.

    Returns None only after the search space is exhausted; raises
    BudgetExhausted if ``node_limit`` is hit first.
    """
    if m.is_prime:
        raise UsageError("composite_best_effort is for composite p; use realize_tree")
    if L.size != m.p - 1:
        raise UsageError(f"target {L} has {L.size} lengths, need {m.p - 1}")
    if not _support_connects(m, L):
        return None
    for edges in _tree_search(m, L, node_limit):
        return TreeRealization(m, edges, "composite-search")
    return None
