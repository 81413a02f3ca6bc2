"""Length exchanges on spanning trees.

Cutting a tree edge splits the labels into two sides. For prime p the
vertices ``x, x+d, x+2d, ...`` run through every label, so that cycle
crosses the cut at least twice: some length-``d`` pair always reconnects
the two sides. Repeating the cut-and-reconnect move turns the seed path
``0-1-...-(p-1)`` into a tree for any target multiset.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Collection

from .errors import DomainError, UsageError
from .modular import LengthMultiset, Modulus, cyclic_length
from .realization import Edge, TreeRealization, lengths_of_tree, norm_edge


@dataclass(frozen=True)
class CutWitness:
    removed_edge: Edge
    side_one: frozenset[int]
    side_two: frozenset[int]
    d: int
    crossing_edges: tuple[Edge, ...]


def _side_of(T: TreeRealization, e: Edge) -> set[int]:
    """Vertices still reachable from ``e[0]`` once ``e`` is cut."""
    adj = T.adjacency()
    u, v = e
    seen = {u}
    stack = [u]
    while stack:
        a = stack.pop()
        for b in adj[a]:
            if (a == u and b == v) or (a == v and b == u) or b in seen:
                continue
            seen.add(b)
            stack.append(b)
    return seen


def crossing_edges(T: TreeRealization, e: Edge, d: int) -> CutWitness:
    m = T.modulus
    m.require_prime("crossing_edges")
    e = norm_edge(*e)
    if e not in T.edges:
        raise UsageError(f"edge {e} is not in the tree")
    if not 1 <= d <= m.n:
        raise DomainError(f"length {d} outside 1..{m.n}")
    one = _side_of(T, e)
    two = set(range(m.p)) - one
    found = set()
    for x in one:
        for y in ((x + d) % m.p, (x - d) % m.p):
            if y in two:
                found.add(norm_edge(x, y))
    return CutWitness(e, frozenset(one), frozenset(two), d, tuple(sorted(found)))


def _step_tag(old: int, new: int, removed: Edge, added: Edge) -> str:
    return f"swap({old}→{new}: -({removed[0]},{removed[1]}) +({added[0]},{added[1]}))"


def _append(prov: str, step: str) -> str:
    return f"{prov};{step}" if prov else step


def exchange_edge(T: TreeRealization, edge: Edge, d: int, rng: random.Random | None = None) -> TreeRealization:
    """Cut ``edge`` and reconnect with a length-``d`` crossing pair.

    Picks the smallest crossing pair other than ``edge`` itself, or a random
    one when ``rng`` is given.
    """
    edge = norm_edge(*edge)
    cut = crossing_edges(T, edge, d)
    options = [c for c in cut.crossing_edges if c != edge]
    if not options:
        # only possible for composite p; prime p guarantees a fresh pair
        raise AssertionError(f"no crossing edge of length {d} across cut at {edge}")
    added = rng.choice(options) if rng is not None else options[0]
    old = cyclic_length(T.modulus, *edge)
    return T.replace([edge], [added], _append(T.provenance, _step_tag(old, d, edge, added)))


def exchange(T: TreeRealization, remove_length: int, add_length: int) -> TreeRealization:
    m = T.modulus
    m.require_prime("exchange")
    for edge in T.edges:
        if cyclic_length(m, *edge) == remove_length:
            return exchange_edge(T, edge, add_length)
    raise UsageError(f"tree has no edge of length {remove_length}")


def seed_tree(m: Modulus) -> TreeRealization:
    """The path ``0-1-...-(p-1)``, realizing ``{1^(p-1)}``."""
    return TreeRealization(m, tuple((v, v + 1) for v in range(m.p - 1)), "seed")


def retarget(
    T: TreeRealization,
    L: LengthMultiset,
    frozen: Collection[Edge] = (),
    rng: random.Random | None = None,
) -> TreeRealization:
    """Exchange lengths until ``T`` realizes ``L``, never cutting a ``frozen`` edge.

    Each step trades the smallest surplus length for the smallest missing
    one, so the number of steps equals the size of the surplus.
    """
    m = T.modulus
    m.require_prime("retarget")
    L.require_target()
    frozen = {norm_edge(*e) for e in frozen}
    current = lengths_of_tree(T)
    while True:
        excess = current.minus(L)
        if excess.size == 0:
            return T
        deficit = L.minus(current)
        old, new = excess.support[0], deficit.support[0]
        if rng is not None:
            old, new = rng.choice(excess.support), rng.choice(deficit.support)
        cands = [e for e in T.edges if e not in frozen and cyclic_length(m, *e) == old]
        if not cands:
            raise UsageError(f"every edge of length {old} is frozen; target {L} unreachable")
        edge = rng.choice(cands) if rng is not None else cands[0]
        T = exchange_edge(T, edge, new, rng)
        current = current.remove(old).add(new)


def realize_tree(m: Modulus, L: LengthMultiset) -> TreeRealization:
    m.require_prime("realize_tree")
    if L.modulus != m:
        raise UsageError("multiset belongs to a different modulus")
    if not L.is_target():
        raise UsageError(f"target {L} has {L.size} lengths, need {m.p - 1}")
    return retarget(seed_tree(m), L)


def exchange_count(T: TreeRealization) -> int:
    return sum(1 for step in T.provenance.split(";") if step.startswith("swap("))
