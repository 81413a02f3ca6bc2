"""Tree realizations with long diameter.

Given a tree realization with longest path ``A`` (endpoints ``x`` and
``y``), every other vertex hangs off ``A``. Two local moves keep the length
multiset while reshaping the tree:

* Claim-1 step: if some vertex ``u`` off the path sits at cyclic distance
  ``len(e)`` from ``x`` for an edge ``e`` off the path, reattach ``u`` to
  ``x`` and pay for it with ``e``. The path grows by one vertex.
* Swap: the same with ``u`` on the path. The path is rotated rather than
  grown, moving a length from the off-path edges onto ``A``.

Both moves are used as improvement steps inside a bounded loop. The loop can
stall, so it is followed by randomized restarts and finally by an anchored
construction that always succeeds for prime p.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field

from .errors import NoProgressError, NotFoundError, UsageError
from .exchange import exchange_edge, realize_tree, retarget, seed_tree
from .modular import LengthMultiset, Modulus, cyclic_length
from .realization import (
    Edge,
    TreeRealization,
    lengths_of_tree,
    longest_path,
    norm_edge,
    tree_diameter_vertices,
    tree_path,
)

STAGES = ("initial", "claim1", "swap", "restart", "exhaustive")


@dataclass(frozen=True)
class DecompositionView:
    A: tuple[int, ...]
    path_edges: frozenset[Edge]
    B_vertices: frozenset[int]
    B: tuple[Edge, ...]
    C: tuple[Edge, ...]
    lengths: dict = field(repr=False, compare=False)

    @property
    def B_prime(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.B + self.C))

    @property
    def endpoints(self) -> tuple[int, int]:
        return self.A[0], self.A[-1]

    @property
    def diameter(self) -> int:
        return len(self.A)

    def c(self, edges) -> set[int]:
        return {self.lengths[e] for e in edges}

    @property
    def c_A(self) -> set[int]:
        return self.c(self.path_edges)

    @property
    def c_B_prime(self) -> set[int]:
        return self.c(self.B_prime)

    def r(self, edges, i: int) -> int:
        """How many of ``edges`` have length ``i``."""
        return sum(1 for e in edges if self.lengths[e] == i)


def decompose(T: TreeRealization) -> DecompositionView:
    A = tuple(longest_path(T))
    on_path = set(A)
    path_edges = frozenset(norm_edge(A[i], A[i + 1]) for i in range(len(A) - 1))
    B, C = [], []
    for e in T.edges:
        inside = (e[0] in on_path) + (e[1] in on_path)
        if inside == 0:
            B.append(e)
        elif inside == 1:
            C.append(e)
    m = T.modulus
    lengths = {e: cyclic_length(m, *e) for e in T.edges}
    others = frozenset(range(T.p)) - on_path
    return DecompositionView(A, path_edges, others, tuple(B), tuple(C), lengths)


def _tag(prov: str, step: str) -> str:
    return f"{prov};{step}" if prov else step


def _check_conserved(before: TreeRealization, after: TreeRealization) -> None:
    assert lengths_of_tree(after) == lengths_of_tree(before), "step changed the length multiset"


def claim1_step(T: TreeRealization, view: DecompositionView, e: Edge, u: int, x: int | None = None) -> TreeRealization:
    """Reattach off-path vertex ``u`` to an endpoint; the diameter grows."""
    e = norm_edge(*e)
    if e not in view.B_prime or u not in view.B_vertices:
        raise NoProgressError("claim1_step needs an edge of B' and a vertex of B")
    m = T.modulus
    want = view.lengths[e]
    ends = view.endpoints if x is None else (x,)
    x = next((z for z in ends if z in view.endpoints and cyclic_length(m, z, u) == want), None)
    if x is None:
        raise NoProgressError(f"no endpoint of A lies at distance {want} from {u}")

    adj = T.adjacency()
    hop = tree_path(adj, u, view.A[0])
    f = norm_edge(hop[0], hop[1])
    step = T.replace([f], [(x, u)], _tag(T.provenance, f"claim1(x={x},u={u},e=({e[0]},{e[1]}),f=({f[0]},{f[1]}))"))
    if f != e:
        step = exchange_edge(step, e, view.lengths[f])
    _check_conserved(T, step)
    assert tree_diameter_vertices(step) > view.diameter
    return step


def swap_step(T: TreeRealization, view: DecompositionView, e: Edge, u: int, x: int | None = None) -> TreeRealization:
    """Cut the forced edge next to path vertex ``u`` and join ``u`` to an endpoint."""
    e = norm_edge(*e)
    if e not in view.B_prime:
        raise NoProgressError("swap_step needs an edge of B'")
    A = view.A
    if u not in A or u in view.endpoints:
        raise NoProgressError(f"vertex {u} is not an interior vertex of A")
    m = T.modulus
    want = view.lengths[e]
    ends = view.endpoints if x is None else (x,)
    for z in ends:
        if z not in view.endpoints or cyclic_length(m, z, u) != want:
            continue
        seq = A if z == A[0] else A[::-1]
        i = seq.index(u)
        if i < 2:
            continue  # u next to z: the forced edge is (z, u) itself
        f = norm_edge(seq[i - 1], seq[i])
        step = T.replace([f], [(z, u)], _tag(T.provenance, f"swap(x={z},u={u},e=({e[0]},{e[1]}),f=({f[0]},{f[1]}))"))
        step = exchange_edge(step, e, view.lengths[f])
        _check_conserved(T, step)
        assert tree_diameter_vertices(step) >= view.diameter
        return step
    raise NoProgressError(f"no usable endpoint for a swap at {u}")


def claim1_candidates(T: TreeRealization, view: DecompositionView):
    """``(x, u, e)`` triples in the deterministic order endpoints, u, e."""
    m = T.modulus
    by_length: dict[int, list[Edge]] = {}
    for e in view.B_prime:
        by_length.setdefault(view.lengths[e], []).append(e)
    for x in view.endpoints:
        for u in sorted(view.B_vertices):
            for e in by_length.get(cyclic_length(m, x, u), ()):
                yield x, u, e


def counting_bounds(view: DecompositionView, l: int) -> dict:
    """Inequalities that must hold once no Claim-1 step is available."""
    d = view.diameter
    cB, cA = view.c_B_prime, view.c_A
    return {
        "2|c(B')| <= d-1": 2 * len(cB) <= d - 1,
        "|c(A)| <= d-1": len(cA) <= d - 1,
        "|c(A) u c(B')| = l": len(cA | cB) == l,
    }


def swap_candidates(T: TreeRealization, view: DecompositionView):
    """Swaps that bring a missing length onto A, best-first.

    Lengths of B' absent from A with multiplicity above two come first,
    then those with multiplicity exactly two; within each, swaps whose
    forced length is not shared by A and B' are preferred.
    """
    m = T.modulus
    cA, cB = view.c_A, view.c_B_prime
    shared = cA & cB
    Bp = view.B_prime
    mult = Counter(view.lengths[e] for e in Bp)
    heavy = sorted(b for b in cB - cA if mult[b] > 2)
    light = sorted(b for b in cB - cA if mult[b] == 2)
    on_path = {v: i for i, v in enumerate(view.A)}
    for group in (heavy, light):
        preferred, rest = [], []
        for b in group:
            e = next(e for e in Bp if view.lengths[e] == b)
            for x in view.endpoints:
                seq = view.A if x == view.A[0] else view.A[::-1]
                for u in sorted({(x + b) % m.p, (x - b) % m.p}):
                    if u not in on_path or u in view.endpoints:
                        continue
                    i = seq.index(u)
                    if i < 2:
                        continue
                    forced = cyclic_length(m, seq[i - 1], seq[i])
                    (rest if forced in shared else preferred).append((x, u, e))
        yield from preferred
        yield from rest


@dataclass(frozen=True)
class ExtendConfig:
    max_sweeps: int | None = None  # default p**2
    restarts: int = 64
    restart_sweeps: int | None = None  # default 2p
    seed: int = 0
    fallback: bool = True


def improve_diameter(T: TreeRealization, goal: int, sweeps: int | None = None):
    """Apply Claim-1 steps, else swaps, until the diameter reaches ``goal``.

    Returns ``(tree, reached, used_swap)``. Trees seen before are not
    revisited, which rules out swap cycles.
    """
    l = lengths_of_tree(T).distinct
    sweeps = T.p**2 if sweeps is None else sweeps
    seen = {T.edges}
    used_swap = False
    for _ in range(sweeps):
        view = decompose(T)
        if view.diameter >= goal:
            return T, True, used_swap
        step = None
        for x, u, e in claim1_candidates(T, view):
            step = claim1_step(T, view, e, u, x)
            break
        if step is None:
            bounds = counting_bounds(view, l)
            assert all(bounds.values()), bounds
            for x, u, e in swap_candidates(T, view):
                cand = swap_step(T, view, e, u, x)
                if cand.edges not in seen:
                    step = cand
                    used_swap = True
                    break
        if step is None:
            return T, False, used_swap
        T = step
        seen.add(T.edges)
    return T, tree_diameter_vertices(T) >= goal, used_swap


def _anchor_path(m: Modulus, L: LengthMultiset, vertices: int) -> list[int] | None:
    """A path on ``vertices`` labels from 0 whose lengths fit inside ``L``."""
    left = L.counts
    path = [0]
    used = {0}

    def rec():
        if len(path) == vertices:
            return True
        v = path[-1]
        for d in sorted(left):
            if left[d] == 0:
                continue
            for w in ((v + d) % m.p, (v - d) % m.p):
                if w in used:
                    continue
                left[d] -= 1
                used.add(w)
                path.append(w)
                if rec():
                    return True
                path.pop()
                used.discard(w)
                left[d] += 1
        return False

    return path if rec() else None


def anchored_tree(m: Modulus, L: LengthMultiset, vertices: int) -> TreeRealization:
    """Tree realizing ``L`` containing a path on ``vertices`` labels.

    Lay down the path first, connect everything else along the p-cycle,
    then exchange lengths without ever cutting a path edge.
    """
    anchor = _anchor_path(m, L, vertices)
    if anchor is None:
        raise NotFoundError(f"no path on {vertices} vertices fits inside {L}")
    fixed = [norm_edge(anchor[i], anchor[i + 1]) for i in range(len(anchor) - 1)]
    parent = list(range(m.p))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    edges = []
    for u, v in fixed + [(v, (v + 1) % m.p) for v in range(m.p)]:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            edges.append(norm_edge(u, v))
    T = TreeRealization(m, tuple(edges), f"anchor({'-'.join(map(str, anchor))})")
    return retarget(T, L, frozen=fixed)


def extend_diameter(
    m: Modulus,
    L: LengthMultiset,
    config: ExtendConfig | None = None,
    start: TreeRealization | None = None,
) -> TreeRealization:
    """Tree realization of ``L`` with vertex-diameter at least ``l + 1``.

    ``l`` is the number of distinct lengths. The loop begins from
    ``realize_tree(m, L)`` unless a ``start`` realization of ``L`` is given.
    The provenance ends with ``stage=<name>`` naming the stage that
    succeeded (see STAGES).
    """
    config = config or ExtendConfig()
    m.require_prime("extend_diameter")
    if L.modulus != m or not L.is_target():
        raise UsageError(f"target must have p-1={m.p - 1} lengths for p={m.p}")
    l = L.distinct
    goal = l + 1
    sweeps = config.max_sweeps or m.p**2

    if start is None:
        T = realize_tree(m, L)
    else:
        if lengths_of_tree(start) != L:
            raise UsageError("start tree does not realize the target")
        T = start
    if tree_diameter_vertices(T) >= goal:
        return _finish(T, "initial")
    T, ok, swapped = improve_diameter(T, goal, sweeps)
    if ok:
        return _finish(T, "swap" if swapped else "claim1")

    restart_sweeps = config.restart_sweeps or 2 * m.p
    for r in range(config.restarts):
        rng = random.Random(config.seed * 100_003 + r)
        R = retarget(seed_tree(m), L, rng=rng)
        R = TreeRealization(m, R.edges, f"restart({r})")
        R, ok, _ = improve_diameter(R, goal, restart_sweeps)
        if ok:
            return _finish(R, "restart")

    if not config.fallback:
        raise NotFoundError(f"no tree of diameter >= {goal} for {L} before fallback")
    return _finish(anchored_tree(m, L, goal), "exhaustive")


def _finish(T: TreeRealization, stage: str) -> TreeRealization:
    return TreeRealization(T.modulus, T.edges, _tag(T.provenance, f"stage={stage}"))


def extension_stage(T: TreeRealization) -> str | None:
    tail = T.provenance.rsplit(";", 1)[-1]
    return tail[len("stage="):] if tail.startswith("stage=") else None
