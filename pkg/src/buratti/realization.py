"""Spanning-tree and Hamiltonian-path realizations and their verifier.

Diameter follows the vertex-count convention: a path on ``d`` vertices has
diameter ``d``, so a spanning path on p labels has diameter p.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Literal, Sequence, Union

from .errors import InvalidRealizationError, UsageError
from .modular import LengthMultiset, Modulus, cyclic_length, linear_length

Edge = tuple[int, int]
Kind = Literal["tree", "cyclic-path", "linear-path"]
KINDS: tuple[str, ...] = ("tree", "cyclic-path", "linear-path")


def norm_edge(u: int, v: int) -> Edge:
    u, v = int(u), int(v)
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class TreeRealization:
    """Edge list on the labels ``0..p-1``, stored sorted.

    Construction never rejects a bad edge list so that the verifier can
    report on it; call :meth:`check` to demand a spanning tree.
    """

    modulus: Modulus
    edges: tuple[Edge, ...]
    provenance: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted(norm_edge(u, v) for u, v in self.edges)))

    @property
    def p(self) -> int:
        return self.modulus.p

    def problems(self) -> list[str]:
        p = self.p
        out = []
        if len(self.edges) != p - 1:
            out.append(f"{len(self.edges)} edges, a spanning tree on {p} vertices has {p - 1}")
        if len(set(self.edges)) != len(self.edges):
            out.append("duplicate edges")
        parent = list(range(p))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            if not (0 <= u < p and 0 <= v < p):
                out.append(f"edge ({u},{v}) leaves 0..{p - 1}")
                continue
            if u == v:
                out.append(f"self-loop at {u}")
                continue
            ru, rv = find(u), find(v)
            if ru == rv:
                out.append(f"edge ({u},{v}) closes a cycle")
            else:
                parent[ru] = rv
        if len({find(x) for x in range(p)}) != 1:
            out.append("edges do not connect every vertex")
        return out

    def check(self) -> "TreeRealization":
        bad = self.problems()
        if bad:
            raise InvalidRealizationError("; ".join(bad))
        return self

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.p)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for nbrs in adj:
            nbrs.sort()
        return adj

    def replace(self, remove: Sequence[Edge] = (), add: Sequence[Edge] = (), provenance: str | None = None):
        edges = list(self.edges)
        for e in remove:
            edges.remove(norm_edge(*e))
        edges.extend(norm_edge(*e) for e in add)
        return TreeRealization(self.modulus, tuple(edges), self.provenance if provenance is None else provenance)


@dataclass(frozen=True)
class PathRealization:
    modulus: Modulus
    order: tuple[int, ...]
    provenance: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(int(v) for v in self.order))

    @property
    def p(self) -> int:
        return self.modulus.p

    @property
    def edges(self) -> list[Edge]:
        return [(self.order[i], self.order[i + 1]) for i in range(len(self.order) - 1)]

    def problems(self) -> list[str]:
        if sorted(self.order) != list(range(self.p)):
            return [f"order is not a permutation of 0..{self.p - 1}"]
        return []

    def to_tree(self) -> TreeRealization:
        return TreeRealization(self.modulus, tuple(self.edges), self.provenance)


Realization = Union[TreeRealization, PathRealization]


@dataclass(frozen=True)
class RealizationReport:
    kind: str
    valid: bool
    achieved: LengthMultiset
    target: LengthMultiset
    diameter_vertices: int | None = None
    provenance: str = ""
    problems: tuple[str, ...] = ()


def _lengths(m: Modulus, edges, linear: bool) -> LengthMultiset:
    out = []
    for u, v in edges:
        if 0 <= u < m.p and 0 <= v < m.p and u != v:
            out.append(linear_length(u, v) if linear else cyclic_length(m, u, v))
    return LengthMultiset.from_lengths(m, out, linear=linear)


def lengths_of_tree(T: TreeRealization) -> LengthMultiset:
    T.check()
    return _lengths(T.modulus, T.edges, linear=False)


def lengths_of_path(P: PathRealization, linear: bool = False) -> LengthMultiset:
    bad = P.problems()
    if bad:
        raise InvalidRealizationError("; ".join(bad))
    return _lengths(P.modulus, P.edges, linear)


def verify(candidate: Realization, target: LengthMultiset, kind: str) -> RealizationReport:
    """Check a candidate against ``target``; never raises on a bad candidate."""
    if kind not in KINDS:
        raise UsageError(f"unknown kind {kind!r}")
    if candidate.modulus != target.modulus:
        raise UsageError(f"candidate has p={candidate.p}, target has p={target.modulus.p}")
    is_tree = isinstance(candidate, TreeRealization)
    if is_tree != (kind == "tree"):
        raise UsageError(f"kind {kind!r} does not fit a {type(candidate).__name__}")

    problems = candidate.problems()
    achieved = _lengths(candidate.modulus, candidate.edges, linear=kind == "linear-path")
    if achieved.counts != target.counts:
        problems.append(f"achieved {achieved} differs from target {target}")
    diameter = None
    if is_tree and not candidate.problems():
        diameter = tree_diameter_vertices(candidate)
    return RealizationReport(
        kind=kind,
        valid=not problems,
        achieved=achieved,
        target=target,
        diameter_vertices=diameter,
        provenance=candidate.provenance,
        problems=tuple(problems),
    )


def bfs_distances(adj: list[list[int]], source: int) -> list[int]:
    dist = [-1] * len(adj)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def tree_path(adj: list[list[int]], source: int, target: int) -> list[int]:
    """The unique tree path from ``source`` to ``target``."""
    prev = [-1] * len(adj)
    prev[source] = source
    queue = deque([source])
    while queue:
        u = queue.popleft()
        if u == target:
            break
        for w in adj[u]:
            if prev[w] < 0:
                prev[w] = u
                queue.append(w)
    path = [target]
    while path[-1] != source:
        path.append(prev[path[-1]])
    return path[::-1]


def tree_diameter_vertices(T: TreeRealization) -> int:
    T.check()
    adj = T.adjacency()
    first = bfs_distances(adj, 0)
    far = max(range(T.p), key=first.__getitem__)
    return max(bfs_distances(adj, far)) + 1


def longest_path(T: TreeRealization) -> list[int]:
    """A longest path, from the lexicographically smallest endpoint pair.

    Paths in a tree are unique given their endpoints, so the endpoint pair
    alone settles the tie-break.
    """
    T.check()
    adj = T.adjacency()
    first = bfs_distances(adj, 0)
    far = max(range(T.p), key=first.__getitem__)
    span = max(bfs_distances(adj, far))
    for u in range(T.p):
        dist = bfs_distances(adj, u)
        if max(dist) == span:
            v = dist.index(span)
            return tree_path(adj, u, v)
    raise AssertionError("unreachable: some vertex has full eccentricity")


# canonical JSON record -----------------------------------------------------

def to_record(R: Realization, target: LengthMultiset, kind: str) -> dict:
    """Record with deterministic key order and sorted edges."""
    report = verify(R, target, kind)
    rec: dict = {"p": R.p, "kind": kind, "target": str(target)}
    if isinstance(R, TreeRealization):
        rec["edges"] = [list(e) for e in sorted(R.edges)]
    else:
        rec["order"] = list(R.order)
    rec["valid"] = report.valid
    rec["diameter_vertices"] = report.diameter_vertices
    rec["provenance"] = R.provenance
    return rec


def from_record(rec: dict) -> tuple[Realization, LengthMultiset, str]:
    from .modular import parse_multiset

    try:
        m = Modulus(int(rec["p"]))
        kind = rec["kind"]
        if kind not in KINDS:
            raise ValueError(f"unknown kind {kind!r}")
        target = parse_multiset(rec["target"], m, linear=kind == "linear-path")
        prov = rec.get("provenance", "") or ""
        if kind == "tree":
            R: Realization = TreeRealization(m, tuple((int(u), int(v)) for u, v in rec["edges"]), prov)
        else:
            R = PathRealization(m, tuple(int(v) for v in rec["order"]), prov)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed realization record: {exc}") from exc
    return R, target, kind


def to_dot(R: Realization, target: LengthMultiset | None = None, kind: str | None = None) -> str:
    """DOT graph with labels placed on a circle and edges labeled by cyclic length."""
    import math

    m = R.modulus
    radius = max(2.0, m.p / 3.0)
    title = f"p={m.p}" + (f" {kind}" if kind else "") + (f" {target}" if target is not None else "")
    lines = ["graph realization {", f'  graph [label="{title}"];', "  node [shape=circle];"]
    for v in range(m.p):
        angle = 2 * math.pi * v / m.p
        x, y = radius * math.sin(angle), radius * math.cos(angle)
        lines.append(f'  {v} [pos="{x:.3f},{y:.3f}!"];')
    for u, v in sorted(norm_edge(*e) for e in R.edges):
        if 0 <= u < m.p and 0 <= v < m.p and u != v:
            lines.append(f'  {u} -- {v} [label="{cyclic_length(m, u, v)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
