import heapq
import json
import random
from pathlib import Path

import pytest

from buratti.modular import Modulus
from buratti.realization import TreeRealization

FIXTURES = Path(__file__).parent / "fixtures"

PRIMES_SMALL = (3, 5, 7, 11, 13)


def random_tree(m: Modulus, rng: random.Random) -> TreeRealization:
    """Uniform random labeled tree via a random Pruefer sequence."""
    p = m.p
    seq = [rng.randrange(p) for _ in range(p - 2)]
    deg = [1] * p
    for x in seq:
        deg[x] += 1
    leaves = [i for i in range(p) if deg[i] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        deg[x] -= 1
        if deg[x] == 1:
            heapq.heappush(leaves, x)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return TreeRealization(m, tuple(edges), "random")


def tree_signature(edges, p: int) -> str:
    """AHU canonical form of an unlabeled tree; equal iff isomorphic."""
    adj = [[] for _ in range(p)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    # peel leaves to find the center(s)
    deg = [len(a) for a in adj]
    layer = [v for v in range(p) if deg[v] <= 1]
    left = p
    while left > 2:
        left -= len(layer)
        nxt = []
        for v in layer:
            for w in adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt

    def encode(v, parent):
        return "(" + "".join(sorted(encode(w, v) for w in adj[v] if w != parent)) + ")"

    return min(encode(c, -1) for c in layer)


def load_golden():
    with open(FIXTURES / "golden_counts.jsonl") as fh:
        return [json.loads(line) for line in fh]


@pytest.fixture
def rng():
    return random.Random(20261014)


# acceptance summary ---------------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
