"""Inner loops for Hamiltonian-path search and enumeration.

All kernels take and mutate plain int64/uint8 numpy arrays and are compiled
with numba unless ``BURATTI_NO_NUMBA`` is set (see ``_jit``). The search
kernel keeps its whole DFS stack in caller-owned arrays so a search can be
paused after a node quota and resumed.
"""
import numpy as np

from ._jit import njit

FOUND = 1
EXHAUSTED = 0
PAUSED = -1


@njit
def path_search(p, counts, order, linear, path, used, choice, visited, state, node_limit):
    """Depth-first search for a path whose edge lengths consume ``counts``.

    ``order`` lists candidate lengths; each contributes a ``+d`` and a
    ``-d`` move. Cyclic searches start at 0 and take ``+d`` first (the
    reflection ``v -> -v`` covers the rest); linear searches try start
    vertices ``0..(p-1)//2`` (the reflection ``v -> p-1-v`` covers the rest).
    ``state`` holds ``[depth, start]``. Returns ``(status, nodes)``.
    """
    K = order.shape[0]
    depth = state[0]
    start = state[1]
    last = p - 1
    half = (p - 1) // 2
    nodes = 0
    while True:
        if depth == last:
            state[0] = depth
            return FOUND, nodes
        v = path[depth]
        j = choice[depth]
        advanced = False
        while j < 2 * K:
            d = order[j >> 1]
            s = j & 1
            j += 1
            if counts[d] == 0:
                continue
            if linear:
                w = v + d if s == 0 else v - d
                if w < 0 or w >= p:
                    continue
            else:
                if s == 1 and (depth == 0 or 2 * d == p):
                    continue
                w = (v + d) % p if s == 0 else (v - d) % p
            if visited[w]:
                continue
            choice[depth] = j
            counts[d] -= 1
            visited[w] = 1
            depth += 1
            path[depth] = w
            used[depth] = d
            choice[depth] = 0
            nodes += 1
            advanced = True
            break
        if not advanced:
            if depth == 0:
                visited[start] = 0
                if linear and start < half:
                    start += 1
                    state[1] = start
                    path[0] = start
                    visited[start] = 1
                    choice[0] = 0
                    continue
                state[0] = 0
                return EXHAUSTED, nodes
            visited[path[depth]] = 0
            counts[used[depth]] += 1
            depth -= 1
        if nodes >= node_limit:
            state[0] = depth
            return PAUSED, nodes


@njit
def cyclic_census(p, n):
    """Tally every directed Hamiltonian path from vertex 0 by length profile.

    The profile ``(a_1..a_n)`` is packed as ``sum a_d * p**(d-1)``; the
    result has ``p**n`` bins. No pruning at all: this is the oracle.
    """
    size = 1
    for _ in range(n):
        size *= p
    weight = np.ones(n + 1, dtype=np.int64)
    for d in range(2, n + 1):
        weight[d] = weight[d - 1] * p
    census = np.zeros(size, dtype=np.int64)
    path = np.zeros(p, dtype=np.int64)
    nxt = np.zeros(p, dtype=np.int64)
    code = np.zeros(p, dtype=np.int64)
    visited = np.zeros(p, dtype=np.uint8)
    visited[0] = 1
    depth = 0
    while depth >= 0:
        if depth == p - 1:
            census[code[depth]] += 1
            visited[path[depth]] = 0
            depth -= 1
            continue
        v = path[depth]
        w = nxt[depth]
        while w < p and visited[w]:
            w += 1
        if w == p:
            if depth > 0:
                visited[v] = 0
            depth -= 1
            continue
        nxt[depth] = w + 1
        diff = w - v if w > v else v - w
        d = diff if 2 * diff <= p else p - diff
        visited[w] = 1
        depth += 1
        path[depth] = w
        code[depth] = code[depth - 1] + weight[d]
        nxt[depth] = 0
    return census


@njit
def enumerate_matching(p, counts, linear, cap, witnesses):
    """Count Hamiltonian paths realizing ``counts``, filling up to ``cap`` witnesses.

    Cyclic: directed paths from 0 are counted (rotation moves any path
    there); linear: every directed path with first label < last label.
    Returns ``(count_of_enumerated_paths, witnesses_written)``.
    """
    path = np.zeros(p, dtype=np.int64)
    used = np.zeros(p, dtype=np.int64)
    nxt = np.zeros(p, dtype=np.int64)
    visited = np.zeros(p, dtype=np.uint8)
    total = 0
    stored = 0
    last_start = p - 1 if linear else 0
    for start in range(last_start + 1):
        path[0] = start
        visited[start] = 1
        nxt[0] = 0
        depth = 0
        while depth >= 0:
            if depth == p - 1:
                if not linear or path[0] < path[p - 1]:
                    if stored < cap:
                        for i in range(p):
                            witnesses[stored, i] = path[i]
                        stored += 1
                    total += 1
                visited[path[depth]] = 0
                counts[used[depth]] += 1
                depth -= 1
                continue
            v = path[depth]
            w = nxt[depth]
            d = 0
            found = False
            while w < p:
                if not visited[w]:
                    diff = w - v if w > v else v - w
                    d = diff if (linear or 2 * diff <= p) else p - diff
                    if counts[d] > 0:
                        found = True
                        break
                w += 1
            if not found:
                visited[v] = 0
                if depth > 0:
                    counts[used[depth]] += 1
                depth -= 1
                continue
            nxt[depth] = w + 1
            counts[d] -= 1
            visited[w] = 1
            depth += 1
            path[depth] = w
            used[depth] = d
            nxt[depth] = 0
    return total, stored
