"""The interpreted kernels must agree with the compiled ones."""
import os
import subprocess
import sys

import numpy as np
import pytest

from buratti import kernels
from buratti._jit import HAVE_NUMBA, backend
from buratti.modular import Modulus, all_multisets

needs_numba = pytest.mark.skipif(not HAVE_NUMBA, reason="numba not available")


def plain(fn):
    return getattr(fn, "py_func", fn)


def run_search(fn, p, L, linear, limit=10**9):
    counts = np.zeros(p, dtype=np.int64)
    for d, a in L.items:
        counts[d] = a
    order = np.array(L.support, dtype=np.int64)
    path = np.zeros(p, dtype=np.int64)
    used = np.zeros(p, dtype=np.int64)
    choice = np.zeros(p, dtype=np.int64)
    visited = np.zeros(p, dtype=np.uint8)
    visited[0] = 1
    state = np.zeros(2, dtype=np.int64)
    status, nodes = fn(p, counts, order, linear, path, used, choice, visited, state, limit)
    return int(status), int(nodes), path.tolist()


@needs_numba
@pytest.mark.parametrize("p", [5, 6, 7])
@pytest.mark.parametrize("linear", [False, True])
def test_search_fallback_agrees(p, linear):
    m = Modulus(p)
    for L in all_multisets(m):
        assert run_search(plain(kernels.path_search), p, L, linear) == run_search(kernels.path_search, p, L, linear)


@needs_numba
@pytest.mark.parametrize("p", [5, 7, 8])
def test_census_fallback_agrees(p):
    n = p // 2
    assert np.array_equal(plain(kernels.cyclic_census)(p, n), kernels.cyclic_census(p, n))


@needs_numba
@pytest.mark.parametrize("linear", [False, True])
def test_enumerate_fallback_agrees(linear):
    p = 7
    for L in list(all_multisets(Modulus(p)))[::3]:
        counts = np.zeros(p, dtype=np.int64)
        for d, a in L.items:
            counts[d] = a
        w1 = np.zeros((3, p), dtype=np.int64)
        w2 = np.zeros((3, p), dtype=np.int64)
        r1 = plain(kernels.enumerate_matching)(p, counts.copy(), linear, 3, w1)
        r2 = kernels.enumerate_matching(p, counts.copy(), linear, 3, w2)
        assert tuple(map(int, r1)) == tuple(map(int, r2))
        assert np.array_equal(w1, w2)


def test_search_pauses_and_resumes():
    p = 11
    m = Modulus(p)
    L = next(x for x in all_multisets(m) if x.distinct == 3)
    full = run_search(kernels.path_search, p, L, False)
    counts = np.zeros(p, dtype=np.int64)
    for d, a in L.items:
        counts[d] = a
    order = np.array(L.support, dtype=np.int64)
    arrays = [np.zeros(p, dtype=np.int64) for _ in range(3)]
    visited = np.zeros(p, dtype=np.uint8)
    visited[0] = 1
    state = np.zeros(2, dtype=np.int64)
    total = 0
    while True:
        status, nodes = kernels.path_search(p, counts, order, False, *arrays, visited, state, 1)
        total += int(nodes)
        if status != kernels.PAUSED:
            break
    assert (int(status), total, arrays[0].tolist()) == full


def test_env_flag_selects_python_backend():
    env = dict(os.environ, BURATTI_NO_NUMBA="1")
    code = "from buratti import _jit, kernels; print(_jit.backend(), hasattr(kernels.path_search, 'py_func'))"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["python", "False"]
    assert backend() in ("numba", "python")
