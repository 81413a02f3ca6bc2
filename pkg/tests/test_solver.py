import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from buratti.errors import BudgetExhausted, NonInvertibleMultiplierError, PrimalityRequiredError, UsageError
from buratti.exchange import realize_tree
from buratti.modular import LengthMultiset, Modulus, all_multisets, map_multiset, parse_multiset, phi
from buratti.realization import PathRealization, TreeRealization, lengths_of_path, verify
from buratti.solver import (
    SolveBudget,
    search,
    solve_123_family,
    solve_cyclic,
    solve_linear,
    transfer,
    two_length_conditions,
    two_length_feasible,
)

from conftest import load_golden, tree_signature


def test_cyclic_examples():
    m7 = Modulus(7)
    R = solve_cyclic(m7, parse_multiset("1^6", m7))
    assert R.order == (0, 1, 2, 3, 4, 5, 6)
    m5 = Modulus(5)
    L = parse_multiset("1^2,2^2", m5)
    assert verify(solve_cyclic(m5, L), L, "cyclic-path").valid
    assert verify(PathRealization(m5, (1, 0, 2, 4, 3)), L, "cyclic-path").valid
    m6 = Modulus(6)
    assert solve_cyclic(m6, parse_multiset("2^5", m6)) is None


def test_linear_examples():
    m5 = Modulus(5)
    assert solve_linear(m5, parse_multiset("1^4", m5, linear=True)).order == (0, 1, 2, 3, 4)
    m4 = Modulus(4)
    L = parse_multiset("1^2,3", m4, linear=True)
    assert verify(solve_linear(m4, L), L, "linear-path").valid
    assert verify(PathRealization(m4, (1, 2, 3, 0)), L, "linear-path").valid
    m3 = Modulus(3)
    assert solve_linear(m3, parse_multiset("2^2", m3, linear=True)) is None


def test_search_status_is_distinct():
    m6 = Modulus(6)
    out = search(m6, parse_multiset("2^5", m6))
    assert out.status == "not-found" and out.path is None and out.nodes > 0
    out = search(m6, parse_multiset("2^5", m6), budget=SolveBudget(node_limit=1))
    assert out.status == "budget-exhausted" and out.path is None


def test_budget_exhausted_raises():
    m11 = Modulus(11)
    with pytest.raises(BudgetExhausted) as info:
        solve_cyclic(m11, parse_multiset("2^5,3^5", m11), SolveBudget(node_limit=1))
    assert info.value.nodes >= 1


def test_budget_validation():
    with pytest.raises(UsageError):
        SolveBudget(node_limit=0)
    with pytest.raises(UsageError):
        SolveBudget(time_limit=-1.0)


def test_time_limit_only_budget_still_solves():
    m11 = Modulus(11)
    L = parse_multiset("1^3,2^3,4^4", m11)
    R = solve_cyclic(m11, L, SolveBudget(time_limit=30.0))
    assert verify(R, L, "cyclic-path").valid


def test_search_rejects_bad_input():
    m7 = Modulus(7)
    with pytest.raises(UsageError):
        search(m7, parse_multiset("1^5", m7))
    with pytest.raises(UsageError):
        search(m7, parse_multiset("1^6", m7), kind="tree")
    with pytest.raises(UsageError):
        search(Modulus(5), parse_multiset("1^6", m7))


@pytest.mark.parametrize("p", [7, 11])
def test_shuffled_order_agrees(p):
    m = Modulus(p)
    det = random.Random(p)
    pool = list(all_multisets(m))
    for L in det.sample(pool, min(40, len(pool))):
        a = search(m, L)
        b = search(m, L, budget=SolveBudget(deterministic_order=False, seed=det.randrange(1000)))
        assert a.status == b.status == "found"
        assert verify(b.path, L, "cyclic-path").valid


def test_deterministic_node_counts():
    m = Modulus(11)
    L = parse_multiset("1^2,3^4,5^4", m)
    assert search(m, L).nodes == search(m, L).nodes


def _golden(kind):
    return {(r["p"], r["multiset"]): r["count"] for r in load_golden() if r["kind"] == kind}


def test_linear_against_golden():
    golden = _golden("linear")
    for p in range(3, 8):
        m = Modulus(p)
        for combo in itertools.combinations_with_replacement(range(1, p), p - 1):
            L = LengthMultiset.from_lengths(m, combo, linear=True)
            R = solve_linear(m, L)
            assert (R is not None) == (golden.get((p, str(L)), 0) > 0), L
            if R is not None:
                assert verify(R, L, "linear-path").valid


def test_cyclic_against_golden():
    golden = _golden("cyclic")
    for p in range(3, 9):
        m = Modulus(p)
        for L in all_multisets(m):
            assert (solve_cyclic(m, L) is not None) == (golden.get((p, str(L)), 0) > 0), L


# two-length law -------------------------------------------------------------

@pytest.mark.parametrize(
    "q,d,t,a,b,want",
    [(8, 2, 4, 3, 4, False), (6, 2, 3, 2, 3, True), (6, 2, 3, 1, 4, False)],
)
def test_two_length_examples(q, d, t, a, b, want):
    assert two_length_feasible(q, d, t, a, b) is want
    m = Modulus(q)
    found = solve_cyclic(m, LengthMultiset.from_counts(m, {d: a, t: b})) is not None
    assert found is want


def test_two_length_conditions_breakdown():
    cond = two_length_conditions(6, 2, 3, 1)
    assert cond == {"gcd(q,d,t)": 1, "coprime": True, "lower": 2, "upper": 4, "in_range": False, "feasible": False}


@pytest.mark.parametrize(
    "args",
    [(6, 2, 3, 2, 2), (6, 2, 2, 2, 3), (6, 4, 1, 2, 3), (2, 1, 1, 1, 0), (6, 2, 3, -1, 6)],
)
def test_two_length_usage_errors(args):
    with pytest.raises(UsageError):
        two_length_feasible(*args)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_two_lengths_always_solvable_for_primes(p):
    m = Modulus(p)
    for d in range(1, m.n + 1):
        for t in range(d + 1, m.n + 1):
            for a in range(p):
                L = LengthMultiset.from_counts(m, {d: a, t: p - 1 - a})
                assert two_length_feasible(p, d, t, a)
                assert verify(solve_cyclic(m, L), L, "cyclic-path").valid


# transfer -------------------------------------------------------------------

def test_transfer_examples():
    m5 = Modulus(5)
    P = transfer(m5, 2, PathRealization(m5, (0, 1, 2, 3, 4)))
    assert P.order == (0, 2, 4, 1, 3)
    assert verify(P, parse_multiset("2^4", m5), "cyclic-path").valid

    m7 = Modulus(7)
    R = PathRealization(m7, (3, 1, 0, 6, 2, 4, 5))
    assert transfer(m7, 1, R).order == R.order

    L = parse_multiset("1^4,2,3", m7)
    T = realize_tree(m7, L)
    out = transfer(m7, 3, T)
    assert verify(out, parse_multiset("3^4,1,2", m7), "tree").valid
    assert tree_signature(out.edges, 7) == tree_signature(T.edges, 7)
    assert out.provenance.endswith("transfer(k=3)")


def test_transfer_non_unit():
    m9 = Modulus(9)
    with pytest.raises(NonInvertibleMultiplierError):
        transfer(m9, 3, PathRealization(m9, tuple(range(9))))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([5, 7, 11, 13]), st.randoms(use_true_random=False), st.data())
def test_transfer_commutes_with_verify(p, rnd, data):
    m = Modulus(p)
    order = list(range(p))
    rnd.shuffle(order)
    R = PathRealization(m, order)
    L = lengths_of_path(R)
    k = data.draw(st.integers(1, p - 1))
    assert verify(transfer(m, k, R), map_multiset(m, k, L), "cyclic-path").valid
    T = R.to_tree()
    assert verify(transfer(m, k, T), map_multiset(m, k, L), "tree").valid


def test_transfer_tree_signature_matches_on_composite_unit():
    m = Modulus(9)
    T = TreeRealization(m, tuple((0, v) for v in range(1, 5)) + ((4, 5), (5, 6), (6, 7), (7, 8)))
    assert tree_signature(transfer(m, 2, T).edges, 9) == tree_signature(T.edges, 9)


# {1,2,3} family -------------------------------------------------------------

def test_123_examples():
    m7 = Modulus(7)
    assert solve_123_family(m7, 1, 6, 0, 0).order == tuple(range(7))
    R = solve_123_family(m7, 2, 2, 2, 2)
    assert verify(R, parse_multiset("1^2,2^2,3^2", m7), "cyclic-path").valid
    m11 = Modulus(11)
    assert [phi(m11, 4, i) for i in (1, 2, 3)] == [4, 3, 1]
    R = solve_123_family(m11, 4, 4, 3, 3)
    assert verify(R, parse_multiset("4^4,3^3,1^3", m11), "cyclic-path").valid


def test_123_errors():
    m7 = Modulus(7)
    with pytest.raises(UsageError):
        solve_123_family(m7, 1, 2, 2, 1)
    with pytest.raises(UsageError):
        solve_123_family(m7, 4, 2, 2, 2)
    with pytest.raises(UsageError):
        solve_123_family(Modulus(5), 1, 2, 0, 2)
    with pytest.raises(PrimalityRequiredError):
        solve_123_family(Modulus(9), 1, 8, 0, 0)


@pytest.mark.parametrize("p", [7, 11, 13])
def test_123_family_exhaustive(p):
    m = Modulus(p)
    for k in range(1, m.n + 1):
        for a in range(p):
            for b in range(p - a):
                c = p - 1 - a - b
                R = solve_123_family(m, k, a, b, c)
                target = map_multiset(m, k, LengthMultiset.from_counts(m, {1: a, 2: b, 3: c}))
                assert verify(R, target, "cyclic-path").valid
