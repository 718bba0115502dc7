import itertools
import math

import pytest
from hypothesis import given, strategies as st

from graphcensus.index_codec import all_pairs, pair_count, pair_weights
from graphcensus.pairgroup import (
    CycleWeights,
    PairCycle,
    Permutation,
    apply_to_pair,
    count_with_cycle_type,
    cycle_weights,
    enumerate_permutations,
    enumerate_sc_permutations,
    is_sc_admissible,
    pair_decomposition,
    rank_ranges,
)

C4 = Permutation.from_cycles(4, "(1 2 3 4)")


def perm_strategy(lo=3, hi=9):
    return st.integers(lo, hi).flatmap(
        lambda n: st.permutations(range(1, n + 1)).map(Permutation)
    )


def test_cycle_notation_round_trip():
    a = Permutation.from_cycles(5, "(1 2 3 4)(5)")
    assert a.images == (2, 3, 4, 1, 5)
    assert str(a) == "(1 2 3 4)(5)"
    assert Permutation.from_cycles(5, str(a)) == a
    assert Permutation.from_cycles(3, "") == Permutation.identity(3)


@pytest.mark.parametrize("text", ["(1 2", "(1 1)", "(1 9)", "1 2"])
def test_cycle_notation_rejects(text):
    with pytest.raises(ValueError):
        Permutation.from_cycles(4, text)


def test_apply_to_pair():
    assert apply_to_pair(C4, (1, 2)) == (2, 3)
    assert apply_to_pair(C4, (1, 3)) == (2, 4)
    assert apply_to_pair(C4, (1, 4)) == (1, 2)
    ident = Permutation.identity(4)
    assert all(apply_to_pair(ident, e) == e for e in all_pairs(4))


def test_pair_decomposition_four_cycle():
    dec = pair_decomposition(C4)
    assert [z.elements for z in dec.cycles] == [
        ((1, 2), (2, 3), (3, 4), (1, 4)),
        ((1, 3), (2, 4)),
    ]
    assert dec.cycle_type == (0, 0, 0, 1)


def test_pair_decomposition_identity():
    dec = pair_decomposition(Permutation.identity(4))
    assert [len(z) for z in dec.cycles] == [1] * 6


def test_pair_decomposition_n5():
    dec = pair_decomposition(Permutation.from_cycles(5, "(1 2 3 4)(5)"))
    assert sorted(len(z) for z in dec.cycles) == [2, 4, 4]
    assert {frozenset(z.elements) for z in dec.cycles if len(z) == 4} >= {
        frozenset({(1, 5), (2, 5), (3, 5), (4, 5)})
    }


def test_cycle_weights_examples():
    assert cycle_weights(PairCycle(4, ((1, 2), (2, 3), (3, 4), (1, 4)))) == CycleWeights(45, 33, 12)
    assert cycle_weights(PairCycle(4, ((1, 3), (2, 4)))) == CycleWeights(18, 16, 2)
    for e, w in pair_weights(4).items():
        assert cycle_weights(PairCycle(4, (e,))) == CycleWeights(w, w, 0)


@pytest.mark.parametrize(
    "n, text, expected",
    [
        (4, "(1 2 3 4)", True),
        (4, "", False),
        (4, "(1 2)(3 4)", False),
        (5, "(1 2 3 4)(5)", True),
        (8, "(1 2 3 4 5 6 7 8)", True),
        (8, "(1 2 3 4)(5 6 7 8)", True),
        (9, "(1 2 3 4)(5 6 7 8)", True),
        (9, "(1 2 3 4 5 6 7 8 9)", False),
        (8, "(1 2 3 4 5 6)(7 8)", False),
    ],
)
def test_is_sc_admissible(n, text, expected):
    assert is_sc_admissible(Permutation.from_cycles(n, text)) is expected


@pytest.mark.parametrize("n", [3, 6, 7])
def test_is_sc_admissible_rejects_order(n):
    with pytest.raises(ValueError):
        is_sc_admissible(Permutation.identity(n))


@pytest.mark.parametrize("n, count", [(3, 6), (4, 24), (7, 5040)])
def test_enumerate_permutations(n, count):
    perms = list(enumerate_permutations(n))
    assert len(perms) == count
    assert len(set(perms)) == count
    assert perms[0] == Permutation.identity(n)
    assert [p.images for p in perms] == sorted(p.images for p in perms)


def test_rank_ranges_cover_stream():
    whole = list(enumerate_permutations(5))
    for parts in (1, 2, 3, 7, 200):
        ranges = rank_ranges(120, parts)
        pieces = [p for lo, hi in ranges for p in enumerate_permutations(5, lo, hi)]
        assert pieces == whole


def test_enumerate_sc_n4_is_the_four_cycles():
    perms = list(enumerate_sc_permutations(4))
    assert len(perms) == 6
    assert all(p.cycle_type() == (0, 0, 0, 1) for p in perms)


def test_enumerate_sc_n5():
    assert len(list(enumerate_sc_permutations(5))) == 30
    assert count_with_cycle_type((1, 0, 0, 1, 0)) == 30


@pytest.mark.slow
def test_enumerate_sc_n9():
    perms = list(enumerate_sc_permutations(9))
    by_type = {}
    for p in perms:
        by_type[p.cycle_type()] = by_type.get(p.cycle_type(), 0) + 1
    assert by_type == {
        (1, 0, 0, 0, 0, 0, 0, 1, 0): 45360,
        (1, 0, 0, 2, 0, 0, 0, 0, 0): 11340,
    }
    for m, c in by_type.items():
        assert count_with_cycle_type(m) == c
    assert len(perms) == 56700


def _check_decomposition(alpha):
    n = alpha.n
    w = pair_weights(n)
    dec = pair_decomposition(alpha)
    flat = [e for z in dec.cycles for e in z.elements]
    assert sorted(flat) == sorted(all_pairs(n))
    for z in dec.cycles:
        k = len(z.elements)
        for t, e in enumerate(z.elements):
            assert apply_to_pair(alpha, e) == z.elements[(t + 1) % k]
        lead = w[z.elements[0]]
        assert all(w[e] < lead for e in z.elements[1:])
        cw = cycle_weights(z)
        assert cw.full == cw.odd + cw.even
        assert cw.odd > cw.even
    assert sum(cycle_weights(z).full for z in dec.cycles) == 2 ** pair_count(n) - 1
    return dec


@pytest.mark.parametrize("n", [3, 4, 5])
def test_decomposition_exhaustive(n):
    for alpha in enumerate_permutations(n):
        _check_decomposition(alpha)


@given(perm_strategy())
def test_decomposition_property(alpha):
    _check_decomposition(alpha)


@given(perm_strategy(4, 9).filter(lambda a: a.n % 4 in (0, 1)))
def test_admissible_permutations_have_even_pair_cycles(alpha):
    if is_sc_admissible(alpha):
        assert all(len(z) % 2 == 0 for z in pair_decomposition(alpha).cycles)


def test_inverse_and_compose():
    a = Permutation.from_cycles(5, "(1 2 3)(4 5)")
    assert a.compose(a.inverse()) == Permutation.identity(5)
    b = Permutation.from_cycles(5, "(1 5)")
    assert a.compose(b)(1) == a(b(1))


def test_cycle_type_count_formula_matches_enumeration():
    counts = {}
    for p in enumerate_permutations(6):
        counts[p.cycle_type()] = counts.get(p.cycle_type(), 0) + 1
    assert sum(counts.values()) == math.factorial(6)
    for m, c in counts.items():
        assert count_with_cycle_type(m) == c
