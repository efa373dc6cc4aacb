from fractions import Fraction
from math import gcd

import pytest

from tsurf.cf_core import hj_expand
from tsurf.errors import ValidationError
from tsurf.tsing import (
    TType,
    center,
    discrepancies,
    discrepancies_recursive,
    enumerate_t_chains,
    t_children,
    t_expand,
    t_recognize,
)


@pytest.mark.parametrize(
    "t, chain", [(TType(1, 2, 1), [4]), (TType(4, 2, 1), [3, 2, 2, 3]), (TType(1, 3, 2), [2, 5])]
)
def test_expand_examples(t, chain):
    assert t_expand(t) == chain


@pytest.mark.parametrize(
    "chain, t", [([4], TType(1, 2, 1)), ([2, 4, 3, 3], TType(2, 5, 3)), ([3, 5], None)]
)
def test_recognize_examples(chain, t):
    assert t_recognize(chain) == t


def test_du_val_chains_are_not_t_chains():
    for k in range(1, 8):
        assert t_recognize([2] * k) is None


@pytest.mark.parametrize(
    "chain, children",
    [([4], ([2, 5], [5, 2])), ([2, 5], ([2, 2, 6], [3, 5, 2])), ([3, 2, 3], ([2, 3, 2, 4], [4, 2, 3, 2]))],
)
def test_children_examples(chain, children):
    assert t_children(chain) == children


def test_children_reject_non_t_chains():
    with pytest.raises(ValidationError):
        t_children([3, 5])


def test_enumeration_examples():
    assert enumerate_t_chains(1, 4, 1) == [(TType(1, 2, 1), [4])]
    assert {tuple(c) for _, c in enumerate_t_chains(2, 100, 1)} == {(4,), (2, 5), (5, 2)}
    third = {tuple(c) for _, c in enumerate_t_chains(3, 100, 1)}
    assert third == {(4,), (2, 5), (5, 2), (2, 2, 6), (3, 5, 2), (6, 2, 2), (2, 5, 3)}


@pytest.mark.parametrize(
    "chain, deltas",
    [
        ([4], (Fraction(-1, 2),)),
        ([2, 5], (Fraction(-1, 3), Fraction(-2, 3))),
        ([3, 5, 2], (Fraction(-3, 5), Fraction(-4, 5), Fraction(-2, 5))),
    ],
)
def test_discrepancy_examples(chain, deltas):
    assert discrepancies(chain).deltas == deltas


@pytest.mark.parametrize("chain, centre", [([4], {1}), ([3, 5, 2], {2}), ([3, 2, 2, 3], {1, 2, 3, 4})])
def test_center_examples(chain, centre):
    assert center(chain) == centre


@pytest.mark.parametrize("args", [(0, 2, 1), (1, 1, 1), (1, 4, 2), (1, 3, 3), (1, 3, 0)])
def test_invalid_ttypes(args):
    with pytest.raises(ValidationError):
        TType(*args)


def all_ttypes(bound):
    for n in range(2, bound):
        for d in range(1, bound // (n * n) + 1):
            for a in range(1, n):
                if gcd(a, n) == 1:
                    yield TType(d, n, a)


def test_round_trip_up_to_5000():
    count = 0
    for t in all_ttypes(5000):
        assert t_recognize(t_expand(t)) == t
        assert t.is_wahl == (t.d == 1)
        count += 1
    assert count > 1000


def test_recognize_agrees_with_generated_types_on_short_chains():
    import itertools

    known = {tuple(t_expand(t)): t for t in all_ttypes(3000)}
    for length in range(1, 6):
        for chain in itertools.product(range(2, 8), repeat=length):
            t = t_recognize(list(chain))
            if chain in known:
                assert t == known[chain]
            elif t is not None:
                assert t_expand(t) == list(chain) and t.d * t.n ** 2 > 3000


def test_discrepancy_laws():
    for t, chain in enumerate_t_chains(12, 1500):
        vec = discrepancies(chain)
        deltas = vec.deltas
        assert all(-1 < x <= 0 for x in deltas)
        if len(chain) == 1:
            assert 2 * deltas[0] == -1
        else:
            assert deltas[0] + deltas[-1] == -1
        low = min(deltas)
        assert low == Fraction(-(t.n - 1), t.n)
        assert center(chain) == {i + 1 for i, x in enumerate(deltas) if x == low}
        for end in (0, -1):
            if chain[end] == 2:
                assert deltas[end] > Fraction(-1, 2)
        assert discrepancies_recursive(chain) == vec


def test_child_index_law():
    for t, chain in enumerate_t_chains(9, 800):
        vec = discrepancies(chain)
        assert vec.t_first + vec.t_last == t.n
        left, right = t_children(chain)
        assert t_recognize(left).n == t.n + vec.t_last
        assert t_recognize(right).n == t.n + vec.t_first
        assert t_recognize(left).d == t_recognize(right).d == t.d


def test_expansion_matches_hj_of_fraction():
    for t in all_ttypes(600):
        assert t_expand(t) == hj_expand(*t.fraction())
