import itertools
import random
from math import gcd

import pytest
from hypothesis import given, strategies as st

from tsurf.cf_core import (
    CyclicQuotient,
    blow_down,
    blow_down_strict,
    contract_at,
    dual,
    evaluate,
    hj_expand,
    is_zero_chain,
)
from tsurf.errors import StructuralError, ValidationError


@pytest.mark.parametrize("pair, chain", [((4, 1), [4]), ((9, 5), [2, 5]), ((25, 9), [3, 5, 2])])
def test_expand_examples(pair, chain):
    assert hj_expand(*pair) == chain


def test_evaluate_examples():
    assert evaluate([4]) == (4, 1)
    assert evaluate([2, 5]) == (9, 5)
    assert evaluate([2, 1, 2]).p == 0


@pytest.mark.parametrize("pair, chain", [((4, 1), [2, 2, 2]), ((9, 5), [3, 2, 2, 2]), ((19, 7), [2, 3, 2, 3])])
def test_dual_examples(pair, chain):
    assert dual(*pair) == chain


def test_dual_of_nine_fifths_is_not_three_entries():
    # [3, 2, 2] evaluates to 7/3, so it cannot be the expansion of 9/4.
    assert tuple(evaluate([3, 2, 2])) == (7, 3)
    assert tuple(evaluate(dual(9, 5))) == (9, 4)


@pytest.mark.parametrize(
    "chain, result", [([2, 1, 2], [0]), ([4, 1, 5, 2], [3, 4, 2]), ([2, 2, 2, 1, 4], [0])]
)
def test_blow_down_examples(chain, result):
    assert blow_down(chain) == result


@pytest.mark.parametrize("chain, zero", [([1, 1], True), ([2, 2], False), ([1, 3, 1, 2], True)])
def test_zero_examples(chain, zero):
    assert is_zero_chain(chain) is zero


@pytest.mark.parametrize("pair", [(4, 2), (3, 3), (5, 0), (5, 7), (2.0, 1)])
def test_invalid_fractions(pair):
    with pytest.raises(ValidationError):
        hj_expand(*pair)
    with pytest.raises(ValidationError):
        CyclicQuotient(*pair)


def test_evaluate_rejects_empty():
    with pytest.raises(ValidationError):
        evaluate([])


def test_round_trip_small():
    for delta in range(2, 200):
        for omega in range(1, delta):
            if gcd(delta, omega) == 1:
                chain = hj_expand(delta, omega)
                assert min(chain) >= 2
                assert evaluate(chain) == (delta, omega)


@given(st.integers(2, 10 ** 12).flatmap(lambda d: st.tuples(st.just(d), st.integers(1, d - 1))))
def test_round_trip_property(pair):
    delta, omega = pair
    if gcd(delta, omega) != 1:
        return
    assert tuple(evaluate(hj_expand(delta, omega))) == pair


def test_dual_is_an_involution():
    for delta in range(2, 120):
        for omega in range(1, delta):
            if gcd(delta, omega) == 1:
                again = dual(delta, delta - omega)
                assert again == hj_expand(delta, omega)


def test_zero_test_matches_blow_down():
    for length in range(1, 6):
        for chain in itertools.product(range(1, 7), repeat=length):
            assert is_zero_chain(list(chain)) == (blow_down(list(chain)) == [0]), chain


def test_zero_test_matches_blow_down_longer_random():
    rng = random.Random(11)
    for _ in range(3000):
        chain = [rng.randint(1, 6) for _ in range(rng.randint(6, 10))]
        assert is_zero_chain(chain) == (blow_down(chain) == [0])


def test_contraction_order_does_not_matter_on_zero_chains():
    from tsurf.zcf import enumerate_zcf

    rng = random.Random(5)
    for s in range(2, 9):
        for chain in enumerate_zcf(s):
            state = list(chain)
            while state != [0]:
                ones = [i for i, e in enumerate(state) if e == 1]
                assert ones, (chain, state)
                state = contract_at(state, rng.choice(ones))
                assert all(e >= 0 for e in state)


def test_strict_blow_down_reports_stray_zero():
    assert blow_down([2, 1, 1, 3]) == [1, 0, 3]
    with pytest.raises(StructuralError):
        blow_down_strict([2, 1, 1, 3])
