from math import gcd

import pytest

from tsurf.errors import ValidationError
from tsurf.quotient import (
    CQS,
    SMOOTH,
    duval_quotient_scan,
    lee_park_quotient,
    normalize,
    quotient_candidates,
    t_quotients,
    wahl_quotient_scan,
)
from tsurf.tsing import TType


def by_case(m, q):
    out = {}
    for outcome in quotient_candidates(m, q):
        out.setdefault(outcome.caseTag, []).append(outcome)
    return out


def test_cqs_validation():
    for args in [(4, 2), (5, 0), (5, 5), (3, 4)]:
        with pytest.raises(ValidationError):
            CQS(*args)
    assert CQS(5, 4).is_duval and not CQS(5, 2).is_duval
    assert CQS(7, 3).same_as(CQS(7, 5))


def test_forty_nine_sixths():
    cases = by_case(49, 6)
    assert [o.result for o in cases["b"]] == [(98, 6), (98, 55)]
    assert cases["b"][0].normalized is None and "gcd" in cases["b"][0].reason
    assert cases["b"][1].normalized == CQS(98, 55)
    assert cases["c"][0].normalized == CQS(49, 12)
    for tag in "ade":
        assert not cases[tag][0].applicable and cases[tag][0].reason


def test_nine_halves():
    (hit,) = t_quotients(9, 2)
    assert (hit.caseTag, hit.normalized, hit.isT) == ("b", CQS(18, 11), TType(2, 3, 2))


def test_sixteen_thirds():
    (hit,) = t_quotients(16, 3)
    assert (hit.caseTag, hit.normalized, hit.isT) == ("d", CQS(8, 3), TType(2, 2, 1))


def test_smooth_case_gate():
    assert by_case(5, 4)["a"][0].normalized == SMOOTH
    assert not by_case(5, 2)["a"][0].applicable


def test_case_e_gate_and_normalization_soundness():
    for m in range(2, 120):
        for q in range(1, m):
            if gcd(m, q) != 1:
                continue
            for outcome in quotient_candidates(m, q):
                if outcome.caseTag == "e":
                    assert outcome.applicable == ((q * q) % m == 1 % m and q != m - 1)
                    if outcome.applicable:
                        assert isinstance(outcome.normalized, CQS)
                if outcome.applicable and outcome.normalized is None:
                    assert outcome.result is not None and outcome.reason
                if isinstance(outcome.normalized, CQS):
                    n = outcome.normalized
                    assert 0 < n.q < n.m and gcd(n.m, n.q) == 1
                if not outcome.applicable:
                    assert outcome.reason


def test_normalize():
    assert normalize(1, 5) == SMOOTH
    assert normalize(7, 12) == CQS(7, 5)
    assert normalize(8, 6) is None


def test_wahl_scan_examples():
    assert wahl_quotient_scan(2).passed
    assert wahl_quotient_scan(5).passed
    report = wahl_quotient_scan(50)
    assert report.passed and report.checked > 1000
    with pytest.raises(ValidationError):
        wahl_quotient_scan(1)


def test_lee_park_values():
    assert lee_park_quotient(3) == ("b", CQS(18, 11))
    assert lee_park_quotient(4) == ("d", CQS(8, 3))
    with pytest.raises(ValidationError):
        lee_park_quotient(1)


def test_lee_park_unique_t_quotient():
    for n in range(3, 61):
        hits = t_quotients(n * n, n - 1)
        case, expected = lee_park_quotient(n)
        assert len(hits) == 1, n
        assert hits[0].caseTag == case and hits[0].normalized == expected


def test_lee_park_prediction_at_two_is_du_val():
    # At n = 2 the predicted quotient 1/2(1,1) is A_1, not a non-Du-Val T point.
    case, cqs = lee_park_quotient(2)
    assert cqs == CQS(2, 1) and cqs.is_duval
    assert t_quotients(4, 1) == []


def test_duval_examples():
    outcomes = [o for o in quotient_candidates(4, 1) if isinstance(o.normalized, CQS) and o.normalized.is_duval]
    assert outcomes and all(o.normalized == CQS(2, 1) for o in outcomes)
    m, q = TType(1, 3, 2).fraction()
    assert not any(isinstance(o.normalized, CQS) and o.normalized.is_duval for o in quotient_candidates(m, q))


def test_duval_case_e_gives_a_one_for_larger_d():
    # T(2,2,1) = 1/8(1,3): q^2 = 1 mod 8, u = gcd(4, 8) = 4, so case (e) gives 1/2(1,1).
    cases = by_case(8, 3)
    assert cases["e"][0].normalized == CQS(2, 1)
    assert cases["d"][0].normalized == CQS(4, 3)


def test_duval_scan_violations_are_all_case_e_with_n_two():
    report = duval_quotient_scan(500)
    assert report.violations
    for t, outcome in report.violations:
        assert t.n == 2 and t.d >= 2 and outcome.caseTag == "e"
        assert outcome.normalized == CQS(2, 1)
    with pytest.raises(ValidationError):
        duval_quotient_scan(0)
