import pytest

from tsurf.appendix import (
    ERRATA,
    FAMILIES,
    UNTABULATED,
    Malformed,
    appendix_check,
    family_chain,
    grid_points,
    normalize_notation,
    parse_notation,
)
from tsurf.cf_core import evaluate
from tsurf.errors import ValidationError


def test_families_cover_the_catalog():
    assert len(FAMILIES) == 11
    for name in FAMILIES:
        assert grid_points(name)


def test_2r2_example():
    report = appendix_check("2r2", {"r": 4, "a": 1, "b": 0})
    assert report.exact
    assert [label for label, *_ in report.expected] == ["a", "b", "c"]
    # Rows (b) and (c) coincide here, so there are only two distinct members.
    assert len(report.actual) == 2
    assert report.collisions == [([2, 1, 2], ["b", "c"])]


def test_type_ii_example():
    report = appendix_check("typeII", {"a": 4})
    assert report.exact
    assert [text for _, text in report.actual] == ["(3)-(4)-A_1", "(3)-[(2,1)]-(2)", "[(2,1)]-(1)-[(3,1)]"]


def test_type_iv_example():
    report = appendix_check("typeIV", {"a": 4})
    assert report.exact
    assert ([1, 3, 1, 3, 1], "(3)-[(2,1)]-(3)") in report.actual


def test_type_ii_family_is_nineteen_sevenths_at_four():
    assert tuple(evaluate(family_chain("typeII", {"a": 4}))) == (19, 7)


def test_out_of_range_parameters():
    with pytest.raises(ValidationError):
        appendix_check("typeII", {"a": 1})
    with pytest.raises(ValidationError):
        appendix_check("typeII", {"b": 4})
    with pytest.raises(ValidationError):
        appendix_check("nosuch", {})


def _verbatim_failures():
    labels = set()
    for name in FAMILIES:
        for params in grid_points(name):
            report = appendix_check(name, params)
            for item in report.mismatched + report.missing + report.malformed:
                labels.add((name, item[0]))
    return labels


def test_verbatim_disagreements_are_exactly_the_errata():
    assert _verbatim_failures() == set(ERRATA)


def test_corrected_rows_match_except_untabulated_members():
    for name in FAMILIES:
        for params in grid_points(name):
            report = appendix_check(name, params, corrected=True)
            assert not (report.mismatched or report.missing or report.malformed), (name, params)
            untabulated = name in UNTABULATED and UNTABULATED[name](**params)
            if report.extra:
                assert untabulated, (name, params)


def test_untabulated_members_occur():
    assert any(appendix_check("2ra232", params, corrected=True).extra
               for params in grid_points("2ra232") if params["r"] == 3)


def test_collision_is_reported_for_r_four():
    report = appendix_check("2r2", {"r": 4, "a": 0, "b": 0})
    assert report.collisions
    assert report.exact


@pytest.mark.parametrize(
    "text, canonical",
    [
        ("[(2,1)]-(1)-[(3,1)]", "[(2,1)]-(1)-[(3,1)]"),
        ("A_2-[(2,1)]", "A_1-(2)-[(2,1)]"),
        ("A_1-[(2,1)]-A_1", "(2)-[(2,1)]-(2)"),
        ("A_0-(3)-A_0", "(3)"),
        ("[0(2,1)]-(3)-[(2,1)]", "[(2,1)]"),
        ("(2)-[0(2,1)]-(3)", "(4)"),
        ("[(2,1)]-(1)-[(2,1)]", "[2(2,1)]"),
    ],
)
def test_normalize_shorthands(text, canonical):
    assert normalize_notation(text) == canonical


@pytest.mark.parametrize("text", ["[(2,1)", "(3)(4)", "A_-1-(3)", "[(2,1)]-A_1-[(3,1)]"])
def test_malformed_notation(text):
    with pytest.raises(Malformed):
        normalize_notation(text)


def test_parse_tokens():
    assert parse_notation("A_1-(3)-[2(5,2)]") == [("A", 1), ("link", 3), ("T", 2, 5, 2)]
