from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from collatz_branching import core
from collatz_branching.density import (
    CensusRow,
    census_report,
    decimal,
    default_census_sets,
    family_series,
    geometric_sum,
    grand_total,
    predict_next,
    rightward_decay,
    setsize_recursion,
    upward_decay,
)
from collatz_branching.residues import branching_set


def test_geometric_sum():
    assert geometric_sum(Fraction(1, 64), Fraction(1, 64)) == Fraction(1, 63)
    assert geometric_sum(1, 0) == 1
    for r in (Fraction(1), Fraction(-1, 2), Fraction(3, 2)):
        with pytest.raises(core.DomainError):
            geometric_sum(Fraction(1), r)


@given(st.fractions(0, 1).filter(lambda r: r < 1), st.fractions(-10, 10))
def test_geometric_sum_partial_sums_approach_closed_form(r, a):
    s = geometric_sum(a, r)
    partial = sum(a * r**i for i in range(60))
    assert abs(s - partial) <= abs(a) * r**60 / (1 - r) + Fraction(1, 10**30)


def test_decays():
    assert upward_decay() == Fraction(1, 64)
    assert rightward_decay() == Fraction(13, 16)


@pytest.mark.parametrize(
    "family, a, r, total",
    [
        ("odd-upward", Fraction(1, 64), Fraction(1, 64), Fraction(1, 63)),
        ("even-upward", Fraction(27, 18432), Fraction(1, 64), Fraction(1, 672)),
        ("rightward", Fraction(81, 4608), Fraction(13, 16), Fraction(3, 32)),
    ],
)
def test_family_series(family, a, r, total):
    s = family_series(family)
    assert (s.first_term, s.ratio, s.closed_form) == (a, r, total)


def test_family_series_rejects_unknown():
    with pytest.raises(ValueError):
        family_series("diagonal")


def test_grand_total():
    g = grand_total()
    assert g.passed
    assert g.total == Fraction(2, 18)
    assert g.unreduced == "224/2016"
    assert g.numerators == (32, 3, 189)


def test_grand_total_fails_on_wrong_series():
    series = [family_series(f) for f in ("odd-upward", "rightward")]
    assert not grand_total(series).passed


def test_predict_next_on_base_counts():
    assert predict_next([1, 4, 1, 4, 1, 4]) == [45, 36, 45, 36, 45, 36]
    assert predict_next([15, 12] * 3) == [195, 156] * 3


def test_setsize_recursion():
    steps = setsize_recursion(3)
    assert all(s.ok for s in steps)
    sizes = {(s.chain, s.k): s.size for s in steps}
    assert sizes[("c5", 1)] == 81
    assert sizes[("c5", 2)] == 13 * 81
    assert sizes[("c5", 3)] == 13 * 13 * 81
    assert sizes[("c27", 1)] == 351 == 13 * 27
    assert sizes[("c27", 2)] == 13 * 351
    # the c27 chain grows as 13**k times the base counts
    for s in steps:
        if s.chain == "c27":
            assert s.enumerated == [13**s.k * c for c in (15, 12)] * 3


def test_setsize_recursion_range():
    with pytest.raises(core.DomainError):
        setsize_recursion(0)
    with pytest.raises(core.DomainError):
        setsize_recursion(4)


def test_census_rows():
    rows = census_report(10**6, default_census_sets())
    assert rows[0].count == 111111
    assert all(r.within_bound for r in rows)
    assert [r.name for r in rows][:3] == ["u2", "c5", "c27"]


@given(st.integers(1, 5000))
def test_census_matches_brute_force(n):
    row = census_report(n, [("u2", branching_set())])[0]
    assert row.count == sum(1 for m in range(1, n + 1) if core.is_branching(m))
    assert row.within_bound


def test_census_row_bound_can_fail():
    row = CensusRow("bogus", Fraction(1, 2), 0, 100, 1)
    assert row.error == -50 and not row.within_bound


def test_census_domain():
    with pytest.raises(core.DomainError):
        census_report(0, [])


def test_decimal():
    assert decimal(Fraction(1, 9), 6) == "0.111111"
    assert decimal(Fraction(-3, 2), 3) == "-1.500"
