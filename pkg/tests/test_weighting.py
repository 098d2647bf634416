"""Weighting families: endpoints, monotonicity, duals, dominance scans.

High-precision expected values were frozen from 50-digit evaluations of the
closed forms.
"""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from choqrisk import (
    GoldsteinEinhorn,
    Identity,
    KahnemanTversky,
    Prelec,
    TabulatedWeighting,
    dominance_check,
    figure_data,
    parse_weighting,
)
from choqrisk.errors import DomainError

E_INV = 1.0 / math.e


def test_identity_eval():
    g = Identity()
    assert g.value(0.37) == 0.37
    assert g.dual_value(0.37) == pytest.approx(0.37, abs=1e-15)


def test_kt_frozen_value():
    # 50-digit oracle: 0.4206393543357561541...
    assert KahnemanTversky(0.61).value(0.5) == pytest.approx(0.4206393543357562, abs=1e-12)


def test_kt_endpoints_exact():
    g = KahnemanTversky(0.61)
    assert g.value(0.0) == 0.0 and g.value(1.0) == 1.0


def test_prelec_fixed_point():
    for gamma in (0.3, 0.74, 1.0):
        assert Prelec(1.0, gamma).value(E_INV) == pytest.approx(E_INV, abs=1e-15)


def test_prelec_endpoints():
    g = Prelec(1.0, 0.74)
    assert g.value(0.0) == 0.0 and g.value(1.0) == 1.0


def test_prelec_dual_fixed_point():
    g = Prelec(1.0, 0.74)
    assert g.dual_value(1.0 - E_INV) == pytest.approx(1.0 - E_INV, abs=1e-15)


def test_ge_closed_form():
    g = GoldsteinEinhorn(0.65, 0.60)
    # at p = 0.5 the powers cancel: 0.65 / 1.65
    assert g.value(0.5) == pytest.approx(0.65 / 1.65, abs=1e-15)


def test_domain_errors():
    g = KahnemanTversky(0.61)
    with pytest.raises(DomainError):
        g.value(-0.1)
    with pytest.raises(DomainError):
        g.value(1.1)
    with pytest.raises(DomainError):
        g.dual_value(2.0)


def test_kt_parameter_range_enforced():
    with pytest.raises(ValueError):
        KahnemanTversky(0.2)
    with pytest.raises(ValueError):
        KahnemanTversky(1.4)
    # above 1 the curve is S-shaped but still monotone, so the override works
    with pytest.warns(RuntimeWarning):
        KahnemanTversky(1.4, allow_out_of_range=True)


def test_kt_out_of_range_still_shape_checked():
    # below the guarded range the curve loses monotonicity on the grid
    with pytest.warns(RuntimeWarning):
        with pytest.raises(ValueError):
            KahnemanTversky(0.25, allow_out_of_range=True)


def test_prelec_parameter_ranges():
    with pytest.raises(ValueError):
        Prelec(0.0, 0.7)
    with pytest.raises(ValueError):
        Prelec(1.0, 1.2)


@given(st.floats(0.3, 1.0), st.integers(0, 1000))
@settings(max_examples=80, deadline=None)
def test_kt_monotone_and_bounded(gamma, k):
    g = KahnemanTversky(gamma)
    p = k / 1000.0
    v = g.value(p)
    assert 0.0 <= v <= 1.0
    if k < 1000:
        assert v <= g.value((k + 1) / 1000.0) + 1e-12


@given(
    st.floats(0.1, 3.0),
    st.floats(0.3, 1.0),
    st.floats(0.001, 0.999),
)
@settings(max_examples=100, deadline=None)
def test_dual_round_trip(delta, gamma, p):
    h = GoldsteinEinhorn(delta, gamma)
    assert 1.0 - h.dual_value(1.0 - p) == pytest.approx(h.value(p), abs=1e-15)


def test_tabulated_interpolation():
    t = TabulatedWeighting(((0.0, 0.0), (0.4, 0.5), (1.0, 1.0)))
    assert t.value(0.2) == pytest.approx(0.25, abs=1e-15)
    assert t.value(0.7) == pytest.approx(0.75, abs=1e-15)


def test_tabulated_validation():
    with pytest.raises(ValueError):
        TabulatedWeighting(((0.0, 0.1), (1.0, 1.0)))
    with pytest.raises(ValueError):
        TabulatedWeighting(((0.0, 0.0), (0.5, 0.8), (0.4, 0.9), (1.0, 1.0)))


# --- dominance ---------------------------------------------------------------

def test_identity_pair_dominance_is_tight():
    scan = dominance_check(Identity(), Identity(), 101)
    assert scan.holds and scan.max_gap == pytest.approx(0.0, abs=1e-15)


def test_ge_published_pair_dominates():
    scan = dominance_check(GoldsteinEinhorn(0.65, 0.60), GoldsteinEinhorn(0.84, 0.65))
    assert scan.holds


def test_kt_published_pair_fails_near_zero():
    """The inverse-S pair 0.61/0.69 crosses below p ~ 0.01.

    Verified with 50-digit arithmetic: the gains curve overweights small
    probabilities faster than the conjugate of the losses curve, so
    dominance fails on the first ten interior grid points with a worst gap
    near 2.8e-3 at p = 0.002.
    """
    scan = dominance_check(KahnemanTversky(0.61), KahnemanTversky(0.69))
    assert not scan.holds
    assert scan.max_gap == pytest.approx(2.8175e-3, abs=1e-6)
    assert scan.argmax == pytest.approx(0.002, abs=1e-12)


def test_prelec_same_parameters_fail_in_both_corners():
    g = Prelec(1.0, 0.74)
    scan = dominance_check(g, g)
    assert not scan.holds
    assert scan.max_gap == pytest.approx(1.27658e-2, abs=1e-6)


def test_dominance_grid_size_validation():
    with pytest.raises(ValueError):
        dominance_check(Identity(), Identity(), 1)


# --- figure data ----------------------------------------------------------------

def test_figure_rows_endpoints():
    rows = figure_data(Identity(), Identity(), 2)
    assert rows == [(0.0, 0.0, 0.0), (1.0, 1.0, 1.0)]


def test_figure_contains_fixed_point():
    rows = figure_data(Prelec(1.0, 0.74), Prelec(1.0, 0.74), 1001)
    closest = min(rows, key=lambda r: abs(r[0] - E_INV))
    assert closest[1] == pytest.approx(closest[0], abs=2e-3)


def test_figure_row_count():
    rows = figure_data(KahnemanTversky(0.61), KahnemanTversky(0.69), 501)
    assert len(rows) == 501


# --- spec parsing ------------------------------------------------------------------

def test_parse_round_trip():
    for spec in ("identity", "kt:0.61", "ge:0.65,0.6", "prelec:1,0.74"):
        fn = parse_weighting(spec)
        assert parse_weighting(fn.spec()).value(0.3) == fn.value(0.3)


def test_parse_rejects_unknown():
    with pytest.raises(ValueError):
        parse_weighting("zzz:1")
    with pytest.raises(ValueError):
        parse_weighting("identity-ish")
