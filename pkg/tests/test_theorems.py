"""Theorem lab: enumeration, lemma suite, Jensen checks, full sweep.

Enumeration counts are pinned against a brute-force filter over all level
assignments, computed independently below.
"""

import json
import math
from itertools import product

import pytest

from choqrisk import (
    CapacityEnumerator,
    Exponential,
    GroundSet,
    PiecewiseLinearKink,
    Power,
    RandomVariable,
    TabulatedUtility,
    integral_property_checks,
    enumerate_capacities,
    jensen_counterexample,
    jensen_holds,
    new_capacity,
    run_full_report,
    zero_one_collapse_check,
    two_valued_concavity_probe,
    nonnegative_axis_check,
    unanimity,
)
from choqrisk.errors import HypothesisFailure, NotZeroOneValued, TooLarge
from choqrisk.sampling import random_capacity, random_variable, rng_from_seed
from choqrisk.theorems import AffineMap, PlainMap, jensen_gap, two_point_variables


# --- enumeration oracle --------------------------------------------------------

def brute_count(n, levels):
    """Filter every assignment of levels to proper nonempty subsets."""
    size = 1 << n
    count = 0
    for assign in product(levels, repeat=size - 2):
        table = [0.0, *assign, 1.0]
        ok = all(
            table[m] <= table[m | (1 << i)]
            for m in range(size)
            for i in range(n)
            if not m >> i & 1
        )
        count += ok
    return count


@pytest.mark.parametrize(
    "n,levels,expected",
    [
        (2, (0.0, 1.0), 4),
        (2, (0.0, 0.5, 1.0), 9),
        (2, (0.0, 0.25, 0.5, 0.75, 1.0), 25),
        (3, (0.0, 1.0), 18),
        (3, (0.0, 0.5, 1.0), 129),
    ],
)
def test_enumeration_count_matches_brute_force(n, levels, expected):
    caps = list(enumerate_capacities(n, levels))
    assert len(caps) == expected == brute_count(n, levels)
    # duplicate-free
    assert len({c.table for c in caps}) == len(caps)


def test_enumerator_rejects_large_ground():
    with pytest.raises(TooLarge):
        CapacityEnumerator(4)


def test_enumerator_rejects_bad_levels():
    with pytest.raises(ValueError):
        CapacityEnumerator(2, (0.25, 1.0))


# --- lemma suite ------------------------------------------------------------------

def test_lemma_verdicts_hold_for_random_pairs():
    rng = rng_from_seed(23)
    for _ in range(10):
        ground = GroundSet(int(rng.integers(2, 5)))
        mu = random_capacity(rng, ground)
        nu = random_capacity(rng, ground)
        verdicts = integral_property_checks(mu, nu, samples=40, seed=int(rng.integers(0, 2**31)))
        assert all(v.holds for v in verdicts.values()), verdicts


# --- jensen equality and counterexample ---------------------------------------------

def test_jensen_equality_for_linear_map_and_conjugate_pair(mu_worked):
    nu = mu_worked.dual()
    f = AffineMap(2.0, 0.5)
    rng = rng_from_seed(3)
    xs = [random_variable(rng, mu_worked.ground, -5, 5) for _ in range(50)]
    for x in xs:
        assert abs(jensen_gap(mu_worked, nu, f, x)) <= 1e-9


def test_jensen_equality_for_constant_x(pl_pair):
    pl, _ = pl_pair
    f = Exponential(1.0)
    for c in (-1.0, 0.0, 2.0):
        x = RandomVariable(pl.ground, (c, c))
        assert abs(jensen_gap(pl, pl, f, x)) <= 1e-12


def test_jensen_holds_under_dominance(mu_worked):
    nu = mu_worked.dual()
    rng = rng_from_seed(9)
    xs = [random_variable(rng, mu_worked.ground, -5, 5) for _ in range(200)]
    verdict = jensen_holds(mu_worked, nu, Exponential(1.0), xs)
    assert verdict.holds and verdict.checked == 200


def test_counterexample_none_when_dominant(mu_worked):
    assert jensen_counterexample(mu_worked, mu_worked.dual()) is None


def test_counterexample_for_pl_pair(pl_pair):
    pl, _ = pl_pair
    wit = jensen_counterexample(pl, pl)
    assert wit is not None
    assert wit.gap == pytest.approx(0.5, abs=1e-12)
    assert wit.gap == wit.dominance_gap  # exact: dyadic table values
    # witness shape: -1 off the worst set, 0 on it
    assert set(wit.x.values) == {0.0, -1.0}
    # re-evaluates from scratch to a genuine violation
    assert jensen_gap(pl, pl, wit.f, wit.x) > 1e-9


def test_counterexample_gap_matches_dominance_gap_exactly():
    for levels in [(0.0, 0.25, 0.5, 0.75, 1.0)]:
        caps = list(enumerate_capacities(2, levels))
        seen = 0
        for mu in caps:
            for nu in caps:
                wit = jensen_counterexample(mu, nu)
                if wit is not None:
                    seen += 1
                    assert abs(wit.gap - wit.dominance_gap) <= 1e-12
        assert seen > 0


# --- theorem 2 -------------------------------------------------------------------------

def test_collapse_identity_and_equivalence_with_coexistence(g2):
    mu = unanimity(g2, 0b01)
    nu = unanimity(g2, 0b10)  # B = {1}: mu(B) = 1, nu(B^c) = 1
    for f in (Exponential(1.0), PiecewiseLinearKink()):
        verdict = zero_one_collapse_check(mu, nu, f)
        assert verdict.holds


def test_collapse_check_detects_violating_function(g2):
    mu = unanimity(g2, 0b01)
    nu = unanimity(g2, 0b10)
    # strictly increasing, f(0) = 0, but f(-1) + f(1) > f(0): not weakly
    # superadditive, so the equivalence verdict must still hold (both sides
    # report the violation)
    f = TabulatedUtility(((-6.0, -1.0), (-1.0, -0.5), (0.0, 0.0), (1.0, 1.0), (6.0, 2.0)))
    values = tuple(-3.0 + 0.5 * k for k in range(13))
    verdict = zero_one_collapse_check(mu, nu, f, values)
    assert verdict.holds  # equivalence: WS fails and a violation is found


def test_collapse_without_coexistence_holds_for_any_shape(g2):
    # mu = 1 off the empty set, nu = 0 off the full set: no coexistence
    mu = new_capacity(g2, [0.0, 1.0, 1.0, 1.0])
    nu = new_capacity(g2, [0.0, 0.0, 0.0, 1.0])
    for f in (Exponential(1.0), PlainMap("expm1", math.expm1), Power(0.5, 2.0)):
        verdict = zero_one_collapse_check(mu, nu, f)
        assert verdict.holds and verdict.detail == "no coexistence set"


def test_collapse_check_requires_zero_one(mu_worked):
    with pytest.raises(NotZeroOneValued):
        zero_one_collapse_check(mu_worked, mu_worked, Exponential(1.0))


def test_collapse_identity_is_exact_over_gallery(g3):
    rng = rng_from_seed(31)
    values = tuple(-4.0 + 0.5 * k for k in range(17))
    gallery = [Exponential(1.0), PiecewiseLinearKink(), PlainMap("expm1", math.expm1)]
    for _ in range(30):
        mu = random_capacity(rng, g3, style="zero-one")
        nu = random_capacity(rng, g3, style="zero-one")
        for f in gallery:
            assert zero_one_collapse_check(mu, nu, f, values, seed=7).holds


# --- theorem 3 -------------------------------------------------------------------------

def worked_probe_pair(g2_):
    mu = new_capacity(g2_, [0.0, 0.3, 0.4, 1.0])
    nu = mu.dual()
    return mu, nu


def test_probe_concave_function_consistent(g2):
    mu, nu = worked_probe_pair(g2)
    verdict = two_valued_concavity_probe(mu, nu, Exponential(1.0))
    assert verdict.holds and "concave=True" in verdict.detail


def test_probe_convex_function_yields_violation(g2):
    mu, nu = worked_probe_pair(g2)
    verdict = two_valued_concavity_probe(mu, nu, PlainMap("expm1", math.expm1))
    assert verdict.holds and "violation=found" in verdict.detail


def test_probe_hypotheses_enforced(g2, pl_pair):
    pl, _ = pl_pair
    with pytest.raises(HypothesisFailure):
        two_valued_concavity_probe(pl, pl, Exponential(1.0))  # dominance fails
    mu = unanimity(g2, 0b01)
    nu = new_capacity(g2, [0.0, 0.0, 0.0, 1.0])
    with pytest.raises(HypothesisFailure):
        two_valued_concavity_probe(mu, nu, Exponential(1.0))  # no coexistence set


def test_probe_mixture_weights_respect_dominance(g2):
    mu, nu = worked_probe_pair(g2)
    full = g2.full
    for b in range(1, full):
        p, q = mu.table[b], nu.table[full ^ b]
        if p > 0 and q > 0:
            assert p <= 1.0 - q + 1e-12


# --- theorem 4 -------------------------------------------------------------------------

def test_axis_check_interior_capacity_concave_vs_convex(mu_worked, nu_worked):
    assert nonnegative_axis_check(mu_worked, nu_worked, Exponential(1.0)).holds
    verdict = nonnegative_axis_check(mu_worked, nu_worked, Power(0.0, 2.0))
    assert verdict.holds  # consistency: convex on x >= 0 and violation found


def test_axis_check_zero_one_unconditional(g2):
    mu = unanimity(g2, 0b01)
    nu = unanimity(g2, 0b10)
    for f in (Exponential(1.0), Power(0.0, 2.0), PlainMap("expm1", math.expm1)):
        verdict = nonnegative_axis_check(mu, nu, f)
        assert verdict.holds and "unconditional" in verdict.detail


def test_axis_check_rejects_negative_grid(mu_worked, nu_worked):
    with pytest.raises(ValueError):
        nonnegative_axis_check(mu_worked, nu_worked, Exponential(1.0), values=(-1.0, 0.0, 1.0))


# --- full sweep -------------------------------------------------------------------------

def test_small_sweep_is_clean_and_counts_pairs():
    report = run_full_report(n=2, levels=(0.0, 1.0), seed=1)
    assert report.pair_count == 16
    assert report.capacity_count == 4
    assert report.clean, report.unexpected


def test_sweep_determinism():
    a = run_full_report(n=2, levels=(0.0, 0.5, 1.0), seed=9, property_samples=6)
    b = run_full_report(n=2, levels=(0.0, 0.5, 1.0), seed=9, property_samples=6)
    assert a.to_text() == b.to_text()
    assert json.dumps(a.to_json_dict(), sort_keys=True) == json.dumps(
        b.to_json_dict(), sort_keys=True
    )


def test_sweep_classification_totals():
    report = run_full_report(n=2, levels=(0.0, 0.5, 1.0), seed=4, theorems=("1",))
    assert sum(report.class_counts.values()) == report.pair_count == 81
    assert report.clean


# --- two point generator ------------------------------------------------------------------

def test_two_point_variables_cover_both_orders(g2):
    xs = {x.values for x in two_point_variables(g2, (-1.0, 2.0))}
    assert (2.0, -1.0) in xs and (-1.0, 2.0) in xs
