"""Exact integral evaluation against the quadrature oracle and hand values.

Expected numbers tagged by hand evaluation were derived by summing the two
step-function tails directly and cross-checked with riemann_oracle at
step 1e-5 before freezing.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from choqrisk import (
    GroundSet,
    IntervalI,
    RandomVariable,
    ax_bx,
    choquet,
    from_probability,
    gen_choquet,
    in_l_class,
    lower_tail,
    riemann_oracle,
    scaled_integral,
    sipos,
    step_integral,
    survival,
    translation_gap,
    unanimity,
)
from choqrisk.errors import GroundSetMismatch, NotZeroOneValued
from choqrisk.sampling import random_capacity, random_variable, rng_from_seed

DERIVED_TOL = 1e-9


# --- survival / lower tail ----------------------------------------------

def test_survival_below_min_is_one(mu_worked, x_worked):
    assert survival(mu_worked, x_worked, -5.0) == 1.0


def test_survival_worked(mu_worked, x_worked):
    # event {X > 0} = {1}
    assert survival(mu_worked, x_worked, 0.0) == 0.3


def test_strict_vs_nonstrict_differ_only_at_atoms(mu_worked, x_worked):
    ts = np.linspace(-3.0, 5.0, 801)
    atoms = set(x_worked.values)
    for t in ts:
        s, ns = survival(mu_worked, x_worked, t), survival(mu_worked, x_worked, t, strict=False)
        if t not in atoms:
            assert s == ns
    assert survival(mu_worked, x_worked, 4.0) != survival(mu_worked, x_worked, 4.0, strict=False)


def test_lower_tail_worked(nu_worked, x_worked):
    # event {X < 0} = {2}
    assert lower_tail(nu_worked, x_worked, 0.0) == 0.7


# --- gen_choquet exact values ---------------------------------------------

def test_constant_variable_integrates_to_itself(mu_worked, nu_worked, g2):
    for c in (-3.0, 0.0, 2.5):
        x = RandomVariable(g2, (c, c))
        assert gen_choquet(mu_worked, nu_worked, x) == pytest.approx(c, abs=1e-15)


def test_worked_example(mu_worked, nu_worked, x_worked):
    # 4 * mu({1}) - 2 * nu({2}) = 1.2 - 1.4
    value = gen_choquet(mu_worked, nu_worked, x_worked)
    assert value == pytest.approx(-0.2, abs=1e-14)
    assert value == pytest.approx(riemann_oracle(mu_worked, nu_worked, x_worked, 1e-5), abs=1e-4)


def test_additive_pair_reduces_to_expectation(g2, x_worked):
    p = from_probability(g2, [0.5, 0.5])
    assert gen_choquet(p, p, x_worked) == pytest.approx(1.0, abs=1e-15)


def test_choquet_worked(mu_worked, g2):
    x = RandomVariable(g2, (1.0, 3.0))
    value = choquet(mu_worked, x)
    assert value == pytest.approx(2.0, abs=1e-15)  # 1 + 2 * mu({2})
    assert value == pytest.approx(
        riemann_oracle(mu_worked, mu_worked.dual(), x, 1e-5), abs=1e-4
    )


def test_choquet_equals_gen_on_nonnegative(mu_worked, nu_worked, g2):
    x = RandomVariable(g2, (1.0, 3.0))
    assert choquet(mu_worked, x) == gen_choquet(mu_worked, nu_worked, x)


def test_sipos_is_odd(mu_worked, g2):
    rng = rng_from_seed(3)
    for _ in range(50):
        x = random_variable(rng, g2)
        assert sipos(mu_worked, -x) == pytest.approx(-sipos(mu_worked, x), abs=1e-12)


def test_ground_mismatch(mu_worked, g3):
    other = RandomVariable(g3, (1.0, 2.0, 3.0))
    with pytest.raises(GroundSetMismatch):
        gen_choquet(mu_worked, mu_worked, other)


# --- oracle equivalence -----------------------------------------------------

def test_oracle_on_constant(mu_worked, nu_worked, g2):
    x = RandomVariable(g2, (2.5, 2.5))
    assert riemann_oracle(mu_worked, nu_worked, x, 1e-5) == pytest.approx(2.5, abs=1e-4)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_oracle_matches_exact_on_wide_values(seed):
    rng = rng_from_seed(seed)
    n = int(rng.integers(2, 7))
    ground = GroundSet(n)
    mu = random_capacity(rng, ground)
    nu = random_capacity(rng, ground)
    x = random_variable(rng, ground, -100.0, 100.0)
    step = 1e-2
    exact = gen_choquet(mu, nu, x)
    approx = riemann_oracle(mu, nu, x, step)
    assert abs(exact - approx) <= (n + 1) * step


# --- C1: tail conventions ----------------------------------------------------

@given(st.integers(0, 2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_tail_conventions_agree_exactly(seed):
    rng = rng_from_seed(seed)
    ground = GroundSet(int(rng.integers(2, 5)))
    mu = random_capacity(rng, ground)
    nu = random_capacity(rng, ground)
    x = random_variable(rng, ground)
    assert gen_choquet(mu, nu, x, strict_tails=True) == gen_choquet(
        mu, nu, x, strict_tails=False
    )


def test_tail_conventions_with_ties(mu_worked, nu_worked, g2):
    x = RandomVariable(g2, (2.0, 2.0))
    assert gen_choquet(mu_worked, nu_worked, x, strict_tails=True) == gen_choquet(
        mu_worked, nu_worked, x, strict_tails=False
    )


# --- C2: monotonicity ---------------------------------------------------------

@given(st.integers(0, 2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_pointwise_monotonicity(seed):
    rng = rng_from_seed(seed)
    ground = GroundSet(int(rng.integers(2, 5)))
    mu = random_capacity(rng, ground)
    nu = random_capacity(rng, ground)
    x = random_variable(rng, ground)
    y = RandomVariable(ground, tuple(v + d for v, d in zip(x.values, rng.uniform(0, 5, ground.n))))
    assert gen_choquet(mu, nu, x) <= gen_choquet(mu, nu, y) + 1e-12


# --- C3: homogeneity with capacity swap ----------------------------------------

def test_scale_by_zero(mu_worked, nu_worked, x_worked):
    assert scaled_integral(mu_worked, nu_worked, x_worked, 0.0) == 0.0


def test_scale_by_two(mu_worked, nu_worked, x_worked):
    assert scaled_integral(mu_worked, nu_worked, x_worked, 2.0) == pytest.approx(-0.4, abs=1e-14)


def test_scale_minus_one_swaps_capacities(mu_worked, nu_worked, x_worked):
    assert scaled_integral(mu_worked, nu_worked, x_worked, -1.0) == pytest.approx(
        -gen_choquet(nu_worked, mu_worked, x_worked), abs=1e-14
    )


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_homogeneity_contract(seed):
    rng = rng_from_seed(seed)
    ground = GroundSet(int(rng.integers(2, 5)))
    mu = random_capacity(rng, ground)
    nu = random_capacity(rng, ground)
    x = random_variable(rng, ground)
    b = float(rng.uniform(-4, 4))
    lhs = scaled_integral(mu, nu, x, b)
    rhs = b * (gen_choquet(mu, nu, x) if b > 0 else gen_choquet(nu, mu, x))
    assert lhs == pytest.approx(rhs, abs=1e-12)


# --- C4: translation identity ----------------------------------------------------

def test_translation_zero_shift(mu_worked, nu_worked, x_worked):
    tg = translation_gap(mu_worked, nu_worked, x_worked, 0.0)
    assert tg.lhs == 0.0 and tg.correction == 0.0


def test_translation_invariance_for_conjugate_pair(mu_worked, x_worked):
    # nu = dual(mu): integrand vanishes off the atoms, so both sides are 0
    tg = translation_gap(mu_worked, mu_worked.dual(), x_worked, 3.0)
    assert tg.correction == pytest.approx(0.0, abs=1e-15)
    assert tg.lhs == pytest.approx(0.0, abs=1e-12)


def test_translation_unanimity_example(g2):
    mu = unanimity(g2, 0b01)
    x = RandomVariable(g2, (4.0, -2.0))
    tg = translation_gap(mu, mu, x, 3.0)
    assert tg.correction == pytest.approx(0.0, abs=1e-15)
    assert tg.lhs == pytest.approx(0.0, abs=1e-15)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=80, deadline=None)
def test_translation_identity(seed):
    rng = rng_from_seed(seed)
    ground = GroundSet(int(rng.integers(2, 5)))
    mu = random_capacity(rng, ground)
    nu = random_capacity(rng, ground)
    x = random_variable(rng, ground)
    a = float(rng.uniform(-10, 10))
    tg = translation_gap(mu, nu, x, a)
    assert tg.lhs == pytest.approx(tg.correction, abs=1e-9)


# --- tail-collapse points -----------------------------------------------------

def test_ax_bx_dirac(g2):
    mu = unanimity(g2, 0b01)
    x = RandomVariable(g2, (4.0, -2.0))
    a, b = ax_bx(mu, mu, x)
    assert (a, b) == (0.0, 4.0)
    assert gen_choquet(mu, mu, x) == 4.0


def test_ax_bx_two_coalitions(g2):
    mu = unanimity(g2, 0b01)
    nu = unanimity(g2, 0b10)
    x = RandomVariable(g2, (3.0, -1.0))
    a, b = ax_bx(mu, nu, x)
    assert (a, b) == (-1.0, 3.0)
    assert gen_choquet(mu, nu, x) == 2.0


def test_ax_is_zero_for_nonnegative(g2):
    mu = unanimity(g2, 0b10)
    x = RandomVariable(g2, (0.5, 2.0))
    a, b = ax_bx(mu, mu, x)
    assert a == 0.0


def test_ax_bx_requires_zero_one(mu_worked, x_worked):
    with pytest.raises(NotZeroOneValued):
        ax_bx(mu_worked, mu_worked, x_worked)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_collapse_identity(seed):
    rng = rng_from_seed(seed)
    ground = GroundSet(int(rng.integers(2, 5)))
    mu = random_capacity(rng, ground, style="zero-one")
    nu = random_capacity(rng, ground, style="zero-one")
    x = random_variable(rng, ground)
    a, b = ax_bx(mu, nu, x)
    assert gen_choquet(mu, nu, x) == a + b


# --- membership ------------------------------------------------------------------

def test_in_l_unbounded(mu_worked, nu_worked, x_worked):
    assert in_l_class(mu_worked, nu_worked, x_worked)


def test_in_l_constant_inside(mu_worked, nu_worked, g2):
    x = RandomVariable(g2, (0.5, 0.5))
    assert in_l_class(mu_worked, nu_worked, x, IntervalI(-1.0, 1.0))


def test_in_l_value_outside(mu_worked, nu_worked, x_worked):
    assert not in_l_class(mu_worked, nu_worked, x_worked, IntervalI(-1.0, 5.0))


def test_interval_must_contain_zero():
    with pytest.raises(ValueError):
        IntervalI(0.5, 2.0)


# --- step_integral ------------------------------------------------------------------

def test_step_integral_of_indicator():
    f = lambda t: 1.0 if t < 2.0 else 0.0
    assert step_integral(f, 0.0, 5.0, [2.0]) == pytest.approx(2.0, abs=1e-15)


def test_step_integral_orientation():
    f = lambda t: 3.0
    assert step_integral(f, 1.0, 0.0, []) == pytest.approx(-3.0, abs=1e-15)


def test_step_integral_empty_range():
    assert step_integral(lambda t: 5.0, 2.0, 2.0, []) == 0.0


# --- random variable arithmetic ------------------------------------------------------

def test_rv_operators(g2):
    x = RandomVariable(g2, (1.0, -2.0))
    assert (x + 1.0).values == (2.0, -1.0)
    assert (1.0 - x).values == (0.0, 3.0)
    assert (x * -2.0).values == (-2.0, 4.0)
    assert (-x).values == (-1.0, 2.0)
    assert x.map(abs).values == (1.0, 2.0)
    assert x.min == -2.0 and x.max == 1.0


def test_rv_requires_finite(g2):
    with pytest.raises(ValueError):
        RandomVariable(g2, (1.0, math.inf))
