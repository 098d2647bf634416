"""Shared fixtures: the small worked examples used across modules."""

import pytest

from choqrisk import (
    GroundSet,
    MassFunction,
    RandomVariable,
    new_capacity,
    plausibility,
)


@pytest.fixture
def g2():
    return GroundSet(2)


@pytest.fixture
def g3():
    return GroundSet(3)


@pytest.fixture
def mu_worked(g2):
    """The hand-evaluated capacity {empty: 0, {1}: 0.3, {2}: 0.5, full: 1}."""
    return new_capacity(g2, [0.0, 0.3, 0.5, 1.0])


@pytest.fixture
def nu_worked(mu_worked):
    """Its conjugate {0, 0.5, 0.7, 1}."""
    return mu_worked.dual()


@pytest.fixture
def x_worked(g2):
    """The outcome (4, -2); with the pair above the integral is -0.2."""
    return RandomVariable(g2, (4.0, -2.0))


@pytest.fixture
def mass_half(g2):
    """m({1}) = 0.5, m(full) = 0.5; Bel/Pl tables evaluated by hand."""
    return MassFunction(g2, (0.0, 0.5, 0.0, 0.5))


@pytest.fixture
def pl_pair(mass_half):
    """(Pl, Pl): the standard conjugate-dominance violator, gap 0.5."""
    pl = plausibility(mass_half)
    return pl, pl
