"""Capacities (normalized monotone set functions) on finite ground sets.

A ground set holds n elements (1 <= n <= 20).  Subsets are encoded as
bitmasks in ``[0, 2**n)``: bit ``i`` set means element ``i`` belongs to the
subset.  A capacity assigns a value in [0, 1] to every subset, with
``table[0] == 0.0`` and ``table[full] == 1.0`` exactly, and values
nondecreasing along subset inclusion.  Additivity is never assumed.

Two tolerance tiers are used throughout the package:

* ``STRUCT_TOL = 1e-12`` for construction-level equalities (normalization,
  duality, additivity, entrywise capacity equality);
* ``DERIVED_TOL = 1e-9`` for comparisons of derived quantities that have
  accumulated arithmetic error.

This module also provides the classical constructions: distorted
probabilities, envelope (Hurwicz-style) capacities, possibility/necessity,
unanimity games, belief/plausibility from a mass function, and the self-dual
credibility measure, together with the structural checks used by the
theorem-verification layer (conjugate dominance, superadditivity,
uncertainty-measure axioms).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import (
    BadPsi,
    BadWeights,
    EmptyCoalition,
    EmptyFamily,
    GroundSetMismatch,
    NotAdditive,
    NotMonotone,
    NotNormalized,
)

STRUCT_TOL = 1e-12
DERIVED_TOL = 1e-9
MAX_ELEMENTS = 20


@dataclass(frozen=True)
class GroundSet:
    """Finite ground set; subsets of it are bitmasks in ``[0, 2**n)``."""

    n: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if not isinstance(self.n, int) or not 1 <= self.n <= MAX_ELEMENTS:
            raise ValueError(f"ground set size must be an int in [1, {MAX_ELEMENTS}], got {self.n!r}")
        if self.labels is not None:
            labels = tuple(self.labels)
            object.__setattr__(self, "labels", labels)
            if len(labels) != self.n:
                raise ValueError(f"expected {self.n} labels, got {len(labels)}")
            if len(set(labels)) != self.n:
                raise ValueError("labels must be unique")

    @property
    def size(self) -> int:
        return 1 << self.n

    @property
    def full(self) -> int:
        """Bitmask of the whole set."""
        return (1 << self.n) - 1

    def subsets(self) -> range:
        return range(1 << self.n)

    def complement(self, mask: int) -> int:
        return self.full ^ mask

    def label_of(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i + 1)

    def describe(self, mask: int) -> str:
        """Human-readable subset, e.g. ``{1,3}``."""
        members = [self.label_of(i) for i in range(self.n) if mask >> i & 1]
        return "{" + ",".join(members) + "}"


def _check_same_ground(*objs) -> GroundSet:
    ground = objs[0].ground
    for o in objs[1:]:
        if o.ground.n != ground.n:
            raise GroundSetMismatch(
                f"ground sets differ: {ground.n} vs {o.ground.n} elements"
            )
    return ground


@dataclass(frozen=True, eq=False)
class Capacity:
    """Normalized monotone set function, stored as one value per bitmask.

    Instances are immutable and validated on construction; every operation
    on them is a pure function, so they are safe to share across threads.
    """

    ground: GroundSet
    table: tuple[float, ...]

    def __post_init__(self):
        table = tuple(float(v) for v in self.table)
        object.__setattr__(self, "table", table)
        n, size = self.ground.n, self.ground.size
        if len(table) != size:
            raise ValueError(f"table must have {size} entries, got {len(table)}")
        arr = np.asarray(table, dtype=float)
        if not np.all(np.isfinite(arr)):
            raise ValueError("table entries must be finite")
        # monotonicity first: the witness pair is the more useful diagnostic
        # when both it and normalization fail.
        masks = np.arange(size)
        for i in range(n):
            without = masks[(masks >> i) & 1 == 0]
            bad = arr[without] > arr[without | (1 << i)] + STRUCT_TOL
            if bad.any():
                a = int(without[bad][0])
                raise NotMonotone(a, a | (1 << i), table[a], table[a | (1 << i)])
        if table[0] != 0.0 or table[size - 1] != 1.0:
            raise NotNormalized(
                f"table[empty]={table[0]!r}, table[full]={table[size - 1]!r}; expected exactly 0.0 and 1.0"
            )

    def __getitem__(self, mask: int) -> float:
        return self.table[mask]

    def dual(self) -> "Capacity":
        """Conjugate capacity: ``dual(A) = 1 - self(complement of A)``."""
        full = self.ground.full
        return Capacity(self.ground, tuple(1.0 - self.table[full ^ a] for a in self.ground.subsets()))

    def isclose(self, other: "Capacity", atol: float = STRUCT_TOL) -> bool:
        """Entrywise equality within ``atol``."""
        if self.ground.n != other.ground.n:
            return False
        return all(abs(a - b) <= atol for a, b in zip(self.table, other.table))

    def is_zero_one_valued(self, atol: float = STRUCT_TOL) -> bool:
        return all(v <= atol or v >= 1.0 - atol for v in self.table)

    def is_additive(self, atol: float = STRUCT_TOL) -> bool:
        """True iff every value is the sum of its singleton values."""
        singles = [self.table[1 << i] for i in range(self.ground.n)]
        for a in self.ground.subsets():
            s = sum(singles[i] for i in range(self.ground.n) if a >> i & 1)
            if abs(self.table[a] - s) > atol:
                return False
        return True

    def __repr__(self) -> str:
        entries = ", ".join(
            f"{self.ground.describe(a)}: {self.table[a]:g}" for a in self.ground.subsets()
        )
        return f"Capacity(n={self.ground.n}, {{{entries}}})"


def new_capacity(ground: GroundSet, table: Sequence[float]) -> Capacity:
    """Validate a raw table and wrap it as a capacity."""
    return Capacity(ground, tuple(table))


def _snap_endpoints(ground: GroundSet, table: list[float], what: str) -> list[float]:
    """Require computed endpoints to sit within STRUCT_TOL of (0, 1), then pin them.

    Constructors go through here so arithmetic dust cannot leak into the
    exact-endpoint invariant.
    """
    full = ground.full
    if abs(table[0]) > STRUCT_TOL or abs(table[full] - 1.0) > STRUCT_TOL:
        raise NotNormalized(
            f"{what}: computed endpoints ({table[0]!r}, {table[full]!r}) are not (0, 1)"
        )
    table[0] = 0.0
    table[full] = 1.0
    return table


def from_probability(ground: GroundSet, weights: Sequence[float]) -> Capacity:
    """Additive capacity ``P(A) = sum of weights over A``."""
    w = [float(x) for x in weights]
    if len(w) != ground.n:
        raise BadWeights(f"expected {ground.n} weights, got {len(w)}")
    if any(x < 0.0 for x in w):
        raise BadWeights(f"weights must be nonnegative, got {w}")
    total = sum(w)
    if abs(total - 1.0) > STRUCT_TOL:
        raise BadWeights(f"weights sum to {total!r}, expected 1")
    table = [0.0] * ground.size
    for a in range(1, ground.size):
        low = a & -a
        table[a] = table[a ^ low] + w[low.bit_length() - 1]
    return Capacity(ground, tuple(_snap_endpoints(ground, table, "from_probability")))


def distort(p: Capacity, g: Callable[[float], float]) -> Capacity:
    """Distorted probability ``A -> g(P(A))`` for an additive P.

    ``g`` is any callable on [0, 1]; weighting-function objects from
    :mod:`choqrisk.weighting` work directly.
    """
    if not p.is_additive():
        raise NotAdditive("distortion requires an additive base capacity")
    fn = getattr(g, "value", g)
    table = [float(fn(v)) for v in p.table]
    return Capacity(p.ground, tuple(_snap_endpoints(p.ground, table, "distort")))


def hurwicz(family: Sequence[Capacity], theta: float) -> Capacity:
    """Envelope mix ``theta * min_P P(A) + (1 - theta) * max_P P(A)``.

    ``theta = 1`` gives the lower envelope (pure pessimism), ``theta = 0``
    the upper envelope.
    """
    if not family:
        raise EmptyFamily("need at least one probability in the family")
    if not 0.0 <= theta <= 1.0:
        raise ValueError(f"theta must be in [0, 1], got {theta!r}")
    ground = _check_same_ground(*family)
    for k, p in enumerate(family):
        if not p.is_additive():
            raise NotAdditive(f"family member {k} is not additive")
    table = []
    for a in ground.subsets():
        vals = [p.table[a] for p in family]
        table.append(theta * min(vals) + (1.0 - theta) * max(vals))
    return Capacity(ground, tuple(_snap_endpoints(ground, table, "hurwicz")))


def possibility(ground: GroundSet, psi: Sequence[float]) -> Capacity:
    """Maxitive capacity ``A -> max of psi over A`` (0 on the empty set)."""
    vals = [float(x) for x in psi]
    if len(vals) != ground.n:
        raise BadPsi(f"expected {ground.n} values, got {len(vals)}")
    if any(not 0.0 <= x <= 1.0 for x in vals):
        raise BadPsi(f"psi values must lie in [0, 1], got {vals}")
    if abs(max(vals) - 1.0) > STRUCT_TOL:
        raise BadPsi(f"max(psi) must be 1, got {max(vals)!r}")
    table = [0.0]
    for a in range(1, ground.size):
        table.append(max(vals[i] for i in range(ground.n) if a >> i & 1))
    return Capacity(ground, tuple(_snap_endpoints(ground, table, "possibility")))


def necessity(ground: GroundSet, psi: Sequence[float]) -> Capacity:
    """Conjugate of the possibility measure for the same profile."""
    return possibility(ground, psi).dual()


def unanimity(ground: GroundSet, coalition: int) -> Capacity:
    """{0,1}-valued capacity equal to 1 exactly on supersets of the coalition."""
    if coalition == 0:
        raise EmptyCoalition("coalition must be a nonempty subset")
    if not 0 < coalition <= ground.full:
        raise ValueError(f"coalition {coalition:#b} outside the ground set")
    table = tuple(1.0 if a & coalition == coalition else 0.0 for a in ground.subsets())
    return Capacity(ground, table)


@dataclass(frozen=True)
class MassFunction:
    """Nonnegative masses over subsets: ``mass[empty] = 0`` and total mass 1."""

    ground: GroundSet
    mass: tuple[float, ...]

    def __post_init__(self):
        mass = tuple(float(v) for v in self.mass)
        object.__setattr__(self, "mass", mass)
        if len(mass) != self.ground.size:
            raise ValueError(f"mass table must have {self.ground.size} entries, got {len(mass)}")
        if mass[0] != 0.0:
            raise ValueError(f"mass of the empty set must be 0, got {mass[0]!r}")
        if any(v < 0.0 for v in mass):
            raise ValueError("masses must be nonnegative")
        total = sum(mass)
        if abs(total - 1.0) > STRUCT_TOL:
            raise ValueError(f"masses sum to {total!r}, expected 1")

    def focal_sets(self) -> list[int]:
        return [a for a, v in enumerate(self.mass) if v > 0.0]


def belief(m: MassFunction) -> Capacity:
    """Lower set function ``Bel(A) = sum of m(B) over B inside A``.

    Computed with the subset-sum (zeta) transform in O(n 2^n).
    """
    ground = m.ground
    acc = list(m.mass)
    for i in range(ground.n):
        bit = 1 << i
        for a in ground.subsets():
            if a & bit:
                acc[a] += acc[a ^ bit]
    return Capacity(ground, tuple(_snap_endpoints(ground, acc, "belief")))


def plausibility(m: MassFunction) -> Capacity:
    """Upper set function ``Pl(A) = sum of m(B) over B meeting A``.

    Evaluated as ``total mass - mass inside the complement``; the conjugacy
    ``Pl = dual(Bel)`` holds within STRUCT_TOL and is asserted by tests
    against the direct double-sum definition.
    """
    ground = m.ground
    sub = list(m.mass)
    for i in range(ground.n):
        bit = 1 << i
        for a in ground.subsets():
            if a & bit:
                sub[a] += sub[a ^ bit]
    total = sub[ground.full]
    table = [total - sub[ground.full ^ a] for a in ground.subsets()]
    return Capacity(ground, tuple(_snap_endpoints(ground, table, "plausibility")))


def credibility(ground: GroundSet, v: Sequence[float]) -> Capacity:
    """Self-dual capacity ``Cr(A) = (max_A v + 1 - max_{A^c} v) / 2``.

    The max over the empty set is taken as 0, which forces ``Cr(empty) = 0``
    and ``Cr(full) = 1`` exactly when ``max(v) = 1``.  Profiles with
    ``max(v) < 1`` would give ``Cr(full) < 1`` and are rejected rather than
    renormalized.
    """
    vals = [float(x) for x in v]
    if len(vals) != ground.n:
        raise BadPsi(f"expected {ground.n} values, got {len(vals)}")
    if any(not 0.0 <= x <= 1.0 for x in vals):
        raise BadPsi(f"profile values must lie in [0, 1], got {vals}")
    if abs(max(vals) - 1.0) > STRUCT_TOL:
        raise NotNormalized(
            f"credibility profile with max {max(vals)!r} < 1 gives Cr(full) < 1; rejected"
        )

    def sup_over(mask: int) -> float:
        return max((vals[i] for i in range(ground.n) if mask >> i & 1), default=0.0)

    table = [
        (sup_over(a) + 1.0 - sup_over(ground.full ^ a)) / 2.0 for a in ground.subsets()
    ]
    return Capacity(ground, tuple(_snap_endpoints(ground, table, "credibility")))


# ---------------------------------------------------------------------------
# structural checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DominanceCheck:
    """Result of the conjugate-dominance test ``mu <= dual(nu)``.

    ``worst_set`` maximizes ``mu(A) - dual(nu)(A)`` and ``gap`` is that
    maximum (positive iff dominance fails beyond tolerance).
    """

    holds: bool
    worst_set: int
    gap: float

    def __bool__(self) -> bool:
        return self.holds


def dominates_dual(mu: Capacity, nu: Capacity, atol: float = STRUCT_TOL) -> DominanceCheck:
    """Check ``mu(A) <= 1 - nu(A^c)`` for every subset A."""
    ground = _check_same_ground(mu, nu)
    full = ground.full
    worst_set, worst_gap = 0, float("-inf")
    for a in ground.subsets():
        gap = mu.table[a] - (1.0 - nu.table[full ^ a])
        if gap > worst_gap:
            worst_set, worst_gap = a, gap
    return DominanceCheck(worst_gap <= atol, worst_set, worst_gap)


@dataclass(frozen=True)
class SuperadditivityCheck:
    holds: bool
    witness: tuple[int, int] | None
    gap: float

    def __bool__(self) -> bool:
        return self.holds


def is_superadditive(mu: Capacity, atol: float = STRUCT_TOL) -> SuperadditivityCheck:
    """Check ``mu(A) + mu(B) <= mu(A | B)`` over all disjoint pairs.

    Enumerates all 3^n disjoint pairs; fine at desk scale (n <= 12 or so).
    """
    ground = mu.ground
    worst: tuple[int, int] | None = None
    worst_gap = float("-inf")
    for a in ground.subsets():
        rest = ground.full ^ a
        b = rest
        while True:
            gap = mu.table[a] + mu.table[b] - mu.table[a | b]
            if gap > worst_gap:
                worst, worst_gap = (a, b), gap
            if b == 0:
                break
            b = (b - 1) & rest
    return SuperadditivityCheck(worst_gap <= atol, None if worst_gap <= atol else worst, worst_gap)


@dataclass(frozen=True)
class UncertaintyCheck:
    """Outcome of the normalization / self-duality / subadditivity axioms.

    ``failing_axiom`` is one of ``None``, ``"normalization"``,
    ``"self-duality"`` or ``"subadditivity"``.
    """

    holds: bool
    failing_axiom: str | None
    witness: tuple[int, ...] | None

    def __bool__(self) -> bool:
        return self.holds


def is_uncertainty_measure(m: Capacity, atol: float = STRUCT_TOL) -> UncertaintyCheck:
    """Check the three uncertainty-measure axioms on a finite ground set.

    Countable subadditivity reduces to pairwise subadditivity here: any
    finite union is a chain of pairwise unions, so the pairwise inequality
    gives the general one by induction.
    """
    ground = m.ground
    if m.table[ground.full] != 1.0:
        return UncertaintyCheck(False, "normalization", (ground.full,))
    for a in ground.subsets():
        if abs(m.table[a] + m.table[ground.full ^ a] - 1.0) > atol:
            return UncertaintyCheck(False, "self-duality", (a, ground.full ^ a))
    for a in ground.subsets():
        for b in ground.subsets():
            if m.table[a | b] > m.table[a] + m.table[b] + atol:
                return UncertaintyCheck(False, "subadditivity", (a, b))
    return UncertaintyCheck(True, None, None)
