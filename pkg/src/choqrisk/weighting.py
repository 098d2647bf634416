"""Parametric probability-weighting (distortion) functions on [0, 1].

Every family maps 0 to 0 and 1 to 1 exactly and is validated to be
nondecreasing on a 1001-point grid at construction.  The conjugate reading
``dual_value(p) = 1 - value(1 - p)`` is what pairs a gains-side weighting
with a losses-side one when checking conjugate dominance of the induced
distorted capacities.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

GRID_POINTS = 1001
DOMINANCE_TOL = 1e-12

# Empirically the inverse-S family below loses monotonicity once its
# curvature parameter drops to about 0.28, hence the guarded range.
KT_GAMMA_MIN = 0.28


def _check_p(p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"probability must lie in [0, 1], got {p!r}")
    return p


class WeightingFunction:
    """Base class; concrete families implement ``_raw(p)`` on (0, 1)."""

    def value(self, p: float) -> float:
        p = _check_p(p)
        if p == 0.0:
            return 0.0
        if p == 1.0:
            return 1.0
        return self._raw(p)

    __call__ = value

    def dual_value(self, p: float) -> float:
        """Conjugate weighting ``1 - value(1 - p)``."""
        return 1.0 - self.value(1.0 - _check_p(p))

    def _raw(self, p: float) -> float:  # pragma: no cover - abstract
        raise NotImplementedError

    def _validate_shape(self):
        grid = np.linspace(0.0, 1.0, GRID_POINTS)
        vals = np.array([self.value(float(p)) for p in grid])
        if abs(vals[0]) > 1e-12 or abs(vals[-1] - 1.0) > 1e-12:
            raise ValueError(f"{self!r}: endpoints map to ({vals[0]}, {vals[-1]}), expected (0, 1)")
        drops = np.nonzero(np.diff(vals) < -1e-12)[0]
        if drops.size:
            k = int(drops[0])
            raise ValueError(
                f"{self!r} is decreasing between p={grid[k]:.4f} and p={grid[k + 1]:.4f}"
            )


@dataclass(frozen=True)
class Identity(WeightingFunction):
    def _raw(self, p: float) -> float:
        return p

    def spec(self) -> str:
        return "identity"


@dataclass(frozen=True)
class KahnemanTversky(WeightingFunction):
    """Inverse-S weighting ``p^g / (p^g + (1-p)^g)^(1/g)``.

    ``gamma`` is kept in (0.28, 1]; pass ``allow_out_of_range=True`` to
    construct outside that interval anyway (a warning is emitted and the
    grid monotonicity check still applies).
    """

    gamma: float
    allow_out_of_range: bool = False

    def __post_init__(self):
        if self.gamma <= 0.0:
            raise ValueError(f"gamma must be positive, got {self.gamma!r}")
        if not KT_GAMMA_MIN < self.gamma <= 1.0:
            if not self.allow_out_of_range:
                raise ValueError(
                    f"gamma={self.gamma!r} outside ({KT_GAMMA_MIN}, 1]; "
                    "pass allow_out_of_range=True to override"
                )
            warnings.warn(
                f"gamma={self.gamma!r} outside the validated range ({KT_GAMMA_MIN}, 1]",
                RuntimeWarning,
                stacklevel=2,
            )
        self._validate_shape()

    def _raw(self, p: float) -> float:
        g = self.gamma
        num = p**g
        return num / (num + (1.0 - p) ** g) ** (1.0 / g)

    def spec(self) -> str:
        return f"kt:{self.gamma:g}"


@dataclass(frozen=True)
class GoldsteinEinhorn(WeightingFunction):
    """Linear-in-log-odds weighting ``d p^g / (d p^g + (1-p)^g)``."""

    delta: float
    gamma: float

    def __post_init__(self):
        if self.delta <= 0.0 or self.gamma <= 0.0:
            raise ValueError(f"parameters must be positive, got ({self.delta!r}, {self.gamma!r})")
        self._validate_shape()

    def _raw(self, p: float) -> float:
        num = self.delta * p**self.gamma
        return num / (num + (1.0 - p) ** self.gamma)

    def spec(self) -> str:
        return f"ge:{self.delta:g},{self.gamma:g}"


@dataclass(frozen=True)
class Prelec(WeightingFunction):
    """Compound-invariant weighting ``exp(-d (-ln p)^g)``.

    The value at p = 0 is the limit 0.  For d = 1 the point 1/e is fixed
    for every ``gamma``.
    """

    delta: float
    gamma: float

    def __post_init__(self):
        if self.delta <= 0.0:
            raise ValueError(f"delta must be positive, got {self.delta!r}")
        if not 0.0 < self.gamma <= 1.0:
            raise ValueError(f"gamma must lie in (0, 1], got {self.gamma!r}")
        self._validate_shape()

    def _raw(self, p: float) -> float:
        return math.exp(-self.delta * (-math.log(p)) ** self.gamma)

    def spec(self) -> str:
        return f"prelec:{self.delta:g},{self.gamma:g}"


@dataclass(frozen=True)
class TabulatedWeighting(WeightingFunction):
    """Monotone piecewise-linear interpolation through empirical knots.

    Knots must start at (0, 0), end at (1, 1) and be nondecreasing in both
    coordinates; empirical weighting estimates usually come this way.
    """

    knots: tuple[tuple[float, float], ...]

    def __post_init__(self):
        knots = tuple((float(p), float(w)) for p, w in self.knots)
        object.__setattr__(self, "knots", knots)
        if len(knots) < 2:
            raise ValueError("need at least the two endpoint knots")
        if knots[0] != (0.0, 0.0) or knots[-1] != (1.0, 1.0):
            raise ValueError("knots must start at (0, 0) and end at (1, 1)")
        for (p0, w0), (p1, w1) in zip(knots, knots[1:]):
            if p1 <= p0:
                raise ValueError("knot abscissae must be strictly increasing")
            if w1 < w0 - 1e-12:
                raise ValueError("knot ordinates must be nondecreasing")

    def _raw(self, p: float) -> float:
        ps = [k[0] for k in self.knots]
        ws = [k[1] for k in self.knots]
        j = 1
        while ps[j] < p:
            j += 1
        p0, p1 = ps[j - 1], ps[j]
        w0, w1 = ws[j - 1], ws[j]
        return w0 + (w1 - w0) * (p - p0) / (p1 - p0)

    def spec(self) -> str:
        return "table:" + ";".join(f"{p:g},{w:g}" for p, w in self.knots)


@dataclass(frozen=True)
class DominanceScan:
    """Grid scan of ``g(p) - dual_h(p)``; dominance holds iff max <= 1e-12."""

    holds: bool
    max_gap: float
    argmax: float
    grid_size: int

    def __bool__(self) -> bool:
        return self.holds


def dominance_check(
    g: WeightingFunction, h: WeightingFunction, grid_size: int = GRID_POINTS
) -> DominanceScan:
    """Check ``g(p) <= 1 - h(1 - p)`` on a uniform grid.

    This is exactly conjugate dominance of the induced distorted capacities
    for every base probability, certified at grid resolution.
    """
    if grid_size < 2:
        raise ValueError("grid_size must be at least 2")
    worst_p, worst_gap = 0.0, float("-inf")
    for k in range(grid_size):
        p = k / (grid_size - 1)
        gap = g.value(p) - h.dual_value(p)
        if gap > worst_gap:
            worst_p, worst_gap = p, gap
    return DominanceScan(worst_gap <= DOMINANCE_TOL, worst_gap, worst_p, grid_size)


def figure_data(
    g: WeightingFunction, h: WeightingFunction, grid_size: int = GRID_POINTS
) -> list[tuple[float, float, float]]:
    """Rows ``(p, g(p), dual_h(p))`` on a uniform grid, ready for CSV."""
    if grid_size < 2:
        raise ValueError("grid_size must be at least 2")
    return [
        (p, g.value(p), h.dual_value(p))
        for p in (k / (grid_size - 1) for k in range(grid_size))
    ]


def parse_weighting(spec: str) -> WeightingFunction:
    """Build a weighting function from a CLI spec string.

    Formats: ``identity``, ``kt:0.61``, ``ge:0.65,0.60``, ``prelec:1,0.74``,
    ``table:0,0;0.4,0.5;1,1``.
    """
    spec = spec.strip()
    if spec == "identity":
        return Identity()
    if ":" not in spec:
        raise ValueError(f"cannot parse weighting spec {spec!r}")
    kind, _, args = spec.partition(":")
    kind = kind.lower()
    try:
        if kind == "kt":
            return KahnemanTversky(float(args))
        if kind == "ge":
            d, g = (float(t) for t in args.split(","))
            return GoldsteinEinhorn(d, g)
        if kind == "prelec":
            d, g = (float(t) for t in args.split(","))
            return Prelec(d, g)
        if kind == "table":
            knots = tuple(
                tuple(float(t) for t in pair.split(",")) for pair in args.split(";")
            )
            return TabulatedWeighting(knots)  # type: ignore[arg-type]
    except ValueError:
        raise
    except Exception as exc:  # malformed arg lists
        raise ValueError(f"cannot parse weighting spec {spec!r}: {exc}") from exc
    raise ValueError(f"unknown weighting family {kind!r}")
