"""Utility functions: values, derivatives, inverses and shape checks.

All families are strictly increasing with ``u(0) = 0``.  Each carries its
own open domain; two families are only defined from 0 upward (power with
zero shift, and power-expo with fractional exponent), recorded by a closed
left endpoint at 0.  Derivatives and inverses are closed-form wherever the
family admits them; the tabulated family inverts by bisection and stands in
for empirical utilities that arrive as point estimates.

Shape certificates (concavity, weak superadditivity) are grid-based:
midpoint concavity over all grid pairs, and the two-sided inequality
``f(a) + f(b) <= f(a + b)`` over all grid pairs with ``a <= 0 <= b``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import DomainError, NonDifferentiable, NotInRange, ZeroDerivative

INF = float("inf")
SHAPE_TOL = 1e-12
DEFAULT_GRID_POINTS = 201
DEFAULT_GRID_BOUNDS = (-10.0, 10.0)
BISECTION_TOL = 1e-12
BISECTION_MAX_ITER = 200


class UtilityFunction:
    """Base class for strictly increasing utilities vanishing at 0."""

    #: open domain endpoints; subclasses override
    domain_lo: float = -INF
    domain_hi: float = INF
    #: True when the domain is [domain_lo, hi) rather than (domain_lo, hi)
    closed_at_lo: bool = False

    def in_domain(self, x: float) -> bool:
        if self.closed_at_lo:
            return self.domain_lo <= x < self.domain_hi
        return self.domain_lo < x < self.domain_hi

    def _require(self, x: float) -> float:
        x = float(x)
        if not self.in_domain(x):
            raise DomainError(f"{self.spec()}: {x!r} outside domain")
        return x

    def value(self, x: float) -> float:
        return self._value(self._require(x))

    __call__ = value

    def prime(self, x: float) -> float:
        return self._prime(self._require(x))

    def second(self, x: float) -> float:
        return self._second(self._require(x))

    def inverse(self, y: float) -> float:
        lo, hi = self.range()
        if not (lo < y < hi or (y == lo and self.closed_at_lo)):
            raise NotInRange(f"{self.spec()}: {y!r} outside range ({lo}, {hi})")
        return self._inverse(float(y))

    def range(self) -> tuple[float, float]:
        """Open image interval of the domain."""
        raise NotImplementedError

    def _value(self, x: float) -> float:
        raise NotImplementedError

    def _prime(self, x: float) -> float:
        raise NotImplementedError

    def _second(self, x: float) -> float:
        raise NotImplementedError

    def _inverse(self, y: float) -> float:
        raise NotImplementedError

    def spec(self) -> str:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.spec()!r})"

    def _validate_shape(self):
        # u(0) = 0 and monotone growth, certified on a grid.  Bounded
        # families saturate in floating point far from 0 (1 - exp(-...)
        # rounds to 1), so strictness is only demanded on a central window
        # where values stay resolvable; elsewhere nondecreasing suffices.
        if abs(self.value(0.0)) > 1e-12:
            raise ValueError(f"{self.spec()}: u(0) = {self.value(0.0)!r}, expected 0")
        grid = default_grid(self)
        vals = [self.value(x) for x in grid]
        for (x0, v0), (x1, v1) in zip(zip(grid, vals), zip(grid[1:], vals[1:])):
            if v1 < v0:
                raise ValueError(f"{self.spec()}: decreasing between {x0} and {x1}")
        central = default_grid(self, 41, (-1.0, 1.0))
        cvals = [self.value(x) for x in central]
        for (x0, v0), (x1, v1) in zip(zip(central, cvals), zip(central[1:], cvals[1:])):
            if v1 <= v0:
                raise ValueError(f"{self.spec()}: not strictly increasing between {x0} and {x1}")


def default_grid(
    u: UtilityFunction,
    points: int = DEFAULT_GRID_POINTS,
    bounds: tuple[float, float] = DEFAULT_GRID_BOUNDS,
) -> list[float]:
    """Evaluation grid inside the domain, clipped to ``bounds``.

    Open endpoints are approached but not touched; a closed left endpoint
    at 0 is included.
    """
    lo = max(bounds[0], u.domain_lo)
    hi = min(bounds[1], u.domain_hi)
    if not u.closed_at_lo and lo == u.domain_lo:
        lo = lo + max(1e-9, abs(lo) * 1e-9)
    if hi == u.domain_hi:
        hi = hi - max(1e-9, abs(hi) * 1e-9)
    if not lo < hi:
        raise ValueError("empty grid")
    step = (hi - lo) / (points - 1)
    return [lo + k * step for k in range(points)]


@dataclass(frozen=True)
class Exponential(UtilityFunction):
    """Constant absolute risk aversion: ``u(x) = 1 - exp(-a x)``."""

    a: float

    def __post_init__(self):
        if self.a <= 0.0:
            raise ValueError(f"a must be positive, got {self.a!r}")
        self._validate_shape()

    def _value(self, x: float) -> float:
        return -math.expm1(-self.a * x)

    def _prime(self, x: float) -> float:
        return self.a * math.exp(-self.a * x)

    def _second(self, x: float) -> float:
        return -self.a * self.a * math.exp(-self.a * x)

    def _inverse(self, y: float) -> float:
        return -math.log1p(-y) / self.a

    def range(self) -> tuple[float, float]:
        return (-INF, 1.0)

    def spec(self) -> str:
        return f"exp:{self.a:g}"


@dataclass(frozen=True)
class Power(UtilityFunction):
    """Shifted power: ``u(x) = (x + a)^b - a^b`` on ``x > -a``.

    Concave iff ``b <= 1``; with ``b > 1`` it is the convex probe used by
    the shape checkers (``a=0.5, b=2`` is ``x^2 + x``).  ``a = 0`` restricts
    the domain to ``x >= 0``.
    """

    a: float
    b: float

    def __post_init__(self):
        if self.a < 0.0 or self.b <= 0.0:
            raise ValueError(f"need a >= 0 and b > 0, got ({self.a!r}, {self.b!r})")
        object.__setattr__(self, "domain_lo", -self.a)
        if self.a == 0.0:
            object.__setattr__(self, "closed_at_lo", True)
        self._validate_shape()

    def _value(self, x: float) -> float:
        return (x + self.a) ** self.b - self.a**self.b

    def _prime(self, x: float) -> float:
        if x == -self.a:
            raise NonDifferentiable(f"{self.spec()}: derivative undefined at the domain edge")
        return self.b * (x + self.a) ** (self.b - 1.0)

    def _second(self, x: float) -> float:
        if x == -self.a:
            raise NonDifferentiable(f"{self.spec()}: derivative undefined at the domain edge")
        return self.b * (self.b - 1.0) * (x + self.a) ** (self.b - 2.0)

    def _inverse(self, y: float) -> float:
        return (y + self.a**self.b) ** (1.0 / self.b) - self.a

    def range(self) -> tuple[float, float]:
        return (-(self.a**self.b), INF)

    def spec(self) -> str:
        return f"power:{self.a:g},{self.b:g}"


@dataclass(frozen=True)
class Logarithmic(UtilityFunction):
    """``u(x) = ln((x + a) / a)`` on ``x > -a``, with ``a >= 1``."""

    a: float

    def __post_init__(self):
        if self.a < 1.0:
            raise ValueError(f"a must be >= 1, got {self.a!r}")
        object.__setattr__(self, "domain_lo", -self.a)
        self._validate_shape()

    def _value(self, x: float) -> float:
        return math.log1p(x / self.a)

    def _prime(self, x: float) -> float:
        return 1.0 / (x + self.a)

    def _second(self, x: float) -> float:
        return -1.0 / (x + self.a) ** 2

    def _inverse(self, y: float) -> float:
        return self.a * math.expm1(y)

    def range(self) -> tuple[float, float]:
        return (-INF, INF)

    def spec(self) -> str:
        return f"log:{self.a:g}"


@dataclass(frozen=True)
class PowerExpo(UtilityFunction):
    """``u(x) = 1 - exp(-b x^c)`` on ``x >= 0``.

    Fractional powers of negative numbers are undefined (and even integer
    exponents destroy monotonicity below 0), so the domain is one-sided;
    the left endpoint 0 itself is admitted with ``u(0) = 0``.  Derivatives
    at 0 exist only for ``c = 1``.
    """

    b: float
    c: float

    domain_lo = 0.0
    closed_at_lo = True

    def __post_init__(self):
        if self.b <= 0.0 or self.c <= 0.0:
            raise ValueError(f"parameters must be positive, got ({self.b!r}, {self.c!r})")
        self._validate_shape()

    def _value(self, x: float) -> float:
        return -math.expm1(-self.b * x**self.c)

    def _prime(self, x: float) -> float:
        if x == 0.0 and self.c != 1.0:
            raise NonDifferentiable(f"{self.spec()}: derivative undefined at 0")
        return self.b * self.c * x ** (self.c - 1.0) * math.exp(-self.b * x**self.c)

    def _second(self, x: float) -> float:
        if x == 0.0 and self.c != 1.0:
            raise NonDifferentiable(f"{self.spec()}: derivative undefined at 0")
        b, c = self.b, self.c
        return b * c * x ** (c - 2.0) * math.exp(-b * x**c) * ((c - 1.0) - b * c * x**c)

    def _inverse(self, y: float) -> float:
        return (-math.log1p(-y) / self.b) ** (1.0 / self.c)

    def range(self) -> tuple[float, float]:
        return (0.0, 1.0)

    def spec(self) -> str:
        return f"powerexpo:{self.b:g},{self.c:g}"


@dataclass(frozen=True)
class Linear(UtilityFunction):
    """Risk-neutral benchmark ``u(x) = x``."""

    def _value(self, x: float) -> float:
        return x

    def _prime(self, x: float) -> float:
        return 1.0

    def _second(self, x: float) -> float:
        return 0.0

    def _inverse(self, y: float) -> float:
        return y

    def range(self) -> tuple[float, float]:
        return (-INF, INF)

    def spec(self) -> str:
        return "linear"


@dataclass(frozen=True)
class NegSqrtKink(UtilityFunction):
    """``u(x) = x - sqrt(max(-x, 0))``: weakly superadditive but not concave.

    Linear from 0 upward, with a square-root drop (convex) below 0; the
    derivative blows up at the kink.
    """

    def _value(self, x: float) -> float:
        return x - math.sqrt(-x) if x < 0.0 else x

    def _prime(self, x: float) -> float:
        if x == 0.0:
            raise NonDifferentiable(f"{self.spec()}: kink at 0")
        return 1.0 + 0.5 / math.sqrt(-x) if x < 0.0 else 1.0

    def _second(self, x: float) -> float:
        if x == 0.0:
            raise NonDifferentiable(f"{self.spec()}: kink at 0")
        return 0.25 * (-x) ** -1.5 if x < 0.0 else 0.0

    def _inverse(self, y: float) -> float:
        if y >= 0.0:
            return y
        s = (-1.0 + math.sqrt(1.0 - 4.0 * y)) / 2.0
        return -s * s

    def range(self) -> tuple[float, float]:
        return (-INF, INF)

    def spec(self) -> str:
        return "negsqrt"


@dataclass(frozen=True)
class PiecewiseLinearKink(UtilityFunction):
    """``u(x) = x - max(-x, 0)``, i.e. ``min(x, 2x)``: concave with a kink at 0."""

    def _value(self, x: float) -> float:
        return 2.0 * x if x < 0.0 else x

    def _prime(self, x: float) -> float:
        if x == 0.0:
            raise NonDifferentiable(f"{self.spec()}: kink at 0")
        return 2.0 if x < 0.0 else 1.0

    def _second(self, x: float) -> float:
        if x == 0.0:
            raise NonDifferentiable(f"{self.spec()}: kink at 0")
        return 0.0

    def _inverse(self, y: float) -> float:
        return y / 2.0 if y < 0.0 else y

    def range(self) -> tuple[float, float]:
        return (-INF, INF)

    def spec(self) -> str:
        return "kink"


@dataclass(frozen=True)
class TabulatedUtility(UtilityFunction):
    """Strictly increasing piecewise-linear utility through knots.

    A knot at ``(0, 0)`` is required.  The inverse runs the generic
    bisection bracket rather than segment algebra, exercising the fallback
    path an empirical (non-closed-form) utility would take; tests pin it
    against the exact segment inverse.
    """

    knots: tuple[tuple[float, float], ...]

    def __post_init__(self):
        knots = tuple((float(x), float(y)) for x, y in self.knots)
        object.__setattr__(self, "knots", knots)
        if len(knots) < 2:
            raise ValueError("need at least two knots")
        if (0.0, 0.0) not in knots:
            raise ValueError("a knot at (0, 0) is required")
        for (x0, y0), (x1, y1) in zip(knots, knots[1:]):
            if x1 <= x0 or y1 <= y0:
                raise ValueError("knots must be strictly increasing in both coordinates")
        object.__setattr__(self, "domain_lo", knots[0][0])
        object.__setattr__(self, "domain_hi", knots[-1][0])
        object.__setattr__(self, "closed_at_lo", True)

    def in_domain(self, x: float) -> bool:
        return self.domain_lo <= x <= self.domain_hi

    def _value(self, x: float) -> float:
        ks = self.knots
        j = 1
        while j < len(ks) - 1 and ks[j][0] < x:
            j += 1
        (x0, y0), (x1, y1) = ks[j - 1], ks[j]
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)

    def _prime(self, x: float) -> float:
        for kx, _ in self.knots:
            if x == kx:
                raise NonDifferentiable(f"{self.spec()}: knot at {x}")
        ks = self.knots
        j = 1
        while j < len(ks) - 1 and ks[j][0] < x:
            j += 1
        (x0, y0), (x1, y1) = ks[j - 1], ks[j]
        return (y1 - y0) / (x1 - x0)

    def _second(self, x: float) -> float:
        self._prime(x)
        return 0.0

    def _inverse(self, y: float) -> float:
        lo, hi = self.domain_lo, self.domain_hi
        for _ in range(BISECTION_MAX_ITER):
            mid = (lo + hi) / 2.0
            v = self._value(mid)
            if abs(v - y) <= BISECTION_TOL:
                return mid
            if v < y:
                lo = mid
            else:
                hi = mid
            if hi - lo <= BISECTION_TOL * max(1.0, abs(lo)):
                break
        return (lo + hi) / 2.0

    def range(self) -> tuple[float, float]:
        return (self.knots[0][1], self.knots[-1][1])

    def inverse(self, y: float) -> float:
        lo, hi = self.range()
        if not lo <= y <= hi:
            raise NotInRange(f"{self.spec()}: {y!r} outside range [{lo}, {hi}]")
        return self._inverse(float(y))

    def spec(self) -> str:
        return "utable:" + ";".join(f"{x:g},{y:g}" for x, y in self.knots)


def arrow_pratt(u: UtilityFunction, x: float) -> float:
    """Absolute risk-aversion coefficient ``-u''(x) / u'(x)``."""
    d1 = u.prime(x)
    if d1 <= 0.0:
        raise ZeroDerivative(f"{u.spec()}: u'({x}) = {d1}")
    return -u.second(x) / d1


def _as_callable(f) -> Callable[[float], float]:
    return f.value if hasattr(f, "value") else f


@dataclass(frozen=True)
class ShapeCheck:
    """Grid certificate; ``witness`` is the offending pair when it fails."""

    holds: bool
    witness: tuple[float, float] | None
    gap: float

    def __bool__(self) -> bool:
        return self.holds


def is_concave_on(f, grid: Sequence[float], tol: float = SHAPE_TOL) -> ShapeCheck:
    """Midpoint concavity ``f((x+y)/2) >= (f(x)+f(y))/2 - tol`` over grid pairs."""
    fn = _as_callable(f)
    xs = sorted(set(float(x) for x in grid))
    vals = [fn(x) for x in xs]
    worst, worst_gap = None, float("-inf")
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            gap = (vals[i] + vals[j]) / 2.0 - fn((xs[i] + xs[j]) / 2.0)
            if gap > worst_gap:
                worst, worst_gap = (xs[i], xs[j]), gap
    return ShapeCheck(worst_gap <= tol, None if worst_gap <= tol else worst, worst_gap)


def is_weakly_superadditive_on(f, grid: Sequence[float], tol: float = SHAPE_TOL) -> ShapeCheck:
    """Check ``f(a) + f(b) <= f(a + b)`` for grid pairs with ``a <= 0 <= b``.

    Pairs whose sum leaves the evaluation domain are skipped.
    """
    fn = _as_callable(f)
    xs = sorted(set(float(x) for x in grid))
    neg = [x for x in xs if x <= 0.0]
    pos = [x for x in xs if x >= 0.0]
    if not neg or not pos:
        raise ValueError("grid must straddle 0")
    in_dom = f.in_domain if hasattr(f, "in_domain") else (lambda _x: True)
    worst, worst_gap = None, float("-inf")
    for a in neg:
        for b in pos:
            if not in_dom(a + b):
                continue
            gap = fn(a) + fn(b) - fn(a + b)
            if gap > worst_gap:
                worst, worst_gap = (a, b), gap
    return ShapeCheck(worst_gap <= tol, None if worst_gap <= tol else worst, worst_gap)


@dataclass(frozen=True)
class ComposedMap:
    """``g = u o v^{-1}`` with the closed-form second derivative.

    ``second`` evaluates
    ``-(u'(y) / v'(y)^2) (r_u(y) - r_v(y))`` at ``y = v^{-1}(x)``; the sign
    of the bracket is exactly the Arrow-Pratt comparison, so g is concave
    where u is (weakly) more risk averse than v.
    """

    u: UtilityFunction
    v: UtilityFunction

    def value(self, x: float) -> float:
        return self.u.value(self.v.inverse(x))

    def second(self, x: float) -> float:
        y = self.v.inverse(x)
        ru = arrow_pratt(self.u, y)
        rv = arrow_pratt(self.v, y)
        return -(self.u.prime(y) / self.v.prime(y) ** 2) * (ru - rv)

    def grid(self, points: int = DEFAULT_GRID_POINTS, bounds=DEFAULT_GRID_BOUNDS) -> list[float]:
        """Grid in the x-space of g (the image of v)."""
        ys = default_grid(self.v, points, bounds)
        ys = [y for y in ys if self.u.in_domain(y)]
        return [self.v.value(y) for y in ys]


def compose_via_inverse(u: UtilityFunction, v: UtilityFunction) -> ComposedMap:
    """Relative-curvature map ``u o v^{-1}`` used by agent comparison."""
    return ComposedMap(u, v)


def parse_utility(spec: str) -> UtilityFunction:
    """Build a utility from a CLI spec string.

    Formats: ``linear``, ``exp:1.0``, ``power:4,0.5``, ``log:1``,
    ``powerexpo:1,2``, ``negsqrt``, ``kink``,
    ``utable:-1,-2;0,0;1,0.5``.
    """
    spec = spec.strip()
    plain = {"linear": Linear, "negsqrt": NegSqrtKink, "kink": PiecewiseLinearKink}
    if spec in plain:
        return plain[spec]()
    if ":" not in spec:
        raise ValueError(f"cannot parse utility spec {spec!r}")
    kind, _, args = spec.partition(":")
    kind = kind.lower()
    try:
        if kind == "exp":
            return Exponential(float(args))
        if kind == "power":
            a, b = (float(t) for t in args.split(","))
            return Power(a, b)
        if kind == "log":
            return Logarithmic(float(args))
        if kind == "powerexpo":
            b, c = (float(t) for t in args.split(","))
            return PowerExpo(b, c)
        if kind == "utable":
            knots = tuple(
                tuple(float(t) for t in pair.split(",")) for pair in args.split(";")
            )
            return TabulatedUtility(knots)  # type: ignore[arg-type]
    except ValueError:
        raise
    except Exception as exc:
        raise ValueError(f"cannot parse utility spec {spec!r}: {exc}") from exc
    raise ValueError(f"unknown utility family {kind!r}")
