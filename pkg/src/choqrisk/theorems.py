"""Property-based and exhaustive verification of the Jensen-type results.

The checks here quantify over capacity pairs and over functions:

* a Jensen inequality ``C(f(X)) <= f(C(X))`` for increasing concave f with
  ``f(0) >= 0`` holds for every X exactly when ``mu <= dual(nu)``; when
  dominance fails, an explicit witness (a two-valued X and an affine map
  with positive intercept) realizes a violation whose size equals the
  dominance gap;
* for {0,1}-valued pairs the integral collapses to ``f(a_X) + f(b_X)`` and
  the Jensen inequality is equivalent to weak superadditivity of f whenever
  a coexistence set exists;
* with dominance plus a coexistence set, Jensen on two-valued X forces
  concavity of f; restricted to nonnegative X it forces concavity on the
  nonnegative axis only.

"for all X" is truncated to exhaustive two-valued grids (the proofs of the
results above only ever need two-valued witnesses) plus randomized dense
draws.  Every reported witness re-evaluates from scratch through the
integral module; reports are deterministic functions of the seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .capacity import Capacity, GroundSet, dominates_dual
from .errors import HypothesisFailure, NotZeroOneValued, TooLarge
from .integral import RandomVariable, ax_bx, gen_choquet, translation_gap
from .utility import (
    Exponential,
    NegSqrtKink,
    PiecewiseLinearKink,
    Power,
    is_concave_on,
    is_weakly_superadditive_on,
)

VIOLATION_TOL = 1e-9
GAP_MATCH_TOL = 1e-12
DEFAULT_LEVELS = (0.0, 0.25, 0.5, 0.75, 1.0)
DEFAULT_VALUE_GRID = tuple(-5.0 + 0.25 * k for k in range(41))


# ---------------------------------------------------------------------------
# function gallery
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AffineMap:
    """``x -> slope * x + intercept`` with nonnegative slope.

    With a positive intercept this is the member of the concave-increasing
    class that detects dominance failures; it is not a utility (it does not
    vanish at 0).
    """

    slope: float
    intercept: float

    def __post_init__(self):
        if self.slope < 0.0:
            raise ValueError("slope must be nonnegative")

    def value(self, x: float) -> float:
        return self.slope * x + self.intercept

    def in_domain(self, x: float) -> bool:
        return True

    def spec(self) -> str:
        return f"affine:{self.slope:g},{self.intercept:g}"


@dataclass(frozen=True)
class PlainMap:
    """Callable wrapper giving plain functions the gallery interface."""

    name: str
    fn: Callable[[float], float]
    lo: float = -math.inf
    hi: float = math.inf

    def value(self, x: float) -> float:
        return self.fn(x)

    def in_domain(self, x: float) -> bool:
        return self.lo < x < self.hi

    def spec(self) -> str:
        return self.name


def concave_increasing_gallery() -> list:
    """Concave increasing maps with f(0) >= 0, including an affine intercept."""
    return [Exponential(1.0), PiecewiseLinearKink(), AffineMap(1.0, 2.0), Power(6.0, 0.5)]


def convex_increasing_gallery() -> list:
    """Strictly convex increasing maps with f(0) = 0 (contrapositive probes)."""
    return [PlainMap("expm1", math.expm1), Power(0.5, 2.0)]


def zero_at_zero_gallery() -> list:
    """Strictly increasing continuous maps with f(0) = 0, mixed shapes."""
    return [
        Exponential(1.0),
        PiecewiseLinearKink(),
        NegSqrtKink(),
        PlainMap("expm1", math.expm1),
    ]


# ---------------------------------------------------------------------------
# verdicts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    """Outcome of one quantified check.

    ``witness`` re-evaluates to a violation (gap above VIOLATION_TOL)
    whenever ``holds`` is False.
    """

    check: str
    holds: bool
    checked: int
    witness: dict | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.holds


# ---------------------------------------------------------------------------
# capacity enumeration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CapacityEnumerator:
    """Exhaustive stream of monotone tables over a finite level grid."""

    n: int
    levels: tuple[float, ...] = DEFAULT_LEVELS

    def __post_init__(self):
        if self.n not in (2, 3):
            raise TooLarge(f"exhaustive enumeration supports n in {{2, 3}}, got {self.n}")
        levels = tuple(sorted(float(v) for v in set(self.levels)))
        object.__setattr__(self, "levels", levels)
        if levels[0] != 0.0 or levels[-1] != 1.0 or any(not 0.0 <= v <= 1.0 for v in levels):
            raise ValueError("levels must lie in [0, 1] and include 0 and 1")

    def __iter__(self) -> Iterator[Capacity]:
        return enumerate_capacities(self.n, self.levels)

    def count(self) -> int:
        return sum(1 for _ in self)


def enumerate_capacities(n: int, levels: Sequence[float] = DEFAULT_LEVELS) -> Iterator[Capacity]:
    """Yield every monotone normalized table over the level grid exactly once.

    Masks are filled in ascending integer order, which refines subset
    inclusion, so each entry only needs to dominate its already-assigned
    covers from below.
    """
    enum = CapacityEnumerator(n, tuple(levels))
    ground = GroundSet(enum.n)
    size = ground.size
    table = [0.0] * size
    table[size - 1] = 1.0

    def fill(mask: int) -> Iterator[Capacity]:
        if mask == size - 1:
            yield Capacity(ground, tuple(table))
            return
        lb = 0.0
        for i in range(enum.n):
            if mask >> i & 1:
                lb = max(lb, table[mask ^ (1 << i)])
        for level in enum.levels:
            if level >= lb:
                table[mask] = level
                yield from fill(mask + 1)
        table[mask] = 0.0

    yield from fill(1)


# ---------------------------------------------------------------------------
# scans
# ---------------------------------------------------------------------------


def _canonical_splits(ground: GroundSet) -> list[int]:
    """Proper nonempty subsets containing element 0 (value grids cover both orders)."""
    return [b for b in range(1, ground.full) if b & 1]


def two_point_variables(
    ground: GroundSet, values: Sequence[float] = DEFAULT_VALUE_GRID
) -> Iterator[RandomVariable]:
    """All variables taking value s on B and t off B, over a value grid."""
    for b_set in _canonical_splits(ground):
        for s in values:
            for t in values:
                yield RandomVariable(
                    ground, tuple(s if b_set >> i & 1 else t for i in range(ground.n))
                )


def jensen_gap(mu: Capacity, nu: Capacity, f, x: RandomVariable) -> float:
    """``C(f(X)) - f(C(X))``; positive means the Jensen inequality fails."""
    lhs = gen_choquet(mu, nu, x.map(f.value))
    return lhs - f.value(gen_choquet(mu, nu, x))


def _scan_two_point(
    mu: Capacity,
    nu: Capacity,
    f,
    values: Sequence[float],
    tol: float = VIOLATION_TOL,
) -> tuple[dict | None, int]:
    """First Jensen violation over the two-valued grid, plus the scan count."""
    checked = 0
    for x in two_point_variables(mu.ground, values):
        if not all(f.in_domain(v) for v in x.values):
            continue
        checked += 1
        gap = jensen_gap(mu, nu, f, x)
        if gap > tol:
            return {"f": f.spec(), "x": list(x.values), "gap": gap}, checked
    return None, checked


def jensen_holds(
    mu: Capacity,
    nu: Capacity,
    f,
    xs: Iterable[RandomVariable],
    tol: float = VIOLATION_TOL,
) -> Verdict:
    """Check ``C(f(X)) <= f(C(X))`` over supplied variables."""
    checked = 0
    for x in xs:
        if not all(f.in_domain(v) for v in x.values):
            continue
        checked += 1
        gap = jensen_gap(mu, nu, f, x)
        if gap > tol:
            return Verdict(
                "jensen", False, checked, {"f": f.spec(), "x": list(x.values), "gap": gap}
            )
    return Verdict("jensen", True, checked)


@dataclass(frozen=True)
class JensenCounterexample:
    """Constructed violation for a pair failing conjugate dominance.

    ``x`` is -1 on the complement of the worst set, ``f`` adds 2; the
    realized violation of ``C(f(X)) <= f(C(X))`` reproduces the dominance
    gap exactly.
    """

    x: RandomVariable
    f: AffineMap
    gap: float
    dominance_gap: float
    worst_set: int


def jensen_counterexample(mu: Capacity, nu: Capacity) -> JensenCounterexample | None:
    """Build and verify the violation witness, or None when dominance holds."""
    dom = dominates_dual(mu, nu)
    if dom.holds:
        return None
    ground = mu.ground
    a_set = dom.worst_set
    x = RandomVariable(
        ground, tuple(0.0 if a_set >> i & 1 else -1.0 for i in range(ground.n))
    )
    f = AffineMap(1.0, 2.0)
    realized = jensen_gap(mu, nu, f, x)
    return JensenCounterexample(x, f, realized, dom.gap, a_set)


def integral_property_checks(
    mu: Capacity,
    nu: Capacity,
    samples: int = 50,
    seed: int = 0,
    tol: float = VIOLATION_TOL,
) -> dict[str, Verdict]:
    """Randomized checks of the four structural integral properties.

    Tail-convention equality is asserted exactly; pointwise monotonicity,
    positive homogeneity (with the capacity swap at negative scale) and the
    translation identity at ``tol``.
    """
    rng = np.random.default_rng(seed)
    n = mu.ground.n
    out: dict[str, Verdict] = {}

    bad = None
    for _ in range(samples):
        x = RandomVariable(mu.ground, tuple(rng.uniform(-10, 10, n)))
        a = gen_choquet(mu, nu, x, strict_tails=True)
        b = gen_choquet(mu, nu, x, strict_tails=False)
        if a != b:
            bad = {"x": list(x.values), "gap": abs(a - b)}
            break
    out["tail-conventions"] = Verdict("tail conventions agree", bad is None, samples, bad)

    bad = None
    for _ in range(samples):
        x = RandomVariable(mu.ground, tuple(rng.uniform(-10, 10, n)))
        y = RandomVariable(mu.ground, tuple(v + d for v, d in zip(x.values, rng.uniform(0, 5, n))))
        gap = gen_choquet(mu, nu, x) - gen_choquet(mu, nu, y)
        if gap > tol:
            bad = {"x": list(x.values), "y": list(y.values), "gap": gap}
            break
    out["monotonicity"] = Verdict("pointwise monotonicity", bad is None, samples, bad)

    bad = None
    for _ in range(samples):
        x = RandomVariable(mu.ground, tuple(rng.uniform(-10, 10, n)))
        b = float(rng.uniform(-3, 3))
        lhs = gen_choquet(mu, nu, x * b)
        rhs = b * (gen_choquet(mu, nu, x) if b > 0 else gen_choquet(nu, mu, x))
        if abs(lhs - rhs) > tol:
            bad = {"x": list(x.values), "b": b, "gap": abs(lhs - rhs)}
            break
    out["homogeneity"] = Verdict("positive homogeneity with swap", bad is None, samples, bad)

    bad = None
    for _ in range(samples):
        x = RandomVariable(mu.ground, tuple(rng.uniform(-10, 10, n)))
        a = float(rng.uniform(-10, 10))
        tg = translation_gap(mu, nu, x, a)
        if abs(tg.lhs - tg.correction) > tol:
            bad = {"x": list(x.values), "a": a, "gap": abs(tg.lhs - tg.correction)}
            break
    out["translation"] = Verdict("translation identity", bad is None, samples, bad)
    return out


def _coexistence_levels(mu: Capacity, nu: Capacity) -> tuple[float, float, int] | None:
    """First set B with ``mu(B) > 0`` and ``nu(B^c) > 0``; returns (p, q, B)."""
    full = mu.ground.full
    for b in range(1, full):
        p, q = mu.table[b], nu.table[full ^ b]
        if p > 1e-12 and q > 1e-12:
            return p, q, b
    return None


def _coexistence_one(mu: Capacity, nu: Capacity) -> int | None:
    full = mu.ground.full
    for b in range(1, full):
        if mu.table[b] >= 1.0 - 1e-12 and nu.table[full ^ b] >= 1.0 - 1e-12:
            return b
    return None


def zero_one_collapse_check(
    mu: Capacity,
    nu: Capacity,
    f,
    values: Sequence[float] = DEFAULT_VALUE_GRID,
    seed: int = 0,
) -> Verdict:
    """Collapse identity and weak-superadditivity equivalence for {0,1} pairs.

    Asserts ``C(f(X)) == f(a_X) + f(b_X)`` bit-for-bit over the two-valued
    grid plus random dense draws, then checks: with a coexistence set
    (both capacities at 1), Jensen over the grid holds iff f is weakly
    superadditive on it; without one, Jensen holds unconditionally.
    """
    if not mu.is_zero_one_valued() or not nu.is_zero_one_valued():
        raise NotZeroOneValued("collapse identity needs {0,1}-valued capacities")
    rng = np.random.default_rng(seed)
    ground = mu.ground
    checked = 0

    dense = [
        RandomVariable(ground, tuple(rng.uniform(min(values), max(values), ground.n)))
        for _ in range(25)
    ]
    for x in list(two_point_variables(ground, values))[:: max(1, len(values) // 8)] + dense:
        if not all(f.in_domain(v) for v in x.values):
            continue
        a_x, b_x = ax_bx(mu, nu, x)
        lhs = gen_choquet(mu, nu, x.map(f.value))
        rhs = f.value(a_x) + f.value(b_x)
        checked += 1
        if lhs != rhs:
            return Verdict(
                "collapse identity",
                False,
                checked,
                {"f": f.spec(), "x": list(x.values), "lhs": lhs, "rhs": rhs},
            )

    violation, scanned = _scan_two_point(mu, nu, f, values)
    checked += scanned
    if _coexistence_one(mu, nu) is not None:
        in_dom = [v for v in values if f.in_domain(v)]
        # same tolerance on both sides so the equivalence is grid-exact
        ws = is_weakly_superadditive_on(f, in_dom, tol=VIOLATION_TOL)
        consistent = ws.holds == (violation is None)
        return Verdict(
            "collapse equivalence",
            consistent,
            checked,
            None if consistent else {"f": f.spec(), "ws": ws.holds, "violation": violation},
            detail="coexistence set present",
        )
    consistent = violation is None
    return Verdict(
        "collapse unconditional",
        consistent,
        checked,
        violation,
        detail="no coexistence set",
    )


def two_valued_concavity_probe(
    mu: Capacity,
    nu: Capacity,
    f,
    values: Sequence[float] = DEFAULT_VALUE_GRID,
) -> Verdict:
    """Two-valued Jensen scan against grid concavity, under the hypotheses.

    Requires dominance and a coexistence set (both capacities positive);
    the scan also cross-checks the integral against the closed two-valued
    mixture forms it must reduce to.
    """
    if not dominates_dual(mu, nu).holds:
        raise HypothesisFailure("conjugate dominance fails")
    coex = _coexistence_levels(mu, nu)
    if coex is None:
        raise HypothesisFailure("no set with mu(B) > 0 and nu(B^c) > 0")

    ground = mu.ground
    full = ground.full
    checked = 0
    violation = None
    for b_set in _canonical_splits(ground):
        for variant in (b_set, full ^ b_set):
            p, q = mu.table[variant], nu.table[full ^ variant]
            for alpha in values:
                for beta in values:
                    if alpha >= beta:
                        continue
                    if not (f.in_domain(alpha) and f.in_domain(beta)):
                        continue
                    x = RandomVariable(
                        ground,
                        tuple(beta if variant >> i & 1 else alpha for i in range(ground.n)),
                    )
                    m = gen_choquet(mu, nu, x)
                    # closed two-valued mixture forms
                    if alpha >= 0.0:
                        expect = alpha * (1 - p) + beta * p
                    elif beta <= 0.0:
                        expect = alpha * q + beta * (1 - q)
                    else:
                        expect = alpha * q + beta * p
                    if abs(m - expect) > 1e-9:
                        return Verdict(
                            "two-valued mixture form",
                            False,
                            checked,
                            {"x": list(x.values), "integral": m, "expected": expect},
                        )
                    checked += 1
                    gap = gen_choquet(mu, nu, x.map(f.value)) - f.value(m)
                    if gap > VIOLATION_TOL and violation is None:
                        violation = {"f": f.spec(), "x": list(x.values), "gap": gap}
    in_dom = [v for v in values if f.in_domain(v)]
    concave = is_concave_on(f, in_dom, tol=VIOLATION_TOL)
    consistent = concave.holds == (violation is None)
    return Verdict(
        "two-valued concavity probe",
        consistent,
        checked,
        None if consistent else {"f": f.spec(), "concave": concave.holds, "violation": violation},
        detail=f"concave={concave.holds}, violation={'none' if violation is None else 'found'}",
    )


def nonnegative_axis_check(
    mu: Capacity,
    nu: Capacity,
    f,
    values: Sequence[float] | None = None,
) -> Verdict:
    """Nonnegative-variable Jensen scan against concavity on the right axis.

    For {0,1}-valued mu the inequality must hold for every increasing f;
    otherwise it must hold iff f is concave on the nonnegative grid.
    """
    if values is None:
        values = tuple(0.25 * k for k in range(21))
    if any(v < 0.0 for v in values):
        raise ValueError("value grid must be nonnegative")
    violation, checked = _scan_two_point(mu, nu, f, values)
    if mu.is_zero_one_valued():
        return Verdict(
            "nonnegative-axis zero-one",
            violation is None,
            checked,
            violation,
            detail="{0,1}-valued gains capacity: unconditional",
        )
    in_dom = [v for v in values if f.in_domain(v)]
    concave = is_concave_on(f, in_dom, tol=VIOLATION_TOL)
    consistent = concave.holds == (violation is None)
    return Verdict(
        "nonnegative-axis probe",
        consistent,
        checked,
        None if consistent else {"f": f.spec(), "concave": concave.holds, "violation": violation},
        detail=f"concave on x>=0: {concave.holds}",
    )


# ---------------------------------------------------------------------------
# full sweep
# ---------------------------------------------------------------------------


@dataclass
class SweepReport:
    """Classification and verdicts for every enumerated capacity pair."""

    n: int
    levels: tuple[float, ...]
    seed: int
    capacity_count: int = 0
    pair_count: int = 0
    class_counts: dict = field(default_factory=dict)
    verdict_counts: dict = field(default_factory=dict)
    unexpected: list = field(default_factory=list)
    counterexamples: int = 0

    @property
    def clean(self) -> bool:
        return not self.unexpected

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "levels": list(self.levels),
            "seed": self.seed,
            "capacity_count": self.capacity_count,
            "pair_count": self.pair_count,
            "class_counts": {k: self.class_counts[k] for k in sorted(self.class_counts)},
            "verdict_counts": {k: self.verdict_counts[k] for k in sorted(self.verdict_counts)},
            "unexpected": self.unexpected,
            "clean": self.clean,
        }

    def to_text(self) -> str:
        lines = [
            f"sweep n={self.n} levels={list(self.levels)} seed={self.seed}",
            f"capacities: {self.capacity_count}  pairs: {self.pair_count}",
            "classification:",
        ]
        for k in sorted(self.class_counts):
            lines.append(f"  {k}: {self.class_counts[k]}")
        lines.append("verdicts:")
        for k in sorted(self.verdict_counts):
            ok, total = self.verdict_counts[k]
            lines.append(f"  {k}: {ok}/{total} as expected")
        lines.append(f"constructed counterexamples verified: {self.counterexamples}")
        lines.append("unexpected verdicts: " + (str(len(self.unexpected)) if self.unexpected else "none"))
        for item in self.unexpected:
            lines.append(f"  !! {item}")
        return "\n".join(lines)


def _bump(report: SweepReport, key: str, ok: bool):
    good, total = report.verdict_counts.get(key, (0, 0))
    report.verdict_counts[key] = (good + (1 if ok else 0), total + 1)


def run_full_report(
    n: int = 2,
    levels: Sequence[float] = DEFAULT_LEVELS,
    seed: int = 42,
    values: Sequence[float] = DEFAULT_VALUE_GRID,
    property_samples: int = 12,
    theorems: Sequence[str] = ("lemma", "1", "2", "3", "4"),
) -> SweepReport:
    """Sweep all enumerated pairs, run the applicable checks, collect verdicts.

    Anything contradicting a theorem lands in ``report.unexpected``; a clean
    report has none.  Deterministic for fixed arguments.
    """
    caps = list(enumerate_capacities(n, levels))
    report = SweepReport(n=n, levels=tuple(sorted(set(float(v) for v in levels))), seed=seed)
    report.capacity_count = len(caps)
    theorems = tuple(theorems)

    concave_gallery = concave_increasing_gallery()
    mixed_gallery = zero_at_zero_gallery()
    concavity_probe_gallery = [Exponential(1.0), PiecewiseLinearKink(), PlainMap("expm1", math.expm1), Power(0.5, 2.0)]
    axis_gallery = [Exponential(1.0), Power(0.0, 2.0), Power(0.0, 0.5)]
    nonneg_values = tuple(0.25 * k for k in range(21))
    probe_values = tuple(-3.0 + 0.5 * k for k in range(13))

    for mu in caps:
        for nu in caps:
            report.pair_count += 1
            dom = dominates_dual(mu, nu)
            zero_one = mu.is_zero_one_valued() and nu.is_zero_one_valued()
            coex = _coexistence_levels(mu, nu) is not None
            key = (
                f"dominant={dom.holds}",
                f"zero_one={zero_one}",
                f"coexistence={coex}",
            )
            ck = ", ".join(key)
            report.class_counts[ck] = report.class_counts.get(ck, 0) + 1

            if "lemma" in theorems:
                for name, verdict in integral_property_checks(
                    mu, nu, samples=property_samples, seed=seed
                ).items():
                    _bump(report, f"property {name}", verdict.holds)
                    if not verdict.holds:
                        report.unexpected.append(
                            {"check": f"property {name}", "mu": list(mu.table), "nu": list(nu.table), "witness": verdict.witness}
                        )

            if "1" in theorems:
                if dom.holds:
                    for f in concave_gallery:
                        violation, _ = _scan_two_point(mu, nu, f, values)
                        _bump(report, "jensen forward", violation is None)
                        if violation is not None:
                            report.unexpected.append(
                                {"check": "jensen forward", "mu": list(mu.table), "nu": list(nu.table), "witness": violation}
                            )
                else:
                    wit = jensen_counterexample(mu, nu)
                    ok = (
                        wit is not None
                        and wit.gap > VIOLATION_TOL
                        and abs(wit.gap - wit.dominance_gap) <= GAP_MATCH_TOL
                    )
                    _bump(report, "jensen converse", ok)
                    report.counterexamples += 1 if ok else 0
                    if not ok:
                        report.unexpected.append(
                            {
                                "check": "jensen converse",
                                "mu": list(mu.table),
                                "nu": list(nu.table),
                                "witness": None
                                if wit is None
                                else {"gap": wit.gap, "dominance_gap": wit.dominance_gap},
                            }
                        )

            if "2" in theorems and zero_one:
                for f in mixed_gallery:
                    verdict = zero_one_collapse_check(mu, nu, f, probe_values, seed=seed)
                    _bump(report, "collapse", verdict.holds)
                    if not verdict.holds:
                        report.unexpected.append(
                            {"check": "collapse", "mu": list(mu.table), "nu": list(nu.table), "witness": verdict.witness}
                        )

            if "3" in theorems and dom.holds and coex:
                for f in concavity_probe_gallery:
                    verdict = two_valued_concavity_probe(mu, nu, f, probe_values)
                    _bump(report, "two-valued concavity", verdict.holds)
                    if not verdict.holds:
                        report.unexpected.append(
                            {"check": "two-valued concavity", "mu": list(mu.table), "nu": list(nu.table), "witness": verdict.witness}
                        )

            if "4" in theorems:
                for f in axis_gallery:
                    verdict = nonnegative_axis_check(mu, nu, f, nonneg_values)
                    _bump(report, "nonnegative axis", verdict.holds)
                    if not verdict.holds:
                        report.unexpected.append(
                            {"check": "nonnegative axis", "mu": list(mu.table), "nu": list(nu.table), "witness": verdict.witness}
                        )

    return report
