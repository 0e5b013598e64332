"""Closed sets with exact distance functionals, probes, and enlargement tests.

Infinite sets are represented by closed-form variants so that ``d(x, A)`` is
exact.  A :class:`ProbeSet` is the only sampled object: its sampled sups are
lower bounds unless it declares an exact-sup oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Union

import numpy as np

from .metric import GroundSpace, MetricRule, PointKind, _metric, collinear
from .verdict import Outcome, Verdict, Witness

#: Relative margin applied to strict comparisons ``value < eps`` for real-valued metrics.
MARGIN = 1e-9

# Oracle sups below the sampled max by more than this are reported as inconsistent.
_ORACLE_TOL = 1e-9

_NUMPY_MIN_POINTS = 16


class UnsupportedCombination(ValueError):
    """No exact distance rule exists for this (set variant, metric) pair."""


class OracleInconsistency(ArithmeticError):
    """An exact-sup oracle returned less than the max over its own sample."""


# ---------------------------------------------------------------------------
# Closed set variants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FinitePoints:
    points: tuple

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if not self.points:
            raise ValueError("FinitePoints needs at least one point")
        if len(set(self.points)) != len(self.points):
            raise ValueError("FinitePoints must be duplicate-free")

    @classmethod
    def _trusted(cls, points: tuple) -> "FinitePoints":
        # caller guarantees a nonempty, duplicate-free tuple
        obj = object.__new__(cls)
        object.__setattr__(obj, "points", points)
        return obj

    @classmethod
    def of(cls, points: Iterable) -> "FinitePoints":
        """Build from an iterable, dropping repeats but keeping first-seen order."""
        return cls(tuple(dict.fromkeys(points)))

    @cached_property
    def members(self) -> frozenset:
        return frozenset(self.points)

    @cached_property
    def array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=float)


@dataclass(frozen=True)
class Interval:
    """A closed interval, ray or the whole real line (``lo``/``hi`` may be infinite)."""

    lo: float
    hi: float

    def __post_init__(self):
        if math.isnan(self.lo) or math.isnan(self.hi) or self.lo > self.hi:
            raise ValueError(f"invalid interval [{self.lo}, {self.hi}]")


@dataclass(frozen=True)
class LineThroughOrigin:
    """The line ``y = slope * x`` in the plane."""

    slope: float


@dataclass(frozen=True)
class AxisLattice:
    """The set ``{(k, 0) : k = 1, 2, ...}`` in the plane."""


@dataclass(frozen=True)
class WholeSpace:
    pass


@dataclass(frozen=True)
class NormBall:
    """Points whose natural norm is at most ``radius`` (closed ball about the origin)."""

    radius: float

    def __post_init__(self):
        if not self.radius >= 0:
            raise ValueError("ball radius must be nonnegative")


@dataclass(frozen=True)
class UnionOf:
    members: tuple

    def __post_init__(self):
        flat = []
        for m in self.members:
            flat.extend(m.members if isinstance(m, UnionOf) else (m,))
        if not flat:
            raise ValueError("UnionOf needs at least one member")
        object.__setattr__(self, "members", tuple(flat))


ClosedSet = Union[FinitePoints, Interval, LineThroughOrigin, AxisLattice, WholeSpace, NormBall, UnionOf]


def union(*sets) -> ClosedSet:
    """Union of closed sets, merging finite point sets and dropping repeats."""
    flat = []
    for s in sets:
        flat.extend(s.members if isinstance(s, UnionOf) else (s,))
    if any(isinstance(s, WholeSpace) for s in flat):
        return WholeSpace()
    finite = [s for s in flat if isinstance(s, FinitePoints)]
    rest = list(dict.fromkeys(s for s in flat if not isinstance(s, FinitePoints)))
    if len(finite) == 1:
        rest.append(finite[0])
    elif finite:
        rest.append(FinitePoints.of(p for s in finite for p in s.points))
    return rest[0] if len(rest) == 1 else UnionOf(tuple(rest))


def _check_variant(space: GroundSpace, A) -> None:
    if isinstance(A, Interval) and space.kind is not PointKind.SCALAR:
        raise UnsupportedCombination("Interval is a subset of the real line")
    if isinstance(A, (LineThroughOrigin, AxisLattice)) and (space.kind is not PointKind.VECTOR or space.dim != 2):
        raise UnsupportedCombination(f"{type(A).__name__} lives in the plane")


# ---------------------------------------------------------------------------
# Membership and distance functionals
# ---------------------------------------------------------------------------


def contains(space: GroundSpace, x, A) -> bool:
    """Exact membership ``x in A``."""
    space.check_point(x)
    _check_variant(space, A)
    return _contains(space, x, A)


def _contains(space: GroundSpace, x, A) -> bool:
    if isinstance(A, FinitePoints):
        return x in A.members
    if isinstance(A, Interval):
        return A.lo <= x <= A.hi
    if isinstance(A, LineThroughOrigin):
        return x[1] == A.slope * x[0]
    if isinstance(A, AxisLattice):
        return x[1] == 0.0 and x[0] >= 1 and float(x[0]).is_integer()
    if isinstance(A, WholeSpace):
        return True
    if isinstance(A, NormBall):
        return space.norm(x) <= A.radius
    if isinstance(A, UnionOf):
        return any(_contains(space, x, m) for m in A.members)
    raise TypeError(f"not a closed set: {A!r}")


def distance_to_set(space: GroundSpace, x, A) -> float:
    """Return ``d(x, A) = inf { d(x, a) : a in A }`` exactly."""
    space.check_point(x)
    _check_variant(space, A)
    return _distance(space, x, A)


def _distance(space: GroundSpace, x, A) -> float:
    rule = space.metric
    if rule is MetricRule.ZERO_ONE:
        return 0.0 if _contains(space, x, A) else 1.0
    if isinstance(A, FinitePoints):
        return _distance_finite(space, x, A)
    if isinstance(A, WholeSpace):
        return 0.0
    if isinstance(A, UnionOf):
        return min(_distance(space, x, m) for m in A.members)
    if isinstance(A, NormBall):
        return max(space.norm(x) - A.radius, 0.0)
    if isinstance(A, Interval) and rule is MetricRule.USUAL_LINE:
        if x < A.lo:
            return A.lo - x
        if x > A.hi:
            return x - A.hi
        return 0.0
    if isinstance(A, LineThroughOrigin):
        if rule is MetricRule.EUCLIDEAN:
            return abs(x[1] - A.slope * x[0]) / math.sqrt(1.0 + A.slope * A.slope)
        if rule is MetricRule.FRENCH_METRO:
            # only points on the ray through x are reachable along a line; the line meets it at 0
            return 0.0 if _contains(space, x, A) else math.hypot(*x)
    if isinstance(A, AxisLattice):
        k = max(1.0, float(round(x[0])))
        if rule is MetricRule.EUCLIDEAN:
            return _metric(space, x, (k, 0.0))
        if rule is MetricRule.FRENCH_METRO:
            if collinear(x, (1.0, 0.0)):
                return abs(x[0] - k)
            return math.hypot(*x) + 1.0
    raise UnsupportedCombination(f"no exact distance rule for {type(A).__name__} under {rule.value!r}")


def _distance_finite(space: GroundSpace, x, A: FinitePoints) -> float:
    rule = space.metric
    if len(A.points) >= _NUMPY_MIN_POINTS:
        if x in A.members:
            return 0.0
        if rule is MetricRule.USUAL_LINE:
            return float(np.min(np.abs(A.array - x)))
        if rule is MetricRule.EUCLIDEAN:
            diff = A.array - np.asarray(x, dtype=float)
            d = float(np.min(np.sqrt(np.sum(diff * diff, axis=1))))
            if d > 0.0:
                return d
    return min(_metric(space, x, a) for a in A.points)


# ---------------------------------------------------------------------------
# Probes and exact-sup oracles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Exhaustive:
    """The sample is the whole set, so sampled sups are exact."""


@dataclass(frozen=True)
class DiscreteIndicator:
    """The probe stands for the interval ``[lo, hi]`` of a line with the 0-1 metric."""

    lo: float
    hi: float


@dataclass(frozen=True)
class PointToLine:
    """The probe stands for the lattice ``{(k, k*slope) : k = 1, 2, ...}`` in the Euclidean plane."""

    slope: float


Oracle = Union[Exhaustive, DiscreteIndicator, PointToLine]


@dataclass(frozen=True)
class ProbeSet:
    """A finite sample standing for a set ``S``.

    ``region`` is the closed set the sample stands for, used where the
    distance *to* ``S`` is needed; it defaults to what the oracle implies, and
    to the sample itself otherwise.  ``parts`` is set for unions of probes,
    whose sups are the max over the parts.
    """

    label: str
    sample: tuple
    exact: Oracle | None = None
    region: object = None
    parts: tuple = field(default=(), repr=False)

    def __post_init__(self):
        object.__setattr__(self, "sample", tuple(self.sample))
        if not self.sample:
            raise ValueError(f"probe {self.label!r} has an empty sample")

    @cached_property
    def closed_set(self):
        if self.region is not None:
            return self.region
        if isinstance(self.exact, DiscreteIndicator):
            return Interval(self.exact.lo, self.exact.hi)
        if isinstance(self.exact, PointToLine) and self.exact.slope == 0.0:
            return AxisLattice()
        return FinitePoints.of(self.sample)

    @property
    def is_exact(self) -> bool:
        if self.parts:
            return all(p.is_exact for p in self.parts)
        return self.exact is not None

    def check(self, space: GroundSpace) -> None:
        for x in self.sample:
            space.check_point(x)


def finite_probe(label: str, points: Iterable) -> ProbeSet:
    """A probe whose sample is the whole (finite) set."""
    return ProbeSet(label, tuple(dict.fromkeys(points)), Exhaustive())


def probe_union(label: str, probes: Iterable[ProbeSet]) -> ProbeSet:
    probes = list(probes)
    if len(probes) == 1:
        p = probes[0]
        return ProbeSet(label, p.sample, p.exact, p.region, p.parts)
    parts = []
    for p in probes:
        parts.extend(p.parts or (p,))
    parts = list(dict.fromkeys(parts))
    sample = tuple(dict.fromkeys(x for p in parts for x in p.sample))
    region = union(*(p.closed_set for p in parts))
    if all(isinstance(p.exact, Exhaustive) for p in parts):
        return ProbeSet(label, sample, Exhaustive(), region)
    return ProbeSet(label, sample, None, region, tuple(parts))


def _breakpoints(A) -> list[float]:
    if A is None or isinstance(A, WholeSpace):
        return []
    if isinstance(A, Interval):
        return [v for v in (A.lo, A.hi) if math.isfinite(v)]
    if isinstance(A, FinitePoints):
        return [float(p) for p in A.points]
    if isinstance(A, NormBall):
        return [-A.radius, A.radius]
    if isinstance(A, UnionOf):
        return [b for m in A.members for b in _breakpoints(m)]
    raise UnsupportedCombination(f"{type(A).__name__} has no indicator breakpoints")


def _indicator_candidates(lo: float, hi: float, A, C) -> list[float]:
    """Points where a 0-1 deviation over ``[lo, hi]`` takes every value it takes.

    Membership in the sets is constant between consecutive breakpoints, so
    the breakpoints together with the gap midpoints exhaust the cases.
    """
    bps = sorted(set(_breakpoints(A) + _breakpoints(C)))
    if not math.isfinite(lo):
        lo = (bps[0] if bps else 0.0) - 1.0
    if not math.isfinite(hi):
        hi = (bps[-1] if bps else 0.0) + 1.0
    cands = sorted({lo, hi, *(b for b in bps if lo <= b <= hi)})
    mids = [(a + b) / 2.0 for a, b in zip(cands, cands[1:])]
    return cands + mids


def _oracle_sup(space: GroundSpace, oracle, A, C) -> float | None:
    """Exact ``sup |d(x,A) - d(x,C)|`` over the set behind the probe, if computable.

    ``C=None`` stands for ``d(x, C) = 0`` (plain excess of the probe over ``A``).
    """
    def dev(x):
        dc = 0.0 if C is None else _distance(space, x, C)
        return abs(_distance(space, x, A) - dc)

    if isinstance(oracle, DiscreteIndicator):
        if space.metric is not MetricRule.ZERO_ONE or space.kind is not PointKind.SCALAR:
            return None
        try:
            cands = _indicator_candidates(oracle.lo, oracle.hi, A, C)
        except UnsupportedCombination:
            return None
        return max(dev(x) for x in cands)
    if isinstance(oracle, PointToLine):
        if space.metric is not MetricRule.EUCLIDEAN or space.dim != 2:
            return None
        homogeneous = (LineThroughOrigin, WholeSpace)
        if not isinstance(A, homogeneous) or not (C is None or isinstance(C, homogeneous)):
            return None
        # both distances scale linearly along the lattice ray
        return math.inf if dev((1.0, oracle.slope)) > 0.0 else 0.0
    return None


def sup_deviation(space: GroundSpace, P: ProbeSet, A, C=None, cap: float | None = None) -> tuple[float, bool]:
    """``(sup_{x in P} |d(x,A) - d(x,C)|, exact)``, saturating at ``cap`` when given.

    ``exact`` is True when the value is the sup over the whole set behind the
    probe rather than a lower bound from its sample.  Sample points are not
    re-validated here; public entry points call :meth:`ProbeSet.check`.
    """
    if P.parts:
        best, exact = 0.0, True
        for part in P.parts:
            v, e = sup_deviation(space, part, A, C, cap)
            best = max(best, v)
            exact = exact and e
            if cap is not None and best >= cap:
                return cap, exact
        return best, exact

    _check_variant(space, A)
    if C is not None:
        _check_variant(space, C)
    oracle_value = None
    if P.exact is not None and not isinstance(P.exact, Exhaustive):
        oracle_value = _oracle_sup(space, P.exact, A, C)
        if oracle_value is not None and cap is not None and oracle_value >= cap:
            return cap, True

    best = 0.0
    for x in P.sample:
        d = _distance(space, x, A)
        if C is not None:
            d = abs(d - _distance(space, x, C))
        if d > best:
            best = d
            if cap is not None and best >= cap and oracle_value is None:
                # a sampled value at the cap already pins min(cap, sup) exactly
                return cap, True

    if oracle_value is None:
        return best, isinstance(P.exact, Exhaustive)
    if oracle_value < best - _ORACLE_TOL:
        raise OracleInconsistency(f"oracle for probe {P.label!r} gives {oracle_value} below sampled {best}")
    return oracle_value, True


def excess(space: GroundSpace, P: ProbeSet, A) -> float:
    """``sup_{x in P} d(x, A)``; the exact sup when the probe has an oracle."""
    P.check(space)
    return sup_deviation(space, P, A)[0]


def below(space: GroundSpace, value: float, eps: float) -> bool:
    """Strict ``value < eps``; real-valued metrics keep a relative :data:`MARGIN` off the boundary."""
    if space.metric is MetricRule.ZERO_ONE:
        return value < eps
    return value < eps * (1.0 - MARGIN)


def inclusion_in_enlargement(space: GroundSpace, P: ProbeSet, C, eps: float) -> Verdict:
    """Decide ``P ⊆ B_d(C, eps) = {x : d(x, C) < eps}`` over the probe's sample."""
    if not eps > 0:
        raise ValueError("eps must be positive")
    resolution = {"eps": eps, "probe": P.label, "points": len(P.sample)}
    for x in P.sample:
        d = distance_to_set(space, x, C)
        if not below(space, d, eps):
            return Verdict(Outcome.FAIL, Witness(x, d, member=P.label), resolution)
    return Verdict(Outcome.PASS, resolution=resolution)
