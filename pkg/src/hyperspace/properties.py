"""Randomized property trials shared by the scenario runner and the test suite."""

from __future__ import annotations

import itertools
import math

import numpy as np

from .bornology import ProbeFamily
from .hyperdist import _dsa, hausdorff_distance
from .metric import GroundSpace, MetricRule, PointKind, SparseSeq, _metric
from .sets import FinitePoints, finite_probe
from .verdict import Outcome, Verdict, Witness

TRIANGLE_TOL = 1e-12

# small integer directions; dyadic multiples of one of them stay exactly collinear
_DIRECTIONS = [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, -2.0), (3.0, 1.0), (-2.0, 5.0)]


def random_point(space: GroundSpace, rng: np.random.Generator, scale: float = 10.0):
    if space.kind is PointKind.SCALAR:
        if rng.random() < 0.2:
            return float(rng.integers(-3, 4))
        return float(rng.uniform(-scale, scale))
    if space.kind is PointKind.VECTOR:
        if space.dim == 2 and rng.random() < 0.5:
            u = _DIRECTIONS[rng.integers(len(_DIRECTIONS))]
            r = int(rng.integers(-64, 65)) / 8.0
            return (r * u[0] + 0.0, r * u[1] + 0.0)
        return tuple(float(v) for v in rng.uniform(-scale, scale, size=space.dim))
    size = int(rng.integers(0, 5))
    idx = rng.choice(np.arange(1, 9), size=size, replace=False)
    return SparseSeq({int(i): float(rng.uniform(-scale, scale)) for i in idx})


def random_triples(space: GroundSpace, rng: np.random.Generator, count: int) -> list[tuple]:
    """Random point triples; about one in five reuses a point to exercise equality."""
    out = []
    for _ in range(count):
        t = [random_point(space, rng) for _ in range(3)]
        if rng.random() < 0.2:
            i, j = rng.choice(3, size=2, replace=False)
            t[j] = t[i]
        out.append(tuple(t))
    return out


def metric_axiom_trials(space: GroundSpace, triples, tol: float = TRIANGLE_TOL) -> Verdict:
    """Check the metric axioms on every triple; ``tol`` slackens the triangle inequality.

    The 0-1 metric is checked with no slack.
    """
    if space.metric is MetricRule.ZERO_ONE:
        tol = 0.0
    worst = 0.0
    for x, y, z in triples:
        for a, b in ((x, y), (y, z), (x, z)):
            d = _metric(space, a, b)
            if d < 0 or (d == 0) != (a == b) or d != _metric(space, b, a):
                return Verdict(Outcome.FAIL, Witness((a, b), d), details={"axiom": "identity/symmetry"})
        excess = _metric(space, x, z) - _metric(space, x, y) - _metric(space, y, z)
        worst = max(worst, excess)
        if excess > tol:
            return Verdict(Outcome.FAIL, Witness((x, y, z), excess), details={"axiom": "triangle"})
    return Verdict(Outcome.PASS, resolution={"triples": len(triples), "tol": tol},
                   details={"worst_triangle_excess": worst})


def finite_ground(rng: np.random.Generator, size: int = 50, scale: float = 2.0) -> list[tuple]:
    """A random finite subset of the plane, used as a whole ground space."""
    pts = dict.fromkeys(tuple(float(v) for v in p) for p in rng.uniform(0.0, scale, size=(size, 2)))
    return list(pts)


def random_subset(ground: list, rng: np.random.Generator) -> FinitePoints:
    size = int(rng.integers(1, len(ground) // 2 + 1))
    idx = sorted(rng.choice(len(ground), size=size, replace=False))
    return FinitePoints(tuple(ground[i] for i in idx))


def singleton_family(ground: list) -> ProbeFamily:
    return ProbeFamily("singletons", tuple(finite_probe(f"{{x{i}}}", [p]) for i, p in enumerate(ground, 1)),
                       complete=True)


def dsa_axiom_trials(space: GroundSpace, ground: list, family: ProbeFamily, rng: np.random.Generator,
                     trials: int, tol: float = TRIANGLE_TOL) -> Verdict:
    """Metric axioms of the series metric on random subset triples of a finite ground space."""
    worst = 0.0
    for t in range(trials):
        A, B, C = (random_subset(ground, rng) for _ in range(3))
        ab, ba = _dsa(space, family, A, B, len(family)), _dsa(space, family, B, A, len(family))
        bc, ac = _dsa(space, family, B, C, len(family)), _dsa(space, family, A, C, len(family))
        aa = _dsa(space, family, A, A, len(family))
        for v in (ab, bc, ac, aa):
            if v.lo != v.hi:
                return Verdict(Outcome.FAIL, Witness(t, v.hi - v.lo), details={"axiom": "exactness"})
        if aa.lo != 0.0 or (ab.lo == 0.0) != (A.members == B.members):
            return Verdict(Outcome.FAIL, Witness(t, ab.lo), details={"axiom": "identity"})
        if ab.lo != ba.lo:
            return Verdict(Outcome.FAIL, Witness(t, ab.lo - ba.lo), details={"axiom": "symmetry"})
        excess = ac.lo - ab.lo - bc.lo
        worst = max(worst, excess)
        if excess > tol:
            return Verdict(Outcome.FAIL, Witness(t, excess), details={"axiom": "triangle"})
    return Verdict(Outcome.PASS, resolution={"trials": trials, "ground": len(ground)},
                   details={"worst_triangle_excess": worst})


def max_excess_hausdorff(space: GroundSpace, A: FinitePoints, C: FinitePoints) -> float:
    """``max(sup_{a in A} d(a, C), sup_{c in C} d(c, A))`` by brute force."""
    e1 = max(min(_metric(space, a, c) for c in C.points) for a in A.points)
    e2 = max(min(_metric(space, a, c) for a in A.points) for c in C.points)
    return max(e1, e2)


def hausdorff_identity_trials(space: GroundSpace, ground: list, rng: np.random.Generator,
                              trials: int) -> Verdict:
    """Series metric over ``{X}`` against ``min{1, H}/2`` on random subset pairs.

    The identity is required exactly; the brute-force Hausdorff cross-check
    allows rounding at ``TRIANGLE_TOL``.
    """
    whole = finite_probe("X", ground)
    family = ProbeFamily("{X}", (whole,), complete=True)
    for t in range(trials):
        A, C = random_subset(ground, rng), random_subset(ground, rng)
        H = hausdorff_distance(space, A, C, whole)
        v = _dsa(space, family, A, C, 1)
        if v.lo != 0.5 * min(1.0, H) or v.hi != v.lo:
            return Verdict(Outcome.FAIL, Witness(t, v.lo - 0.5 * min(1.0, H)), details={"identity": "half-min"})
        brute = max_excess_hausdorff(space, A, C)
        if not math.isclose(H, brute, rel_tol=0.0, abs_tol=TRIANGLE_TOL):
            return Verdict(Outcome.FAIL, Witness(t, H - brute), details={"identity": "max-excess"})
    return Verdict(Outcome.PASS, resolution={"trials": trials, "ground": len(ground)})


def pairwise_min_distance(space: GroundSpace, points) -> float:
    return min(_metric(space, a, b) for a, b in itertools.combinations(points, 2))


__all__ = [
    "random_point",
    "random_triples",
    "metric_axiom_trials",
    "finite_ground",
    "random_subset",
    "singleton_family",
    "dsa_axiom_trials",
    "max_excess_hausdorff",
    "hausdorff_identity_trials",
    "pairwise_min_distance",
]
