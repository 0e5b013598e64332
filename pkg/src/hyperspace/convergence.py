"""Sequence convergence checkers for four modes of set convergence.

"Eventually" is only observable up to a horizon ``H``: a condition holds
eventually when it holds for every ``n`` in ``[n0, H]`` for some ``n0 <= H``.
Verdicts report ``n0`` as ``stable_from``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bornology import ProbeFamily
from .hyperdist import _dsa
from .metric import GroundSpace, _metric
from .sets import (
    FinitePoints,
    Interval,
    LineThroughOrigin,
    ProbeSet,
    _contains,
    _distance,
    below,
    distance_to_set,
    sup_deviation,
)
from .verdict import Outcome, Verdict, Witness

# ---------------------------------------------------------------------------
# Set sequences
# ---------------------------------------------------------------------------


class SetSequence:
    """A rule ``n -> A_n`` for ``n = 1, 2, ...``."""

    label = "sequence"

    def __call__(self, n: int):
        raise NotImplementedError

    def distances(self, space: GroundSpace, x, horizon: int) -> np.ndarray:
        """``d(x, A_n)`` for ``n = 1..horizon``."""
        return np.array([_distance(space, x, self(n)) for n in range(1, horizon + 1)])


@dataclass(frozen=True)
class LinesThroughOrigin(SetSequence):
    """``A_n`` is the line ``y = x / n``."""

    label = "lines y=x/n"

    def __call__(self, n):
        return LineThroughOrigin(1.0 / n)


@dataclass(frozen=True)
class GrowingIntervals(SetSequence):
    """``A_n = [-n, n]``."""

    label = "[-n,n]"

    def __call__(self, n):
        return Interval(-float(n), float(n))


@dataclass(frozen=True)
class DensePrefix(SetSequence):
    """``A_n`` is the set of the first ``n`` points of a fixed list."""

    points: tuple
    label = "dense prefix"

    def __call__(self, n):
        if n > len(self.points):
            raise IndexError(f"prefix of length {n} requested from {len(self.points)} points")
        return FinitePoints.of(self.points[:n])

    def distances(self, space, x, horizon):
        if horizon > len(self.points):
            raise IndexError(f"horizon {horizon} exceeds the {len(self.points)} available points")
        d = np.array([_metric(space, x, p) for p in self.points[:horizon]])
        return np.minimum.accumulate(d)


@dataclass(frozen=True)
class Constant(SetSequence):
    value: object
    label = "constant"

    def __call__(self, n):
        return self.value


@dataclass(frozen=True)
class Singletons(SetSequence):
    """``A_n = {x_n}`` for a fixed list of points."""

    points: tuple
    label = "singletons"

    def __call__(self, n):
        return FinitePoints((self.points[n - 1],))


def _eventually(ok: Sequence[bool]) -> int | None:
    """Smallest ``n0`` with ``ok[n]`` for all ``n`` in ``[n0, H]`` (1-based), or None."""
    last_bad = 0
    for n, good in enumerate(ok, start=1):
        if not good:
            last_bad = n
    return None if last_bad == len(ok) else last_bad + 1


def _check_common(eps: float, horizon: int) -> None:
    if not eps > 0:
        raise ValueError("eps must be positive")
    if horizon < 1:
        raise ValueError("horizon must be at least 1")


# ---------------------------------------------------------------------------
# Checkers
# ---------------------------------------------------------------------------


def wijsman_check(space: GroundSpace, seq: SetSequence, A, test_points: ProbeSet,
                  eps: float, horizon: int) -> Verdict:
    """Pointwise convergence of distance functionals at the test points."""
    _check_common(eps, horizon)
    test_points.check(space)
    resolution = {"eps": eps, "horizon": horizon, "test_points": len(test_points.sample)}
    ok = [True] * horizon
    offender: list = [None] * horizon
    for x in test_points.sample:
        gap = np.abs(seq.distances(space, x, horizon) - distance_to_set(space, x, A))
        for i, g in enumerate(gap):
            if ok[i] and not below(space, float(g), eps):
                ok[i] = False
                offender[i] = (x, float(g))
    n0 = _eventually(ok)
    details = {"stable_from": n0, "offending_indices": horizon - sum(ok)}
    if n0 is None:
        x, g = offender[-1]
        return Verdict(Outcome.FAIL, Witness(x, g, index=horizon), resolution, details)
    return Verdict(Outcome.PASS, resolution=resolution, details=details)


def _worst_sample_point(space, S: ProbeSet, A, C):
    best = (S.sample[0], -1.0)
    for x in S.sample:
        d = abs(_distance(space, x, A) - _distance(space, x, C))
        if d > best[1]:
            best = (x, d)
    return best


def tau_sd_check(space: GroundSpace, seq: SetSequence, A, F: ProbeFamily,
                 eps: float, horizon: int) -> Verdict:
    """Uniform convergence of distance functionals on every family member."""
    _check_common(eps, horizon)
    F.check(space)
    resolution = {"eps": eps, "horizon": horizon, "members": len(F)}
    stable = {}
    devs_by_member: list[list[float]] = [[] for _ in F.members]
    for n in range(1, horizon + 1):
        An = seq(n)
        for devs, S in zip(devs_by_member, F.members):
            devs.append(sup_deviation(space, S, An, A, cap=eps)[0])
    for devs, S in zip(devs_by_member, F.members):
        n0 = _eventually([below(space, v, eps) for v in devs])
        stable[S.label] = n0
        if n0 is None:
            x, d = _worst_sample_point(space, S, seq(horizon), A)
            # an oracle sup can exceed every sampled deviation; report the sup
            w = Witness(x, max(d, devs[-1]), index=horizon, member=S.label)
            return Verdict(Outcome.FAIL, w, resolution, {"stable_from": stable})
    return Verdict(Outcome.PASS, resolution=resolution, details={"stable_from": stable})


def _inclusion_witness(space, points, target, eps):
    for x in points:
        d = _distance(space, x, target)
        if not below(space, d, eps):
            return x, d
    return None


def s_convergence_check(space: GroundSpace, seq: SetSequence, A, F: ProbeFamily,
                        eps: float, horizon: int) -> Verdict:
    """Two-sided enlargement inclusions on every family member, eventually.

    ``A_n ∩ S ⊆ B_d(A, eps)`` and ``A ∩ S ⊆ B_d(A_n, eps)`` are tested on the
    probe points of ``S`` that belong to ``A_n`` and to ``A`` respectively.
    Empty intersections are included vacuously.
    """
    _check_common(eps, horizon)
    F.check(space)
    resolution = {"eps": eps, "horizon": horizon, "members": len(F)}
    stable, traces = {}, {}
    first_failure = None
    in_limit = [[x for x in S.sample if _contains(space, x, A)] for S in F.members]
    trace_by_member: list[list] = [[] for _ in F.members]
    for n in range(1, horizon + 1):
        An = seq(n)
        for trace, S, lim in zip(trace_by_member, F.members, in_limit):
            w = None
            hit = _inclusion_witness(space, (x for x in S.sample if _contains(space, x, An)), A, eps)
            if hit is not None:
                w = Witness(hit[0], hit[1], index=n, member=S.label, side="An∩S ⊆ B(A,eps)")
            else:
                hit = _inclusion_witness(space, lim, An, eps)
                if hit is not None:
                    w = Witness(hit[0], hit[1], index=n, member=S.label, side="A∩S ⊆ B(An,eps)")
            trace.append(w)
    for trace, S in zip(trace_by_member, F.members):
        n0 = _eventually([w is None for w in trace])
        stable[S.label] = n0
        traces[S.label] = tuple(trace)
        if n0 is None and first_failure is None:
            first_failure = trace[-1]
    details = {"stable_from": stable, "trace": traces}
    if first_failure is not None:
        return Verdict(Outcome.FAIL, first_failure, resolution, details)
    return Verdict(Outcome.PASS, resolution=resolution, details=details)


def dsa_convergence_check(space: GroundSpace, seq: SetSequence, A, F: ProbeFamily,
                          eps: float, horizon: int, depth: int) -> Verdict:
    """Convergence in the series metric, compared through certified intervals.

    Index ``n`` is good when the enclosure of ``d(A_n, A)`` lies surely below
    ``eps``.  The verdict follows the status at the horizon: surely below
    gives pass, surely above gives fail, anything else is undecided.
    """
    _check_common(eps, horizon)
    F.check(space)
    resolution = {"eps": eps, "horizon": horizon, "depth": depth, "members": len(F)}
    values = tuple(_dsa(space, F, seq(n), A, depth) for n in range(1, horizon + 1))
    status = [v.compare(eps) for v in values]
    details = {
        "values": values,
        "stable_from": _eventually([s == "below" for s in status]),
        "certified": all(v.exact for v in values),
    }
    last = values[-1]
    if status[-1] == "below":
        return Verdict(Outcome.PASS, resolution=resolution, details=details)
    if status[-1] == "above":
        return Verdict(Outcome.FAIL, Witness(None, last.lo, index=horizon), resolution, details)
    return Verdict(Outcome.UNDECIDED, Witness(None, last.lo, index=horizon), resolution, details)


def singleton_embedding_check(space: GroundSpace, points: Sequence, limit, F: ProbeFamily,
                              eps: float, horizon: int, depth: int) -> Verdict:
    """Compare ``x_n -> x`` in ``X`` with ``{x_n} -> {x}`` in the series metric.

    Passes when both sub-verdicts agree at the same resolution.
    """
    _check_common(eps, horizon)
    points = tuple(points[:horizon])
    if len(points) < horizon:
        raise ValueError(f"need {horizon} points, got {len(points)}")
    space.check_point(limit)
    set_verdict = dsa_convergence_check(space, Singletons(points), FinitePoints((limit,)), F, eps, horizon, depth)
    gaps = [_metric(space, x, limit) for x in points]
    n0 = _eventually([below(space, g, eps) for g in gaps])
    if n0 is None:
        point_verdict = Verdict(Outcome.FAIL, Witness(points[-1], gaps[-1], index=horizon),
                                {"eps": eps, "horizon": horizon})
    else:
        point_verdict = Verdict(Outcome.PASS, resolution={"eps": eps, "horizon": horizon},
                                details={"stable_from": n0})
    details = {"set_verdict": set_verdict, "point_verdict": point_verdict}
    resolution = {"eps": eps, "horizon": horizon, "depth": depth}
    if set_verdict.outcome is point_verdict.outcome:
        return Verdict(Outcome.PASS, resolution=resolution, details=details)
    return Verdict(Outcome.FAIL, Witness(points[-1], gaps[-1], index=horizon), resolution, details)


# ---------------------------------------------------------------------------
# Mode comparison
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ModeComparison:
    dsa: Verdict
    wijsman: Verdict
    tau: Verdict
    s_convergence: Verdict

    @property
    def violations(self) -> tuple[str, ...]:
        out = []
        if self.dsa.passed and not self.wijsman.passed:
            out.append("dsa-pass but wijsman-fail")
        if self.tau.passed and not self.s_convergence.passed:
            out.append("tau-pass but s-convergence-fail")
        return tuple(out)


#: Wijsman tolerance relative to the series-metric tolerance.  A series value
#: below eps bounds the sup over member i by 2^i * eps, and test points come
#: from the first two members.
WIJSMAN_SLACK = 4.0


def compare_modes(space: GroundSpace, seq: SetSequence, A, F: ProbeFamily, eps: float,
                  horizon: int, depth: int, test_points: ProbeSet | None = None) -> ModeComparison:
    """Run all four checkers on one instance at matched resolution."""
    if WIJSMAN_SLACK * eps >= 1.0:
        raise ValueError("mode comparison needs 4*eps < 1")
    if test_points is None:
        pts = dict.fromkeys(x for S in F.members[:2] for x in S.sample)
        test_points = ProbeSet("S1∪S2", tuple(pts))
    return ModeComparison(
        dsa=dsa_convergence_check(space, seq, A, F, eps, horizon, depth),
        wijsman=wijsman_check(space, seq, A, test_points, WIJSMAN_SLACK * eps, horizon),
        tau=tau_sd_check(space, seq, A, F, eps, horizon),
        s_convergence=s_convergence_check(space, seq, A, F, eps, horizon),
    )
