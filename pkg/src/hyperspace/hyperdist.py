"""Distances between closed sets: uniform deviation over a probe, the
entourage test, the weighted series metric over a countable family with a
certified truncation interval, and its Hausdorff / Attouch-Wets cases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bornology import ProbeFamily
from .metric import GroundSpace, _metric
from .sets import ProbeSet, below, sup_deviation


@dataclass(frozen=True)
class IntervalValue:
    """An enclosure ``[lo, hi]`` of a truncated series.

    ``exact`` is True when every computed term is an exact sup; otherwise
    only ``lo`` is certified and ``hi`` is what the probes can vouch for.
    """

    lo: float
    hi: float
    exact: bool = True

    def __post_init__(self):
        if not 0.0 <= self.lo <= self.hi:
            raise ValueError(f"bad interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, value: float) -> bool:
        return self.lo <= value <= self.hi

    def compare(self, eps: float) -> str:
        """``'below'`` if surely ``< eps``, ``'above'`` if surely ``>= eps``, else ``'undecided'``."""
        if self.hi < eps:
            return "below"
        if self.lo >= eps:
            return "above"
        return "undecided"


def uniform_deviation(space: GroundSpace, P: ProbeSet, A, C, cap: float | None = None) -> float:
    """``sup_{x in P} |d(x,A) - d(x,C)|``, returning ``cap`` once the sup reaches it."""
    P.check(space)
    return sup_deviation(space, P, A, C, cap)[0]


def entourage_test(space: GroundSpace, P: ProbeSet, eps: float, A, C) -> bool:
    """Is ``(A, C)`` in the entourage ``[P, eps]``?"""
    if not eps > 0:
        raise ValueError("eps must be positive")
    return below(space, uniform_deviation(space, P, A, C, cap=eps), eps)


def dsa_terms(space: GroundSpace, F: ProbeFamily, A, C, depth: int) -> list[tuple[float, bool]]:
    """The first ``min(depth, len(F))`` summands ``2^-i min{1, sup_{S_i}|d(.,A) - d(.,C)|}``."""
    if depth < 1:
        raise ValueError("depth must be a positive integer")
    terms = []
    for i, S in enumerate(F.members[:depth], start=1):
        value, exact = sup_deviation(space, S, A, C, cap=1.0)
        terms.append((math.ldexp(min(1.0, value), -i), exact))
    return terms


def dsa(space: GroundSpace, F: ProbeFamily, A, C, depth: int) -> IntervalValue:
    """Enclose the series metric of ``A`` and ``C`` over the family ``F``.

    Every summand past the last computed one is at most ``2^-i``, so the tail
    after ``k`` terms is at most ``2^-k`` (less for a complete finite family).
    """
    F.check(space)
    return _dsa(space, F, A, C, depth)


def _dsa(space: GroundSpace, F: ProbeFamily, A, C, depth: int) -> IntervalValue:
    terms = dsa_terms(space, F, A, C, depth)
    k = len(terms)
    tail = math.ldexp(1.0, -k)
    if F.complete:
        tail -= math.ldexp(1.0, -len(F))
    lo = math.fsum(t for t, _ in terms)
    return IntervalValue(lo, lo + tail, all(e for _, e in terms))


def hausdorff_distance(space: GroundSpace, A, C, probe: ProbeSet) -> float:
    """``sup_x |d(x,A) - d(x,C)|`` over the probe; exact when the probe exhausts ``X``."""
    return uniform_deviation(space, probe, A, C)


def aw_distance(space: GroundSpace, x0, A, C, depth: int, ball_probes: ProbeFamily) -> IntervalValue:
    """The series metric over the balls ``B(x0, n)``, ``n = 1, 2, ...``.

    Member ``n`` (1-based) of ``ball_probes`` must sample the open ball of
    radius ``n`` about ``x0``.
    """
    space.check_point(x0)
    for n, S in enumerate(ball_probes.members, start=1):
        for x in S.sample:
            if not _metric(space, x, x0) < n:
                raise ValueError(f"probe {S.label!r} leaves the open ball of radius {n}: {x!r}")
    return _dsa(space, ball_probes, A, C, depth)
