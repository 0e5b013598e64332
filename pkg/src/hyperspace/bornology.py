"""Countable generating families and the covering predicates built on them.

Every predicate here is decided at a declared resolution: a finite prefix of
the family, a finite probe and a finite set of radii.  A pass says "covered
at this resolution", never more.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .metric import GroundSpace
from .sets import Exhaustive, FinitePoints, ProbeSet, UnionOf, _distance, below, union
from .verdict import Outcome, Verdict, Witness


@dataclass(frozen=True)
class ProbeFamily:
    """A finite prefix ``S_1, ..., S_N`` of a countable collection of sets.

    ``increasing`` asserts ``S_n ⊆ S_{n+1}`` (checked on the samples).
    ``complete`` says the collection really is finite, so the series metric
    built on it has no tail.
    """

    label: str
    members: tuple
    increasing: bool = False
    complete: bool = False

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        if not self.members:
            raise ValueError(f"family {self.label!r} is empty")
        labels = [m.label for m in self.members]
        if len(set(labels)) != len(labels):
            raise ValueError(f"family {self.label!r} has repeated member labels")
        if self.increasing:
            for prev, cur in zip(self.members, self.members[1:]):
                if cur.sample[: len(prev.sample)] == prev.sample:
                    continue
                if not set(prev.sample) <= set(cur.sample):
                    raise ValueError(f"{cur.label!r} does not contain the sample of {prev.label!r}")

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i):
        return self.members[i]

    def check(self, space: GroundSpace) -> None:
        for m in self.members:
            m.check(space)


def normalize_increasing(F: ProbeFamily) -> ProbeFamily:
    """Replace ``S_n`` by the cumulative union ``S_1 ∪ ... ∪ S_n``.

    Families already flagged increasing come back unchanged, so the
    operation is idempotent.  Member ``n`` is what :func:`probe_union` of the
    first ``n`` members gives; it is built incrementally here because
    families of a few thousand singletons are common.
    """
    if F.increasing:
        return F
    sample: dict = {}
    region_points: dict = {}
    regions: dict = {}
    parts: dict = {}
    exhaustive = True
    members = []
    for n, m in enumerate(F.members, start=1):
        for p in m.parts or (m,):
            parts.setdefault(p, None)
            exhaustive = exhaustive and isinstance(p.exact, Exhaustive)
        sample.update(dict.fromkeys(m.sample))
        cs = m.closed_set
        for piece in cs.members if isinstance(cs, UnionOf) else (cs,):
            if isinstance(piece, FinitePoints):
                region_points.update(dict.fromkeys(piece.points))
            else:
                regions.setdefault(piece, None)
        pieces = list(regions)
        if region_points:
            pieces.append(FinitePoints._trusted(tuple(region_points)))
        label = m.label if n == 1 else f"{F.label}'{n}"
        if n == 1:
            members.append(ProbeSet(label, m.sample, m.exact, m.region, m.parts))
        elif exhaustive:
            members.append(ProbeSet(label, tuple(sample), Exhaustive(), union(*pieces)))
        else:
            members.append(ProbeSet(label, tuple(sample), None, union(*pieces), tuple(parts)))
    return ProbeFamily(F.label, tuple(members), increasing=True, complete=F.complete)


def _first_uncovered(space: GroundSpace, A: ProbeSet, S: ProbeSet, eps: float):
    region = S.closed_set
    for x in A.sample:
        d = _distance(space, x, region)
        if not below(space, d, eps):
            return x, d
    return None


def weakly_s_totally_bounded(space: GroundSpace, A: ProbeSet, F: ProbeFamily, eps: float) -> Verdict:
    """Is there a member ``S_n`` of the normalized family with ``A ⊆ B_d(S_n, eps)``?

    Passing verdicts report the first covering index (1-based); failing ones
    list, for each member, a point of ``A`` left outside its enlargement.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    A.check(space)
    G = normalize_increasing(F)
    resolution = {"eps": eps, "members": len(G), "probe_points": len(A.sample)}

    # nested members make coverage monotone in n, so bisect for the first cover
    last = _first_uncovered(space, A, G.members[-1], eps)
    if last is None:
        lo, hi = 0, len(G) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if _first_uncovered(space, A, G.members[mid], eps) is None:
                hi = mid
            else:
                lo = mid + 1
        return Verdict(Outcome.PASS, resolution=resolution,
                       details={"index": lo + 1, "member": G.members[lo].label})

    witnesses = []
    for n, S in enumerate(G.members, start=1):
        x, d = last if n == len(G) else _first_uncovered(space, A, S, eps)
        witnesses.append(Witness(x, d, index=n, member=S.label))
    return Verdict(Outcome.FAIL, witnesses[-1], resolution, details={"witnesses": tuple(witnesses)})


def totally_bounded_family_check(space: GroundSpace, candidates: ProbeFamily,
                                 test_sets: Sequence[ProbeSet], eps_grid: Iterable[float]) -> Verdict:
    """Does some candidate ``eps``-cover each test set, for every ``eps`` in the grid?

    Covering by a finite union of candidates is the same as covering by a
    cumulative member, so candidates are normalized first.
    """
    eps_grid = tuple(eps_grid)
    if not eps_grid:
        raise ValueError("eps_grid is empty")
    G = normalize_increasing(candidates)
    resolution = {"eps_grid": eps_grid, "members": len(G), "test_sets": len(test_sets)}
    deepest = 0
    for T in test_sets:
        for eps in eps_grid:
            v = weakly_s_totally_bounded(space, T, G, eps)
            if not v.passed:
                return Verdict(Outcome.FAIL, v.witness, resolution,
                               details={"test_set": T.label, "eps": eps, "witnesses": v.details["witnesses"]})
            deepest = max(deepest, v.details["index"])
    return Verdict(Outcome.PASS, resolution=resolution, details={"deepest_index": deepest})


def s_separable_check(space: GroundSpace, F: ProbeFamily, grid: ProbeSet, eps: float) -> Verdict:
    """Is every grid point within ``eps`` of the union of the family's sets?"""
    if not eps > 0:
        raise ValueError("eps must be positive")
    grid.check(space)
    covered = union(*(m.closed_set for m in F.members))
    resolution = {"eps": eps, "members": len(F), "grid_points": len(grid.sample)}
    for x in grid.sample:
        d = _distance(space, x, covered)
        if not below(space, d, eps):
            return Verdict(Outcome.FAIL, Witness(x, d, member=grid.label), resolution)
    return Verdict(Outcome.PASS, resolution=resolution)
