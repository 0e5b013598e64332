"""Ground metric spaces: point kinds, metric rules and exact metric evaluation.

Points are plain Python values:

* scalars are ``float``,
* vectors are ``tuple`` of floats of the space's dimension,
* eventually-zero sequences are :class:`SparseSeq`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Union


class PointKindError(TypeError):
    """A point does not have the kind its ground space expects."""


class SparseSeq:
    """A real sequence ``(x_1, x_2, ...)`` with finitely many nonzero entries.

    Indices start at 1.  Zero entries are never stored, so two sequences are
    equal exactly when their stored items are equal.
    """

    __slots__ = ("_items",)

    def __init__(self, entries: Mapping[int, float] | Iterable[tuple[int, float]] = ()):
        if isinstance(entries, Mapping):
            entries = entries.items()
        items = {}
        for index, value in entries:
            index = int(index)
            value = float(value)
            if index < 1:
                raise ValueError(f"sequence indices start at 1, got {index}")
            if not math.isfinite(value):
                raise ValueError(f"non-finite entry {value!r} at index {index}")
            if value != 0.0:
                items[index] = value
        self._items = tuple(sorted(items.items()))

    @classmethod
    def from_list(cls, values: Iterable[float]) -> "SparseSeq":
        return cls(enumerate(values, start=1))

    @property
    def items(self) -> tuple[tuple[int, float], ...]:
        return self._items

    def __getitem__(self, index: int) -> float:
        for i, v in self._items:
            if i == index:
                return v
        return 0.0

    def support(self) -> frozenset[int]:
        return frozenset(i for i, _ in self._items)

    def sup_norm(self) -> float:
        return max((abs(v) for _, v in self._items), default=0.0)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SparseSeq) and self._items == other._items

    def __hash__(self) -> int:
        return hash(self._items)

    def __repr__(self) -> str:
        body = ", ".join(f"{i}: {v!r}" for i, v in self._items)
        return f"SparseSeq({{{body}}})"


Point = Union[float, tuple, SparseSeq]


class PointKind(enum.Enum):
    SCALAR = "scalar"
    VECTOR = "vector"
    SEQUENCE = "sequence"


class MetricRule(enum.Enum):
    EUCLIDEAN = "euclidean"
    USUAL_LINE = "usual"
    ZERO_ONE = "zero-one"
    FRENCH_METRO = "french-metro"
    SUP_SEQ = "sup-seq"


_COMPATIBLE = {
    MetricRule.EUCLIDEAN: {PointKind.VECTOR},
    MetricRule.USUAL_LINE: {PointKind.SCALAR},
    MetricRule.ZERO_ONE: set(PointKind),
    MetricRule.FRENCH_METRO: {PointKind.VECTOR},
    MetricRule.SUP_SEQ: {PointKind.SEQUENCE},
}


@dataclass(frozen=True)
class GroundSpace:
    """A metric space ``(X, d)`` described by its point kind and metric rule."""

    kind: PointKind
    metric: MetricRule
    dim: int | None = None

    def __post_init__(self):
        if self.kind not in _COMPATIBLE[self.metric]:
            raise ValueError(f"metric {self.metric.value!r} does not accept {self.kind.value} points")
        if self.kind is PointKind.VECTOR:
            if self.dim is None or self.dim < 1:
                raise ValueError("vector spaces need a dimension >= 1")
            if self.metric is MetricRule.FRENCH_METRO and self.dim != 2:
                raise ValueError("the French Metro metric lives on R^2")
        elif self.dim is not None:
            raise ValueError(f"{self.kind.value} spaces take no dimension")

    @classmethod
    def real_line(cls) -> "GroundSpace":
        return cls(PointKind.SCALAR, MetricRule.USUAL_LINE)

    @classmethod
    def discrete_line(cls) -> "GroundSpace":
        return cls(PointKind.SCALAR, MetricRule.ZERO_ONE)

    @classmethod
    def euclidean(cls, dim: int = 2) -> "GroundSpace":
        return cls(PointKind.VECTOR, MetricRule.EUCLIDEAN, dim)

    @classmethod
    def french_metro(cls) -> "GroundSpace":
        return cls(PointKind.VECTOR, MetricRule.FRENCH_METRO, 2)

    @classmethod
    def sequences(cls) -> "GroundSpace":
        return cls(PointKind.SEQUENCE, MetricRule.SUP_SEQ)

    def check_point(self, x) -> None:
        """Raise :class:`PointKindError` unless ``x`` is a valid point of this space."""
        if self.kind is PointKind.SCALAR:
            if isinstance(x, bool) or not isinstance(x, (int, float)):
                raise PointKindError(f"expected a real scalar, got {x!r}")
            if not math.isfinite(x):
                raise PointKindError(f"scalar points must be finite, got {x!r}")
        elif self.kind is PointKind.VECTOR:
            if not isinstance(x, tuple) or len(x) != self.dim:
                raise PointKindError(f"expected a {self.dim}-tuple of reals, got {x!r}")
            for c in x:
                if isinstance(c, bool) or not isinstance(c, (int, float)) or not math.isfinite(c):
                    raise PointKindError(f"vector coordinates must be finite reals, got {x!r}")
        elif not isinstance(x, SparseSeq):
            raise PointKindError(f"expected a SparseSeq, got {x!r}")

    def norm(self, x) -> float:
        """Distance from ``x`` to the origin under the space's natural norm."""
        if self.kind is PointKind.SCALAR:
            return abs(x)
        if self.kind is PointKind.VECTOR:
            return math.hypot(*x)
        return x.sup_norm()


def _euclid(x: tuple, y: tuple) -> float:
    # Plain left-to-right sum keeps results bit-identical with the numpy path in sets.py.
    total = 0.0
    for a, b in zip(x, y):
        total += (a - b) * (a - b)
    if total == 0.0 and x != y:
        return math.dist(x, y)  # the squares underflowed
    return math.sqrt(total)


def collinear(x: tuple, y: tuple) -> bool:
    """Exact test of ``x = a*y`` or ``y = a*x`` for points of the plane.

    The origin is collinear with every point.
    """
    return x[0] * y[1] - x[1] * y[0] == 0.0


def french_metro(x: tuple, y: tuple) -> float:
    if x == y:
        return 0.0
    if collinear(x, y):
        return _euclid(x, y)
    return math.hypot(*x) + math.hypot(*y)


def sup_seq(x: SparseSeq, y: SparseSeq) -> float:
    keys = x.support() | y.support()
    return max((abs(x[i] - y[i]) for i in keys), default=0.0)


def eval_metric(space: GroundSpace, x, y) -> float:
    """Return ``d(x, y)`` under the space's metric rule."""
    space.check_point(x)
    space.check_point(y)
    return _metric(space, x, y)


def _metric(space: GroundSpace, x, y) -> float:
    rule = space.metric
    if rule is MetricRule.USUAL_LINE:
        return abs(x - y)
    if rule is MetricRule.EUCLIDEAN:
        return _euclid(x, y)
    if rule is MetricRule.ZERO_ONE:
        return 0.0 if x == y else 1.0
    if rule is MetricRule.FRENCH_METRO:
        return french_metro(x, y)
    return sup_seq(x, y)
