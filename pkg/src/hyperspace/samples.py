"""Deterministic point supplies: rational enumerations, grids, ball samples."""

from __future__ import annotations

import itertools
import math
from typing import Iterator

from .metric import GroundSpace, PointKind, _metric


def dyadic_rationals() -> Iterator[float]:
    """Enumerate a dense set of rationals level by level.

    Level ``L`` adds the new points ``j / 2^L`` with ``|j / 2^L| <= L``, nearest
    to 0 first, so the first ``L`` levels are ``2^-L``-dense in ``[-L, L]``.
    """
    seen: set[float] = set()
    for level in itertools.count(1):
        scale = 2 ** level
        bound = level * scale
        new = [j / scale for j in range(-bound, bound + 1) if j / scale not in seen]
        new.sort(key=lambda v: (abs(v), v))
        seen.update(new)
        yield from new


def rational_pairs() -> Iterator[tuple[float, float]]:
    """Enumerate dyadic points of the plane, level by level as in :func:`dyadic_rationals`."""
    seen: set[tuple[float, float]] = set()
    for level in itertools.count(1):
        scale = 2 ** level
        bound = level * scale
        coords = [j / scale for j in range(-bound, bound + 1)]
        new = [(a, b) for a in coords for b in coords if (a, b) not in seen]
        new.sort(key=lambda p: (max(abs(p[0]), abs(p[1])), p))
        seen.update(new)
        yield from new


def take(iterator, n: int) -> list:
    return list(itertools.islice(iterator, n))


def grid(lo: float, hi: float, step: float) -> list[float]:
    """``lo, lo + step, ...`` up to ``hi`` (inclusive, up to rounding)."""
    if step <= 0 or hi < lo:
        raise ValueError("need step > 0 and lo <= hi")
    count = int(math.floor((hi - lo) / step + 1e-9))
    return [lo + k * step for k in range(count + 1)]


def van_der_corput(n: int, base: int = 2) -> list[float]:
    """First ``n`` terms ``0, 1/2, 1/4, 3/4, ...`` of the base-``base`` radical inverse."""
    out = []
    for k in range(n):
        q, denom, value = k, 1, 0.0
        while q:
            q, r = divmod(q, base)
            denom *= base
            value += r / denom
        out.append(value)
    return out


def sqrt2_multiples(count: int) -> list[float]:
    """``k * sqrt(2)`` for ``k = 1..count``: irrational points of the line."""
    return [k * math.sqrt(2.0) for k in range(1, count + 1)]


def lattice_prefix(count: int, slope: float = 0.0) -> list[tuple[float, float]]:
    """``(k, k*slope)`` for ``k = 1..count``."""
    return [(float(k), k * slope) for k in range(1, count + 1)]


def ball_sample(space: GroundSpace, x0, radius: float, step: float) -> list:
    """Grid points of the open ball ``B(x0, radius)`` (scalar and planar spaces)."""
    if space.kind is PointKind.SCALAR:
        pts = [x0 + t for t in grid(-radius, radius, step)]
    elif space.kind is PointKind.VECTOR and space.dim == 2:
        offsets = grid(-radius, radius, step)
        pts = [(x0[0] + a, x0[1] + b) for a in offsets for b in offsets]
    else:
        raise ValueError("ball samples are available for scalar and planar spaces")
    return [p for p in pts if _metric(space, p, x0) < radius]
