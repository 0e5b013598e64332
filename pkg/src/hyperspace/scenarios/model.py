"""Scenario files: parsing, validation and lazy binding of named definitions.

A scenario is a YAML mapping with the sections ``space``, ``resolution``,
``sets``, ``probes``, ``families``, ``sequences`` and ``checks``.  Checks
refer to definitions by name or give them inline; binding happens per check
so that one bad reference does not stop the rest of the run.
"""

from __future__ import annotations

import math
import zlib
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Mapping

import numpy as np
import yaml

from .. import samples
from ..bornology import ProbeFamily, normalize_increasing
from ..convergence import Constant, DensePrefix, GrowingIntervals, LinesThroughOrigin, Singletons
from ..metric import GroundSpace, PointKind, SparseSeq, _metric
from ..sets import (
    AxisLattice,
    DiscreteIndicator,
    Exhaustive,
    FinitePoints,
    Interval,
    LineThroughOrigin,
    NormBall,
    PointToLine,
    ProbeSet,
    WholeSpace,
    probe_union,
    union,
)
from .expr import evaluate

SECTIONS = ("name", "title", "space", "resolution", "sets", "probes", "families", "sequences", "checks")
EXPECT_TAGS = ("pass", "fail", "value-interval", "unchecked")


class ScenarioError(ValueError):
    """The scenario file is malformed as a whole."""


class BindingError(ValueError):
    """A check refers to something that cannot be built."""


@dataclass(frozen=True)
class Resolution:
    epsilon: float = 1e-2
    horizon: int = 1000
    depth: int = 40
    grid_step: float = 1e-2
    seed: int = 0

    def __post_init__(self):
        if not self.epsilon > 0 or not self.grid_step > 0:
            raise ScenarioError("epsilon and grid_step must be positive")
        if self.horizon < 1 or self.depth < 1:
            raise ScenarioError("horizon and depth must be positive integers")

    def override(self, **kwargs) -> "Resolution":
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})


@dataclass(frozen=True)
class CheckSpec:
    id: str
    op: str
    args: Mapping[str, Any]
    expect: str
    bounds: tuple[float, float] | None = None
    contains: float | None = None


@dataclass(frozen=True)
class Scenario:
    name: str
    title: str
    space: GroundSpace
    definitions: Mapping[str, Mapping[str, Any]]
    checks: tuple[CheckSpec, ...]
    resolution: Resolution = field(default_factory=Resolution)

    def with_resolution(self, **kwargs) -> "Scenario":
        return replace(self, resolution=self.resolution.override(**kwargs))


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


_SPACES = {
    ("scalar", "usual"): GroundSpace.real_line,
    ("scalar", "zero-one"): GroundSpace.discrete_line,
    ("vector", "french-metro"): GroundSpace.french_metro,
    ("sequence", "sup-seq"): GroundSpace.sequences,
}


def parse_space(spec: Mapping) -> GroundSpace:
    points, metric = spec.get("points"), spec.get("metric")
    if (points, metric) in _SPACES:
        return _SPACES[(points, metric)]()
    if points == "vector" and metric == "euclidean":
        return GroundSpace.euclidean(int(spec.get("dim", 2)))
    raise ScenarioError(f"unsupported space {dict(spec)!r}")


def parse_scenario(data: Mapping) -> Scenario:
    if not isinstance(data, Mapping):
        raise ScenarioError("a scenario must be a mapping")
    unknown = set(data) - set(SECTIONS)
    if unknown:
        raise ScenarioError(f"unknown sections: {sorted(unknown)}")
    for key in ("name", "space", "checks"):
        if key not in data:
            raise ScenarioError(f"missing section {key!r}")
    res = dict(data.get("resolution") or {})
    try:
        resolution = Resolution(
            epsilon=evaluate(res.pop("epsilon", 1e-2)),
            horizon=int(res.pop("horizon", 1000)),
            depth=int(res.pop("depth", 40)),
            grid_step=evaluate(res.pop("grid_step", 1e-2)),
            seed=int(res.pop("seed", 0)),
        )
    except (TypeError, ValueError) as exc:
        raise ScenarioError(f"bad resolution: {exc}") from exc
    if res:
        raise ScenarioError(f"unknown resolution keys: {sorted(res)}")

    checks, seen = [], set()
    for raw in data["checks"]:
        cid, op, expect = raw.get("id"), raw.get("op"), raw.get("expect", "unchecked")
        if not cid or not op:
            raise ScenarioError(f"check needs an id and an op: {raw!r}")
        if cid in seen:
            raise ScenarioError(f"duplicate check id {cid!r}")
        seen.add(cid)
        if expect not in EXPECT_TAGS:
            raise ScenarioError(f"check {cid!r}: expected tag must be one of {EXPECT_TAGS}")
        bounds = tuple(evaluate(v) for v in raw["within"]) if "within" in raw else None
        contains = evaluate(raw["contains"]) if "contains" in raw else None
        if expect == "value-interval" and bounds is None and contains is None:
            raise ScenarioError(f"check {cid!r}: value-interval needs 'within' or 'contains'")
        checks.append(CheckSpec(cid, op, dict(raw.get("args") or {}), expect, bounds, contains))

    defs = {sec: dict(data.get(sec) or {}) for sec in ("sets", "probes", "families", "sequences")}
    return Scenario(
        name=str(data["name"]),
        title=str(data.get("title", "")),
        space=parse_space(data["space"]),
        definitions=defs,
        checks=tuple(checks),
        resolution=resolution,
    )


def load_scenario(source: str | Path) -> Scenario:
    """Parse a scenario from a file path."""
    text = Path(source).read_text(encoding="utf-8")
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ScenarioError(f"{source}: {exc}") from exc
    return parse_scenario(data)


# ---------------------------------------------------------------------------
# Binding
# ---------------------------------------------------------------------------


def _int(value, env) -> int:
    v = evaluate(value, env)
    if v != math.floor(v):
        raise BindingError(f"expected an integer, got {value!r}")
    return int(v)


class Binder:
    """Builds sets, probes, families and sequences from a scenario, with caching."""

    def __init__(self, scenario: Scenario):
        self.scenario = scenario
        self.space = scenario.space
        self.res = scenario.resolution
        self._cache: dict[tuple[str, str], Any] = {}

    def rng(self, salt: str) -> np.random.Generator:
        return np.random.default_rng([self.res.seed, zlib.crc32(salt.encode())])

    def _named(self, section: str, name: str, build):
        key = (section, name)
        if key not in self._cache:
            table = self.scenario.definitions[section]
            if name not in table:
                raise BindingError(f"undefined {section[:-1]} {name!r}")
            self._cache[key] = build(table[name], {}, name)
        return self._cache[key]

    # -- numbers and points ------------------------------------------------

    def number(self, value, env=None) -> float:
        return evaluate(value, env)

    def point(self, value, env=None):
        kind = self.space.kind
        if kind is PointKind.SCALAR:
            p = evaluate(value, env)
        elif kind is PointKind.VECTOR:
            if not isinstance(value, (list, tuple)):
                raise BindingError(f"expected a coordinate list, got {value!r}")
            p = tuple(evaluate(v, env) + 0.0 for v in value)
        elif isinstance(value, Mapping):
            p = SparseSeq({int(k): evaluate(v, env) for k, v in value.items()})
        else:
            p = SparseSeq.from_list(evaluate(v, env) for v in value)
        self.space.check_point(p)
        return p

    def points(self, spec, env=None) -> list:
        """A literal point list or a generator mapping ``{generate: ..., ...}``."""
        env = env or {}
        if isinstance(spec, (list, tuple)):
            return list(dict.fromkeys(self.point(v, env) for v in spec))
        if not isinstance(spec, Mapping) or "generate" not in spec:
            raise BindingError(f"expected a point list or generator, got {spec!r}")
        gen = spec["generate"]
        count = _int(spec["count"], env) if "count" in spec else None
        if gen == "sqrt2-multiples":
            return samples.sqrt2_multiples(count)
        if gen == "outside-irrationals":
            # -(k + sqrt(2)/2) and k + sqrt(2)/2: one irrational beyond each side of [-k, k]
            h = math.sqrt(2.0) / 2
            return [s * (k + h) for k in range(1, count + 1) for s in (-1.0, 1.0)]
        if gen == "dyadic-rationals":
            return samples.take(samples.dyadic_rationals(), count)
        if gen == "rational-pairs":
            return samples.take(samples.rational_pairs(), count)
        if gen == "lattice":
            return samples.lattice_prefix(count, evaluate(spec.get("slope", 0), env))
        if gen == "grid":
            step = evaluate(spec.get("step", self.res.grid_step), env)
            return samples.grid(evaluate(spec["lo"], env), evaluate(spec["hi"], env), step)
        if gen == "grid2d":
            step = evaluate(spec.get("step", self.res.grid_step), env)
            axis = samples.grid(evaluate(spec["lo"], env), evaluate(spec["hi"], env), step)
            return [(a, b) for a in axis for b in axis]
        if gen == "random":
            lo, hi = evaluate(spec.get("lo", -10), env), evaluate(spec.get("hi", 10), env)
            rng = self.rng(spec.get("salt", "random"))
            if self.space.kind is PointKind.SCALAR:
                return list(dict.fromkeys(float(v) for v in rng.uniform(lo, hi, size=count)))
            dim = self.space.dim or 2
            return list(dict.fromkeys(tuple(float(v) for v in row) for row in rng.uniform(lo, hi, (count, dim))))
        if gen == "sequence":
            # x_n given by a formula in n, n = 1..count
            return [self.point(spec["term"], {**env, "n": float(n)}) for n in range(1, count + 1)]
        if gen == "french-metro-circle":
            # count points on the circle of radius r, one per angle 2*pi*k/count
            r = evaluate(spec["radius"], env)
            return [(r * math.cos(2 * math.pi * k / count), r * math.sin(2 * math.pi * k / count))
                    for k in range(count)]
        if gen == "unit-vectors":
            # r * e_k for k = 1..count in the sequence space
            r = evaluate(spec.get("radius", 1), env)
            return [SparseSeq({k: r}) for k in range(1, count + 1)]
        raise BindingError(f"unknown point generator {gen!r}")

    # -- closed sets -------------------------------------------------------

    def closed_set(self, ref, env=None):
        """A closed set from a name (sets, then probes) or an inline spec."""
        if isinstance(ref, str):
            if ref in self.scenario.definitions["sets"]:
                return self._named("sets", ref, self._build_set)
            if ref in self.scenario.definitions["probes"]:
                return self.probe(ref).closed_set
            raise BindingError(f"undefined set {ref!r}")
        return self._build_set(ref, env or {}, None)

    def _build_set(self, spec, env, name):
        kind = spec.get("kind")
        if kind == "points":
            return FinitePoints.of(self.points(spec["points"], env))
        if kind == "interval":
            return Interval(evaluate(spec.get("lo", "-inf"), env), evaluate(spec.get("hi", "inf"), env))
        if kind == "line":
            return LineThroughOrigin(evaluate(spec["slope"], env))
        if kind == "axis-lattice":
            return AxisLattice()
        if kind == "whole":
            return WholeSpace()
        if kind == "ball":
            return NormBall(evaluate(spec["radius"], env))
        if kind == "union":
            return union(*(self.closed_set(m, env) if isinstance(m, Mapping) else self.closed_set(m)
                           for m in spec["members"]))
        raise BindingError(f"unknown set kind {kind!r}")

    # -- probes ------------------------------------------------------------

    def probe(self, ref, env=None) -> ProbeSet:
        if isinstance(ref, str):
            return self._named("probes", ref, self._build_probe)
        return self._build_probe(ref, env or {}, None)

    def _label(self, spec, env, default):
        label = spec.get("label")
        if label is None:
            return default
        for k, v in env.items():
            label = label.replace("{" + k + "}", _fmt(v))
        return label

    def _build_probe(self, spec, env, name):
        kind = spec.get("kind", "points")
        label = self._label(spec, env, name or kind)
        region = self.closed_set(spec["region"], env) if "region" in spec else None
        if kind == "points":
            pts = self.points(spec["points"], env)
            exact = None if spec.get("exact", "exhaustive") == "none" else Exhaustive()
            return ProbeSet(label, tuple(pts), exact, region)
        if kind == "grid":
            lo, hi = evaluate(spec["lo"], env), evaluate(spec["hi"], env)
            step = evaluate(spec.get("step", self.res.grid_step), env)
            exact = DiscreteIndicator(lo, hi) if spec.get("exact") == "indicator" else None
            return ProbeSet(label, tuple(samples.grid(lo, hi, step)), exact, region)
        if kind == "lattice":
            slope = evaluate(spec.get("slope", 0), env)
            pts = samples.lattice_prefix(_int(spec["count"], env), slope)
            return ProbeSet(label, tuple(pts), PointToLine(slope), region)
        if kind == "ball":
            center = self.point(spec.get("center", 0.0 if self.space.kind is PointKind.SCALAR else [0, 0]), env)
            radius = evaluate(spec["radius"], env)
            step = evaluate(spec.get("step", self.res.grid_step), env)
            if "rays" in spec:
                pts = _polar_ball(self.space, center, radius, step, _int(spec["rays"], env))
            else:
                pts = samples.ball_sample(self.space, center, radius, step)
            return ProbeSet(label, tuple(pts), None, region)
        if kind == "union":
            return probe_union(label, [self.probe(m, env) for m in spec["members"]])
        raise BindingError(f"unknown probe kind {kind!r}")

    def probe_list(self, spec) -> list[ProbeSet]:
        """A list of probes, or ``{generate: random-sets, count, size, lo, hi}``."""
        if isinstance(spec, Mapping) and spec.get("generate") == "random-sets":
            rng = self.rng(spec.get("salt", "random-sets"))
            count, size = int(spec["count"]), int(spec.get("size", 5))
            lo, hi = evaluate(spec.get("lo", -10)), evaluate(spec.get("hi", 10))
            out = []
            for i in range(1, count + 1):
                k = int(rng.integers(1, size + 1))
                if self.space.kind is PointKind.SCALAR:
                    pts = [float(v) for v in rng.uniform(lo, hi, size=k)]
                else:
                    pts = [tuple(float(v) for v in row) for row in rng.uniform(lo, hi, (k, self.space.dim or 2))]
                out.append(ProbeSet(f"T{i}", tuple(dict.fromkeys(pts)), Exhaustive()))
            return out
        if isinstance(spec, (list, tuple)):
            return [self.probe(p) for p in spec]
        return [self.probe(spec)]

    # -- families ----------------------------------------------------------

    def family(self, ref) -> ProbeFamily:
        if isinstance(ref, str):
            return self._named("families", ref, self._build_family)
        return self._build_family(ref, {}, None)

    def _build_family(self, spec, env, name):
        kind = spec.get("kind", "list")
        label = name or spec.get("label", kind)
        complete = bool(spec.get("complete", False))
        if kind == "list":
            members = []
            for m in spec["members"]:
                if isinstance(m, Mapping) and "splice" in m:
                    sub = self.family(m["splice"]).members
                    members.extend(sub[: int(m["count"])] if "count" in m else sub)
                else:
                    members.append(self.probe(m))
            fam = ProbeFamily(label, tuple(members), complete=complete)
        elif kind == "singletons":
            pts = self.points(spec["points"])
            fam = ProbeFamily(label, tuple(ProbeSet(f"{{{_fmt(p)}}}", (p,), Exhaustive()) for p in pts),
                              complete=complete)
        elif kind == "indexed":
            count = _int(spec["count"], env)
            members = tuple(self._build_probe(spec["member"], {"n": float(n)}, f"{label}[{n}]")
                            for n in range(1, count + 1))
            fam = ProbeFamily(label, members, complete=complete)
        else:
            raise BindingError(f"unknown family kind {kind!r}")
        if spec.get("normalize"):
            fam = normalize_increasing(fam)
        return fam

    # -- sequences ---------------------------------------------------------

    def sequence(self, ref):
        if isinstance(ref, str):
            return self._named("sequences", ref, self._build_sequence)
        return self._build_sequence(ref, {}, None)

    def _build_sequence(self, spec, env, name):
        kind = spec.get("kind")
        if kind == "lines":
            return LinesThroughOrigin()
        if kind == "growing-intervals":
            return GrowingIntervals()
        if kind == "dense-prefix":
            return DensePrefix(tuple(self.points(spec["points"])))
        if kind == "constant":
            return Constant(self.closed_set(spec["set"]))
        if kind == "singletons":
            return Singletons(tuple(self.points(spec["points"])))
        raise BindingError(f"unknown sequence kind {kind!r}")


def _fmt(v) -> str:
    if isinstance(v, float) and v.is_integer():
        return str(int(v))
    return repr(v) if not isinstance(v, tuple) else "(" + ",".join(_fmt(c) for c in v) + ")"


def _polar_ball(space: GroundSpace, center, radius: float, step: float, rays: int) -> list:
    """Points on ``rays`` rays from the centre, every ``step``, inside the open ball."""
    if space.kind is not PointKind.VECTOR or space.dim != 2:
        raise BindingError("polar ball samples need a planar space")
    out = [center]
    for k in range(rays):
        c, s = math.cos(2 * math.pi * k / rays), math.sin(2 * math.pi * k / rays)
        r = step
        while r < radius:
            out.append((center[0] + r * c, center[1] + r * s))
            r += step
    return list(dict.fromkeys(p for p in out if _metric(space, p, center) < radius))
