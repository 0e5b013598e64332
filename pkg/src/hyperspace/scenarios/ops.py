"""Check operations available to scenario files.

Every operation takes the binder, the check's argument mapping and returns
an :class:`OpResult`: a verdict outcome with an optional witness, or a value
(``outcome == "value"``) given as an enclosure ``[lo, hi]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .. import properties
from ..bornology import s_separable_check, totally_bounded_family_check, weakly_s_totally_bounded
from ..convergence import (
    compare_modes,
    dsa_convergence_check,
    s_convergence_check,
    singleton_embedding_check,
    tau_sd_check,
    wijsman_check,
)
from ..hyperdist import aw_distance, dsa, hausdorff_distance, uniform_deviation
from ..metric import GroundSpace, eval_metric
from ..sets import below, distance_to_set, excess, inclusion_in_enlargement
from ..verdict import Verdict
from .model import Binder, BindingError
from .expr import evaluate


@dataclass(frozen=True)
class OpResult:
    outcome: str
    lo: float | None = None
    hi: float | None = None
    witness: str = ""

    @classmethod
    def value(cls, v: float, hi: float | None = None, note: str = "") -> "OpResult":
        return cls("value", v, v if hi is None else hi, note)

    @classmethod
    def of(cls, verdict: Verdict, note: str = "", lo=None, hi=None) -> "OpResult":
        w = verdict.witness.describe() if verdict.witness is not None else note
        return cls(verdict.outcome.value, lo, hi, w)


def _need(args, *keys):
    missing = [k for k in keys if k not in args]
    if missing:
        raise BindingError(f"missing arguments: {', '.join(missing)}")


def _eps(b: Binder, args) -> float:
    return evaluate(args.get("epsilon", b.res.epsilon))


def _horizon(b: Binder, args) -> int:
    return int(args.get("horizon", b.res.horizon))


def _depth(b: Binder, args) -> int:
    return int(args.get("depth", b.res.depth))


# ---------------------------------------------------------------------------
# metric-core and sets
# ---------------------------------------------------------------------------


def op_metric(b, args):
    _need(args, "x", "y")
    return OpResult.value(eval_metric(b.space, b.point(args["x"]), b.point(args["y"])))


def op_distance(b, args):
    _need(args, "x", "set")
    return OpResult.value(distance_to_set(b.space, b.point(args["x"]), b.closed_set(args["set"])))


def op_excess(b, args):
    _need(args, "probe", "set")
    return OpResult.value(excess(b.space, b.probe(args["probe"]), b.closed_set(args["set"])))


def op_inclusion(b, args):
    _need(args, "probe", "set")
    v = inclusion_in_enlargement(b.space, b.probe(args["probe"]), b.closed_set(args["set"]), _eps(b, args))
    return OpResult.of(v)


# ---------------------------------------------------------------------------
# bornology
# ---------------------------------------------------------------------------


def op_weakly_tb(b, args):
    _need(args, "probe", "family")
    v = weakly_s_totally_bounded(b.space, b.probe(args["probe"]), b.family(args["family"]), _eps(b, args))
    return OpResult.of(v, note=f"covered by member {v.details.get('index')}")


def op_totally_bounded(b, args):
    _need(args, "family", "tests")
    grid = [evaluate(e) for e in args.get("eps_grid", [b.res.epsilon])]
    v = totally_bounded_family_check(b.space, b.family(args["family"]), b.probe_list(args["tests"]), grid)
    note = f"deepest member {v.details['deepest_index']}" if v.passed else ""
    if v.failed:
        return OpResult(v.outcome.value, witness=f"test={v.details['test_set']} eps={v.details['eps']!r} "
                                                 + v.witness.describe())
    return OpResult.of(v, note=note)


def op_s_separable(b, args):
    _need(args, "family", "grid")
    v = s_separable_check(b.space, b.family(args["family"]), b.probe(args["grid"]), _eps(b, args))
    return OpResult.of(v)


# ---------------------------------------------------------------------------
# hyperdist
# ---------------------------------------------------------------------------


def op_deviation(b, args):
    _need(args, "probe", "a", "c")
    cap = evaluate(args["cap"]) if "cap" in args else None
    value = uniform_deviation(b.space, b.probe(args["probe"]), b.closed_set(args["a"]), b.closed_set(args["c"]), cap)
    return OpResult.value(value)


def op_entourage(b, args):
    _need(args, "probe", "a", "c")
    eps = _eps(b, args)
    dev = uniform_deviation(b.space, b.probe(args["probe"]), b.closed_set(args["a"]), b.closed_set(args["c"]), eps)
    if below(b.space, dev, eps):
        return OpResult("pass", dev, dev)
    return OpResult("fail", dev, dev, f"deviation={dev!r} eps={eps!r}")


def op_dsa(b, args):
    _need(args, "family", "a", "c")
    v = dsa(b.space, b.family(args["family"]), b.closed_set(args["a"]), b.closed_set(args["c"]), _depth(b, args))
    return OpResult.value(v.lo, v.hi, "" if v.exact else "lower-only")


def op_hausdorff(b, args):
    _need(args, "a", "c", "probe")
    return OpResult.value(hausdorff_distance(b.space, b.closed_set(args["a"]), b.closed_set(args["c"]),
                                             b.probe(args["probe"])))


def op_aw(b, args):
    _need(args, "a", "c", "family")
    x0 = b.point(args.get("x0", 0.0 if b.space.dim is None else [0] * b.space.dim))
    v = aw_distance(b.space, x0, b.closed_set(args["a"]), b.closed_set(args["c"]), _depth(b, args),
                    b.family(args["family"]))
    return OpResult.value(v.lo, v.hi, "" if v.exact else "lower-only")


# ---------------------------------------------------------------------------
# convergence
# ---------------------------------------------------------------------------


def _stable_note(v: Verdict) -> str:
    return f"stable from {v.details.get('stable_from')}"


def op_wijsman(b, args):
    _need(args, "sequence", "limit", "tests")
    v = wijsman_check(b.space, b.sequence(args["sequence"]), b.closed_set(args["limit"]), b.probe(args["tests"]),
                      _eps(b, args), _horizon(b, args))
    return OpResult.of(v, _stable_note(v))


def op_tau(b, args):
    _need(args, "sequence", "limit", "family")
    v = tau_sd_check(b.space, b.sequence(args["sequence"]), b.closed_set(args["limit"]), b.family(args["family"]),
                     _eps(b, args), _horizon(b, args))
    return OpResult.of(v, _stable_note(v))


def op_s_convergence(b, args):
    _need(args, "sequence", "limit", "family")
    v = s_convergence_check(b.space, b.sequence(args["sequence"]), b.closed_set(args["limit"]),
                            b.family(args["family"]), _eps(b, args), _horizon(b, args))
    return OpResult.of(v, _stable_note(v))


def op_dsa_convergence(b, args):
    _need(args, "sequence", "limit", "family")
    v = dsa_convergence_check(b.space, b.sequence(args["sequence"]), b.closed_set(args["limit"]),
                              b.family(args["family"]), _eps(b, args), _horizon(b, args), _depth(b, args))
    last = v.details["values"][-1]
    note = _stable_note(v) + ("" if v.details["certified"] else " (lower-only)")
    return OpResult.of(v, note, last.lo, last.hi)


def op_embedding(b, args):
    _need(args, "points", "limit", "family")
    horizon = _horizon(b, args)
    v = singleton_embedding_check(b.space, b.points(args["points"]), b.point(args["limit"]),
                                  b.family(args["family"]), _eps(b, args), horizon, _depth(b, args))
    s, p = v.details["set_verdict"], v.details["point_verdict"]
    note = f"set={s.outcome.value} point={p.outcome.value}"
    if v.failed:
        return OpResult("fail", witness=note + " " + v.witness.describe())
    return OpResult("pass", witness=note)


def op_mode_comparison(b, args):
    _need(args, "sequence", "limit", "family")
    tests = b.probe(args["tests"]) if "tests" in args else None
    m = compare_modes(b.space, b.sequence(args["sequence"]), b.closed_set(args["limit"]),
                      b.family(args["family"]), _eps(b, args), _horizon(b, args), _depth(b, args), tests)
    note = (f"dsa={m.dsa.outcome.value} wijsman={m.wijsman.outcome.value} "
            f"tau={m.tau.outcome.value} s={m.s_convergence.outcome.value}")
    if m.violations:
        return OpResult("fail", witness=note + " violations=" + ";".join(m.violations))
    return OpResult("pass", witness=note)


# ---------------------------------------------------------------------------
# randomized property rows
# ---------------------------------------------------------------------------


def op_metric_axioms(b, args):
    trials = int(args.get("trials", 1000))
    tol = evaluate(args.get("tol", properties.TRIANGLE_TOL))
    triples = properties.random_triples(b.space, b.rng("metric-axioms"), trials)
    v = properties.metric_axiom_trials(b.space, triples, tol)
    return OpResult.of(v, f"{trials} triples, worst excess {v.details.get('worst_triangle_excess')!r}")


def op_dsa_metric_axioms(b, args):
    rng = b.rng("dsa-metric-axioms")
    ground = properties.finite_ground(rng, int(args.get("ground", 50)))
    v = properties.dsa_axiom_trials(GroundSpace.euclidean(2), ground,
                                    properties.singleton_family(ground), rng, int(args.get("trials", 200)))
    return OpResult.of(v, f"{len(ground)}-point ground")


def op_hausdorff_identity(b, args):
    rng = b.rng("hausdorff-identity")
    ground = properties.finite_ground(rng, int(args.get("ground", 50)))
    v = properties.hausdorff_identity_trials(GroundSpace.euclidean(2), ground, rng,
                                             int(args.get("trials", 200)))
    return OpResult.of(v, f"{len(ground)}-point ground")


OPS: dict[str, Callable[[Binder, dict], OpResult]] = {
    "metric": op_metric,
    "distance": op_distance,
    "excess": op_excess,
    "inclusion": op_inclusion,
    "weakly-tb": op_weakly_tb,
    "totally-bounded": op_totally_bounded,
    "s-separable": op_s_separable,
    "deviation": op_deviation,
    "entourage": op_entourage,
    "dsa": op_dsa,
    "hausdorff": op_hausdorff,
    "aw": op_aw,
    "wijsman": op_wijsman,
    "tau": op_tau,
    "s-convergence": op_s_convergence,
    "dsa-convergence": op_dsa_convergence,
    "embedding": op_embedding,
    "mode-comparison": op_mode_comparison,
    "metric-axioms": op_metric_axioms,
    "dsa-metric-axioms": op_dsa_metric_axioms,
    "hausdorff-identity": op_hausdorff_identity,
}
