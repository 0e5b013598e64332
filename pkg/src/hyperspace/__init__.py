"""Hyperspace metrics, bornology predicates and set-convergence checks at desk scale."""

from .bornology import (
    ProbeFamily,
    normalize_increasing,
    s_separable_check,
    totally_bounded_family_check,
    weakly_s_totally_bounded,
)
from .convergence import (
    Constant,
    DensePrefix,
    GrowingIntervals,
    LinesThroughOrigin,
    ModeComparison,
    SetSequence,
    Singletons,
    compare_modes,
    dsa_convergence_check,
    s_convergence_check,
    singleton_embedding_check,
    tau_sd_check,
    wijsman_check,
)
from .hyperdist import IntervalValue, aw_distance, dsa, dsa_terms, entourage_test, hausdorff_distance, uniform_deviation
from .metric import GroundSpace, MetricRule, PointKind, PointKindError, SparseSeq, eval_metric
from .sets import (
    MARGIN,
    AxisLattice,
    DiscreteIndicator,
    Exhaustive,
    FinitePoints,
    Interval,
    LineThroughOrigin,
    NormBall,
    OracleInconsistency,
    PointToLine,
    ProbeSet,
    UnionOf,
    UnsupportedCombination,
    WholeSpace,
    contains,
    distance_to_set,
    excess,
    finite_probe,
    inclusion_in_enlargement,
    probe_union,
    sup_deviation,
    union,
)
from .verdict import Outcome, Verdict, Witness

__version__ = "0.1.0"
