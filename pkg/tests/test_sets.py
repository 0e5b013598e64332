import math

import pytest

from hyperspace import (
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
    SparseSeq,
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
from hyperspace.samples import grid, sqrt2_multiples


def brute_line_distance(x, slope, half_width=20.0, step=1e-4):
    """Minimize over a dense sample of the line, then refine around the best sample."""
    best_t, best = 0.0, math.inf
    t = -half_width
    while t <= half_width:
        d = math.hypot(x[0] - t, x[1] - slope * t)
        if d < best:
            best_t, best = t, d
        t += 0.01
    lo, hi = best_t - 0.01, best_t + 0.01
    t = lo
    while t <= hi:
        best = min(best, math.hypot(x[0] - t, x[1] - slope * t))
        t += step
    return best


# -- distance functionals -----------------------------------------------------


def test_finite_points_usual_line(line):
    assert distance_to_set(line, 2.5, FinitePoints((0.0, 1.0, 3.0))) == 0.5


def test_interval_clamp(line):
    A = Interval(-1.0, 2.0)
    assert distance_to_set(line, 5.0, A) == 3.0
    assert distance_to_set(line, -4.0, A) == 3.0
    assert distance_to_set(line, 0.5, A) == 0.0


def test_half_line(line):
    assert distance_to_set(line, -3.0, Interval(0.0, math.inf)) == 3.0


def test_line_closed_form_matches_brute_force(plane):
    exact = distance_to_set(plane, (3.0, 0.0), LineThroughOrigin(1.0))
    assert exact == pytest.approx(3.0 / math.sqrt(2.0), abs=1e-15)
    assert brute_line_distance((3.0, 0.0), 1.0) == pytest.approx(exact, abs=1e-6)


@pytest.mark.parametrize("x, slope", [((5.0, 1.0), 0.1), ((-2.0, 7.0), -3.0), ((0.0, 4.0), 0.5)])
def test_line_distance_oracle(plane, x, slope):
    assert distance_to_set(plane, x, LineThroughOrigin(slope)) == pytest.approx(
        brute_line_distance(x, slope), abs=1e-6)


def test_axis_lattice_euclidean(plane):
    assert distance_to_set(plane, (2.4, 1.0), AxisLattice()) == pytest.approx(math.hypot(0.4, 1.0))
    assert distance_to_set(plane, (-3.0, 0.0), AxisLattice()) == 4.0


def test_zero_one_is_membership(discrete):
    A = union(Interval(-2.0, 2.0), FinitePoints((math.sqrt(2.0) * 5,)))
    assert distance_to_set(discrete, 1.5, A) == 0.0
    assert distance_to_set(discrete, math.sqrt(2.0) * 5, A) == 0.0
    assert distance_to_set(discrete, 3.0, A) == 1.0


def test_norm_ball(metro, seqs):
    assert distance_to_set(metro, (3.0, 4.0), NormBall(2.0)) == 3.0
    assert distance_to_set(metro, (0.3, 0.4), NormBall(2.0)) == 0.0
    assert distance_to_set(seqs, SparseSeq({4: -5.0}), NormBall(2.0)) == 3.0


def test_french_metro_line_and_lattice(metro):
    assert distance_to_set(metro, (2.0, 2.0), LineThroughOrigin(1.0)) == 0.0
    assert distance_to_set(metro, (3.0, 4.0), LineThroughOrigin(0.0)) == 5.0
    assert distance_to_set(metro, (2.5, 0.0), AxisLattice()) == 0.5
    assert distance_to_set(metro, (3.0, 4.0), AxisLattice()) == 6.0


def test_whole_space_and_union(plane):
    assert distance_to_set(plane, (9.0, 9.0), WholeSpace()) == 0.0
    U = UnionOf((FinitePoints(((10.0, 0.0),)), LineThroughOrigin(0.0)))
    assert distance_to_set(plane, (10.0, 1.0), U) == 1.0


def test_unsupported_pairs_fail_loudly(line, plane, seqs):
    with pytest.raises(UnsupportedCombination):
        distance_to_set(line, 1.0, LineThroughOrigin(1.0))
    with pytest.raises(UnsupportedCombination):
        distance_to_set(plane, (1.0, 1.0), Interval(0.0, 1.0))
    with pytest.raises(UnsupportedCombination):
        distance_to_set(seqs, SparseSeq(), Interval(0.0, 1.0))


def test_numpy_path_agrees_with_loop(plane, line):
    pts = tuple((float(i), float(i * i % 7)) for i in range(40))
    A = FinitePoints(pts)
    x = (3.3, -1.2)
    assert distance_to_set(plane, x, A) == min(math.dist(x, p) for p in pts)
    B = FinitePoints(tuple(float(i) / 3 for i in range(40)))
    assert distance_to_set(line, 5.05, B) == min(abs(5.05 - p) for p in B.points)


# -- membership ------------------------------------------------------------------


def test_membership(plane, line):
    assert contains(plane, (2.0, 1.0), LineThroughOrigin(0.5))
    assert contains(plane, (3.0, 0.0), AxisLattice())
    assert not contains(plane, (0.0, 0.0), AxisLattice())
    assert not contains(plane, (2.5, 0.0), AxisLattice())
    assert contains(line, 2.0, Interval(-2.0, 2.0))


# -- set constructors --------------------------------------------------------------


def test_finite_points_validation():
    with pytest.raises(ValueError):
        FinitePoints(())
    with pytest.raises(ValueError):
        FinitePoints((1.0, 1.0))
    assert FinitePoints.of([1.0, 2.0, 1.0]).points == (1.0, 2.0)


def test_union_flattens_and_merges():
    U = union(FinitePoints((1.0,)), UnionOf((Interval(0.0, 1.0), FinitePoints((2.0,)))))
    assert isinstance(U, UnionOf)
    finite = [m for m in U.members if isinstance(m, FinitePoints)]
    assert len(finite) == 1 and set(finite[0].points) == {1.0, 2.0}
    assert union(Interval(0.0, 1.0), WholeSpace()) == WholeSpace()


def test_bad_interval():
    with pytest.raises(ValueError):
        Interval(2.0, 1.0)


# -- excess and sup deviation --------------------------------------------------------


def test_excess_farthest_sample(line):
    assert excess(line, finite_probe("P", [0.0, 1.0, 2.0]), FinitePoints((0.0,))) == 2.0


def test_indicator_probe_sees_point_outside(discrete):
    # m = 5, n = 3: the probe of [-5, 5] contains points outside [-3, 3]
    P = ProbeSet("[-5,5]", tuple(grid(-5.0, 5.0, 0.5)), DiscreteIndicator(-5.0, 5.0))
    assert excess(discrete, P, Interval(-3.0, 3.0)) == 1.0


def test_indicator_oracle_finds_gap_the_sample_misses(discrete):
    # the sample is only the integers; the oracle still sees 0.5 outside A
    P = ProbeSet("[-2,2]", (-2.0, -1.0, 0.0, 1.0, 2.0), DiscreteIndicator(-2.0, 2.0))
    A = FinitePoints((-2.0, -1.0, 0.0, 1.0, 2.0))
    assert sup_deviation(discrete, P, A) == (1.0, True)
    plain = ProbeSet("ints", P.sample)
    assert sup_deviation(discrete, plain, A) == (0.0, False)


@pytest.mark.parametrize("n, M", [(1, 2), (3, 10), (10, 20)])
def test_lattice_prefix_deviation_closed_form(plane, n, M):
    P = finite_probe("N", [(float(k), 0.0) for k in range(1, M + 1)])
    value = excess(plane, P, LineThroughOrigin(1.0 / n))
    assert value == pytest.approx(M / math.sqrt(n * n + 1), rel=1e-15)


def test_lattice_oracle_is_infinite_unless_sets_agree(plane):
    P = ProbeSet("N×{0}", tuple((float(k), 0.0) for k in range(1, 5)), PointToLine(0.0))
    assert sup_deviation(plane, P, LineThroughOrigin(0.0), LineThroughOrigin(0.25)) == (math.inf, True)
    assert sup_deviation(plane, P, LineThroughOrigin(0.25), LineThroughOrigin(0.25)) == (0.0, True)
    assert sup_deviation(plane, P, LineThroughOrigin(0.0), LineThroughOrigin(0.25), cap=1.0) == (1.0, True)


def test_oracle_below_sample_is_reported(plane):
    # a lattice oracle that does not describe its sample
    P = ProbeSet("bad", ((0.0, 5.0),), PointToLine(0.0))
    with pytest.raises(OracleInconsistency):
        sup_deviation(plane, P, LineThroughOrigin(0.0), WholeSpace())


def test_saturation_returns_cap(line):
    P = finite_probe("P", [0.0, 10.0, 20.0])
    assert sup_deviation(line, P, FinitePoints((0.0,)), cap=1.0) == (1.0, True)
    assert sup_deviation(line, P, FinitePoints((0.0,)), cap=100.0) == (20.0, True)


def test_probe_union_keeps_parts_when_oracles_differ(discrete):
    a = ProbeSet("[-1,1]", (-1.0, 0.0, 1.0), DiscreteIndicator(-1.0, 1.0))
    b = finite_probe("{5}", [5.0])
    u = probe_union("u", [a, b])
    assert u.parts == (a, b)
    assert u.is_exact
    assert sup_deviation(discrete, u, Interval(-0.5, 0.5)) == (1.0, True)
    both = probe_union("v", [finite_probe("x", [1.0]), finite_probe("y", [2.0, 1.0])])
    assert both.sample == (1.0, 2.0) and isinstance(both.exact, Exhaustive) and not both.parts


# -- enlargement inclusion --------------------------------------------------------


def test_small_inclusion_passes(line):
    v = inclusion_in_enlargement(line, finite_probe("P", [0.5]), FinitePoints((0.0,)), 1.0)
    assert v.passed


def test_pi_e_near_rationals(line):
    P = finite_probe("pi,e", [math.pi, math.e])
    assert inclusion_in_enlargement(line, P, FinitePoints((3.14, 2.72)), 0.1).passed


def test_irrational_witnesses_escape_intervals_plus_countable(discrete):
    n = 4
    C = union(Interval(-n, n), FinitePoints(tuple(sqrt2_multiples(n))))
    B = finite_probe("B", [s * (k + math.sqrt(2) / 2) for k in range(1, 8) for s in (-1.0, 1.0)])
    v = inclusion_in_enlargement(discrete, B, C, 0.5)
    assert v.failed
    assert abs(v.witness.point) > n and v.witness.value == 1.0


def test_enlargement_is_open(line):
    P = finite_probe("P", [1.0])
    assert inclusion_in_enlargement(line, P, FinitePoints((0.0,)), 1.0).failed
    assert inclusion_in_enlargement(line, P, FinitePoints((0.0,)), 1.0 + 1e-6).passed


def test_eps_must_be_positive(line):
    with pytest.raises(ValueError):
        inclusion_in_enlargement(line, finite_probe("P", [0.0]), FinitePoints((0.0,)), 0.0)
