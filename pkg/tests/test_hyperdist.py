import math

import pytest

from hyperspace import (
    DiscreteIndicator,
    FinitePoints,
    Interval,
    IntervalValue,
    LineThroughOrigin,
    PointToLine,
    ProbeFamily,
    ProbeSet,
    WholeSpace,
    aw_distance,
    dsa,
    dsa_terms,
    entourage_test,
    finite_probe,
    hausdorff_distance,
    uniform_deviation,
)
from hyperspace.samples import ball_sample, dyadic_rationals, grid, rational_pairs, take


def indicator_family(count):
    return ProbeFamily("I", tuple(ProbeSet(f"[-{m},{m}]", tuple(float(k) for k in range(-m, m + 1)),
                                           DiscreteIndicator(-m, m)) for m in range(1, count + 1)))


def grid_oracle_hausdorff(line, A, C, lo, hi, step):
    xs = grid(lo, hi, step)
    def d(x, S):
        return min(abs(x - s) for s in S)
    return max(abs(d(x, A) - d(x, C)) for x in xs)


# -- uniform deviation and entourages ---------------------------------------------


def test_single_point(line):
    assert uniform_deviation(line, finite_probe("P", [0.0]), FinitePoints((1.0,)), FinitePoints((2.0,))) == 1.0


def test_identical_sets(line):
    A = FinitePoints((1.0, 4.0))
    assert uniform_deviation(line, finite_probe("P", grid(-3, 3, 0.5)), A, A) == 0.0


@pytest.mark.parametrize("n", [1, 2, 5])
def test_lattice_deviation_saturates(plane, n):
    M = math.ceil(math.sqrt(n * n + 1))
    P = finite_probe("N", [(float(k), 0.0) for k in range(1, M + 1)])
    assert uniform_deviation(plane, P, LineThroughOrigin(0.0), LineThroughOrigin(1.0 / n), cap=1.0) == 1.0


def test_entourage(line):
    P = finite_probe("P", [0.0])
    A, C = FinitePoints((1.0,)), FinitePoints((2.0,))
    assert entourage_test(line, P, 0.3, A, A)
    assert not entourage_test(line, P, 0.5, A, C)
    assert entourage_test(line, P, 2.0, A, C)
    assert not entourage_test(line, P, 1.0, A, C)


def test_cap_is_monotone(line):
    P = finite_probe("P", grid(-5, 5, 0.5))
    A, C = FinitePoints((0.0,)), FinitePoints((3.0,))
    values = [uniform_deviation(line, P, A, C, cap) for cap in (0.5, 1.0, 2.0, 3.0, 10.0)]
    assert values == sorted(values)


# -- the series metric ---------------------------------------------------------


def test_equal_sets_give_tail_only(line):
    F = ProbeFamily("F", tuple(finite_probe(f"{i}", [float(i)]) for i in range(50)))
    v = dsa(line, F, FinitePoints((0.0,)), FinitePoints((0.0,)), 40)
    assert (v.lo, v.hi) == (0.0, 2.0 ** -40)


@pytest.mark.parametrize("n", range(1, 21))
def test_growing_intervals_value(discrete, n):
    v = dsa(discrete, indicator_family(40), WholeSpace(), Interval(-n, n), 40)
    assert v.contains(2.0 ** -n)
    assert v.width <= 2.0 ** -40
    assert v.exact


def test_lattice_first_member_forces_half(plane):
    N = ProbeSet("N×{0}", tuple((float(k), 0.0) for k in range(1, 33)), PointToLine(0.0))
    rest = tuple(finite_probe(f"q{i}", [p]) for i, p in enumerate(take(rational_pairs(), 39)))
    F = ProbeFamily("A2", (N,) + rest)
    for n in (1, 10, 1000, 10 ** 6):
        v = dsa(plane, F, LineThroughOrigin(0.0), LineThroughOrigin(1.0 / n), 40)
        assert v.lo >= 0.5 - 2.0 ** -40


def test_terms_weighting(line):
    F = ProbeFamily("F", (finite_probe("a", [0.0]), finite_probe("b", [10.0])))
    terms = dsa_terms(line, F, FinitePoints((0.0,)), FinitePoints((0.25,)), 5)
    assert terms == [(0.125, True), (0.0625, True)]


def test_depth_must_be_positive(line):
    F = ProbeFamily("F", (finite_probe("a", [0.0]),))
    with pytest.raises(ValueError):
        dsa(line, F, FinitePoints((0.0,)), FinitePoints((1.0,)), 0)


def test_complete_family_has_no_tail(line):
    F = ProbeFamily("F", (finite_probe("X", [0.0, 1.0, 2.0]),), complete=True)
    v = dsa(line, F, FinitePoints((0.0,)), FinitePoints((2.0,)), 40)
    assert v.lo == v.hi == 0.5 * min(1.0, 2.0)


def test_sampled_probes_are_lower_only(line):
    F = ProbeFamily("F", (ProbeSet("grid", tuple(grid(-1, 1, 0.5))),))
    assert not dsa(line, F, FinitePoints((0.0,)), FinitePoints((0.1,)), 3).exact


def test_lo_monotone_in_depth(line):
    F = ProbeFamily("Q", tuple(finite_probe(f"{q!r}", [q]) for q in take(dyadic_rationals(), 30)))
    A, C = FinitePoints((0.0, 2.0)), FinitePoints((0.5,))
    los = [dsa(line, F, A, C, k).lo for k in range(1, 31)]
    assert los == sorted(los)


def test_interval_value_compare():
    assert IntervalValue(0.1, 0.2).compare(0.3) == "below"
    assert IntervalValue(0.3, 0.4).compare(0.3) == "above"
    assert IntervalValue(0.2, 0.4).compare(0.3) == "undecided"
    with pytest.raises(ValueError):
        IntervalValue(0.5, 0.4)


# -- Hausdorff and Attouch-Wets ----------------------------------------------------


def test_hausdorff_translation(line):
    P = finite_probe("X", grid(-10, 10, 0.01))
    assert hausdorff_distance(line, FinitePoints((0.0,)), FinitePoints((1.0,)), P) == pytest.approx(1.0)


def test_hausdorff_against_grid_oracle(line):
    P = finite_probe("X", grid(-20, 30, 0.05))
    H = hausdorff_distance(line, FinitePoints((0.0, 10.0)), FinitePoints((0.0,)), P)
    assert H == pytest.approx(10.0, abs=1e-9)
    assert H == pytest.approx(grid_oracle_hausdorff(line, (0.0, 10.0), (0.0,), -20, 30, 0.05), abs=1e-12)


def test_hausdorff_same_set(line):
    A = FinitePoints((1.0, 2.0))
    assert hausdorff_distance(line, A, A, finite_probe("X", grid(-3, 3, 0.5))) == 0.0


def ball_family(space, x0, count, step):
    return ProbeFamily("B", tuple(ProbeSet(f"B({n})", tuple(ball_sample(space, x0, n, step)))
                                  for n in range(1, count + 1)))


def test_aw_equal_sets(line):
    F = ball_family(line, 0.0, 10, 0.1)
    v = aw_distance(line, 0.0, FinitePoints((0.0,)), FinitePoints((0.0,)), 10, F)
    assert v.lo == 0.0 and v.hi == 2.0 ** -10


def test_aw_point_vs_shifted_point(line):
    # ||x| - |x - 1|| approaches 1 inside every ball of radius >= 1
    F = ball_family(line, 0.0, 20, 0.001)
    v = aw_distance(line, 0.0, FinitePoints((0.0,)), FinitePoints((1.0,)), 20, F)
    brute = math.fsum(2.0 ** -n * min(1.0, max(abs(abs(x) - abs(x - 1.0)) for x in F[n - 1].sample))
                      for n in range(1, 21))
    assert v.lo == pytest.approx(brute, abs=1e-15)
    assert v.hi >= 1.0 - 1e-3 and v.lo <= 1.0


def test_aw_rejects_probe_outside_ball(line):
    F = ProbeFamily("B", (finite_probe("B1", [0.0, 1.0]),))
    with pytest.raises(ValueError):
        aw_distance(line, 0.0, FinitePoints((0.0,)), FinitePoints((1.0,)), 1, F)


def test_aw_lines_decrease(plane):
    F = ball_family(plane, (0.0, 0.0), 6, 0.5)
    los = [aw_distance(plane, (0.0, 0.0), LineThroughOrigin(0.0), LineThroughOrigin(1.0 / n), 6, F).lo
           for n in (1, 2, 5, 10, 100, 1000)]
    assert all(a > b for a, b in zip(los, los[1:]))
    assert los[-1] < 1e-2
    # brute force over each ball sample with the closed-form point-line distance
    n = 100
    def dev(x):
        return abs(abs(x[1] - x[0] / n) / math.sqrt(1 + 1 / n ** 2) - abs(x[1]))
    expected = math.fsum(2.0 ** -r * min(1.0, max(dev(x) for x in F[r - 1].sample)) for r in range(1, 7))
    got = aw_distance(plane, (0.0, 0.0), LineThroughOrigin(0.0), LineThroughOrigin(1.0 / n), 6, F).lo
    assert got == pytest.approx(expected, rel=1e-12)
