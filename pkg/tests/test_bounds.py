import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from swcapacity.bounds import (
    bounds_for,
    bounds_kleinberg,
    bounds_navigable_ring,
    bounds_rewiring,
    bounds_shortcuts,
    cw_kleinberg,
    cw_navigable_ring,
    cw_shortcuts,
    epsilon,
    fmt,
    lemma1_mincut,
)
from swcapacity.expectation import (
    expected_graph_kleinberg,
    expected_graph_navigable_ring,
    expected_graph_shortcuts,
    kleinberg_normalizer_grid,
    lattice_weights_graph,
)
from swcapacity.graph import ParameterError, brute_force_min_cut
from swcapacity.models import KleinbergParams, NavigableRingParams, RewiringParams, ShortcutParams


@pytest.mark.parametrize("w1,w2,want", [(1, 0, 4), (1, 0.5, 6.5), (0, 1, 5)])
def test_two_weight_mincut_examples(w1, w2, want):
    assert lemma1_mincut(10, 4, w1, w2) == want


def test_two_weight_mincut_rejects_bad_k():
    with pytest.raises(ParameterError):
        lemma1_mincut(10, 3, 1, 1)
    with pytest.raises(ParameterError):
        lemma1_mincut(10, 4, -1, 1)


def test_two_weight_mincut_oracle_sweep():
    misses = []
    for n in range(6, 15):
        for k in (2, 4):
            for w1 in (0, 0.25, 0.5, 1):
                for w2 in (0, 0.25, 0.5, 1):
                    bf = brute_force_min_cut(lattice_weights_graph(n, k, w1, w2)).value
                    if abs(bf - lemma1_mincut(n, k, w1, w2)) > 1e-9:
                        misses.append((n, k, w1, w2, bf))
    # n-k-1 = 1 leaves a perfect matching off the lattice; with w1 = 0 the graph is disconnected
    assert misses == [(6, 4, 0, w2, 0.0) for w2 in (0.25, 0.5, 1)]


# -- epsilon -------------------------------------------------------------------------


def test_epsilon_examples():
    assert epsilon(1, 1000, 20) == pytest.approx(1.439558, abs=1e-6)
    assert epsilon(1, 1000, 509.5) == pytest.approx(0.28522, abs=1e-5)


@pytest.mark.parametrize("args", [(0, 100, 5), (1, 1, 5), (1, 100, 0)])
def test_epsilon_errors(args):
    with pytest.raises(ParameterError):
        epsilon(*args)


@given(st.floats(0.1, 1e4), st.floats(0.1, 1e4))
def test_epsilon_decreasing_in_cw(a, b):
    if a == b:
        return
    lo, hi = sorted((a, b))
    assert epsilon(1, 500, lo) > epsilon(1, 500, hi)


# -- shortcuts -----------------------------------------------------------------------


@pytest.mark.parametrize("n,k,p,want", [(1000, 20, 0, 20), (1000, 20, 0.5, 509.5), (10, 4, 0.3, 5.5)])
def test_cw_shortcuts_examples(n, k, p, want):
    assert cw_shortcuts(ShortcutParams(n, k, p)) == pytest.approx(want, abs=1e-12)


def test_bounds_shortcuts_figure_point():
    rep = bounds_shortcuts(ShortcutParams(1000, 20, 0.5), 1)
    assert rep.c_w == pytest.approx(509.5)
    assert rep.epsilon == pytest.approx(0.28522, abs=1e-5)
    assert rep.lower == pytest.approx(364.2, abs=0.05)
    assert rep.upper == pytest.approx(654.8, abs=0.05)
    assert rep.upper - rep.lower == pytest.approx(2 * rep.epsilon * rep.c_w, abs=1e-9)
    assert not rep.clamped


def test_bounds_shortcuts_clamped_at_p0():
    rep = bounds_shortcuts(ShortcutParams(1000, 20, 0.0), 1)
    assert rep.clamped
    assert rep.lower == 0.0 and rep.lower_raw < 0


@given(st.floats(0, 1), st.floats(0, 1))
def test_cw_shortcuts_strictly_increasing(a, b):
    if abs(a - b) < 1e-12:
        return
    lo, hi = sorted((a, b))
    assert cw_shortcuts(ShortcutParams(100, 10, lo)) < cw_shortcuts(ShortcutParams(100, 10, hi))


def test_cw_shortcuts_oracle_sweep():
    for n in range(8, 15):
        for k in (2, 4):
            for p in (0, 0.25, 0.5, 1):
                params = ShortcutParams(n, k, p)
                bf = brute_force_min_cut(expected_graph_shortcuts(params)).value
                assert abs(bf - cw_shortcuts(params)) <= 1e-9


# -- rewiring ------------------------------------------------------------------------


@pytest.mark.parametrize("p", [0.0, 0.3, 1.0])
def test_bounds_rewiring_p_independent(p):
    rep = bounds_rewiring(RewiringParams(1000, 20, p), 1)
    assert rep.upper == 20
    assert rep.epsilon == pytest.approx(epsilon(1, 1000, 20))


def test_bounds_rewiring_unclamped_case():
    rep = bounds_rewiring(RewiringParams(100, 30, 0.2), 1)
    assert rep.epsilon == pytest.approx(0.9597, abs=1e-4)
    assert rep.lower == pytest.approx((1 - rep.epsilon) * 30, abs=1e-12)
    assert rep.lower == pytest.approx(1.2088, abs=1e-4)
    assert not rep.clamped


# -- Kleinberg -----------------------------------------------------------------------


def test_cw_kleinberg_q0():
    assert cw_kleinberg(KleinbergParams(10, 2, 0, 2)) == 5.0
    assert cw_kleinberg(KleinbergParams(10, 1, 0, 2)) == 2.0


def test_cw_kleinberg_q1_identity():
    n, h, r = 8, 1, 2
    s = kleinberg_normalizer_grid(n, h, r)
    tail = math.fsum(
        (x + y) ** -float(r) / s[x, y] for x in range(n) for y in range(n) if x + y > h
    )
    assert cw_kleinberg(KleinbergParams(n, h, 1, r)) == pytest.approx(h * (h + 3) / 2 + 1 + tail, abs=1e-12)


def _corners(n):
    return {0, n - 1, n * (n - 1), n * n - 1}


def test_cw_kleinberg_oracle_sweep_and_corner_cut():
    for n in (3, 4):
        for q in (0, 1, 2):
            for r in (0, 1, 2):
                p = KleinbergParams(n, 1, q, r)
                cut = brute_force_min_cut(expected_graph_kleinberg(p))
                assert abs(cut.value - cw_kleinberg(p)) <= 1e-9
                side = cut.partition if len(cut.partition) == 1 else frozenset(range(n * n)) - cut.partition
                assert len(side) == 1 and next(iter(side)) in _corners(n)


def test_cw_kleinberg_n4_q2_example():
    p = KleinbergParams(4, 1, 2, 2)
    assert brute_force_min_cut(expected_graph_kleinberg(p)).value == pytest.approx(cw_kleinberg(p), abs=1e-9)


def test_printed_sum_range_disagrees_with_oracle():
    p = KleinbergParams(4, 1, 1, 1)
    bf = brute_force_min_cut(expected_graph_kleinberg(p)).value
    assert abs(cw_kleinberg(p, "printed") - bf) > 0.5
    with pytest.raises(ParameterError):
        cw_kleinberg(p, "other")


def test_bounds_kleinberg_branches():
    small = bounds_kleinberg(KleinbergParams(6, 1, 1, 2), 1)
    assert small.tight_lower == 2 + 1  # deterministic branch
    assert small.epsilon == pytest.approx(epsilon(1, 36, small.c_w))
    fig = bounds_kleinberg(KleinbergParams(80, 2, 10, 2), 1)
    assert fig.clamped and fig.tight_lower == 5 + 10  # figure range still sits on the deterministic branch
    # the concentration branch needs many trials and slow decay
    big = bounds_kleinberg(KleinbergParams(80, 2, 400, 1), 1)
    assert big.tight_lower == pytest.approx((1 - big.epsilon) * big.c_w)
    assert big.tight_lower > 5 + 400
    for rep in (small, fig, big):
        assert rep.tight_lower >= rep.lower
        assert rep.upper == pytest.approx((1 + rep.epsilon) * rep.c_w)


# -- navigable ring ------------------------------------------------------------------


def test_cw_navigable_examples():
    assert cw_navigable_ring(NavigableRingParams(1600, 14, 0, 1)) == 14
    assert cw_navigable_ring(NavigableRingParams(10, 4, 1, 1)) == pytest.approx(6.0, abs=1e-12)
    p = NavigableRingParams(11, 4, 2, 1)
    assert cw_navigable_ring(p) == pytest.approx(brute_force_min_cut(expected_graph_navigable_ring(p)).value, abs=1e-9)


def test_cw_navigable_oracle_sweep():
    for n in range(8, 16):
        for k in (2, 4):
            for q in (0, 1, 2):
                for r in (0, 1, 2):
                    p = NavigableRingParams(n, k, q, r)
                    bf = brute_force_min_cut(expected_graph_navigable_ring(p)).value
                    assert abs(bf - cw_navigable_ring(p)) <= 1e-9


def test_bounds_navigable():
    for q in range(0, 11):
        rep = bounds_navigable_ring(NavigableRingParams(1600, 14, q, 1), 1)
        assert rep.tight_lower >= 14
        assert rep.epsilon == pytest.approx(epsilon(1, 1600, rep.c_w))
    rep = bounds_navigable_ring(NavigableRingParams(1600, 14, 0, 1), 1)
    assert rep.tight_lower == 14 and rep.upper == pytest.approx((1 + rep.epsilon) * 14)


# -- report plumbing -----------------------------------------------------------------


@pytest.mark.parametrize(
    "params",
    [
        ShortcutParams(200, 10, 0.3),
        RewiringParams(200, 10, 0.3),
        KleinbergParams(24, 1, 2, 2),
        NavigableRingParams(200, 14, 3, 1),
    ],
    ids=lambda p: p.model,
)
def test_report_invariants(params):
    rep = bounds_for(params, 1)
    assert rep.lower <= rep.upper
    assert rep.tight_lower >= rep.lower
    assert rep.clamped == (rep.epsilon > 1)
    header, row = rep.csv_header().split(","), rep.csv_row().split(",")
    assert header[0] == "model" and header[-6:] == ["c_w", "epsilon", "lower", "upper", "tight_lower", "clamped"]
    assert len(header) == len(row)


def test_bounds_csv_row_example():
    rep = bounds_shortcuts(ShortcutParams(1000, 20, 0.5), 1)
    assert rep.csv_header() == "model,n,k,p,d,c_w,epsilon,lower,upper,tight_lower,clamped"
    assert rep.csv_row().startswith("shortcuts,1000,20,0.5,1,509.5,0.285215,364.183,654.817,364.183,0")


def test_fmt():
    assert fmt(True) == "1" and fmt(False) == "0"
    assert fmt(3) == "3"
    assert fmt(1 / 3) == "0.333333"
    assert fmt(1234567.0) == "1.23457e+06"


def test_bounds_for_rejects_lattice_and_bad_d():
    with pytest.raises(ParameterError):
        bounds_for(object())
    with pytest.raises(ParameterError):
        bounds_shortcuts(ShortcutParams(100, 10, 0.1), 0)
