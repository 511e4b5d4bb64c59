"""Combinatorics of oriented A_n quivers: orders, labels, windows, paths."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zelmap import (
    BoundaryError,
    QuiverA,
    col_label,
    col_order,
    constant_positions,
    critical_points,
    interval_windows,
    intervals,
    maximal_paths,
    path_between,
    row_label,
    row_order,
)
from zelmap.quiver import (
    east,
    interval_sources_sinks,
    left_anchor,
    north,
    right_anchor,
    south,
    west,
)

Q7 = QuiverA(7, "RRLLRL")

words = st.integers(2, 8).flatmap(
    lambda n: st.tuples(st.just(n), st.text(alphabet="LR", min_size=n - 1, max_size=n - 1))
)


def test_validation():
    with pytest.raises(ValueError):
        QuiverA(3, "R")  # word too short
    with pytest.raises(ValueError):
        QuiverA(2, "X")
    with pytest.raises(ValueError):
        QuiverA(0, "")
    assert QuiverA(1, "").n == 1


def test_edges_and_arrows():
    assert Q7.edge(1) == "R" and Q7.edge(3) == "L"
    # edge k joins k and k+1; L points leftward
    assert (Q7.arrow_source(1), Q7.arrow_target(1)) == (1, 2)
    assert (Q7.arrow_source(3), Q7.arrow_target(3)) == (4, 3)
    with pytest.raises(ValueError):
        Q7.edge(7)
    with pytest.raises(ValueError):
        Q7.edge(0)


def test_critical_points_golden():
    assert critical_points(Q7) == (1, 3, 5, 6, 7)
    assert critical_points(QuiverA(4, "RRR")) == (1, 4)
    assert critical_points(QuiverA(4, "LLL")) == (1, 4)
    assert critical_points(QuiverA(3, "RL")) == (1, 2, 3)
    assert critical_points(QuiverA(3, "LR")) == (1, 2, 3)


def test_maximal_paths_golden():
    rights, lefts = maximal_paths(Q7)
    assert rights == [(1, 2, 3), (5, 6)]
    assert lefts == [(5, 4, 3), (7, 6)]
    rights, lefts = maximal_paths(QuiverA(4, "RRR"))
    assert rights == [(1, 2, 3, 4)] and lefts == []


def test_orders_golden():
    assert row_order(Q7) == (1, 2, 5, 7, 6, 4, 3)
    assert col_order(Q7) == (7, 5, 4, 1, 2, 3, 6)
    assert row_order(QuiverA(5, "RRRR")) == (1, 2, 3, 4, 5)
    assert col_order(QuiverA(5, "RRRR")) == (1, 2, 3, 4, 5)
    assert row_order(QuiverA(3, "LL")) == (3, 2, 1)
    assert col_order(QuiverA(3, "LL")) == (3, 2, 1)


@given(words)
def test_orders_are_vertex_permutations(nw):
    n, word = nw
    q = QuiverA(n, word)
    assert sorted(row_order(q)) == list(range(1, n + 1))
    assert sorted(col_order(q)) == list(range(1, n + 1))


def test_navigation():
    assert north(Q7, 2) == 1 and south(Q7, 2) == 5
    assert west(Q7, 4) == 5 and east(Q7, 4) == 1
    with pytest.raises(BoundaryError):
        north(Q7, 1)
    with pytest.raises(BoundaryError):
        east(Q7, 6)
    with pytest.raises(ValueError):
        south(Q7, 9)


def test_anchors():
    assert left_anchor(Q7, 2) == 2  # noncritical: itself
    assert left_anchor(Q7, 5) == 3  # critical: previous critical point
    assert left_anchor(Q7, 1) == 1
    assert right_anchor(Q7, 4) == 4
    assert right_anchor(Q7, 5) == 6
    assert right_anchor(Q7, 7) == 7


def test_interval_windows_golden():
    win = interval_windows(Q7)
    assert win[(1, 2)] == (2, 1)
    assert win[(2, 4)] == (3, 2)
    assert win[(1, 7)] == (6, 1)
    assert win[(4, 7)] == (6, 5)
    assert len(win) == 21


@given(words)
def test_window_partition(nw):
    """Windows are injective; constants fill the rest of the n x n grid."""
    n, word = nw
    q = QuiverA(n, word)
    win = interval_windows(q)
    const = constant_positions(q)
    assert len(win) == len(intervals(q)) == n * (n - 1) // 2
    assert len(const) == n * (n + 1) // 2
    assert set(win.values()).isdisjoint(const)
    grid = {(x, y) for x in row_order(q) for y in col_order(q)}
    assert set(win.values()) | const == grid
    for (a, b), (x, y) in win.items():
        assert (x, y) == (row_label(q, b), col_label(q, a))


def test_interval_sources_sinks_golden():
    assert interval_sources_sinks(Q7, 1, 7) == ((7, 5, 1), (6, 3))
    assert interval_sources_sinks(Q7, 2, 4) == ((4, 2), (3,))
    assert interval_sources_sinks(QuiverA(2, "R"), 1, 2) == ((1,), (2,))


def test_path_between():
    assert path_between(Q7, 1, 3) == (1, 2)
    assert path_between(Q7, 5, 3) == (4, 3)  # leftward, application order
    assert path_between(Q7, 3, 5) is None
    assert path_between(Q7, 7, 6) == (6,)
    assert path_between(Q7, 5, 6) == (5,)
    assert path_between(Q7, 1, 4) is None
    assert path_between(Q7, 4, 4) == ()


@given(words)
def test_paths_follow_arrows(nw):
    n, word = nw
    q = QuiverA(n, word)
    for y in range(1, n + 1):
        for x in range(1, n + 1):
            ks = path_between(q, y, x)
            if ks is None:
                continue
            at = y
            for k in ks:
                assert q.arrow_source(k) == at
                at = q.arrow_target(k)
            assert at == x
