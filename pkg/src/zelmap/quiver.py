"""Orientation combinatorics for type-A quivers.

A quiver here is a path on vertices 1..n whose i-th edge (joining i and
i+1) is directed Right (i -> i+1) or Left (i+1 -> i), encoded as a word
over {"R", "L"}.  Everything else is derived from the word:

- critical points: sources and sinks, always including 1 and n;
- maximal directed runs, listed source-to-target and numbered from the
  left within each direction;
- the two total orders `row_order` and `col_order` on the vertex set that
  label block rows and block columns of every blocked matrix built by the
  rest of the library;
- the labelling maps `row_label` / `col_label` that attach an interval
  [a, b] to a block position, and their complement `constant_positions`.

Sequence navigation exposes the four compass moves: north/south are the
previous/next label in the row order, west/east in the column order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


class BoundaryError(LookupError):
    """Navigation fell off the end of a sequence (no neighbour there)."""


@dataclass(frozen=True)
class QuiverA:
    """A type-A quiver: vertex count and the orientation word.

    >>> QuiverA(3, "RL").arrows
    'RL'
    >>> QuiverA(1, "")
    QuiverA(n=1, arrows='')
    """

    n: int
    arrows: str

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one vertex")
        if len(self.arrows) != self.n - 1:
            raise ValueError(
                f"orientation word has length {len(self.arrows)}, expected {self.n - 1}"
            )
        if any(c not in "LR" for c in self.arrows):
            raise ValueError("orientation word must be over {'L', 'R'}")

    def edge(self, k: int) -> str:
        """Direction of edge k (1-based; edge k joins vertices k and k+1)."""
        if not (1 <= k <= self.n - 1):
            raise ValueError(f"edge index {k} out of range")
        return self.arrows[k - 1]

    def arrow_source(self, k: int) -> int:
        return k if self.edge(k) == "R" else k + 1

    def arrow_target(self, k: int) -> int:
        return k + 1 if self.edge(k) == "R" else k


def critical_points(q: QuiverA) -> tuple[int, ...]:
    """Sources and sinks in increasing order; 1 and n are always critical.

    >>> critical_points(QuiverA(7, "RRLLRL"))
    (1, 3, 5, 6, 7)
    >>> critical_points(QuiverA(4, "RRR"))
    (1, 4)
    >>> critical_points(QuiverA(1, ""))
    (1,)
    """
    out = []
    for v in range(1, q.n + 1):
        inward = []
        if v > 1:
            inward.append(q.arrow_target(v - 1) == v)
        if v < q.n:
            inward.append(q.arrow_target(v) == v)
        if all(inward) or not any(inward):
            out.append(v)
    return tuple(out)


def is_critical(q: QuiverA, x: int) -> bool:
    return x in critical_points(q)


def maximal_paths(q: QuiverA) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Maximal directed runs, (rightward list, leftward list).

    Each run is a vertex sequence ordered source-to-target, so rightward
    runs ascend and leftward runs descend.  Runs are numbered from the
    left within each list.

    >>> maximal_paths(QuiverA(7, "RRLLRL"))
    ([(1, 2, 3), (5, 6)], [(5, 4, 3), (7, 6)])
    """
    rights: list[tuple[int, ...]] = []
    lefts: list[tuple[int, ...]] = []
    k = 1
    while k <= q.n - 1:
        d = q.edge(k)
        j = k
        while j + 1 <= q.n - 1 and q.edge(j + 1) == d:
            j += 1
        if d == "R":
            rights.append(tuple(range(k, j + 2)))
        else:
            lefts.append(tuple(range(j + 1, k - 1, -1)))
        k = j + 1
    return rights, lefts


@lru_cache(maxsize=None)
def _orders(n: int, arrows: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
    q = QuiverA(n, arrows)
    rights, lefts = maximal_paths(q)
    row: list[int] = []
    for run in rights:
        row.extend(run[:-1])  # drop the target end
    row.append(q.n)
    for run in reversed(lefts):
        row.extend(run[1:])  # drop the source end
    col: list[int] = []
    for run in reversed(lefts):
        col.extend(run[:-1])  # drop the target end
    col.append(1)
    for run in rights:
        col.extend(run[1:])  # drop the source end
    assert sorted(row) == list(range(1, q.n + 1)), "row order must permute the vertices"
    assert sorted(col) == list(range(1, q.n + 1)), "column order must permute the vertices"
    return tuple(row), tuple(col)


def row_order(q: QuiverA) -> tuple[int, ...]:
    """The vertex order labelling block rows (north to south).

    >>> row_order(QuiverA(7, "RRLLRL"))
    (1, 2, 5, 7, 6, 4, 3)
    >>> row_order(QuiverA(4, "RRR"))
    (1, 2, 3, 4)
    """
    return _orders(q.n, q.arrows)[0]


def col_order(q: QuiverA) -> tuple[int, ...]:
    """The vertex order labelling block columns (west to east).

    >>> col_order(QuiverA(7, "RRLLRL"))
    (7, 5, 4, 1, 2, 3, 6)
    >>> col_order(QuiverA(2, "L"))
    (2, 1)
    """
    return _orders(q.n, q.arrows)[1]


# ----------------------------------------------------------------------
# sequence navigation


def nav_prev(seq, x):
    """Previous element before x in seq; BoundaryError at the front."""
    seq = tuple(seq)
    if x not in seq:
        raise ValueError(f"vertex {x} is not in the sequence")
    i = seq.index(x)
    if i == 0:
        raise BoundaryError(f"{x} is first; no previous element")
    return seq[i - 1]


def nav_next(seq, x):
    """Next element after x in seq; BoundaryError at the back."""
    seq = tuple(seq)
    if x not in seq:
        raise ValueError(f"vertex {x} is not in the sequence")
    i = seq.index(x)
    if i == len(seq) - 1:
        raise BoundaryError(f"{x} is last; no next element")
    return seq[i + 1]


def north(q: QuiverA, x: int) -> int:
    return nav_prev(row_order(q), x)


def south(q: QuiverA, x: int) -> int:
    return nav_next(row_order(q), x)


def west(q: QuiverA, y: int) -> int:
    return nav_prev(col_order(q), y)


def east(q: QuiverA, y: int) -> int:
    return nav_next(col_order(q), y)


# ----------------------------------------------------------------------
# anchors and interval labels


def left_anchor(q: QuiverA, x: int) -> int:
    """x itself if non-critical, else the previous critical point (1 at the edge).

    >>> q = QuiverA(7, "RRLLRL")
    >>> left_anchor(q, 2), left_anchor(q, 5), left_anchor(q, 1)
    (2, 3, 1)
    """
    crit = critical_points(q)
    if x not in crit:
        return x
    i = crit.index(x)
    return crit[i - 1] if i > 0 else 1


def right_anchor(q: QuiverA, x: int) -> int:
    """x itself if non-critical, else the next critical point (n at the edge).

    >>> q = QuiverA(7, "RRLLRL")
    >>> right_anchor(q, 4), right_anchor(q, 5), right_anchor(q, 7)
    (4, 6, 7)
    """
    crit = critical_points(q)
    if x not in crit:
        return x
    i = crit.index(x)
    return crit[i + 1] if i + 1 < len(crit) else q.n


def col_label(q: QuiverA, a: int) -> int:
    """Column label attached to the left endpoint a of an interval (a < n).

    a's block column is its left anchor if a starts a rightward edge,
    otherwise the label one step west of the anchor.
    """
    if not (1 <= a < q.n):
        raise ValueError(f"left endpoint must satisfy 1 <= a < n, got {a}")
    anchor = left_anchor(q, a)
    if q.edge(a) == "R":  # a is a source of the subquiver on [a, n]
        return anchor
    return west(q, anchor)


def row_label(q: QuiverA, b: int) -> int:
    """Row label attached to the right endpoint b of an interval (b > 1).

    b's block row is its right anchor if b ends a rightward edge,
    otherwise the label one step south of the anchor.
    """
    if not (1 < b <= q.n):
        raise ValueError(f"right endpoint must satisfy 1 < b <= n, got {b}")
    anchor = right_anchor(q, b)
    if q.edge(b - 1) == "R":  # b is a sink of the subquiver on [1, b]
        return anchor
    return south(q, anchor)


def intervals(q: QuiverA) -> list[tuple[int, int]]:
    """All intervals [a, b] with 1 <= a < b <= n, lexicographically."""
    return [(a, b) for a in range(1, q.n) for b in range(a + 1, q.n + 1)]


@lru_cache(maxsize=None)
def _window_maps(n: int, arrows: str):
    q = QuiverA(n, arrows)
    win = {}
    for a, b in intervals(q):
        win[(a, b)] = (row_label(q, b), col_label(q, a))
    if len(set(win.values())) != len(win):
        raise AssertionError("interval->window map must be injective")
    grid = {(x, y) for x in row_order(q) for y in col_order(q)}
    const = frozenset(grid - set(win.values()))
    if len(const) != n * (n + 1) // 2:
        raise AssertionError("constant-position count must be n(n+1)/2")
    return win, const


def interval_windows(q: QuiverA) -> dict[tuple[int, int], tuple[int, int]]:
    """Injective map [a, b] -> (row label, column label) of its block window.

    >>> interval_windows(QuiverA(7, "RRLLRL"))[(1, 2)]
    (2, 1)
    >>> interval_windows(QuiverA(7, "RRLLRL"))[(2, 4)]
    (3, 2)
    >>> interval_windows(QuiverA(7, "RRLLRL"))[(1, 7)]
    (6, 1)
    """
    win, _ = _window_maps(q.n, q.arrows)
    return dict(win)


def constant_positions(q: QuiverA) -> frozenset[tuple[int, int]]:
    """Grid positions not hit by any interval; always n(n+1)/2 of them."""
    _, const = _window_maps(q.n, q.arrows)
    return const


# ----------------------------------------------------------------------
# cut subquivers


def interval_sources_sinks(q: QuiverA, a: int, b: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Sources and sinks of the subquiver cut to [a, b], both descending.

    >>> q = QuiverA(7, "RRLLRL")
    >>> interval_sources_sinks(q, 1, 7)
    ((7, 5, 1), (6, 3))
    >>> interval_sources_sinks(q, 2, 4)
    ((4, 2), (3,))
    """
    if not (1 <= a < b <= q.n):
        raise ValueError(f"invalid interval [{a}, {b}]")
    sou, sin_ = [], []
    for v in range(b, a - 1, -1):
        inward = []
        if v > a:
            inward.append(q.arrow_target(v - 1) == v)
        if v < b:
            inward.append(q.arrow_target(v) == v)
        if not any(inward):
            sou.append(v)
        elif all(inward):
            sin_.append(v)
    return tuple(sou), tuple(sin_)


def path_between(q: QuiverA, y: int, x: int) -> tuple[int, ...] | None:
    """Edge indices of the directed path y -> x, or None if there is none.

    Rightward paths need every edge in [y, x-1] to be "R"; leftward paths
    need every edge in [x, y-1] to be "L".  Edges are returned in
    application order (first arrow first).
    """
    if y == x:
        return ()
    if y < x:
        ks = tuple(range(y, x))
        return ks if all(q.edge(k) == "R" for k in ks) else None
    ks = tuple(range(y - 1, x - 1, -1))
    return ks if all(q.edge(k) == "L" for k in ks) else None
