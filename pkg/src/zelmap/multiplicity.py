"""Block one-counts of the attached permutation and interval multiplicities.

The permutation attached to a rank table carries a square table of block
one-counts (its multiplicity matrix).  Those counts are not arbitrary:
below the blocked diagonal the count at ([x], [y]) is the multiplicity of
the interval summand [y, x], one step above it the count collects every
interval that crosses the edge {x, x+1}, and further above it vanishes.
This module computes the counts from a permutation, predicts them from
interval multiplicities, recovers the multiplicities from a rank table in
closed form, and checks the rank-plus-dimension bookkeeping that ties the
two sides together.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right

from .quiver import QuiverA, col_order, critical_points, interval_windows, row_order
from .representation import RankParameters
from .zelevinsky import Permutation


def mult_matrix(w: Permutation) -> dict:
    """Block one-counts of a blocked permutation at every ([x], [y]).

    Computed by inclusion-exclusion of southwest block counts, which also
    makes sense for any monotone target table.
    """
    row_seq, col_seq, _ = w._require_blocking()
    counts = {}
    for i, x in enumerate(row_seq):
        s = row_seq[i + 1] if i + 1 < len(row_seq) else None
        for j, y in enumerate(col_seq):
            v = col_seq[j - 1] if j else None
            c = w.sw_block_rank(x, y)
            if s is not None:
                c -= w.sw_block_rank(s, y)
            if v is not None:
                c -= w.sw_block_rank(x, v)
            if s is not None and v is not None:
                c += w.sw_block_rank(s, v)
            counts[(x, y)] = c
    return counts


def predicted_mult_matrix(q: QuiverA, mults) -> dict:
    """Block one-counts predicted from interval multiplicities alone.

    At ([x], [y]): the multiplicity of [y, x] when y <= x, the number of
    intervals crossing the edge {x, x+1} when y == x + 1, zero otherwise.
    """
    mults = dict(mults)
    counts = {}
    for x in row_order(q):
        for y in col_order(q):
            if y <= x:
                counts[(x, y)] = mults.get((y, x), 0)
            elif y == x + 1:
                counts[(x, y)] = sum(
                    m for (p, t), m in mults.items() if p <= x < y <= t
                )
            else:
                counts[(x, y)] = 0
    return counts


def multiplicities_from_ranks(r: RankParameters) -> dict:
    """Interval multiplicities recovered from a rank table in closed form.

    Every multiplicity is an alternating sum of at most four table entries
    around the interval, read at intervals widened past each endpoint's
    neighbouring critical points, with an overall sign that flips once per
    critical point the interval contains.
    """
    q = r.quiver
    n = q.n
    crits = critical_points(q)
    crit_set = set(crits)

    def term(alpha: int, beta: int) -> int:
        alpha, beta = max(alpha, 1), min(beta, n)
        return 0 if alpha >= beta else r.get(alpha, beta)

    def sign(p: int, t: int) -> int:
        inside = bisect_right(crits, t) - bisect_left(crits, p)
        return -1 if inside % 2 else 1

    out = {}
    for p in range(1, n + 1):
        for t in range(p, n + 1):
            if p == t and p in crit_set:
                m = r.dims[p - 1] - term(p - 1, p + 1)
            elif p not in crit_set and t not in crit_set:
                m = sign(p, t) * (
                    r.get(p, t) - r.get(p - 1, t) - r.get(p, t + 1) + r.get(p - 1, t + 1)
                )
            else:
                if p in crit_set:
                    in_p = crits[crits.index(p) + 1]
                    out_p = p - 1
                else:
                    in_p, out_p = p, p - 1
                if t in crit_set:
                    in_t = crits[crits.index(t) - 1]
                    out_t = t + 1
                else:
                    in_t, out_t = t, t + 1
                m = sign(p, t) * (
                    term(in_p, in_t)
                    - term(out_p, in_t)
                    - term(in_p, out_t)
                    + term(out_p, out_t)
                )
            if m:
                out[(p, t)] = m
    return out


def realizable_matrix(q: QuiverA, dims, counts) -> dict | None:
    """Interval multiplicities behind a candidate count table, or None.

    A table of block counts comes from the permutation of a representation
    with the given dimensions exactly when it is nonnegative, vanishes
    more than one step above the blocked diagonal, agrees with its own
    below-diagonal entries on the edge-crossing sums, and has the right
    row and column totals.
    """
    dims = tuple(dims)
    counts = dict(counts)
    rows, cols = row_order(q), col_order(q)
    if set(counts) != {(x, y) for x in rows for y in cols}:
        return None
    if any(c < 0 or int(c) != c for c in counts.values()):
        return None
    mults = {
        (y, x): int(counts[(x, y)])
        for x in rows
        for y in cols
        if y <= x and counts[(x, y)]
    }
    for x, y in counts:
        if y > x + 1 and counts[(x, y)] != 0:
            return None
        if y == x + 1:
            want = sum(m for (p, t), m in mults.items() if p <= x < y <= t)
            if counts[(x, y)] != want:
                return None
    for x in rows:
        if sum(counts[(x, y)] for y in cols) != dims[x - 1]:
            return None
    for y in cols:
        if sum(counts[(x, y)] for x in rows) != dims[y - 1]:
            return None
    return mults


def ranksum_identity(r: RankParameters, a: int, b: int) -> dict:
    """Rank-plus-dimension bookkeeping at the window of one interval.

    The interval rank plus the dimensions of the diagonal blocks inside
    the window must equal the total of the predicted counts there.
    Returns {"lhs": int, "rhs": int, "ok": bool}.
    """
    q = r.quiver
    x0, y0 = interval_windows(q)[(a, b)]
    rows, cols = row_order(q), col_order(q)
    row_win = rows[rows.index(x0):]
    col_win = cols[: cols.index(y0) + 1]
    counts = predicted_mult_matrix(q, multiplicities_from_ranks(r))
    lhs = r.get(a, b) + sum(
        r.dims[x - 1] for x in row_win if x in set(col_win)
    )
    rhs = sum(counts[(x, y)] for x in row_win for y in col_win)
    return {"lhs": lhs, "rhs": rhs, "ok": lhs == rhs}
