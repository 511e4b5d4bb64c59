"""The blocked-matrix embedding of representations and its permutations.

A representation is packed into one big square matrix: identity blocks on
the blocked diagonal, each leftward edge map in the block just right of
its diagonal slot, each rightward path composite below the diagonal, and
zeros elsewhere.  Row blocks are listed in `row_order`, column blocks in
`col_order`, so every interval rank of the representation shows up as the
rank of a southwest corner of the big matrix, offset by the southwest
count of a fixed base-point permutation.

The rank table also determines a blocked permutation — the unique
"z-type" element of its double coset, largest in Bruhat order — and
membership of the big matrix in the closure region of that permutation
can be tested rank-by-rank.  This module builds all of these objects and
can invert the embedding, reporting the violated equations when a matrix
is not in the image.
"""

from __future__ import annotations

from .exact_linalg import BlockedMatrix, Matrix
from .quiver import (
    QuiverA,
    col_order,
    constant_positions,
    interval_windows,
    path_between,
    row_order,
)
from .representation import (
    RankParameters,
    Representation,
    rank_parameters,
    solve_interval_multiplicities,
)


class RealizabilityError(ValueError):
    """No representation has the requested rank table."""


class CellPatternError(ValueError):
    """A matrix violates the cell pattern (identity diagonal, fixed zeros)."""

    def __init__(self, blocks):
        self.blocks = tuple(blocks)
        super().__init__(f"cell pattern violated at blocks {list(self.blocks)}")


class NotInImageError(ValueError):
    """A matrix lies in the cell but not in the image of the embedding."""

    def __init__(self, generators):
        self.generators = tuple(generators)
        super().__init__(
            f"{len(self.generators)} image generator(s) do not vanish"
        )


# ----------------------------------------------------------------------
# permutations with optional block structure


class Permutation:
    """Permutation matrix in column convention: one_line[j-1] is the row
    of the 1 in column j, rows numbered top-down.

    An optional blocking (row_seq, col_seq, dims) labels row and column
    bands by vertices, enabling blockwise southwest counts.
    """

    __slots__ = ("one_line", "n", "blocking", "_row_start", "_col_start", "_sw")

    def __init__(self, one_line, blocking=None):
        one_line = tuple(int(x) for x in one_line)
        n = len(one_line)
        if sorted(one_line) != list(range(1, n + 1)):
            raise ValueError("not a permutation of 1..n")
        self.one_line = one_line
        self.n = n
        self._sw = None
        self._row_start = None
        self._col_start = None
        if blocking is not None:
            row_seq, col_seq, dims = blocking
            row_seq, col_seq = tuple(row_seq), tuple(col_seq)
            dims = dict(dims)
            if sum(dims[x] for x in row_seq) != n or sum(dims[y] for y in col_seq) != n:
                raise ValueError("block sizes do not sum to the permutation size")
            blocking = (row_seq, col_seq, dims)
            self._row_start, off = {}, 0
            for x in row_seq:
                self._row_start[x] = off
                off += dims[x]
            self._col_start, off = {}, 0
            for y in col_seq:
                self._col_start[y] = off
                off += dims[y]
        self.blocking = blocking

    def ones(self):
        """1-based (row, col) positions of the ones, by column."""
        return [(r, j + 1) for j, r in enumerate(self.one_line)]

    def sw_table(self):
        """t[i][j] = number of ones in the bottom-i rows and left-j columns."""
        if self._sw is None:
            n = self.n
            t = [[0] * (n + 1)]
            for i in range(1, n + 1):
                cut = n - i
                row = [0] * (n + 1)
                for j in range(1, n + 1):
                    row[j] = row[j - 1] + (1 if self.one_line[j - 1] > cut else 0)
                t.append(row)
            self._sw = tuple(tuple(r) for r in t)
        return self._sw

    def sw_rank(self, i: int, j: int) -> int:
        """Ones in the bottom-i x left-j window (also its rank)."""
        if not (0 <= i <= self.n and 0 <= j <= self.n):
            raise ValueError(f"window ({i}, {j}) out of range")
        return self.sw_table()[i][j]

    def _require_blocking(self):
        if self.blocking is None:
            raise ValueError("this operation needs a blocked permutation")
        return self.blocking

    def sw_block_rank(self, x, y) -> int:
        """Ones in the window from block row [x] down, through block col [y]."""
        row_seq, col_seq, dims = self._require_blocking()
        r0 = self._row_start[x]
        c1 = self._col_start[y] + dims[y]
        return self.sw_table()[self.n - r0][c1]

    def block_of_one(self, j: int):
        """(row label, col label) of the block containing column j's one."""
        row_seq, col_seq, dims = self._require_blocking()
        r = self.one_line[j - 1]
        x = next(v for v in reversed(row_seq) if self._row_start[v] < r)
        y = next(v for v in reversed(col_seq) if self._col_start[v] < j)
        return x, y

    def block_one_counts(self) -> dict:
        """Number of ones inside every block ([x], [y])."""
        row_seq, col_seq, dims = self._require_blocking()
        counts = {(x, y): 0 for x in row_seq for y in col_seq}
        for j in range(1, self.n + 1):
            counts[self.block_of_one(j)] += 1
        return counts

    def block_positions(self) -> dict:
        """1-based (row, col) pairs of the ones in each nonempty block."""
        row_seq, col_seq, dims = self._require_blocking()
        pos: dict = {}
        for j in range(1, self.n + 1):
            pos.setdefault(self.block_of_one(j), []).append((self.one_line[j - 1], j))
        return pos

    def __eq__(self, other) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.one_line == other.one_line

    __hash__ = None

    def __repr__(self) -> str:
        return f"Permutation({self.one_line})"


def _vertex_blocking(q: QuiverA, dims):
    return (row_order(q), col_order(q), {x: dims[x - 1] for x in range(1, q.n + 1)})


def zero_rep_perm(q: QuiverA, dims) -> Permutation:
    """Permutation of the embedded zero representation: the blocked identity.

    Block ([x], [x]) holds an identity for every vertex x and every other
    block is zero; this is the base point whose southwest counts offset
    every rank comparison.
    """
    row_seq, col_seq, d = _vertex_blocking(q, dims)
    row_start, off = {}, 0
    for x in row_seq:
        row_start[x] = off
        off += d[x]
    n = off
    one_line = [0] * n
    off = 0
    for y in col_seq:
        for t in range(d[y]):
            one_line[off + t] = row_start[y] + t + 1
        off += d[y]
    return Permutation(one_line, (row_seq, col_seq, d))


# ----------------------------------------------------------------------
# the embedding


def block_kind(q: QuiverA, x: int, y: int) -> str:
    """Classify block ([x], [y]) of the big matrix.

    'diagonal' identity; 'arrow' a single edge map (free); 'product' a
    rightward composite of length >= 2 (determined by its factors);
    'zero_pattern' zero on the whole cell; 'zero_image' a free cell
    coordinate that embedded representations never fill.
    """
    if x == y:
        return "diagonal"
    rp, cp = row_order(q), col_order(q)
    if rp.index(x) < rp.index(y) or cp.index(x) < cp.index(y):
        return "zero_pattern"
    if y == x + 1 and q.edge(x) == "L":
        return "arrow"
    if y < x and path_between(q, y, x) is not None:
        return "arrow" if x - y == 1 else "product"
    return "zero_image"


def zelevinsky_matrix(rep: Representation) -> BlockedMatrix:
    """Pack a representation into its big blocked square matrix."""
    q = rep.quiver
    d = rep.dims
    row_seq, col_seq, sizes = _vertex_blocking(q, d)
    grid = []
    for x in row_seq:
        row = []
        for y in col_seq:
            if y <= x and (ks := path_between(q, y, x)) is not None:
                if not ks:
                    m = Matrix.identity(rep.field, d[x - 1])
                else:
                    m = rep.maps[ks[0] - 1]
                    for k in ks[1:]:
                        m = rep.maps[k - 1] @ m
                row.append(m)
            elif y == x + 1 and q.edge(x) == "L":
                row.append(rep.maps[x - 1])
            else:
                row.append(Matrix.zeros(rep.field, d[x - 1], d[y - 1]))
        grid.append(row)
    return BlockedMatrix(Matrix.assemble(rep.field, grid), row_seq, col_seq, sizes)


def rank_identity_report(rep: Representation) -> dict:
    """Compare southwest block ranks of the big matrix with their targets.

    Every interval's window must show the interval rank plus the base
    point's count; every other position must show the base point's count
    alone.  Returns {"ok": bool, "failures": [(kind, key, got, want)]}.
    """
    q = rep.quiver
    ztab = zelevinsky_matrix(rep).block_rank_table()
    v = zero_rep_perm(q, rep.dims)
    r = rank_parameters(rep)
    failures = []
    for (a, b), (x, y) in interval_windows(q).items():
        got, want = ztab[(x, y)], r.get(a, b) + v.sw_block_rank(x, y)
        if got != want:
            failures.append(("window", (a, b), got, want))
    for x, y in constant_positions(q):
        got, want = ztab[(x, y)], v.sw_block_rank(x, y)
        if got != want:
            failures.append(("constant", (x, y), got, want))
    return {"ok": not failures, "failures": failures}


# ----------------------------------------------------------------------
# the permutation attached to a rank table


def target_rank_table(r: RankParameters) -> dict:
    """Southwest count targets at every block position for a rank table.

    The base-point count everywhere, plus r[a, b] at the window position
    of each interval [a, b].
    """
    q = r.quiver
    v = zero_rep_perm(q, r.dims)
    target = {
        (x, y): v.sw_block_rank(x, y) for x in row_order(q) for y in col_order(q)
    }
    for (a, b), pos in interval_windows(q).items():
        target[pos] += r.get(a, b)
    return target


def zelevinsky_perm(r: RankParameters) -> Permutation:
    """The blocked permutation whose southwest counts hit the rank targets.

    Within each block the ones are placed as an aligned identity; along a
    block row they fill from southwest to northeast and down a block
    column from northwest to southeast, which pins the permutation
    uniquely.  Raises RealizabilityError when no representation has the
    given table.
    """
    if solve_interval_multiplicities(r) is None:
        raise RealizabilityError("no representation has this rank table")
    q = r.quiver
    row_seq, col_seq, sizes = _vertex_blocking(q, r.dims)
    target = target_rank_table(r)
    counts = {}
    for i, x in enumerate(row_seq):
        s = row_seq[i + 1] if i + 1 < len(row_seq) else None
        for j, y in enumerate(col_seq):
            w = col_seq[j - 1] if j else None
            c = target[(x, y)]
            if s is not None:
                c -= target[(s, y)]
            if w is not None:
                c -= target[(x, w)]
            if s is not None and w is not None:
                c += target[(s, w)]
            counts[(x, y)] = c
    assert all(c >= 0 for c in counts.values()), "realizable table, negative block"

    row_start, off = {}, 0
    for x in row_seq:
        row_start[x] = off
        off += sizes[x]
    col_start, off = {}, 0
    for y in col_seq:
        col_start[y] = off
        off += sizes[y]
    n = off

    rows_of = {}
    for x in row_seq:
        avail = list(range(row_start[x] + 1, row_start[x] + sizes[x] + 1))
        for y in col_seq:
            c = counts[(x, y)]
            if c:
                rows_of[(x, y)] = avail[-c:]
                del avail[-c:]
            else:
                rows_of[(x, y)] = []
    cols_of = {}
    for y in col_seq:
        avail = list(range(col_start[y] + 1, col_start[y] + sizes[y] + 1))
        for x in row_seq:
            c = counts[(x, y)]
            cols_of[(x, y)] = avail[:c]
            del avail[:c]

    one_line = [0] * n
    for key, rr in rows_of.items():
        for r_idx, c_idx in zip(sorted(rr), sorted(cols_of[key])):
            one_line[c_idx - 1] = r_idx
    w = Permutation(one_line, (row_seq, col_seq, sizes))
    for pos, want in target.items():
        assert w.sw_block_rank(*pos) == want, "construction missed a target"
    return w


def is_z_type(w: Permutation) -> bool:
    """Whether a blocked permutation has the distinguished block shape.

    Ones must be increasing inside each block, run southwest-to-northeast
    along each block row, and northwest-to-southeast down each block
    column.
    """
    row_seq, col_seq, dims = w._require_blocking()
    pos = w.block_positions()
    for pts in pos.values():
        pts.sort()
        if any(a[1] >= b[1] for a, b in zip(pts, pts[1:])):
            return False
    for x in row_seq:
        prev = None
        for y in col_seq:
            pts = pos.get((x, y))
            if not pts:
                continue
            if prev is not None and min(p[0] for p in prev) <= max(p[0] for p in pts):
                return False
            prev = pts
    for y in col_seq:
        prev = None
        for x in row_seq:
            pts = pos.get((x, y))
            if not pts:
                continue
            if prev is not None and max(p[1] for p in prev) >= min(p[1] for p in pts):
                return False
            prev = pts
    return True


# ----------------------------------------------------------------------
# Bruhat comparisons and closure membership


def _same_shape(u: Permutation, w: Permutation):
    if u.n != w.n:
        raise ValueError("permutation sizes differ")


def bruhat_leq_full(u: Permutation, w: Permutation) -> bool:
    """Bruhat order via southwest counts: u <= w iff none of u's counts exceed w's."""
    _same_shape(u, w)
    tu, tw = u.sw_table(), w.sw_table()
    return all(
        tu[i][j] <= tw[i][j] for i in range(u.n + 1) for j in range(u.n + 1)
    )


def bruhat_leq(u: Permutation, w: Permutation) -> bool:
    """Blocked Bruhat comparison: southwest counts checked at every row
    index but only at block-column boundaries."""
    _same_shape(u, w)
    row_seq, col_seq, dims = w._require_blocking()
    tu, tw = u.sw_table(), w.sw_table()
    cuts, off = [], 0
    for y in col_seq:
        off += dims[y]
        cuts.append(off)
    return all(tu[i][j] <= tw[i][j] for j in cuts for i in range(u.n + 1))


def kl_membership(point: BlockedMatrix, w: Permutation, mode: str = "blockwise") -> bool:
    """Whether a blocked matrix satisfies the rank ceilings of a permutation.

    'rowwise' checks every southwest window whose right edge is a block
    column boundary; 'blockwise' checks only whole-block windows and
    requires the permutation to have the distinguished block shape (the
    two agree there).
    """
    row_seq, col_seq, dims = w._require_blocking()
    if (point.row_seq, point.col_seq) != (row_seq, col_seq) or point.dims != dims:
        raise ValueError("matrix and permutation have different blockings")
    n = point.matrix.rows
    if mode == "rowwise":
        tw = w.sw_table()
        for y in col_seq:
            _, c1 = point.col_range(y)
            prof = point.col_profile(y)
            if any(prof[i] > tw[i][c1] for i in range(n + 1)):
                return False
        return True
    if mode == "blockwise":
        if not is_z_type(w):
            raise ValueError("blockwise mode needs the distinguished block shape")
        ztab = point.block_rank_table()
        return all(
            ztab[(x, y)] <= w.sw_block_rank(x, y) for x in row_seq for y in col_seq
        )
    raise ValueError(f"unknown mode {mode!r}")


# ----------------------------------------------------------------------
# inverting the embedding


def zelevinsky_preimage(q: QuiverA, dims, point: Matrix) -> Representation:
    """Invert the embedding on its image, or explain the failure.

    Raises CellPatternError when the diagonal identities or the always-zero
    blocks are violated, NotInImageError (carrying polynomial generator
    strings in the matrix entries x_{i,j}, 1-based) when the point is in
    the cell but not in the image.  On success the returned representation
    embeds back to the given matrix exactly.
    """
    dims = tuple(int(d) for d in dims)
    n_total = sum(dims)
    if point.rows != n_total or point.cols != n_total:
        raise ValueError(
            f"point must be {n_total} square for these dimensions, got "
            f"{point.rows}x{point.cols}"
        )
    row_seq, col_seq, sizes = _vertex_blocking(q, dims)
    bm = BlockedMatrix(point, row_seq, col_seq, sizes)

    bad = []
    for x in row_seq:
        for y in col_seq:
            kind = block_kind(q, x, y)
            if kind == "diagonal" and not bm.block(x, y).is_identity():
                bad.append((x, y))
            elif kind == "zero_pattern" and not bm.block(x, y).is_zero():
                bad.append((x, y))
    if bad:
        raise CellPatternError(bad)

    gens = []
    for x in row_seq:
        for y in col_seq:
            kind = block_kind(q, x, y)
            if kind not in ("zero_image", "product"):
                continue
            blk = bm.block(x, y)
            r0, _ = bm.row_range(x)
            c0, _ = bm.col_range(y)
            if kind == "zero_image":
                for i in range(blk.rows):
                    for j in range(blk.cols):
                        if blk.entry(i, j) != 0:
                            gens.append(f"x_{{{r0 + i + 1},{c0 + j + 1}}}")
                continue
            mid = x - 1
            expected = bm.block(x, mid) @ bm.block(mid, y)
            if blk == expected:
                continue
            rm0, _ = bm.row_range(mid)
            cm0, _ = bm.col_range(mid)
            for i in range(blk.rows):
                for j in range(blk.cols):
                    if blk.entry(i, j) != expected.entry(i, j):
                        terms = [f"x_{{{r0 + i + 1},{c0 + j + 1}}}"]
                        terms += [
                            f"x_{{{r0 + i + 1},{cm0 + k + 1}}}"
                            f"x_{{{rm0 + k + 1},{c0 + j + 1}}}"
                            for k in range(sizes[mid])
                        ]
                        gens.append(" - ".join(terms))
    if gens:
        raise NotInImageError(gens)

    maps = []
    for k in range(1, q.n):
        if q.edge(k) == "R":
            maps.append(bm.block(k + 1, k))
        else:
            maps.append(bm.block(k, k + 1))
    rep = Representation(q, dims, point.field, maps)
    assert zelevinsky_matrix(rep).matrix == point, "preimage failed to roundtrip"
    return rep
