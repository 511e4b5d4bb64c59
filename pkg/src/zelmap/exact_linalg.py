"""Exact dense linear algebra over a prime field or the rationals.

One immutable Matrix type serves both field modes: entries are canonical
representatives of F_p held in an int64 numpy array, or Fractions in lowest
terms held as nested tuples.  All ranks are exact — modular Gaussian
elimination over F_p, fraction-free (Bareiss) elimination over Q — and
there is no floating point anywhere.

The southwest window of a matrix (its bottom-left corner) is the basic
object of every Schubert-style rank condition in this library, so it gets
dedicated helpers: `Matrix.southwest`, per-window ranks, and an upward
rank profile that returns the rank of every bottom-i window in one sweep.
`BlockedMatrix` adds vertex-labelled block structure on top.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

import numpy as np

DEFAULT_PRIME = 32003

# Largest allowed prime: row operations build sums of < 2^28-sized products
# over at most a few hundred columns, which must stay inside int64.
_MAX_PRIME = 1 << 28


def _is_prime(p: int) -> bool:
    """Deterministic trial division; fine for p < 2^28."""
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    for f in range(3, isqrt(p) + 1, 2):
        if p % f == 0:
            return False
    return True


class Field:
    """Field mode tag: F_p for an odd prime p, or the rationals.

    >>> Field("fp", 7).prime
    7
    >>> Field("rational").kind
    'rational'
    """

    __slots__ = ("kind", "prime")

    def __init__(self, kind: str, prime: int | None = None):
        if kind == "fp":
            if prime is None:
                prime = DEFAULT_PRIME
            if not (3 <= prime < _MAX_PRIME) or not _is_prime(prime):
                raise ValueError(
                    f"prime must be an odd prime in [3, 2^28), got {prime}"
                )
            self.prime = prime
        elif kind == "rational":
            if prime is not None:
                raise ValueError("rational mode takes no prime")
            self.prime = None
        else:
            raise ValueError(f"unknown field kind {kind!r}")
        self.kind = kind

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Field)
            and self.kind == other.kind
            and self.prime == other.prime
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.prime))

    def __repr__(self) -> str:
        if self.kind == "fp":
            return f"Field('fp', {self.prime})"
        return "Field('rational')"


RATIONAL = Field("rational")
FP_DEFAULT = Field("fp", DEFAULT_PRIME)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational number")


class Matrix:
    """Immutable exact matrix.  Use the classmethod constructors."""

    __slots__ = ("field", "rows", "cols", "_a", "_t")

    def __init__(self, field: Field, rows: int, cols: int, a=None, t=None):
        # internal constructor; `a` is the fp array, `t` the rational tuple
        self.field = field
        self.rows = rows
        self.cols = cols
        self._a = a
        self._t = t

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence]) -> "Matrix":
        """Build a matrix from an iterable of equal-length rows."""
        rows = [list(r) for r in rows]
        nr = len(rows)
        nc = len(rows[0]) if rows else 0
        if any(len(r) != nc for r in rows):
            raise ValueError("ragged rows")
        if field.kind == "fp":
            a = np.array(rows, dtype=np.int64).reshape(nr, nc) % field.prime
            a.flags.writeable = False
            return cls(field, nr, nc, a=a)
        t = tuple(tuple(_as_fraction(x) for x in r) for r in rows)
        return cls(field, nr, nc, t=t)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        if field.kind == "fp":
            a = np.zeros((rows, cols), dtype=np.int64)
            a.flags.writeable = False
            return cls(field, rows, cols, a=a)
        zero = Fraction(0)
        return cls(field, rows, cols, t=tuple((zero,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        if field.kind == "fp":
            a = np.eye(n, dtype=np.int64)
            a.flags.writeable = False
            return cls(field, n, n, a=a)
        one, zero = Fraction(1), Fraction(0)
        return cls(
            field, n, n,
            t=tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)),
        )

    @classmethod
    def assemble(cls, field: Field, grid: Sequence[Sequence["Matrix"]]) -> "Matrix":
        """Glue a 2-D grid of conformable matrices into one matrix.

        Zero-size blocks are legal; row heights and column widths must be
        consistent across the grid.
        """
        if not grid:
            return cls.zeros(field, 0, 0)
        heights = [row[0].rows for row in grid]
        widths = [m.cols for m in grid[0]]
        for gi, row in enumerate(grid):
            if len(row) != len(widths):
                raise ValueError("ragged block grid")
            for gj, m in enumerate(row):
                if m.field != field:
                    raise ValueError("field mismatch in block grid")
                if m.rows != heights[gi] or m.cols != widths[gj]:
                    raise ValueError("inconsistent block shapes")
        nr, nc = sum(heights), sum(widths)
        if field.kind == "fp":
            a = np.zeros((nr, nc), dtype=np.int64)
            i = 0
            for gi, row in enumerate(grid):
                j = 0
                for gj, m in enumerate(row):
                    if m.rows and m.cols:
                        a[i : i + m.rows, j : j + m.cols] = m._a
                    j += m.cols
                i += heights[gi]
            a.flags.writeable = False
            return cls(field, nr, nc, a=a)
        out: list[tuple] = []
        for row in grid:
            for i in range(row[0].rows):
                out.append(tuple(x for m in row for x in m._t[i]))
        return cls(field, nr, nc, t=tuple(out))

    # ------------------------------------------------------------------
    # element access

    def entry(self, i: int, j: int):
        """0-based entry as a python int (fp) or Fraction (rational)."""
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError((i, j))
        if self.field.kind == "fp":
            return int(self._a[i, j])
        return self._t[i][j]

    def tolist(self) -> list[list]:
        if self.field.kind == "fp":
            return self._a.tolist()
        return [list(r) for r in self._t]

    def row(self, i: int) -> list:
        return self.tolist()[i] if self.field.kind == "rational" else self._a[i].tolist()

    # ------------------------------------------------------------------
    # structure

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        if not (0 <= r0 <= r1 <= self.rows and 0 <= c0 <= c1 <= self.cols):
            raise ValueError("submatrix out of range")
        if self.field.kind == "fp":
            a = self._a[r0:r1, c0:c1].copy()
            a.flags.writeable = False
            return Matrix(self.field, r1 - r0, c1 - c0, a=a)
        t = tuple(r[c0:c1] for r in self._t[r0:r1])
        return Matrix(self.field, r1 - r0, c1 - c0, t=t)

    def southwest(self, i: int, j: int) -> "Matrix":
        """Bottom i rows and leftmost j columns, as a new matrix."""
        if not (0 <= i <= self.rows and 0 <= j <= self.cols):
            raise ValueError(f"southwest window ({i}, {j}) out of range")
        return self.submatrix(self.rows - i, self.rows, 0, j)

    def transpose(self) -> "Matrix":
        if self.field.kind == "fp":
            a = self._a.T.copy()
            a.flags.writeable = False
            return Matrix(self.field, self.cols, self.rows, a=a)
        t = tuple(tuple(self._t[i][j] for i in range(self.rows)) for j in range(self.cols))
        return Matrix(self.field, self.cols, self.rows, t=t)

    # ------------------------------------------------------------------
    # arithmetic

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise ValueError("field mismatch in product")
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch: ({self.rows}x{self.cols}) @ ({other.rows}x{other.cols})"
            )
        if self.cols == 0 or self.rows == 0 or other.cols == 0:
            return Matrix.zeros(self.field, self.rows, other.cols)
        if self.field.kind == "fp":
            a = (self._a @ other._a) % self.field.prime
            a.flags.writeable = False
            return Matrix(self.field, self.rows, other.cols, a=a)
        t = tuple(
            tuple(
                sum((self._t[i][k] * other._t[k][j] for k in range(self.cols)), Fraction(0))
                for j in range(other.cols)
            )
            for i in range(self.rows)
        )
        return Matrix(self.field, self.rows, other.cols, t=t)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.field != other.field or self.rows != other.rows or self.cols != other.cols:
            return False
        if self.field.kind == "fp":
            return bool(np.array_equal(self._a, other._a))
        return self._t == other._t

    def __hash__(self):
        raise TypeError("Matrix is not hashable")

    def is_zero(self) -> bool:
        if self.field.kind == "fp":
            return not self._a.any()
        return all(x == 0 for r in self._t for x in r)

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        return self == Matrix.identity(self.field, self.rows)

    def __repr__(self) -> str:
        return f"Matrix({self.field!r}, {self.rows}x{self.cols})"

    # ------------------------------------------------------------------
    # rank and inversion

    def rank(self) -> int:
        """Exact rank; the input is never mutated."""
        if self.rows == 0 or self.cols == 0:
            return 0
        if self.field.kind == "fp":
            return _rank_fp(self._a, self.field.prime)
        return _rank_bareiss(_cleared_int_rows(self._t))

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("only square matrices can be inverted")
        n = self.rows
        if n == 0:
            return Matrix.zeros(self.field, 0, 0)
        if self.field.kind == "fp":
            inv = _inverse_fp(self._a, self.field.prime)
            if inv is None:
                raise ValueError("matrix is singular")
            inv.flags.writeable = False
            return Matrix(self.field, n, n, a=inv)
        inv = _inverse_rational([list(r) for r in self._t])
        if inv is None:
            raise ValueError("matrix is singular")
        return Matrix(self.field, n, n, t=tuple(tuple(r) for r in inv))

    def sw_rank_profile(self, width: int) -> tuple[int, ...]:
        """Ranks of every southwest window of a fixed width.

        Returns a tuple p with p[i] = rank of the bottom-i-rows x
        left-`width`-columns window, for i = 0..rows, computed in one
        bottom-up elimination sweep.
        """
        if not (0 <= width <= self.cols):
            raise ValueError("profile width out of range")
        if self.field.kind == "fp":
            return _profile_fp(self._a, self.field.prime, width, self.rows)
        return _profile_rational(self._t, width, self.rows)


# ----------------------------------------------------------------------
# elimination kernels


def _rank_fp(a: np.ndarray, p: int) -> int:
    a = a % p
    m, n = a.shape
    r = 0
    for c in range(n):
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        col = a[r + 1 :, c]
        mask = col != 0
        if mask.any():
            a[r + 1 :][mask] = (a[r + 1 :][mask] - np.outer(col[mask], a[r])) % p
        r += 1
        if r == m:
            break
    return r


def _inverse_fp(a: np.ndarray, p: int) -> np.ndarray | None:
    n = a.shape[0]
    aug = np.concatenate([a % p, np.eye(n, dtype=np.int64)], axis=1)
    for c in range(n):
        nz = np.nonzero(aug[c:, c])[0]
        if nz.size == 0:
            return None
        piv = c + int(nz[0])
        if piv != c:
            aug[[c, piv]] = aug[[piv, c]]
        aug[c] = (aug[c] * pow(int(aug[c, c]), p - 2, p)) % p
        col = aug[:, c].copy()
        col[c] = 0
        mask = col != 0
        if mask.any():
            aug[mask] = (aug[mask] - np.outer(col[mask], aug[c])) % p
    return aug[:, n:].copy()


def _cleared_int_rows(t) -> list[list[int]]:
    """Scale each Fraction row to integers (rank-preserving)."""
    rows = []
    for r in t:
        lcm = 1
        for x in r:
            d = x.denominator
            lcm = lcm * d // _gcd(lcm, d)
        rows.append([int(x * lcm) for x in r])
    return rows


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _rank_bareiss(m: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination rank on integer rows."""
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    for c in range(ncols):
        piv = None
        for i in range(rank, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][c]
        for i in range(rank + 1, nrows):
            mic = m[i][c]
            row_i, row_r = m[i], m[rank]
            for j in range(c + 1, ncols):
                row_i[j] = (row_i[j] * pv - mic * row_r[j]) // prev
            row_i[c] = 0
        prev = pv
        rank += 1
        if rank == nrows:
            break
    return rank


def _inverse_rational(m: list[list[Fraction]]) -> list[list[Fraction]] | None:
    n = len(m)
    aug = [list(map(Fraction, m[i])) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = None
        for i in range(c, n):
            if aug[i][c] != 0:
                piv = i
                break
        if piv is None:
            return None
        if piv != c:
            aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [r[n:] for r in aug]


def _profile_fp(a: np.ndarray, p: int, width: int, nrows: int) -> tuple[int, ...]:
    prof = [0]
    basis: list[tuple[int, np.ndarray]] = []  # (pivot column, unit-pivot row)
    for i in range(nrows - 1, -1, -1):
        v = a[i, :width] % p
        v = v.astype(np.int64)
        for pc, bv in basis:
            f = int(v[pc])
            if f:
                v = (v - f * bv) % p
        nz = np.nonzero(v)[0]
        if nz.size:
            pc = int(nz[0])
            v = (v * pow(int(v[pc]), p - 2, p)) % p
            # keep the basis fully reduced so a single pass suffices
            for k, (opc, ov) in enumerate(basis):
                f = int(ov[pc])
                if f:
                    basis[k] = (opc, (ov - f * v) % p)
            basis.append((pc, v))
        prof.append(len(basis))
    return tuple(prof)


def _profile_rational(t, width: int, nrows: int) -> tuple[int, ...]:
    prof = [0]
    basis: list[tuple[int, list[Fraction]]] = []
    for i in range(nrows - 1, -1, -1):
        v = list(t[i][:width])
        for pc, bv in basis:
            f = v[pc]
            if f:
                v = [x - f * y for x, y in zip(v, bv)]
        pc = next((j for j, x in enumerate(v) if x != 0), None)
        if pc is not None:
            inv = 1 / v[pc]
            v = [x * inv for x in v]
            for k, (opc, ov) in enumerate(basis):
                f = ov[pc]
                if f:
                    basis[k] = (opc, [x - f * y for x, y in zip(ov, v)])
            basis.append((pc, v))
        prof.append(len(basis))
    return tuple(prof)


# ----------------------------------------------------------------------
# random matrices (exact entries; used by the harness and tests)


def random_matrix(field: Field, rows: int, cols: int, rng) -> Matrix:
    """Uniform entries over F_p, or small integers in rational mode."""
    if rows == 0 or cols == 0:
        return Matrix.zeros(field, rows, cols)
    if field.kind == "fp":
        p = field.prime
        return Matrix.from_rows(
            field, [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)]
        )
    return Matrix.from_rows(
        field, [[rng.randint(-5, 5) for _ in range(cols)] for _ in range(rows)]
    )


def random_invertible(field: Field, n: int, rng) -> Matrix:
    """Rejection-sample an invertible n x n matrix."""
    while True:
        m = random_matrix(field, n, n, rng)
        if m.rank() == n:
            return m


def block_diag(field: Field, mats: Iterable[Matrix]) -> Matrix:
    """Block-diagonal sum; zero-size summands are fine."""
    mats = list(mats)
    if not mats:
        return Matrix.zeros(field, 0, 0)
    grid = [
        [
            m if i == j else Matrix.zeros(field, mats[i].rows, mats[j].cols)
            for j in range(len(mats))
        ]
        for i, m in enumerate(mats)
    ]
    return Matrix.assemble(field, grid)


def stacked_rank_property(x: Matrix, y: Matrix) -> int:
    """Rank of [[Y, I_r], [X@Y, X]] for X (r1 x r) and Y (r x r2).

    The assembled matrix always has rank exactly r: its bottom rows are
    X times its top rows, so this doubles as a self-test of the
    elimination kernels.
    """
    if x.field != y.field:
        raise ValueError("field mismatch")
    if x.cols != y.rows:
        raise ValueError("inner dimensions disagree")
    r = x.cols
    ident = Matrix.identity(x.field, r)
    grid = [[y, ident], [x @ y, x]]
    return Matrix.assemble(x.field, grid).rank()


# ----------------------------------------------------------------------
# blocked matrices


class BlockedMatrix:
    """A matrix partitioned into blocks labelled by vertex sequences.

    Row blocks are labelled top-to-bottom by `row_seq`, column blocks
    left-to-right by `col_seq`; block sizes come from the per-vertex map
    `dims`.  Degenerate (zero-size) blocks are permitted — interval
    modules genuinely have them — but a vertex may appear at most once in
    each sequence.
    """

    __slots__ = (
        "matrix", "row_seq", "col_seq", "dims",
        "_row_start", "_col_start", "_profiles",
    )

    def __init__(self, matrix: Matrix, row_seq, col_seq, dims):
        row_seq = tuple(row_seq)
        col_seq = tuple(col_seq)
        if len(set(row_seq)) != len(row_seq) or len(set(col_seq)) != len(col_seq):
            raise ValueError("duplicate vertex in a block sequence")
        dims = dict(dims)
        if any(dims[v] < 0 for v in row_seq) or any(dims[v] < 0 for v in col_seq):
            raise ValueError("negative block size")
        if matrix.rows != sum(dims[v] for v in row_seq):
            raise ValueError("row sizes do not sum to the matrix height")
        if matrix.cols != sum(dims[v] for v in col_seq):
            raise ValueError("column sizes do not sum to the matrix width")
        self.matrix = matrix
        self.row_seq = row_seq
        self.col_seq = col_seq
        self.dims = dims
        self._row_start = {}
        off = 0
        for v in row_seq:
            self._row_start[v] = off
            off += dims[v]
        self._col_start = {}
        off = 0
        for v in col_seq:
            self._col_start[v] = off
            off += dims[v]
        self._profiles: dict[int, tuple[int, ...]] = {}

    # -- coordinate helpers -------------------------------------------

    def row_range(self, x) -> tuple[int, int]:
        """0-based [start, end) row span of block row [x]."""
        if x not in self._row_start:
            raise ValueError(f"vertex {x} is not a row label")
        s = self._row_start[x]
        return s, s + self.dims[x]

    def col_range(self, y) -> tuple[int, int]:
        if y not in self._col_start:
            raise ValueError(f"vertex {y} is not a column label")
        s = self._col_start[y]
        return s, s + self.dims[y]

    def block(self, x, y) -> Matrix:
        r0, r1 = self.row_range(x)
        c0, c1 = self.col_range(y)
        return self.matrix.submatrix(r0, r1, c0, c1)

    def southwest_block(self, x, y) -> Matrix:
        """All rows from block [x] downward, all columns through block [y]."""
        r0, _ = self.row_range(x)
        _, c1 = self.col_range(y)
        return self.matrix.submatrix(r0, self.matrix.rows, 0, c1)

    def sw_block_rank(self, x, y) -> int:
        return self.southwest_block(x, y).rank()

    def col_profile(self, y) -> tuple[int, ...]:
        """Rank of every bottom-i window at the width of column block [y]."""
        _, c1 = self.col_range(y)
        if c1 not in self._profiles:
            self._profiles[c1] = self.matrix.sw_rank_profile(c1)
        return self._profiles[c1]

    def block_rank_table(self) -> dict:
        """Southwest block ranks at every ([x],[y]) position."""
        n_rows = self.matrix.rows
        table = {}
        for y in self.col_seq:
            prof = self.col_profile(y)
            for x in self.row_seq:
                r0, _ = self.row_range(x)
                table[(x, y)] = prof[n_rows - r0]
        return table
