"""Quiver representations, interval rank tables, and decomposition.

A representation assigns a space of dimension dims[x-1] to each vertex x
and a matrix to each edge, shaped target-by-source so that composing
along a directed path multiplies matrices right-to-left.  For every
interval [a, b] there is a blocked matrix (sink rows by source columns of
the cut subquiver) whose rank is constant on orbits; the full table of
these ranks determines the orbit, and the table of a direct sum is the
entrywise sum of the summands' tables.  That makes the table a certificate
for isomorphism, degeneration, and the multiplicities of the interval
summands, all of which this module computes exactly.
"""

from __future__ import annotations

from functools import lru_cache

from .exact_linalg import (
    RATIONAL,
    BlockedMatrix,
    Field,
    Matrix,
    block_diag,
    random_matrix,
)
from .quiver import QuiverA, interval_sources_sinks, intervals, path_between


def edge_shape(q: QuiverA, dims, k: int) -> tuple[int, int]:
    """Shape (rows, cols) of the matrix on edge k: target dim by source dim."""
    dims = tuple(dims)
    if q.edge(k) == "R":
        return dims[k], dims[k - 1]
    return dims[k - 1], dims[k]


class Representation:
    """A dimension vector together with one exact matrix per edge."""

    __slots__ = ("quiver", "dims", "field", "maps")

    def __init__(self, quiver: QuiverA, dims, field: Field, maps):
        dims = tuple(int(x) for x in dims)
        maps = tuple(maps)
        if len(dims) != quiver.n:
            raise ValueError(f"want {quiver.n} dimensions, got {len(dims)}")
        if any(d < 0 for d in dims):
            raise ValueError("dimensions must be nonnegative")
        if len(maps) != quiver.n - 1:
            raise ValueError(f"want {quiver.n - 1} edge matrices, got {len(maps)}")
        for k, m in enumerate(maps, start=1):
            if m.field != field:
                raise ValueError(f"edge {k}: matrix field {m.field!r} != {field!r}")
            want = edge_shape(quiver, dims, k)
            if (m.rows, m.cols) != want:
                raise ValueError(
                    f"edge {k}: expected shape {want}, got {(m.rows, m.cols)}"
                )
        self.quiver = quiver
        self.dims = dims
        self.field = field
        self.maps = maps

    def edge_map(self, k: int) -> Matrix:
        """Matrix on edge k (1-based)."""
        if not (1 <= k <= self.quiver.n - 1):
            raise ValueError(f"edge index {k} out of range")
        return self.maps[k - 1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Representation):
            return NotImplemented
        return (
            self.quiver == other.quiver
            and self.dims == other.dims
            and self.field == other.field
            and all(a == b for a, b in zip(self.maps, other.maps))
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"Representation({self.quiver!r}, dims={self.dims}, {self.field!r})"


# ----------------------------------------------------------------------
# constructors


def random_rep(q: QuiverA, dims, field: Field, rng) -> Representation:
    """Representation with independent random edge matrices."""
    dims = tuple(dims)
    maps = [random_matrix(field, *edge_shape(q, dims, k), rng) for k in range(1, q.n)]
    return Representation(q, dims, field, maps)


def interval_rep(q: QuiverA, a: int, b: int, field: Field) -> Representation:
    """The indecomposable representation supported on the interval [a, b].

    One-dimensional at every vertex of [a, b], zero elsewhere, with the
    identity on every edge inside the interval.
    """
    if not (1 <= a <= b <= q.n):
        raise ValueError(f"invalid interval [{a}, {b}]")
    dims = tuple(1 if a <= x <= b else 0 for x in range(1, q.n + 1))
    maps = []
    for k in range(1, q.n):
        r, c = edge_shape(q, dims, k)
        if r == 1 and c == 1:
            maps.append(Matrix.identity(field, 1))
        else:
            maps.append(Matrix.zeros(field, r, c))
    return Representation(q, dims, field, maps)


def direct_sum(*reps: Representation) -> Representation:
    """Direct sum; vertex bases are grouped summand by summand."""
    if not reps:
        raise ValueError("need at least one summand")
    q, field = reps[0].quiver, reps[0].field
    if any(r.quiver != q or r.field != field for r in reps):
        raise ValueError("summands must share one quiver and one field")
    dims = tuple(sum(r.dims[x] for r in reps) for x in range(q.n))
    maps = [
        block_diag(field, [r.maps[k] for r in reps]) for k in range(q.n - 1)
    ]
    return Representation(q, dims, field, maps)


def rep_from_multiplicities(q: QuiverA, mults, field: Field) -> Representation:
    """Direct sum of interval representations with given multiplicities.

    `mults` maps interval pairs (a, b) with a <= b to nonnegative counts;
    summands are laid out in lexicographic interval order.
    """
    parts = []
    for (a, b), m in sorted(dict(mults).items()):
        if m < 0:
            raise ValueError(f"negative multiplicity for [{a}, {b}]")
        parts.extend(interval_rep(q, a, b, field) for _ in range(m))
    if not parts:
        zero_maps = [Matrix.zeros(field, 0, 0) for _ in range(q.n - 1)]
        return Representation(q, (0,) * q.n, field, zero_maps)
    return direct_sum(*parts)


def gl_action(gs, rep: Representation) -> Representation:
    """Base change at every vertex: the edge map M becomes g_t M g_s^{-1}."""
    gs = tuple(gs)
    q = rep.quiver
    if len(gs) != q.n:
        raise ValueError(f"want {q.n} base-change matrices, got {len(gs)}")
    for x, g in enumerate(gs, start=1):
        if g.field != rep.field:
            raise ValueError(f"vertex {x}: field mismatch")
        if g.rows != g.cols or g.rows != rep.dims[x - 1]:
            raise ValueError(f"vertex {x}: base change must be {rep.dims[x-1]} square")
    inv = [g.inverse() for g in gs]
    maps = []
    for k in range(1, q.n):
        s, t = q.arrow_source(k), q.arrow_target(k)
        maps.append(gs[t - 1] @ rep.maps[k - 1] @ inv[s - 1])
    return Representation(q, rep.dims, rep.field, maps)


# ----------------------------------------------------------------------
# interval matrices and their ranks


def interval_matrix(rep: Representation, a: int, b: int) -> BlockedMatrix:
    """Blocked matrix of the interval [a, b]: sink rows by source columns.

    Rows are labelled by the sinks and columns by the sources of the
    subquiver cut to [a, b], both in descending vertex order; the block in
    row x, column y is the composite map along the directed path y -> x,
    or zero when there is no such path.
    """
    q = rep.quiver
    sou, sin_ = interval_sources_sinks(q, a, b)
    d = rep.dims
    grid = []
    for x in sin_:
        row = []
        for y in sou:
            ks = path_between(q, y, x)
            if ks is None:
                row.append(Matrix.zeros(rep.field, d[x - 1], d[y - 1]))
            else:
                m = rep.maps[ks[0] - 1]
                for k in ks[1:]:
                    m = rep.maps[k - 1] @ m
                row.append(m)
        grid.append(row)
    mat = Matrix.assemble(rep.field, grid)
    sizes = {v: d[v - 1] for v in sin_ + sou}
    return BlockedMatrix(mat, sin_, sou, sizes)


class RankParameters:
    """Interval rank table of a representation plus its dimension vector.

    `get` extends the table by the conventions r[x, x] = d_x and
    r[a, b] = 0 for a > b.
    """

    __slots__ = ("quiver", "dims", "table")

    def __init__(self, quiver: QuiverA, dims, table):
        dims = tuple(int(x) for x in dims)
        if len(dims) != quiver.n:
            raise ValueError(f"want {quiver.n} dimensions, got {len(dims)}")
        table = {k: int(v) for k, v in dict(table).items()}
        if set(table) != set(intervals(quiver)):
            raise ValueError("rank table must cover exactly the intervals a < b")
        self.quiver = quiver
        self.dims = dims
        self.table = table

    def get(self, a: int, b: int) -> int:
        n = self.quiver.n
        if not (1 <= a <= n and 1 <= b <= n):
            raise ValueError(f"interval endpoints out of range: [{a}, {b}]")
        if a == b:
            return self.dims[a - 1]
        if a > b:
            return 0
        return self.table[(a, b)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RankParameters):
            return NotImplemented
        return (
            self.quiver == other.quiver
            and self.dims == other.dims
            and self.table == other.table
        )

    __hash__ = None

    def leq(self, other: "RankParameters") -> bool:
        """Entrywise <= against another table on the same quiver and dims."""
        if self.quiver != other.quiver:
            raise ValueError("rank tables live on different quivers")
        if self.dims != other.dims:
            return False
        return all(self.table[iv] <= other.table[iv] for iv in self.table)

    def __repr__(self) -> str:
        return f"RankParameters({self.quiver!r}, dims={self.dims})"


def rank_parameters(rep: Representation) -> RankParameters:
    """Full interval rank table of a representation."""
    q = rep.quiver
    table = {iv: interval_matrix(rep, *iv).matrix.rank() for iv in intervals(q)}
    return RankParameters(q, rep.dims, table)


def _params(x) -> RankParameters:
    return x if isinstance(x, RankParameters) else rank_parameters(x)


def same_orbit(x, y) -> bool:
    """True when the two representations have identical rank tables.

    Accepts representations or precomputed RankParameters.
    """
    return _params(x) == _params(y)


def in_orbit_closure(x, y) -> bool:
    """True when x lies in the closure of the orbit of y.

    Equivalent to equal dimension vectors with every interval rank of x at
    most that of y.  Accepts representations or RankParameters.
    """
    return _params(x).leq(_params(y))


# ----------------------------------------------------------------------
# decomposition into interval summands


@lru_cache(maxsize=None)
def _interval_basis(n: int, arrows: str):
    """Interval pairs and the inverse of their rank-table matrix.

    Column j of the matrix is the vector of interval ranks followed by the
    vertex dimensions of the representation supported on pairs[j].  The
    matrix is square of size n(n+1)/2 and invertible, so the multiplicity
    vector of any realizable table is one rational matrix-vector product.
    """
    q = QuiverA(n, arrows)
    pairs = tuple((p, t) for p in range(1, n + 1) for t in range(p, n + 1))
    ivs = intervals(q)
    cols = []
    for p, t in pairs:
        rep = interval_rep(q, p, t, RATIONAL)
        params = rank_parameters(rep)
        cols.append([params.get(a, b) for a, b in ivs] + list(rep.dims))
    e = Matrix.from_rows(RATIONAL, [list(row) for row in zip(*cols)])
    return pairs, e.inverse()


def solve_interval_multiplicities(params: RankParameters):
    """Interval multiplicities realizing a rank table, or None.

    Returns {(a, b): m} with positive integer m when the table is the rank
    table of some representation, and None when the unique rational
    solution of the linear system has a negative or fractional entry.
    """
    q = params.quiver
    pairs, e_inv = _interval_basis(q.n, q.arrows)
    vec = [params.get(a, b) for a, b in intervals(q)] + list(params.dims)
    col = Matrix.from_rows(RATIONAL, [[v] for v in vec])
    sol = e_inv @ col
    mults = {}
    for j, pair in enumerate(pairs):
        m = sol.entry(j, 0)
        if m.denominator != 1 or m < 0:
            return None
        if m:
            mults[pair] = int(m)
    return mults


def decompose(rep: Representation) -> dict[tuple[int, int], int]:
    """Multiplicity of each interval summand of a representation.

    The result is checked by rebuilding the direct sum and comparing rank
    tables, so a wrong answer can only escape by failing loudly.
    """
    params = rank_parameters(rep)
    mults = solve_interval_multiplicities(params)
    if mults is None:
        raise RuntimeError("rank table of a representation must be realizable")
    rebuilt = rep_from_multiplicities(rep.quiver, mults, rep.field)
    if rank_parameters(rebuilt) != params:
        raise RuntimeError("decomposition failed its rebuild check")
    return mults
