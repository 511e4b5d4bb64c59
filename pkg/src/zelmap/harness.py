"""Randomized exact verification suites.

Each suite draws a fresh quiver, dimension vector, and representation per
trial and checks one family of identities with exact arithmetic:

- rank-identity: every southwest block rank of the big matrix equals the
  interval rank plus the base point's count at that window.
- constant-count: positions hit by no interval window show the base
  point's count for several representations of the same shape, and the
  window map is injective with the expected complement size.
- multiplicity: the closed-form multiplicities agree with an independent
  linear-system decomposition, the permutation's block counts match the
  prediction, and the per-window rank sums balance.
- degeneration-kl: splitting interval summands lands inside the rank
  ceilings of the original permutation, merging a planted adjacent pair
  lands outside, and the rowwise and blockwise ceiling tests agree.
- equivariance: base change at every vertex preserves rank tables,
  decompositions, and all southwest block ranks.
- ztype-bruhat: attached permutations always have the distinguished
  block shape, and blocked (and full) Bruhat comparison of two attached
  permutations matches entrywise comparison of the rank tables.
- stacked-rank: the [[Y, I], [XY, X]] assembly always has rank equal to
  its inner dimension, a self-test of the elimination kernels.

Trials are reproducible: trial i of a suite uses its own generator seeded
with "seed:suite:i", independent of worker count.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

from .exact_linalg import (
    FP_DEFAULT,
    Field,
    random_invertible,
    random_matrix,
    stacked_rank_property,
)
from .multiplicity import (
    mult_matrix,
    multiplicities_from_ranks,
    predicted_mult_matrix,
    ranksum_identity,
    realizable_matrix,
)
from .quiver import QuiverA, constant_positions, interval_windows, intervals
from .representation import (
    decompose,
    gl_action,
    in_orbit_closure,
    random_rep,
    rank_parameters,
    rep_from_multiplicities,
)
from .zelevinsky import (
    bruhat_leq,
    bruhat_leq_full,
    is_z_type,
    kl_membership,
    rank_identity_report,
    zelevinsky_matrix,
    zelevinsky_perm,
    zero_rep_perm,
)

SUITE_NAMES = (
    "rank-identity",
    "constant-count",
    "multiplicity",
    "degeneration-kl",
    "equivariance",
    "ztype-bruhat",
    "stacked-rank",
)


@dataclass
class HarnessOptions:
    max_n: int = 8
    max_dim: int = 4
    field: Field = dc_field(default_factory=lambda: FP_DEFAULT)
    orientation: str | None = None  # pin every trial to one arrow word


@dataclass
class SuiteReport:
    suite: str
    trials: int
    failures: list
    wall_time_s: float

    @property
    def passed(self) -> bool:
        return not self.failures


def _random_quiver(rng, opts: HarnessOptions) -> QuiverA:
    if opts.orientation is not None:
        return QuiverA(len(opts.orientation) + 1, opts.orientation)
    n = rng.randint(2, opts.max_n)
    return QuiverA(n, "".join(rng.choice("LR") for _ in range(n - 1)))


def _random_dims(rng, q: QuiverA, opts: HarnessOptions) -> tuple:
    return tuple(rng.randint(1, opts.max_dim) for _ in range(q.n))


def _planted_multiset(rng, q: QuiverA, opts: HarnessOptions):
    """Interval multiset with an adjacent pair of simples planted at a
    random edge, every vertex covered, and covers bounded by max_dim."""
    n = q.n
    k = rng.randint(1, n - 1)
    cover = [0] * n
    mults: dict = {}

    def add(a, b):
        mults[(a, b)] = mults.get((a, b), 0) + 1
        for x in range(a, b + 1):
            cover[x - 1] += 1

    for _ in range(rng.randint(0, 2 * n)):
        a = rng.randint(1, n)
        b = rng.randint(a, n)
        if all(cover[x - 1] <= opts.max_dim - 2 for x in range(a, b + 1)):
            add(a, b)
    add(k, k)
    add(k + 1, k + 1)
    for x in range(1, n + 1):
        if cover[x - 1] == 0:
            add(x, x)
    return mults, k


def _split_multiset(rng, mults):
    """Randomly split summands into adjacent pieces (dims are preserved,
    every interval rank weakly drops)."""
    out: dict = {}
    for (a, b), c in mults.items():
        for _ in range(c):
            if a < b and rng.random() < 0.5:
                cut = rng.randint(a, b - 1)
                for piece in ((a, cut), (cut + 1, b)):
                    out[piece] = out.get(piece, 0) + 1
            else:
                out[(a, b)] = out.get((a, b), 0) + 1
    return out


def _merged_multiset(mults, k):
    """Fuse the planted simples at k, k+1 into one interval (dims are
    preserved, the rank at [k, k+1] strictly rises)."""
    out = dict(mults)
    out[(k, k)] -= 1
    out[(k + 1, k + 1)] -= 1
    out = {key: c for key, c in out.items() if c}
    out[(k, k + 1)] = out.get((k, k + 1), 0) + 1
    return out


# ----------------------------------------------------------------------
# one trial per suite; return None on success, a short description on failure


def _trial_rank_identity(rng, opts: HarnessOptions):
    q = _random_quiver(rng, opts)
    dims = _random_dims(rng, q, opts)
    rep = random_rep(q, dims, opts.field, rng)
    report = rank_identity_report(rep)
    if not report["ok"]:
        return f"{q.arrows} dims={dims}: {report['failures'][:3]}"
    return None


def _trial_constant_count(rng, opts: HarnessOptions):
    q = _random_quiver(rng, opts)
    dims = _random_dims(rng, q, opts)
    win = interval_windows(q)
    const = constant_positions(q)
    if len(set(win.values())) != len(win):
        return f"{q.arrows}: window map not injective"
    if len(const) != q.n * (q.n + 1) // 2:
        return f"{q.arrows}: {len(const)} constant positions"
    v = zero_rep_perm(q, dims)
    for i in range(5):
        rep = random_rep(q, dims, opts.field, rng)
        ztab = zelevinsky_matrix(rep).block_rank_table()
        for pos in const:
            if ztab[pos] != v.sw_block_rank(*pos):
                return f"{q.arrows} dims={dims} rep {i}: drift at {pos}"
    return None


def _trial_multiplicity(rng, opts: HarnessOptions):
    q = _random_quiver(rng, opts)
    dims = _random_dims(rng, q, opts)
    rep = random_rep(q, dims, opts.field, rng)
    r = rank_parameters(rep)
    oracle = decompose(rep)
    formula = multiplicities_from_ranks(r)
    if formula != oracle:
        return f"{q.arrows} dims={dims}: formula {formula} != oracle {oracle}"
    w = zelevinsky_perm(r)
    counts = mult_matrix(w)
    if counts != w.block_one_counts():
        return f"{q.arrows} dims={dims}: count table disagrees with direct count"
    if counts != predicted_mult_matrix(q, oracle):
        return f"{q.arrows} dims={dims}: count table differs from prediction"
    if realizable_matrix(q, dims, counts) != oracle:
        return f"{q.arrows} dims={dims}: count table not recognized as realizable"
    for a, b in intervals(q):
        res = ranksum_identity(r, a, b)
        if not res["ok"]:
            return f"{q.arrows} dims={dims}: rank sum off at [{a},{b}]: {res}"
    return None


def _trial_degeneration_kl(rng, opts: HarnessOptions):
    q = _random_quiver(rng, opts)
    mults, k = _planted_multiset(rng, q, opts)
    base = rep_from_multiplicities(q, mults, opts.field)
    r_base = rank_parameters(base)
    w = zelevinsky_perm(r_base)

    split = rep_from_multiplicities(q, _split_multiset(rng, mults), opts.field)
    z_split = zelevinsky_matrix(split)
    row_ok = kl_membership(z_split, w, "rowwise")
    blk_ok = kl_membership(z_split, w, "blockwise")
    if row_ok != blk_ok:
        return f"{q.arrows}: split modes disagree ({row_ok} vs {blk_ok})"
    if not row_ok:
        return f"{q.arrows}: split summands left the rank ceilings"
    if not in_orbit_closure(split, r_base):
        return f"{q.arrows}: split not below in rank order"

    merged = rep_from_multiplicities(q, _merged_multiset(mults, k), opts.field)
    if merged.dims != base.dims:
        return f"{q.arrows}: merge changed dimensions"
    z_merged = zelevinsky_matrix(merged)
    row_m = kl_membership(z_merged, w, "rowwise")
    blk_m = kl_membership(z_merged, w, "blockwise")
    if row_m != blk_m:
        return f"{q.arrows}: merged modes disagree ({row_m} vs {blk_m})"
    if row_m:
        return f"{q.arrows}: merged pair stayed inside the rank ceilings"
    if in_orbit_closure(merged, r_base):
        return f"{q.arrows}: merged pair still below in rank order"
    r_merged = rank_parameters(merged)
    if r_merged.get(k, k + 1) <= r_base.get(k, k + 1):
        return f"{q.arrows}: merge failed to raise the rank at [{k},{k + 1}]"
    return None


def _trial_equivariance(rng, opts: HarnessOptions):
    q = _random_quiver(rng, opts)
    dims = _random_dims(rng, q, opts)
    rep = random_rep(q, dims, opts.field, rng)
    gs = [random_invertible(opts.field, d, rng) for d in dims]
    moved = gl_action(gs, rep)
    if rank_parameters(moved) != rank_parameters(rep):
        return f"{q.arrows} dims={dims}: rank table moved under base change"
    if decompose(moved) != decompose(rep):
        return f"{q.arrows} dims={dims}: decomposition moved under base change"
    before = zelevinsky_matrix(rep).block_rank_table()
    after = zelevinsky_matrix(moved).block_rank_table()
    if before != after:
        return f"{q.arrows} dims={dims}: block ranks moved under base change"
    return None


def _trial_ztype_bruhat(rng, opts: HarnessOptions):
    q = _random_quiver(rng, opts)
    mults, k = _planted_multiset(rng, q, opts)
    base = rep_from_multiplicities(q, mults, opts.field)
    r_base = rank_parameters(base)
    w_base = zelevinsky_perm(r_base)
    if not is_z_type(w_base):
        return f"{q.arrows}: attached permutation lost the block shape"

    semi = rep_from_multiplicities(
        q, {(x, x): d for x, d in enumerate(base.dims, start=1)}, opts.field
    )
    if zelevinsky_perm(rank_parameters(semi)) != zero_rep_perm(q, base.dims):
        return f"{q.arrows}: semisimple table missed the base point"

    split = rep_from_multiplicities(q, _split_multiset(rng, mults), opts.field)
    r_split = rank_parameters(split)
    w_split = zelevinsky_perm(r_split)
    merged = rep_from_multiplicities(q, _merged_multiset(mults, k), opts.field)
    r_merged = rank_parameters(merged)
    w_merged = zelevinsky_perm(r_merged)
    for other_r, other_w in ((r_split, w_split), (r_merged, w_merged)):
        if not is_z_type(other_w):
            return f"{q.arrows}: attached permutation lost the block shape"
        for ra, wa, rb, wb in (
            (other_r, other_w, r_base, w_base),
            (r_base, w_base, other_r, other_w),
        ):
            deg = ra.leq(rb)
            if bruhat_leq(wa, wb) != deg or bruhat_leq_full(wa, wb) != deg:
                return (
                    f"{q.arrows}: Bruhat comparison disagrees with rank order "
                    f"({ra.table} vs {rb.table})"
                )
    if not bruhat_leq(zero_rep_perm(q, base.dims), w_base):
        return f"{q.arrows}: base point not below the attached permutation"
    return None


def _trial_stacked_rank(rng, opts: HarnessOptions):
    r1 = rng.randint(0, 2 * opts.max_dim)
    r = rng.randint(0, 2 * opts.max_dim)
    r2 = rng.randint(0, 2 * opts.max_dim)
    x = random_matrix(opts.field, r1, r, rng)
    y = random_matrix(opts.field, r, r2, rng)
    got = stacked_rank_property(x, y)
    if got != r:
        return f"sizes ({r1},{r},{r2}): rank {got} != {r}"
    return None


_TRIALS = {
    "rank-identity": _trial_rank_identity,
    "constant-count": _trial_constant_count,
    "multiplicity": _trial_multiplicity,
    "degeneration-kl": _trial_degeneration_kl,
    "equivariance": _trial_equivariance,
    "ztype-bruhat": _trial_ztype_bruhat,
    "stacked-rank": _trial_stacked_rank,
}


def run_suite(
    suite: str,
    trials: int,
    seed: int | str = 0,
    opts: HarnessOptions | None = None,
    jobs: int = 1,
) -> SuiteReport:
    """Run one suite; failures carry the trial index and a description."""
    if suite not in _TRIALS:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITE_NAMES}")
    opts = opts or HarnessOptions()
    fn = _TRIALS[suite]

    def one(i: int):
        rng = random.Random(f"{seed}:{suite}:{i}")
        try:
            detail = fn(rng, opts)
        except Exception as exc:  # a crash is a failure, not an abort
            detail = f"{type(exc).__name__}: {exc}"
        return i, detail

    t0 = time.perf_counter()
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(one, range(trials)))
    else:
        results = [one(i) for i in range(trials)]
    failures = [
        {"trial": i, "detail": detail} for i, detail in sorted(results) if detail
    ]
    return SuiteReport(suite, trials, failures, time.perf_counter() - t0)


def run_check(
    suites=None,
    trials: int = 1000,
    seed: int | str = 0,
    opts: HarnessOptions | None = None,
    jobs: int = 1,
) -> list[SuiteReport]:
    """Run several suites (all of them by default) with shared settings."""
    return [
        run_suite(s, trials, seed, opts, jobs) for s in (suites or SUITE_NAMES)
    ]
