"""Acceptance gate: the headline guarantees, exercised end to end.

Each test prints one ``[acceptance] <name> PASS`` line on success, so
``pytest -v -s tests/test_acceptance.py`` reads as a checklist.  Only the
worked example (under one second) and the rank-identity sweep (under a
minute) carry wall-clock budgets.
"""

import itertools
import random
import time
from collections import defaultdict

from zelmap import (
    FP_DEFAULT,
    RATIONAL,
    CellPatternError,
    Matrix,
    NotInImageError,
    Permutation,
    QuiverA,
    bruhat_leq_full,
    col_order,
    decompose,
    is_z_type,
    mult_matrix,
    multiplicities_from_ranks,
    predicted_mult_matrix,
    random_rep,
    rank_parameters,
    ranksum_identity,
    row_order,
    run_suite,
    zelevinsky_matrix,
    zelevinsky_perm,
    zelevinsky_preimage,
)
from zelmap.cli import run_command

from test_representation import sample_rep7  # noqa: F401  (shared builder)
from test_zelevinsky import sample_rep5

RANK_TABLE_7 = (
    "a\tb\trank\n"
    "1\t1\t2\n1\t2\t2\n1\t3\t2\n1\t4\t2\n1\t5\t2\n1\t6\t3\n1\t7\t3\n"
    "2\t2\t2\n2\t3\t2\n2\t4\t2\n2\t5\t2\n2\t6\t3\n2\t7\t3\n"
    "3\t3\t2\n3\t4\t1\n3\t5\t0\n3\t6\t1\n3\t7\t1\n"
    "4\t4\t2\n4\t5\t1\n4\t6\t1\n4\t7\t2\n"
    "5\t5\t1\n5\t6\t1\n5\t7\t1\n"
    "6\t6\t1\n6\t7\t1\n"
    "7\t7\t1\n"
)

ONES_TABLE_7 = (
    ".\t7\t5\t4\t1\t2\t3\t6\n"
    "1\t0\t0\t0\t0\t2\t0\t0\n"
    "2\t0\t0\t0\t0\t0\t2\t0\n"
    "5\t0\t0\t0\t0\t0\t0\t1\n"
    "7\t0\t0\t1\t0\t0\t0\t0\n"
    "6\t1\t0\t0\t0\t0\t0\t0\n"
    "4\t0\t1\t0\t1\t0\t0\t0\n"
    "3\t0\t0\t1\t1\t0\t0\t0\n"
)

PERM_7 = (
    "w: 7 9 6 11 8 10 1 2 3 4 5\n"
    "v: 6 5 8 9 1 2 3 4 10 11 7\n"
    "z-type: true\n"
    "block-ones:\n" + ONES_TABLE_7
)

DECOMPOSE_7 = "a\tb\tmult\n1\t3\t1\n1\t4\t1\n4\t7\t1\n"


def _cli(capsys, *argv):
    code = run_command(list(argv))
    return code, capsys.readouterr().out


def test_01_worked_example_exact_outputs(capsys, data_dir):
    inst = str(data_dir / "n7_sample.json")
    by_mults = str(data_dir / "n7_sample_mults.json")
    start = time.perf_counter()
    assert _cli(capsys, "rank-table", inst) == (0, RANK_TABLE_7)
    assert _cli(capsys, "perm", inst) == (0, PERM_7)
    assert _cli(capsys, "decompose", inst) == (0, DECOMPOSE_7)
    assert _cli(capsys, "mult-matrix", inst) == (0, ONES_TABLE_7)
    assert _cli(capsys, "rank-table", by_mults) == (0, RANK_TABLE_7)
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    print("[acceptance] test_01_worked_example_exact_outputs PASS")


def test_02_rank_identity_random_sweep():
    start = time.perf_counter()
    report = run_suite("rank-identity", trials=1000, seed=0)
    elapsed = time.perf_counter() - start
    assert report.trials == 1000
    assert report.failures == []
    assert elapsed < 60.0
    print("[acceptance] test_02_rank_identity_random_sweep PASS")


def test_03_constant_positions_random_sweep():
    report = run_suite("constant-count", trials=200, seed=1)
    assert report.trials == 200 and report.failures == []
    print("[acceptance] test_03_constant_positions_random_sweep PASS")


def test_04_degeneration_matches_rank_ceilings():
    report = run_suite("degeneration-kl", trials=500, seed=2)
    assert report.trials == 500 and report.failures == []
    print("[acceptance] test_04_degeneration_matches_rank_ceilings PASS")


def test_05_multiplicity_closed_form():
    report = run_suite("multiplicity", trials=1000, seed=3)
    assert report.trials == 1000 and report.failures == []

    # Exhaustive over orientations up to five arrows, sampled dimensions.
    for n in range(2, 7):
        for letters in itertools.product("LR", repeat=n - 1):
            word = "".join(letters)
            q = QuiverA(n, word)
            rng = random.Random(f"sweep:{word}")
            for _ in range(3):
                dims = tuple(rng.randint(0, 3) for _ in range(n))
                rep = random_rep(q, dims, FP_DEFAULT, rng)
                r = rank_parameters(rep)
                closed = multiplicities_from_ranks(r)
                assert closed == decompose(rep)
                w = zelevinsky_perm(r)
                assert mult_matrix(w) == predicted_mult_matrix(q, closed)
                for a in range(1, n + 1):
                    for b in range(a + 1, n + 1):
                        assert ranksum_identity(r, a, b)["ok"]
    print("[acceptance] test_05_multiplicity_closed_form PASS")


def _col_spans(seq, dims):
    spans, off = [], 0
    for label in seq:
        spans.append(range(off, off + dims[label]))
        off += dims[label]
    return spans


def _increasing_in_blocks(one_line, spans):
    return all(
        one_line[i] < one_line[i + 1]
        for span in spans
        for i in span[:-1]
    )


def _block_shuffles(spans):
    """All permutations of 1..n that move values only inside the spans."""
    n = sum(len(s) for s in spans)
    pools = []
    for span in spans:
        values = [i + 1 for i in span]
        pools.append([dict(zip(values, perm)) for perm in itertools.permutations(values)])
    for combo in itertools.product(*pools):
        table = list(range(n + 1))
        for mapping in combo:
            for src, dst in mapping.items():
                table[src] = dst
        yield table


def test_06_distinguished_permutation_is_bruhat_top():
    report = run_suite("ztype-bruhat", trials=500, seed=4)
    assert report.trials == 500 and report.failures == []

    # Brute force: within every class of block one-counts, the
    # column-block-increasing representatives have exactly one member of
    # the distinguished shape, and it tops the class in Bruhat order.
    cases = [("RR", (2, 2, 2)), ("RL", (2, 2, 2)), ("LR", (1, 2, 2)), ("RLR", (2, 2, 2, 1))]
    for word, dim_vec in cases:
        q = QuiverA(len(word) + 1, word)
        dims = {x: dim_vec[x - 1] for x in range(1, q.n + 1)}
        blocking = (row_order(q), col_order(q), dims)
        spans = _col_spans(col_order(q), dims)
        total = sum(dim_vec)
        classes = defaultdict(list)
        for one_line in itertools.permutations(range(1, total + 1)):
            if not _increasing_in_blocks(one_line, spans):
                continue
            w = Permutation(one_line, blocking=blocking)
            key = tuple(sorted(w.block_one_counts().items()))
            classes[key].append(w)
        assert classes
        for members in classes.values():
            tops = [w for w in members if is_z_type(w)]
            assert len(tops) == 1
            top = tops[0]
            for w in members:
                assert bruhat_leq_full(w, top)
                assert w == top or not bruhat_leq_full(top, w)

    # The worked example's coset: 64 elements, four representatives.
    rep7 = sample_rep7()
    w7 = zelevinsky_perm(rank_parameters(rep7))
    row_seq, col_seq, dims = w7.blocking
    row_spans = _col_spans(row_seq, dims)
    col_spans = _col_spans(col_seq, dims)
    coset = set()
    for rho in _block_shuffles(row_spans):
        for gamma in _block_shuffles(col_spans):
            coset.add(
                tuple(rho[w7.one_line[gamma[j + 1] - 1]] for j in range(w7.n))
            )
    assert len(coset) == 64
    assert any(
        not bruhat_leq_full(Permutation(ol), w7) for ol in coset
    )  # the raw coset pokes above; only representatives are capped
    reps = [
        Permutation(ol, blocking=w7.blocking)
        for ol in sorted(coset)
        if _increasing_in_blocks(ol, col_spans)
    ]
    assert len(reps) == 4
    assert [u for u in reps if is_z_type(u)] == [w7]
    for u in reps:
        assert bruhat_leq_full(u, w7)
    below = Permutation((7, 8, 6, 10, 9, 11, 1, 2, 3, 4, 5), blocking=w7.blocking)
    assert below in reps
    assert not is_z_type(below)
    assert bruhat_leq_full(below, w7) and not bruhat_leq_full(w7, below)
    print("[acceptance] test_06_distinguished_permutation_is_bruhat_top PASS")


def test_07_embedding_inverts_on_its_image():
    rng = random.Random(11)
    for trial in range(1000):
        n = rng.randint(2, 8)
        word = "".join(rng.choice("LR") for _ in range(n - 1))
        q = QuiverA(n, word)
        dims = tuple(rng.randint(0, 3) for _ in range(n))
        field = RATIONAL if trial % 5 == 0 else FP_DEFAULT
        rep = random_rep(q, dims, field, rng)
        back = zelevinsky_preimage(q, dims, zelevinsky_matrix(rep).matrix)
        assert back == rep

    # Off-image points are rejected with the exact obstruction.
    q5 = QuiverA(5, "RRLL")
    d5 = (2, 2, 2, 2, 2)
    good = zelevinsky_matrix(sample_rep5()).matrix

    def perturbed(i, j, value):
        rows = good.tolist()
        rows[i - 1][j - 1] = value
        return Matrix.from_rows(FP_DEFAULT, rows)

    for i, j, value, generators in [
        (9, 1, 1, ("x_{9,1}",)),
        (9, 5, 5, ("x_{9,5} - x_{9,7}x_{3,5} - x_{9,8}x_{4,5}",)),
    ]:
        try:
            zelevinsky_preimage(q5, d5, perturbed(i, j, value))
        except NotInImageError as exc:
            assert exc.generators == generators
        else:
            raise AssertionError("off-image point accepted")

    for i, j, value, blocks in [(1, 2, 1, ((1, 5),)), (1, 5, 0, ((1, 1),))]:
        try:
            zelevinsky_preimage(q5, d5, perturbed(i, j, value))
        except CellPatternError as exc:
            assert exc.blocks == blocks
        else:
            raise AssertionError("cell-pattern violation accepted")
    print("[acceptance] test_07_embedding_inverts_on_its_image PASS")


def test_08_base_change_equivariance():
    report = run_suite("equivariance", trials=200, seed=5)
    assert report.trials == 200 and report.failures == []
    print("[acceptance] test_08_base_change_equivariance PASS")
