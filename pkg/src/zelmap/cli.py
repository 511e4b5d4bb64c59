"""Command-line front end around the library.

Instance files are JSON objects describing a quiver representation — either
explicit edge matrices or interval multiplicities — or an ambient square
matrix to test for membership in the image of the embedding:

    {
      "n": 5,
      "arrows": "RRLL",
      "dims": [2, 2, 2, 2, 2],
      "field": "fp",                 # optional; "fp" (default) or "rational"
      "prime": 32003,                # optional; fp only
      "matrices": {"1": [[1, 2], [3, 4]], ...}   # keys "1" .. "n-1"
    }

Exactly one of "matrices", "multiplicities" ({"a,b": count}), or "point"
(an NxN matrix, N = sum of dims) must be present.  Matrix values are
nested rows or one flat row-major list; rational entries may be written
as "p/q" strings.  "dims" may be omitted with "multiplicities".

Exit status: 0 on success, 1 when a mathematical check fails (a false
comparison, a rejected matrix, a failing suite), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .exact_linalg import FP_DEFAULT, RATIONAL, Field, Matrix
from .harness import SUITE_NAMES, HarnessOptions, run_check
from .multiplicity import mult_matrix
from .quiver import QuiverA, intervals, interval_windows
from .representation import (
    Representation,
    decompose,
    edge_shape,
    rank_parameters,
    rep_from_multiplicities,
)
from .zelevinsky import (
    CellPatternError,
    NotInImageError,
    block_kind,
    bruhat_leq,
    is_z_type,
    zelevinsky_matrix,
    zelevinsky_perm,
    zelevinsky_preimage,
    zero_rep_perm,
)


class InstanceError(ValueError):
    """Unreadable, malformed, or inconsistent command input."""


@dataclass
class Instance:
    """A parsed instance file: a representation or an ambient matrix."""

    quiver: QuiverA
    dims: tuple
    field: Field
    rep: Representation | None = None
    point: Matrix | None = None


def _expect(cond, msg: str):
    if not cond:
        raise InstanceError(msg)


def _plain_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _entry(field: Field, x, where: str):
    if _plain_int(x):
        return x
    if field.kind == "rational" and isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError):
            raise InstanceError(f"{where}: bad rational literal {x!r}") from None
    kinds = "integers or 'p/q' strings" if field.kind == "rational" else "integers"
    raise InstanceError(f"{where}: entries must be {kinds}, got {x!r}")


def _matrix_from_json(field: Field, shape, data, where: str) -> Matrix:
    """Accept nested rows or a flat row-major list of the right length."""
    rows, cols = shape
    _expect(isinstance(data, list), f"{where}: expected a list")
    if data and all(isinstance(r, list) for r in data):
        _expect(len(data) == rows, f"{where}: expected {rows} rows, got {len(data)}")
        for i, r in enumerate(data):
            _expect(
                len(r) == cols,
                f"{where}: row {i + 1} has {len(r)} entries, expected {cols}",
            )
        vals = [[_entry(field, x, where) for x in r] for r in data]
    else:
        _expect(
            all(not isinstance(x, list) for x in data),
            f"{where}: mix of flat entries and nested rows",
        )
        _expect(
            len(data) == rows * cols,
            f"{where}: expected {rows}x{cols} = {rows * cols} entries, got {len(data)}",
        )
        flat = [_entry(field, x, where) for x in data]
        vals = [flat[i * cols : (i + 1) * cols] for i in range(rows)]
    if rows == 0 or cols == 0:
        return Matrix.zeros(field, rows, cols)
    return Matrix.from_rows(field, vals)


def _parse_multiplicities(data, n: int) -> dict:
    _expect(isinstance(data, dict), "'multiplicities' must be an object")
    mults = {}
    for key, c in data.items():
        try:
            a, b = (int(s) for s in key.split(","))
        except ValueError:
            raise InstanceError(
                f"multiplicity key {key!r} is not of the form 'a,b'"
            ) from None
        _expect(
            1 <= a <= b <= n,
            f"multiplicity key {key!r} is not an interval inside 1..{n}",
        )
        _expect(
            _plain_int(c) and c >= 0,
            f"multiplicity of {key!r} must be a nonnegative integer",
        )
        if c:
            mults[(a, b)] = mults.get((a, b), 0) + c
    return mults


def _parse_matrices(q: QuiverA, dims, field: Field, data) -> Representation:
    _expect(isinstance(data, dict), "'matrices' must be an object keyed by edge index")
    want = {str(k) for k in range(1, q.n)}
    missing, extra = want - set(data), set(data) - want
    _expect(not missing, f"'matrices' is missing edges {sorted(missing, key=int)}")
    _expect(not extra, f"'matrices' has unknown keys {sorted(extra)}")
    maps = [
        _matrix_from_json(
            field, edge_shape(q, dims, k), data[str(k)], f"matrix for edge {k}"
        )
        for k in range(1, q.n)
    ]
    return Representation(q, dims, field, maps)


_TOP_KEYS = {"n", "arrows", "dims", "field", "prime", "matrices", "multiplicities", "point"}


def parse_instance(data) -> Instance:
    """Validate a decoded instance object and build the library objects."""
    _expect(isinstance(data, dict), "instance must be a JSON object")
    unknown = set(data) - _TOP_KEYS
    _expect(not unknown, f"unknown instance keys: {sorted(unknown)}")

    n = data.get("n")
    _expect(_plain_int(n) and n >= 1, "'n' must be a positive integer")
    arrows = data.get("arrows")
    _expect(isinstance(arrows, str), "'arrows' must be a string over L/R")
    try:
        q = QuiverA(n, arrows)
    except ValueError as exc:
        raise InstanceError(str(exc)) from None

    kind = data.get("field", "fp")
    _expect(kind in ("fp", "rational"), f"'field' must be 'fp' or 'rational', got {kind!r}")
    prime = data.get("prime")
    if kind == "rational":
        _expect(prime is None, "'prime' only applies to the fp field")
        field = RATIONAL
    elif prime is None:
        field = FP_DEFAULT
    else:
        _expect(_plain_int(prime), "'prime' must be an integer")
        try:
            field = Field("fp", prime)
        except ValueError as exc:
            raise InstanceError(str(exc)) from None

    content = [key for key in ("matrices", "multiplicities", "point") if key in data]
    _expect(
        len(content) == 1,
        "exactly one of 'matrices', 'multiplicities', 'point' is required",
    )

    dims = data.get("dims")
    if dims is not None:
        _expect(
            isinstance(dims, list)
            and len(dims) == n
            and all(_plain_int(d) and d >= 0 for d in dims),
            f"'dims' must be a list of {n} nonnegative integers",
        )
        dims = tuple(dims)

    if content[0] == "multiplicities":
        mults = _parse_multiplicities(data["multiplicities"], n)
        rep = rep_from_multiplicities(q, mults, field)
        if dims is not None:
            _expect(
                rep.dims == dims,
                f"'dims' {list(dims)} disagree with the multiplicities"
                f" (which need {list(rep.dims)})",
            )
        return Instance(q, rep.dims, field, rep=rep)

    _expect(dims is not None, f"'dims' is required alongside '{content[0]}'")
    if content[0] == "matrices":
        rep = _parse_matrices(q, dims, field, data["matrices"])
        return Instance(q, dims, field, rep=rep)
    size = sum(dims)
    point = _matrix_from_json(field, (size, size), data["point"], "'point'")
    return Instance(q, dims, field, point=point)


def load_instance(path: str) -> Instance:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{path} is not valid JSON: {exc}") from None
    try:
        return parse_instance(data)
    except InstanceError as exc:
        raise InstanceError(f"{path}: {exc}") from None


def _rep_of(inst: Instance, path: str) -> Representation:
    if inst.rep is None:
        raise InstanceError(
            f"{path}: this command needs 'matrices' or 'multiplicities', not 'point'"
        )
    return inst.rep


# ----------------------------------------------------------------------
# output helpers


def _matrix_lines(m: Matrix, indent: str = "") -> list[str]:
    if m.rows == 0 or m.cols == 0:
        return []
    return [indent + " ".join(str(x) for x in m.row(i)) for i in range(m.rows)]


def _table_lines(row_labels, col_labels, cell) -> list[str]:
    lines = ["\t".join(["."] + [str(y) for y in col_labels])]
    for x in row_labels:
        lines.append("\t".join([str(x)] + [str(cell(x, y)) for y in col_labels]))
    return lines


def _span_text(bm, seq, span) -> str:
    parts = []
    for v in seq:
        s, e = span(v)
        if e == s:
            parts.append(f"{v}:-")
        elif e == s + 1:
            parts.append(f"{v}:{s + 1}")
        else:
            parts.append(f"{v}:{s + 1}-{e}")
    return " ".join(parts)


_KIND_CHAR = {
    "diagonal": "i",
    "arrow": "a",
    "product": "p",
    "zero_pattern": ".",
    "zero_image": "o",
}


def _pattern_lines(q: QuiverA, bm) -> list[str]:
    lines = []
    for x in bm.row_seq:
        r0, r1 = bm.row_range(x)
        chars = []
        for y in bm.col_seq:
            c0, c1 = bm.col_range(y)
            chars.append(_KIND_CHAR[block_kind(q, x, y)] * (c1 - c0))
        lines.extend("".join(chars) for _ in range(r1 - r0))
    return lines


# ----------------------------------------------------------------------
# commands


def _cmd_rank_table(args) -> int:
    inst = load_instance(args.instance)
    r = rank_parameters(_rep_of(inst, args.instance))
    n = inst.quiver.n
    print("a\tb\trank")
    for a in range(1, n + 1):
        for b in range(a, n + 1):
            print(f"{a}\t{b}\t{r.get(a, b)}")
    return 0


def _cmd_zelevinsky(args) -> int:
    inst = load_instance(args.instance)
    rep = _rep_of(inst, args.instance)
    q = inst.quiver
    bm = zelevinsky_matrix(rep)
    print(f"n {q.n} arrows {q.arrows or '-'} size {bm.matrix.rows}")
    print("row-blocks: " + _span_text(bm, bm.row_seq, bm.row_range))
    print("col-blocks: " + _span_text(bm, bm.col_seq, bm.col_range))
    print("matrix:")
    for line in _matrix_lines(bm.matrix):
        print(line)
    print("pattern:")
    for line in _pattern_lines(q, bm):
        print(line)
    table = bm.block_rank_table()
    print("southwest-block-ranks:")
    if args.show_vq_split:
        windows = {pos: iv for iv, pos in interval_windows(q).items()}
        base = zero_rep_perm(q, inst.dims)

        def cell(x, y):
            v = base.sw_block_rank(x, y)
            if (x, y) in windows:
                return f"{table[(x, y)] - v}+{v}"
            return table[(x, y)]

    else:

        def cell(x, y):
            return table[(x, y)]

    for line in _table_lines(bm.row_seq, bm.col_seq, cell):
        print(line)
    return 0


def _cmd_perm(args) -> int:
    inst = load_instance(args.instance)
    rep = _rep_of(inst, args.instance)
    w = zelevinsky_perm(rank_parameters(rep))
    base = zero_rep_perm(inst.quiver, inst.dims)
    print("w: " + " ".join(str(x) for x in w.one_line))
    print("v: " + " ".join(str(x) for x in base.one_line))
    print(f"z-type: {'true' if is_z_type(w) else 'false'}")
    counts = w.block_one_counts()
    print("block-ones:")
    row_seq, col_seq, _ = w.blocking
    for line in _table_lines(row_seq, col_seq, lambda x, y: counts[(x, y)]):
        print(line)
    return 0


def _cmd_decompose(args) -> int:
    inst = load_instance(args.instance)
    mults = decompose(_rep_of(inst, args.instance))
    print("a\tb\tmult")
    for a, b in sorted(mults):
        print(f"{a}\t{b}\t{mults[(a, b)]}")
    return 0


def _cmd_mult_matrix(args) -> int:
    inst = load_instance(args.instance)
    rep = _rep_of(inst, args.instance)
    w = zelevinsky_perm(rank_parameters(rep))
    counts = mult_matrix(w)
    row_seq, col_seq, _ = w.blocking
    for line in _table_lines(row_seq, col_seq, lambda x, y: counts[(x, y)]):
        print(line)
    return 0


def _load_pair(args):
    left = load_instance(args.left)
    right = load_instance(args.right)
    rep_l = _rep_of(left, args.left)
    rep_r = _rep_of(right, args.right)
    if left.quiver != right.quiver:
        raise InstanceError("the two instances live on different quivers")
    return left, right, rep_l, rep_r


def _cmd_bruhat(args) -> int:
    left, right, rep_l, rep_r = _load_pair(args)
    if left.dims != right.dims:
        raise InstanceError(
            f"dimension vectors differ: {list(left.dims)} vs {list(right.dims)}"
        )
    u = zelevinsky_perm(rank_parameters(rep_l))
    w = zelevinsky_perm(rank_parameters(rep_r))
    if bruhat_leq(u, w):
        print("true")
        return 0
    print("false")
    row_seq, col_seq, dims = w.blocking
    tu, tw = u.sw_table(), w.sw_table()
    cuts, off = [], 0
    for y in col_seq:
        off += dims[y]
        cuts.append(off)
    for j in cuts:
        for i in range(u.n + 1):
            if tu[i][j] > tw[i][j]:
                print(
                    f"witness: bottom {i} rows x left {j} columns hold"
                    f" {tu[i][j]} > {tw[i][j]} ones"
                )
                return 1
    raise AssertionError("false comparison without a witness")


def _cmd_degenerates(args) -> int:
    left, right, rep_l, rep_r = _load_pair(args)
    if left.dims != right.dims:
        print("false")
        print(
            f"witness: dimension vectors differ,"
            f" {list(left.dims)} vs {list(right.dims)}"
        )
        return 1
    ra, rb = rank_parameters(rep_l), rank_parameters(rep_r)
    for a, b in intervals(left.quiver):
        if ra.get(a, b) > rb.get(a, b):
            print("false")
            print(f"witness: rank on [{a},{b}] is {ra.get(a, b)} > {rb.get(a, b)}")
            return 1
    print("true")
    return 0


def _cmd_image_check(args) -> int:
    inst = load_instance(args.instance)
    if inst.point is None:
        raise InstanceError(
            f"{args.instance}: image-check needs an instance with a 'point' matrix"
        )
    try:
        rep = zelevinsky_preimage(inst.quiver, inst.dims, inst.point)
    except CellPatternError as exc:
        blocks = " ".join(f"({x},{y})" for x, y in exc.blocks)
        print(f"reject: cell pattern violated at blocks {blocks}")
        return 1
    except NotInImageError as exc:
        print("reject: nonvanishing image generators")
        for g in exc.generators:
            print(f"  {g}")
        return 1
    print("accept")
    for k in range(1, inst.quiver.n):
        m = rep.edge_map(k)
        print(f"edge {k} ({inst.quiver.edge(k)}) {m.rows}x{m.cols}:")
        for line in _matrix_lines(m, indent="  "):
            print(line)
    return 0


def _cmd_check(args) -> int:
    if args.trials < 1:
        raise InstanceError("--trials must be at least 1")
    if args.max_n < 2:
        raise InstanceError("--max-n must be at least 2")
    if args.max_dim < 1:
        raise InstanceError("--max-dim must be at least 1")
    if args.jobs < 1:
        raise InstanceError("--jobs must be at least 1")
    if args.field == "rational":
        if args.prime is not None:
            raise InstanceError("--prime only applies to --field fp")
        field = RATIONAL
    else:
        try:
            field = Field("fp", args.prime)
        except ValueError as exc:
            raise InstanceError(str(exc)) from None
    if args.orientation is not None:
        try:
            QuiverA(len(args.orientation) + 1, args.orientation)
        except ValueError as exc:
            raise InstanceError(str(exc)) from None

    opts = HarnessOptions(
        max_n=args.max_n,
        max_dim=args.max_dim,
        field=field,
        orientation=args.orientation,
    )
    suites = tuple(dict.fromkeys(args.suite)) if args.suite else SUITE_NAMES
    reports = run_check(suites, trials=args.trials, seed=args.seed, opts=opts,
                        jobs=args.jobs)

    failed = 0
    for report in reports:
        print(f"{report.suite}: {report.trials} trials, {len(report.failures)} failures")
        for item in report.failures[:5]:
            print(f"  trial {item['trial']}: {item['detail']}")
        if len(report.failures) > 5:
            print(f"  ... and {len(report.failures) - 5} more")
        failed += 0 if report.passed else 1
    if failed:
        print(f"{failed} of {len(reports)} suites failed")
    else:
        print(f"all {len(reports)} suites passed")

    if args.report:
        payload = {
            "seed": args.seed,
            "trials": args.trials,
            "max_n": args.max_n,
            "max_dim": args.max_dim,
            "field": args.field,
            "prime": field.prime,
            "orientation": args.orientation,
            "jobs": args.jobs,
            "suites": [
                {
                    "suite": r.suite,
                    "trials": r.trials,
                    "failures": r.failures,
                    "passed": r.passed,
                    "wall_time_s": round(r.wall_time_s, 3),
                }
                for r in reports
            ],
            "passed": not failed,
        }
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    return 1 if failed else 0


# ----------------------------------------------------------------------
# wiring


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zelmap",
        description="exact computations with the blocked-matrix embedding"
        " of type-A quiver representations",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def instance_cmd(name: str, text: str, fn):
        p = sub.add_parser(name, help=text, description=text)
        p.add_argument("instance", help="instance JSON file")
        p.set_defaults(fn=fn)
        return p

    instance_cmd("rank-table", "print every interval rank of an instance",
                 _cmd_rank_table)
    p = instance_cmd("zelevinsky",
                     "print the blocked matrix of an instance, its block pattern,"
                     " and its southwest block ranks", _cmd_zelevinsky)
    p.add_argument("--show-vq-split", action="store_true",
                   help="at interval windows, split each southwest rank into"
                   " interval rank + base-point count")
    instance_cmd("perm", "print the permutation attached to an instance and"
                 " the base-point permutation", _cmd_perm)
    instance_cmd("decompose", "print the interval multiplicities of an instance",
                 _cmd_decompose)
    instance_cmd("mult-matrix", "print the block one-counts of the attached"
                 " permutation", _cmd_mult_matrix)

    for name, text, fn in (
        ("bruhat", "compare the attached permutations of two instances in"
         " blocked Bruhat order", _cmd_bruhat),
        ("degenerates", "test whether the first instance lies in the orbit"
         " closure of the second", _cmd_degenerates),
    ):
        p = sub.add_parser(name, help=text, description=text)
        p.add_argument("left", help="instance JSON file")
        p.add_argument("right", help="instance JSON file")
        p.set_defaults(fn=fn)

    instance_cmd("image-check", "test an ambient matrix for membership in the"
                 " image of the embedding", _cmd_image_check)

    p = sub.add_parser("check", help="run randomized verification suites",
                       description="Run randomized verification suites over"
                       " freshly sampled quivers and representations."
                       "  Stdout is deterministic for fixed arguments;"
                       " timings go to the --report file only.")
    p.add_argument("--suite", action="append", choices=SUITE_NAMES,
                   help="run only this suite (repeatable; default: all)")
    p.add_argument("--trials", type=int, default=1000,
                   help="trials per suite (default 1000)")
    p.add_argument("--seed", default="0", help="base RNG seed (default 0)")
    p.add_argument("--max-n", type=int, default=8,
                   help="largest quiver size to sample (default 8)")
    p.add_argument("--max-dim", type=int, default=4,
                   help="largest vertex dimension to sample (default 4)")
    p.add_argument("--field", choices=("fp", "rational"), default="fp",
                   help="arithmetic mode (default fp)")
    p.add_argument("--prime", type=int, default=None,
                   help="modulus for --field fp (default 32003)")
    p.add_argument("--orientation", default=None, metavar="WORD",
                   help="pin every trial to this arrow word instead of"
                   " sampling orientations")
    p.add_argument("--jobs", type=int, default=1,
                   help="worker threads per suite (default 1)")
    p.add_argument("--report", metavar="PATH", default=None,
                   help="also write a JSON report (includes wall times)")
    p.set_defaults(fn=_cmd_check)
    return parser


def run_command(argv=None) -> int:
    """Parse and run one command line; returns the exit status."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage or help
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except InstanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
