"""End-to-end command-line behavior: formats, exit codes, determinism."""

import json

import pytest

from zelmap.cli import parse_instance, run_command


def run(capsys, *argv):
    code = run_command(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture()
def n7(data_dir):
    return str(data_dir / "n7_sample.json")


@pytest.fixture()
def n7m(data_dir):
    return str(data_dir / "n7_sample_mults.json")


@pytest.fixture()
def n5(data_dir):
    return str(data_dir / "n5_sample.json")


def write_instance(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def test_help_and_usage_exit_codes(capsys):
    assert run(capsys, "--help")[0] == 0
    assert run(capsys)[0] == 2
    assert run(capsys, "no-such-command")[0] == 2


def test_rank_table_golden(capsys, n7):
    code, out, _ = run(capsys, "rank-table", n7)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "a\tb\trank"
    assert len(lines) == 1 + 28
    assert "1\t7\t3" in lines
    assert "3\t5\t0" in lines
    assert "4\t7\t2" in lines


def test_matrices_and_multiplicities_agree(capsys, n7, n7m):
    a = run(capsys, "rank-table", n7)
    b = run(capsys, "rank-table", n7m)
    assert a == b


def test_perm_golden(capsys, n7):
    code, out, _ = run(capsys, "perm", n7)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "w: 7 9 6 11 8 10 1 2 3 4 5"
    assert lines[1] == "v: 6 5 8 9 1 2 3 4 10 11 7"
    assert lines[2] == "z-type: true"
    assert lines[3] == "block-ones:"
    assert lines[4] == ".\t7\t5\t4\t1\t2\t3\t6"
    assert lines[5] == "1\t0\t0\t0\t0\t2\t0\t0"


def test_decompose_golden(capsys, n7m):
    code, out, _ = run(capsys, "decompose", n7m)
    assert code == 0
    assert out == "a\tb\tmult\n1\t3\t1\n1\t4\t1\n4\t7\t1\n"


def test_mult_matrix_matches_block_ones(capsys, n7):
    _, perm_out, _ = run(capsys, "perm", n7)
    _, mm_out, _ = run(capsys, "mult-matrix", n7)
    assert mm_out == perm_out.split("block-ones:\n")[1]


def test_zelevinsky_split_golden(capsys, n7):
    code, out, _ = run(capsys, "zelevinsky", n7, "--show-vq-split")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n 7 arrows RRLLRL size 11"
    assert lines[1] == "row-blocks: 1:1-2 2:3-4 5:5 7:6 6:7 4:8-9 3:10-11"
    assert lines[2] == "col-blocks: 7:1 5:2 4:3-4 1:5-6 2:7-8 3:9-10 6:11"
    at = lines.index("southwest-block-ranks:")
    assert lines[at + 1] == ".\t7\t5\t4\t1\t2\t3\t6"
    assert lines[at + 2] == "1\t1\t2\t4\t6\t8\t10\t11"
    assert lines[at + 3] == "2\t1\t2\t4\t2+4\t6\t8\t9"
    assert lines[at + 7] == "4\t0\t1+0\t0+2\t2+2\t2+2\t4\t4"


def test_flat_and_nested_matrices_agree(capsys, tmp_path, n5):
    flat = {
        "n": 5,
        "arrows": "RRLL",
        "dims": [2, 2, 2, 2, 2],
        "matrices": {
            "1": [1, 2, 3, 4],
            "2": [0, 1, 1, 0],
            "3": [1, 1, 0, 1],
            "4": [2, 0, 1, 1],
        },
    }
    path = write_instance(tmp_path, "flat.json", flat)
    assert run(capsys, "zelevinsky", path) == run(capsys, "zelevinsky", n5)


def test_rational_fraction_entries(capsys, tmp_path):
    inst = {
        "n": 2,
        "arrows": "R",
        "dims": [1, 1],
        "field": "rational",
        "matrices": {"1": [["1/2"]]},
    }
    path = write_instance(tmp_path, "frac.json", inst)
    code, out, _ = run(capsys, "rank-table", path)
    assert code == 0 and "1\t2\t1" in out.splitlines()
    inst["field"] = "fp"
    bad = write_instance(tmp_path, "fracfp.json", inst)
    code, _, err = run(capsys, "rank-table", bad)
    assert code == 2 and "prime" not in err and "integers" in err


@pytest.mark.parametrize(
    "mangle",
    [
        lambda d: d.update(n="7"),
        lambda d: d.update(arrows="RRLLRX"),
        lambda d: d.update(dims=[2, 2, 2, 2, 1, 1]),
        lambda d: d.update(extra=1),
        lambda d: d.update(field="gf2"),
        lambda d: d.update(prime=6),
        lambda d: d.update(field="rational", prime=7),
        lambda d: d["matrices"].pop("3"),
        lambda d: d["matrices"].update({"9": [[1]]}),
        lambda d: d["matrices"].update({"1": [[1, 0]]}),
        lambda d: d["matrices"].update({"1": [1, 0, 0]}),
        lambda d: d.update(multiplicities={"1,1": 1}),
        lambda d: d.pop("dims"),
    ],
)
def test_instance_validation_failures(capsys, tmp_path, mangle):
    data = {
        "n": 7,
        "arrows": "RRLLRL",
        "dims": [2, 2, 2, 2, 1, 1, 1],
        "matrices": {
            "1": [[1, 0], [0, 1]],
            "2": [[1, 0], [0, 1]],
            "3": [[1, 0], [0, 0]],
            "4": [[0], [1]],
            "5": [[1]],
            "6": [[1]],
        },
    }
    mangle(data)
    path = write_instance(tmp_path, "bad.json", data)
    code, _, err = run(capsys, "rank-table", path)
    assert code == 2
    assert err.startswith("error: ")


def test_mults_dims_consistency(capsys, tmp_path):
    good = {"n": 2, "arrows": "R", "dims": [1, 1], "multiplicities": {"1,2": 1}}
    path = write_instance(tmp_path, "ok.json", good)
    assert run(capsys, "rank-table", path)[0] == 0
    bad = dict(good, dims=[2, 1])
    path = write_instance(tmp_path, "bad.json", bad)
    code, _, err = run(capsys, "rank-table", path)
    assert code == 2 and "disagree" in err


def test_unreadable_inputs(capsys, tmp_path):
    assert run(capsys, "rank-table", str(tmp_path / "missing.json"))[0] == 2
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert run(capsys, "rank-table", str(path))[0] == 2


def test_parse_instance_multiplicity_keys():
    with pytest.raises(ValueError):
        parse_instance(
            {"n": 3, "arrows": "RR", "multiplicities": {"2,1": 1}}
        )
    with pytest.raises(ValueError):
        parse_instance(
            {"n": 3, "arrows": "RR", "multiplicities": {"1-2": 1}}
        )
    inst = parse_instance({"n": 3, "arrows": "RR", "multiplicities": {"1,3": 2}})
    assert inst.dims == (2, 2, 2)


def test_bruhat_and_degenerates(capsys, tmp_path):
    glued = write_instance(
        tmp_path, "glued.json",
        {"n": 2, "arrows": "R", "multiplicities": {"1,2": 1}},
    )
    split = write_instance(
        tmp_path, "split.json",
        {"n": 2, "arrows": "R", "multiplicities": {"1,1": 1, "2,2": 1}},
    )
    code, out, _ = run(capsys, "degenerates", split, glued)
    assert (code, out) == (0, "true\n")
    code, out, _ = run(capsys, "degenerates", glued, split)
    assert code == 1
    assert out.splitlines()[0] == "false"
    assert "witness" in out
    code, out, _ = run(capsys, "bruhat", split, glued)
    assert (code, out) == (0, "true\n")
    code, out, _ = run(capsys, "bruhat", glued, split)
    assert code == 1 and "witness" in out

    other = write_instance(
        tmp_path, "other.json",
        {"n": 2, "arrows": "L", "multiplicities": {"1,2": 1}},
    )
    assert run(capsys, "bruhat", glued, other)[0] == 2
    assert run(capsys, "degenerates", glued, other)[0] == 2
    taller = write_instance(
        tmp_path, "taller.json",
        {"n": 2, "arrows": "R", "multiplicities": {"1,2": 2}},
    )
    assert run(capsys, "bruhat", glued, taller)[0] == 2  # blockings differ
    code, out, _ = run(capsys, "degenerates", glued, taller)
    assert code == 1 and "dimension vectors differ" in out


def test_image_check_accept(capsys, data_dir, n5):
    code, out, _ = run(capsys, "image-check", str(data_dir / "n5_point.json"))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "accept"
    assert lines[1] == "edge 1 (R) 2x2:"
    assert lines[2] == "  1 2" and lines[3] == "  3 4"


def test_image_check_rejections(capsys, data_dir):
    code, out, _ = run(capsys, "image-check", str(data_dir / "n5_point_bad91.json"))
    assert code == 1
    assert out == "reject: nonvanishing image generators\n  x_{9,1}\n"
    code, out, _ = run(capsys, "image-check", str(data_dir / "n5_point_bad95.json"))
    assert code == 1
    assert out.splitlines()[1] == "  x_{9,5} - x_{9,7}x_{3,5} - x_{9,8}x_{4,5}"
    code, out, _ = run(
        capsys, "image-check", str(data_dir / "n5_point_badpattern.json")
    )
    assert (code, out) == (1, "reject: cell pattern violated at blocks (1,5)\n")
    code, out, _ = run(capsys, "image-check", str(data_dir / "n5_point_baddiag.json"))
    assert (code, out) == (1, "reject: cell pattern violated at blocks (1,1)\n")
    code, _, _ = run(capsys, "image-check", str(data_dir / "n5_sample.json"))
    assert code == 2  # not a point instance


def test_check_stdout_is_deterministic(capsys, tmp_path):
    args = ("check", "--trials", "3", "--seed", "42")
    first = run(capsys, *args)
    second = run(capsys, *args)
    assert first == second
    code, out, _ = first
    assert code == 0
    assert out.splitlines()[0] == "rank-identity: 3 trials, 0 failures"
    assert out.splitlines()[-1] == "all 7 suites passed"


def test_check_report_and_suite_filter(capsys, tmp_path):
    report = tmp_path / "report.json"
    code, out, _ = run(
        capsys, "check", "--trials", "2", "--suite", "stacked-rank",
        "--suite", "rank-identity", "--jobs", "2", "--report", str(report),
    )
    assert code == 0
    assert out.splitlines()[:2] == [
        "stacked-rank: 2 trials, 0 failures",
        "rank-identity: 2 trials, 0 failures",
    ]
    data = json.loads(report.read_text())
    assert data["passed"] is True
    assert [s["suite"] for s in data["suites"]] == ["stacked-rank", "rank-identity"]
    assert all("wall_time_s" in s for s in data["suites"])


def test_check_flag_validation(capsys):
    assert run(capsys, "check", "--trials", "0")[0] == 2
    assert run(capsys, "check", "--field", "rational", "--prime", "7")[0] == 2
    assert run(capsys, "check", "--prime", "8")[0] == 2
    assert run(capsys, "check", "--orientation", "RX")[0] == 2
    assert run(capsys, "check", "--suite", "nope")[0] == 2
