import json

from strandwalk.cli import main


def run(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_compute_example_matches_known_matrix(capsys):
    code, out, _ = run(capsys, "compute", "--example-s", "--invariant", "ltw")
    assert code == 0
    assert "(1)/(2 - t)" in out
    assert "(t^-1 - 1)/(2 - t)" in out
    assert "det(I - Q) = 2 - t" in out


def test_compute_identity_braid(capsys):
    code, out, _ = run(capsys, "compute", "--strands", "3", "--braid", "", "--invariant", "ltw")
    assert code == 0
    assert out.count("[1, 0, 0]") == 1


def test_compute_ohtsuki_grade0_pure_braid(capsys):
    code, out, _ = run(
        capsys, "compute", "--strands", "2", "--braid", "1 1", "--invariant", "ohtsuki",
        "--grade", "0",
    )
    assert code == 0
    assert "at t=1: 1" in out


def test_compute_json_round_trips(capsys):
    code, out, _ = run(
        capsys, "compute", "--example-s", "--invariant", "ohtsuki", "--format", "json"
    )
    assert code == 0
    data = json.loads(out)
    assert data["0"]["entries"][0] == [[0, 2, 1], [2, -1, 1]]  # 2 - t


def test_compute_brt(capsys):
    code, out, _ = run(capsys, "compute", "--example-s", "--invariant", "brt", "--grade", "0")
    assert code == 0
    assert "2 - t" in out


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "compute", "--strands", "3", "--braid", "1 x")
    assert code == 2
    assert "input error" in err


def test_grade_out_of_range(capsys):
    code, _, err = run(
        capsys, "compute", "--example-s", "--invariant", "ltw-exterior", "--grade", "5"
    )
    assert code == 2


def test_not_string_link_exit_code(capsys):
    code, _, err = run(capsys, "verify", "--strands", "2", "--close", "1", "--braid", "")
    assert code == 3
    assert "closure arcs" in err


def test_verify_example(capsys):
    code, out, _ = run(capsys, "verify", "--example-s")
    assert code == 0
    assert "1/1 presentations fully verified" in out


def test_verify_random_suite(capsys):
    code, out, _ = run(
        capsys, "verify", "--random", "--n", "2", "--m", "2", "--max-len", "6",
        "--trials", "5", "--seed", "7",
    )
    assert code == 0
    assert "5/5 presentations fully verified" in out


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--example-s", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data[0]["passed"] is True


def test_verify_report_dir(tmp_path, capsys):
    outdir = tmp_path / "report"
    code, _, err = run(
        capsys, "verify", "--random", "--trials", "3", "--max-len", "5",
        "--seed", "1", "--report-dir", str(outdir),
    )
    assert code == 0
    assert (outdir / "report.json").exists()
    assert (outdir / "checks.csv").exists()
    assert (outdir / "suite.png").exists()
    header = (outdir / "checks.csv").read_text().splitlines()[0]
    assert header == "trial,presentation,check,grade,passed,elapsed"


def test_oracle_example(capsys):
    code, out, _ = run(capsys, "oracle", "--example-s", "--truncate", "60")
    assert code == 0
    assert "max entrywise gap" in out
    assert "non-increasing" in out


def test_oracle_json_gap_small(capsys):
    code, out, _ = run(
        capsys, "oracle", "--example-s", "--truncate", "60", "--format", "json"
    )
    data = json.loads(out)
    assert code == 0
    assert data["max_gap_float"] < 1e-6
    assert data["gap_non_increasing_tail"] is True


def test_oracle_pure_braid_gap_zero(capsys):
    code, out, _ = run(
        capsys, "oracle", "--strands", "2", "--braid", "1 -1 1", "--format", "json"
    )
    data = json.loads(out)
    assert code == 0
    assert data["max_gap"] == "0"


def test_oracle_bad_t0(capsys):
    code, _, err = run(capsys, "oracle", "--example-s", "--t0", "3/2")
    assert code == 2
    code, _, err = run(capsys, "oracle", "--example-s", "--t0", "zebra")
    assert code == 2


def test_oracle_report_dir(tmp_path, capsys):
    outdir = tmp_path / "oracle"
    code, _, _ = run(
        capsys, "oracle", "--example-s", "--truncate", "30", "--report-dir", str(outdir)
    )
    assert code == 0
    assert (outdir / "gaps.csv").exists()
    assert (outdir / "convergence.png").exists()
    lines = (outdir / "gaps.csv").read_text().splitlines()
    assert lines[0] == "crossings,gap_exact,gap_float"
    assert len(lines) == 32  # header + gaps for 0..30


def test_verify_threads_merge_deterministically(capsys):
    code1, out1, _ = run(
        capsys, "verify", "--random", "--trials", "4", "--seed", "3", "--format", "json"
    )
    code2, out2, _ = run(
        capsys, "verify", "--random", "--trials", "4", "--seed", "3", "--threads", "2",
        "--format", "json",
    )
    assert code1 == code2 == 0
    a = [r["presentation"] for r in json.loads(out1)]
    b = [r["presentation"] for r in json.loads(out2)]
    assert a == b
