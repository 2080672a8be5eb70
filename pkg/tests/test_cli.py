import csv
import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from berrylab import cli

GOLDEN = Path(__file__).parent / "golden"
REGEN = os.environ.get("BERRYLAB_REGEN_GOLDEN") == "1"

GOLDEN_RUNS = {
    "verify_bounds.csv": ["verify", "--h", "0.5", "--w", "0.5", "--N", "4,8,16,32", "--modes", "bounds"],
    "verify_exact.csv": ["verify", "--h", "0.5", "--w", "0.5", "--N", "4,8,16,32"],
    "cf_table.csv": ["cf-table", "--h", "0.5", "--w", "0.5", "--N", "4", "--tmin", "-5", "--tmax", "5", "--points", "21"],
    "cdf_table.csv": ["cdf-table", "--h", "0.2", "--w", "0.2", "--N", "4", "--smin", "-2", "--smax", "2", "--points", "21"],
    "example.csv": ["example", "--N", "100000", "--format", "csv"],
    "mc.json": ["mc", "--h", "0.5", "--w", "0.5", "--N", "4", "--reps", "100000", "--seed", "9"],
}


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name", sorted(GOLDEN_RUNS))
def test_golden(name, capsys):
    code, out, _ = run(GOLDEN_RUNS[name], capsys)
    assert code == 0
    path = GOLDEN / name
    if REGEN:
        path.write_text(out)
    assert out == path.read_text()


def test_golden_repeatable(capsys):
    first = run(GOLDEN_RUNS["verify_exact.csv"], capsys)[1]
    second = run(GOLDEN_RUNS["verify_exact.csv"], capsys)[1]
    assert first == second


def test_verify_columns(capsys):
    code, out, _ = run(GOLDEN_RUNS["verify_bounds.csv"], capsys)
    header = next(csv.reader(io.StringIO(out)))
    assert header == ["N", "ks_exact", "ks_err", "ks_mc", "mc_err", "rhs_thm_main", "rhs_thm_main2", "smoothing_ub", "verdict"]


def test_verify_acceptance_run(capsys, tmp_path):
    svg = tmp_path / "curve.svg"
    code, out, _ = run(GOLDEN_RUNS["verify_exact.csv"] + ["--svg", str(svg)], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["verdict"] for r in rows] == ["pass"] * 4
    assert svg.read_text().startswith("<svg")


def test_verify_bounds_fast_path(capsys, monkeypatch):
    def boom(*a, **k):
        raise AssertionError("sampling in bounds-only mode")

    monkeypatch.setattr(cli, "sample_normalized_sum", boom)
    monkeypatch.setattr(cli, "ks_exact_mu_hw", boom)
    code, out, _ = run(GOLDEN_RUNS["verify_bounds.csv"], capsys)
    assert code == 0


def test_verify_with_mc_and_json(capsys):
    code, out, _ = run(["verify", "--h", "0.5", "--w", "0.5", "--N", "4", "--modes", "exact,mc", "--reps", "200000",
                        "--format", "json"], capsys)
    assert code == 0
    row = json.loads(out)[0]
    assert abs(row["ks_mc"] - row["ks_exact"]) <= row["mc_err"] + row["ks_err"]


def test_verify_svg_format(capsys):
    code, out, _ = run(["verify", "--h", "0.5", "--w", "0.5", "--N", "4,8", "--modes", "bounds", "--format", "svg"], capsys)
    assert code == 0 and out.startswith("<svg")


def test_verify_law_file(capsys, tmp_path):
    from berrylab.laws import law_to_json, mu_hw

    p = tmp_path / "law.json"
    p.write_text(law_to_json(mu_hw(0.5, 0.5)))
    code, out, _ = run(["verify", "--law", str(p), "--N", "4,8", "--modes", "bounds"], capsys)
    assert code == 0
    code2, out2, _ = run(["verify", "--h", "0.5", "--w", "0.5", "--N", "4,8", "--modes", "bounds"], capsys)
    assert out == out2


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--h", "0.5", "--w", "0.5", "--N", ""],
        ["verify", "--h", "0.5", "--w", "0.5", "--N", "8,4"],
        ["verify", "--h", "0.5", "--w", "0.5", "--N", "4", "--modes", "nope"],
        ["verify", "--N", "4"],
        ["example", "--N", "1000"],
        ["reverse", "--witness", "C=1", "bogus"],
        ["ks", "--h", "0.5"],
    ],
)
def test_usage_errors(argv, capsys):
    assert cli.main(argv) == 64


def test_unknown_subcommand_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 64


def test_domain_error(capsys):
    code, _, err = run(["bounds", "--h", "1", "--w", "1", "--N", "10"], capsys)
    assert code == 65
    assert "h*w" in err


def test_truncation_exit(capsys):
    code, _, err = run(["ks", "--h", "0.9", "--w", "1", "--N", "1000"], capsys)
    assert code == 3


def test_example_exit_codes(capsys):
    assert run(["example", "--N", "100000"], capsys)[0] == 0
    assert run(["example", "--N", "10000000"], capsys)[0] == 0


def test_reverse(capsys):
    code, out, _ = run(["reverse", "--h", "0.2", "--w", "0.2", "--N", "16"], capsys)
    assert code == 0 and "holds" in out
    code, out, _ = run(["reverse", "--h", "0.2", "--w", "0.2", "--N", "16", "--format", "csv"], capsys)
    assert code == 0 and out.splitlines()[0].startswith("h,w,N")


def test_reverse_inadmissible(capsys):
    code, _, err = run(["reverse", "--h", "1", "--w", "0.9", "--N", "4"], capsys)
    assert code == 65 and "inadmissible" in err


def test_reverse_witness(capsys):
    code, out, _ = run(["reverse", "--witness", "C=1", "c=1", "rho=1", "rho'=0"], capsys)
    assert code == 0 and "witness N =" in out
    code, _, _ = run(["reverse", "--witness", "rho=0", "rho'=0"], capsys)
    assert code == 2


def test_bounds_json(capsys):
    code, out, _ = run(["bounds", "--h", "0.5", "--w", "0.5", "--N", "16"], capsys)
    d = json.loads(out)
    assert code == 0 and {"C_k", "c_tilde", "c0", "L", "vacuous"} <= set(d)


def test_ks_json(capsys):
    code, out, _ = run(["ks", "--h", "0", "--w", "1", "--N", "1"], capsys)
    d = json.loads(out)
    assert code == 0 and d["mode"] == "certified"
    assert abs(d["distance"] - 0.3413447460685429) <= d["err"]


def test_mc_samples_out(capsys, tmp_path):
    p = tmp_path / "s.txt"
    code, out, _ = run(["mc", "--h", "0.5", "--w", "0.5", "--N", "2", "--reps", "1000", "--samples-out", str(p)], capsys)
    vals = [float(v) for v in p.read_text().split()]
    assert code == 0 and len(vals) == 1000 and vals == sorted(vals)
    assert json.loads(out)["mode"] == "statistical"


def test_threads_env_default(capsys, monkeypatch):
    monkeypatch.setenv("BERRYLAB_THREADS", "4")
    code, out4, _ = run(GOLDEN_RUNS["mc.json"], capsys)
    assert out4 == (GOLDEN / "mc.json").read_text()


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "berrylab", "example"], capture_output=True, text=True)
    assert r.returncode == 0 and "verdict: holds" in r.stdout
