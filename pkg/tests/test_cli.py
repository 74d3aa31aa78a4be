"""CLI: schemas, determinism, round-trips, exit codes."""

import math
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from blaschke_lab.cli import main, parse_grid, parse_lambda, parse_p
from blaschke_lab.errors import DomainError


def run_cli(args, tmp_path):
    out = tmp_path / "out"
    code = main(list(args) + ["--output-dir", str(out)])
    return code, out


def test_parse_helpers():
    assert parse_lambda("1/2") == 0.5
    assert parse_p("inf") == math.inf
    assert parse_p("3/2") == 1.5
    assert parse_grid("128:1024") == (128, 256, 512, 1024)
    with pytest.raises(DomainError):
        parse_grid("1024")
    with pytest.raises(DomainError):
        parse_lambda("zzz")


def test_coeffs_table_matches_exact_values(tmp_path):
    code, out = run_cli(["coeffs", "--lambda", "1/2", "--n", "2", "--kmax", "2"],
                        tmp_path)
    assert code == 0
    lines = (out / "coeffs.csv").read_text().splitlines()
    assert lines[0] == "k,value,abs_error,engine"
    rows = [line.split(",") for line in lines[1:4]]
    assert [r[0] for r in rows] == ["0", "1", "2"]
    assert [float(r[1]) for r in rows] == [0.25, -0.75, 0.1875]
    assert all(r[3] == "exact" for r in rows)


def test_norms_command_l2(tmp_path):
    code, out = run_cli(["norms", "--lambda", "1/2", "--n", "64", "--p", "2"],
                        tmp_path)
    assert code == 0
    lines = (out / "norms.csv").read_text().splitlines()
    header = lines[0].split(",")
    row = lines[1].split(",")
    assert header[0] == "p" and header[1] == "value"
    assert abs(float(row[1]) - 1.0) <= 1e-8


def test_determinism_byte_identical(tmp_path):
    args = ["coeffs", "--lambda", "3/7", "--n", "12"]
    _, out1 = run_cli(args, tmp_path / "a")
    _, out2 = run_cli(args, tmp_path / "b")
    assert (out1 / "coeffs.csv").read_bytes() == (out2 / "coeffs.csv").read_bytes()


def test_coeffs_roundtrip_preserves_norms(tmp_path):
    code, out = run_cli(["coeffs", "--lambda", "1/2", "--n", "16"], tmp_path)
    assert code == 0
    rows = [line.split(",") for line in
            (out / "coeffs.csv").read_text().splitlines()[1:]
            if not line.startswith("#")]
    reread = np.array([float(r[1]) for r in rows])
    from conftest import exact_series_cached
    from fractions import Fraction
    series = exact_series_cached(Fraction(1, 2), 16)
    for p in (1.0, 2.0, 4.0):
        assert abs((np.abs(reread) ** p).sum() -
                   (np.abs(series.values) ** p).sum()) <= 1e-12


def test_regions_command(tmp_path):
    code, out = run_cli(["regions", "--lambda", "1/2", "--n", "729",
                         "--alpha", "1/6"], tmp_path)
    assert code == 0
    text = (out / "regions.csv").read_text()
    assert "# boundaries=121:234:252:2178:2196:4374" in text
    assert text.splitlines()[1] == "I,0,121"


def test_scaling_command_footer(tmp_path):
    code, out = run_cli(["scaling", "--lambda", "1/2", "--p", "2",
                         "--grid", "64:512"], tmp_path)
    assert code == 0
    lines = (out / "scaling_p2.csv").read_text().splitlines()
    assert lines[0] == "n,norm,log_n,log_norm"
    footer = [line for line in lines if line.startswith("# slope=")]
    assert len(footer) == 1
    slope = float(footer[0].split("slope=")[1].split(",")[0])
    assert abs(slope) <= 0.01


def test_scaling_command_sup_norm(tmp_path):
    code, out = run_cli(["scaling", "--lambda", "1/2", "--p", "inf",
                         "--grid", "128:8192"], tmp_path)
    assert code == 0
    lines = (out / "scaling_pinf.csv").read_text().splitlines()
    footer = [line for line in lines if line.startswith("# slope=")][0]
    slope = float(footer.split("slope=")[1].split(",")[0])
    assert abs(slope - (-1 / 3)) <= 0.03


def test_predict_command(tmp_path):
    code, out = run_cli(["predict", "--lambda", "1/2", "--n", "512",
                         "--k-list", "1400,1500,1536", "--with-exact"], tmp_path)
    assert code == 0
    lines = (out / "predict.csv").read_text().splitlines()
    assert lines[0].endswith("exact,rel_error")
    last = lines[3].split(",")
    assert float(last[-1]) < 0.3   # boundary index: prediction close to exact


def test_weyl_command(tmp_path):
    code, out = run_cli(["weyl", "--lambda", "1/2", "--n", "4096", "--j", "1"],
                        tmp_path)
    assert code == 0
    text = (out / "weyl.csv").read_text()
    assert text.splitlines()[0] == "k,s,abs_A"
    assert "# max_abs_A=" in text


def test_svg_emission_and_determinism(tmp_path):
    args = ["coeffs", "--lambda", "1/2", "--n", "32", "--svg"]
    _, out1 = run_cli(args, tmp_path / "a")
    _, out2 = run_cli(args, tmp_path / "b")
    svg = (out1 / "coeffs.svg").read_text()
    assert svg.startswith("<svg ")
    assert (out1 / "coeffs.svg").read_bytes() == (out2 / "coeffs.svg").read_bytes()


def test_config_file_supplies_defaults(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"kmax": 2}')
    code, out = run_cli(["coeffs", "--lambda", "1/2", "--n", "2",
                         "--config", str(cfg)], tmp_path)
    assert code == 0
    lines = (out / "coeffs.csv").read_text().splitlines()
    assert [line.split(",")[0] for line in lines[1:] if not line.startswith("#")] \
        == ["0", "1", "2"]


def test_exit_code_2_on_bad_lambda(tmp_path, capsys):
    code = main(["coeffs", "--lambda", "x/y", "--n", "4",
                 "--output-dir", str(tmp_path)])
    assert code == 2
    assert "configuration error" in capsys.readouterr().err


def test_exit_code_3_on_computation_error(tmp_path, capsys):
    # lambda outside (0,1) passes parsing but fails validation downstream
    code = main(["coeffs", "--lambda", "5/2", "--n", "4",
                 "--output-dir", str(tmp_path)])
    assert code in (2, 3)
    # alpha >= alpha0 is a genuine computation-stage domain error
    code = main(["regions", "--lambda", "1/2", "--n", "729", "--alpha", "1/2",
                 "--output-dir", str(tmp_path)])
    assert code == 3
    assert "error" in capsys.readouterr().err


def test_exit_code_4_on_io_error(tmp_path, capsys):
    blocker = tmp_path / "blocked"
    blocker.write_text("file, not a directory")
    code = main(["coeffs", "--lambda", "1/2", "--n", "2",
                 "--output-dir", str(blocker)])
    assert code == 4
    assert "i/o error" in capsys.readouterr().err


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "blaschke_lab.cli", "--version"],
        capture_output=True, text=True)
    assert proc.returncode == 0
