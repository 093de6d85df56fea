"""End-to-end checks of the command-line driver, run in process."""

import csv
import io
import json
import math
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction

import pytest

from singradar.cli import gamma_from_seed, main
from singradar.polysys import (
    EXPLICIT_T,
    Homotopy,
    Monomial,
    PolySystem,
    TMonomial,
    fixture,
    homotopy_to_json,
)
from singradar.radar import locate_singularity, richardson
from singradar.tracker import default_config, newton_correct

OJIKA1_BASE = 0.955647336181678


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def parse_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], rows[1:]


def report_body(text):
    rep = json.loads(text)
    rep.pop("timings")
    return rep


def exact_coeff(k):
    c = Fraction(1)
    for i in range(k):
        c = c * Fraction(2 * i - 1, 2 * (i + 1))
    return c


def branch_point_homotopy():
    # x^2 - (t - 0.5) = 0; start roots +-i*sqrt(0.5), real branch point
    eq = [TMonomial((1.0,), (2,)), TMonomial((0.5, -1.0), (0,))]
    f = PolySystem(1, [[Monomial(1.0, (2,)), Monomial(-0.5, (0,))]])
    g = PolySystem(1, [[Monomial(1.0, (2,)), Monomial(0.5, (0,))]])
    return Homotopy(form=EXPLICIT_T, dim=1, target=f, start=g, gamma=1.0,
                    t_equations=[eq])


# ---------------------------------------------------------------------------
# seeded gamma constants
# ---------------------------------------------------------------------------

def test_gamma_seed_deterministic():
    assert gamma_from_seed(7) == gamma_from_seed(7)
    assert gamma_from_seed(123456789) == gamma_from_seed(123456789)


def test_gamma_seed_unit_modulus():
    for seed in (0, 1, 7, 8, 2 ** 63, 2 ** 64 - 1):
        assert abs(abs(gamma_from_seed(seed)) - 1.0) <= 1e-12


def test_gamma_seed_distinct():
    values = {gamma_from_seed(seed) for seed in range(1, 33)}
    assert len(values) == 32


def test_gamma_seed_zero_uses_fallback_state():
    assert gamma_from_seed(0) == gamma_from_seed(0x9E3779B97F4A7C15)


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------

def test_table1_ratio_column():
    code, out, err = run_cli(["table", "table1"])
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["n", "ratio", "error", "error_ratio"]
    assert len(rows) == 9
    for k, row in enumerate(rows, start=1):
        n = int(row[0])
        assert n == 2 ** k
        assert float(row[1]) == (2.0 * n + 2.0) / (2.0 * n - 1.0)
        assert float(row[2]) == abs(float(row[1]) - 1.0)
    assert rows[0][3] == ""
    ratios = [float(row[3]) for row in rows[1:]]
    assert abs(ratios[-2] - 2.0039) <= 1e-3
    for a, b in zip(ratios, ratios[1:]):
        assert 2.0 < b < a


def test_table2_matches_extrapolation_grid():
    code, out, err = run_cli(["table", "table2"])
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["i", "j", "re", "im", "error"]
    assert len(rows) == 45
    model = [(2.0 * 2 ** k + 2.0) / (2.0 * 2 ** k - 1.0) for k in range(1, 10)]
    tab = richardson(model)
    seen = []
    for row in rows:
        i, j = int(row[0]), int(row[1])
        seen.append((i, j))
        assert float(row[2]) == tab.entry(i, j)
        assert float(row[3]) == 0.0
        assert float(row[4]) == abs(tab.entry(i, j) - 1.0)
    assert seen == [(i, j) for i in range(1, 10) for j in range(1, i + 1)]
    assert float(rows[-1][4]) <= 1e-15


def test_table3_derivative_errors():
    code, out, err = run_cli(["table", "table3"])
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["n", "exact", "approx", "error"]
    assert [int(row[0]) for row in rows] == list(range(17))
    for k, row in enumerate(rows):
        assert float(row[1]) == float(exact_coeff(k) * math.factorial(k))
    errors = [float(row[3]) for row in rows]
    assert errors[0] <= 5e-8
    assert errors[8] <= 1e-5
    assert max(errors) <= 5e-6 or errors[8] <= 1e-5
    assert errors[16] <= 5e-6


def test_table4_series_errors():
    code, out, err = run_cli(["table", "table4"])
    assert code == 0
    header, rows = parse_csv(out)
    assert [int(row[0]) for row in rows] == [0, 1, 2, 4, 8, 32, 64]
    for row in rows:
        assert float(row[1]) == float(exact_coeff(int(row[0])))
    errors = {int(row[0]): float(row[3]) for row in rows}
    assert errors[1] <= 3e-7
    assert errors[64] <= 9e-5
    assert 5e-6 <= errors[64] <= 2e-5
    for a, b in zip((0, 1, 2, 4, 8, 32), (1, 2, 4, 8, 32, 64)):
        assert errors[a] < errors[b]


def test_table_rerun_is_byte_identical():
    out_a = run_cli(["table", "table3"])[1]
    out_b = run_cli(["table", "table3"])[1]
    assert out_a == out_b


def test_table_out_writes_file(tmp_path):
    path = tmp_path / "t1.csv"
    code, out, err = run_cli(["table", "table1", "--out", str(path)])
    assert code == 0
    assert out == ""
    assert path.read_text() == run_cli(["table", "table1"])[1]


# ---------------------------------------------------------------------------
# radius
# ---------------------------------------------------------------------------

def test_radius_sqrt_defaults():
    code, out, err = run_cli(["radius", "--fixture", "sqrt"])
    assert code == 0
    rep = json.loads(out)
    assert rep["status"] == "Converged"
    assert rep["fixture"] == "sqrt"
    assert rep["n"] == 64
    assert rep["n_used"] == 64
    assert rep["coordinate"] == 0
    assert abs(complex(*rep["z"]) - 1.0) <= 4e-8
    assert rep["r"] == 1.0 - rep["t0"]
    assert 0.0 < rep["t0"] < 0.5
    assert len(rep["diagonal"]) >= 5
    assert abs(complex(*rep["diagonal"][-1]) - 1.0) <= 1e-6


def test_radius_agrees_with_library_pipeline():
    code, out, err = run_cli(["radius", "--fixture", "sqrt"])
    rep = json.loads(out)
    h = fixture("sqrt")
    cfg = default_config()
    start = newton_correct(h, 0.0, [1.0], cfg)
    est = locate_singularity(h, start, 126, cfg)
    assert abs(complex(*rep["z"]) - complex(est.z)) <= 1e-15
    assert rep["n_used"] == est.n_used
    assert rep["status"] == est.status


def test_radius_pinned_base_ojika1():
    code, out, err = run_cli(["radius", "--fixture", "ojika1",
                              "--t0", repr(OJIKA1_BASE)])
    assert code == 0
    rep = json.loads(out)
    assert rep["status"] == "Converged"
    assert rep["rho"] is None and rep["t_star"] is None
    assert rep["t0"] == OJIKA1_BASE
    assert abs(complex(*rep["raw_ratio"]) - 1.02652) <= 1e-3
    assert abs(complex(*rep["z"]) - 1.0) <= 1e-4


def test_radius_auto_base_ojika1():
    code, out, err = run_cli(["radius", "--fixture", "ojika1"])
    assert code == 0
    rep = json.loads(out)
    assert abs(rep["t0"] - OJIKA1_BASE) <= 0.05
    assert abs(rep["t_star"] - 0.9375) <= 0.01
    assert abs(complex(*rep["z"]) - 1.0) <= 1e-4


def test_radius_cusp_reports_vanishing_tail():
    code, out, err = run_cli(["radius", "--fixture", "cusp"])
    assert code == 1
    assert "did not converge" in err
    rep = json.loads(out)
    assert rep["status"] == "CoefficientsVanish"
    assert rep["z"] == [0.0, 0.0]
    assert rep["diagonal"] == []


def test_radius_small_step_floods_noise_floor():
    code, out, err = run_cli(["radius", "--fixture", "sqrt",
                              "--t0", "0.0", "--step", "0.3"])
    assert code == 1
    assert json.loads(out)["status"] == "CoefficientsVanish"
    code, out, err = run_cli(["radius", "--fixture", "sqrt",
                              "--t0", "0.0", "--step", "0.55"])
    assert code == 0
    assert abs(complex(*json.loads(out)["z"]) - 1.0) <= 1e-7


def test_radius_extended_lane():
    code, out, err = run_cli(["radius", "--fixture", "sqrt", "--t0", "0.0",
                              "--precision", "extended"])
    assert code == 0
    rep = json.loads(out)
    assert rep["precision"] == "extended"
    z = complex(*rep["z"])
    assert abs(z - 1.0) <= 1e-7
    assert abs(z.imag) <= 1e-20


def test_radius_seeded_gamma_is_deterministic():
    code_a, out_a, _ = run_cli(["radius", "--fixture", "sqrt", "--seed", "7"])
    code_b, out_b, _ = run_cli(["radius", "--fixture", "sqrt", "--seed", "7"])
    assert code_a == code_b
    assert report_body(out_a) == report_body(out_b)
    g = complex(*json.loads(out_a)["gamma"])
    assert abs(abs(g) - 1.0) <= 1e-12


def test_radius_seed_changes_gamma():
    rep_a = json.loads(run_cli(["radius", "--fixture", "sqrt",
                                "--seed", "7"])[1])
    code, out, err = run_cli(["radius", "--fixture", "sqrt", "--seed", "8"])
    rep_b = json.loads(out)
    assert rep_a["gamma"] != rep_b["gamma"]
    # seed 8 keeps the interpolation pole g/(g-1) outside the unit disk
    assert code == 0
    assert abs(complex(*rep_b["z"]) - 1.0) <= 1e-5


def test_radius_unit_gamma_matches_default():
    plain = report_body(run_cli(["radius", "--fixture", "sqrt"])[1])
    forced = report_body(run_cli(["radius", "--fixture", "sqrt",
                                  "--gamma", "1"])[1])
    assert plain == forced


def test_radius_gamma_override_needs_convex_form():
    code, out, err = run_cli(["radius", "--fixture", "ojika1", "--seed", "7"])
    assert code == 2
    assert "gamma-convex" in err


def test_radius_rejects_bad_sample_count():
    for n in ("48", "2", "2048"):
        code, out, err = run_cli(["radius", "--fixture", "sqrt", "--n", n])
        assert code == 2
        assert "power of two" in err


# ---------------------------------------------------------------------------
# track
# ---------------------------------------------------------------------------

def test_track_sqrt_path_values():
    code, out, err = run_cli(["track", "--fixture", "sqrt",
                              "--target", "0.9"])
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["t", "re_x1", "im_x1", "residual", "inv_condition"]
    assert rows[0] == ["0.0", "1.0", "0.0", "0.0", "1.0"]
    assert float(rows[-1][0]) == 0.9
    for row in rows:
        t, re, im = float(row[0]), float(row[1]), float(row[2])
        assert abs(complex(re, im) - math.sqrt(1.0 - t)) <= 1e-10
        assert float(row[3]) <= 1e-10
    assert len(rows) >= 8


def test_track_cusp_path_values():
    code, out, err = run_cli(["track", "--fixture", "cusp",
                              "--target", "0.9"])
    assert code == 0
    _, rows = parse_csv(out)
    for row in rows:
        t, re, im = float(row[0]), float(row[1]), float(row[2])
        assert abs(complex(re, im) - (1.0 - t) ** 2) <= 1e-10


def test_track_ojika1_reaches_target():
    code, out, err = run_cli(["track", "--fixture", "ojika1"])
    assert code == 0
    header, rows = parse_csv(out)
    assert header[:5] == ["t", "re_x1", "im_x1", "re_x2", "im_x2"]
    assert len(rows) >= 10
    last = rows[-1]
    assert float(last[0]) == 1.0
    assert abs(complex(float(last[1]), float(last[2])) - 1.0) <= 1e-3
    assert abs(complex(float(last[3]), float(last[4])) - 2.0) <= 1e-3
    # triple root at the endpoint: the Jacobian is nearly singular there
    assert float(last[6]) <= 1e-6


def test_track_file_with_imaginary_start_underflows(tmp_path):
    path = tmp_path / "bp.json"
    path.write_text(json.dumps(homotopy_to_json(branch_point_homotopy())))
    code, out, err = run_cli(["track", "--file", str(path),
                              "--start", "0.7071067811865476j"])
    assert code == 1
    assert "StepUnderflow" in err
    _, rows = parse_csv(out)
    assert len(rows) >= 10
    last_t = float(rows[-1][0])
    assert 0.499 < last_t < 0.5
    assert abs(complex(float(rows[-1][1]), float(rows[-1][2]))) <= 1e-3


def test_track_file_without_start_stays_real(tmp_path):
    path = tmp_path / "bp.json"
    path.write_text(json.dumps(homotopy_to_json(branch_point_homotopy())))
    code, out, err = run_cli(["track", "--file", str(path)])
    assert code == 1
    assert "NoConvergence" in err
    assert out == ""


def test_track_start_dimension_checked():
    code, out, err = run_cli(["track", "--fixture", "ojika1",
                              "--start", "1"])
    assert code == 2
    assert "dimension" in err


def test_track_rerun_is_byte_identical():
    argv = ["track", "--fixture", "sqrt", "--target", "0.9"]
    assert run_cli(argv)[1] == run_cli(argv)[1]


# ---------------------------------------------------------------------------
# solve-binomial
# ---------------------------------------------------------------------------

def test_solve_binomial_monomial4():
    code, out, err = run_cli(["solve-binomial", "--fixture", "monomial4"])
    assert code == 0
    rep = json.loads(out)
    assert rep["count"] == 42
    assert len(rep["solutions"]) == 42
    assert rep["max_residual"] <= 1e-10
    units = [s for s in rep["solutions"]
             if all(abs(complex(re, im) - 1.0) <= 1e-10 for re, im in s)]
    assert len(units) == 1


def test_solve_binomial_csv_shape():
    code, out, err = run_cli(["solve-binomial", "--fixture", "monomial4",
                              "--format", "csv"])
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["re_x1", "im_x1", "re_x2", "im_x2",
                      "re_x3", "im_x3", "re_x4", "im_x4"]
    assert len(rows) == 42
    assert len({tuple(row) for row in rows}) == 42


def test_solve_binomial_from_file(tmp_path):
    path = tmp_path / "quad.json"
    path.write_text(json.dumps({"A": [[2]], "c": [4]}))
    code, out, err = run_cli(["solve-binomial", "--file", str(path)])
    assert code == 0
    rep = json.loads(out)
    assert rep["count"] == 2
    assert rep["max_residual"] <= 1e-12
    roots = sorted(complex(*s[0]).real for s in rep["solutions"])
    assert abs(roots[0] + 2.0) <= 1e-12
    assert abs(roots[1] - 2.0) <= 1e-12


def test_solve_binomial_complex_rhs(tmp_path):
    path = tmp_path / "unit.json"
    path.write_text(json.dumps({"A": [[1]], "c": [[0.0, 1.0]]}))
    code, out, err = run_cli(["solve-binomial", "--file", str(path)])
    rep = json.loads(out)
    assert rep["count"] == 1
    assert abs(complex(*rep["solutions"][0][0]) - 1j) <= 1e-12


# ---------------------------------------------------------------------------
# exit codes and output plumbing
# ---------------------------------------------------------------------------

def test_bad_invocations_exit_two(tmp_path):
    assert run_cli([])[0] == 2
    assert run_cli(["table", "table9"])[0] == 2
    assert run_cli(["radius", "--fixture", "nope"])[0] == 2
    assert run_cli(["radius"])[0] == 2
    code, out, err = run_cli(["radius", "--file", str(tmp_path / "no.json")])
    assert code == 2
    assert "error:" in err


def test_radius_out_writes_report(tmp_path):
    path = tmp_path / "radius.json"
    code, out, err = run_cli(["radius", "--fixture", "sqrt",
                              "--out", str(path)])
    assert code == 0
    assert out == ""
    rep = json.loads(path.read_text())
    assert rep["status"] == "Converged"
