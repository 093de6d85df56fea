"""Acceptance gate, one verdict line per criterion (run with -s to see them).

Each test covers one numbered criterion end to end and prints a single
PASS line once every assertion in it has held.
"""

import csv
import io
import math
import random
import time
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction

import pytest

from singradar.cli import main
from singradar.fourier import direct_inverse_dft, inverse_dft, taylor_coefficients
from singradar.monomial import (
    IntMatrix,
    det,
    hermite_normal_form,
    smith_normal_form,
    solve_binomial,
)
from singradar.polysys import (
    EXPLICIT_T,
    Homotopy,
    TMonomial,
    binomial_parts,
    evalpoly,
    fixture,
)
from singradar.radar import (
    COEFFICIENTS_VANISH,
    CONVERGED,
    detect_last_pole,
    fabry_estimate,
    locate_singularity,
    richardson,
    scale_to_unit,
)
from singradar.scalars import EXTENDED, float_magnitude, promote
from singradar.tracker import PathState, default_config, newton_correct, track_to

from test_monomial import check_hermite, check_smith
from test_radar import (
    DIAGONAL_ERROR_GRID,
    OJIKA1_BASE,
    exact_sqrt_coeff,
    explicit_homotopy,
    ratio_model,
    sqrt_shifted_series,
)

# printed reference digits for the slow-ratio table
RATIO_TABLE_DIGITS = (
    (2, "2.00000000000000", "1.00E+00", None),
    (4, "1.42857142857143", "4.29E-01", "2.3333E+00"),
    (8, "1.20000000000000", "2.00E-01", "2.1429E+00"),
    (16, "1.09677419354839", "9.68E-02", "2.0667E+00"),
    (32, "1.04761904761905", "4.76E-02", "2.0323E+00"),
    (64, "1.02362204724409", "2.36E-02", "2.0159E+00"),
    (128, "1.01176470588235", "1.18E-02", "2.0079E+00"),
    (256, "1.00587084148728", "5.87E-03", "2.0039E+00"),
    (512, "1.00293255131965", "2.93E-03", "2.0020E+00"),
)

# printed reference errors for the wide-circle coefficient table
SERIES_TABLE_ERRORS = {
    0: 1.40e-08,
    1: 2.73e-08,
    2: 1.07e-07,
    4: 3.27e-07,
    8: 8.97e-07,
    32: 4.86e-06,
    64: 8.88e-06,
}

REGULAR_STARTS = {
    "sqrt": (1.0,),
    "cusp": (1.0,),
    "monomial4": (1.0, 1.0, 1.0, 1.0),
    "ojika1": (1.0, 1.0),
}


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def table_rows(which):
    code, out, _ = run_cli(["table", which])
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    return rows[1:]


def verdict(num, text, dt):
    print("criterion %02d PASS %s (%.2f s)" % (num, text, dt))


def test_criterion_01_ratio_table_digits():
    begin = time.perf_counter()
    rows = table_rows("table1")
    assert len(rows) == len(RATIO_TABLE_DIGITS)
    for row, (n, f_str, err_str, ratio_str) in zip(rows, RATIO_TABLE_DIGITS):
        assert int(row[0]) == n
        assert "%.14f" % float(row[1]) == f_str
        assert "%.2E" % float(row[2]) == err_str
        if ratio_str is None:
            assert row[3] == ""
        else:
            assert "%.4E" % float(row[3]) == ratio_str
    dt = time.perf_counter() - begin
    assert dt < 1.0
    verdict(1, "ratio table matches all printed digits", dt)


def test_criterion_02_extrapolation_grid():
    begin = time.perf_counter()
    tab = richardson([ratio_model(2 ** k) for k in range(1, 10)])
    for i in range(1, 10):
        for j in range(1, i + 1):
            err = abs(tab.entry(i, j) - 1.0)
            printed = float(DIAGONAL_ERROR_GRID[i - 1][j - 1])
            assert err <= 10.0 * printed
            assert err >= 0.1 * printed
    short = richardson([ratio_model(2 ** k) for k in range(1, 7)])
    assert abs(short.diagonal[-1] - 1.0) <= 4e-7
    assert abs(tab.diagonal[-1] - 1.0) <= 1e-14
    dt = time.perf_counter() - begin
    assert dt < 1.0
    verdict(2, "extrapolation errors within 10x of every printed entry", dt)


def test_criterion_03_wide_circle_series():
    begin = time.perf_counter()
    rows = table_rows("table4")
    errors = {int(row[0]): float(row[3]) for row in rows}
    assert errors[1] <= 3e-7
    assert errors[64] <= 9e-5
    for n, printed in SERIES_TABLE_ERRORS.items():
        assert errors[n] <= 10.0 * printed
    dt = time.perf_counter() - begin
    assert dt < 10.0
    verdict(3, "wide-circle coefficients within printed error budget", dt)


def test_criterion_04_derivative_recovery():
    begin = time.perf_counter()
    rows = table_rows("table3")
    errors = {int(row[0]): float(row[3]) for row in rows}
    assert errors[8] <= 1e-5
    assert max(errors.values()) <= 1e-4
    dt = time.perf_counter() - begin
    verdict(4, "8th derivative recovered to 1e-5 relative", dt)


def test_criterion_05_extended_coefficient():
    begin = time.perf_counter()
    cfg = default_config(EXTENDED)
    h = fixture("sqrt")
    base = PathState.from_point(h, 0.0, [promote(1.0, EXTENDED)])
    series = taylor_coefficients(h, base, 0.5, 128, cfg)
    c64 = series[0].coeffs[64]
    value = Fraction(c64.re.hi) + Fraction(c64.re.lo)
    exact = exact_sqrt_coeff(64)
    rel = abs(value - exact) / abs(exact)
    assert float(rel) <= 1e-9
    # the circle angles are double-precision, so the conjugate symmetry
    # that kills the imaginary part only holds to double rounding
    assert abs(float(c64.im.hi)) <= 1e-15
    dt = time.perf_counter() - begin
    verdict(5, "extended lane 64th coefficient error %.1e" % float(rel), dt)


def test_criterion_06_binomial_fixture():
    begin = time.perf_counter()
    h = fixture("monomial4")
    cols, rhs = binomial_parts(h)
    a = IntMatrix([list(row) for row in zip(*cols)])
    c = [evalpoly(p, 0.0) for p in rhs]
    solutions = solve_binomial(a, c)
    assert len(solutions) == 42
    worst = 0.0
    for x in solutions:
        for j in range(a.n):
            acc = complex(1.0)
            for i in range(a.n):
                if a.entries[i][j]:
                    acc *= complex(x[i]) ** a.entries[i][j]
            worst = max(worst, abs(acc - c[j]))
    assert worst <= 1e-10
    units = [x for x in solutions
             if all(abs(complex(v) - 1.0) <= 1e-10 for v in x)]
    assert len(units) == 1
    cfg = default_config(EXTENDED)
    s = PathState.from_point(h, 0.0, [promote(1.0, EXTENDED)] * 4)
    est = locate_singularity(h, s, 64, cfg, t0=0.0, coordinate=1)
    assert est.status == CONVERGED
    assert float_magnitude(est.z - 1.0) <= 1e-7
    dt = time.perf_counter() - begin
    verdict(6, "42 binomial solutions and extended radius to 1e-7", dt)


def test_criterion_07_ojika1_end_to_end():
    begin = time.perf_counter()
    h = fixture("ojika1")
    s = newton_correct(h, 0.0, [1.0, 1.0], default_config())
    est = locate_singularity(h, s, 64, t0=OJIKA1_BASE)
    assert est.status == CONVERGED
    assert abs(complex(est.raw_ratio) - 1.02652) <= 1e-3
    assert abs(complex(est.z) - 1.0) <= 1e-4
    dt = time.perf_counter() - begin
    assert dt < 30.0
    verdict(7, "pinned-base radius |z - 1| = %.1e" %
            abs(complex(est.z) - 1.0), dt)


def test_criterion_08_vanishing_tail_is_flagged():
    begin = time.perf_counter()
    h = fixture("cusp")
    s = newton_correct(h, 0.0, [1.0], default_config())
    for order in (9, 17, 33, 65):
        est = locate_singularity(h, s, order, t0=0.0)
        assert est.status == COEFFICIENTS_VANISH
        assert est.status != CONVERGED
        assert complex(est.z) == 0j
    dt = time.perf_counter() - begin
    verdict(8, "polynomial path reports CoefficientsVanish at all orders", dt)


def test_criterion_09_property_suites():
    begin = time.perf_counter()
    # (a) normal-form invariants on 1000 random integral matrices
    rng = random.Random(977)
    cases = 0
    attempts = 0
    while cases < 1000:
        attempts += 1
        assert attempts < 5000
        n = rng.randint(1, 5)
        a = IntMatrix([[rng.randint(-9, 9) for _ in range(n)]
                       for _ in range(n)])
        if det(a) == 0:
            continue
        check_hermite(a, hermite_normal_form(a))
        check_smith(a, smith_normal_form(a))
        cases += 1
    # (b) Newton quadratic tail at a regular point of every fixture
    cfg = default_config()
    for name, x0 in REGULAR_STARTS.items():
        h = fixture(name)
        base = track_to(h, PathState.from_point(h, 0.0, list(x0)), 0.3, cfg)
        xstar = base.x
        guess = list(xstar)
        guess[0] = guess[0] + 1e-3
        if len(guess) > 1:
            guess[1] = guess[1] - 1e-3j
        hist = []
        newton_correct(h, 0.3, guess, cfg, history=hist)
        errs = [1e-3] + [max(abs(p[i] - xstar[i]) for i in range(len(xstar)))
                         for p in hist]
        assert len(errs) >= 3
        for k in range(len(errs) - 1):
            if errs[k + 1] > 1e-14:
                assert errs[k + 1] <= 100.0 * errs[k] ** 2
    # (c) the estimate rescales exactly with the series radius
    for a in (0.5, 1.0, 2.0):
        s = sqrt_shifted_series(a, 17)
        direct = fabry_estimate(s)
        scaled = fabry_estimate(scale_to_unit(s, a))
        assert direct.status == CONVERGED and scaled.status == CONVERGED
        rel = (abs(complex(scaled.z) * a - complex(direct.z))
               / abs(complex(direct.z)))
        assert rel <= 1e-10
    # (d) radix-2 inverse transform against direct summation
    rng = random.Random(31)
    for n in (4, 16, 64, 256, 1024):
        values = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
                  for _ in range(n)]
        fast = inverse_dft(values)
        slow = direct_inverse_dft(values)
        scale = max(abs(v) for v in slow)
        assert max(abs(x - y) for x, y in zip(fast, slow)) <= 1e-13 * scale
    dt = time.perf_counter() - begin
    verdict(9, "normal-form, Newton-tail, rescaling, transform properties", dt)


def test_criterion_10_declared_substitution():
    """The fourfold-root benchmark needs an external blackbox solve of an
    11,016-path start system, far beyond this test bed; the radar's pole
    sweep is exercised on a synthetic interior pole instead."""
    begin = time.perf_counter()
    pole = 0.5 + 0.5j
    h = explicit_homotopy(1, [[TMonomial((-pole, 1.0), (1,)),
                               TMonomial((-1.0,), (0,))]])
    base = PathState.from_point(h, 0.0, [-1.0 / pole])
    rho, t_star, t0 = detect_last_pole(h, base)
    assert rho is not None
    assert abs(rho - pole) <= 1e-2
    assert abs(t_star - 0.5) <= 1e-2
    assert 0.5 < t0 < 1.0
    dt = time.perf_counter() - begin
    verdict(10, "declared substitution, planted pole error %.1e" %
            abs(rho - pole), dt)
