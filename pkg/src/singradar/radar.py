"""Nearest-singularity radar: ratio estimates, extrapolation, reconditioning.

The ratio of consecutive Taylor coefficients of a solution path tends to the
singular parameter value nearest the expansion point. Extrapolating the
ratios at n = 2, 4, ..., 2^N kills the O(1/n) error terms one power at a
time, and rescaling plus recentering (reconditioning) keeps the target
singularity dominant so the limit is clean.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    BranchJump,
    InconclusiveRadar,
    InvalidArgument,
    NoConvergence,
    SingularJacobian,
    StepUnderflow,
)
from .fourier import taylor_coefficients
from .polysys import (
    EXPLICIT_T,
    GAMMA_CONVEX,
    Homotopy,
    Monomial,
    PolySystem,
    TMonomial,
)
from .scalars import (
    DOUBLE,
    EXTENDED,
    float_magnitude,
    is_extended,
    magnitude,
    scalar_eps,
)
from .series import TruncatedSeries
from .tracker import PathState, TrackerConfig, default_config, track_to

CONVERGED = "Converged"
INCONCLUSIVE = "Inconclusive"
COEFFICIENTS_VANISH = "CoefficientsVanish"

_VANISH_FACTOR = 1e3
# one checkpoint estimate counts as pointing at the endpoint singularity when
# it lands within this fraction of the remaining distance to t = 1
_CLEAN_FRACTION = 0.02
# an estimate only counts as an interior pole when its imaginary part clears
# this fraction of the remaining distance (real-axis estimates are endpoint
# previews distorted by the t = 1 singularity, not poles)
_OFF_AXIS_FRACTION = 0.05
_SWEEP_SAMPLES = 32
_SWEEP_RETRIES = 3
_SWEEP_FLOOR = 1e-3
_CLEAN_STREAK = 2
_DELTA_FRACTION = 0.1
# an interior pole must be decisively nearer than the endpoint; estimates at
# comparable distance are endpoint readings distorted by interference
_POLE_MARGIN = 0.8


@dataclass
class RichardsonTable:
    levels: int
    table: list
    diagonal: list

    def entry(self, i: int, j: int):
        """R_{i,j} with the customary 1-based indices."""
        return self.table[i - 1][j - 1]


@dataclass
class RadiusEstimate:
    z: object
    raw_ratio: object
    n_used: int
    status: str


def richardson(values) -> RichardsonTable:
    """Triangular extrapolation of f(2), f(4), ..., f(2^N)."""
    n_levels = len(values)
    if n_levels < 1:
        raise InvalidArgument("need at least one input level")
    table = []
    for i in range(1, n_levels + 1):
        row = [values[i - 1]]
        for j in range(2, i + 1):
            weight = float(2 ** (i - j + 1))
            prev = row[j - 2]
            anchor = table[j - 2][j - 2]
            row.append((weight * prev - anchor) / (weight - 1.0))
        table.append(row)
    diagonal = [table[j][j] for j in range(n_levels)]
    return RichardsonTable(levels=n_levels, table=table, diagonal=diagonal)


def fabry_estimate(series: TruncatedSeries) -> RadiusEstimate:
    """Nearest-singularity estimate from the coefficient ratios."""
    order = series.order
    if order < 4:
        raise InvalidArgument("need truncation order at least 4")
    coeffs = series.coeffs
    n_levels = int(math.floor(math.log2(order - 1)))
    eps = scalar_eps(EXTENDED if any(is_extended(c) for c in coeffs)
                     else DOUBLE)
    scale = max(float_magnitude(c) for c in coeffs)
    floor = _VANISH_FACTOR * eps * scale
    ratios = []
    for k in range(1, n_levels + 1):
        n = 2 ** k
        denom = coeffs[n + 1]
        if float_magnitude(denom) < floor:
            return RadiusEstimate(z=complex(0.0), raw_ratio=complex(0.0),
                                  n_used=n, status=COEFFICIENTS_VANISH)
        ratios.append(coeffs[n] / denom)
    tab = richardson(ratios)
    diag = tab.diagonal
    z = diag[-1]
    status = INCONCLUSIVE
    if len(diag) >= 3:
        last = float_magnitude(diag[-1] - diag[-2])
        prev = float_magnitude(diag[-2] - diag[-3])
        if last == 0.0 or last < prev:
            status = CONVERGED
    elif len(diag) == 2:
        if float_magnitude(diag[-1] - diag[-2]) == 0.0:
            status = CONVERGED
    return RadiusEstimate(z=z, raw_ratio=ratios[-1], n_used=2 ** n_levels,
                          status=status)


def scale_to_unit(series: TruncatedSeries, z) -> TruncatedSeries:
    """Coefficients of the series in t = |z| s, unit convergence radius."""
    radius = magnitude(z)
    if float(radius) == 0.0:
        raise InvalidArgument("cannot rescale by a zero radius")
    out = [series.coeffs[0]]
    power = radius
    for c in series.coeffs[1:]:
        out.append(c * power)
        power = power * radius
    return TruncatedSeries(out, order=series.order)


# ---------------------------------------------------------------------------
# reconditioning
# ---------------------------------------------------------------------------

def _explicit_equations(h: Homotopy) -> list:
    if h.form != GAMMA_CONVEX:
        return h.t_equations
    gamma = complex(h.gamma)
    eqs = []
    for f_eq, g_eq in zip(h.target.equations, h.start.equations):
        teq = []
        for m in g_eq:
            c = gamma * complex(m.coefficient)
            teq.append(TMonomial((c, -c), tuple(m.exponents)))
        for m in f_eq:
            teq.append(TMonomial((0.0, complex(m.coefficient)),
                                 tuple(m.exponents)))
        eqs.append(teq)
    return eqs


def _compose_affine(t_coeffs, t0: float, r: float):
    """Coefficients of a(t0 + r s) given those of a(t)."""
    deg = len(t_coeffs) - 1
    out = []
    for j in range(deg + 1):
        acc = 0.0
        for k in range(j, deg + 1):
            acc = acc + t_coeffs[k] * math.comb(k, j) * (t0 ** (k - j))
        out.append(acc * (r ** j))
    while len(out) > 1 and out[-1] == 0.0:
        out.pop()
    return tuple(out)


def recondition(h: Homotopy, t0: float) -> Homotopy:
    """The homotopy in s with t = r s + t0, r = 1 - t0."""
    if not 0.0 <= t0 < 1.0:
        raise InvalidArgument("t0 must lie in [0, 1)")
    if t0 == 0.0:
        return h
    r = 1.0 - t0
    eqs = []
    for teq in _explicit_equations(h):
        eqs.append([TMonomial(_compose_affine(m.t_coeffs, t0, r),
                              tuple(m.exponents)) for m in teq])

    def at(s):
        return PolySystem(h.dim, [[Monomial(_poly_value(m.t_coeffs, s),
                                            tuple(m.exponents))
                                   for m in teq] for teq in eqs])

    return Homotopy(form=EXPLICIT_T, dim=h.dim, target=at(1.0), start=at(0.0),
                    gamma=h.gamma, t_equations=eqs)


def _poly_value(coeffs, s: float):
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * s + c
    return acc


# ---------------------------------------------------------------------------
# last-pole detection
# ---------------------------------------------------------------------------

def _dominant_coordinate(series_list) -> int:
    return max(range(len(series_list)),
               key=lambda i: float_magnitude(series_list[i].coeffs[-1]))


def _checkpoint_estimate(h: Homotopy, state: PathState, radius: float,
                         cfg: TrackerConfig):
    """Fabry estimate at one checkpoint, shrinking the circle on failure.

    The series is rescaled by the sampling radius before the ratio test so
    the vanish floor compares well-scaled coefficients; the estimate comes
    back in absolute t units together with the radius that produced it.
    """
    for _ in range(_SWEEP_RETRIES):
        try:
            series = taylor_coefficients(h, state, radius, _SWEEP_SAMPLES,
                                         cfg)
        except (BranchJump, NoConvergence, SingularJacobian, StepUnderflow):
            radius *= 0.5
            continue
        scaled = [scale_to_unit(s, radius) for s in series]
        est = fabry_estimate(scaled[_dominant_coordinate(scaled)])
        z_rel = radius * complex(est.z)
        return RadiusEstimate(z=complex(state.t) + z_rel,
                              raw_ratio=est.raw_ratio,
                              n_used=est.n_used, status=est.status)
    return None


def detect_last_pole(h: Homotopy, start: PathState,
                     cfg: TrackerConfig | None = None):
    """Sweep t toward 1, watching for the interior pole nearest the end.

    Returns (rho, t_star, t0): the dominating complex pole (None when the
    endpoint is the only singularity in sight), the parameter where the pole
    and the endpoint are equidistant, and the recommended base point.
    """
    if cfg is None:
        cfg = default_config()
    state = start
    candidates = []
    first_clean = None
    clean_streak = 0
    saw_estimate = False
    saw_vanish = False
    t_c = float(complex(start.t).real)
    prev_z = None
    while 1.0 - t_c > _SWEEP_FLOOR:
        try:
            state = track_to(h, state, t_c, cfg)
        except (NoConvergence, StepUnderflow, SingularJacobian):
            break
        gap = 1.0 - t_c
        radius = 0.85 * gap
        if prev_z is not None:
            radius = min(radius, 0.85 * abs(prev_z - t_c))
        est = _checkpoint_estimate(h, state, radius, cfg)
        if est is not None and est.status == COEFFICIENTS_VANISH:
            saw_vanish = True
        if est is not None and est.status == CONVERGED:
            saw_estimate = True
            z_abs = complex(est.z)
            prev_z = z_abs
            if abs(z_abs - 1.0) <= _CLEAN_FRACTION * gap:
                clean_streak += 1
                if first_clean is None:
                    first_clean = t_c
                if clean_streak >= _CLEAN_STREAK:
                    break
            else:
                clean_streak = 0
                if (abs(z_abs.imag) > _OFF_AXIS_FRACTION * gap
                        and z_abs.real < 1.0
                        and abs(z_abs - t_c) < _POLE_MARGIN * gap):
                    candidates.append(z_abs)
        else:
            clean_streak = 0
        t_c = t_c + 0.5 * (1.0 - t_c)
    if not saw_estimate and not saw_vanish:
        raise InconclusiveRadar("no checkpoint produced a usable estimate")
    if candidates:
        rho = max(candidates, key=lambda z: z.real)
        t_star = (1.0 - abs(rho) ** 2) / (2.0 * (1.0 - rho.real))
        t_star = min(max(t_star, 0.0), 1.0 - _SWEEP_FLOOR)
    else:
        rho = None
        t_star = first_clean if first_clean is not None else 0.0
    t0 = t_star + _DELTA_FRACTION * (1.0 - t_star)
    return rho, t_star, t0


# ---------------------------------------------------------------------------
# full pipeline
# ---------------------------------------------------------------------------

def _next_power_of_two(n: int) -> int:
    p = 1
    while p < n:
        p *= 2
    return p


def locate_singularity(h: Homotopy, start: PathState, order: int,
                       cfg: TrackerConfig | None = None,
                       t0: float | None = None,
                       coordinate: int | None = None) -> RadiusEstimate:
    """End-to-end radar; the estimate comes back in original t units.

    order is the index of the last ratio entering the extrapolation; pass
    t0 to skip pole detection and recondition at a known base point.
    """
    if order < 4:
        raise InvalidArgument("need order at least 4")
    if cfg is None:
        cfg = default_config()
    if t0 is None:
        _, _, t0 = detect_last_pole(h, start, cfg)
    state = track_to(h, start, t0, cfg)
    hs = recondition(h, t0)
    base = PathState.from_point(hs, 0.0, state.x)
    n_samples = _next_power_of_two(order + 2)
    series = taylor_coefficients(hs, base, None, n_samples, cfg)
    if coordinate is None:
        coordinate = _dominant_coordinate(series)
    est = fabry_estimate(series[coordinate])
    if est.status == COEFFICIENTS_VANISH:
        z_out = est.z
    elif is_extended(est.z):
        z_out = t0 + (1.0 - t0) * est.z
    else:
        z_out = complex(t0) + (1.0 - t0) * complex(est.z)
    return RadiusEstimate(z=z_out, raw_ratio=est.raw_ratio,
                          n_used=est.n_used, status=est.status)
