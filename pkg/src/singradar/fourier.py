"""Taylor coefficients of a solution path by circle sampling and inverse DFT.

Samples walk the circle sequentially, each corrected from its neighbor, so
the whole batch stays on one branch; a wrap-around re-correction guards the
monodromy. Accumulation runs in the extended lane regardless of the caller's
lane: the samples are cheap to polish there and the exactly representable
roots of unity keep the transform's rounding out of the coefficient error.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BranchJump, InvalidArgument, NoConvergence
from .polysys import Homotopy
from .scalars import (
    EXTENDED,
    ExtComplex,
    ExtReal,
    is_extended,
    promote,
    root_of_unity,
)
from .series import TruncatedSeries
from .tracker import (PathState, TrackerConfig, default_config,
                      newton_correct, track_to)

_WRAP_TOL = 1e-6
_WALK_GUARD = 0.5
_MAX_SUBSTEPS = 64


@dataclass
class CircleSamples:
    t0: object
    h: float
    n: int
    values: list

    def __post_init__(self):
        if self.n < 1 or (self.n & (self.n - 1)) != 0:
            raise InvalidArgument("sample count must be a power of two")
        for coord in self.values:
            if len(coord) != self.n:
                raise InvalidArgument("every coordinate needs n samples")


def _as_ext(value) -> ExtComplex:
    v = promote(value, EXTENDED)
    if isinstance(v, ExtReal):
        v = ExtComplex(v, ExtReal.from_value(0.0))
    return v


def _fft(vals, sign: int):
    n = len(vals)
    if n == 1:
        return [vals[0]]
    even = _fft(vals[0::2], sign)
    odd = _fft(vals[1::2], sign)
    out = [None] * n
    half = n // 2
    for k in range(half):
        term = root_of_unity(n, sign * k) * odd[k]
        out[k] = even[k] + term
        out[k + half] = even[k] - term
    return out


def _check_power_of_two(n: int):
    if n < 1 or (n & (n - 1)) != 0:
        raise InvalidArgument("length must be a power of two")


def inverse_dft(values) -> list:
    """Coefficients g with values_j = sum_k g_k w^{jk}, w = exp(2*pi*i/n)."""
    _check_power_of_two(len(values))
    extended = any(is_extended(v) for v in values)
    work = [_as_ext(v) for v in values]
    out = _fft(work, -1)
    n = float(len(values))
    scaled = [ExtComplex(v.re / n, v.im / n) for v in out]
    if extended:
        return scaled
    return [complex(v) for v in scaled]


def forward_dft(coefficients) -> list:
    """Evaluations values_j = sum_k g_k w^{jk} of coefficient vector g."""
    _check_power_of_two(len(coefficients))
    extended = any(is_extended(v) for v in coefficients)
    out = _fft([_as_ext(v) for v in coefficients], +1)
    if extended:
        return out
    return [complex(v) for v in out]


def direct_inverse_dft(values) -> list:
    """O(n^2) inverse transform for arbitrary length (table generation)."""
    m = len(values)
    if m < 1:
        raise InvalidArgument("empty sample vector")
    work = [_as_ext(v) for v in values]
    out = []
    for k in range(m):
        acc = ExtComplex(ExtReal.from_value(0.0), ExtReal.from_value(0.0))
        for j in range(m):
            acc = acc + work[j] * root_of_unity(m, -j * k)
        out.append(ExtComplex(acc.re / float(m), acc.im / float(m)))
    if any(is_extended(v) for v in values):
        return out
    return [complex(v) for v in out]


def default_step(t0) -> float:
    """0.85 of the distance to t = 1; smaller radii drown the high
    coefficients in rescaled rounding noise, larger ones sit too close
    to the singularity."""
    return 0.85 * abs(1.0 - complex(t0))


class _RetryHop(Exception):
    pass


def _correct_sample(h, t_ext, seed, cfg, polish_cfg, lane_extended):
    if lane_extended:
        return newton_correct(h, t_ext, [_as_ext(v) for v in seed],
                              polish_cfg).x
    state = newton_correct(h, complex(t_ext), seed, cfg)
    return newton_correct(h, t_ext, [_as_ext(v) for v in state.x],
                          polish_cfg).x


def _advance_arc(h, t0_ext, step_ext, n, k, seed, cfg, polish_cfg,
                 lane_extended):
    """Sample at angle k/n starting from the accepted sample at (k-1)/n.

    A hop that moves the point by more than half its own scale cannot be
    trusted as a Newton seed (the corrector may land on another branch or
    run out of iterations), so the arc is re-walked with doubled substep
    counts until every hop is tame."""
    m = 1
    while True:
        walk = seed
        try:
            for j in range(1, m + 1):
                t_sub = t0_ext + step_ext * root_of_unity(n * m,
                                                          (k - 1) * m + j)
                value = _correct_sample(h, t_sub, walk, cfg, polish_cfg,
                                        lane_extended)
                moved = max(abs(complex(a) - complex(b))
                            for a, b in zip(walk, value))
                spread = max(max(abs(complex(a)), abs(complex(b)))
                             for a, b in zip(walk, value))
                if moved > _WALK_GUARD * spread:
                    raise _RetryHop()
                walk = value if lane_extended else [complex(v) for v in value]
            return value
        except (_RetryHop, NoConvergence):
            m *= 2
            if m > _MAX_SUBSTEPS:
                raise BranchJump(
                    "sampling hops kept jumping at the finest subdivision")


def sample_circle(h: Homotopy, base: PathState, step: float, n: int,
                  cfg: TrackerConfig | None = None) -> CircleSamples:
    """Newton-corrected samples x(t0 + step*w^k), k = 0..n-1."""
    _check_power_of_two(n)
    if cfg is None:
        cfg = default_config()
    if not (step > 0.0):
        raise InvalidArgument("step must be positive")
    lane_extended = any(is_extended(v) for v in base.x) or is_extended(base.t)
    polish_cfg = default_config(EXTENDED)
    t0_ext = _as_ext(base.t)
    step_ext = ExtReal.from_value(float(step))
    per_sample = []
    seed = list(base.x)
    t0_c = complex(base.t)
    if t0_c.imag == 0.0:
        # reach the first sample by continuation; one Newton leap from the
        # center is not reliable for systems with high-degree monomials
        approach = track_to(h, base, t0_c.real + float(step), cfg)
        seed = list(approach.x)
        if not lane_extended:
            seed = [complex(v) for v in seed]
    for k in range(n + 1):
        if k == 0:
            t_ext = t0_ext + step_ext * root_of_unity(n, 0)
            value = _correct_sample(h, t_ext, seed, cfg, polish_cfg,
                                    lane_extended)
        else:
            value = _advance_arc(h, t0_ext, step_ext, n, k, seed, cfg,
                                 polish_cfg, lane_extended)
        if k == n:
            drift = max(abs(complex(a - b))
                        for a, b in zip(value, per_sample[0]))
            if drift > _WRAP_TOL:
                raise BranchJump("circle walk returned on a different branch")
            break
        per_sample.append(value)
        seed = [complex(v) for v in value] if not lane_extended else value
    values = [[per_sample[k][i] for k in range(n)] for i in range(h.dim)]
    return CircleSamples(t0=base.t, h=float(step), n=n, values=values)


def taylor_coefficients(h: Homotopy, base: PathState, step: float | None,
                        n: int, cfg: TrackerConfig | None = None) -> list:
    """One TruncatedSeries per coordinate, truncation order n - 1."""
    if step is None:
        step = default_step(base.t)
    samples = sample_circle(h, base, step, n, cfg)
    lane_extended = any(is_extended(v) for v in base.x) or is_extended(base.t)
    step_ext = ExtReal.from_value(float(step))
    out = []
    for coord in samples.values:
        raw = inverse_dft(coord)
        coeffs = []
        power = ExtReal.from_value(1.0)
        for k, c in enumerate(raw):
            if k:
                power = power * step_ext
            scaled = ExtComplex(c.re / power, c.im / power)
            coeffs.append(scaled if lane_extended else complex(scaled))
        out.append(TruncatedSeries(coeffs, order=n - 1))
    return out
