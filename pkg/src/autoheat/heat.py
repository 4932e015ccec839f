"""Spectral-side heat flow: coefficients, semigroup, and its verification gaps.

The heat coefficients at time t are the delta data damped by e^{lambda t};
the same damping applied to arbitrary data is the contraction semigroup
generated by multiplication-by-lambda.  Time is always an exact parameter,
never stepped, except in the deliberate Euler experiment that exhibits the
exponential as the unique solution of the evolution problem.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .sobolev import (
    CoeffFn,
    apply_generator,
    apply_resolvent,
    delta_coefficients,
    sobolev_norm,
)
from .spectral_model import DELTA_INDEX, SobolevIndex, SpectralGrid

# Default index for residual checks; any index <= -4 behaves identically on a
# finite grid (all these norms are equivalent there).
RESIDUAL_INDEX: SobolevIndex = -4

_UNDERFLOW_EXPONENT = -700.0  # e^{lambda t} below this flushes to zero


@dataclass(frozen=True)
class HeatState:
    """Heat-flow snapshot: time plus its coefficient function."""

    t: float
    coeffs: CoeffFn

    def __post_init__(self):
        if self.t < 0.0:
            raise ValueError("heat flow is one-sided: t >= 0")


def _damping(grid: SpectralGrid, t: float) -> np.ndarray:
    expo = grid.lambdas * t
    out = np.zeros_like(expo)
    live = expo > _UNDERFLOW_EXPONENT
    out[live] = np.exp(expo[live])
    return out


def heat_coefficients(t: float, grid: SpectralGrid) -> HeatState:
    """Spectral heat-kernel data at time t: basepoint values times e^{lambda t}."""
    if t < 0.0:
        raise ValueError("heat flow is one-sided: t >= 0")
    delta = delta_coefficients(grid)
    return HeatState(t, delta.with_values(delta.values * _damping(grid, t)))


def semigroup_apply(t: float, f: CoeffFn) -> CoeffFn:
    """Contraction semigroup e^{t . generator} acting by e^{lambda t}."""
    if t < 0.0:
        raise ValueError("heat flow is one-sided: t >= 0")
    return f.with_values(f.values * _damping(f.grid, t))


def heat_equation_residual(t: float, h: float, s: SobolevIndex,
                           grid: SpectralGrid) -> float:
    """Norm of the centered time-difference minus the generator image at time t."""
    if not 0.0 < h < t:
        raise ValueError("need 0 < h < t for the centered difference")
    up = heat_coefficients(t + h, grid).coeffs
    down = heat_coefficients(t - h, grid).coeffs
    mid = heat_coefficients(t, grid).coeffs
    diff = up.with_values((up.values - down.values) / (2.0 * h))
    gen = apply_generator(mid)
    return sobolev_norm(diff.with_values(diff.values - gen.values), s)


def initial_condition_gap(t: float, grid: SpectralGrid,
                          s: SobolevIndex = -DELTA_INDEX) -> float:
    """Distance of the heat data from the delta data in the index-s norm.

    The default index is the delta datum's natural home (the first index
    below minus half the surface dimension).
    """
    if not t > 0.0:
        raise ValueError("the gap is defined for t > 0")
    ht = heat_coefficients(t, grid).coeffs
    delta = delta_coefficients(grid)
    return sobolev_norm(ht.with_values(ht.values - delta.values), s)


def uniqueness_gap(f0: CoeffFn, g0: CoeffFn, t: float, s: SobolevIndex) -> float:
    """Norm of the difference of the two evolved solutions at time t.

    Contraction makes it bounded by the initial gap, and zero initial gap
    stays exactly zero: the numerical face of solution uniqueness.
    """
    if f0.grid is not g0.grid:
        raise ValueError("initial data live on different grids")
    a = semigroup_apply(t, f0)
    b = semigroup_apply(t, g0)
    return sobolev_norm(a.with_values(a.values - b.values), s)


def euler_error(t: float, steps: int, grid: SpectralGrid,
                s: SobolevIndex = RESIDUAL_INDEX) -> float:
    """Error of explicit Euler stepping of the evolution from the delta data.

    Stability needs step < 2/|lambda|_max; callers pick steps accordingly.
    """
    if steps < 1:
        raise ValueError("at least one step")
    k = t / steps
    lam = grid.lambdas
    if k * float(np.max(np.abs(lam))) >= 2.0:
        raise ValueError("Euler step too large for the stiffest grid entry")
    vals = delta_coefficients(grid).values * (1.0 + k * lam) ** steps
    exact = heat_coefficients(t, grid).coeffs
    return sobolev_norm(exact.with_values(vals - exact.values), s)


def resolvent_laplace_defect(c: float, f: CoeffFn, s: SobolevIndex = 0,
                             t_max: float = 60.0, n_nodes: int = 24,
                             n_panels: int = 12) -> float:
    """Relative defect of (generator - c)^{-1} f against -int_0^inf e^{-ct} G(t) f dt.

    The Laplace integral is done by geometric Gauss-Legendre panels on [0, t_max];
    the identity links the resolvent to the semigroup it generates.
    """
    from numpy.polynomial.legendre import leggauss

    direct = apply_resolvent(c, f)
    widths = 1.35 ** np.arange(n_panels)
    widths *= t_max / widths.sum()
    edges = np.concatenate(([0.0], np.cumsum(widths)))
    xg, wg = leggauss(n_nodes)
    acc = np.zeros_like(f.values)
    for a, b in zip(edges[:-1], edges[1:]):
        ts = 0.5 * (b - a) * xg + 0.5 * (a + b)
        ws = 0.5 * (b - a) * wg
        for ti, wi in zip(ts, ws):
            acc += wi * np.exp(-c * ti) * semigroup_apply(ti, f).values
    quad = f.with_values(-acc)
    defect = sobolev_norm(f.with_values(quad.values - direct.values), s)
    return defect / max(sobolev_norm(direct, s), 1e-300)
