"""Coefficient functions on the spectral grid: norms, pairings, and operators.

A CoeffFn is one complex vector over the grid; the Sobolev index s enters
only through operation parameters, so the same vector represents an element
of every weighted space whose norm is finite.  The multiplication maps are
pointwise in the eigenvalue: (1 - lambda) shifts the scale by two indices
isometrically, lambda itself is the (negative, self-adjoint) generator of
the heat flow, and (lambda - C)^{-1} is its resolvent for C > 0.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .forms import maass_values
from .hyperbolic import QuadSpec
from .spectral_model import SobolevIndex, SpectralGrid


@dataclass(frozen=True)
class CoeffFn:
    """A complex-valued function on the spectral grid."""

    grid: SpectralGrid
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != (self.grid.size,):
            raise ValueError(f"expected {self.grid.size} values, got shape {vals.shape}")
        if not np.all(np.isfinite(vals)):
            raise ValueError("coefficient values must be finite")
        object.__setattr__(self, "values", vals)

    def with_values(self, values: np.ndarray) -> "CoeffFn":
        return CoeffFn(self.grid, values)


def _same_grid(f: CoeffFn, g: CoeffFn) -> None:
    if f.grid is not g.grid:
        raise ValueError("coefficient functions live on different grids")


def sobolev_norm(f: CoeffFn, s: SobolevIndex) -> float:
    """Weighted L2 norm over the grid: discrete entries count, nodes integrate."""
    w = f.grid.weights * (1.0 - f.grid.lambdas) ** s
    return float(np.sqrt(np.sum(w * np.abs(f.values) ** 2)))


def pairing(f: CoeffFn, g: CoeffFn) -> complex:
    """Weight-free sesquilinear duality pairing integral f conj(g)."""
    _same_grid(f, g)
    return complex(np.sum(f.grid.weights * f.values * np.conj(g.values)))


def pairing_s(f: CoeffFn, g: CoeffFn, s: SobolevIndex) -> complex:
    """The index-s inner product (the norm's polarization)."""
    _same_grid(f, g)
    w = f.grid.weights * (1.0 - f.grid.lambdas) ** s
    return complex(np.sum(w * f.values * np.conj(g.values)))


def apply_one_minus_laplacian(f: CoeffFn) -> CoeffFn:
    """Multiplication by (1 - lambda): the isometry shifting the scale by -2."""
    return f.with_values((1.0 - f.grid.lambdas) * f.values)


def invert_one_minus_laplacian(f: CoeffFn) -> CoeffFn:
    return f.with_values(f.values / (1.0 - f.grid.lambdas))


def apply_generator(f: CoeffFn) -> CoeffFn:
    """Multiplication by lambda: the heat semigroup's generator."""
    return f.with_values(f.grid.lambdas * f.values)


def apply_resolvent(c: float, f: CoeffFn) -> CoeffFn:
    """(generator - c)^{-1} f; requires c > 0 so the divisor stays away from 0."""
    if not c > 0.0:
        raise ValueError(f"resolvent parameter must be positive, got {c}")
    return f.with_values(f.values / (f.grid.lambdas - c))


def delta_coefficients(grid: SpectralGrid) -> CoeffFn:
    """Spectral data of the Dirac delta at the basepoint: conj basis values at i."""
    return CoeffFn(grid, grid.basepoint_values.astype(complex))


def basis_values(grid: SpectralGrid, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Matrix of basis evaluations: shape (grid.size, npoints), unitary frame.

    Rows follow coefficient order (cusp forms, constant, Eisenstein nodes);
    the points are assumed reduced.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    out = np.empty((grid.size, len(x)))
    for i, form in enumerate(grid.cusp_forms):
        out[i] = maass_values(form, x, y)
    out[grid.residual_index] = np.sqrt(3.0 / np.pi)
    for j, ev in enumerate(grid.eisenstein_evaluators):
        out[grid.n_cusp + 1 + j] = ev.unitary_values(x, y)
    return out


def analyze(fn, grid: SpectralGrid, quad: QuadSpec | None = None,
            mass_tolerance: float = 1e-3) -> CoeffFn:
    """Spectral coefficients of a pointwise-evaluable invariant function.

    fn(x, y) must accept coordinate arrays inside the fundamental domain.
    Inner products are taken against the grid's basis by fundamental-domain
    quadrature; the continuous entries are coefficient *densities* at the
    nodes, matching the grid's folded Plancherel weights.  Warns when the
    sampled mass above the height cutoff looks non-negligible.
    """
    if quad is None:
        quad = QuadSpec()
    x, y, w = quad.nodes()
    fv = np.asarray(fn(x, y), dtype=complex)
    # crude mass-above-cutoff estimate: compare top-strip samples to the bulk
    top = y > 0.9 * quad.y_max
    if np.any(top):
        top_mass = float(np.sum(np.abs(fv[top]) ** 2 * w[top]))
        total = float(np.sum(np.abs(fv) ** 2 * w))
        if total > 0 and top_mass > mass_tolerance * total:
            warnings.warn(
                f"function mass near the height cutoff y_max={quad.y_max} is "
                f"{top_mass / total:.2e} of the total; coefficients may be truncated",
                stacklevel=2,
            )
    basis = basis_values(grid, x, y)
    coeffs = basis @ (w * fv)
    return CoeffFn(grid, coeffs)


def synthesize_values(f: CoeffFn, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Pointwise synthesis sum/integral of coefficients against the basis."""
    basis = basis_values(f.grid, x, y)
    return (f.grid.weights * f.values) @ basis
