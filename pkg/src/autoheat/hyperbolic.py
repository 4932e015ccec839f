"""Upper half-plane points, modular reduction, and fundamental-domain quadrature."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

FUNDAMENTAL_DOMAIN_FLOOR = np.sqrt(3.0) / 2.0  # lowest height in the standard domain


@dataclass(frozen=True)
class HPoint:
    """A point z = x + iy of the upper half-plane."""

    x: float
    y: float

    def __post_init__(self):
        if not self.y > 0.0:
            raise ValueError(f"upper half-plane requires y > 0, got y = {self.y}")

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)

    @classmethod
    def from_complex(cls, z: complex) -> "HPoint":
        return cls(float(z.real), float(z.imag))


def reduce_to_fundamental_domain(p: HPoint, max_iter: int = 200) -> HPoint:
    """Translate/invert z into |x| <= 1/2, |z| >= 1.

    The classical reduction: each inversion strictly increases y when |z| < 1,
    so the loop terminates.
    """
    x, y = p.x, p.y
    for _ in range(max_iter):
        x -= np.floor(x + 0.5)
        n2 = x * x + y * y
        if n2 >= 1.0 - 1e-15:
            return HPoint(x, y)
        x, y = -x / n2, y / n2
    raise RuntimeError("fundamental-domain reduction did not terminate")


def cosh_distance(z: complex, w: complex) -> float:
    """cosh of the hyperbolic distance: 1 + |z-w|^2 / (2 Im z Im w)."""
    return 1.0 + abs(z - w) ** 2 / (2.0 * z.imag * w.imag)


def hyperbolic_distance(z: complex, w: complex) -> float:
    return float(np.arccosh(max(cosh_distance(z, w), 1.0)))


@dataclass(frozen=True)
class QuadSpec:
    """2-D quadrature recipe over the fundamental domain with measure dx dy / y^2.

    Tensor rule: Gauss-Legendre in x on [-1/2, 1/2]; for each x node, geometric
    Gauss-Legendre panels in y starting exactly on the arc y = sqrt(1 - x^2)
    and ending at the height cutoff y_max.
    """

    nx: int = 96
    y_panels: int = 8
    ny_per_panel: int = 16
    y_max: float = 10.0
    panel_growth: float = 1.9

    def __post_init__(self):
        if self.y_max <= 1.0:
            raise ValueError("height cutoff must clear the arc: y_max > 1")
        if min(self.nx, self.y_panels, self.ny_per_panel) < 1:
            raise ValueError("quadrature sizes must be positive")

    def nodes(self):
        """Return flat arrays (x, y, w) with w the dx dy / y^2 weights."""
        xg, wx = leggauss(self.nx)
        x = 0.5 * xg  # map [-1,1] -> [-1/2, 1/2]
        wx = 0.5 * wx
        yg, wy = leggauss(self.ny_per_panel)
        xs, ys, ws = [], [], []
        for xi, wxi in zip(x, wx):
            y_lo = np.sqrt(max(1.0 - xi * xi, 0.0))
            # geometric panel edges from the arc up to y_max
            widths = self.panel_growth ** np.arange(self.y_panels)
            widths *= (self.y_max - y_lo) / widths.sum()
            edges = y_lo + np.concatenate(([0.0], np.cumsum(widths)))
            for a, b in zip(edges[:-1], edges[1:]):
                ym = 0.5 * (b - a) * yg + 0.5 * (a + b)
                wm = 0.5 * (b - a) * wy
                xs.append(np.full_like(ym, xi))
                ys.append(ym)
                ws.append(wxi * wm / ym ** 2)
        return np.concatenate(xs), np.concatenate(ys), np.concatenate(ws)


def fundamental_domain_volume(quad: QuadSpec | None = None) -> float:
    """Numerical volume of the domain below the cutoff; -> pi/3 as y_max grows."""
    if quad is None:
        quad = QuadSpec(nx=64, y_panels=24, ny_per_panel=12, y_max=4000.0)
    _, _, w = quad.nodes()
    return float(np.sum(w))
