"""Special functions: K-Bessel of imaginary order and zeta on the line Re = 1.

Everything here is needed to evaluate the continuous-spectrum basis functions
and the cusp forms.  The K-Bessel routine is the workhorse: for spectral
parameter R and argument x < R the function oscillates with an overall
exponentially small envelope e^{-pi R/2}, so the exponentially rescaled
value e^{pi R/2} K_{iR}(x) is what every caller actually wants.  A direct
quadrature of the cosh integral loses all relative accuracy in that regime
(the integrand is O(1) while the answer is O(e^{-pi R/2})), so below the
monotone region we continue the solution of the modified Bessel ODE inward
from a quadrature-seeded starting point.
"""

from __future__ import annotations

import functools
import math

import numpy as np
from scipy.integrate import solve_ivp
from scipy.special import gamma as complex_gamma

# B_2 .. B_16, the even Bernoulli numbers used by the Euler-Maclaurin tail.
_BERNOULLI_EVEN = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
)

ZETA_LINE_T_MAX = 100.0


def zeta_euler_maclaurin(s: complex, n_terms: int = 100, tail_terms: int = 8) -> complex:
    """Riemann zeta via Euler-Maclaurin summation.

    Accurate to ~1e-13 relative for Re(s) > -1 and |Im(s)| <= 100 with the
    default truncation.  The pole at s = 1 is rejected.
    """
    s = complex(s)
    if s == 1:
        raise ValueError("zeta has a pole at s = 1")
    if tail_terms > len(_BERNOULLI_EVEN):
        raise ValueError(f"at most {len(_BERNOULLI_EVEN)} Bernoulli tail terms supported")
    n = np.arange(1, n_terms)
    total = np.sum(n ** (-s))
    total += 0.5 * n_terms ** (-s)
    total += n_terms ** (1.0 - s) / (s - 1.0)
    # Tail: sum_k B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    poch = s
    fact = 1.0
    for k in range(1, tail_terms + 1):
        fact *= (2 * k - 1) * (2 * k)
        total += _BERNOULLI_EVEN[k - 1] / fact * poch * n_terms ** (-s - 2 * k + 1)
        poch *= (s + 2 * k - 1) * (s + 2 * k)
    return complex(total)


def zeta_line(t: float) -> complex:
    """zeta(1 + it) on the edge of the critical strip.

    Relative accuracy ~1e-12 for |t| <= 100.  t = 0 hits the pole and is
    rejected.
    """
    if t == 0.0:
        raise ValueError("zeta(1 + it) has a pole at t = 0")
    if abs(t) > ZETA_LINE_T_MAX:
        raise ValueError(f"|t| <= {ZETA_LINE_T_MAX} required, got {t}")
    return zeta_euler_maclaurin(complex(1.0, t))


def xi_line(r: float) -> complex:
    """Completed zeta xi(1 + 2ir) = pi^{-s/2} Gamma(s/2) zeta(s) at s = 1 + 2ir."""
    s = complex(1.0, 2.0 * r)
    return np.pi ** (-s / 2) * complex_gamma(s / 2) * zeta_euler_maclaurin(s)


def scattering_phase(r: float) -> complex:
    """Scattering term phi(1/2 + ir) = xi(2ir)/xi(1 + 2ir) of the modular surface.

    The numerator is moved to the line Re = 1 by the functional equation
    xi(s) = xi(1-s), which makes it the conjugate of the denominator; the
    result is exactly unimodular.  phi(1/2) = -1 in the r -> 0 limit.
    """
    if r == 0.0:
        return complex(-1.0)
    xi = xi_line(r)
    return np.conj(xi) / xi


# ---------------------------------------------------------------------------
# K_{iR}(x)
# ---------------------------------------------------------------------------

_QUAD_DECAY = 45.0  # integrate until x*(cosh u - 1) exceeds this


def _kbessel_quad_scaled(r: float, x: np.ndarray, want_derivative: bool = False):
    """e^x K_{iR}(x) (and optionally its x-derivative's companion) by quadrature.

    Computes J(x) = integral_0^inf exp(-x(cosh u - 1)) cos(R u) du, so that
    K_{iR}(x) = e^{-x} J(x).  The rescaling keeps the integrand O(1).  Only
    reliable in a relative sense for x >= R + O(10); used as the ODE seed and
    for the monotone region.  Trapezoid steps are halved until two successive
    levels agree.
    """
    x = np.asarray(x, dtype=float)
    xmin = float(np.min(x))
    if xmin <= 0.0:
        raise ValueError("argument of K_{iR} must be positive")
    u_max = math.acosh(1.0 + _QUAD_DECAY / xmin)
    # Initial step: resolve both the cos(R u) oscillation and the envelope.
    n = 256
    while n * 0.35 < u_max * (8.0 + r):
        n *= 2
    xcol = x[:, None]

    def level(npts: int) -> np.ndarray:
        u = np.linspace(0.0, u_max, npts + 1)
        ch = np.cosh(u) - 1.0
        f = np.exp(-xcol * ch[None, :]) * np.cos(r * u)[None, :]
        w = np.full(npts + 1, u_max / npts)
        w[0] *= 0.5
        w[-1] *= 0.5
        return f @ w

    val = level(n)
    for _ in range(6):
        n *= 2
        new = level(n)
        if np.max(np.abs(new - val)) <= 1e-13 * max(1.0, float(np.max(np.abs(new)))):
            val = new
            break
        val = new
    if not want_derivative:
        return val
    # J'(x) = -integral (cosh u - 1) e^{-x(cosh u - 1)} cos(Ru) du
    u = np.linspace(0.0, u_max, n + 1)
    ch = np.cosh(u) - 1.0
    w = np.full(n + 1, u_max / n)
    w[0] *= 0.5
    w[-1] *= 0.5
    dval = -(np.exp(-xcol * ch[None, :]) * (ch * np.cos(r * u))[None, :]) @ w
    return val, dval


class KBesselScaled:
    """Evaluator for e^{pi R/2} K_{iR}(x) on x >= x_min at fixed R.

    For x above the turning-point region the quadrature seed is used directly.
    Below it, w(x) = e^x K_{iR}(x) solves

        x^2 w'' + x(1 - 2x) w' + (R^2 - x) w = 0,

    which is integrated inward once from x_seed = R + 50; the rescaled value
    e^{pi R/2 - x} w(x) is then compiled onto a Chebyshev polynomial so that
    bulk evaluations are one vectorized Clenshaw pass.  The rescaling keeps
    everything O(1) in the oscillatory regime, so relative accuracy (~1e-10)
    survives where the raw K value is e^{-pi R/2}-small.
    """

    def __init__(self, r: float, x_min: float = 1e-3):
        if r < 0:
            r = -r  # K_{iR} is even in R
        self.r = float(r)
        self.x_min = float(x_min)
        self.x_seed = self.r + 50.0
        # beyond this the rescaled value is below e^{-45}: treated as zero
        self.fit_hi = min(self.x_seed, np.pi * self.r / 2.0 + 45.0)
        # the interpolant's absolute floor (~1e-12) only preserves relative
        # accuracy while the value is not yet decayed; `accurate` switches to
        # the dense ODE solution there, `__call__` stays on the fast path
        self.split_accurate = np.pi * self.r / 2.0 + 5.0
        self._cheb = None
        self._ode = None
        if self.x_min < self.fit_hi:
            self._solve_inward()

    def _solve_inward(self) -> None:
        j, dj = _kbessel_quad_scaled(self.r, np.array([self.x_seed]), want_derivative=True)
        w0 = float(j[0])
        dw0 = float(dj[0])  # w' = J' since w = e^x * e^{-x} J

        r2 = self.r * self.r

        def rhs(x, y):
            w, wp = y
            return [wp, -((1.0 - 2.0 * x) * wp / x + (r2 - x) * w / (x * x))]

        sol = solve_ivp(
            rhs,
            (self.x_seed, self.x_min),
            [w0, dw0],
            method="DOP853",
            dense_output=True,
            rtol=1e-12,
            atol=1e-280,
        )
        if not sol.success:
            raise RuntimeError(f"K-Bessel ODE continuation failed for R={self.r}: {sol.message}")
        def scaled(x):
            return np.exp(np.pi * self.r / 2.0 - x) * sol.sol(x)[0]

        # interpolate in u = log x: near zero the rescaled Bessel is a clean
        # cosine of u, and the e^{-x} roll-off stays resolvable
        u_lo, u_hi = math.log(self.x_min), math.log(self.fit_hi)
        oscillations = self.r * (u_hi - u_lo) / (2.0 * np.pi)
        deg = int(160 + 10.0 * oscillations + 2.5 * self.fit_hi)
        k = np.arange(deg + 1)
        uk = 0.5 * (u_hi - u_lo) * (np.cos(np.pi * (k + 0.5) / (deg + 1)) + 1.0) + u_lo
        fk = scaled(np.exp(uk))
        # Chebyshev interpolation through the first-kind nodes
        theta = np.pi * (k + 0.5) / (deg + 1)
        basis = np.cos(np.outer(k, theta))
        coef = (2.0 / (deg + 1)) * basis @ fk
        coef[0] *= 0.5
        self._u_lo, self._u_hi = u_lo, u_hi
        self._coef = coef
        probe = np.exp(np.linspace(u_lo, u_hi, 257))
        err = float(np.max(np.abs(self._eval_cheb(probe) - scaled(probe))))
        if err > 1e-9:
            raise RuntimeError(
                f"K-Bessel interpolation failed for R={self.r}: max error {err:.2e}")
        self._cheb = True
        self._ode = sol.sol

    def _eval_cheb(self, x: np.ndarray) -> np.ndarray:
        u = (2.0 * np.log(x) - (self._u_lo + self._u_hi)) / (self._u_hi - self._u_lo)
        return np.polynomial.chebyshev.chebval(u, self._coef)

    def __call__(self, x) -> np.ndarray:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        if np.any(x <= 0.0):
            raise ValueError("argument of K_{iR} must be positive")
        if np.any(x < self.x_min - 1e-12):
            raise ValueError(f"argument below cached domain x_min={self.x_min}")
        out = np.zeros_like(x)
        lo = x < self.fit_hi
        if np.any(lo):
            out[lo] = self._eval_cheb(x[lo])
        if np.any(~lo):
            out[~lo] = self._quad_tail(x[~lo])
        return out

    def _quad_tail(self, xh: np.ndarray) -> np.ndarray:
        expo = np.pi * self.r / 2.0 - xh
        # underflow to 0 is fine: these arguments contribute nothing
        safe = expo > -700.0
        vals = np.zeros_like(xh)
        if np.any(safe):
            j = _kbessel_quad_scaled(self.r, xh[safe])
            vals[safe] = np.exp(expo[safe]) * j
        return vals

    def accurate(self, x) -> np.ndarray:
        """Relative-accuracy variant: dense ODE output covers the window where
        the interpolant's absolute floor would dominate the decayed values."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        if np.any(x <= 0.0):
            raise ValueError("argument of K_{iR} must be positive")
        if np.any(x < self.x_min - 1e-12):
            raise ValueError(f"argument below cached domain x_min={self.x_min}")
        out = np.zeros_like(x)
        lo = x < min(self.split_accurate, self.fit_hi)
        mid = ~lo & (x < self.x_seed) if self._ode is not None else np.zeros_like(lo)
        hi = ~lo & ~mid
        if np.any(lo):
            out[lo] = self._eval_cheb(x[lo])
        if np.any(mid):
            out[mid] = np.exp(np.pi * self.r / 2.0 - x[mid]) * self._ode(x[mid])[0]
        if np.any(hi):
            out[hi] = self._quad_tail(x[hi])
        return out


@functools.lru_cache(maxsize=64)
def _cached_evaluator(r_key: float, x_min: float) -> KBesselScaled:
    return KBesselScaled(r_key, x_min)


def bessel_k_imag_scaled(r: float, x, x_min: float = 1e-3) -> np.ndarray:
    """e^{pi R/2} K_{iR}(x), vectorized over x, cached per R."""
    ev = _cached_evaluator(round(abs(float(r)), 14), x_min)
    return ev(x)


def bessel_k_imag(r: float, x):
    """K_{iR}(x) = integral_0^inf e^{-x cosh u} cos(Ru) du.

    Symmetric in R; absolute accuracy well below 1e-10 for x >= 1e-3 and
    R <= 30.  Scalar x in, scalar out.
    """
    scalar = np.isscalar(x)
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xa <= 0.0):
        raise ValueError("argument of K_{iR} must be positive")
    r = abs(float(r))
    ev = _cached_evaluator(round(r, 14), 1e-3)
    val = ev.accurate(xa) * math.exp(-np.pi * r / 2.0)
    return float(val[0]) if scalar else val
