"""Independent correctness oracle: the group-periodized plane heat kernel.

The kernel on the surface is the sum of the explicit hyperbolic-plane heat
kernel over the orbit of the basepoint.  This shares no spectral machinery
with the synthesis path (no zeta, no Eisenstein series, no Maass data), so
agreement between the two is an end-to-end check of everything.

Truncation: the sum runs over group elements of Frobenius norm <= bound,
i.e. orbit points within hyperbolic distance acosh(bound^2/2) of i.  Because
orbit points multiply like e^rho while the kernel decays around radius ~ t,
small bounds are a short-time tool; the boundary-shell warning flags
inadequate bounds.  For the basepoint itself the matrix count by norm
factors through sums-of-two-squares counts, which makes bounds in the
thousands (long times) affordable.
"""

from __future__ import annotations

import math
import warnings

import numpy as np
from numpy.polynomial.chebyshev import Chebyshev
from numpy.polynomial.legendre import leggauss

from .hyperbolic import HPoint

SHELL_TOLERANCE = 1e-4
T_MIN, T_MAX = 0.2, 10.0


def heat_kernel_plane(t: float, rho, n_nodes: int = 160) -> np.ndarray:
    """Heat kernel of the hyperbolic plane at distance rho, vectorized.

    p_t(rho) = sqrt(2) e^{-t/4} (4 pi t)^{-3/2} *
               integral_rho^inf s e^{-s^2/4t} (cosh s - cosh rho)^{-1/2} ds.

    The endpoint square-root singularity is removed by s = rho + u^2, and the
    difference of coshes is evaluated as 2 sinh(rho + u^2/2) sinh(u^2/2) to
    dodge cancellation.
    """
    if not t > 0.0:
        raise ValueError("t > 0 required")
    rho = np.atleast_1d(np.asarray(rho, dtype=float))
    if np.any(rho < 0.0):
        raise ValueError("distances are nonnegative")
    s_max = np.maximum(rho, 1.0) + math.sqrt(4.0 * t * 46.0)
    u_max = np.sqrt(s_max - rho)
    xg, wg = leggauss(n_nodes)
    u = 0.5 * u_max[:, None] * (xg[None, :] + 1.0)
    w = 0.5 * u_max[:, None] * wg[None, :]
    s = rho[:, None] + u * u
    denom = 2.0 * np.sinh(rho[:, None] + 0.5 * u * u) * np.sinh(0.5 * u * u)
    integrand = 2.0 * u * s * np.exp(-s * s / (4.0 * t)) / np.sqrt(denom)
    val = np.sum(integrand * w, axis=1)
    return math.sqrt(2.0) * math.exp(-t / 4.0) / (4.0 * math.pi * t) ** 1.5 * val


def enumerate_group(bound: float) -> np.ndarray:
    """Integer matrices (a, b, c, d), ad - bc = 1, Frobenius norm <= bound,
    deduplicated by sign (first nonzero entry positive)."""
    if bound < math.sqrt(2.0):
        raise ValueError("bound below the identity's norm sqrt(2)")
    top = int(math.floor(bound))
    b2 = bound * bound
    rng = np.arange(-top, top + 1)
    bb, cc = np.meshgrid(rng, rng, indexing="ij")
    bc = bb * cc
    quads = []
    for a in range(1, top + 1):  # a > 0 half; sign dedupe keeps a >= 0
        num = 1 + bc
        mask = num % a == 0
        d = np.where(mask, num // a, 0)
        mask &= a * a + bb * bb + cc * cc + d * d <= b2
        if np.any(mask):
            n = int(mask.sum())
            quads.append(np.stack(
                [np.full(n, a), bb[mask], cc[mask], d[mask]], axis=1))
    # a = 0 forces bc = -1; keep the sign-canonical b = 1, c = -1 family
    dmax = int(math.floor(math.sqrt(max(b2 - 2.0, 0.0))))
    d = np.arange(-dmax, dmax + 1)
    quads.append(np.stack(
        [np.zeros_like(d), np.ones_like(d), -np.ones_like(d), d], axis=1))
    return np.concatenate(quads, axis=0)


def periodized_oracle(t: float, z: HPoint, norm_bound: float,
                      shell_warning: bool = True) -> float:
    """Sum of plane heat-kernel values over the truncated orbit of i.

    Warns when the outermost shell [norm_bound - 1, norm_bound] still
    contributes noticeably: the truncation is then inadequate for this t.
    """
    if not (T_MIN <= t <= T_MAX):
        raise ValueError(f"t in [{T_MIN}, {T_MAX}] required, got {t}")
    mats = enumerate_group(norm_bound)
    a, b, c, d = (mats[:, k].astype(float) for k in range(4))
    orbit = (a * 1j + b) / (c * 1j + d)
    zc = z.z
    coshd = 1.0 + np.abs(zc - orbit) ** 2 / (2.0 * z.y * orbit.imag)
    rho = np.arccosh(np.maximum(coshd, 1.0))
    vals = heat_kernel_plane(t, rho)
    total = float(np.sum(vals))
    if shell_warning:
        norms2 = a * a + b * b + c * c + d * d
        shell = norms2 >= (norm_bound - 1.0) ** 2
        shell_part = float(np.sum(vals[shell]))
        if shell_part > SHELL_TOLERANCE * max(abs(total), 1e-300):
            warnings.warn(
                f"boundary shell contributes {shell_part / total:.2e} of the "
                f"periodized sum at t={t}: norm_bound={norm_bound} is too small",
                stacklevel=2,
            )
    return total


def _two_squares_counts(n_max: int) -> np.ndarray:
    """r2[m] = number of (alpha, beta) in Z^2 with alpha^2 + beta^2 = m."""
    r2 = np.zeros(n_max + 1, dtype=np.int32)
    amax = int(math.isqrt(n_max))
    for alpha in range(amax + 1):
        rem = n_max - alpha * alpha
        dmax = int(math.isqrt(rem))
        d = np.arange(dmax + 1)
        vals = alpha * alpha + d * d
        mult = (np.where(d > 0, 2, 1) * (2 if alpha > 0 else 1)).astype(np.int32)
        np.add.at(r2, vals, mult)
    return r2


def matrix_counts_by_norm(n_max: int) -> np.ndarray:
    """count[n] = #{(a,b,c,d): ad - bc = 1, a^2+b^2+c^2+d^2 = n}, both signs.

    Splitting along a+d, a-d, b+c, b-c turns the determinant and norm
    conditions into a pair of circles alpha^2 + delta^2 = n + 2 and
    beta^2 + gamma^2 = n - 2 with parity couplings, so the count factors
    through sums-of-two-squares counts:
      n = 2 mod 4:  r2((n+2)/4) r2((n-2)/4)
      n = 3 mod 4:  r2(n+2) r2(n-2) / 2
      otherwise:    0 (parity obstruction).
    Verified against direct enumeration in the tests.
    """
    r2 = _two_squares_counts(n_max + 2)
    counts = np.zeros(n_max + 1, dtype=np.float64)
    n = np.arange(2, n_max + 1)
    m2 = n[n % 4 == 2]
    counts[m2] = r2[(m2 + 2) // 4].astype(np.float64) * r2[(m2 - 2) // 4]
    m3 = n[n % 4 == 3]
    counts[m3] = r2[m3 + 2].astype(np.float64) * r2[m3 - 2] / 2.0
    return counts


def periodized_oracle_basepoint(t: float, norm_bound: float,
                                chunk: int = 2 ** 22) -> float:
    """Periodized sum at z = i via arithmetic norm counts.

    At the basepoint cosh d(i, gamma i) = ||gamma||_F^2 / 2 is half an
    integer, so the whole sum is sum_n count(n) p_t(acosh(n/2)) / 2; the
    plane kernel is Chebyshev-interpolated in the distance.  Same answer as
    periodized_oracle(t, i, norm_bound), but bounds in the thousands run in
    seconds, which is what long times need.
    """
    if not (T_MIN <= t <= T_MAX):
        raise ValueError(f"t in [{T_MIN}, {T_MAX}] required, got {t}")
    n_max = int(math.floor(norm_bound * norm_bound))
    rho_max = float(np.arccosh(n_max / 2.0))
    deg = 240
    xk = np.cos(np.pi * (np.arange(deg + 1) + 0.5) / (deg + 1))
    rk = np.maximum(0.5 * rho_max * (xk + 1.0), 1e-9)
    cheb = Chebyshev.fit(rk, heat_kernel_plane(t, rk), deg, domain=[0.0, rho_max])
    r2 = _two_squares_counts(n_max + 2)
    total = 0.0
    for lo in range(2, n_max + 1, chunk):
        hi = min(lo + chunk, n_max + 1)
        n = np.arange(lo, hi, dtype=np.int64)
        cnt = np.zeros(len(n))
        m2 = n % 4 == 2
        cnt[m2] = r2[(n[m2] + 2) // 4].astype(np.float64) * r2[(n[m2] - 2) // 4]
        m3 = n % 4 == 3
        cnt[m3] = r2[n[m3] + 2].astype(np.float64) * r2[n[m3] - 2] / 2.0
        live = cnt > 0.0
        if not np.any(live):
            continue
        rho = np.arccosh(n[live] / 2.0)
        total += float(np.sum(cnt[live] * cheb(rho)))
    return 0.5 * total  # sign dedupe
