"""Evaluation of the spectral basis on the upper half-plane.

Three families: the constant form (handled by its single number), real
analytic Eisenstein series on the critical line, and Maass cusp forms from
ingested Fourier data.  All Bessel arithmetic runs through the exponentially
rescaled K-Bessel so that values stay O(1) even at spectral parameter r ~ 20,
where the raw K_{ir} and the normalization constants would otherwise meet as
e^{-pi r/2} times e^{+pi r/2}.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .hyperbolic import HPoint, QuadSpec, reduce_to_fundamental_domain
from .special import KBesselScaled, xi_line

_BESSEL_DECAY = 45.0  # keep Fourier terms until 2*pi*n*y exceeds r + this
_KBESSEL_X_MIN = 2.0  # smallest Bessel argument the evaluators cache


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"


class MaassDataError(ValueError):
    """Malformed or invalid Maass data file."""

    def __init__(self, message: str, lineno: int | None = None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


# ---------------------------------------------------------------------------
# Eisenstein series
# ---------------------------------------------------------------------------

def _divisor_cos(n: int, r: float) -> float:
    """Real Fourier multiplier n^{ir} sigma_{-2ir}(n) = sum_{d|n} cos(r log(n/d^2))."""
    total = 0.0
    d = 1
    while d * d <= n:
        if n % d == 0:
            e = n // d
            total += math.cos(r * math.log(e / d))
            if e != d:
                total += math.cos(r * math.log(d / e))
        d += 1
    return total


class EisensteinEvaluator:
    """Fixed-r evaluator for E_{1/2+ir} with cached zeta/Bessel state.

    `unitary` values carry the phase phi(1/2+ir)^{-1/2} making them real;
    `standard` values follow the y^s + phi(s) y^{1-s} constant-term
    normalization.  The two differ by a unimodular factor, so conjugated
    products against the basepoint value are identical in either frame.
    """

    _N_MULTIPLIERS = 72  # covers every truncation the half-plane can request

    def __init__(self, r: float, x_min: float = _KBESSEL_X_MIN):
        if r < 0.0:
            raise ValueError("spectral parameter r must be nonnegative")
        self.r = float(r)
        if self.r > 0.0:
            xi = xi_line(self.r)
            self._abs_xi = abs(xi)
            self._arg_xi = float(np.angle(xi))
            self._phi = np.conj(xi) / xi
            # 4/(xi(1+2ir) e^{pi r/2}) split into modulus (real prefactor of the
            # unitary frame) and the standard frame's complex version
            self._pref_unitary = 4.0 / (self._abs_xi * math.exp(math.pi * self.r / 2.0))
            self._kbessel = KBesselScaled(self.r, x_min=x_min)
            self._bn = np.array([_divisor_cos(n, self.r)
                                 for n in range(1, self._N_MULTIPLIERS + 1)])
            self._basepoint = self.unitary_value(HPoint(0.0, 1.0), reduce=False)
        else:
            self._basepoint = 0.0
        # immutable from here on: safe to share across threads

    @property
    def phi(self) -> complex:
        """Scattering term phi(1/2 + ir); -1 in the r -> 0 limit."""
        return complex(-1.0) if self.r == 0.0 else complex(self._phi)

    def _multipliers(self, n_max: int) -> np.ndarray:
        if n_max > len(self._bn):
            raise ValueError(
                f"{n_max} Fourier terms requested; heights this low are outside "
                f"the evaluator's domain (max {len(self._bn)})")
        return self._bn[:n_max]

    def auto_terms(self, y_min: float) -> int:
        return max(1, int(math.ceil((self.r + _BESSEL_DECAY) / (2.0 * math.pi * y_min))))

    def _tail_bound(self, n_next: int, y: float) -> float:
        # first omitted term: pref * d(n) * sqrt(y) * Ktilde(2 pi n y), with
        # Ktilde <= ~ e^{pi r/2 - x} sqrt(pi/2x) once x > r and <= ~2 before
        x = 2.0 * math.pi * n_next * y
        env = math.exp(min(0.0, -(x - max(self.r, 1.0)))) * 2.0
        return self._pref_unitary * n_next * math.sqrt(y) * env

    def unitary_values(self, x: np.ndarray, y: np.ndarray,
                       n_terms: int | None = None) -> np.ndarray:
        """Real unitary-frame values on arrays of half-plane coordinates.

        Points are assumed reduced (or at least y large enough that the
        truncated expansion converges; the auto rule uses min(y)).
        """
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if self.r == 0.0:
            return np.zeros_like(y)
        sy = np.sqrt(y)
        val = 2.0 * sy * np.cos(self.r * np.log(y) + self._arg_xi)
        y_min = float(np.min(y))
        n_auto = self.auto_terms(y_min)
        n_use = n_auto if n_terms is None else int(n_terms)
        if n_terms is not None and n_use < n_auto:
            tail = self._tail_bound(n_use + 1, y_min)
            if tail > 1e-12:
                warnings.warn(
                    f"eisenstein truncation at {n_use} terms leaves ~{tail:.2e} "
                    f"at y={y_min:.3f} (r={self.r:.3f})",
                    stacklevel=2,
                )
        bn = self._multipliers(n_use)
        acc = np.zeros_like(y)
        for n in range(1, n_use + 1):
            arg = 2.0 * math.pi * n * y
            mask = arg <= self.r + _BESSEL_DECAY
            if not np.any(mask):
                continue
            kt = self._kbessel(arg[mask])
            acc[mask] += bn[n - 1] * kt * np.cos(2.0 * math.pi * n * x[mask])
        return val + self._pref_unitary * sy * acc

    def unitary_value(self, p: HPoint, n_terms: int | None = None, reduce: bool = True) -> float:
        if reduce:
            p = reduce_to_fundamental_domain(p)
        return float(self.unitary_values(np.array([p.x]), np.array([p.y]), n_terms)[0])

    def standard_value(self, p: HPoint, n_terms: int | None = None, reduce: bool = True) -> complex:
        """Value in the y^s + phi(s) y^{1-s} normalization (complex)."""
        if self.r == 0.0:
            return complex(0.0)
        if reduce:
            p = reduce_to_fundamental_domain(p)
        # standard = phi^{1/2} * unitary with the principal branch
        phase = np.exp(0.5j * np.angle(self._phi))
        return complex(phase * self.unitary_value(p, n_terms, reduce=False))

    @property
    def basepoint_value(self) -> float:
        """Unitary-frame value at i (real); conjugation is a no-op."""
        return self._basepoint


def eval_eisenstein(r: float, z: HPoint, n_terms: int | None = None) -> complex:
    """E_{1/2+ir}(z) in the standard constant-term normalization."""
    return EisensteinEvaluator(r).standard_value(z, n_terms=n_terms)


def eval_eisenstein_unitary(r: float, z: HPoint, n_terms: int | None = None) -> float:
    """Real unitary-frame Eisenstein value (the frame the spectral grid uses)."""
    return EisensteinEvaluator(r).unitary_value(z, n_terms=n_terms)


# ---------------------------------------------------------------------------
# Maass cusp forms
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class MaassFormData:
    """Ingested cusp-form record.

    coeffs are Hecke-normalized (a_1 = 1).  norm_constant is the L2
    normalization in rescaled-Bessel units, filled in by load_maass_data (or
    normalize_maass_form); evaluation requires it.
    """

    r: float
    parity: Parity
    coeffs: np.ndarray
    source: str = ""
    norm_constant: float | None = None
    _kbessel: KBesselScaled | None = field(default=None, repr=False)

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=float)
        if self.r <= 0.0:
            raise ValueError("cusp form spectral parameter must be positive")
        if len(self.coeffs) < 10:
            raise ValueError("at least 10 Fourier coefficients required")
        if abs(self.coeffs[0] - 1.0) > 1e-9:
            raise ValueError(f"Hecke normalization a_1 = 1 violated: a_1 = {self.coeffs[0]}")

    @property
    def n_coeffs(self) -> int:
        return len(self.coeffs)

    def kbessel(self) -> KBesselScaled:
        if self._kbessel is None:
            self._kbessel = KBesselScaled(self.r, x_min=_KBESSEL_X_MIN)
        return self._kbessel


def _maass_values_raw(form: MaassFormData, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Unnormalized values sqrt(y) sum a_n Ktilde(2 pi n y) tr(2 pi n x)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    tr = np.cos if form.parity is Parity.EVEN else np.sin
    kb = form.kbessel()
    acc = np.zeros_like(y)
    for n in range(1, form.n_coeffs + 1):
        arg = 2.0 * math.pi * n * y
        mask = arg <= form.r + _BESSEL_DECAY
        if not np.any(mask):
            break
        kt = kb(arg[mask])
        acc[mask] += form.coeffs[n - 1] * kt * tr(2.0 * math.pi * n * x[mask])
    return np.sqrt(y) * acc


def _check_truncation(form: MaassFormData, y: float) -> None:
    if 2.0 * math.pi * form.n_coeffs * y <= form.r + 20.0:
        raise ValueError(
            f"{form.n_coeffs} coefficients are too few at height y={y:.4f} for "
            f"r={form.r:.4f}: need 2 pi N y > r + 20"
        )


def maass_values(form: MaassFormData, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Normalized form on arrays of already-reduced coordinates."""
    if form.norm_constant is None:
        raise ValueError("form is not normalized; run load_maass_data / normalize_maass_form")
    _check_truncation(form, float(np.min(y)))
    return form.norm_constant * _maass_values_raw(form, x, y)


def eval_maass(form: MaassFormData, z: HPoint) -> float:
    """Value of the unit-norm cusp form at z (reduced internally)."""
    p = reduce_to_fundamental_domain(z)
    return float(maass_values(form, np.array([p.x]), np.array([p.y]))[0])


def basepoint_value_maass(form: MaassFormData) -> float:
    """Conjugated value at the basepoint i; odd forms vanish there."""
    if form.parity is Parity.ODD:
        return 0.0
    return eval_maass(form, HPoint(0.0, 1.0))


def normalize_maass_form(form: MaassFormData, quad: QuadSpec | None = None) -> float:
    """Compute and store the L2(F) normalization constant.

    Quadrature of |f|^2 dx dy / y^2 over the fundamental domain; the form
    decays like e^{-2 pi y} so the default height cutoff loses nothing.
    """
    if quad is None:
        quad = QuadSpec(nx=96, y_panels=8, ny_per_panel=16, y_max=10.0)
    x, y, w = quad.nodes()
    vals = _maass_values_raw(form, x, y)
    norm_sq = float(np.sum(w * vals * vals))
    if not norm_sq > 0.0:
        raise ValueError(f"degenerate L2 norm for form r={form.r}")
    form.norm_constant = 1.0 / math.sqrt(norm_sq)
    return form.norm_constant


def maass_laplacian_residual(form: MaassFormData, z: HPoint, h: float = 1e-3) -> float:
    """Relative residual of y^2 (f_xx + f_yy) + (1/4 + r^2) f by central differences.

    Validates the ingested spectral parameter against the evaluated expansion.
    Returns |residual| / max over the stencil of |f| scaled by the eigenvalue.
    """
    lam = 0.25 + form.r * form.r
    f0 = eval_maass(form, z)
    fxp = eval_maass(form, HPoint(z.x + h, z.y))
    fxm = eval_maass(form, HPoint(z.x - h, z.y))
    fyp = eval_maass(form, HPoint(z.x, z.y + h))
    fym = eval_maass(form, HPoint(z.x, z.y - h))
    lap = z.y * z.y * (fxp + fxm + fyp + fym - 4.0 * f0) / (h * h)
    scale = lam * max(abs(f0), abs(fxp), abs(fyp), 1e-12)
    return abs(lap + lam * f0) / scale


# ---------------------------------------------------------------------------
# Data ingestion
# ---------------------------------------------------------------------------

_HEADER = "#maass-sl2z v1"


def parse_maass_data(text: str, source: str = "<string>") -> list[MaassFormData]:
    """Parse the Maass data grammar; raises MaassDataError with line numbers."""
    lines = text.splitlines()
    if not lines or lines[0].strip() != _HEADER:
        got = lines[0].strip() if lines else "<empty file>"
        raise MaassDataError(f"expected header '{_HEADER}', got '{got}'", lineno=1)
    forms_out: list[MaassFormData] = []
    i = 1
    while i < len(lines):
        line = lines[i].strip()
        if not line or line.startswith("#"):
            i += 1
            continue
        if not line.startswith("form "):
            raise MaassDataError(f"expected 'form' record, got '{line}'", lineno=i + 1)
        fields = dict()
        for tok in line[5:].split():
            if "=" not in tok:
                raise MaassDataError(f"malformed field '{tok}'", lineno=i + 1)
            key, val = tok.split("=", 1)
            fields[key] = val
        try:
            r = float(fields["r"])
            parity = Parity(fields["parity"])
            n = int(fields["n"])
        except (KeyError, ValueError) as exc:
            raise MaassDataError(f"bad form record '{line}': {exc}", lineno=i + 1) from exc
        i += 1
        coeffs: list[float] = []
        while len(coeffs) < n and i < len(lines):
            chunk = lines[i].strip()
            if chunk.startswith("form "):
                break  # next record began early: reported as a count mismatch
            i += 1
            if not chunk or chunk.startswith("#"):
                continue
            for tok in chunk.split():
                try:
                    coeffs.append(float(tok))
                except ValueError as exc:
                    raise MaassDataError(f"bad coefficient '{tok}'", lineno=i) from exc
        if len(coeffs) != n:
            raise MaassDataError(
                f"form r={r}: expected {n} coefficients, found {len(coeffs)}", lineno=i
            )
        try:
            forms_out.append(MaassFormData(r=r, parity=parity, coeffs=np.array(coeffs),
                                           source=source))
        except ValueError as exc:
            raise MaassDataError(str(exc), lineno=i) from exc
    return forms_out


def load_maass_data(path, quad: QuadSpec | None = None,
                    residual_check: bool = True) -> list[MaassFormData]:
    """Load, validate, and L2-normalize a Maass data file.

    The first form gets a Laplacian-residual spot check (consistency of the
    stored spectral parameter with the evaluated expansion).
    """
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    data = parse_maass_data(text, source=str(path))
    for form in data:
        normalize_maass_form(form, quad=quad)
    if residual_check and data:
        first = min(data, key=lambda f: f.r)
        probe = HPoint(0.21, 1.17)  # generic: odd forms vanish on x = 0
        res = maass_laplacian_residual(first, probe)
        if res > 1e-4:
            raise MaassDataError(
                f"Laplacian residual check failed for r={first.r}: {res:.2e} > 1e-4"
            )
    return data
