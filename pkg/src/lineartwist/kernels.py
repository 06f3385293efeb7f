"""Double-precision special-function kernels with tracked error bounds.

Everything here reduces to one workhorse, the canonical Lerch series

    phi(s, x, a) = sum_{n >= 0} e(n x) (n + a)^(-s),     a > 0,

evaluated by Euler-Maclaurin summation of the smooth summand
``exp(2 pi i x' u) (u + a)^(-s)`` with ``x'`` the representative of ``x`` in
``(-1/2, 1/2]``.  The tail integral

    J(L) = int_L^oo exp(c v) v^(-s) dv,     c = 2 pi i x',

is obtained from

* ``L^(1-s)/(s-1)`` when ``x' = 0`` (Hurwitz case),
* the expansion ``Gamma(1-s)(-c)^(s-1) + sum_j c^j/j! L^(j+1-s)/(s-j-1)``
  when ``|c| L`` is small,
* repeated integration by parts when ``|c| L`` is large (the summation
  cut-off is pushed out until that holds).

For ``Re(s) <= -1/2`` the Hurwitz-Lerch functional equation reflects the
evaluation into ``Re(s) >= 3/2``.

Parameters within ``INTEGER_SNAP`` of an integer are treated as integers so
that rational twists built in floating point hit the exact pole structure.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from .errors import DomainError, PoleError, PrecisionError

EPS = float(np.finfo(float).eps)
TWO_PI = 2.0 * math.pi
LOG_TWO_PI = math.log(TWO_PI)

INTEGER_SNAP = 1e-12
POLE_GUARD = 1e-8

# Paths.
REFLECT_BELOW = -0.5
DIRECT_ABOVE = 1.5

_N_BERNOULLI = 48
_BERN = special.bernoulli(2 * _N_BERNOULLI)
# B_{2k} / (2k), k = 1..K
_EM_WEIGHTS = np.array([_BERN[2 * k] / (2 * k) for k in range(1, _N_BERNOULLI + 1)])

_ERDELYI_MAX = 6.0
_ERDELYI_TERMS = 64
_ASYMPTOTIC_TERMS = 20000
_CUTOFF_CAP = 4_000_000
_CHUNK = 1 << 16

FLAG_NEAR_POLE = "near-pole"
FLAG_REFLECTED = "reflected"
FLAG_DIRECT = "direct-sum"


@dataclass(frozen=True)
class EvalResult:
    """A complex value with a claimed absolute error bound."""

    value: complex
    abs_error: float
    flags: frozenset = field(default_factory=frozenset)

    def __complex__(self) -> complex:
        return complex(self.value)

    def __add__(self, other: "EvalResult") -> "EvalResult":
        return EvalResult(self.value + other.value, self.abs_error + other.abs_error,
                          self.flags | other.flags)

    def __sub__(self, other: "EvalResult") -> "EvalResult":
        return EvalResult(self.value - other.value, self.abs_error + other.abs_error,
                          self.flags | other.flags)

    def scale(self, factor: complex, factor_rel_error: float = 0.0) -> "EvalResult":
        """Multiply by an exactly known (up to ``factor_rel_error``) factor."""
        v = self.value * factor
        err = abs(factor) * self.abs_error + abs(v) * (factor_rel_error + 2 * EPS)
        return EvalResult(v, err, self.flags)


@dataclass(frozen=True)
class LerchPoint:
    """Argument triple of the Hurwitz-Lerch zeta function.

    ``x`` and ``y`` are stored as fractional parts in ``[0, 1)``.
    """

    s: complex
    x: float
    y: float

    def __post_init__(self):
        object.__setattr__(self, "s", complex(self.s))
        object.__setattr__(self, "x", frac(self.x))
        object.__setattr__(self, "y", frac(self.y))


def frac(x: float) -> float:
    """Fractional part in ``[0, 1)``, snapping near-integers to 0."""
    f = float(x) - math.floor(x)
    if f < INTEGER_SNAP or 1.0 - f < INTEGER_SNAP:
        return 0.0
    return f


def is_integer(x: float) -> bool:
    return frac(x) == 0.0


def _centered(x: float) -> float:
    f = frac(x)
    return f - 1.0 if f > 0.5 else f


def e(x: float) -> complex:
    """``exp(2 pi i x)`` with the argument reduced mod 1 first."""
    return cmath.exp(2j * math.pi * frac(x))


# ---------------------------------------------------------------- log-gamma

def log_gamma(s: complex) -> EvalResult:
    """Principal branch of ``log Gamma(s)``."""
    s = complex(s)
    if s.imag == 0.0 and s.real <= 0.0 and s.real == math.floor(s.real):
        raise PoleError(f"Gamma has a pole at {s.real:g}", location=s)
    v = complex(special.loggamma(s))
    # scipy's loggamma is accurate to a few ulps of max(1, |value|)
    err = 8 * EPS * (1.0 + abs(v))
    return EvalResult(v, err)


def _loggamma(s: complex) -> complex:
    return complex(special.loggamma(s))


# ------------------------------------------------------ tail integral J(L)

def _tail_integral_hurwitz(s: complex, L: np.ndarray):
    val = np.exp((1.0 - s) * np.log(L)) / (s - 1.0)
    err = 4 * EPS * np.abs(val) * (1.0 + abs(s) * np.log(L))
    return val, err


def _tail_integral_small(s: complex, c: complex, L: np.ndarray):
    """Expansion of J for small ``|c| L``; valid away from s = 1, 2, 3, ..."""
    g = cmath.exp(_loggamma(1.0 - s) + (s - 1.0) * cmath.log(-c))
    cl = c * L
    j = np.arange(_ERDELYI_TERMS)
    # (cL)^j / j!
    powers = np.cumprod(np.concatenate([np.ones((L.size, 1), complex),
                                        np.broadcast_to(cl[:, None], (L.size, _ERDELYI_TERMS - 1))
                                        / j[1:][None, :]], axis=1), axis=1)
    terms = powers / (s - j - 1.0)[None, :]
    lead = np.exp((1.0 - s) * np.log(L))
    series = lead * terms.sum(axis=1)
    val = g + series
    mag = abs(g) + np.abs(lead) * np.abs(terms).sum(axis=1)
    err = 16 * EPS * mag * (1.0 + abs(s) * np.log(L))
    return val, err


def _tail_integral_small_regular(s: complex, c: complex, L: np.ndarray):
    m = round(s.real)
    if m >= 1 and abs(s - m) < 0.1:
        # J is entire in s; take the mean over a circle that avoids the
        # removable cancellation at s = m.
        k = 24
        nodes = s + 0.25 * np.exp(2j * math.pi * (np.arange(k) + 0.5) / k)
        vals = []
        errs = []
        for node in nodes:
            v, er = _tail_integral_small(complex(node), c, L)
            vals.append(v)
            errs.append(er)
        return np.mean(vals, axis=0), np.max(errs, axis=0) * 4
    return _tail_integral_small(s, c, L)


def _tail_integral_large(s: complex, c: complex, L: np.ndarray):
    pref = -np.exp(c * L - s * np.log(L)) / c
    term = np.ones(L.size, complex)
    total = np.ones(L.size, complex)
    absum = np.ones(L.size)
    cl = c * L
    last = np.inf
    for k in range(_ASYMPTOTIC_TERMS):
        term = term * (s + k) / cl
        mag = float(np.max(np.abs(term)))
        if mag > last:
            raise PrecisionError("asymptotic tail expansion diverged", complex(np.nan), math.inf)
        total += term
        absum += np.abs(term)
        last = mag
        if mag < 1e-18:
            break
    else:
        raise PrecisionError("asymptotic tail expansion did not converge", complex(np.nan), math.inf)
    val = pref * total
    err = np.abs(pref) * (2 * last + 8 * EPS * absum * (1.0 + abs(s) * np.log(L)))
    return val, err


# ------------------------------------------------------ Euler-Maclaurin core

def _em_phi(s: complex, xr: float, a: np.ndarray):
    """phi(s, x', a_r) for each r by Euler-Maclaurin; returns (values, errors)."""
    abs_s = abs(s)
    n_min = max(40, int(math.ceil(2.0 * abs_s)))
    a_max = float(np.max(a))
    c = 2j * math.pi * xr
    if xr == 0.0:
        mode = "hurwitz"
        n_cut = n_min
    else:
        ac = abs(c)
        if ac * (n_min + a_max) <= _ERDELYI_MAX:
            mode = "small"
            n_cut = n_min
        else:
            mode = "large"
            need = abs_s + 40.0 + math.sqrt(80.0 * abs_s)
            n_cut = max(n_min, int(math.ceil(need / ac)))
            if n_cut > _CUTOFF_CAP:
                raise PrecisionError(
                    f"summation cut-off {n_cut} exceeds cap for x'={xr:g}, |s|={abs_s:g}",
                    complex(np.nan), math.inf)

    L = n_cut + a
    logL = np.log(L)

    direct = np.zeros(a.size, complex)
    direct_abs = np.zeros(a.size)
    for start in range(0, n_cut, _CHUNK):
        n = np.arange(start, min(start + _CHUNK, n_cut), dtype=float)
        logs = np.log(n[None, :] + a[:, None])
        terms = np.exp(c * n[None, :] - s * logs)
        direct += terms.sum(axis=1)
        direct_abs += (np.abs(terms) * (1.0 + abs_s * np.abs(logs))).sum(axis=1)

    if mode == "hurwitz":
        J, J_err = _tail_integral_hurwitz(s, L)
    elif mode == "small":
        J, J_err = _tail_integral_small_regular(s, c, L)
    else:
        J, J_err = _tail_integral_large(s, c, L)
    phase_a = np.exp(-c * a)
    integral = phase_a * J

    base = np.exp(c * n_cut - s * logL)  # f(N)
    # Taylor coefficients d_m = f^{(m)}(N)/m!, m < 2K
    m_count = 2 * _N_BERNOULLI
    j = np.arange(1, m_count)
    bl = np.ones((a.size, m_count), complex)
    bl[:, 1:] = np.cumprod((-s - j + 1.0)[None, :] / (j[None, :] * L[:, None]), axis=1)
    ec = np.ones(m_count, complex)
    ec[1:] = np.cumprod(c / j)
    # d[:, m] = sum_{i + j = m} ec[i] * bl[:, j]
    toeplitz = np.zeros((m_count, m_count), complex)
    for i in range(m_count):
        toeplitz[i, i:] = ec[: m_count - i]
    d = (bl @ toeplitz) * base[:, None]
    corr_terms = _EM_WEIGHTS[None, :] * d[:, 1::2]
    corr = corr_terms.sum(axis=1)
    trunc = 2.0 * np.abs(corr_terms[:, -1]) + 2.0 * np.abs(corr_terms[:, -2])

    value = direct + integral + 0.5 * base - corr
    err = (trunc + J_err + 4 * EPS * (direct_abs + np.abs(integral) * (1 + abs_s * logL)
                                       + np.abs(corr_terms).sum(axis=1) * (1 + abs_s * logL)))
    return value, err


# ------------------------------------------------------------- public API

def lerch_phi(s: complex, x: float, a, path: str | None = None):
    """Canonical Lerch series ``sum_{n>=0} e(n x)(n+a)^(-s)`` continued to C.

    ``a`` may be a scalar or an array of positive shifts (vectorised over
    ``a``).  ``path`` forces ``"em"`` or ``"reflect"``; by default reflection
    is used for ``Re(s) <= -1/2``.  Returns ``(values, errors, flags)``.
    """
    s = complex(s)
    arr = np.atleast_1d(np.asarray(a, dtype=float))
    if np.any(arr <= 0):
        raise DomainError("Lerch shift must be positive")
    xr = _centered(x)
    if xr == 0.0 and abs(s - 1.0) < POLE_GUARD:
        raise PoleError("pole of the Lerch series at s=1 (integer twist)", location=1.0 + 0j,
                        residue=1.0 + 0j)
    if path is None:
        path = "reflect" if s.real <= REFLECT_BELOW else "em"
    flags = set()
    if path == "em":
        vals, errs = _em_phi(s, xr, arr)
        if s.real >= DIRECT_ABOVE:
            flags.add(FLAG_DIRECT)
    elif path == "reflect":
        vals = np.empty(arr.size, complex)
        errs = np.empty(arr.size)
        for i, ai in enumerate(arr):
            r = _phi_reflected(s, xr, float(ai))
            vals[i], errs[i] = r.value, r.abs_error
        flags.add(FLAG_REFLECTED)
    else:
        raise ValueError(f"unknown path {path!r}")
    if xr == 0.0 and abs(s - 1.0) < 1e-2:
        flags.add(FLAG_NEAR_POLE)
    return vals, errs, frozenset(flags)


def _phi_reflected(s: complex, xr: float, a: float) -> EvalResult:
    """phi(s, x, a) via the Hurwitz-Lerch functional equation."""
    k = math.ceil(a) - 1  # a = k + a0 with a0 in (0, 1]
    a0 = a - k
    x = frac(xr)
    if a0 >= 1.0 - INTEGER_SNAP:
        # phi(s, x, 1) = e(-x) zeta_L(s, x, 0)
        base = lerch_fe_rhs(1.0 - s, x, 0.0).scale(e(-x))
    else:
        base = lerch_fe_rhs(1.0 - s, x, a0)
    if k == 0:
        return base
    # phi(s, x, k + a0) = e(-k x) [phi(s, x, a0) - sum_{n<k} e(n x)(n + a0)^(-s)]
    n = np.arange(k, dtype=float)
    head = np.exp(2j * math.pi * x * n - s * np.log(n + a0)).sum()
    return EvalResult((base.value - head) * e(-k * x),
                      base.abs_error + 4 * EPS * k * abs(head), base.flags)


def hurwitz_zeta(s: complex, a: float = 1.0) -> EvalResult:
    """Hurwitz zeta ``sum_{n>=0} (n+a)^(-s)`` continued to C (pole at s=1)."""
    s = complex(s)
    if a <= 0:
        raise DomainError("Hurwitz shift must be positive")
    if abs(s - 1.0) < POLE_GUARD:
        raise PoleError("Hurwitz zeta has a pole at s=1", location=1.0 + 0j, residue=1.0 + 0j)
    vals, errs, flags = lerch_phi(s, 0.0, float(a))
    return EvalResult(complex(vals[0]), float(errs[0]), flags)


def lerch_zeta(s, x: float | None = None, y: float | None = None, path: str | None = None) -> EvalResult:
    """Hurwitz-Lerch zeta ``sum_{n > -{y}} e(n{x}) (n+{y})^(-s)``.

    Accepts either a :class:`LerchPoint` or ``(s, x, y)``.  When ``{y} = 0``
    the sum starts at ``n = 1``.
    """
    p = s if isinstance(s, LerchPoint) else LerchPoint(s, x, y)
    if p.x == 0.0 and abs(p.s - 1.0) < POLE_GUARD:
        raise PoleError("Hurwitz-Lerch zeta has a pole at s=1 for integer x",
                        location=1.0 + 0j, residue=1.0 + 0j)
    if p.y == 0.0:
        vals, errs, flags = lerch_phi(p.s, p.x, 1.0, path=path)
        ph = e(p.x)
        return EvalResult(complex(vals[0]) * ph, float(errs[0]) + 2 * EPS * abs(vals[0]), flags)
    vals, errs, flags = lerch_phi(p.s, p.x, p.y, path=path)
    return EvalResult(complex(vals[0]), float(errs[0]), flags)


def lerch_fe_rhs(s: complex, x: float, y: float) -> EvalResult:
    """Right-hand side of the Hurwitz-Lerch functional equation.

    Equals ``zeta_L(1-s, x, y)``:

        Gamma(s)/(2 pi)^s [ e^{i pi s/2 - 2 pi i {x}{y}} zeta_L(s, -y, x)
                           + e^{-i pi s/2 + 2 pi i {-x}{y}} zeta_L(s, y, -x) ].
    """
    s = complex(s)
    lg = log_gamma(s)
    fx, fy, fmx = frac(x), frac(y), frac(-x)
    common = lg.value - s * LOG_TWO_PI
    p1 = cmath.exp(common + 1j * math.pi * s / 2 - 2j * math.pi * fx * fy)
    p2 = cmath.exp(common - 1j * math.pi * s / 2 + 2j * math.pi * fmx * fy)
    z1 = lerch_zeta(s, -y, x)
    z2 = lerch_zeta(s, y, -x)
    v = p1 * z1.value + p2 * z2.value
    # relative error of the prefactors: log-gamma error plus rounding of the
    # exponent, whose size is dominated by the imaginary part
    rel = lg.abs_error + 4 * EPS * (abs(common) + abs(s) * 2)
    err = (abs(p1) * z1.abs_error + abs(p2) * z2.abs_error
           + rel * (abs(p1 * z1.value) + abs(p2 * z2.value)))
    return EvalResult(v, err, z1.flags | z2.flags | {FLAG_REFLECTED})
