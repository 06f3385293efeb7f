"""Linear twists, shifted series and their functional equations.

Every evaluation reduces to q Lerch series, one per residue class:

    sum_{n>=1} b(n) e(-n alpha) n^{-w} = q^{-w} sum_{r=1}^{q} b(r) e(-r alpha) phi(w, -q alpha, r/q),
    sum_{n+beta>0} b(n) (n+beta)^{-w}  = q^{-w} sum_{r} b(r) phi(w, 0, (n_r+beta)/q),

with ``b`` a q-periodic table and ``n_r`` the first admissible integer in the
class of ``r``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .characters import DirichletCharacter, gauss_sum
from .degree1 import Degree1Function
from .errors import PoleError, PrecisionError, RequiresPrimitiveError
from .kernels import (EPS, LOG_TWO_PI, POLE_GUARD, EvalResult, e, frac, is_integer, lerch_phi,
                      lerch_zeta, log_gamma)

GAMMA_POLE_GUARD = 1e-6


def normalize_alpha(alpha: float) -> float:
    """Representative of ``alpha`` in ``(0, 1]``."""
    f = frac(alpha)
    return 1.0 if f == 0.0 else f


@dataclass(frozen=True)
class TwistQuery:
    alpha: float
    s: complex
    beta: float = 0.0
    precision: float = 1e-8

    def __post_init__(self):
        object.__setattr__(self, "alpha", normalize_alpha(self.alpha))
        object.__setattr__(self, "s", complex(self.s))


def _snap(x: float) -> float:
    r = round(x)
    return float(r) if abs(x - r) < 1e-12 else float(x)


# ------------------------------------------------------------- series cores

def twisted_series(table: np.ndarray, w: complex, alpha: float) -> EvalResult:
    """``sum_{n>=1} table[n % q] e(-n alpha) n^{-w}`` continued in ``w``."""
    q = table.size
    w = complex(w)
    x = frac(-q * alpha)
    r = np.arange(1, q + 1)
    weights = np.array([table[k % q] * e(-k * alpha) for k in r])
    keep = np.abs(weights) > 0
    if x == 0.0 and abs(w - 1.0) < POLE_GUARD:
        res = complex(weights.sum()) / q
        if abs(res) > 1e-13 * max(1.0, float(np.abs(weights).sum())):
            raise PoleError("twisted series has a pole at w=1", location=1.0 + 0j, residue=res)
        # removable: the leading parts cancel, but the value is not computed this close
        raise PoleError("evaluation refused at a removable pole of the kernels",
                        location=1.0 + 0j, residue=0j)
    if not keep.any():
        return EvalResult(0j, 0.0)
    vals, errs, flags = lerch_phi(w, x, r[keep] / q)
    qw = cmath.exp(-w * math.log(q))
    terms = weights[keep] * vals
    value = qw * complex(terms.sum())
    err = abs(qw) * (float(np.sum(np.abs(weights[keep]) * errs))
                     + 4 * EPS * (1 + abs(w) * math.log(q)) * float(np.abs(terms).sum()))
    return EvalResult(value, err, flags)


def shifted_series(table: np.ndarray, w: complex, beta: float, n_min: int | None = None) -> EvalResult:
    """``sum_{n >= n_min, n + beta > 0} table[n % q] (n + beta)^{-w}`` continued in ``w``."""
    q = table.size
    w = complex(w)
    beta = _snap(beta)
    n_start = math.floor(-beta) + 1
    if n_min is not None:
        n_start = max(n_start, int(n_min))
    n_r = n_start + np.arange(q)
    coeff = table[n_r % q]
    keep = np.abs(coeff) > 0
    if abs(w - 1.0) < POLE_GUARD:
        res = complex(coeff.sum()) / q
        if abs(res) > 1e-13 * max(1.0, float(np.abs(coeff).sum())):
            raise PoleError("shifted series has a pole at w=1", location=1.0 + 0j, residue=res)
        raise PoleError("evaluation refused at a removable pole of the kernels",
                        location=1.0 + 0j, residue=0j)
    if not keep.any():
        return EvalResult(0j, 0.0)
    a = (n_r[keep] + beta) / q
    vals, errs, flags = lerch_phi(w, 0.0, a)
    qw = cmath.exp(-w * math.log(q))
    terms = coeff[keep] * vals
    value = qw * complex(terms.sum())
    err = abs(qw) * (float(np.sum(np.abs(coeff[keep]) * errs))
                     + 4 * EPS * (1 + abs(w) * math.log(q)) * float(np.abs(terms).sum()))
    return EvalResult(value, err, flags)


def _relabel_pole(exc: PoleError, s_location: complex, residue: complex | None = None) -> PoleError:
    return PoleError(str(exc), location=s_location,
                     residue=exc.residue if residue is None else residue)


# --------------------------------------------------------------- F(s, alpha)

def linear_twist(F: Degree1Function, s: complex, alpha: float) -> EvalResult:
    """``F(s, alpha) = sum a(n) e(-n alpha) n^{-s}`` continued to the whole plane."""
    s = complex(s)
    alpha = normalize_alpha(alpha)
    w = s + 1j * F.theta
    try:
        return twisted_series(F.periodic.as_array(), w, alpha)
    except PoleError as exc:
        raise _relabel_pole(exc, 1.0 - 1j * F.theta,
                            residue_formula(F, alpha) if exc.residue else 0j) from None


def f_star(F: Degree1Function, s: complex, beta: float) -> EvalResult:
    """``F_*(s, 0, beta) = sum_{n + beta > 0} a~(n) (n + beta)^{-(s + i theta)}``, n over all integers."""
    s = complex(s)
    w = s + 1j * F.theta
    try:
        return shifted_series(F.periodic.as_array(), w, beta)
    except PoleError as exc:
        raise _relabel_pole(exc, 1.0 - 1j * F.theta) from None


def component_twist(F: Degree1Function, label: int, s: complex, alpha: float) -> EvalResult:
    """``F_chi(s, alpha) = sum b_chi(n) e(-n alpha) n^{-s}`` with ``F_chi = P_chi L(., chi*)``."""
    comp = F.component(label)
    return twisted_series(comp.periodic_table(), complex(s), normalize_alpha(alpha))


def component_star(F: Degree1Function, label: int, s: complex, beta: float, conjugate: bool = False) -> EvalResult:
    table = F.component(label).periodic_table()
    if conjugate:
        table = table.conj()
    return shifted_series(table, complex(s), beta)


# ------------------------------------------------------------ L(s, chi, alpha)

def _require_primitive(chi: DirichletCharacter) -> None:
    if not chi.is_primitive:
        raise RequiresPrimitiveError(f"{chi!r} is not primitive (conductor {chi.conductor})")


def l_twist(chi: DirichletCharacter, s: complex, alpha: float) -> EvalResult:
    """``L(s, chi, alpha)`` through the Gauss-sum combination of Lerch zeta values."""
    _require_primitive(chi)
    s = complex(s)
    alpha = normalize_alpha(alpha)
    q = chi.modulus
    chib = chi.conjugate()
    tau_b = gauss_sum(chib)
    aq = alpha * q
    if abs(s - 1.0) < POLE_GUARD:
        if chi(round(aq) if is_integer(aq) else aq) != 0:
            raise PoleError("L(s, chi, alpha) has a pole at s=1", location=1.0 + 0j,
                            residue=l_twist_residue(chi, alpha))
        raise PoleError("evaluation refused at a removable pole of the kernels",
                        location=1.0 + 0j, residue=0j)
    total = EvalResult(0j, 0.0)
    for a in range(q):
        c = chib(a)
        if c == 0:
            continue
        total = total + lerch_zeta(s, a / q - alpha, 0.0).scale(c)
    return total.scale(1.0 / tau_b)


def l_twist_residue(chi: DirichletCharacter, alpha: float) -> complex:
    """Residue of ``L(s, chi, alpha)`` at ``s = 1``: ``conj(chi)(alpha q) / tau_{conj chi}``."""
    alpha = normalize_alpha(alpha)
    aq = alpha * chi.modulus
    if not is_integer(aq):
        return 0j
    chib = chi.conjugate()
    return chib(round(aq)) / gauss_sum(chib)


def l_star(chi: DirichletCharacter, s: complex, beta: float) -> EvalResult:
    """``L_*(s, chi, 0, beta) = sum_{n + beta > 0} chi(n) (n + beta)^{-s}``."""
    table = np.array(chi.values(), complex)
    return shifted_series(table, complex(s), beta)


# ------------------------------------------------------- functional equations

def _gamma_prefactor(u: complex, log_extra: complex):
    """``exp(log Gamma(u) + log_extra)`` with its relative error."""
    near = round(u.real)
    if near <= 0 and abs(u - near) < GAMMA_POLE_GUARD:
        raise PoleError("Gamma factor has a pole", location=complex(near))
    lg = log_gamma(u)
    expo = lg.value + log_extra
    rel = lg.abs_error + 4 * EPS * (abs(expo) + 1.0)
    return expo, rel


def _two_term(expo: complex, rel: float, u: complex, s1: EvalResult, s2: EvalResult, sign: complex) -> EvalResult:
    p1 = cmath.exp(expo + 1j * math.pi * u / 2)
    p2 = sign * cmath.exp(expo - 1j * math.pi * u / 2)
    value = p1 * s1.value + p2 * s2.value
    err = (abs(p1) * s1.abs_error + abs(p2) * s2.abs_error
           + rel * (abs(p1 * s1.value) + abs(p2 * s2.value)))
    return EvalResult(value, err, s1.flags | s2.flags)


def fe_rhs(F: Degree1Function, s: complex, alpha: float) -> EvalResult:
    """Right side of the twisted functional equation, equal to ``F(1 - s, alpha)``.

    ``omega* Gamma(u) q^{u-1/2} / (i^a (2 pi)^u) [e^{i pi u/2} Fb_*(s,0,-alpha q)
    + (-1)^a e^{-i pi u/2} Fb_*(s,0,alpha q)]`` with ``u = s - i theta`` and
    ``Fb`` the conjugate function.
    """
    s = complex(s)
    alpha = normalize_alpha(alpha)
    q = F.q
    u = s - 1j * F.theta
    a = F.frak_a
    expo, rel = _gamma_prefactor(
        u, cmath.log(F.omega_star) + (u - 0.5) * math.log(q) - u * LOG_TWO_PI - 1j * math.pi * a / 2)
    Fb = F.conjugate
    s1 = f_star(Fb, s, -alpha * q)
    s2 = f_star(Fb, s, alpha * q)
    return _two_term(expo, rel, u, s1, s2, (-1) ** a)


def fe_rhs_L(chi: DirichletCharacter, s: complex, alpha: float) -> EvalResult:
    """Right side of the functional equation of ``L(s, chi, alpha)``, equal to ``L(1 - s, chi, alpha)``."""
    _require_primitive(chi)
    s = complex(s)
    alpha = normalize_alpha(alpha)
    q = chi.modulus
    tau = gauss_sum(chi)
    par = chi.parity
    expo, rel = _gamma_prefactor(s, cmath.log(tau * par) - s * LOG_TWO_PI - (1 - s) * math.log(q))
    chib = chi.conjugate()
    s1 = l_star(chib, s, -alpha * q)
    s2 = l_star(chib, s, alpha * q)
    return _two_term(expo, rel, s, s1, s2, par)


def fe_rhs_component(F: Degree1Function, label: int, s: complex, alpha: float) -> EvalResult:
    """Single-component identity, equal to ``F_chi(1 - s, alpha)`` (no theta shift)."""
    s = complex(s)
    alpha = normalize_alpha(alpha)
    comp = F.component(label)
    q = F.q
    expo, rel = _gamma_prefactor(
        s, cmath.log(F.omega_star) + (s - 0.5) * math.log(q) - s * LOG_TWO_PI
        - 1j * math.pi * comp.chi.frak_a / 2)
    table = comp.periodic_table().conj()
    s1 = shifted_series(table, s, -alpha * q)
    s2 = shifted_series(table, s, alpha * q)
    return _two_term(expo, rel, s, s1, s2, comp.chi.parity)


# -------------------------------------------------------------------- residue

def residue_formula(F: Degree1Function, alpha: float) -> complex:
    """Residue of ``F(s, alpha)`` at ``s = 1 - i theta``."""
    alpha = normalize_alpha(alpha)
    aq = alpha * F.q
    if not is_integer(aq):
        return 0j
    a_val = F.periodic(round(aq))
    return F.omega_star / ((1j ** F.frak_a) * math.sqrt(F.q)) * a_val.conjugate()


def residue_numeric(F: Degree1Function, alpha: float, radius: float = 0.01, points: int = 64) -> complex:
    """Trapezoid rule for ``(1/2 pi i) \\oint F(s, alpha) ds`` on a circle around ``1 - i theta``."""
    center = 1.0 - 1j * F.theta
    phases = np.exp(2j * math.pi * np.arange(points) / points)
    total = 0j
    for z in phases:
        total += linear_twist(F, center + radius * z, alpha).value * z
    return complex(total * radius / points)


def evaluate(F: Degree1Function, query: TwistQuery) -> EvalResult:
    """``F(s, alpha)`` for a query, or ``F_*(s, 0, beta)`` when ``beta`` is set, enforcing its precision."""
    if query.beta:
        res = f_star(F, query.s, query.beta)
    else:
        res = linear_twist(F, query.s, query.alpha)
    if not res.abs_error <= query.precision:
        raise PrecisionError(f"bound {res.abs_error:.3g} exceeds requested {query.precision:.3g}",
                             res.value, res.abs_error)
    return res
