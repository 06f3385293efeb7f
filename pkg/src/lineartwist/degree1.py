"""Degree-1 functions built from Dirichlet polynomials times L-functions.

A function is stored through its invariants ``(q, eta, theta, omega_star)``
and, for every character ``chi`` mod ``q`` of the parity selected by ``eta``,
the coefficients ``c_chi(n)`` (``n | q/f_chi``) of the polynomial ``P_chi``:

    F(s) = sum_chi P_chi(s + i theta) L(s + i theta, chi*).

The coefficients of each ``P_chi`` obey

    c(n)/n = omega_star conj(omega_chi*) / sqrt(q/f) * conj(c(q/(n f))),

which is how ``omega_star`` is recovered and half-specified polynomials are
completed.
"""

from __future__ import annotations

import cmath
import math
from collections.abc import Mapping
from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType

import numpy as np

from .characters import (DirichletCharacter, GaussData, character, conductor_and_primitive,
                         divisors, omega_char, parity_class)
from .errors import (DomainError, EmptyFunctionError, InvalidComponentError, InvalidModulusError,
                     InvalidParityError, SymmetryViolationError, UnknownCharacterError)
from .kernels import EPS, EvalResult, frac, is_integer

SYMMETRY_TOL = 1e-10
PROJECTION_TOL = 1e-8


@dataclass(frozen=True)
class Component:
    """One ``P_chi(s) L(s, chi*)`` summand."""

    chi: DirichletCharacter
    conductor: int
    primitive: DirichletCharacter
    gauss: GaussData
    coefficients: Mapping  # divisor of q/f -> complex

    @property
    def label(self) -> int:
        return self.chi.label

    @property
    def cofactor(self) -> int:
        return self.chi.modulus // self.conductor

    def periodic_table(self) -> np.ndarray:
        """``b(n) = sum_{d | n} c(d) chi*(n/d)`` for ``n = 0..q-1``."""
        q = self.chi.modulus
        out = np.zeros(q, complex)
        for n in range(1, q + 1):
            out[n % q] = self.coefficient_at(n)
        return out

    def coefficient_at(self, n: int) -> complex:
        total = 0j
        for d, c in self.coefficients.items():
            if c != 0 and n % d == 0:
                total += c * self.primitive(n // d)
        return total


@dataclass(frozen=True)
class PeriodicCoefficients:
    """``a~(n)`` for ``n mod period``, with ``n_bar`` the least ``n >= 1`` where it is nonzero."""

    period: int
    values: tuple
    n_bar: int

    def __call__(self, n) -> complex:
        if not float(n).is_integer():
            return 0j
        return self.values[int(n) % self.period]

    def as_array(self) -> np.ndarray:
        return np.array(self.values, complex)


@dataclass(frozen=True, eq=False)
class Degree1Function:
    q: int
    eta: int
    theta: float
    omega_star: complex
    components: tuple  # of Component, in label order

    @property
    def frak_a(self) -> int:
        return self.eta + 1

    @property
    def xi(self) -> tuple[int, float]:
        """Opaque alias for the pair ``(eta, theta)``."""
        return (self.eta, self.theta)

    def component(self, label: int) -> Component:
        for comp in self.components:
            if comp.label == label:
                return comp
        raise UnknownCharacterError(f"no component for label {label}")

    def raw_components(self) -> dict[int, dict[int, complex]]:
        return {c.label: dict(c.coefficients) for c in self.components}

    @cached_property
    def periodic(self) -> PeriodicCoefficients:
        return coefficients(self)

    @cached_property
    def conjugate(self) -> "Degree1Function":
        """``conj(F(conj s))``: conjugated coefficients on conjugate characters, ``theta -> -theta``."""
        raw = {}
        for comp in self.components:
            label = comp.chi.conjugate().label
            raw[label] = {n: complex(c).conjugate() for n, c in comp.coefficients.items()}
        return build_function(self.q, self.eta, -self.theta, raw,
                              omega_star=complex(self.omega_star).conjugate())

    def __repr__(self) -> str:
        labels = ",".join(str(c.label) for c in self.components)
        return (f"Degree1Function(q={self.q}, eta={self.eta}, theta={self.theta:g}, "
                f"omega*={self.omega_star:.6g}, chars=[{labels}])")


def _partner(q: int, f: int, n: int) -> int:
    return q // (n * f)


def build_function(q: int, eta: int, theta: float, raw_components: Mapping,
                   omega_star: complex | None = None) -> Degree1Function:
    """Validate, infer ``omega_star`` and complete half-specified polynomials.

    ``raw_components`` maps a Conrey label mod ``q`` to a mapping
    ``divisor -> coefficient``.  Missing divisors are filled from their
    partner ``q/(n f)`` through the symmetry relation (or set to zero when
    the partner is missing too).
    """
    if not isinstance(q, int) or q < 1:
        raise InvalidModulusError(f"q must be a positive integer, got {q!r}")
    if eta not in (-1, 0):
        raise InvalidParityError(f"eta must be -1 or 0, got {eta!r}")
    allowed = {chi.label: chi for chi in parity_class(q, eta)}

    prepared = []
    for label, coeffs in raw_components.items():
        label = int(label)
        if label not in allowed:
            try:
                chi = character(q, label)
            except UnknownCharacterError as exc:
                raise InvalidComponentError(f"({q}, {label}) is not a character mod {q}") from exc
            raise InvalidComponentError(
                f"character ({q}, {label}) has parity {chi.parity:+d}, incompatible with eta={eta}")
        chi = allowed[label]
        f, prim = conductor_and_primitive(chi)
        cof = q // f
        given = {}
        for n, c in coeffs.items():
            n = int(n)
            if n < 1 or cof % n != 0:
                raise InvalidComponentError(
                    f"divisor {n} does not divide q/f = {cof} for character ({q}, {label})")
            given[n] = complex(c)
        prepared.append((chi, f, prim, omega_char(prim), given))

    if not any(abs(c) > 0 for *_, given in prepared for c in given.values()):
        raise EmptyFunctionError("all polynomial coefficients are zero")

    if omega_star is None:
        omega_star = _infer_omega(q, prepared)
    omega_star = complex(omega_star)
    if abs(abs(omega_star) - 1.0) > 1e-12:
        raise SymmetryViolationError(f"|omega*| = {abs(omega_star)} is not 1")

    components = []
    for chi, f, prim, gd, given in prepared:
        cof = q // f
        kappa = omega_star * gd.omega_char.conjugate() / math.sqrt(cof)
        full = {}
        for n in divisors(cof):
            m = _partner(q, f, n)
            if n in given:
                full[n] = given[n]
            elif m in given:
                full[n] = n * kappa * given[m].conjugate()
            else:
                full[n] = 0j
        for n in divisors(cof):
            m = _partner(q, f, n)
            if m == n:
                # c(n) = (n kappa) conj(c(n)) with |n kappa| = 1: project onto that real line
                k = n * kappa
                if abs(full[n] - k * full[n].conjugate()) <= 4 * EPS * max(1.0, abs(full[n])):
                    continue  # already on the constraint; keep bits stable across round trips
                root = cmath.sqrt(k)
                projected = root * (full[n] / root).real
                if abs(projected - full[n]) > PROJECTION_TOL * max(1.0, abs(full[n])):
                    raise SymmetryViolationError(
                        f"self-paired coefficient c({n}) of character ({q}, {chi.label}) "
                        f"violates the symmetry by {abs(projected - full[n]):.3g}",
                        character=(q, chi.label), divisor=n)
                full[n] = projected
        for n in divisors(cof):
            m = _partner(q, f, n)
            lhs = full[n] / n
            rhs = kappa * full[m].conjugate()
            if abs(lhs - rhs) > SYMMETRY_TOL * max(1.0, abs(lhs), abs(rhs)):
                raise SymmetryViolationError(
                    f"coefficients c({n}), c({m}) of character ({q}, {chi.label}) violate "
                    f"c(n)/n = omega* conj(omega_chi) conj(c(q/(nf)))/sqrt(q/f) "
                    f"(residual {abs(lhs - rhs):.3g})",
                    character=(q, chi.label), divisor=n)
        components.append(Component(chi, f, prim, gd, MappingProxyType(full)))

    components.sort(key=lambda c: c.label)
    return Degree1Function(q, eta, float(theta), omega_star, tuple(components))


def _infer_omega(q: int, prepared) -> complex:
    for chi, f, prim, gd, given in prepared:
        cof = q // f
        for n in sorted(given):
            m = _partner(q, f, n)
            if abs(given[n]) == 0 or m not in given or abs(given[m]) == 0:
                continue
            # c(n)/n = omega* conj(w) conj(c(m)) / sqrt(cof)
            cand = given[n] * math.sqrt(cof) * gd.omega_char / (n * given[m].conjugate())
            if abs(abs(cand) - 1.0) > 1e-8:
                raise SymmetryViolationError(
                    f"coefficient pair c({n}), c({m}) of character ({q}, {chi.label}) forces "
                    f"|omega*| = {abs(cand):.6g} != 1", character=(q, chi.label), divisor=n)
            return cand / abs(cand)
    raise InvalidComponentError(
        "omega* cannot be inferred: no complete nonzero coefficient pair; pass omega_star")


def coefficients(F: Degree1Function) -> PeriodicCoefficients:
    """The q-periodic table ``a~(n) = a(n) n^{i theta}``."""
    q = F.q
    table = np.zeros(q, complex)
    for comp in F.components:
        table += comp.periodic_table()
    # recompute one more period from the divisor formula and compare
    for n in range(q + 1, 3 * q + 1):
        direct = sum(comp.coefficient_at(n) for comp in F.components)
        if abs(direct - table[n % q]) > 1e-12 * max(1.0, abs(direct)):
            raise AssertionError(f"coefficients not {q}-periodic at n={n}")
    scale = max(1.0, float(np.max(np.abs(table))))
    n_bar = next((n for n in range(1, q + 1) if abs(table[n % q]) > 1e-12 * scale), None)
    if n_bar is None:
        raise EmptyFunctionError("coefficient table vanishes identically")
    return PeriodicCoefficients(q, tuple(complex(v) for v in table), n_bar)


def _zeta_tail(w: complex, n: int) -> complex:
    """``sum_{m > n} m^{-w}`` for large ``n`` by a three-term Euler-Maclaurin expansion."""
    ln = math.log(n)
    p = cmath.exp(-w * ln)
    return (p * n / (w - 1) - p / 2 + w * p / (12 * n)
            - w * (w + 1) * (w + 2) * p / (720 * n ** 3))


def reference_dirichlet_series(F: Degree1Function, s: complex, alpha: float | None = None,
                               n_terms: int = 1_000_000) -> EvalResult:
    """Direct partial sum of ``sum a(n) e(-n alpha) n^{-s}`` with an explicit tail bound.

    Used as an oracle for the continued evaluations.  The mean of the
    coefficients over a period (nonzero only when ``q alpha`` is an integer)
    is summed in closed form; the oscillating remainder is bounded through
    Abel summation.
    """
    s = complex(s)
    if s.real <= 1.05:
        raise DomainError(f"direct series needs Re(s) > 1.05, got {s.real}")
    alpha = 0.0 if alpha is None else float(alpha)
    q = F.q
    w = s + 1j * F.theta
    table = F.periodic.as_array()
    total = 0j
    chunk = 1 << 18
    for start in range(1, n_terms + 1, chunk):
        n = np.arange(start, min(start + chunk, n_terms + 1))
        coeff = table[n % q] * np.exp(-2j * math.pi * ((n * alpha) % 1.0))
        total += np.sum(coeff * np.exp(-w * np.log(n)))
    r = np.arange(1, q + 1)
    b = table[r % q] * np.exp(-2j * math.pi * ((r * alpha) % 1.0))
    qa = q * alpha
    if is_integer(qa):
        mean = b.mean()
        total += mean * _zeta_tail(w, n_terms)
        partial_bound = q * float(np.max(np.abs(b - mean)))
    else:
        partial_bound = float(np.sum(np.abs(table))) / abs(math.sin(math.pi * frac(qa)))
    sigma = w.real
    tail = partial_bound * n_terms ** (-sigma) * (1.0 + abs(w) / sigma)
    rounding = 16 * EPS * math.sqrt(n_terms) * float(np.max(np.abs(table))) * (1 + abs(w) * math.log(n_terms))
    return EvalResult(complex(total), tail + rounding, frozenset({"direct-sum"}))
