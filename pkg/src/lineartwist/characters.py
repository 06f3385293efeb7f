"""Dirichlet characters with exact root-of-unity values.

Labelling follows Conrey: the character ``chi_q(m, .)`` for a unit ``m`` mod
``q`` is the product over prime powers ``p^e || q`` of

* ``e(ind_g(m) ind_g(n) / phi(p^e))`` for odd ``p``, with ``g`` the least
  primitive root mod ``p^e``;
* for ``p = 2``: trivial for ``e = 1``; ``e((1 - m)(1 - n)/8)`` restricted to
  ``+-1`` for ``e = 2``; and for ``e >= 3``, writing ``n = eps_n 5^{b_n}``,
  ``e((1 - eps_m)(1 - eps_n)/8 + b_m b_n / 2^{e-2})``.

Label 1 is the principal character and labels are enumerated in increasing
order, so ``characters_mod(q)`` is reproducible.  Values are stored as
exponents in ``Q/Z`` (``Fraction`` in ``[0, 1)``) and materialised on demand.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from numbers import Integral

from .errors import (InvalidModulusError, InvalidParityError, RequiresPrimitiveError,
                     UnknownCharacterError)


def factorize(n: int) -> dict[int, int]:
    """Trial division; moduli here are small."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int) -> int:
    result = n
    for p in factorize(n):
        result -= result // p
    return result


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _primitive_root(pe: int, p: int) -> int:
    order = euler_phi(pe)
    prime_factors = list(factorize(order))
    for g in range(2, pe):
        if math.gcd(g, pe) != 1:
            continue
        if all(pow(g, order // r, pe) != 1 for r in prime_factors):
            return g
    raise InvalidModulusError(f"no primitive root mod {pe}")


@lru_cache(maxsize=None)
def _local_log_table(p: int, e: int):
    """Exponent map n -> tuple of discrete logs for units mod p^e.

    Returns ``(table, orders)`` where ``table[n]`` is a tuple of exponents
    with respect to the documented generators and ``orders`` their orders.
    """
    pe = p ** e
    if p != 2:
        g = _primitive_root(pe, p)
        order = euler_phi(pe)
        table = {}
        x = 1
        for k in range(order):
            table[x] = (k,)
            x = x * g % pe
        return table, (order,)
    if e == 1:
        return {1: ()}, ()
    if e == 2:
        return {1: (0,), 3: (1,)}, (2,)
    table = {}
    order5 = 2 ** (e - 2)
    x = 1
    for b in range(order5):
        table[x] = (0, b)
        table[(-x) % pe] = (1, b)
        x = x * 5 % pe
    return table, (2, order5)


def _local_pairing(p: int, e: int, m: int, n: int) -> Fraction:
    """Exponent of chi_{p^e}(m, n) in Q/Z (both units)."""
    table, orders = _local_log_table(p, e)
    em, en = table[m % p ** e], table[n % p ** e]
    if p != 2:
        return Fraction(em[0] * en[0], orders[0]) % 1
    if e == 1:
        return Fraction(0)
    if e == 2:
        return Fraction(em[0] * en[0], 2) % 1
    return (Fraction(em[0] * en[0], 2) + Fraction(em[1] * en[1], orders[1])) % 1


@dataclass(frozen=True)
class DirichletCharacter:
    """A Dirichlet character mod ``modulus`` in Conrey labelling.

    ``exponents[n]`` is ``None`` when ``gcd(n, modulus) > 1`` and otherwise the
    Fraction ``k`` with ``chi(n) = e(k)``.
    """

    modulus: int
    label: int
    exponents: tuple
    conductor: int = field(compare=False)
    parity: int = field(compare=False)

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    @property
    def is_principal(self) -> bool:
        return self.label % self.modulus == 1 % self.modulus

    @property
    def key(self) -> tuple[int, int]:
        return (self.modulus, self.label)

    @property
    def frak_a(self) -> int:
        """Parity exponent: 0 for even characters, 1 for odd ones."""
        return 0 if self.parity == 1 else 1

    @property
    def order(self) -> int:
        return math.lcm(*(x.denominator for x in self.exponents if x is not None))

    def exponent(self, n) -> Fraction | None:
        if not isinstance(n, Integral):
            if float(n) != math.floor(n):
                return None
            n = int(n)
        return self.exponents[n % self.modulus]

    def __call__(self, n) -> complex:
        """Value at ``n``; zero at non-units and at non-integers."""
        k = self.exponent(n)
        if k is None:
            return 0j
        return root_of_unity(k)

    def values(self) -> list[complex]:
        return [self(n) for n in range(self.modulus)]

    def conjugate(self) -> "DirichletCharacter":
        return character(self.modulus, pow(self.label, -1, self.modulus) if self.modulus > 1 else 1)

    def __repr__(self) -> str:
        return f"DirichletCharacter(q={self.modulus}, label={self.label})"


def root_of_unity(k: Fraction) -> complex:
    """``e(k)`` with exact values at multiples of 1/4."""
    k = k % 1
    exact = {Fraction(0): 1 + 0j, Fraction(1, 4): 1j, Fraction(1, 2): -1 + 0j, Fraction(3, 4): -1j}
    if k in exact:
        return exact[k]
    return cmath.exp(2j * math.pi * float(k))


def _check_modulus(q) -> int:
    if not isinstance(q, Integral) or q < 1:
        raise InvalidModulusError(f"modulus must be a positive integer, got {q!r}")
    return int(q)


@lru_cache(maxsize=None)
def character(q: int, label: int) -> DirichletCharacter:
    """The Conrey character ``chi_q(label, .)``."""
    q = _check_modulus(q)
    if q == 1:
        if label % 1 != 0:
            raise UnknownCharacterError((q, label))
        return DirichletCharacter(1, 1, (Fraction(0),), 1, 1)
    if math.gcd(label, q) != 1:
        raise UnknownCharacterError(f"label {label} is not a unit mod {q}")
    label %= q
    fac = factorize(q)
    exps = []
    for n in range(q):
        if math.gcd(n, q) != 1:
            exps.append(None)
            continue
        k = Fraction(0)
        for p, e in fac.items():
            k += _local_pairing(p, e, label, n)
        exps.append(k % 1)
    exps = tuple(exps)
    parity = 1 if exps[q - 1] == 0 else -1
    conductor = _conductor(q, exps)
    return DirichletCharacter(q, label, exps, conductor, parity)


def _conductor(q: int, exps: tuple) -> int:
    for f in divisors(q):
        if all(exps[n] == 0 for n in range(q) if exps[n] is not None and n % f == 1 % f):
            return f
    return q


def characters_mod(q: int) -> list[DirichletCharacter]:
    """All characters mod ``q`` ordered by Conrey label (principal first)."""
    q = _check_modulus(q)
    if q == 1:
        return [character(1, 1)]
    return [character(q, m) for m in range(1, q) if math.gcd(m, q) == 1]


def parity_class(q: int, eta: int) -> list[DirichletCharacter]:
    """Even characters for ``eta = -1``, odd ones for ``eta = 0``."""
    if eta not in (-1, 0):
        raise InvalidParityError(f"eta must be -1 or 0, got {eta!r}")
    want = 1 if eta == -1 else -1
    return [chi for chi in characters_mod(q) if chi.parity == want]


def conductor_and_primitive(chi: DirichletCharacter) -> tuple[int, DirichletCharacter]:
    """Conductor ``f`` and the primitive character mod ``f`` inducing ``chi``."""
    f = chi.conductor
    if f == chi.modulus:
        return f, chi
    q = chi.modulus
    # chi*(n) = chi(n') for any unit n' = n mod f; lift by stepping through n + k f
    target = []
    for n in range(f):
        if math.gcd(n, f) != 1:
            target.append(None)
            continue
        lift = next(n + k * f for k in range(q) if math.gcd(n + k * f, q) == 1)
        target.append(chi.exponents[lift % q])
    target = tuple(target)
    for cand in characters_mod(f):
        if cand.exponents == target:
            return f, cand
    raise AssertionError("no primitive inducer found")  # unreachable for valid characters


def gauss_sum(chi: DirichletCharacter) -> complex:
    """``tau_chi = sum_{a mod q} chi(a) e(a/q)``."""
    q = chi.modulus
    total = 0j
    for a in range(q):
        k = chi.exponents[a]
        if k is None:
            continue
        total += root_of_unity(k + Fraction(a, q))
    return total


@dataclass(frozen=True)
class GaussData:
    tau: complex
    omega_char: complex
    frak_a: int


def omega_char(chi: DirichletCharacter) -> GaussData:
    """Gauss sum, parity exponent and normalised root factor of a primitive character."""
    if not chi.is_primitive:
        raise RequiresPrimitiveError(f"{chi!r} is not primitive (conductor {chi.conductor})")
    tau = gauss_sum(chi)
    a = chi.frak_a
    omega = tau / ((1j ** a) * math.sqrt(chi.conductor))
    if abs(abs(omega) - 1.0) > 1e-12:
        raise AssertionError(f"|omega| = {abs(omega)} for {chi!r}")
    return GaussData(tau, omega, a)


def character_table(q: int) -> list[dict]:
    """Rows for the ``characters list`` command."""
    rows = []
    for chi in characters_mod(q):
        tau = gauss_sum(chi)
        rows.append({
            "modulus": q,
            "label": chi.label,
            "order": chi.order,
            "parity": chi.parity,
            "conductor": chi.conductor,
            "primitive": chi.is_primitive,
            "gauss_re": tau.real,
            "gauss_im": tau.imag,
        })
    return rows
