"""Independent oracles: brute force and arbitrary precision (mpmath).

Nothing here calls into the package's numerical kernels.
"""

from __future__ import annotations

import cmath
import itertools
import math
from functools import lru_cache

import mpmath as mp

DPS = 30


def units(q: int) -> list[int]:
    return [n for n in range(1, q + 1) if math.gcd(n, q) == 1]


def carmichael(q: int) -> int:
    us = units(q)
    lam = 1
    for u in us:
        k, x = 1, u % q
        while x != 1 % q:
            x, k = x * u % q, k + 1
        lam = lam * k // math.gcd(lam, k)
    return lam


@lru_cache(maxsize=None)
def brute_characters(q: int) -> tuple[tuple[complex, ...], ...]:
    """All characters mod q as value vectors on 1..q, by brute-force homomorphism search."""
    us = units(q)
    if q == 1:
        return ((1.0 + 0j,),)
    lam = carmichael(q)
    gens: list[int] = []
    span = {1 % q}
    for u in us:
        if u not in span:
            gens.append(u)
            span = _closure(span | {u}, q)
    found = []
    for expos in itertools.product(range(lam), repeat=len(gens)):
        table = {1 % q: 0}
        ok = True
        frontier = [1 % q]
        while frontier and ok:
            nxt = []
            for x in frontier:
                for g, k in zip(gens, expos):
                    y, v = x * g % q, (table[x] + k) % lam
                    if y in table:
                        ok = ok and table[y] == v
                    else:
                        table[y] = v
                        nxt.append(y)
            frontier = nxt
        if ok:
            found.append(tuple(cmath.exp(2j * math.pi * table[n % q] / lam) if n % q in table else 0j
                               for n in range(1, q + 1)))
    return tuple(found)


def _closure(elems: set, q: int) -> set:
    out = set(elems)
    while True:
        new = {a * b % q for a in out for b in out} - out
        if not new:
            return out
        out |= new


def brute_gauss_sum(values, q: int) -> complex:
    return sum(values[n - 1] * cmath.exp(2j * math.pi * n / q) for n in range(1, q + 1))


def brute_conductor(values, q: int) -> int:
    for f in sorted(d for d in range(1, q + 1) if q % d == 0):
        ok = all(abs(values[a - 1] - values[b - 1]) < 1e-12
                 for a in units(q) for b in units(q) if (a - b) % f == 0)
        if ok:
            return f
    return q


def lerch(s: complex, x: float, y: float) -> complex:
    """sum_{n > -{y}} e(n{x}) (n+{y})^{-s}, the sum starting at n=1 when {y}=0."""
    with mp.workdps(DPS):
        fx, fy = mp.mpf(x) % 1, mp.mpf(y) % 1
        z = mp.expjpi(2 * fx)
        if fy == 0:
            if fx == 0:
                return complex(mp.zeta(s))
            return complex(z * mp.lerchphi(z, s, 1))
        if fx == 0:
            return complex(mp.zeta(s, fy))
        return complex(mp.lerchphi(z, s, fy))


def hurwitz(s: complex, a: float) -> complex:
    with mp.workdps(DPS):
        return complex(mp.zeta(s, a))


def zeta(s: complex) -> complex:
    with mp.workdps(DPS):
        return complex(mp.zeta(s))


def dirichlet_l(s: complex, values) -> complex:
    with mp.workdps(DPS):
        return complex(mp.dirichlet(s, list(values)))


def periodic_table(F) -> list[complex]:
    """ã(0..q-1) by Dirichlet convolution of the components, done independently."""
    q = F.q
    out = [0j] * q
    for comp in F.components:
        chi = comp.primitive
        f = comp.conductor
        for n in range(q):
            acc = 0j
            for d, c in comp.coefficients.items():
                if n % d == 0:
                    m = n // d
                    if math.gcd(m % f, f) == 1 or f == 1:
                        acc += c * chi(m)
            out[n] += acc
    return out


def _alpha(q: int, alpha: float):
    """alpha at working precision; q alpha within 1e-12 of an integer is taken as exactly rational."""
    qa = q * alpha
    if abs(qa - round(qa)) < 1e-12:
        return mp.mpf(round(qa)) / q
    return mp.mpf(alpha)


def twisted_series(F, s: complex, alpha: float) -> complex:
    """F(s, alpha) from mpmath Lerch transcendents, one per residue class mod q."""
    q, table = F.q, periodic_table(F)
    with mp.workdps(DPS):
        alpha = _alpha(q, alpha)
        w = mp.mpc(s) + 1j * mp.mpf(F.theta)
        z = mp.expjpi(-2 * q * alpha)
        total = mp.mpc(0)
        for r in range(1, q + 1):
            a = table[r % q]
            if a == 0:
                continue
            inner = mp.zeta(w, mp.mpf(r) / q) if abs(z - 1) < mp.mpf(10) ** -20 else mp.lerchphi(z, w, mp.mpf(r) / q)
            total += a * mp.expjpi(-2 * r * alpha) * inner
        return complex(total * mp.power(q, -w))


def shifted_series(F, w: complex, beta: float) -> complex:
    """sum over integers n with n+beta > 0 of ã(n) (n+beta)^{-w}."""
    q, table = F.q, periodic_table(F)
    with mp.workdps(DPS):
        b = mp.mpf(beta)
        n0 = int(mp.floor(-b)) + 1
        total = mp.mpc(0)
        for n in range(n0, n0 + q):
            a = table[n % q]
            if a:
                total += a * mp.zeta(w, (n + b) / q)
        return complex(total * mp.power(q, -mp.mpc(w)))


def direct_sum(F, s: complex, alpha: float, n_terms: int = 20000) -> complex:
    """Partial sum plus a mpmath tail; a brute-force check of the decomposition algebra."""
    q, table = F.q, periodic_table(F)
    w = s + 1j * F.theta
    head = sum(table[n % q] * cmath.exp(-2j * math.pi * n * alpha) * n ** (-w) for n in range(1, n_terms + 1))
    with mp.workdps(DPS):
        alpha = _alpha(q, alpha)
        z = mp.expjpi(-2 * q * alpha)
        tail = mp.mpc(0)
        for r in range(1, q + 1):
            a = table[r % q]
            if not a:
                continue
            m0 = max(0, -(-(n_terms + 1 - r) // q))
            start = r + q * m0  # first n > n_terms in the class of r
            shift = mp.mpf(r) / q + m0
            inner = mp.zeta(w, shift) if abs(z - 1) < mp.mpf(10) ** -20 else mp.lerchphi(z, w, shift)
            tail += a * mp.expjpi(-2 * alpha * start) * inner
        tail *= mp.power(q, -mp.mpc(w))
    return head + complex(tail)


def classical_zeta_fe_rhs(s: complex) -> complex:
    with mp.workdps(DPS):
        s = mp.mpc(s)
        return complex(mp.gamma(s) * mp.power(2 * mp.pi, -s) * 2 * mp.cos(mp.pi * s / 2) * mp.zeta(s))


def zeta_zero_count(T: float) -> int:
    """Two-sided count of zeta zeros with |gamma| <= T."""
    with mp.workdps(15):
        return 2 * int(mp.nzeros(T))


def contour_residue(f, center: complex, radius: float = 1e-3, points: int = 256) -> complex:
    total = 0j
    for k in range(points):
        u = cmath.exp(2j * math.pi * k / points)
        total += f(center + radius * u) * radius * u
    return total / points
