"""Test catalog of degree-1 functions and twist parameters."""

import math

from lineartwist import build_function

ALPHAS = (1.0, 0.5, 1.0 / 3.0, 0.4, 1.0 / math.sqrt(2.0))
ALPHA_IDS = ("1", "1/2", "1/3", "2/5", "1/sqrt2")


def make_catalog():
    return {
        "zeta": build_function(1, -1, 0.0, {1: {1: 1}}),
        "L4": build_function(4, 0, 0.0, {3: {1: 1}}),
        "L3": build_function(3, 0, 0.0, {2: {1: 1}}),
        # trivial character mod 2 with a length-2 polynomial: c(1)=1, c(2)=sqrt(2)
        "q2": build_function(2, -1, 0.0, {1: {1: 1}}, omega_star=1),
        # even function mod 5: principal plus quadratic character
        "mod5": build_function(5, -1, 0.0, {1: {1: 0.3 + 0.2j}, 4: {1: 0.7}}, omega_star=1),
        "theta": build_function(4, 0, 0.7, {3: {1: 1}}),
    }


CATALOG = make_catalog()
INSTANCES = [(name, a, aid) for name in CATALOG for a, aid in zip(ALPHAS, ALPHA_IDS)]
INSTANCE_IDS = [f"{name}-{aid}" for name, _, aid in INSTANCES]


def random_admissible(rng, q: int, eta: int):
    """A random admissible function mod q: half of each coefficient vector drawn, the rest completed."""
    import cmath

    from lineartwist.characters import conductor_and_primitive, divisors, omega_char, parity_class

    chars = parity_class(q, eta)
    if not chars:
        return None
    omega = cmath.exp(2j * math.pi * rng.uniform())
    picks = [chi for chi in chars if rng.uniform() < 0.7] or [chars[0]]
    raw = {}
    for chi in picks:
        f, prim = conductor_and_primitive(chi)
        cof = q // f
        kappa = omega * omega_char(prim).omega_char.conjugate() / math.sqrt(cof)
        coeffs = {}
        for n in divisors(cof):
            m = cof // n
            if n < m:
                coeffs[n] = complex(*rng.normal(size=2))
            elif n == m:
                coeffs[n] = cmath.sqrt(n * kappa) * rng.normal()
        raw[chi.label] = coeffs
    return build_function(q, eta, float(rng.uniform(-1, 1)), raw, omega_star=omega)
