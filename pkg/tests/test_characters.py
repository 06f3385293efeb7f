import cmath
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lineartwist import (InvalidModulusError, InvalidParityError, RequiresPrimitiveError,
                         UnknownCharacterError, character, characters_mod, conductor_and_primitive,
                         gauss_sum, omega_char, parity_class)
from lineartwist.characters import character_table, euler_phi

import oracles

CHI4 = character(4, 3)
CHI3 = character(3, 2)


def _vec(chi):
    return tuple(chi(n) for n in range(1, chi.modulus + 1))


def _same_vectors(ours, theirs, tol=1e-12):
    if len(ours) != len(theirs):
        return False
    pool = list(theirs)
    for v in ours:
        hit = next((w for w in pool if all(abs(a - b) < tol for a, b in zip(v, w))), None)
        if hit is None:
            return False
        pool.remove(hit)
    return True


class TestEnumeration:
    def test_modulus_one(self):
        chars = characters_mod(1)
        assert len(chars) == 1
        assert all(chars[0](n) == 1 for n in range(-5, 6))

    def test_modulus_four(self):
        chars = characters_mod(4)
        assert len(chars) == 2
        assert chars[0].is_principal
        assert chars[1](3) == -1 and chars[1] == CHI4

    def test_modulus_five_orders(self):
        assert sorted(chi.order for chi in characters_mod(5)) == [1, 2, 4, 4]

    @pytest.mark.parametrize("q", range(1, 31))
    def test_matches_brute_force_homomorphisms(self, q):
        ours = [_vec(chi) for chi in characters_mod(q)]
        assert len(ours) == euler_phi(q)
        assert _same_vectors(ours, oracles.brute_characters(q))

    def test_labels_are_reproducible(self):
        assert [chi.label for chi in characters_mod(15)] == [1, 2, 4, 7, 8, 11, 13, 14]

    def test_invalid_modulus(self):
        for q in (0, -3, 2.5):
            with pytest.raises(InvalidModulusError):
                characters_mod(q)

    def test_unknown_label(self):
        with pytest.raises(UnknownCharacterError):
            character(4, 2)


class TestValues:
    @given(st.integers(1, 30), st.integers(-200, 200), st.integers(-200, 200))
    def test_homomorphism_and_periodicity(self, q, m, n):
        for chi in characters_mod(q):
            assert chi(1) == 1
            assert (chi(n) == 0) == (math.gcd(n, q) > 1)
            assert chi(n + q) == chi(n)
            if math.gcd(m * n, q) == 1:
                assert abs(chi(m * n) - chi(m) * chi(n)) < 1e-12

    @pytest.mark.parametrize("q", [5, 8, 12, 16, 21, 24, 27])
    def test_values_are_roots_of_unity_of_exponent_order(self, q):
        lam = oracles.carmichael(q)
        for chi in characters_mod(q):
            for n in oracles.units(q):
                assert abs(chi(n) ** lam - 1) < 1e-12

    def test_non_integer_argument_is_zero(self):
        assert CHI4(1.5) == 0
        assert CHI4(3.0) == -1

    @pytest.mark.parametrize("q", range(1, 31))
    def test_orthogonality(self, q):
        chars = characters_mod(q)
        for a in chars:
            for b in chars:
                s = sum(a(n) * b(n).conjugate() for n in range(1, q + 1))
                assert abs(s - (euler_phi(q) if a == b else 0)) < 1e-12


class TestParity:
    def test_mod_four_odd(self):
        assert parity_class(4, 0) == [CHI4]

    def test_mod_one(self):
        assert parity_class(1, -1) == [character(1, 1)]
        assert parity_class(1, 0) == []

    def test_mod_five_even(self):
        even = parity_class(5, -1)
        assert len(even) == 2
        assert all(chi(4) == 1 for chi in even)

    def test_bad_eta(self):
        with pytest.raises(InvalidParityError):
            parity_class(5, 1)


class TestConductor:
    def test_principal_mod_four(self):
        f, prim = conductor_and_primitive(character(4, 1))
        assert f == 1 and prim == character(1, 1)

    def test_odd_mod_four_is_primitive(self):
        assert conductor_and_primitive(CHI4) == (4, CHI4)

    def test_lift_from_three_to_nine(self):
        lifted = [chi for chi in characters_mod(9) if chi.conductor == 3]
        assert len(lifted) == 1
        assert conductor_and_primitive(lifted[0]) == (3, CHI3)

    @pytest.mark.parametrize("q", range(1, 41))
    def test_against_brute_force_and_idempotent(self, q):
        for chi in characters_mod(q):
            f, prim = conductor_and_primitive(chi)
            assert f == oracles.brute_conductor(_vec(chi), q)
            assert prim.is_primitive and prim.modulus == f
            assert conductor_and_primitive(prim) == (f, prim)
            for n in oracles.units(q):
                assert abs(prim(n) - chi(n)) < 1e-12


class TestGaussSums:
    def test_examples(self):
        assert gauss_sum(character(1, 1)) == 1
        assert abs(gauss_sum(CHI4) - 2j) < 1e-15
        assert abs(gauss_sum(CHI3) - 1j * math.sqrt(3)) < 1e-15

    def test_omega_examples(self):
        g = omega_char(character(1, 1))
        assert g.omega_char == 1 and g.frak_a == 0
        assert abs(omega_char(CHI4).omega_char - 1) < 1e-15
        assert abs(omega_char(CHI3).omega_char - 1) < 1e-15

    def test_omega_requires_primitive(self):
        with pytest.raises(RequiresPrimitiveError):
            omega_char(character(4, 1))

    @pytest.mark.parametrize("q", range(1, 51))
    def test_primitive_identities(self, q):
        for chi in characters_mod(q):
            tau = gauss_sum(chi)
            assert abs(tau - oracles.brute_gauss_sum(_vec(chi), q)) < 1e-11
            if not chi.is_primitive:
                continue
            assert abs(abs(tau) ** 2 - q) < 1e-10
            assert abs(tau * gauss_sum(chi.conjugate()) - chi(-1) * q) < 1e-10
            g = omega_char(chi)
            assert abs(abs(g.omega_char) - 1) < 1e-12
            assert abs(g.omega_char - tau / (1j ** g.frak_a * math.sqrt(q))) < 1e-14


class TestTable:
    def test_rows(self):
        rows = character_table(4)
        assert [r["label"] for r in rows] == [1, 3]
        assert rows[1]["parity"] == -1 and rows[1]["primitive"]
        assert cmath.isclose(complex(rows[1]["gauss_re"], rows[1]["gauss_im"]), 2j)
