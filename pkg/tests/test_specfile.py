import pytest

from lineartwist import SpecParseError, SymmetryViolationError, build_function, character
from lineartwist.specfile import dumps, expand_builtin, load, loads, spec_hash

from catalog import CATALOG

MOD5 = """\
q: 5
eta: -1
omega_star: [1.0, 0.0]
components:
  - modulus: 5
    label: 1
    coefficients:
      1: [0.3, 0.2]
      5: {five}
  - modulus: 5
    label: 4
    coefficients:
      1: [0.7, 0.0]
"""


def _raw(F):
    return F.raw_components()


class TestBuiltins:
    def test_zeta(self):
        F = loads("builtin: zeta\n")
        assert (F.q, F.eta, F.theta) == (1, -1, 0.0)
        assert _raw(F) == _raw(CATALOG["zeta"])

    def test_dirichlet_l(self):
        F = loads("builtin: dirichlet-L(4,3)\n")
        assert F.q == 4 and F.eta == 0
        assert _raw(F) == _raw(CATALOG["L4"])

    def test_imprimitive_expands_to_inducer(self):
        label = next(chi.label for chi in [character(9, n) for n in (1, 2, 4, 5, 7, 8)] if chi.conductor == 3)
        spec = expand_builtin(f"dirichlet-L(9,{label})")
        assert spec["q"] == 3 and spec["components"][0]["label"] == 2

    def test_unknown_builtin(self):
        with pytest.raises(SpecParseError) as info:
            loads("builtin: dedekind\n")
        assert info.value.line == 1


class TestRoundTrip:
    @pytest.mark.parametrize("name", sorted(CATALOG))
    def test_dumps_loads(self, name):
        F = CATALOG[name]
        G = loads(dumps(F))
        assert _raw(G) == _raw(F)
        assert (G.q, G.eta, G.theta, G.omega_star) == (F.q, F.eta, F.theta, F.omega_star)
        assert (G.periodic.as_array() == F.periodic.as_array()).all()
        assert spec_hash(G) == spec_hash(F)

    def test_hash_tracks_content(self):
        assert spec_hash(CATALOG["L4"]) != spec_hash(CATALOG["theta"])

    def test_file(self, tmp_path):
        p = tmp_path / "f.spec"
        p.write_text(dumps(CATALOG["mod5"]))
        assert _raw(load(p)) == _raw(CATALOG["mod5"])

    def test_missing_file(self, tmp_path):
        with pytest.raises(SpecParseError):
            load(tmp_path / "absent.spec")


class TestErrors:
    def test_malformed_coefficient_names_component_and_position(self):
        with pytest.raises(SpecParseError) as info:
            loads(MOD5.format(five='"oops"'))
        assert "component (5, 1)" in str(info.value)
        assert (info.value.line, info.value.column) == (9, 10)

    def test_unknown_field(self):
        with pytest.raises(SpecParseError) as info:
            loads("q: 1\neta: -1\ncolour: red\ncomponents: []\n")
        assert "colour" in str(info.value) and info.value.line == 3

    def test_yaml_syntax(self):
        with pytest.raises(SpecParseError) as info:
            loads("q: [1\n")
        assert info.value.line is not None

    def test_broken_symmetry_is_a_build_error(self):
        text = MOD5.format(five="[0.0, 0.0]").replace("[0.7, 0.0]", "[0.5, 0.5]")
        with pytest.raises(SymmetryViolationError):
            loads(text)

    def test_modulus_mismatch(self):
        with pytest.raises(SpecParseError):
            loads("q: 4\neta: 0\ncomponents:\n  - {modulus: 3, label: 2, coefficients: {1: 1}}\n")

    def test_omega_optional(self):
        F = build_function(2, -1, 0.0, {1: {1: 1}}, omega_star=1)
        text = dumps(F).split("omega_star")[0] + "components" + dumps(F).split("components")[1]
        assert "omega_star" not in text
        assert abs(loads(text).omega_star - 1) < 1e-14
