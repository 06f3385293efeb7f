"""Function-spec files.

A spec is a YAML document, either a builtin::

    builtin: dirichlet-L(4,3)

or explicit data::

    q: 2
    eta: -1
    theta: 0.0
    omega_star: [1.0, 0.0]        # optional, inferred when absent
    components:
      - modulus: 2
        label: 1
        coefficients:
          1: [1.0, 0.0]             # divisor: [re, im]

Builtins ``zeta`` and ``dirichlet-L(q,label)`` expand to explicit data
before building; ``dirichlet-L`` of an imprimitive character expands to the
L-function of its primitive inducer.
"""

from __future__ import annotations

import hashlib
import re
from pathlib import Path

import yaml

from .characters import character, conductor_and_primitive
from .degree1 import Degree1Function, build_function
from .errors import LinearTwistError, SpecParseError, UnknownCharacterError

_BUILTIN_L = re.compile(r"^dirichlet-L\(\s*(\d+)\s*,\s*(\d+)\s*\)$")
_TOP_KEYS = {"builtin", "q", "eta", "theta", "omega_star", "components"}


def expand_builtin(name: str) -> dict:
    name = name.strip()
    if name == "zeta":
        return {"q": 1, "eta": -1, "theta": 0.0,
                "components": [{"modulus": 1, "label": 1, "coefficients": {1: [1.0, 0.0]}}]}
    m = _BUILTIN_L.match(name)
    if m:
        q, label = int(m.group(1)), int(m.group(2))
        try:
            chi = character(q, label)
        except (UnknownCharacterError, LinearTwistError) as exc:
            raise SpecParseError(f"builtin {name!r}: {exc}") from exc
        f, prim = conductor_and_primitive(chi)
        return {"q": f, "eta": -1 if prim.parity == 1 else 0, "theta": 0.0,
                "components": [{"modulus": f, "label": prim.label, "coefficients": {1: [1.0, 0.0]}}]}
    raise SpecParseError(f"unknown builtin {name!r}")


def _mark(node):
    m = node.start_mark
    return m.line + 1, m.column + 1


def _find(node, key):
    """Child node of a mapping node for ``key`` (or the node itself when absent)."""
    if isinstance(node, yaml.MappingNode):
        for k, v in node.value:
            if k.value == str(key):
                return v
    return node


def _fail(msg: str, node) -> SpecParseError:
    line, col = _mark(node)
    return SpecParseError(msg, line, col)


def _complex(value, node, where: str) -> complex:
    if isinstance(value, bool):
        raise _fail(f"{where}: expected [re, im] or a number, got {value!r}", node)
    if isinstance(value, (int, float)):
        return complex(float(value), 0.0)
    if (isinstance(value, list) and len(value) == 2
            and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)):
        return complex(float(value[0]), float(value[1]))
    raise _fail(f"{where}: expected [re, im] pair of numbers, got {value!r}", node)


def loads(text: str, source: str = "<string>") -> Degree1Function:
    """Parse spec text and build the function."""
    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
        data = yaml.safe_load(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        raise SpecParseError(f"{source}: {exc.problem or exc}",
                             mark.line + 1 if mark else None, mark.column + 1 if mark else None) from exc
    if not isinstance(data, dict):
        node = root if root is not None else yaml.ScalarNode("tag:yaml.org,2002:null", "")
        if root is None:
            raise SpecParseError(f"{source}: empty spec", 1, 1)
        raise _fail(f"{source}: top level must be a mapping", node)
    unknown = set(data) - _TOP_KEYS
    if unknown:
        key = sorted(map(str, unknown))[0]
        raise _fail(f"{source}: unknown field {key!r}", _find(root, key))
    if "builtin" in data:
        if set(data) != {"builtin"}:
            raise _fail(f"{source}: 'builtin' cannot be combined with other fields", root)
        if not isinstance(data["builtin"], str):
            raise _fail(f"{source}: builtin must be a string", _find(root, "builtin"))
        try:
            spec = expand_builtin(data["builtin"])
        except SpecParseError as exc:
            raise _fail(f"{source}: {exc}", _find(root, "builtin")) from None
        return from_dict(spec)
    return _from_nodes(data, root, source)


def _from_nodes(data: dict, root, source: str) -> Degree1Function:
    for key in ("q", "eta", "components"):
        if key not in data:
            raise _fail(f"{source}: missing field {key!r}", root)
    q, eta = data["q"], data["eta"]
    if not isinstance(q, int) or isinstance(q, bool):
        raise _fail(f"{source}: q must be an integer", _find(root, "q"))
    if not isinstance(eta, int) or isinstance(eta, bool):
        raise _fail(f"{source}: eta must be an integer", _find(root, "eta"))
    theta = data.get("theta", 0.0)
    if not isinstance(theta, (int, float)) or isinstance(theta, bool):
        raise _fail(f"{source}: theta must be a real number", _find(root, "theta"))
    omega = None
    if data.get("omega_star") is not None:
        omega = _complex(data["omega_star"], _find(root, "omega_star"), "omega_star")
    comps_node = _find(root, "components")
    comps = data["components"]
    if not isinstance(comps, list):
        raise _fail(f"{source}: components must be a list", comps_node)
    raw: dict[int, dict[int, complex]] = {}
    for i, block in enumerate(comps):
        bnode = comps_node.value[i]
        where = f"component #{i + 1}"
        if not isinstance(block, dict):
            raise _fail(f"{where}: expected a mapping", bnode)
        if "modulus" in block:
            where = f"component ({block.get('modulus')}, {block.get('label')})"
        for key in ("modulus", "label", "coefficients"):
            if key not in block:
                raise _fail(f"{where}: missing field {key!r}", bnode)
        if block["modulus"] != q:
            raise _fail(f"{where}: modulus must equal q = {q}", _find(bnode, "modulus"))
        label = block["label"]
        if not isinstance(label, int) or isinstance(label, bool):
            raise _fail(f"{where}: label must be an integer", _find(bnode, "label"))
        coeffs = block["coefficients"]
        cnode = _find(bnode, "coefficients")
        if not isinstance(coeffs, dict):
            raise _fail(f"{where}: coefficients must map divisor -> [re, im]", cnode)
        entry: dict[int, complex] = {}
        for (knode, vnode), (d, c) in zip(cnode.value, coeffs.items()):
            if not isinstance(d, int) or isinstance(d, bool):
                raise _fail(f"{where}: divisor {d!r} is not an integer", knode)
            entry[d] = _complex(c, vnode, f"{where}, divisor {d}")
        if label in raw:
            raise _fail(f"{where}: duplicate component", bnode)
        raw[label] = entry
    return build_function(q, eta, float(theta), raw, omega_star=omega)


def from_dict(spec: dict) -> Degree1Function:
    return loads(yaml.safe_dump(spec, sort_keys=False))


def load(path) -> Degree1Function:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SpecParseError(f"cannot read {path}: {exc.strerror}") from exc
    return loads(text, str(path))


parse_spec = load


def to_dict(F: Degree1Function) -> dict:
    comps = []
    for comp in F.components:
        coeffs = {int(n): [float(c.real), float(c.imag)] for n, c in sorted(comp.coefficients.items())}
        comps.append({"modulus": F.q, "label": comp.label, "coefficients": coeffs})
    return {"q": F.q, "eta": F.eta, "theta": float(F.theta),
            "omega_star": [float(F.omega_star.real), float(F.omega_star.imag)],
            "components": comps}


def dumps(F: Degree1Function) -> str:
    return yaml.safe_dump(to_dict(F), sort_keys=False, default_flow_style=None)


def spec_hash(F: Degree1Function) -> str:
    return hashlib.sha256(dumps(F).encode()).hexdigest()[:16]
