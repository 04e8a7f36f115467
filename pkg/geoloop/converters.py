# coding=utf-8
# 浮点数按 17 位有效数字输出，解析后再序列化得到相同文本

import json
import math
import numbers

from .const import JSON_DIGITS, SPECIES, SPECIES_G
from .exceptions import ParseException, ValidityException
from .invariants import SurfaceTuple, LATTICE, SIGN, WINDING
from .manifold import get_manifold, manifold_kinds
from .words import Word
from .group import as_element

_FLOAT_FORMAT = "%.{}g".format(JSON_DIGITS)

_MANIFOLD_KEYS = {
    "euclidean": ("dim",),
    "sphere": ("dim", "radius"),
    "flat_torus": ("dim",),
    "hyperbolic_disk": ("dim",),
    "projective_plane": ("dim", "radius"),
    "chart": ("dim", "metric", "rho_u"),
}

_REQUIRED_KEYS = {
    "euclidean": ("dim",),
    "flat_torus": ("dim",),
}


def _encode(value):
    if isinstance(value, bool) or value is None:
        return json.dumps(value)
    if isinstance(value, numbers.Integral):
        return str(int(value))
    if isinstance(value, numbers.Real):
        return _FLOAT_FORMAT % float(value)
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, dict):
        return "{" + ", ".join("{}: {}".format(json.dumps(str(k)), _encode(v)) for k, v in value.items()) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_encode(v) for v in value) + "]"
    if hasattr(value, "tolist"):
        return _encode(value.tolist())
    raise ValidityException("RepresentationException", "cannot serialize {!r}".format(value))


def dumps(value):
    return _encode(value)


def load_json(text, source="<input>"):
    try:
        return json.loads(text)
    except ValueError as e:
        raise ParseException("ParseException", "{}: {}".format(source, e))


def read_json_file(path):
    try:
        with open(path) as f:
            text = f.read()
    except (IOError, OSError) as e:
        raise ParseException("FileException", "cannot read {}: {}".format(path, e))
    return load_json(text, path)


def _require(data, key, kind, source):
    if not isinstance(data, dict) or key not in data:
        raise ParseException("ParseException", "{}: missing field {!r}".format(source, key))
    value = data[key]
    if not isinstance(value, kind) or (kind is numbers.Real and not _finite(value)):
        raise ParseException("ParseException", "{}: field {!r} has the wrong type".format(source, key))
    return value


def _finite(value):
    return not isinstance(value, bool) and math.isfinite(value)


def _coords(value, source):
    if not isinstance(value, list) or not all(
            isinstance(c, numbers.Real) and _finite(c) for c in value):
        raise ParseException("ParseException", "{}: {!r} is not a coordinate list".format(source, value))
    return [float(c) for c in value]


def manifold_to_json(m):
    data = {"kind": m.kind}
    for key in _MANIFOLD_KEYS[m.kind]:
        value = getattr(m, key)
        if key == "metric":
            if value.name == "callback":
                raise ValidityException("RepresentationException", "a callback metric cannot be serialized")
            value = value.name
        data[key] = value
    data["eps_eq"] = m.eps_eq
    return data


def parse_manifold(data, eps_eq=None, source="<manifold>"):
    """
    :param eps_eq: overrides the file's eps_eq when given
    """
    kind = _require(data, "kind", str, source)
    if kind not in manifold_kinds():
        raise ParseException("ParseException", "{}: unknown manifold kind {!r}, available: {}".format(
            source, kind, manifold_kinds()))
    unknown = set(data) - set(_MANIFOLD_KEYS[kind]) - {"kind", "eps_eq"}
    if unknown:
        raise ParseException("ParseException", "{}: unknown fields {}".format(source, sorted(unknown)))

    kwargs = {}
    for key in _MANIFOLD_KEYS[kind]:
        if key in data or key in _REQUIRED_KEYS.get(kind, ()):
            kwargs[key] = _require(data, key, str if key == "metric" else numbers.Real, source)
    if eps_eq is None and "eps_eq" in data:
        eps_eq = _require(data, "eps_eq", numbers.Real, source)
    try:
        return get_manifold(kind, eps_eq=eps_eq, **kwargs)
    except (TypeError, ValueError) as e:
        raise ParseException("ParseException", "{}: bad {} parameters {}: {}".format(source, kind, kwargs, e))


def word_to_json(w):
    data = {"species": w.species}
    if w.basepoint is not None:
        data["basepoint"] = w.basepoint
    data["points"] = list(w.points)
    return data


def parse_word(m, data, source="<word>"):
    species = data.get("species", SPECIES_G) if isinstance(data, dict) else None
    if species not in SPECIES:
        raise ParseException("ParseException", "{}: species should be one of {}".format(source, SPECIES))
    points = [_coords(p, source) for p in _require(data, "points", list, source)]
    basepoint = data.get("basepoint")
    if basepoint is not None:
        basepoint = _coords(basepoint, source)
    return Word(m, points, species, basepoint)


def parse_group_element(m, data, source="<word>"):
    """Parse and reduce a G word."""
    w = parse_word(m, data, source)
    if w.species != SPECIES_G:
        raise ValidityException("SpeciesMismatchException", "{}: expected a G word, got {}".format(source, w.species))
    return as_element(w)


def tuple_to_json(s):
    return {"genus": s.genus, "elements": [word_to_json(e) for e in s.elements]}


def parse_tuple(m, data, source="<tuple>"):
    genus = _require(data, "genus", numbers.Integral, source)
    elements = [parse_group_element(m, e, source) for e in _require(data, "elements", list, source)]
    if not elements:
        raise ValidityException("SurfaceTupleException", "{}: empty tuple".format(source))
    return SurfaceTuple(genus, elements)


def deck_to_json(d):
    if d.kind == LATTICE:
        return list(d.value)
    if d.kind in (SIGN, WINDING):
        return d.value
    return []
