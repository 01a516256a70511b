"""JSON encodings for descriptors, elements, multiplications, subgroups and verdicts.

Encoders emit plain ``dict``/``list`` data; :func:`dumps` fixes the byte
layout. Decoders raise :class:`ParseError` carrying a JSON pointer to the
offending field.
"""

from __future__ import annotations

import json
from typing import Any, Mapping

from .arith import format_rational, parse_rational
from .group_model import GroupDescriptor, GroupElement, IdempotentType, TypeComponent
from .mult_structure import MultElement
from .residue_lattice import ResidueTuple, UnitSubgroup
from .verdict import Verdict


class ParseError(ValueError):
    def __init__(self, pointer: str, message: str):
        self.pointer = pointer or "/"
        super().__init__(f"{self.pointer}: {message}")
        self.message = message


def dumps(obj: Any, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(obj, indent=2, ensure_ascii=False)
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("", f"malformed JSON: {exc}") from None


def _expect(obj, kind, pointer: str, what: str):
    if kind is int:
        ok = isinstance(obj, int) and not isinstance(obj, bool)
    else:
        ok = isinstance(obj, kind)
    if not ok:
        raise ParseError(pointer, f"expected {what}")
    return obj


def _type_from(obj, pointer: str) -> IdempotentType:
    _expect(obj, list, pointer, "a list of primes")
    for i, p in enumerate(obj):
        _expect(p, int, f"{pointer}/{i}", "an integer prime")
    try:
        return IdempotentType(tuple(obj))
    except ValueError as exc:
        raise ParseError(pointer, str(exc)) from None


def _type_from_key(key: str, pointer: str) -> IdempotentType:
    try:
        return IdempotentType.from_key(key)
    except ValueError as exc:
        raise ParseError(pointer, f"bad type key {key!r}: {exc}") from None


def _rational_from(obj, pointer: str):
    _expect(obj, str, pointer, 'a rational string "a" or "a/b"')
    try:
        return parse_rational(obj)
    except ValueError as exc:
        raise ParseError(pointer, str(exc)) from None


def _check_keys(obj: Mapping, allowed, pointer: str) -> None:
    extra = sorted(set(obj) - set(allowed))
    if extra:
        raise ParseError(f"{pointer}/{extra[0]}", "unknown field")


# descriptors

def descriptor_to_dict(G: GroupDescriptor) -> dict:
    comps = []
    for c in G.components:
        d = {"p_inf": list(c.type.p_inf), "rank": c.rank, "m": c.m}
        if c.m > 1:
            d["s"] = c.s
        comps.append(d)
    out: dict = {"components": comps}
    if G.provenance is not None:
        out["provenance"] = dict(G.provenance)
    return out


def descriptor_from_dict(obj: Any, pointer: str = "") -> GroupDescriptor:
    _expect(obj, dict, pointer or "/", "a descriptor object")
    _check_keys(obj, ("components", "provenance"), pointer)
    if "components" not in obj:
        raise ParseError(f"{pointer}/components", "missing field")
    comps_obj = _expect(obj["components"], list, f"{pointer}/components", "a list of components")
    if not comps_obj:
        raise ParseError(f"{pointer}/components", "at least one component is required")
    comps = []
    for i, c in enumerate(comps_obj):
        ptr = f"{pointer}/components/{i}"
        _expect(c, dict, ptr, "a component object")
        _check_keys(c, ("p_inf", "rank", "m", "s"), ptr)
        for key in ("p_inf", "rank", "m"):
            if key not in c:
                raise ParseError(f"{ptr}/{key}", "missing field")
        tau = _type_from(c["p_inf"], f"{ptr}/p_inf")
        rank = _expect(c["rank"], int, f"{ptr}/rank", "an integer rank")
        if rank < 1:
            raise ParseError(f"{ptr}/rank", "rank must be >= 1")
        m = _expect(c["m"], int, f"{ptr}/m", "an integer m")
        if m < 1:
            raise ParseError(f"{ptr}/m", "m must be >= 1")
        s = c.get("s")
        if m > 1:
            if s is None:
                raise ParseError(f"{ptr}/s", "missing field (required when m > 1)")
            _expect(s, int, f"{ptr}/s", "an integer s")
        elif s is not None:
            raise ParseError(f"{ptr}/s", "must be omitted when m = 1")
        comps.append(TypeComponent(tau, rank, m, s))
    prov = obj.get("provenance")
    if prov is not None:
        _expect(prov, dict, f"{pointer}/provenance", "an object")
    return GroupDescriptor(tuple(comps), prov)


# group elements

def element_to_dict(g: GroupElement) -> dict:
    return {
        "coords": [
            {"p_inf": list(tau.p_inf), "index": i, "value": format_rational(v)}
            for (tau, i), v in g.coords.items()
        ]
    }


def element_from_dict(obj: Any, pointer: str = "") -> GroupElement:
    _expect(obj, dict, pointer or "/", "an element object")
    _check_keys(obj, ("coords",), pointer)
    coords_obj = _expect(obj.get("coords"), list, f"{pointer}/coords", "a list of coordinates")
    coords = {}
    for i, c in enumerate(coords_obj):
        ptr = f"{pointer}/coords/{i}"
        _expect(c, dict, ptr, "a coordinate object")
        _check_keys(c, ("p_inf", "index", "value"), ptr)
        tau = _type_from(c.get("p_inf"), f"{ptr}/p_inf")
        idx = _expect(c.get("index"), int, f"{ptr}/index", "an integer index")
        key = (tau, idx)
        if key in coords:
            raise ParseError(ptr, "duplicate coordinate")
        coords[key] = _rational_from(c.get("value"), f"{ptr}/value")
    return GroupElement(coords)


# multiplications

def mult_to_dict(U: MultElement) -> dict:
    if U.is_rigid_form:
        return {"u": {tau.key: format_rational(v) for tau, v in U.rigid_values().items()}}
    return {
        "blocks": {
            tau.key: [[[format_rational(x) for x in e] for e in row] for row in b]
            for tau, b in U.blocks.items()
        }
    }


def mult_from_dict(obj: Any, pointer: str = "") -> MultElement:
    _expect(obj, dict, pointer or "/", "a multiplication object")
    _check_keys(obj, ("u", "blocks"), pointer)
    if ("u" in obj) == ("blocks" in obj):
        raise ParseError(pointer or "/", 'exactly one of "u" or "blocks" is required')
    if "u" in obj:
        u = _expect(obj["u"], dict, f"{pointer}/u", "an object keyed by type")
        return MultElement.rigid({
            _type_from_key(k, f"{pointer}/u/{k}"): _rational_from(v, f"{pointer}/u/{k}") for k, v in u.items()
        })
    blocks_obj = _expect(obj["blocks"], dict, f"{pointer}/blocks", "an object keyed by type")
    blocks = {}
    for key, b in blocks_obj.items():
        ptr = f"{pointer}/blocks/{key}"
        tau = _type_from_key(key, ptr)
        _expect(b, list, ptr, "a square matrix")
        rows = []
        for i, row in enumerate(b):
            _expect(row, list, f"{ptr}/{i}", "a matrix row")
            entries = []
            for j, e in enumerate(row):
                _expect(e, list, f"{ptr}/{i}/{j}", "a coordinate vector")
                entries.append([_rational_from(x, f"{ptr}/{i}/{j}/{t}") for t, x in enumerate(e)])
            rows.append(entries)
        blocks[tau] = rows
    try:
        return MultElement(blocks)
    except ValueError as exc:
        raise ParseError(f"{pointer}/blocks", str(exc)) from None


# scalar tuples

def scalars_to_dict(c: Mapping[IdempotentType, Any]) -> dict:
    items = sorted(c.items(), key=lambda kv: kv[0].sort_key())
    return {"c": {tau.key: format_rational(v) for tau, v in items}}


def scalars_from_dict(obj: Any, pointer: str = "") -> dict:
    _expect(obj, dict, pointer or "/", "a scalar tuple object")
    c = _expect(obj.get("c"), dict, f"{pointer}/c", "an object keyed by type")
    return {_type_from_key(k, f"{pointer}/c/{k}"): _rational_from(v, f"{pointer}/c/{k}") for k, v in c.items()}


# residue lattice

def residue_tuple_to_dict(u: ResidueTuple) -> dict:
    return {"moduli": list(u.moduli), "residues": list(u.residues)}


def residue_tuple_from_dict(obj: Any, pointer: str = "") -> ResidueTuple:
    _expect(obj, dict, pointer or "/", "a residue tuple object")
    moduli = _expect(obj.get("moduli"), list, f"{pointer}/moduli", "a list of moduli")
    residues = _expect(obj.get("residues"), list, f"{pointer}/residues", "a list of residues")
    try:
        return ResidueTuple(tuple(moduli), tuple(residues))
    except ValueError as exc:
        raise ParseError(pointer or "/", str(exc)) from None


def subgroup_to_dict(H: UnitSubgroup) -> dict:
    return {"moduli": list(H.moduli), "elements": [list(e) for e in H.elements]}


def subgroup_from_dict(obj: Any, pointer: str = "") -> UnitSubgroup:
    _expect(obj, dict, pointer or "/", "a subgroup object")
    moduli = _expect(obj.get("moduli"), list, f"{pointer}/moduli", "a list of moduli")
    elements = _expect(obj.get("elements"), list, f"{pointer}/elements", "a list of residue tuples")
    try:
        return UnitSubgroup(tuple(moduli), tuple(tuple(e) for e in elements))
    except (AssertionError, ValueError, TypeError) as exc:
        raise ParseError(f"{pointer}/elements", f"not a subgroup: {exc}") from None


# verdicts

def verdict_to_dict(v: Verdict) -> dict:
    out: dict = {"result": v.result}
    if v.witness is not None:
        out["witness"] = v.witness
    if v.diagnostics:
        out["diagnostics"] = list(v.diagnostics)
    return out


def verdict_from_dict(obj: Any, pointer: str = "") -> Verdict:
    _expect(obj, dict, pointer or "/", "a verdict object")
    _check_keys(obj, ("result", "witness", "diagnostics"), pointer)
    result = _expect(obj.get("result"), bool, f"{pointer}/result", "a boolean")
    diags = obj.get("diagnostics", [])
    _expect(diags, list, f"{pointer}/diagnostics", "a list of strings")
    try:
        return Verdict(result, obj.get("witness"), tuple(diags))
    except ValueError as exc:
        raise ParseError(f"{pointer}/witness", str(exc)) from None


def to_dict(obj: Any) -> Any:
    for kind, enc in (
        (GroupDescriptor, descriptor_to_dict),
        (GroupElement, element_to_dict),
        (MultElement, mult_to_dict),
        (ResidueTuple, residue_tuple_to_dict),
        (UnitSubgroup, subgroup_to_dict),
        (Verdict, verdict_to_dict),
    ):
        if isinstance(obj, kind):
            return enc(obj)
    raise TypeError(f"no JSON encoding for {type(obj).__name__}")


_DECODERS = {
    GroupDescriptor: descriptor_from_dict,
    GroupElement: element_from_dict,
    MultElement: mult_from_dict,
    ResidueTuple: residue_tuple_from_dict,
    UnitSubgroup: subgroup_from_dict,
    Verdict: verdict_from_dict,
}


def from_dict(kind: type, obj: Any) -> Any:
    return _DECODERS[kind](obj)


def to_json(obj: Any, pretty: bool = False) -> str:
    return dumps(to_dict(obj), pretty)


def from_json(kind: type, text: str) -> Any:
    return from_dict(kind, loads(text))
