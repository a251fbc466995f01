"""JSON schemas for links, matrices, certificates and reports.

Integers outside the signed 64-bit range are encoded as decimal strings;
both forms are accepted on input.  Unknown keys are rejected everywhere
so that schema drift fails loudly.
"""

from __future__ import annotations

import json

from .calculus import (AddSplitUnknot, BlowDownIndex, EmbeddingCertificate,
                       GadgetSwitch, KirbyMove, MatrixSlide, Poke,
                       SlideOverUnknot)
from .intlattice import IntegralLattice
from .linkdiag import Arc, Component, Crossing, FramedLinkDiagram


class FormatError(ValueError):
    """Malformed or out-of-schema input."""


_I64_MIN = -(2 ** 63)
_I64_MAX = 2 ** 63 - 1


def encode_int(v: int):
    return v if _I64_MIN <= v <= _I64_MAX else str(v)


def decode_int(v, what: str = "integer") -> int:
    if isinstance(v, bool):
        raise FormatError("%s must be an integer, got a boolean" % what)
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        body = v[1:] if v[:1] == "-" else v
        if body.isdigit():
            return int(v)
    raise FormatError("%s must be an integer or decimal string, got %r" % (what, v))


def _check_keys(obj, allowed, required, what):
    if not isinstance(obj, dict):
        raise FormatError("%s must be an object, got %s" % (what, type(obj).__name__))
    unknown = set(obj) - set(allowed)
    if unknown:
        raise FormatError("%s has unknown keys %r" % (what, sorted(unknown)))
    missing = set(required) - set(obj)
    if missing:
        raise FormatError("%s is missing keys %r" % (what, sorted(missing)))


# ---------------------------------------------------------------------------
# links


def diagram_to_obj(d: FramedLinkDiagram) -> dict:
    comps = []
    for c in d.components:
        rec = {"id": c.id, "framing": encode_int(c.framing)}
        if c.basepoint is not None:
            rec["basepoint"] = c.basepoint
        comps.append(rec)
    arcs = [{"id": a, "component": v.owner, "next": v.successor}
            for a, v in sorted(d.arcs.items())]
    crossings = [{"id": c.id, "over_in": c.over_in, "over_out": c.over_out,
                  "under_in": c.under_in, "under_out": c.under_out, "sign": c.sign}
                 for _, c in sorted(d.crossings.items())]
    return {"components": comps, "arcs": arcs, "crossings": crossings}


def diagram_from_obj(obj) -> FramedLinkDiagram:
    _check_keys(obj, ("components", "arcs", "crossings"), ("components",), "link")
    d = FramedLinkDiagram()
    for rec in obj.get("components", []):
        _check_keys(rec, ("id", "framing", "basepoint"), ("id", "framing"), "component")
        d.components.append(Component(
            id=decode_int(rec["id"], "component id"),
            framing=decode_int(rec["framing"], "framing"),
            basepoint=decode_int(rec["basepoint"], "basepoint")
            if "basepoint" in rec else None))
    for rec in obj.get("arcs", []):
        _check_keys(rec, ("id", "component", "next"), ("id", "component", "next"), "arc")
        aid = decode_int(rec["id"], "arc id")
        if aid in d.arcs:
            raise FormatError("duplicate arc id %d" % aid)
        d.arcs[aid] = Arc(owner=decode_int(rec["component"], "arc component"),
                          successor=decode_int(rec["next"], "arc successor"))
    for rec in obj.get("crossings", []):
        _check_keys(rec, ("id", "over_in", "over_out", "under_in", "under_out", "sign"),
                    ("id", "over_in", "over_out", "under_in", "under_out", "sign"),
                    "crossing")
        xid = decode_int(rec["id"], "crossing id")
        if xid in d.crossings:
            raise FormatError("duplicate crossing id %d" % xid)
        d.crossings[xid] = Crossing(
            id=xid,
            over_in=decode_int(rec["over_in"], "over_in"),
            over_out=decode_int(rec["over_out"], "over_out"),
            under_in=decode_int(rec["under_in"], "under_in"),
            under_out=decode_int(rec["under_out"], "under_out"),
            sign=decode_int(rec["sign"], "sign"))
    return d


# ---------------------------------------------------------------------------
# matrices


def lattice_to_obj(L: IntegralLattice) -> dict:
    return {"n": L.n, "entries": [[encode_int(x) for x in row] for row in L.entries]}


def lattice_from_obj(obj) -> IntegralLattice:
    _check_keys(obj, ("n", "entries"), ("n", "entries"), "matrix")
    n = decode_int(obj["n"], "dimension")
    rows = obj["entries"]
    if not isinstance(rows, list) or len(rows) != n:
        raise FormatError("matrix entries must be a list of %d rows" % n)
    entries = []
    for row in rows:
        if not isinstance(row, list) or len(row) != n:
            raise FormatError("matrix rows must each have %d entries" % n)
        entries.append([decode_int(x, "matrix entry") for x in row])
    try:
        return IntegralLattice(entries)
    except ValueError as e:
        raise FormatError(str(e)) from None


# ---------------------------------------------------------------------------
# moves and certificates


def move_to_obj(mv: KirbyMove) -> dict:
    if isinstance(mv, GadgetSwitch):
        return {"type": "gadget_switch", "crossing": mv.crossing,
                "unknot": mv.unknot, "side": mv.side}
    if isinstance(mv, SlideOverUnknot):
        return {"type": "slide_over_unknot", "component": mv.component,
                "unknot": mv.unknot, "s": mv.s}
    if isinstance(mv, AddSplitUnknot):
        return {"type": "add_split_unknot", "framing": encode_int(mv.framing)}
    if isinstance(mv, MatrixSlide):
        return {"type": "matrix_slide", "i": mv.i, "j": mv.j, "s": mv.s}
    if isinstance(mv, BlowDownIndex):
        return {"type": "blow_down_index", "k": mv.k}
    if isinstance(mv, Poke):
        return {"type": "poke", "over": mv.over, "under": mv.under, "sign": mv.sign}
    raise FormatError("unknown move %r" % (mv,))


def move_from_obj(obj) -> KirbyMove:
    if not isinstance(obj, dict) or "type" not in obj:
        raise FormatError("move must be an object with a 'type' tag")
    kind = obj["type"]
    if kind == "gadget_switch":
        _check_keys(obj, ("type", "crossing", "unknot", "side"),
                    ("type", "crossing", "unknot", "side"), "gadget_switch")
        return GadgetSwitch(crossing=decode_int(obj["crossing"], "crossing"),
                            unknot=decode_int(obj["unknot"], "unknot"),
                            side=str(obj["side"]))
    if kind == "slide_over_unknot":
        _check_keys(obj, ("type", "component", "unknot", "s"),
                    ("type", "component", "unknot", "s"), "slide_over_unknot")
        return SlideOverUnknot(component=decode_int(obj["component"], "component"),
                               unknot=decode_int(obj["unknot"], "unknot"),
                               s=decode_int(obj["s"], "s"))
    if kind == "add_split_unknot":
        _check_keys(obj, ("type", "framing"), ("type", "framing"), "add_split_unknot")
        return AddSplitUnknot(framing=decode_int(obj["framing"], "framing"))
    if kind == "matrix_slide":
        _check_keys(obj, ("type", "i", "j", "s"), ("type", "i", "j", "s"), "matrix_slide")
        return MatrixSlide(i=decode_int(obj["i"], "i"), j=decode_int(obj["j"], "j"),
                           s=decode_int(obj["s"], "s"))
    if kind == "blow_down_index":
        _check_keys(obj, ("type", "k"), ("type", "k"), "blow_down_index")
        return BlowDownIndex(k=decode_int(obj["k"], "k"))
    if kind == "poke":
        _check_keys(obj, ("type", "over", "under", "sign"),
                    ("type", "over", "under", "sign"), "poke")
        return Poke(over=decode_int(obj["over"], "over"),
                    under=decode_int(obj["under"], "under"),
                    sign=decode_int(obj["sign"], "sign"))
    raise FormatError("unknown move type %r" % (kind,))


def certificate_to_obj(cert: EmbeddingCertificate) -> dict:
    return {
        "target": diagram_to_obj(cert.target),
        "initial": diagram_to_obj(cert.initial),
        "moves": [move_to_obj(mv) for mv in cert.moves],
        "sublink": {str(k): v for k, v in sorted(cert.sublink.items())},
        "m": cert.m,
        "n": cert.n,
        "p": cert.p,
    }


def certificate_from_obj(obj) -> EmbeddingCertificate:
    _check_keys(obj, ("target", "initial", "moves", "sublink", "m", "n", "p"),
                ("target", "initial", "moves", "sublink", "m", "n", "p"),
                "certificate")
    sublink = {}
    if not isinstance(obj["sublink"], dict):
        raise FormatError("sublink must be an object")
    for k, v in obj["sublink"].items():
        sublink[decode_int(k, "sublink key")] = decode_int(v, "sublink value")
    if not isinstance(obj["moves"], list):
        raise FormatError("moves must be a list")
    return EmbeddingCertificate(
        target=diagram_from_obj(obj["target"]),
        initial=diagram_from_obj(obj["initial"]),
        moves=[move_from_obj(mv) for mv in obj["moves"]],
        sublink=sublink,
        m=decode_int(obj["m"], "m"),
        n=decode_int(obj["n"], "n"),
        p=decode_int(obj["p"], "p"))


# ---------------------------------------------------------------------------
# file helpers


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def load_path(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise FormatError("cannot read %s: %s" % (path, e)) from None


def save_path(path: str, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))
