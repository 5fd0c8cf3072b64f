"""JSON documents exchanged by the command-line tool.

Every document carries ``"v": 1``.  Exact scalars travel as rational strings
(``"-3/4"``), complex scalars as ``{"re": ..., "im": ...}``.  ``dumps``
produces the canonical byte form: sorted keys, compact separators.
"""
from __future__ import annotations

import json

from .classify import AffineMap, ConjugacySignature, Verdict, WitnessReport
from .exceptions import ParseError, UnsupportedDimension
from .numeric import (COMPLEX, REAL, QuadraticNumber, format_rational, matrix_from_json,
                      matrix_to_json, vector_from_json, vector_to_json)
from .spectral import BlockSignature, UnitBlock

SCHEMA_VERSION = 1


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def _check_version(doc) -> None:
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    if doc.get("v", SCHEMA_VERSION) != SCHEMA_VERSION:
        raise ParseError(f"unsupported schema version {doc.get('v')!r}")


def map_to_json(f: AffineMap) -> dict:
    return {"v": SCHEMA_VERSION, "field": f.field, "dim": f.dim,
            "A": matrix_to_json(f.A), "b": vector_to_json(f.b)}


def map_from_json(doc) -> AffineMap:
    _check_version(doc)
    missing = {"field", "dim", "A", "b"} - set(doc)
    if missing:
        raise ParseError(f"map document lacks {sorted(missing)}")
    field, dim = doc["field"], doc["dim"]
    if field not in (REAL, COMPLEX):
        raise ParseError(f"field must be 'R' or 'C', got {field!r}")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ParseError(f"dim must be a positive integer, got {dim!r}")
    A = matrix_from_json(doc["A"], field)
    b = vector_from_json(doc["b"], field)
    if A.n != dim or len(b) != dim:
        raise ParseError(f"A and b must have dimension {dim}")
    if dim not in (1, 2):
        raise UnsupportedDimension(f"dimension {dim} is not supported (only 1 and 2)")
    return AffineMap(A, b)


def _quadratic_to_json(x: QuadraticNumber | None):
    if x is None:
        return None
    return {"p": format_rational(x.p), "q": format_rational(x.q), "D": x.D}


def unit_block_to_json(u: UnitBlock) -> dict:
    return {"kind": u.kind, "size": u.size, "re": _quadratic_to_json(u.re),
            "im": _quadratic_to_json(u.im), "text": str(u)}


def blocks_to_json(b: BlockSignature) -> dict:
    return {"rank_plus": b.rank_plus, "det_sign_plus": b.det_sign_plus,
            "rank_minus": b.rank_minus, "det_sign_minus": b.det_sign_minus,
            "nilpotent_blocks": list(b.nilpotent_blocks),
            "unit_blocks": [unit_block_to_json(u) for u in b.unit_blocks]}


def signature_to_json(s: ConjugacySignature) -> dict:
    doc = {"v": SCHEMA_VERSION, "field": s.field, "dim": s.dim, "kind": s.kind}
    if s.has_fixed_point:
        doc["blocks"] = blocks_to_json(s.blocks)
        doc["identity"] = s.identity
    else:
        doc["singular"] = s.singular
    return doc


def verdict_to_json(v: Verdict) -> dict:
    return {"conjugate": v.conjugate, "basis": v.basis,
            "distinguishing_invariant": v.distinguishing_invariant,
            "warnings": [{"code": w.code, "message": w.message} for w in v.warnings]}


def witness_report_to_json(w: WitnessReport) -> dict:
    return {"fixed_count_class": w.fixed_count_class, "bijective": w.bijective,
            "orientation": w.orientation, "period2_class": w.period2_class,
            "contracting": w.contracting}


__all__ = [
    "SCHEMA_VERSION", "dumps", "loads", "map_to_json", "map_from_json", "signature_to_json",
    "verdict_to_json", "blocks_to_json", "unit_block_to_json", "witness_report_to_json",
]
