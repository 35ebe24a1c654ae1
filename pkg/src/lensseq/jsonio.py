"""JSON encoding of package values.

Integral rationals become JSON integers; other rationals become ``"p/q"``
strings; quadratic numbers use the ``"p/q + r/s*sqrt(D)"`` text form.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .core import LensConstants, SequenceWindow
from .exactnum import QuadExt, format_quad, parse_quad
from .underground import Label, UndergroundSymbol, parse_label, parse_symbol


def encode_scalar(x):
    if isinstance(x, QuadExt):
        return x.rational_part.numerator if x.is_rational and x.rational_part.denominator == 1 else format_quad(x)
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else str(x)
    if isinstance(x, int) and not isinstance(x, bool):
        return x
    raise TypeError(f"cannot encode {x!r}")


def decode_scalar(v):
    """Inverse of :func:`encode_scalar`; rationals come back as Fractions."""
    if isinstance(v, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        q = parse_quad(v)
        return q.rational_part if q.is_rational else q
    raise TypeError(f"cannot decode {v!r}")


def constants_to_json(k: LensConstants) -> dict:
    return {"alpha": encode_scalar(k.alpha), "beta": encode_scalar(k.beta)}


def constants_from_json(d: dict) -> LensConstants:
    return LensConstants(decode_scalar(d["alpha"]), decode_scalar(d["beta"]))


def window_to_json(w: SequenceWindow) -> dict:
    d = {"origin_index": w.origin_index, "terms": [encode_scalar(t) for t in w.terms]}
    if w.constants is not None:
        d = {**constants_to_json(w.constants), **d}
    return d


def window_from_json(d: dict) -> SequenceWindow:
    k = constants_from_json(d) if "alpha" in d else None
    return SequenceWindow(int(d["origin_index"]), tuple(decode_scalar(t) for t in d["terms"]), k)


def symbol_to_json(sym: UndergroundSymbol) -> str:
    return str(sym)


def symbol_from_json(v: str) -> UndergroundSymbol:
    return parse_symbol(v)


def label_to_json(lab: Label) -> str:
    return str(lab)


def label_from_json(v: str) -> Label:
    return parse_label(v)


def dumps(obj) -> str:
    """Deterministic JSON text (sorted keys, fixed separators, trailing newline)."""
    return json.dumps(obj, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"
