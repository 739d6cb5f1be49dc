"""JSON interchange for truncated series and formal maps.

A polynomial document::

    {"vars": 2, "trunc": 4, "terms": [{"exps": [2, 0], "coeff": "1/2"}, ...]}

and a map document::

    {"vars": 2, "trunc": 4, "components": [[...terms...], [...terms...]]}

Coefficients are always strings in the ``[+-]N[/D][+-M[/D2]i]`` grammar, never
JSON numbers.  Terms are written in graded-lexicographic order so output is
byte-stable.
"""

from __future__ import annotations

import json
from typing import Any

from .coefficients import CoefficientSyntaxError, format as format_coeff, parse as parse_coeff
from .series import FormalMap, Poly, TruncatedSeries

__all__ = [
    "DocumentError",
    "series_to_doc",
    "series_from_doc",
    "map_to_doc",
    "map_from_doc",
    "dumps",
    "loads",
]


class DocumentError(ValueError):
    """A JSON document does not follow the polynomial/map schema."""


def _terms_to_list(s: TruncatedSeries) -> list[dict[str, Any]]:
    return [{"exps": list(e), "coeff": format_coeff(c)} for e, c in s.items()]


def _int_field(doc: dict, key: str, minimum: int) -> int:
    if key not in doc:
        raise DocumentError(f"missing field {key!r}")
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, int) or v < minimum:
        raise DocumentError(f"field {key!r} must be an integer >= {minimum}, got {v!r}")
    return v


def _terms_from_list(raw, nvars: int, trunc: int) -> Poly:
    if not isinstance(raw, list):
        raise DocumentError("terms must be a list")
    terms = {}
    for t in raw:
        if not isinstance(t, dict) or set(t) != {"exps", "coeff"}:
            raise DocumentError(f"a term needs exactly 'exps' and 'coeff': {t!r}")
        exps = t["exps"]
        if (
            not isinstance(exps, list)
            or len(exps) != nvars
            or any(isinstance(e, bool) or not isinstance(e, int) or e < 0 for e in exps)
        ):
            raise DocumentError(f"exps must be {nvars} non-negative integers: {exps!r}")
        if not isinstance(t["coeff"], str):
            raise DocumentError(f"coeff must be a string, got {t['coeff']!r}")
        try:
            c = parse_coeff(t["coeff"])
        except CoefficientSyntaxError as exc:
            raise DocumentError(str(exc)) from exc
        if not c:
            raise DocumentError(f"zero coefficient stored for {exps}")
        if sum(exps) > trunc:
            raise DocumentError(f"term {exps} has degree above trunc {trunc}")
        key = tuple(exps)
        if key in terms:
            raise DocumentError(f"duplicate exponent vector {exps}")
        terms[key] = c
    return Poly(nvars, terms)


def series_to_doc(s: TruncatedSeries) -> dict[str, Any]:
    return {"vars": s.nvars, "trunc": s.trunc, "terms": _terms_to_list(s)}


def series_from_doc(doc: Any) -> TruncatedSeries:
    if not isinstance(doc, dict):
        raise DocumentError("a polynomial document must be a JSON object")
    nvars = _int_field(doc, "vars", 1)
    trunc = _int_field(doc, "trunc", 0)
    return TruncatedSeries(_terms_from_list(doc.get("terms", []), nvars, trunc), trunc)


def map_to_doc(F: FormalMap) -> dict[str, Any]:
    return {
        "vars": F.nvars,
        "trunc": F.trunc,
        "components": [_terms_to_list(c) for c in F],
    }


def map_from_doc(doc: Any) -> FormalMap:
    if not isinstance(doc, dict):
        raise DocumentError("a map document must be a JSON object")
    nvars = _int_field(doc, "vars", 1)
    trunc = _int_field(doc, "trunc", 0)
    comps = doc.get("components")
    if not isinstance(comps, list) or len(comps) != nvars:
        raise DocumentError(f"components must be a list of {nvars} term lists")
    return FormalMap(TruncatedSeries(_terms_from_list(c, nvars, trunc), trunc) for c in comps)


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc


def _reject_constant(name: str):
    raise DocumentError(f"{name} is not allowed in documents")
