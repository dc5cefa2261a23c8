"""JSON documents for seeds, torus elements and basis expansions.

A seed document looks like::

    {"n": 3, "m": 6, "B": [[...], ...], "Lambda": [[...], ...],
     "ambient_Lambda": [[...], ...], "vars": [element, ...]}

``ambient_Lambda`` and ``vars`` are optional on input and default to
``Lambda`` and the torus generators.  :func:`dumps` always writes them, so
a canonical document round-trips byte for byte.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

from .errors import InvalidArgs
from .qseed import CompatiblePair, QuantumSeed
from .qtorus import SkewForm, TorusElement, element_from_json, element_to_json

__all__ = [
    "seed_to_json",
    "seed_from_json",
    "load_seed",
    "load_element",
    "dumps",
    "ParseError",
]


class ParseError(InvalidArgs):
    """The document is not valid JSON or has the wrong structure."""


def _int_matrix(doc: Any, rows: int, cols: int, name: str) -> list[list[int]]:
    if not isinstance(doc, list) or len(doc) != rows:
        raise ParseError(f"{name} must be a list of {rows} rows")
    out = []
    for r in doc:
        if not isinstance(r, list) or len(r) != cols:
            raise ParseError(f"each row of {name} must have {cols} entries")
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in r):
            raise ParseError(f"{name} must contain integers only")
        out.append(list(r))
    return out


def seed_to_json(seed: QuantumSeed) -> dict:
    return {
        "n": seed.n,
        "m": seed.m,
        "B": [list(r) for r in seed.btilde],
        "Lambda": [list(r) for r in seed.form.matrix],
        "ambient_Lambda": [list(r) for r in seed.ambient.matrix],
        "vars": [element_to_json(v) for v in seed.vars],
    }


def seed_from_json(doc: Mapping) -> QuantumSeed:
    """Build and validate a seed; compatibility errors propagate unchanged."""
    if not isinstance(doc, Mapping):
        raise ParseError("seed document must be a JSON object")
    try:
        n, m = doc["n"], doc["m"]
    except KeyError as exc:
        raise ParseError(f"seed document missing field {exc}") from None
    if not all(isinstance(x, int) and not isinstance(x, bool) for x in (n, m)) or not 1 <= n <= m:
        raise ParseError(f"need integers 1 <= n <= m, got n={n!r}, m={m!r}")
    if "B" not in doc or "Lambda" not in doc:
        raise ParseError("seed document needs both B and Lambda")
    btilde = _int_matrix(doc["B"], m, n, "B")
    lam = _int_matrix(doc["Lambda"], m, m, "Lambda")
    ambient = SkewForm(_int_matrix(doc.get("ambient_Lambda", lam), m, m, "ambient_Lambda"))
    pair = CompatiblePair.build(btilde, lam)
    raw_vars = doc.get("vars")
    if raw_vars is None:
        if ambient != pair.form:
            raise ParseError("a seed with ambient_Lambda different from Lambda must list its vars")
        vars_ = tuple(TorusElement.generator(ambient, i) for i in range(1, m + 1))
    else:
        if not isinstance(raw_vars, list) or len(raw_vars) != m:
            raise ParseError(f"vars must be a list of {m} elements")
        vars_ = tuple(element_from_json(v, ambient) for v in raw_vars)
        for i in range(n, m):
            if vars_[i] != TorusElement.generator(ambient, i + 1):
                raise ParseError(f"frozen variable x_{i + 1} must be the generator X^e_{i + 1}")
    return QuantumSeed(pair, ambient, vars_)


def dumps(doc: Any) -> str:
    """Deterministic JSON text with a trailing newline."""
    return json.dumps(doc, indent=1) + "\n"


def _read_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def load_seed(path: str | Path) -> QuantumSeed:
    return seed_from_json(_read_json(path))


def load_element(path: str | Path, form: SkewForm) -> TorusElement:
    doc = _read_json(path)
    if not isinstance(doc, Mapping):
        raise ParseError("element document must be a JSON object")
    try:
        return element_from_json(doc, form)
    except InvalidArgs as exc:
        raise ParseError(str(exc)) from None
