"""Ring specs: the JSON config format and the CLI shorthand grammar.

Shorthand::

    spec  := "zn:" INT
           | "f" PRIME                  (alias for zn:PRIME)
           | "prod:" spec "," spec
           | "ut:" spec                 (upper-triangular 2x2 over spec)
           | "m" INT ":" spec           (full INT x INT matrices over spec)
           | "file:" PATH               (JSON config, must be last)

JSON config: ``{"kind": "zn", "n": 6}``, ``{"kind": "product", "factors":
[spec, spec]}``, ``{"kind": "upper_triangular", "base": spec}``,
``{"kind": "matrix", "base": spec, "k": 2}`` or ``{"kind": "tables",
"add": [[...]], "mul": [[...]], "zero": 0, "one": 1, "labels": [...]}``.
Nested ``base``/``factors`` entries may themselves be shorthand strings.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any

from .errors import SpecParseError
from .ring import (
    FiniteRing,
    build_from_tables,
    build_matrix_ring,
    build_product,
    build_upper_triangular,
    build_zn,
)

_INT = re.compile(r"\d+")


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def _parse_at(text: str, pos: int) -> tuple[dict, int]:
    rest = text[pos:]
    if rest.startswith("zn:"):
        m = _INT.match(text, pos + 3)
        if not m:
            raise SpecParseError(f"expected an integer after 'zn:' at column {pos + 4}", "ring")
        return {"kind": "zn", "n": int(m.group())}, m.end()
    if rest.startswith("prod:"):
        left, pos = _parse_at(text, pos + 5)
        if pos >= len(text) or text[pos] != ",":
            raise SpecParseError(f"expected ',' between product factors at column {pos + 1}", "ring")
        right, pos = _parse_at(text, pos + 1)
        return {"kind": "product", "factors": [left, right]}, pos
    if rest.startswith("ut:"):
        base, pos = _parse_at(text, pos + 3)
        return {"kind": "upper_triangular", "base": base}, pos
    if rest.startswith("file:"):
        if pos != 0:
            raise SpecParseError("file: may only appear as a whole spec", "ring")
        return load_spec_file(text[5:]), len(text)
    m = re.compile(r"m(\d+):").match(text, pos)
    if m:
        base, end = _parse_at(text, m.end())
        return {"kind": "matrix", "base": base, "k": int(m.group(1))}, end
    m = re.compile(r"f(\d+)").match(text, pos)
    if m:
        p = int(m.group(1))
        if not _is_prime(p):
            raise SpecParseError(f"f{p}: field order must be prime", "ring")
        return {"kind": "zn", "n": p}, m.end()
    raise SpecParseError(f"cannot parse ring spec at column {pos + 1}: {rest!r}", "ring")


def parse_shorthand(text: str) -> dict:
    """Parse a shorthand ring spec into its JSON form."""
    text = "".join(text.split())
    spec, end = _parse_at(text, 0)
    if end != len(text):
        raise SpecParseError(f"trailing input at column {end + 1}: {text[end:]!r}", "ring")
    return spec


def load_spec_file(path: str | Path) -> dict:
    try:
        raw = Path(path).read_text()
    except OSError as exc:
        raise SpecParseError(f"cannot read ring spec file: {exc.strerror}", str(path)) from None
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SpecParseError(exc.msg, f"{path}:line {exc.lineno}:column {exc.colno}") from None
    _validate(data, "$")
    return data


def _require(d: dict, key: str, where: str) -> Any:
    if key not in d:
        raise SpecParseError(f"missing field '{key}'", where)
    return d[key]


def _validate(spec: Any, where: str) -> None:
    if isinstance(spec, str):
        parse_shorthand(spec)
        return
    if not isinstance(spec, dict):
        raise SpecParseError("ring spec must be an object or shorthand string", where)
    kind = _require(spec, "kind", where)
    if kind == "zn":
        if not isinstance(_require(spec, "n", where), int):
            raise SpecParseError("field 'n' must be an integer", f"{where}.n")
    elif kind == "product":
        factors = _require(spec, "factors", where)
        if not isinstance(factors, list) or len(factors) != 2:
            raise SpecParseError("field 'factors' must list exactly two specs", f"{where}.factors")
        for i, f in enumerate(factors):
            _validate(f, f"{where}.factors[{i}]")
    elif kind == "upper_triangular":
        _validate(_require(spec, "base", where), f"{where}.base")
    elif kind == "matrix":
        _validate(_require(spec, "base", where), f"{where}.base")
        if not isinstance(_require(spec, "k", where), int):
            raise SpecParseError("field 'k' must be an integer", f"{where}.k")
    elif kind == "tables":
        for key in ("add", "mul"):
            table = _require(spec, key, where)
            if not (isinstance(table, list) and all(isinstance(row, list) for row in table)):
                raise SpecParseError(f"field '{key}' must be a list of rows", f"{where}.{key}")
        for key in ("zero", "one"):
            if not isinstance(_require(spec, key, where), int):
                raise SpecParseError(f"field '{key}' must be an integer", f"{where}.{key}")
    else:
        raise SpecParseError(f"unknown kind {kind!r}", f"{where}.kind")


def build_ring(spec: dict | str) -> FiniteRing:
    """Construct the ring a spec (JSON form or shorthand) describes."""
    if isinstance(spec, str):
        spec = parse_shorthand(spec)
    _validate(spec, "$")
    kind = spec["kind"]
    if kind == "zn":
        return build_zn(spec["n"])
    if kind == "product":
        return build_product(build_ring(spec["factors"][0]), build_ring(spec["factors"][1]))
    if kind == "upper_triangular":
        return build_upper_triangular(build_ring(spec["base"]))
    if kind == "matrix":
        return build_matrix_ring(build_ring(spec["base"]), spec["k"])
    return build_from_tables(spec["add"], spec["mul"], spec["zero"], spec["one"], spec.get("labels"))


def describe_spec(spec: dict | str) -> str | None:
    """Shorthand for a spec, or None for table-defined rings."""
    if isinstance(spec, str):
        spec = parse_shorthand(spec)
    kind = spec["kind"]
    if kind == "zn":
        n = spec["n"]
        return f"zn:{n}"
    if kind == "product":
        parts = [describe_spec(f) for f in spec["factors"]]
        return None if None in parts else f"prod:{parts[0]},{parts[1]}"
    if kind == "tables":
        return None
    base = describe_spec(spec["base"])
    if base is None:
        return None
    if base.startswith("zn:") and _is_prime(int(base[3:])):
        base = "f" + base[3:]
    if kind == "upper_triangular":
        return f"ut:{base}"
    if kind == "matrix":
        return f"m{spec['k']}:{base}"
    return None


def ring_ref(ring: FiniteRing) -> str | dict:
    """Self-contained reference for reports: shorthand if one exists, else the JSON spec."""
    if ring.spec is None:
        raise ValueError("ring carries no spec")
    short = describe_spec(ring.spec)
    return short if short is not None else ring.spec
