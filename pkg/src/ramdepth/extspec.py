"""Reader and writer for ``*.ext`` extension description files.

Three kinds of document are accepted::

    # explicit orders |G_-1|, |G_0|, |G_1|, ...
    p = 2
    orders = 16 16 16 2 2 1

    # group order plus breaks (index -> order right after the break)
    p = 2
    group = 16
    break 1 -> 2
    break 3 -> 1

    # a catalog family, optionally overriding expected values
    family = artin_schreier
    param p = 3
    param m = 2
    expect a = 4/3

``#`` starts a comment.  A JSON mirror of the same documents is read and
written as well; :func:`parse` recognises it by a leading ``{``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from . import catalog
from .errors import (
    DuplicateDirective,
    InvalidPrime,
    ParseError,
    RamdepthError,
    SpecSyntaxError,
    UnknownDirective,
    ValidationError,
)
from .filtration import RamificationFiltration

# Documents whose expansion would exceed this many filtration indices are rejected.
MAX_INDEX = 100_000
_MAX_EXPONENT_BITS = 4096

_INT = r"[+-]?[0-9]+"
_IDENT = r"[A-Za-z_][A-Za-z0-9_]*"
_RATIONAL = r"[+-]?[0-9]+(?:/[0-9]+)?"


@dataclass(frozen=True)
class OrdersSpec:
    residue_char: int
    orders: tuple[int, ...]
    kind = "orders"


@dataclass(frozen=True)
class BreaksSpec:
    residue_char: int
    group_order: int
    breaks: tuple[tuple[int, int], ...]
    kind = "breaks"


@dataclass(frozen=True)
class CatalogSpec:
    family: str
    params: dict[str, int] = field(default_factory=dict)
    expect: dict[str, Fraction] = field(default_factory=dict)
    kind = "catalog"


ExtensionSpec = Union[OrdersSpec, BreaksSpec, CatalogSpec]


# -- parsing -----------------------------------------------------------------

def parse(text: str | bytes) -> ExtensionSpec:
    """Parse a text or JSON document and validate the filtration it describes."""
    if isinstance(text, (bytes, bytearray)):
        text = _decode(bytes(text))
    if text.lstrip().startswith("{"):
        doc, anchors = _parse_json(text)
    else:
        doc, anchors = _parse_text(text)
    _validate(doc, anchors)
    return doc


def _decode(data: bytes) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        line = data.count(b"\n", 0, exc.start) + 1
        col = exc.start - (data.rfind(b"\n", 0, exc.start) + 1) + 1
        raise SpecSyntaxError("invalid UTF-8", line, col) from None


def _to_int(tok: str, line: int, col: int) -> int:
    if not re.fullmatch(_INT, tok):
        raise SpecSyntaxError(f"expected an integer, got {tok!r}", line, col)
    try:
        return int(tok)
    except ValueError:  # exceeds the interpreter's digit limit
        raise SpecSyntaxError("integer literal too long", line, col) from None


def _parse_text(text: str):
    seen: dict[str, int] = {}  # directive -> line
    values: dict[str, object] = {}
    breaks: list[tuple[int, int]] = []
    break_lines: dict[int, int] = {}
    params: dict[str, int] = {}
    expect: dict[str, Fraction] = {}
    last_line = 1

    for lineno, raw in enumerate(text.split("\n"), start=1):
        last_line = lineno
        line = raw.split("#", 1)[0].rstrip("\r")
        if not line.strip():
            continue
        m = re.match(r"\s*(" + _IDENT + ")", line)
        if not m:
            col = len(line) - len(line.lstrip()) + 1
            raise SpecSyntaxError("expected a directive name", lineno, col)
        key, kcol, rest, rcol = m.group(1), m.start(1) + 1, line[m.end():], m.end() + 1

        if key in ("p", "orders", "group", "family"):
            mv = re.match(r"\s*=\s*(.*?)\s*$", rest)
            if not mv:
                raise SpecSyntaxError(f"expected '=' after {key!r}", lineno, rcol)
            if key in seen:
                raise DuplicateDirective(f"{key!r} already given on line {seen[key]}", lineno, kcol)
            seen[key] = lineno
            val, vcol = mv.group(1), rcol + mv.start(1)
            if not val:
                raise SpecSyntaxError(f"missing value for {key!r}", lineno, vcol)
            if key == "orders":
                values[key] = tuple(
                    _to_int(t.group(), lineno, vcol + t.start()) for t in re.finditer(r"\S+", val)
                )
            elif key == "family":
                if not re.fullmatch(_IDENT, val):
                    raise SpecSyntaxError(f"invalid family name {val!r}", lineno, vcol)
                values[key] = val
            else:
                values[key] = _to_int(val, lineno, vcol)
        elif key == "break":
            mv = re.fullmatch(r"\s+(" + _INT + r")\s*->\s*(" + _INT + r")\s*", rest)
            if not mv:
                raise SpecSyntaxError("expected 'break <index> -> <order>'", lineno, rcol)
            idx = _to_int(mv.group(1), lineno, rcol + mv.start(1))
            after = _to_int(mv.group(2), lineno, rcol + mv.start(2))
            if idx in break_lines:
                raise DuplicateDirective(f"break {idx} already given on line {break_lines[idx]}", lineno, kcol)
            break_lines[idx] = lineno
            seen.setdefault("break", lineno)
            breaks.append((idx, after))
        elif key in ("param", "expect"):
            pat = _INT if key == "param" else _RATIONAL
            mv = re.fullmatch(r"\s+(" + _IDENT + r")\s*=\s*(" + pat + r")\s*", rest)
            if not mv:
                raise SpecSyntaxError(f"expected '{key} <name> = <value>'", lineno, rcol)
            name = mv.group(1)
            target = params if key == "param" else expect
            if name in target:
                raise DuplicateDirective(f"{key} {name!r} given twice", lineno, kcol)
            if key == "expect" and name not in catalog.QUANTITIES:
                raise UnknownDirective(
                    f"unknown quantity {name!r}; expected one of {', '.join(catalog.QUANTITIES)}",
                    lineno, rcol + mv.start(1),
                )
            vcol = rcol + mv.start(2)
            if key == "param":
                target[name] = _to_int(mv.group(2), lineno, vcol)
            else:
                num, _, den = mv.group(2).partition("/")
                n, d = _to_int(num, lineno, vcol), _to_int(den or "1", lineno, vcol)
                if d == 0:
                    raise SpecSyntaxError("zero denominator", lineno, vcol)
                target[name] = Fraction(n, d)
            seen.setdefault(key, lineno)
        else:
            raise UnknownDirective(f"unknown directive {key!r}", lineno, kcol)

    kinds = [k for k in ("orders", "group", "family") if k in seen]
    if not kinds:
        raise SpecSyntaxError("document needs one of 'orders', 'group' or 'family'", last_line, 1)
    if len(kinds) > 1:
        second = max(seen[k] for k in kinds)
        raise SpecSyntaxError(f"conflicting directives {' and '.join(map(repr, kinds))}", second, 1)
    kind = kinds[0]

    def forbid(*names):
        for name in names:
            if name in seen:
                raise SpecSyntaxError(f"{name!r} is not allowed with {kind!r}", seen[name], 1)

    if kind == "family":
        forbid("p", "break")
        doc = CatalogSpec(values["family"], params, expect)
        return doc, {"main": seen["family"], "p": seen["family"]}
    forbid("param", "expect")
    if "p" not in seen:
        raise SpecSyntaxError("missing 'p = <prime>'", seen[kind], 1)
    if kind == "orders":
        forbid("break")
        doc = OrdersSpec(values["p"], values["orders"])
    else:
        if not breaks:
            raise SpecSyntaxError("'group' needs at least one 'break <index> -> <order>'", seen["group"], 1)
        doc = BreaksSpec(values["p"], values["group"], tuple(breaks))
    return doc, {"main": seen[kind], "p": seen["p"]}


def _parse_json(text: str):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecSyntaxError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    except RecursionError:
        raise SpecSyntaxError("JSON nested too deeply", 1, 1) from None
    anchors = {"main": 1, "p": 1}

    def fail(msg):
        raise SpecSyntaxError(msg, 1, 1)

    def as_int(v, what):
        if isinstance(v, bool):
            fail(f"{what} must be an integer")
        if isinstance(v, int):
            return v
        if isinstance(v, str) and re.fullmatch(_INT, v):
            return _to_int(v, 1, 1)
        fail(f"{what} must be an integer or a decimal string")

    def as_list(v, what):
        if not isinstance(v, list):
            fail(f"{what} must be a list")
        return v

    if not isinstance(obj, dict):
        fail("top-level JSON value must be an object")
    kind = obj.get("kind")
    allowed = {
        "orders": {"kind", "residue_char", "orders"},
        "breaks": {"kind", "residue_char", "group_order", "breaks"},
        "catalog": {"kind", "family", "params", "expect"},
    }
    if kind not in allowed:
        fail("'kind' must be one of 'orders', 'breaks', 'catalog'")
    for key in obj:
        if key not in allowed[kind]:
            raise UnknownDirective(f"unknown key {key!r} for kind {kind!r}", 1, 1)
    required = allowed[kind] - ({"expect", "params"} if kind == "catalog" else set())
    for key in required:
        if key not in obj:
            fail(f"missing key {key!r}")

    if kind == "orders":
        doc = OrdersSpec(
            as_int(obj["residue_char"], "residue_char"),
            tuple(as_int(v, "order") for v in as_list(obj["orders"], "orders")),
        )
    elif kind == "breaks":
        pairs = []
        for item in as_list(obj["breaks"], "breaks"):
            if not isinstance(item, list) or len(item) != 2:
                fail("each break must be a two-element list [index, order_after]")
            pairs.append((as_int(item[0], "break index"), as_int(item[1], "order after break")))
        if not pairs:
            fail("'breaks' must be nonempty")
        if len({i for i, _ in pairs}) != len(pairs):
            raise DuplicateDirective("repeated break index", 1, 1)
        doc = BreaksSpec(as_int(obj["residue_char"], "residue_char"), as_int(obj["group_order"], "group_order"),
                         tuple(pairs))
    else:
        family = obj["family"]
        if not isinstance(family, str) or not re.fullmatch(_IDENT, family):
            fail("'family' must be an identifier string")
        params = obj.get("params", {})
        expect = obj.get("expect", {})
        if not isinstance(params, dict) or not isinstance(expect, dict):
            fail("'params' and 'expect' must be objects")
        if not all(re.fullmatch(_IDENT, k) for k in params):
            fail("parameter names must be identifiers")
        exp = {}
        for k, v in expect.items():
            if k not in catalog.QUANTITIES:
                raise UnknownDirective(f"unknown quantity {k!r}", 1, 1)
            if not isinstance(v, dict) or set(v) != {"num", "den"}:
                fail("expected values must be {\"num\": ..., \"den\": ...}")
            num, den = as_int(v["num"], "num"), as_int(v["den"], "den")
            if den == 0:
                fail("zero denominator")
            exp[k] = Fraction(num, den)
        doc = CatalogSpec(family, {k: as_int(v, k) for k, v in params.items()}, exp)
    return doc, anchors


# -- validation / resolution --------------------------------------------------

def _check_size(doc: ExtensionSpec) -> None:
    if isinstance(doc, OrdersSpec):
        return
    if isinstance(doc, BreaksSpec):
        if any(abs(i) > MAX_INDEX for i, _ in doc.breaks):
            raise ValueError(f"break index exceeds {MAX_INDEX}")
        return
    params = doc.params
    if any(abs(params.get(k, 0)) > MAX_INDEX for k in ("m",)):
        raise ValueError(f"break m exceeds {MAX_INDEX}")
    p, n = abs(params.get("p", 2)), params.get("n", 1)
    if n > 0 and (n.bit_length() > 16 or n * p.bit_length() > _MAX_EXPONENT_BITS):
        raise ValueError("p**n is too large")
    if doc.family == "cyclotomic_mp" and n >= 2 and p ** (n - 1) > MAX_INDEX:
        raise ValueError(f"p**(n-1) exceeds {MAX_INDEX}")


def _validate(doc: ExtensionSpec, anchors: dict[str, int]) -> None:
    try:
        _check_size(doc)
        resolve_entry(doc) if isinstance(doc, CatalogSpec) else resolve(doc)
    except ParseError:
        raise
    except (RamdepthError, ValueError) as exc:
        line = anchors["p"] if isinstance(exc, InvalidPrime) else anchors["main"]
        raise ValidationError(f"{type(exc).__name__}: {exc}", line, 1, cause=exc) from exc


def resolve(doc: ExtensionSpec) -> RamificationFiltration:
    if isinstance(doc, OrdersSpec):
        return RamificationFiltration(doc.residue_char, doc.orders)
    if isinstance(doc, BreaksSpec):
        return RamificationFiltration.from_breaks(doc.residue_char, doc.group_order, doc.breaks)
    return catalog.build(doc.family, doc.params).filtration


def resolve_entry(doc: CatalogSpec) -> catalog.CatalogEntry:
    """The catalog entry named by ``doc``, with any ``expect`` overrides applied."""
    entry = catalog.build(doc.family, doc.params)
    if doc.expect:
        entry = entry.with_expected(**doc.expect)
    return entry


def load(path) -> ExtensionSpec:
    with open(path, "rb") as fh:
        return parse(fh.read())


# -- emitting ----------------------------------------------------------------

def emit(doc: ExtensionSpec, format: str = "text") -> str:
    if format == "text":
        return _emit_text(doc)
    if format == "json":
        return json.dumps(to_json(doc), indent=2) + "\n"
    raise ValueError(f"unknown format {format!r}")


def _emit_text(doc: ExtensionSpec) -> str:
    if isinstance(doc, OrdersSpec):
        lines = [f"p = {doc.residue_char}", "orders = " + " ".join(map(str, doc.orders))]
    elif isinstance(doc, BreaksSpec):
        lines = [f"p = {doc.residue_char}", f"group = {doc.group_order}"]
        lines += [f"break {i} -> {g}" for i, g in doc.breaks]
    else:
        lines = [f"family = {doc.family}"]
        lines += [f"param {k} = {v}" for k, v in sorted(doc.params.items())]
        lines += [f"expect {k} = {v}" for k, v in sorted(doc.expect.items())]
    return "\n".join(lines) + "\n"


def _json_int(v: int):
    return v if -(2**63) <= v < 2**63 else str(v)


def to_json(doc: ExtensionSpec) -> dict:
    if isinstance(doc, OrdersSpec):
        return {"kind": "orders", "residue_char": _json_int(doc.residue_char),
                "orders": [_json_int(g) for g in doc.orders]}
    if isinstance(doc, BreaksSpec):
        return {"kind": "breaks", "residue_char": _json_int(doc.residue_char),
                "group_order": _json_int(doc.group_order),
                "breaks": [[_json_int(i), _json_int(g)] for i, g in doc.breaks]}
    out = {"kind": "catalog", "family": doc.family,
           "params": {k: _json_int(v) for k, v in sorted(doc.params.items())}}
    if doc.expect:
        out["expect"] = {k: {"num": str(v.numerator), "den": str(v.denominator)}
                         for k, v in sorted(doc.expect.items())}
    return out
