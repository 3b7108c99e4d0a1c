import json
from fractions import Fraction as Fr

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ramdepth import RamificationFiltration, extspec
from ramdepth.errors import (
    DuplicateDirective,
    NotDivisibilityChain,
    ParseError,
    SpecSyntaxError,
    UnknownDirective,
    UnknownFamily,
    ValidationError,
    WildPartNotPPower,
)
from ramdepth.extspec import BreaksSpec, CatalogSpec, OrdersSpec, emit, parse, resolve

from strategies import filtrations

QUAT = RamificationFiltration(2, (16, 16, 16, 2, 2, 1))


def test_parse_orders():
    doc = parse("p = 2\norders = 16 16 16 2 2 1")
    assert doc == OrdersSpec(2, (16, 16, 16, 2, 2, 1))
    assert doc.kind == "orders"
    assert resolve(doc) == QUAT


def test_parse_catalog():
    doc = parse("family = artin_schreier\nparam p = 3\nparam m = 2")
    assert doc == CatalogSpec("artin_schreier", {"p": 3, "m": 2})
    assert resolve(doc).orders == (3, 3, 3, 3, 1)


def test_parse_breaks():
    doc = parse("# quaternion\np=2\ngroup = 16\nbreak 1 -> 2\nbreak 3->1   # last\n")
    assert doc == BreaksSpec(2, 16, ((1, 2), (3, 1)))
    assert resolve(doc) == QUAT


def test_parse_trivial():
    assert resolve(parse("p = 3\norders = 1")) == RamificationFiltration(3, (1,))


def test_validation_error_wraps_filtration_error():
    with pytest.raises(ValidationError) as info:
        parse("p = 2\norders = 4 4 3 1")
    assert isinstance(info.value.cause, (NotDivisibilityChain, WildPartNotPPower))
    assert info.value.line == 2


def test_invalid_prime_points_at_p_line():
    with pytest.raises(ValidationError) as info:
        parse("orders = 4 4 1\n\np = 4")
    assert info.value.line == 3


@pytest.mark.parametrize(
    "text, error, line, column",
    [
        ("p = 2\norders = 4 x 1", SpecSyntaxError, 2, 12),
        ("p = 2\nordres = 4 4 1", UnknownDirective, 2, 1),
        ("p = 2\np = 3\norders = 1", DuplicateDirective, 2, 1),
        ("p = 2\n  orders 4 4 1", SpecSyntaxError, 2, 9),
        ("p = 2\ngroup = 4\nbreak 1 => 1", SpecSyntaxError, 3, 6),
        ("p = 2\ngroup = 4\nbreak 1 -> 2\nbreak 1 -> 1", DuplicateDirective, 4, 1),
        ("p = 2", SpecSyntaxError, 1, 1),
        ("", SpecSyntaxError, 1, 1),
        ("p = 2\norders = 2 2 2 1\ngroup = 2", SpecSyntaxError, 3, 1),
        ("family = artin_schreier\nparam p = 3\nparam p = 5", DuplicateDirective, 3, 1),
        ("family = artin_schreier\nexpect q = 1", UnknownDirective, 2, 8),
        ("family = kummer", ValidationError, 1, 1),
        ("family = artin_schreier\nparam p = 3", ValidationError, 1, 1),
        ("family = artin_schreier\nparam p = 3\nparam m = 3", ValidationError, 1, 1),
        ("p = 2\nfamily = artin_schreier", SpecSyntaxError, 1, 1),
        ("orders = 2 2 2 1", SpecSyntaxError, 1, 1),
        ("p = 2\ngroup = 16", SpecSyntaxError, 2, 1),
        ("p = 2\ngroup = 4\nbreak 100001 -> 1", ValidationError, 2, 1),
        ("!", SpecSyntaxError, 1, 1),
    ],
)
def test_positioned_errors(text, error, line, column):
    with pytest.raises(error) as info:
        parse(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_unknown_family_cause():
    with pytest.raises(ValidationError) as info:
        parse("family = kummer")
    assert isinstance(info.value.cause, UnknownFamily)


def test_invalid_utf8_position():
    with pytest.raises(SpecSyntaxError) as info:
        parse(b"p = 2\norders = 2 \xff")
    assert (info.value.line, info.value.column) == (2, 12)


def test_expect_overrides():
    doc = parse("family = quaternion_serre\nexpect a = 18/16")
    assert doc.expect == {"a": Fr(9, 8)}
    entry = extspec.resolve_entry(doc)
    assert entry.expected["a"].value == Fr(9, 8)


def test_emit_text_canonical():
    doc = OrdersSpec(2, (16, 16, 16, 2, 2, 1))
    assert emit(doc) == "p = 2\norders = 16 16 16 2 2 1\n"
    cat = CatalogSpec("artin_schreier", {"p": 3, "m": 2})
    assert emit(cat) == "family = artin_schreier\nparam m = 2\nparam p = 3\n"


def test_emit_json():
    obj = json.loads(emit(OrdersSpec(2, (16, 16, 16, 2, 2, 1)), "json"))
    assert obj == {"kind": "orders", "residue_char": 2, "orders": [16, 16, 16, 2, 2, 1]}
    big = OrdersSpec(2, (2**70, 2**70, 2**70, 1))
    obj = json.loads(emit(big, "json"))
    assert obj["orders"] == [str(2**70)] * 3 + [1]
    assert parse(emit(big, "json")) == big


def test_catalog_round_trip():
    doc = CatalogSpec("abrashkin", {"p": 2, "n": 3, "m": 5}, {"a": Fr(1, 3)})
    assert parse(emit(doc)) == doc
    assert parse(emit(doc, "json")) == doc


def test_json_errors_are_positioned():
    with pytest.raises(SpecSyntaxError) as info:
        parse('{"kind": "orders",\n "orders": [1,]}')
    assert info.value.line == 2
    with pytest.raises(UnknownDirective):
        parse('{"kind": "orders", "residue_char": 2, "orders": [1], "extra": 1}')
    with pytest.raises(SpecSyntaxError):
        parse("{" * 5000)


# -- properties -----------------------------------------------------------------

@st.composite
def documents(draw):
    F = draw(filtrations())
    kind = draw(st.sampled_from(["orders", "breaks", "catalog"]))
    if kind == "orders":
        return OrdersSpec(F.residue_char, F.orders)
    if kind == "breaks" and not F.is_trivial:
        brk = F.break_sequence()
        if F.ramification_index < F.group_order:
            brk = [(-1, F.ramification_index)] + brk
        if brk:
            return BreaksSpec(F.residue_char, F.group_order, tuple(brk))
    family = draw(st.sampled_from(["artin_schreier", "abrashkin", "char2_quadratic", "quaternion_serre", "cyclotomic_mp"]))
    p = draw(st.sampled_from([2, 3, 5, 7]))
    m = draw(st.integers(1, 50).filter(lambda m: m % p))
    params = {
        "artin_schreier": {"p": p, "m": m},
        "abrashkin": {"p": p, "n": draw(st.integers(1, 3)), "m": m},
        "char2_quadratic": {"m": 2 * draw(st.integers(0, 30)) + 1},
        "quaternion_serre": {},
        "cyclotomic_mp": {"p": p, "n": draw(st.integers(2, 4))},
    }[family]
    expect = draw(st.dictionaries(st.sampled_from(["e", "b", "phi_b", "a"]), st.fractions(max_denominator=100)))
    return CatalogSpec(family, params, expect)


@given(documents(), st.sampled_from(["text", "json"]))
def test_round_trip(doc, fmt):
    assert parse(emit(doc, fmt)) == doc


@given(filtrations())
def test_breaks_and_orders_resolve_identically(F):
    if F.is_trivial:
        return
    brk = F.break_sequence()
    if F.ramification_index < F.group_order:
        brk = [(-1, F.ramification_index)] + brk
    assert resolve(BreaksSpec(F.residue_char, F.group_order, tuple(brk))) == resolve(
        OrdersSpec(F.residue_char, F.orders)
    ) == F


@given(st.binary(max_size=300))
def test_fuzz_bytes(data):
    try:
        parse(data)
    except ParseError as exc:
        assert exc.line >= 1 and exc.column >= 1


@given(st.text(alphabet="pordersgroupbreakfamilyparamexpect =->#0123456789/\n -_\t", max_size=200))
def test_fuzz_grammar_alphabet(text):
    try:
        parse(text)
    except ParseError as exc:
        assert exc.line >= 1 and exc.column >= 1
