from __future__ import annotations

import json
from fractions import Fraction

import pytest
import sympy
from hypothesis import given

from conftest import FIXTURES, SYMBOLS, corpus_paths, from_sympy, polys, to_sympy
from planesyz.polyring import Poly
from planesyz.textio import (
    CurveFormatError,
    ParseError,
    emit_report,
    load_curve,
    parse_curve_text,
    parse_polynomial,
    print_polynomial,
    tokenize,
)

x, y = Poly.gens(2)


@given(polys(2, max_degree=5, max_terms=8))
def test_print_parse_roundtrip_affine(p):
    assert parse_polynomial(print_polynomial(p), 2) == p


@given(polys(3, max_degree=5, max_terms=8))
def test_print_parse_roundtrip_projective(p):
    text = print_polynomial(p)
    assert parse_polynomial(text, 3) == p
    assert print_polynomial(parse_polynomial(text, 3)) == text


@given(polys(3, max_degree=4, max_terms=6))
def test_printed_text_agrees_with_sympy(p):
    # sympy reads the same text with '^' as power
    expr = sympy.sympify(print_polynomial(p).replace("^", "**"), locals=dict(zip("xyz", SYMBOLS)))
    assert sympy.expand(expr - to_sympy(p)) == 0


@pytest.mark.parametrize("text", [
    "(x + y)^3 - 2*(x - 1/3*y)^2",
    "x*y*(x - y)*(x + 2*y - 1)",
    "3/4 - -x + +y^2",
    "(1 + x)(1 - x)",
    "2 x y^2",
])
def test_parse_agrees_with_sympy(text):
    sym_text = text.replace("^", "**").replace(")(", ")*(").replace("2 x y", "2*x*y")
    expected = from_sympy(sympy.sympify(sym_text, locals={"x": SYMBOLS[0], "y": SYMBOLS[1]}), 2)
    assert parse_polynomial(text, 2) == expected


def test_printer_format():
    p = x ** 2 * y - Fraction(1, 2) * x + 3
    assert print_polynomial(p) == "x^2*y - 1/2*x + 3"
    assert print_polynomial(-x) == "-x"
    assert print_polynomial(Poly.zero(2)) == "0"


@pytest.mark.parametrize("text, offset", [
    ("x^", 2),
    ("x + (y", 4),
    ("x)", 1),
    ("2/", 2),
    ("2/0*x", 0),
    ("w", 0),
    ("x^-1", 2),
    ("x^1/2", 2),
    ("", 0),
    ("x^2 z", 4),
])
def test_parse_errors_report_offset(text, offset):
    with pytest.raises(ParseError) as info:
        parse_polynomial(text, 2)
    assert info.value.offset == offset


def test_offsets_count_bytes():
    with pytest.raises(ParseError) as info:
        parse_polynomial("x + é", 2)
    assert info.value.offset == 4
    # a no-break space is whitespace but takes two bytes
    with pytest.raises(ParseError) as info:
        parse_polynomial("x\u00a0+ w", 2)
    assert info.value.offset == 5


def test_tokens():
    kinds = [t.kind for t in tokenize("3/2*x^2 - (y)", 2)]
    assert kinds == ["number", "star", "variable", "caret", "number", "minus", "lparen", "variable", "rparen"]


def test_curve_document():
    doc = parse_curve_text(
        "# comment\nname: demo\nkind: projective\npoly: x*y*z\n"
        "expect.mdr: 1\nexpect.verdict: \"free\"\nexpect.bounds.tau_max: 3\n"
    )
    assert doc.kind == "projective" and doc.name == "demo"
    assert doc.parsed == parse_polynomial("x*y*z", 3)
    assert doc.expectations == {"mdr": 1, "verdict": "free", "bounds.tau_max": 3}


@pytest.mark.parametrize("text, line, fragment", [
    ("kind: affine\n", None, "missing 'poly:'"),
    ("poly: x\n", None, "missing 'kind:'"),
    ("kind: weird\npoly: x\n", 1, "kind must be"),
    ("kind: affine\npoly: x +\n", 2, "unexpected end"),
    ("kind: affine\npoly: 5\n", 2, "constant"),
    ("kind: projective\npoly: x^2 + y\n", 2, "not homogeneous"),
    ("kind: affine\npoly: x^2 + y\ndegree: 3\n", 3, "declared degree 3"),
    ("kind: affine\nkind: affine\npoly: x\n", 2, "duplicate"),
    ("kind: affine\npoly: x\ncolour: red\n", 3, "unknown key"),
    ("kind: affine\npoly: x\nno separator\n", 3, "expected 'key: value'"),
])
def test_curve_document_errors(text, line, fragment):
    with pytest.raises(CurveFormatError) as info:
        parse_curve_text(text)
    assert info.value.line == line
    assert fragment in str(info.value)


def test_inhomogeneous_fixture():
    with pytest.raises(CurveFormatError, match="line 2: not homogeneous"):
        load_curve(FIXTURES / "inhomogeneous.curve")


def test_missing_file():
    with pytest.raises(CurveFormatError, match="cannot read"):
        load_curve(FIXTURES / "does_not_exist.curve")


@pytest.mark.parametrize("path", corpus_paths(), ids=lambda p: p.stem)
def test_corpus_files_load(path):
    doc = load_curve(path)
    assert doc.name == path.stem
    assert doc.parsed.degree >= 1


def test_emit_report_sorted_and_stable():
    data = {"b": [1, 2], "a": {"z": None, "c": True}}
    text = emit_report(data)
    assert text == emit_report(json.loads(text))
    assert text.index('"a"') < text.index('"b"')
