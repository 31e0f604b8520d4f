"""Polynomial expressions, curve files and JSON reports.

Expression grammar (whitespace ignored)::

    Expr   := Sign? Term (('+' | '-') Sign? Term)*
    Term   := Factor ('*'? Factor)*
    Factor := Number | Var ('^' Nat)? | '(' Expr ')' ('^' Nat)?
    Number := Nat ('/' Nat)?

Juxtaposition means multiplication, so ``2xy^2`` parses as ``2*x*(y^2)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from .polyring import VARIABLE_NAMES, Poly

TOKEN_KINDS = ("number", "variable", "plus", "minus", "star", "caret", "lparen", "rparen")
_PUNCT = {"+": "plus", "-": "minus", "*": "star", "^": "caret", "(": "lparen", ")": "rparen"}


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte offset {offset}")
        self.offset = offset


class CurveFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line


@dataclass(frozen=True)
class ExprToken:
    kind: str
    payload: str
    position: int


def tokenize(text: str, arity: int) -> list[ExprToken]:
    names = VARIABLE_NAMES[:arity]
    tokens: list[ExprToken] = []
    i, n = 0, len(text)
    byte = 0  # byte offset of text[i]

    def width(s: str) -> int:
        return len(s.encode("utf-8"))

    while i < n:
        ch = text[i]
        if ch.isspace():
            byte += width(ch)
            i += 1
            continue
        start, start_byte = i, byte
        if ch.isdigit() and ch.isascii():
            while i < n and text[i].isascii() and text[i].isdigit():
                i += 1
            if i < n and text[i] == "/":
                i += 1
                if not (i < n and text[i].isascii() and text[i].isdigit()):
                    raise ParseError("expected denominator after '/'", start_byte + (i - start))
                while i < n and text[i].isascii() and text[i].isdigit():
                    i += 1
                if int(text[text.index("/", start) + 1:i]) == 0:
                    raise ParseError("zero denominator", start_byte)
            tokens.append(ExprToken("number", text[start:i], start_byte))
            byte += i - start
            continue
        if ch in _PUNCT:
            tokens.append(ExprToken(_PUNCT[ch], ch, start_byte))
            i += 1
            byte += 1
            continue
        if ch.isalpha():
            if ch not in names:
                raise ParseError(f"unknown variable {ch!r} for arity {arity}", start_byte)
            tokens.append(ExprToken("variable", ch, start_byte))
            i += 1
            byte += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", start_byte)
    return tokens


class _Parser:
    def __init__(self, text: str, arity: int):
        self.arity = arity
        self.tokens = tokenize(text, arity)
        self.pos = 0
        self.end = len(text.encode("utf-8"))

    def peek(self) -> ExprToken | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> ExprToken:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.end)
        self.pos += 1
        return tok

    def parse(self) -> Poly:
        if not self.tokens:
            raise ParseError("empty expression", 0)
        p = self.expr()
        tok = self.peek()
        if tok is not None:
            if tok.kind == "rparen":
                raise ParseError("unbalanced ')'", tok.position)
            raise ParseError(f"unexpected {tok.payload!r}", tok.position)
        return p

    def signed_term(self) -> Poly:
        tok = self.peek()
        if tok is not None and tok.kind in ("plus", "minus"):
            self.pos += 1
            t = self.term()
            return -t if tok.kind == "minus" else t
        return self.term()

    def expr(self) -> Poly:
        result = self.signed_term()
        while (tok := self.peek()) is not None and tok.kind in ("plus", "minus"):
            self.pos += 1
            t = self.signed_term()
            result = result + t if tok.kind == "plus" else result - t
        return result

    def term(self) -> Poly:
        result = self.factor()
        while (tok := self.peek()) is not None:
            if tok.kind == "star":
                self.pos += 1
            elif tok.kind not in ("number", "variable", "lparen"):
                break
            result = result * self.factor()
        return result

    def exponent(self) -> int:
        tok = self.peek()
        if tok is None:
            raise ParseError("missing exponent after '^'", self.end)
        if tok.kind != "number" or "/" in tok.payload:
            raise ParseError("exponent must be a non-negative integer", tok.position)
        self.pos += 1
        return int(tok.payload)

    def maybe_power(self, base: Poly) -> Poly:
        tok = self.peek()
        if tok is not None and tok.kind == "caret":
            self.pos += 1
            return base ** self.exponent()
        return base

    def factor(self) -> Poly:
        tok = self.next()
        if tok.kind == "number":
            return Poly.constant(Fraction(tok.payload), self.arity)
        if tok.kind == "variable":
            v = Poly.variable(VARIABLE_NAMES.index(tok.payload), self.arity)
            return self.maybe_power(v)
        if tok.kind == "lparen":
            inner = self.expr()
            close = self.peek()
            if close is None or close.kind != "rparen":
                raise ParseError("unbalanced '('", tok.position)
            self.pos += 1
            return self.maybe_power(inner)
        raise ParseError(f"unexpected {tok.payload!r}", tok.position)


def parse_polynomial(text: str, arity: int) -> Poly:
    """Parse ``text`` into a polynomial in the first ``arity`` of x, y, z."""
    if arity not in (2, 3, 4):
        raise ValueError("arity must be 2 or 3")
    return _Parser(text, arity).parse()


def _format_monomial(m: tuple[int, ...]) -> str:
    parts = []
    for name, e in zip(VARIABLE_NAMES, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _format_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def print_polynomial(p: Poly) -> str:
    """Canonical text: descending grevlex terms, ``coef*x^a*y^b`` factors."""
    if p.is_zero():
        return "0"
    pieces = []
    for idx, (m, c) in enumerate(p.terms()):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        mono = _format_monomial(m)
        if not mono:
            body = _format_scalar(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_format_scalar(mag)}*{mono}"
        if idx == 0:
            pieces.append(("-" if sign == "-" else "") + body)
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)


# -- curve files -------------------------------------------------------------

@dataclass
class CurveDocument:
    kind: str
    expression: str
    parsed: Poly
    declared_degree: int | None = None
    name: str = ""
    expectations: dict[str, Any] = field(default_factory=dict)


def _parse_value(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def parse_curve_text(text: str, name: str = "") -> CurveDocument:
    fields: dict[str, tuple[str, int]] = {}
    expectations: dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise CurveFormatError(f"expected 'key: value', got {raw!r}", lineno)
        key, value = key.strip(), value.strip()
        if key.startswith("expect."):
            field_name = key[len("expect."):]
            if not field_name:
                raise CurveFormatError("empty expectation name", lineno)
            expectations[field_name] = _parse_value(value)
        elif key in ("kind", "poly", "name", "degree"):
            if key in fields:
                raise CurveFormatError(f"duplicate key {key!r}", lineno)
            fields[key] = (value, lineno)
        else:
            raise CurveFormatError(f"unknown key {key!r}", lineno)

    if "kind" not in fields:
        raise CurveFormatError("missing 'kind:' line")
    if "poly" not in fields:
        raise CurveFormatError("missing 'poly:' line")
    kind, kind_line = fields["kind"]
    if kind not in ("affine", "projective"):
        raise CurveFormatError(f"kind must be affine or projective, got {kind!r}", kind_line)
    expression, poly_line = fields["poly"]
    arity = 2 if kind == "affine" else 3
    try:
        parsed = parse_polynomial(expression, arity)
    except ParseError as exc:
        raise CurveFormatError(str(exc), poly_line) from exc
    if parsed.is_constant():
        raise CurveFormatError("polynomial is constant", poly_line)
    if kind == "projective" and not parsed.is_homogeneous():
        raise CurveFormatError("not homogeneous", poly_line)
    declared = None
    if "degree" in fields:
        value, line = fields["degree"]
        try:
            declared = int(value)
        except ValueError:
            raise CurveFormatError(f"degree must be an integer, got {value!r}", line) from None
        if declared != parsed.degree:
            raise CurveFormatError(
                f"declared degree {declared} differs from actual degree {parsed.degree}", line
            )
    doc_name = fields["name"][0] if "name" in fields else name
    return CurveDocument(kind, expression, parsed, declared, doc_name, expectations)


def load_curve(path: str | Path) -> CurveDocument:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CurveFormatError(f"cannot read {path}: {exc.strerror or exc}") from exc
    return parse_curve_text(text, name=path.stem)


def emit_report(report) -> str:
    """Deterministic JSON (sorted keys) for a report or a plain dict."""
    data = report if isinstance(report, dict) else report.as_dict()
    return json.dumps(data, sort_keys=True, indent=2)
