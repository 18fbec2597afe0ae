"""Text syntax for groups, fields, elements and series.

Series grammar::

    series := ['+'|'-'] term (('+'|'-') term)* ['+' 'O(' 't^(' exp ')' ')']
    term   := coeff ('*'? 't^(' exp ')')? | 't^(' exp ')'
    coeff  := rational | 'q(' rational ',' rational ')'
    exp    := rational | '[' rational (',' rational)* ']' | '(' int ',' int ')'

Groups are written ``lex[Z,Q,Z]`` or ``surd(2)``; element literals are
``[1,-2/3,0]`` for lex coordinates and ``(1,-1)`` for a + b*sqrt(d); fields
are ``Q((lex[Z]))``, ``Q(sqrt(2))((lex[Z]))`` or ``real-closed-model((lex[Q]))``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .coeffs import QuadCoeff, QuadraticExtension, Rationals, RationalsAsRealClosedModel
from .errors import ParseError
from .hahn import FieldDescriptor, TruncatedSeries
from .oag import GroupDescriptor, GroupElement

_TOKEN_RE = re.compile(r"\s*(\d+(?:/\d+)?|[A-Za-z]+(?:-[A-Za-z]+)*|[-+*^()\[\],])")


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.items: list[tuple[str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if not m or not m.group(1):
                raise ParseError("unexpected character", pos)
            self.items.append((m.group(1), m.start(1)))
            pos = m.end()
        self.i = 0

    def peek(self) -> str | None:
        return self.items[self.i][0] if self.i < len(self.items) else None

    def pos(self) -> int:
        if self.i < len(self.items):
            return self.items[self.i][1]
        return len(self.text)

    def next(self) -> str:
        if self.i >= len(self.items):
            raise ParseError("unexpected end of input", len(self.text))
        tok, _ = self.items[self.i]
        self.i += 1
        return tok

    def expect(self, tok: str):
        got = self.peek()
        if got != tok:
            raise ParseError(f"expected {tok!r}, found {got!r}", self.pos())
        self.next()

    def done(self):
        if self.i < len(self.items):
            raise ParseError(f"trailing input {self.peek()!r}", self.pos())


def _parse_unsigned_rational(ts: _Tokens) -> Fraction:
    tok = ts.peek()
    if tok is None or not re.fullmatch(r"\d+(?:/\d+)?", tok):
        raise ParseError(f"expected a rational number, found {tok!r}", ts.pos())
    ts.next()
    if "/" in tok:
        num, den = tok.split("/")
        if int(den) == 0:
            raise ParseError("zero denominator", ts.pos())
        return Fraction(int(num), int(den))
    return Fraction(int(tok))


def _parse_rational(ts: _Tokens) -> Fraction:
    sign = 1
    if ts.peek() == "-":
        ts.next()
        sign = -1
    elif ts.peek() == "+":
        ts.next()
    return sign * _parse_unsigned_rational(ts)


def parse_fraction(text: str) -> Fraction:
    ts = _Tokens(text)
    q = _parse_rational(ts)
    ts.done()
    return q


def parse_group_descriptor(text: str) -> GroupDescriptor:
    ts = _Tokens(text)
    g = _parse_group(ts)
    ts.done()
    return g


def _parse_group(ts: _Tokens) -> GroupDescriptor:
    tok = ts.peek()
    if tok == "lex":
        ts.next()
        ts.expect("[")
        comps: list[str] = []
        if ts.peek() != "]":
            while True:
                line = ts.next()
                if line not in ("Z", "Q"):
                    raise ParseError(f"unknown component {line!r}", ts.pos())
                comps.append(line)
                if ts.peek() == ",":
                    ts.next()
                    continue
                break
        ts.expect("]")
        return GroupDescriptor.lex(comps)
    if tok == "surd":
        ts.next()
        ts.expect("(")
        d = _parse_unsigned_rational(ts)
        ts.expect(")")
        if d.denominator != 1:
            raise ParseError("surd radicand must be an integer", ts.pos())
        return GroupDescriptor.surd(int(d))
    raise ParseError(f"expected a group descriptor, found {tok!r}", ts.pos())


def parse_field_descriptor(text: str) -> FieldDescriptor:
    ts = _Tokens(text)
    tok = ts.peek()
    if tok == "Q":
        ts.next()
        if ts.peek() == "(" and ts.i + 1 < len(ts.items) and ts.items[ts.i + 1][0] == "sqrt":
            ts.expect("(")
            ts.expect("sqrt")
            ts.expect("(")
            d = _parse_unsigned_rational(ts)
            ts.expect(")")
            ts.expect(")")
            cf = QuadraticExtension(int(d))
        else:
            cf = Rationals()
    elif tok == "real-closed-model":
        ts.next()
        cf = RationalsAsRealClosedModel()
    else:
        raise ParseError(f"unknown coefficient field {tok!r}", ts.pos())
    ts.expect("(")
    ts.expect("(")
    group = _parse_group(ts)
    ts.expect(")")
    ts.expect(")")
    ts.done()
    return FieldDescriptor(cf, group)


def parse_group_element(G: GroupDescriptor, text: str) -> GroupElement:
    ts = _Tokens(text)
    e = _parse_exponent(ts, G)
    ts.done()
    return e


def _parse_exponent(ts: _Tokens, G: GroupDescriptor) -> GroupElement:
    pos = ts.pos()
    tok = ts.peek()
    if tok == "[":
        ts.next()
        coords: list[Fraction] = []
        if ts.peek() != "]":
            while True:
                coords.append(_parse_rational(ts))
                if ts.peek() == ",":
                    ts.next()
                    continue
                break
        ts.expect("]")
        if G.family != "lex" or len(coords) != len(G.components):
            raise ParseError(
                f"exponent arity mismatch for {G.text}", pos
            )
        return GroupElement(G, tuple(coords))
    if tok == "(":
        ts.next()
        a = _parse_rational(ts)
        ts.expect(",")
        b = _parse_rational(ts)
        ts.expect(")")
        if G.family != "surd":
            raise ParseError(f"pair exponent needs a surd group, not {G.text}", pos)
        if a.denominator != 1 or b.denominator != 1:
            raise ParseError("surd coordinates must be integers", pos)
        return GroupElement(G, (int(a), int(b)))
    q = _parse_rational(ts)
    if G.family != "lex" or len(G.components) != 1:
        raise ParseError(f"exponent arity mismatch for {G.text}", pos)
    return GroupElement(G, (q,))


def parse_series(fd: FieldDescriptor, text: str) -> TruncatedSeries:
    """Parse a series literal; polynomial-support inputs are exact, an
    optional trailing ``+ O(t^(g))`` sets a finite precision."""
    ts = _Tokens(text)
    pairs: list[tuple[GroupElement, object]] = []
    precision = None
    negate = False
    if ts.peek() in ("+", "-"):
        negate = ts.next() == "-"
    while True:
        if ts.peek() == "O":
            precision = _parse_big_o(ts, fd)
            break
        pairs.append(_parse_term(ts, fd, negate))
        nxt = ts.peek()
        if nxt in ("+", "-"):
            negate = ts.next() == "-"
            continue
        break
    ts.done()
    return TruncatedSeries.make(fd, pairs, precision)


def _parse_big_o(ts: _Tokens, fd: FieldDescriptor) -> GroupElement:
    ts.expect("O")
    ts.expect("(")
    ts.expect("t")
    ts.expect("^")
    ts.expect("(")
    g = _parse_exponent(ts, fd.value_group)
    ts.expect(")")
    ts.expect(")")
    return g


def _parse_term(ts: _Tokens, fd: FieldDescriptor, negate: bool):
    cf = fd.coefficient_field
    tok = ts.peek()
    if tok == "t":
        coeff = cf.coerce(1)
    elif tok == "q":
        pos = ts.pos()
        ts.next()
        ts.expect("(")
        a = _parse_rational(ts)
        ts.expect(",")
        b = _parse_rational(ts)
        ts.expect(")")
        if not isinstance(cf, QuadraticExtension):
            raise ParseError(
                f"quadratic coefficient over {cf.text}", pos
            )
        coeff = QuadCoeff(a, b, cf.d)
    else:
        coeff = cf.coerce(_parse_unsigned_rational(ts))
    if negate:
        coeff = -coeff
    if ts.peek() == "*":
        ts.next()
        if ts.peek() != "t":
            raise ParseError("expected 't' after '*'", ts.pos())
    if ts.peek() == "t":
        ts.next()
        ts.expect("^")
        ts.expect("(")
        g = _parse_exponent(ts, fd.value_group)
        ts.expect(")")
        return (g, coeff)
    return (fd.value_group.zero(), coeff)


_QUADRATIC_RE = re.compile(
    r"X\^2(?P<lin>[+-]\d*X)?(?P<const>[+-]\d+)?", re.IGNORECASE
)


def parse_monic_quadratic(text: str) -> tuple[int, int]:
    """Parse a monic integer quadratic like ``X^2-2`` or ``X^2+3X-1`` into
    its linear and constant coefficients."""
    compact = text.replace(" ", "")
    m = _QUADRATIC_RE.fullmatch(compact)
    if not m:
        raise ParseError(f"expected a monic quadratic in X, got {text!r}", 0)
    lin = 0
    if m.group("lin"):
        body = m.group("lin")[:-1]  # strip the trailing X
        lin = int(body) if body not in ("+", "-") else int(body + "1")
    const = int(m.group("const")) if m.group("const") else 0
    return lin, const


def format_exponent(g: GroupElement) -> str:
    return g.text


def format_series(x: TruncatedSeries) -> str:
    """Canonical text for a series; literal output re-parses to an equal
    series (including the precision marker)."""
    cf = x.field.coefficient_field
    parts: list[str] = []
    for g, c in x.terms:
        neg = cf.sign(c) < 0
        mag = -c if neg else c
        if g.is_zero():
            body = cf.format(mag)
        elif mag == cf.one():
            body = f"t^({format_exponent(g)})"
        else:
            body = f"{cf.format(mag)}*t^({format_exponent(g)})"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    if x.precision is not None:
        parts.append(f"+ O(t^({format_exponent(x.precision)}))" if parts else f"O(t^({format_exponent(x.precision)}))")
    if not parts:
        return "0"
    return " ".join(parts)
