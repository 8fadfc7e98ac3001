"""多項式の式文字列を厳密な Poly に変換する再帰下降パーサー。

文法:
    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' nat)?
    base   := rational | variable | '(' expr ')'
    rational := nat ('/' nat)?

指数は自然数リテラルのみ (``x^(2)`` はエラー)。
"""
from __future__ import annotations

import logging
from typing import Dict, Optional, Sequence

from sympy import Poly, QQ, Rational, Symbol

from src.algebra.places import Place
from src.algebra.polynomials import S, SOURCE_GENS
from src.errors import ParseError

logger = logging.getLogger(__name__)

_INFINITY_WORDS = {"inf", "infinity", "oo", "∞"}


class _Parser:
    def __init__(self, text: str, gens: Sequence[Symbol]):
        self.text = text
        self.pos = 0
        self.gens = tuple(gens)
        self.by_name: Dict[str, Symbol] = {str(g): g for g in self.gens}

    # -- lexing ---------------------------------------------------------------

    def _skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> Optional[str]:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else None

    def _error(self, message: str) -> ParseError:
        return ParseError(message, self.text, self.pos)

    def _expect(self, char: str) -> None:
        if self._peek() != char:
            found = self._peek()
            raise self._error(f"expected '{char}', found {repr(found) if found else 'end of input'}")
        self.pos += 1

    def _natural(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self._error("expected a natural number")
        return int(self.text[start:self.pos])

    def _constant(self, value) -> Poly:
        return Poly(value, *self.gens, domain=QQ)

    # -- grammar --------------------------------------------------------------

    def parse(self) -> Poly:
        if self._peek() is None:
            raise self._error("empty expression")
        result = self.expr()
        if self._peek() is not None:
            raise self._error(f"unexpected {self._peek()!r}")
        return result

    def expr(self) -> Poly:
        sign = 1
        if self._peek() in ("+", "-"):
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        result = self.term() * sign
        while self._peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> Poly:
        result = self.factor()
        while self._peek() == "*":
            self.pos += 1
            result = result * self.factor()
        return result

    def factor(self) -> Poly:
        base = self.base()
        if self._peek() == "^":
            self.pos += 1
            if self._peek() is None or not self._peek().isdigit():
                raise self._error("exponent must be a natural number literal")
            return base ** self._natural()
        return base

    def base(self) -> Poly:
        char = self._peek()
        if char is None:
            raise self._error("unexpected end of input")
        if char.isdigit():
            numerator = self._natural()
            if self._peek() == "/":
                self.pos += 1
                denominator = self._natural()
                if denominator == 0:
                    raise self._error("division by zero in rational literal")
                return self._constant(Rational(numerator, denominator))
            return self._constant(numerator)
        if char == "(":
            self.pos += 1
            inner = self.expr()
            self._expect(")")
            return inner
        if char.isalpha():
            start = self.pos
            while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
                self.pos += 1
            name = self.text[start:self.pos]
            if name not in self.by_name:
                self.pos = start
                raise self._error(f"unknown variable {name!r} (allowed: {', '.join(self.by_name)})")
            return Poly(self.by_name[name], *self.gens, domain=QQ)
        raise self._error(f"unexpected {char!r}")


def parse_poly(text: str, gens: Sequence[Symbol] = SOURCE_GENS) -> Poly:
    """式文字列を QQ 上の Poly (既定の変数は x, y) に変換する。"""
    return _Parser(str(text), gens).parse()


def parse_place(text: str) -> Place:
    """``inf``、有理数 ``p/q``、または s の多項式 (最小多項式) を Place に変換する。"""
    raw = str(text).strip()
    if raw.lower() in _INFINITY_WORDS:
        return Place.infinity()
    p = parse_poly(raw, (S,))
    if p.is_zero or p.degree() < 1:
        return Place.rational(p.LC() if not p.is_zero else 0)
    try:
        return Place.algebraic(p)
    except ValueError as exc:
        raise ParseError(str(exc), raw) from exc
