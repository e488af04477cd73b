"""Expression grammar for piecewise power-log functions.

Core grammar (whitespace insignificant)::

    function  := 'piece' segment (';' segment)*  |  'ealpha' '(' real ')'  |  sum
    segment   := '[' real ',' real ']' ':' sum
    sum       := ['+'|'-'] term (('+'|'-') term)*
    term      := real ['*' factors]  |  factors
    factors   := 't' ['^' sreal] ['*' 'L' ['^' sreal]]  |  'L' ['^' sreal]

't' is the variable, 'L' denotes (1 - ln t), and 'ealpha(a)' builds the
two-piece ramp min(t/a, 1).  Bare reals are constant terms; a bare 'L' part
is a log-only term.  The printer emits the same grammar and round-trips:
parse(format_function(f)) == f structurally.

Examples::

    t^-0.25
    2*t + t^0.5*L^-0.5
    piece[0,0.25]: 4*t; [0.25,1]: 1
    ealpha(0.25)
"""

from __future__ import annotations

import math
import re

from .funcspace import DomainError, PiecewiseFunction, PowLogTerm, TermSum

__all__ = ["ExpressionError", "parse", "format_function", "ealpha"]

_NUMBER = re.compile(r"(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)(?:[eE][+-]?[0-9]+)?")


class ExpressionError(ValueError):
    """Syntax or structure error, with the character position attached."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def ealpha(alpha: float) -> PiecewiseFunction:
    """The ramp e_alpha(t) = min(t/alpha, 1) for 0 < alpha <= 1."""
    alpha = float(alpha)
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha!r}")
    ramp = TermSum((PowLogTerm(1.0 / alpha, 1.0),))
    if alpha == 1.0:
        return PiecewiseFunction((0.0, 1.0), (ramp,))
    one = TermSum((PowLogTerm(1.0),))
    return PiecewiseFunction((0.0, alpha, 1.0), (ramp, one))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    # ------------------------------------------------------------- low level

    def _skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def error(self, message: str) -> ExpressionError:
        return ExpressionError(message, self.pos)

    def peek(self) -> str:
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, char: str) -> bool:
        if self.peek() == char:
            self.pos += 1
            return True
        return False

    def expect(self, char: str) -> None:
        if not self.take(char):
            raise self.error(f"expected {char!r}")

    def keyword(self, word: str) -> bool:
        self._skip_ws()
        end = self.pos + len(word)
        if self.text[self.pos:end] == word:
            self.pos = end
            return True
        return False

    def number(self, signed: bool = False) -> float:
        self._skip_ws()
        start = self.pos
        sign = 1.0
        if signed and self.pos < len(self.text) and self.text[self.pos] in "+-":
            sign = -1.0 if self.text[self.pos] == "-" else 1.0
            self.pos += 1
        m = _NUMBER.match(self.text, self.pos)
        if m is None:
            self.pos = start
            raise self.error("expected a number")
        self.pos = m.end()
        value = sign * float(m.group())
        if not math.isfinite(value):
            self.pos = start
            raise self.error(f"non-finite coefficient {m.group()!r}")
        return value

    # ------------------------------------------------------------- grammar

    def parse_function(self) -> PiecewiseFunction:
        if self.keyword("piece"):
            f = self.parse_piecewise()
        elif self.keyword("ealpha"):
            self.expect("(")
            alpha = self.number(signed=False)
            self.expect(")")
            if not 0.0 < alpha <= 1.0:
                raise self.error(f"ealpha argument must lie in (0, 1], got {alpha}")
            f = ealpha(alpha)
        else:
            f = PiecewiseFunction.from_termsum(self.parse_sum())
        self._skip_ws()
        if self.pos != len(self.text):
            raise self.error("unexpected trailing input")
        return f

    def parse_piecewise(self) -> PiecewiseFunction:
        breakpoints: list[float] = []
        pieces: list[TermSum] = []
        while True:
            self.expect("[")
            lo = self.number(signed=False)
            self.expect(",")
            hi = self.number(signed=False)
            self.expect("]")
            self.expect(":")
            body = self.parse_sum()
            if not breakpoints:
                if lo != 0.0:
                    raise self.error("first piece must start at 0")
                breakpoints.append(lo)
            elif lo != breakpoints[-1]:
                raise self.error(f"pieces must be contiguous: expected start {breakpoints[-1]}")
            if hi <= lo:
                raise self.error("breakpoints out of order")
            breakpoints.append(hi)
            pieces.append(body)
            if not self.take(";"):
                break
        if breakpoints[-1] != 1.0:
            raise self.error("last piece must end at 1")
        try:
            return PiecewiseFunction(tuple(breakpoints), tuple(pieces))
        except DomainError as exc:
            raise self.error(str(exc)) from exc

    def parse_sum(self) -> TermSum:
        sign = 1.0
        if self.take("-"):
            sign = -1.0
        else:
            self.take("+")
        terms: list[PowLogTerm] = [self.parse_term(sign)]
        while True:
            if self.take("+"):
                terms.append(self.parse_term(1.0))
            elif self.take("-"):
                terms.append(self.parse_term(-1.0))
            else:
                break
        return TermSum(tuple(terms))

    def parse_term(self, sign: float) -> PowLogTerm:
        coeff = 1.0
        if self.peek() not in ("t", "L"):
            coeff = self.number(signed=False)
            if not self.take("*"):
                return PowLogTerm(sign * coeff)  # bare constant
        a, b = self.parse_factors()
        return PowLogTerm(sign * coeff, a, b)

    def parse_factors(self) -> tuple[float, float]:
        a = 0.0
        b = 0.0
        ch = self.peek()
        if ch == "t":
            self.pos += 1
            a = self.number(signed=True) if self.take("^") else 1.0
            if self.take("*"):
                if self.peek() != "L":
                    raise self.error("expected 'L' factor")
                self.pos += 1
                b = self.number(signed=True) if self.take("^") else 1.0
        elif ch == "L":
            self.pos += 1
            b = self.number(signed=True) if self.take("^") else 1.0
        else:
            raise self.error("expected a term ('t', 'L' or a number)")
        return a, b


def parse(expression: str) -> PiecewiseFunction:
    """Parse an expression into a normalized PiecewiseFunction."""
    return _Parser(expression).parse_function()


def _fmt_real(x: float) -> str:
    return repr(float(x))


def _format_term_body(term: PowLogTerm) -> str:
    mag = abs(term.coeff)
    if term.a == 0.0 and term.b == 0.0:
        return _fmt_real(mag)
    factors: list[str] = []
    if mag != 1.0:
        factors.append(_fmt_real(mag))
    if term.a != 0.0:
        factors.append("t" if term.a == 1.0 else f"t^{_fmt_real(term.a)}")
    if term.b != 0.0:
        factors.append("L" if term.b == 1.0 else f"L^{_fmt_real(term.b)}")
    return "*".join(factors)


def _format_sum(ts: TermSum) -> str:
    if ts.is_zero:
        return "0"
    parts: list[str] = []
    for i, term in enumerate(ts.terms):
        body = _format_term_body(term)
        if i == 0:
            parts.append(f"-{body}" if term.coeff < 0 else body)
        else:
            parts.append(f"- {body}" if term.coeff < 0 else f"+ {body}")
    return " ".join(parts)


def format_function(f: PiecewiseFunction) -> str:
    """Canonical text form; parse(format_function(f)) == f."""
    if len(f.pieces) == 1:
        return _format_sum(f.pieces[0])
    segs = []
    for i, piece in enumerate(f.pieces):
        lo, hi = f.breakpoints[i], f.breakpoints[i + 1]
        segs.append(f"[{_fmt_real(lo)},{_fmt_real(hi)}]: {_format_sum(piece)}")
    return "piece" + "; ".join(segs)
