"""Rational functions over Q and a small expression parser for them.

A RatFunc is a reduced quotient of two Poly values with a monic denominator;
reduction uses the monic polynomial gcd, so a pole of the reduced form is a
genuine pole.  The parser accepts the grammar

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary | <juxtaposition>)*
    unary  := '-' unary | power
    power  := atom ('^' INT)*
    atom   := INT | 'z' | '(' expr ')'

with juxtaposition (e.g. "2z", "3(z+1)") read as multiplication and the
Unicode minus accepted alongside '-'.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import DomainError, InputError, Poly, PoleError, Scalar, format_rational


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm (gcd(0, 0) = 0)."""
    while not b.is_zero():
        _, r = a.divmod(b)
        a, b = b, r
    if a.is_zero():
        return a
    return a * (1 / a.coeffs[-1])


@dataclass(frozen=True)
class RatFunc:
    """Reduced rational function num/den with monic den (den never zero)."""

    num: Poly
    den: Poly

    @classmethod
    def make(cls, num: Poly, den: Poly) -> "RatFunc":
        if den.is_zero():
            raise DomainError("rational function with zero denominator")
        g = poly_gcd(num, den)
        if not g.is_zero() and g.degree > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
        lead = den.coeffs[-1]
        if lead != 1:
            num = num * (1 / lead)
            den = den * (1 / lead)
        return cls(num=num, den=den)

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFunc":
        return cls(num=p, den=Poly([1]))

    @classmethod
    def const(cls, c: Scalar) -> "RatFunc":
        return cls(num=Poly([c]), den=Poly([1]))

    # -- field operations ---------------------------------------------------

    def __add__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc.make(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self) -> "RatFunc":
        return RatFunc(num=-self.num, den=self.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return self + (-other)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc.make(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        if other.num.is_zero():
            raise DomainError("division by the zero rational function")
        return RatFunc.make(self.num * other.den, self.den * other.num)

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return RatFunc.const(1) / self ** (-n)
        return RatFunc.make(self.num**n, self.den**n)

    # -- structure ------------------------------------------------------------

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def derivative(self) -> "RatFunc":
        return RatFunc.make(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    # -- evaluation and expansion ----------------------------------------------

    def eval(self, x: Scalar) -> Fraction:
        xf = Fraction(x)
        dv = self.den.eval(xf)
        if dv == 0:
            raise PoleError(xf)
        return self.num.eval(xf) / dv

    def series_coeffs(self, order: int) -> tuple[Fraction, ...]:
        """Taylor coefficients a_0..a_order at 0 by exact long division."""
        d0 = self.den.coeff(0)
        if d0 == 0:
            raise PoleError(Fraction(0), "pole at 0: no series expansion")
        out = [Fraction(0)] * (order + 1)
        for n in range(order + 1):
            acc = self.num.coeff(n)
            for i in range(1, min(n, self.den.degree) + 1):
                acc -= self.den.coeff(i) * out[n - i]
            out[n] = acc / d0
        return tuple(out)

    def __str__(self) -> str:
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num}) / ({self.den})"


# ---------------------------------------------------------------------------
# Expression parser
# ---------------------------------------------------------------------------

_MINUS_VARIANTS = {"−": "-", "–": "-"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Tokens as (kind, text, column); kinds: INT, Z, OP, LPAREN, RPAREN."""
    tokens: list[tuple[str, str, int]] = []
    i = 0
    while i < len(text):
        ch = _MINUS_VARIANTS.get(text[i], text[i])
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            start = i
            while i < len(text) and text[i].isdigit():
                i += 1
            tokens.append(("INT", text[start:i], start))
            continue
        if ch in "zZ":
            tokens.append(("Z", "z", i))
        elif ch in "+-*/^":
            tokens.append(("OP", ch, i))
        elif ch == "(":
            tokens.append(("LPAREN", ch, i))
        elif ch == ")":
            tokens.append(("RPAREN", ch, i))
        else:
            raise InputError(f"unexpected character {text[i]!r} at column {i + 1}")
        i += 1
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise InputError(f"unexpected end of expression: {self.text!r}")
        self.pos += 1
        return tok

    def expect_op(self, op: str) -> None:
        tok = self.take()
        if tok[0] != "OP" or tok[1] != op:
            raise InputError(f"expected {op!r} at column {tok[2] + 1}")

    def parse(self) -> RatFunc:
        value = self.expr()
        tok = self.peek()
        if tok is not None:
            raise InputError(f"trailing input at column {tok[2] + 1}: {tok[1]!r}")
        return value

    def expr(self) -> RatFunc:
        value = self.term()
        while True:
            tok = self.peek()
            if tok and tok[0] == "OP" and tok[1] in "+-":
                self.take()
                rhs = self.term()
                value = value + rhs if tok[1] == "+" else value - rhs
            else:
                return value

    def term(self) -> RatFunc:
        value = self.unary()
        while True:
            tok = self.peek()
            if tok and tok[0] == "OP" and tok[1] in "*/":
                self.take()
                rhs = self.unary()
                if tok[1] == "*":
                    value = value * rhs
                else:
                    if rhs.num.is_zero():
                        raise InputError(
                            f"division by zero at column {tok[2] + 1}"
                        )
                    value = value / rhs
            elif tok and tok[0] in ("INT", "Z", "LPAREN"):
                value = value * self.unary()
            else:
                return value

    def unary(self) -> RatFunc:
        tok = self.peek()
        if tok and tok[0] == "OP" and tok[1] == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self) -> RatFunc:
        value = self.atom()
        while True:
            tok = self.peek()
            if tok and tok[0] == "OP" and tok[1] == "^":
                self.take()
                exp_tok = self.take()
                if exp_tok[0] != "INT":
                    raise InputError(
                        f"expected an integer exponent at column {exp_tok[2] + 1}"
                    )
                value = value ** int(exp_tok[1])
            else:
                return value

    def atom(self) -> RatFunc:
        tok = self.take()
        if tok[0] == "INT":
            return RatFunc.const(int(tok[1]))
        if tok[0] == "Z":
            return RatFunc.from_poly(Poly([0, 1]))
        if tok[0] == "LPAREN":
            value = self.expr()
            close = self.take()
            if close[0] != "RPAREN":
                raise InputError(f"expected ')' at column {close[2] + 1}")
            return value
        raise InputError(f"unexpected token {tok[1]!r} at column {tok[2] + 1}")


def parse_ratfunc(text: str) -> RatFunc:
    """Parse a rational-function expression in z."""
    if not text.strip():
        raise InputError("empty expression")
    return _Parser(text).parse()
