"""
Polynomial text input and output.

Grammar (no implicit multiplication, exponents are integer literals):

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INT)?
    atom   := INT | "x" | "y" | "(" expr ")"

so "-x^2" is -(x^2). The printer emits text in the same grammar.
"""
import re
from typing import Annotated, List, Tuple, Union

from pydantic import BaseModel, Field, ValidationError

from .errors import PolynomialParseError
from .poly import BiPoly, UniPoly

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([xy])|([-+*^()]))")


def tokenize(text):
    tokens = []
    pos = 0
    while True:
        match = _TOKEN_RE.match(text, pos)
        if not match:
            rest = len(text) - len(text[pos:].lstrip())
            if rest == len(text):
                tokens.append(("END", None, len(text)))
                return tokens
            raise PolynomialParseError(f"unexpected character {text[rest]!r}", rest)
        start = match.start(match.lastindex)
        if match.group(1) is not None:
            tokens.append(("INT", int(match.group(1)), start))
        elif match.group(2) is not None:
            tokens.append(("VAR", match.group(2), start))
        else:
            tokens.append((match.group(3), None, start))
        pos = match.end()


class _Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self):
        return self.tokens[self.index]

    def advance(self):
        token = self.tokens[self.index]
        self.index += 1
        return token

    def fail(self, expected):
        kind, value, pos = self.current
        found = "end of input" if kind == "END" else repr(value if value is not None else kind)
        raise PolynomialParseError(f"expected {expected}, found {found}", pos)

    def parse(self):
        result = self.expr()
        if self.current[0] != "END":
            self.fail("an operator or end of input")
        return result

    def expr(self):
        acc = self.term()
        while self.current[0] in ("+", "-"):
            op = self.advance()[0]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while self.current[0] == "*":
            self.advance()
            acc = acc * self.unary()
        return acc

    def unary(self):
        if self.current[0] == "-":
            self.advance()
            return -self.unary()
        if self.current[0] == "+":
            self.advance()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.current[0] == "^":
            self.advance()
            if self.current[0] != "INT":
                self.fail("an integer exponent")
            base = base ** self.advance()[1]
        return base

    def atom(self):
        kind, value, _ = self.current
        if kind == "INT":
            self.advance()
            return BiPoly.constant(value)
        if kind == "VAR":
            self.advance()
            return BiPoly.x() if value == "x" else BiPoly.y()
        if kind == "(":
            self.advance()
            inner = self.expr()
            if self.current[0] != ")":
                self.fail("')'")
            self.advance()
            return inner
        self.fail("a number, x, y or '('")


def parse_poly(text):
    """Parses polynomial text; raises PolynomialParseError with the offending offset."""
    return _Parser(text).parse()


class MonomialList(BaseModel):
    """{"monomials": [[i, j, "coeff"], ...]} meaning sum coeff * x^i * y^j."""

    monomials: List[
        Tuple[
            Annotated[int, Field(ge=0)],
            Annotated[int, Field(ge=0)],
            Union[int, Annotated[str, Field(pattern=r"^\s*[+-]?\d+\s*$")]],
        ]
    ]


def parse_monomial_json(text):
    try:
        data = MonomialList.model_validate_json(text)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(part) for part in first["loc"])
        raise PolynomialParseError(f"invalid monomial list ({where}: {first['msg']})", 0)
    return BiPoly.from_terms((i, j, int(c)) for i, j, c in data.monomials)


def _monomial(powers):
    factors = []
    for var, exp in powers:
        if exp == 1:
            factors.append(var)
        elif exp > 1:
            factors.append(f"{var}^{exp}")
    return "*".join(factors)


def _join(items):
    """items: (coefficient, monomial text) pairs, highest degree first."""
    out = []
    for c, mono in items:
        mag = abs(c)
        body = mono if mono and mag == 1 else (f"{mag}*{mono}" if mono else str(mag))
        if not out:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(out) or "0"


def format_poly(p):
    """Text for a BiPoly, terms by descending total degree then x-degree."""
    keys = sorted(p.terms, key=lambda ij: (-(ij[0] + ij[1]), -ij[0]))
    return _join((p.terms[(i, j)], _monomial((("x", i), ("y", j)))) for i, j in keys)


def format_uni(p, var="x"):
    return _join(
        (c, _monomial(((var, k),))) for k, c in reversed(list(enumerate(p.coeffs))) if c
    )
