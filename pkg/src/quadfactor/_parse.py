"""Tokenizer shared by the univariate and bivariate polynomial parsers.

Accepted syntax: signed sums of terms, each term an optional rational
coefficient followed by variable powers, with optional ``*`` between
factors and ``^`` (or ``**``) for exponents.  Whitespace is ignored.
"""

from __future__ import annotations

from fractions import Fraction


class PolynomialSyntaxError(ValueError):
    """Malformed polynomial text; ``position`` is a 0-based column."""

    def __init__(self, message: str, position: int, text: str):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.position = position
        self.text = text


def parse_terms(text: str, variables: tuple[str, ...]) -> dict[tuple[int, ...], Fraction]:
    """Parse ``text`` into a map from exponent tuples to coefficients."""
    # keep original columns so errors point into the caller's string
    chars = [(ch, i) for i, ch in enumerate(text) if not ch.isspace()]
    end = len(text)
    pos = 0

    def peek(k: int = 0) -> str:
        return chars[pos + k][0] if pos + k < len(chars) else ""

    def column() -> int:
        return chars[pos][1] if pos < len(chars) else end

    def fail(message: str) -> PolynomialSyntaxError:
        return PolynomialSyntaxError(message, column(), text)

    def read_int() -> int:
        nonlocal pos
        start = pos
        while peek().isdigit():
            pos += 1
        if pos == start:
            raise fail("expected digits")
        return int("".join(ch for ch, _ in chars[start:pos]))

    if not chars:
        raise fail("empty polynomial")

    terms: dict[tuple[int, ...], Fraction] = {}
    first = True
    while pos < len(chars):
        sign = 1
        if peek() in "+-":
            sign = -1 if peek() == "-" else 1
            pos += 1
        elif not first:
            raise fail(f"expected '+' or '-', found {peek()!r}")
        first = False

        coeff = Fraction(sign)
        have_coeff = False
        if peek().isdigit():
            num = read_int()
            den = 1
            if peek() == ".":
                raise fail("decimal coefficients are not exact; use u/v")
            if peek() == "/":
                pos += 1
                den_col = column()
                den = read_int()
                if den == 0:
                    raise PolynomialSyntaxError("zero denominator", den_col, text)
            coeff *= Fraction(num, den)
            have_coeff = True

        exps = [0] * len(variables)
        have_factor = False
        while True:
            if peek() == "*" and peek(1) != "*":
                if not (have_coeff or have_factor):
                    raise fail("unexpected '*'")
                pos += 1
                if peek() not in variables:
                    raise fail("expected a variable after '*'")
            ch = peek()
            if ch not in variables or ch == "":
                break
            pos += 1
            e = 1
            if peek() == "^" or (peek() == "*" and peek(1) == "*"):
                pos += 1 if peek() == "^" else 2
                if peek() in ("-", "+"):
                    raise fail("exponents must be nonnegative integers")
                e = read_int()
                if peek() in ("/", "."):
                    raise fail("exponents must be nonnegative integers")
            exps[variables.index(ch)] += e
            have_factor = True

        if not (have_coeff or have_factor):
            found = peek()
            raise fail(f"unexpected {found!r}" if found else "unexpected end of input")
        key = tuple(exps)
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return {k: v for k, v in terms.items() if v != 0}
