"""Dense univariate polynomials over Q."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from ._parse import PolynomialSyntaxError, parse_terms
from .arith import as_rational, canonical_key, divisors, fmt, lcm_of_denominators, rational_sqrt

__all__ = ["UPoly", "RootSet", "parse_poly", "poly_gcd", "rational_roots", "PolynomialSyntaxError"]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class UPoly:
    """Immutable polynomial with Fraction coefficients, lowest degree first.

    The coefficient tuple never has trailing zeros, so the zero polynomial
    is ``()`` and equality is tuple equality.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def _raw(cls, cs: list) -> "UPoly":
        # caller guarantees Fractions; only trims
        while cs and cs[-1] == 0:
            cs.pop()
        obj = cls.__new__(cls)
        obj.coeffs = tuple(cs)
        return obj

    @classmethod
    def constant(cls, c) -> "UPoly":
        return cls([c])

    @classmethod
    def monomial(cls, c, e: int) -> "UPoly":
        if e < 0:
            raise ValueError("negative exponent")
        return cls([0] * e + [c])

    @classmethod
    def x(cls) -> "UPoly":
        return cls([0, 1])

    # -- basic properties ---------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, e: int) -> Fraction:
        return self.coeffs[e] if 0 <= e < len(self.coeffs) else _ZERO

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, x):
        acc = _ZERO if isinstance(x, (int, Fraction)) else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "UPoly":
        if isinstance(other, UPoly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return UPoly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "UPoly":
        return UPoly._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return UPoly._raw([c * other for c in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UPoly()
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return UPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "UPoly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result, base = UPoly([1]), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other) -> tuple["UPoly", "UPoly"]:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("zero divisor")
        rem = list(self.coeffs)
        dg = other.degree
        if len(rem) - 1 < dg:
            return UPoly(), self
        inv = 1 / other.lead
        quo = [_ZERO] * (len(rem) - dg)
        div = other.coeffs
        for i in range(len(rem) - 1, dg - 1, -1):
            c = rem[i] * inv
            quo[i - dg] = c
            if c:
                for j in range(dg + 1):
                    rem[i - dg + j] -= c * div[j]
        return UPoly._raw(quo), UPoly._raw(rem[:dg])

    def __floordiv__(self, other) -> "UPoly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "UPoly":
        return divmod(self, other)[1]

    def exact_div(self, other) -> "UPoly":
        """Quotient of an exact division; raises ValueError on a remainder."""
        quo, rem = divmod(self, other)
        if not rem.is_zero():
            raise ValueError("division is not exact")
        return quo

    def __truediv__(self, other) -> "UPoly":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise ZeroDivisionError("zero divisor")
            return self * (1 / Fraction(other))
        return NotImplemented

    # -- derived polynomials ------------------------------------------------

    def monic(self) -> "UPoly":
        if self.is_zero():
            return self
        return self / self.lead

    def derivative(self) -> "UPoly":
        return UPoly._raw([c * i for i, c in enumerate(self.coeffs)][1:])

    def reverse(self, n: int | None = None) -> "UPoly":
        """``x^n f(1/x)``; ``n`` defaults to the degree."""
        if n is None:
            n = self.degree
        if n < self.degree:
            raise ValueError("reversal degree below polynomial degree")
        padded = list(self.coeffs) + [_ZERO] * (n + 1 - len(self.coeffs))
        return UPoly._raw(padded[::-1])

    def compose_scale(self, s) -> "UPoly":
        """``f(s*x)``."""
        s = as_rational(s)
        out, power = [], _ONE
        for c in self.coeffs:
            out.append(c * power)
            power *= s
        return UPoly._raw(out)

    def integer_form(self) -> tuple[Fraction, list[int]]:
        """Return ``(scale, ints)`` with ``self == scale * sum(ints[i] x^i)``.

        ``ints`` is primitive with positive leading entry.
        """
        if self.is_zero():
            return _ZERO, []
        d = lcm_of_denominators(self.coeffs)
        ints = [int(c * d) for c in self.coeffs]
        g = 0
        for v in ints:
            g = _gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, d), [v // g for v in ints]

    # -- rendering ----------------------------------------------------------

    def to_string(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if c == 0:
                continue
            a = abs(c)
            if e == 0:
                body = fmt(a)
            else:
                mono = var if e == 1 else f"{var}^{e}"
                if a == 1:
                    body = mono
                elif a.denominator == 1:
                    body = f"{a.numerator}{mono}"
                else:
                    body = f"{fmt(a)} {mono}"
            if not parts:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f" {'-' if c < 0 else '+'} {body}")
        return "".join(parts)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"UPoly({self.to_string()!r})"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def parse_poly(text: str, var: str = "x") -> UPoly:
    """Parse text such as ``"x^5 - 3x^2 + x + 1"`` or ``"37/18 x^2"``."""
    terms = parse_terms(text, (var,))
    if not terms:
        return UPoly()
    deg = max(e for (e,) in terms)
    cs = [_ZERO] * (deg + 1)
    for (e,), c in terms.items():
        cs[e] = c
    return UPoly._raw(cs)


def poly_gcd(f: UPoly, g: UPoly) -> UPoly:
    """Monic gcd (zero if both inputs are zero)."""
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


class RootSet(NamedTuple):
    """Distinct rational roots, ordered by (height, value).

    ``complete`` is False when a coefficient could not be fully factored,
    in which case some roots may be missing.
    """

    roots: list
    complete: bool


def rational_roots(f: UPoly) -> RootSet:
    """All rational roots of ``f`` via the rational root theorem.

    Degree <= 2 is solved directly.  The zero polynomial has no finite
    root set and raises ValueError.
    """
    if f.is_zero():
        raise ValueError("the zero polynomial vanishes everywhere")
    roots: list[Fraction] = []
    cs = list(f.coeffs)
    if cs[0] == 0:
        roots.append(_ZERO)
        while cs[0] == 0:
            cs.pop(0)
    g = UPoly._raw(cs)
    complete = True
    if g.degree == 1:
        roots.append(-g.coeffs[0] / g.coeffs[1])
    elif g.degree == 2:
        c0, c1, c2 = g.coeffs
        s = rational_sqrt(c1 * c1 - 4 * c0 * c2)
        if s is not None:
            roots.extend({(-c1 + s) / (2 * c2), (-c1 - s) / (2 * c2)})
    elif g.degree > 2:
        _, ints = g.integer_form()
        lead_divs, ok1 = divisors(ints[-1])
        const_divs, ok2 = divisors(ints[0])
        complete = ok1 and ok2
        seen = set()
        for u in const_divs:
            for v in lead_divs:
                for cand in (Fraction(u, v), Fraction(-u, v)):
                    if cand in seen:
                        continue
                    seen.add(cand)
                    if _int_eval(ints, cand) == 0:
                        roots.append(cand)
    return RootSet(sorted(set(roots), key=canonical_key), complete)


def _int_eval(ints: Sequence[int], x: Fraction) -> int:
    # homogenised evaluation avoids Fraction overhead: v^d f(u/v)
    u, v = x.numerator, x.denominator
    acc = 0
    vp = 1
    d = len(ints) - 1
    for i in range(d, -1, -1):
        acc = acc * u + ints[i] * vp
        vp *= v
    return acc
