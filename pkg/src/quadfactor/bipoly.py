"""Sparse polynomials in two variables ``p`` and ``q`` over Q.

The eliminant conditions live here.  Resultants in ``p`` are computed as
Sylvester determinants over Q[q] with fraction-free (Bareiss) elimination,
so every intermediate entry stays a polynomial.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping

from ._parse import parse_terms
from .arith import as_rational, fmt, lcm_of_denominators
from .upoly import UPoly

_ZERO = Fraction(0)


class BiPoly:
    """Immutable map ``{(i, j): c}`` meaning ``sum c * p^i * q^j``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in items:
            if i < 0 or j < 0:
                raise ValueError("negative exponent")
            c = as_rational(c)
            acc[(i, j)] = acc.get((i, j), _ZERO) + c
        self.terms = {k: v for k, v in acc.items() if v != 0}

    @classmethod
    def _raw(cls, terms: dict) -> "BiPoly":
        obj = cls.__new__(cls)
        obj.terms = {k: v for k, v in terms.items() if v != 0}
        return obj

    @classmethod
    def P(cls) -> "BiPoly":
        return cls._raw({(1, 0): Fraction(1)})

    @classmethod
    def Q(cls) -> "BiPoly":
        return cls._raw({(0, 1): Fraction(1)})

    @classmethod
    def const(cls, c) -> "BiPoly":
        return cls._raw({(0, 0): as_rational(c)})

    # -- properties ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def deg_p(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    @property
    def deg_q(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def __eq__(self, other) -> bool:
        if isinstance(other, BiPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == BiPoly.const(other).terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return BiPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, _ZERO) + v
        return BiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "BiPoly":
        return BiPoly._raw({k: -v for k, v in self.terms.items()})

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
            return BiPoly._raw({k: v * other for k, v in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, _ZERO) + c1 * c2
        return BiPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "BiPoly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result, base = BiPoly.const(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- evaluation and slicing -------------------------------------------

    def eval_at(self, p, q) -> Fraction:
        p, q = as_rational(p), as_rational(q)
        return sum((c * p**i * q**j for (i, j), c in self.terms.items()), _ZERO)

    def coeffs_in_p(self) -> list[UPoly]:
        """``[c_0(q), c_1(q), ...]`` with ``self = sum c_i(q) p^i``."""
        rows: list[list[Fraction]] = [[] for _ in range(self.deg_p + 1)]
        for (i, j), c in self.terms.items():
            row = rows[i]
            if len(row) <= j:
                row.extend([_ZERO] * (j + 1 - len(row)))
            row[j] = c
        return [UPoly._raw(r) for r in rows]

    def coeffs_in_q(self) -> list[UPoly]:
        return self.swap().coeffs_in_p()

    def at_q(self, q) -> UPoly:
        """Specialise ``q`` and return a polynomial in ``p``."""
        q = as_rational(q)
        return UPoly._raw([c(q) for c in self.coeffs_in_p()])

    def at_p(self, p) -> UPoly:
        """Specialise ``p`` and return a polynomial in ``q``."""
        return self.swap().at_q(p)

    def substitute_p(self, num: UPoly, den: UPoly | None = None) -> UPoly:
        """Numerator of ``self(num(q)/den(q), q)`` cleared by ``den^deg_p``."""
        if den is None:
            den = UPoly([1])
        cs = self.coeffs_in_p()
        d = len(cs) - 1
        out = UPoly()
        for i, c in enumerate(cs):
            if c:
                out = out + c * num**i * den ** (d - i)
        return out

    def swap(self) -> "BiPoly":
        return BiPoly._raw({(j, i): c for (i, j), c in self.terms.items()})

    def diff_p(self) -> "BiPoly":
        return BiPoly._raw({(i - 1, j): c * i for (i, j), c in self.terms.items() if i})

    def diff_q(self) -> "BiPoly":
        return self.swap().diff_p().swap()

    # -- normal form --------------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple[int, int], Fraction]]:
        """Terms by descending p-degree, then descending q-degree."""
        return sorted(self.terms.items(), key=lambda kv: (-kv[0][0], -kv[0][1]))

    def normalize(self) -> "BiPoly":
        """Primitive integer multiple with positive leading term."""
        if self.is_zero():
            return self
        d = lcm_of_denominators(self.terms.values())
        ints = {k: int(v * d) for k, v in self.terms.items()}
        g = 0
        for v in ints.values():
            g = math.gcd(g, v)
        if self.sorted_terms()[0][1] < 0:
            g = -g
        return BiPoly._raw({k: Fraction(v // g) for k, v in ints.items()})

    def is_multiple_of(self, other: "BiPoly") -> bool:
        """True if ``self = c * other`` for a nonzero rational ``c``."""
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.normalize() == other.normalize()

    # -- rendering ----------------------------------------------------------

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in self.sorted_terms():
            mono = []
            if i:
                mono.append("p" if i == 1 else f"p^{i}")
            if j:
                mono.append("q" if j == 1 else f"q^{j}")
            a = abs(c)
            if not mono:
                body = fmt(a)
            elif a == 1:
                body = "*".join(mono)
            else:
                body = "*".join([fmt(a)] + mono)
            if not parts:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f" {'-' if c < 0 else '+'} {body}")
        return "".join(parts)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"BiPoly({self.to_string()!r})"


def parse_bipoly(text: str) -> BiPoly:
    """Parse text in ``p`` and ``q`` such as ``"p^2*q^2 - q^3 + p - q"``."""
    return BiPoly._raw(parse_terms(text, ("p", "q")))


# -- resultants ---------------------------------------------------------------

def sylvester_matrix(f: BiPoly, g: BiPoly) -> list[list[UPoly]]:
    """Sylvester matrix of ``f`` and ``g`` as polynomials in ``p``."""
    a = f.coeffs_in_p()[::-1]
    b = g.coeffs_in_p()[::-1]
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    zero = UPoly()
    rows = []
    for i in range(n):
        rows.append([zero] * i + a + [zero] * (size - i - m - 1))
    for i in range(m):
        rows.append([zero] * i + b + [zero] * (size - i - n - 1))
    return rows


def bareiss_det(matrix: list[list[UPoly]]) -> UPoly:
    """Determinant over Q[q] by fraction-free elimination with row swaps."""
    M = [list(row) for row in matrix]
    n = len(M)
    if n == 0:
        return UPoly([1])
    sign = 1
    prev = UPoly([1])
    for k in range(n - 1):
        if M[k][k].is_zero():
            for i in range(k + 1, n):
                if not M[i][k].is_zero():
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return UPoly()
        pivot = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            row_i, row_k = M[i], M[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]).exact_div(prev)
        prev = pivot
    return M[n - 1][n - 1] * sign


def resultant_p(f: BiPoly, g: BiPoly) -> UPoly:
    """``Res_p(f, g)`` as a polynomial in ``q``."""
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant with the zero polynomial")
    if f.deg_p == 0 and g.deg_p == 0:
        raise ValueError("nothing to eliminate: both inputs are free of p")
    return bareiss_det(sylvester_matrix(f, g))
