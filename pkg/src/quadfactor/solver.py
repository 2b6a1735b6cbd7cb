"""Quadratic factors of quadrinomials.

Three tools built on the ``(A_n, B_n)`` reduction:

* :func:`find_quadratic_factors` lists every monic rational quadratic
  divisor of a given polynomial;
* :func:`pattern_sweep` searches a coefficient pattern over all ``(p, q)``
  of bounded height and solves for the free coefficient ``a``;
* :func:`eliminate` removes ``a`` symbolically and returns the curve in
  ``(p, q)`` on which solutions must lie.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .arith import DEFAULT_RHO_BUDGET, as_rational, canonical_key, divisors, fmt, lcm_of_denominators, rationals_up_to
from .bipoly import BiPoly
from .modred import numeric_sequence, symbolic_sequence
from .upoly import UPoly, poly_gcd, rational_roots


class Pattern(enum.Enum):
    """Which of ``(a, b, c)`` is the free parameter ``a`` and which are 1."""

    A11 = "a11"   # (a, 1, 1)
    AA1 = "aa1"   # (a, a, 1)
    A1A = "a1a"   # (a, 1, a)
    ONE_AA = "1aa"  # (1, a, a)

    @classmethod
    def parse(cls, text: str) -> "Pattern":
        key = text.strip().lower()
        for member in cls:
            if member.value == key or member.name.lower() == key:
                return member
        raise ValueError(f"unknown pattern {text!r}; expected one of a11, aa1, a1a, 1aa")

    @property
    def label(self) -> str:
        return {"a11": "A11", "aa1": "AA1", "a1a": "A1A", "1aa": "1AA"}[self.value]

    def coefficients(self, a):
        """``(a, b, c)`` of the quadrinomial for this pattern."""
        one = Fraction(1)
        return {
            Pattern.A11: (a, one, one),
            Pattern.AA1: (a, a, one),
            Pattern.A1A: (a, one, a),
            Pattern.ONE_AA: (one, a, a),
        }[self]

    def free_coefficient(self, f: "Quadrinomial") -> Fraction:
        """Read ``a`` back from a quadrinomial of this pattern."""
        return f.b if self is Pattern.ONE_AA else f.a

    def linear_parts(self, n: int, m: int, k: int, A: Sequence, B: Sequence):
        """Split the two divisibility conditions as ``L0 + a L1`` and ``C0 + a C1``.

        ``A`` and ``B`` are indexable by exponent and may hold rationals,
        polynomials or numpy arrays.
        """
        if self is Pattern.A11:
            return A[n] + A[k], A[m], B[n] + B[k] + 1, B[m]
        if self is Pattern.AA1:
            return A[n], A[m] + A[k], B[n] + 1, B[m] + B[k]
        if self is Pattern.A1A:
            return A[n] + A[k], A[m], B[n] + B[k], B[m] + 1
        return A[n] + A[m], A[k], B[n] + B[m], B[k] + 1


def check_exponents(n: int, m: int, k: int) -> None:
    if not (n > m > k >= 1):
        raise ValueError(f"exponents must satisfy n > m > k >= 1, got ({n}, {m}, {k})")
    if n < 4:
        raise ValueError(f"degree must be at least 4, got {n}")


@dataclass(frozen=True)
class QuadraticFactor:
    p: Fraction
    q: Fraction

    def __post_init__(self):
        object.__setattr__(self, "p", as_rational(self.p))
        object.__setattr__(self, "q", as_rational(self.q))

    def to_upoly(self) -> UPoly:
        return UPoly([self.q, self.p, 1])

    def sort_key(self):
        return canonical_key(self.q) + canonical_key(self.p)

    def __str__(self) -> str:
        return self.to_upoly().to_string()


@dataclass(frozen=True)
class Quadrinomial:
    """``x^n + a x^m + b x^k + c`` with ``n > m > k >= 1``, ``n >= 4``, ``abc != 0``."""

    n: int
    m: int
    k: int
    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        check_exponents(self.n, self.m, self.k)
        for name in ("a", "b", "c"):
            value = as_rational(getattr(self, name))
            if value == 0:
                raise ValueError(f"coefficient {name} must be nonzero")
            object.__setattr__(self, name, value)

    @classmethod
    def from_pattern(cls, pattern: Pattern, n: int, m: int, k: int, a) -> "Quadrinomial":
        return cls(n, m, k, *pattern.coefficients(as_rational(a)))

    @classmethod
    def from_upoly(cls, f: UPoly) -> "Quadrinomial":
        support = [e for e, c in enumerate(f.coeffs) if c]
        if len(support) != 4 or support[0] != 0 or f.lead != 1:
            raise ValueError(f"{f} is not a monic quadrinomial with nonzero constant term")
        k, m, n = support[1], support[2], support[3]
        return cls(n, m, k, f.coeffs[m], f.coeffs[k], f.coeffs[0])

    def to_upoly(self) -> UPoly:
        cs = [Fraction(0)] * (self.n + 1)
        cs[self.n], cs[self.m], cs[self.k], cs[0] = Fraction(1), self.a, self.b, self.c
        return UPoly(cs)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self.to_upoly().coeffs

    def reversed(self) -> "Quadrinomial":
        """``x^n f(1/x) / c``: exponents ``(n, n-k, n-m)``, coefficients ``(b, a, 1)/c``."""
        return Quadrinomial(self.n, self.n - self.k, self.n - self.m,
                            self.b / self.c, self.a / self.c, 1 / self.c)

    def __str__(self) -> str:
        return self.to_upoly().to_string()


def reverse_factor(factor: QuadraticFactor) -> QuadraticFactor:
    """Image of ``x^2 + p x + q`` under ``x -> 1/x``, made monic."""
    if factor.q == 0:
        raise ValueError("x divides the factor; it has no reversal")
    return QuadraticFactor(factor.p / factor.q, 1 / factor.q)


# -- complete factor search ---------------------------------------------------

class FactorResult(NamedTuple):
    factor: QuadraticFactor
    cofactor: UPoly
    multiplicity: int


class SearchIncomplete(RuntimeError):
    """Integer factoring ran out of budget; ``partial`` holds what was found."""

    def __init__(self, message: str, partial: list):
        super().__init__(message)
        self.partial = partial


def find_quadratic_factors(f, budget: int = DEFAULT_RHO_BUDGET) -> list[FactorResult]:
    """Every monic quadratic ``x^2 + p x + q`` over Q dividing ``f``.

    ``f`` is a :class:`Quadrinomial` or any :class:`UPoly` of degree >= 2
    with nonzero constant term.  Substituting ``x = y/d`` (``d`` the lcm of
    denominators of the monic form) gives a monic integer polynomial whose
    monic quadratic factors have integer coefficients, so ``d^2 q`` divides
    its constant term.  For each such ``q`` the admissible ``p`` are the
    common rational roots of the two remainder coefficients.
    """
    if isinstance(f, Quadrinomial):
        f = f.to_upoly()
    if not isinstance(f, UPoly):
        raise TypeError("expected a Quadrinomial or UPoly")
    if f.degree < 2:
        raise ValueError("polynomial degree must be at least 2")
    if f.coeffs[0] == 0:
        raise ValueError("constant term must be nonzero")
    g = f.monic()
    n = g.degree
    d = lcm_of_denominators(g.coeffs)
    h0 = int(g.coeffs[0] * d**n)
    qdivs, complete = divisors(h0, budget)

    seq = symbolic_sequence(n)
    SA = BiPoly()
    SB = BiPoly()
    for i, c in enumerate(g.coeffs):
        if c:
            SA = SA + seq[i][0] * c
            SB = SB + seq[i][1] * c

    found: list[FactorResult] = []
    for Q in qdivs:
        for q in (Fraction(Q, d * d), Fraction(-Q, d * d)):
            common = poly_gcd(SA.at_q(q), SB.at_q(q))
            if common.degree < 1:
                continue
            roots, ok = rational_roots(common)
            complete = complete and ok
            for p in roots:
                factor = QuadraticFactor(p, q)
                quad = factor.to_upoly()
                cofactor = g.exact_div(quad)
                mult = 1
                rest = cofactor
                while rest.degree >= 2:
                    quo, rem = divmod(rest, quad)
                    if rem:
                        break
                    mult += 1
                    rest = quo
                found.append(FactorResult(factor, f.exact_div(quad), mult))
    found.sort(key=lambda r: r.factor.sort_key())
    if not complete:
        raise SearchIncomplete("integer factoring budget exhausted; list may be partial", found)
    return found


# -- solving for the free coefficient ------------------------------------------

UNIQUE = "unique"
UNDETERMINED = "undetermined"
INCONSISTENT = "inconsistent"


def solve_linear_pair(L0, L1, C0, C1) -> tuple[str, Optional[Fraction]]:
    """Solve ``L0 + a L1 = 0`` and ``C0 + a C1 = 0`` for ``a``."""
    if L1 != 0:
        a = -L0 / L1
        return (UNIQUE, a) if C0 + a * C1 == 0 else (INCONSISTENT, None)
    if L0 != 0:
        return INCONSISTENT, None
    if C1 != 0:
        return UNIQUE, -C0 / C1
    if C0 == 0:
        return UNDETERMINED, None
    return INCONSISTENT, None


def solve_coefficient(pattern: Pattern, n: int, m: int, k: int, p, q) -> tuple[str, Optional[Fraction]]:
    """Value of ``a`` making ``x^2 + p x + q`` divide the pattern's quadrinomial."""
    A, B = numeric_sequence(n, p, q)
    return solve_linear_pair(*pattern.linear_parts(n, m, k, A, B))


def is_valid_member(pattern: Pattern, n: int, m: int, k: int, p, q, a) -> bool:
    """True if ``(p, q, a)`` is a genuine solution: ``q, a != 0`` and divisibility."""
    p, q, a = as_rational(p), as_rational(q), as_rational(a)
    if q == 0 or a == 0:
        return False
    f = Quadrinomial.from_pattern(pattern, n, m, k, a).to_upoly()
    return not (f % UPoly([q, p, 1]))


@dataclass
class SweepResult:
    pattern: Pattern
    exponents: tuple[int, int, int]
    height: int
    solutions: list[tuple[QuadraticFactor, Fraction]] = field(default_factory=list)
    undetermined: list[QuadraticFactor] = field(default_factory=list)
    zero_a: list[QuadraticFactor] = field(default_factory=list)
    pairs: int = 0
    candidates: int = 0
    a_from_constant_equation: int = 0

    def as_triples(self) -> set[tuple[Fraction, Fraction, Fraction]]:
        return {(f.p, f.q, a) for f, a in self.solutions}


def _float_sequences(n, pf, qf):
    zeros = np.zeros(np.broadcast(pf, qf).shape)
    A = [zeros, zeros + 1.0]
    B = [zeros + 1.0, zeros]
    for _ in range(2, n + 1):
        A.append(-pf * A[-1] - qf * A[-2])
        B.append(-pf * B[-1] - qf * B[-2])
    return A, B


def _sweep_block(pattern, n, m, k, q_block, p_values, pf_row):
    qf = np.array([float(q) for q in q_block])[:, None]
    A, B = _float_sequences(n, pf_row, qf)
    # the same recurrence on magnitudes bounds every rounding error
    Ab, Bb = _float_sequences(n, np.abs(pf_row), np.abs(qf))
    Ab = [np.abs(x) for x in Ab]
    Bb = [np.abs(x) for x in Bb]
    L0, L1, C0, C1 = pattern.linear_parts(n, m, k, A, B)
    L0b, L1b, C0b, C1b = pattern.linear_parts(n, m, k, Ab, Bb)
    resid = np.abs(L0 * C1 - L1 * C0)
    scale = L0b * C1b + L1b * C0b
    rows, cols = np.nonzero(resid <= 1e-9 * scale)
    out = []
    for r, c in zip(rows.tolist(), cols.tolist()):
        p, q = p_values[c], q_block[r]
        A_ex, B_ex = numeric_sequence(n, p, q)
        parts = pattern.linear_parts(n, m, k, A_ex, B_ex)
        status, a = solve_linear_pair(*parts)
        out.append((QuadraticFactor(p, q), status, a, parts[1] == 0))
    return out


def pattern_sweep(pattern: Pattern, n: int, m: int, k: int, height: int, *,
                  threads: int = 1, block: int = 64) -> SweepResult:
    """All ``(p, q, a)`` with ``height(p), height(q) <= height`` and ``q, a != 0``.

    Each ``(p, q)`` is screened in floating point against the eliminant
    with a rigorous magnitude bound and every survivor is decided exactly.
    ``a`` comes from the linear-coefficient equation, or from the constant
    equation where the former has zero ``a``-coefficient.  Points where
    both equations vanish for every ``a`` are listed as ``undetermined``.
    """
    check_exponents(n, m, k)
    if height < 1:
        raise ValueError("height bound must be >= 1")
    values = list(rationals_up_to(height))
    qs = [v for v in values if v != 0]
    pf_row = np.array([float(v) for v in values])[None, :]
    blocks = [qs[i : i + block] for i in range(0, len(qs), block)]

    def work(qb):
        return _sweep_block(pattern, n, m, k, qb, values, pf_row)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(work, blocks))
    else:
        chunks = [work(b) for b in blocks]

    result = SweepResult(pattern, (n, m, k), height, pairs=len(values) * len(qs))
    for chunk in chunks:
        for factor, status, a, from_constant in chunk:
            result.candidates += 1
            if status == UNDETERMINED:
                result.undetermined.append(factor)
            elif status == UNIQUE:
                if a == 0:
                    result.zero_a.append(factor)
                else:
                    result.solutions.append((factor, a))
                    result.a_from_constant_equation += from_constant
    result.solutions.sort(key=lambda s: s[0].sort_key())
    result.undetermined.sort(key=QuadraticFactor.sort_key)
    result.zero_a.sort(key=QuadraticFactor.sort_key)
    return result


# -- elimination ---------------------------------------------------------------

def elimination_system(pattern: Pattern, n: int, m: int, k: int) -> tuple[BiPoly, BiPoly, BiPoly, BiPoly]:
    """``(L0, L1, C0, C1)`` in Z[p, q] for the pattern."""
    check_exponents(n, m, k)
    seq = symbolic_sequence(n)
    A = [s[0] for s in seq]
    B = [s[1] for s in seq]
    return pattern.linear_parts(n, m, k, A, B)


def eliminate(pattern: Pattern, n: int, m: int, k: int) -> BiPoly:
    """Normalised ``L0*C1 - L1*C0``: the curve carrying every solution."""
    L0, L1, C0, C1 = elimination_system(pattern, n, m, k)
    if L1.is_zero() and C1.is_zero():
        raise ValueError("a not determined: it cancels from both conditions")
    condition = L0 * C1 - L1 * C0
    if condition.is_zero():
        raise ValueError("a not determined: the conditions are proportional")
    return condition.normalize()


def excluded_loci(pattern: Pattern, n: int, m: int, k: int) -> dict[str, BiPoly]:
    """Curves where one of the ``a``-coefficients vanishes.

    On these the eliminant may vanish without a consistent ``a``.
    """
    _, L1, _, C1 = elimination_system(pattern, n, m, k)
    return {"linear": L1.normalize(), "constant": C1.normalize()}


def describe_solution(pattern: Pattern, exponents, factor: QuadraticFactor, a: Fraction) -> dict:
    n, m, k = exponents
    f = Quadrinomial.from_pattern(pattern, n, m, k, a)
    cof = f.to_upoly().exact_div(factor.to_upoly())
    return {"p": fmt(factor.p), "q": fmt(factor.q), "a": fmt(a),
            "polynomial": str(f), "factor": str(factor), "cofactor": str(cof)}
