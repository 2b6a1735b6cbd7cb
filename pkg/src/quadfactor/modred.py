"""Reduction of ``x^n`` modulo a monic quadratic.

Writing ``x^n = A_n x + B_n (mod x^2 + p x + q)`` the pair obeys
``A_n = -p A_{n-1} - q A_{n-2}`` (likewise ``B_n``) from ``A_0 = 0,
A_1 = 1, B_0 = 1, B_1 = 0``.  The pairs are available symbolically, as
polynomials in ``p`` and ``q``, or numerically at a rational point.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .arith import as_rational
from .bipoly import BiPoly

Scalar = Union[BiPoly, Fraction]

_lock = threading.Lock()
_symbolic: list[tuple[BiPoly, BiPoly]] = [
    (BiPoly(), BiPoly.const(1)),
    (BiPoly.const(1), BiPoly()),
]


@dataclass(frozen=True)
class ModRedPair:
    """``x^n = A x + B`` modulo ``x^2 + p x + q``; ``p``/``q`` None means symbolic."""

    n: int
    A: Scalar
    B: Scalar
    p: Optional[Fraction] = None
    q: Optional[Fraction] = None

    @property
    def symbolic(self) -> bool:
        return self.p is None


def symbolic_sequence(n: int) -> list[tuple[BiPoly, BiPoly]]:
    """``[(A_0, B_0), ..., (A_n, B_n)]`` in Z[p, q], memoised across calls."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    with _lock:
        P, Q = BiPoly.P(), BiPoly.Q()
        while len(_symbolic) <= n:
            (a2, b2), (a1, b1) = _symbolic[-2], _symbolic[-1]
            _symbolic.append((-P * a1 - Q * a2, -P * b1 - Q * b2))
        return _symbolic[: n + 1]


def numeric_sequence(n: int, p, q) -> tuple[list[Fraction], list[Fraction]]:
    """Lists ``A_0..A_n`` and ``B_0..B_n`` at a rational point."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    p, q = as_rational(p), as_rational(q)
    A = [Fraction(0), Fraction(1)]
    B = [Fraction(1), Fraction(0)]
    for _ in range(2, n + 1):
        A.append(-p * A[-1] - q * A[-2])
        B.append(-p * B[-1] - q * B[-2])
    return A[: n + 1], B[: n + 1]


def mod_red(n: int, p=None, q=None) -> ModRedPair:
    if (p is None) != (q is None):
        raise ValueError("give both p and q, or neither")
    if p is None:
        A, B = symbolic_sequence(n)[n]
        return ModRedPair(n, A, B)
    A, B = numeric_sequence(n, p, q)
    return ModRedPair(n, A[n], B[n], as_rational(p), as_rational(q))


def remainder_of(poly, p, q) -> tuple[Fraction, Fraction]:
    """``(lin, const)`` with ``poly = lin*x + const (mod x^2 + p x + q)``.

    ``poly`` is anything with a ``coeffs`` tuple (lowest degree first), so
    both :class:`UPoly` and quadrinomials converted with ``to_upoly`` work.
    """
    cs = poly.coeffs
    A, B = numeric_sequence(max(len(cs) - 1, 1), p, q)
    lin = sum((c * A[i] for i, c in enumerate(cs) if c), Fraction(0))
    const = sum((c * B[i] for i, c in enumerate(cs) if c), Fraction(0))
    return lin, const
