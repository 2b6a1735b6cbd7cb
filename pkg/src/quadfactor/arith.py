"""Exact rational scalars.

Python ints are arbitrary precision and :class:`fractions.Fraction` keeps
values canonical (positive denominator, lowest terms, zero as 0/1), so
``Fraction`` is the scalar type everywhere in this package.  This module
adds what the stdlib lacks: exact square roots, heights, strict text
round-tripping, bounded-height enumeration and integer factorisation with
a work budget.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Union

RationalLike = Union[int, Fraction, str]

_RATIONAL_RE = re.compile(r"\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*\Z")

TRIAL_DIVISION_LIMIT = 10**5
DEFAULT_RHO_BUDGET = 200_000


def as_rational(x: RationalLike) -> Fraction:
    """Coerce ``x`` to a Fraction; floats are refused to keep results exact."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        match = _RATIONAL_RE.match(x)
        if match is None:
            raise ValueError(f"not an exact rational: {x!r}")
        num, den = match.group(1), match.group(2)
        if den is not None and int(den) == 0:
            raise ValueError(f"zero denominator in {x!r}")
        return Fraction(int(num), int(den) if den is not None else 1)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def fmt(x: Fraction) -> str:
    """Render as ``"u/v"`` or ``"u"`` in lowest terms."""
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def height(x: RationalLike) -> int:
    x = as_rational(x)
    return max(abs(x.numerator), x.denominator)


def canonical_key(x: Fraction) -> tuple[int, Fraction]:
    """Sort key ordering rationals by height, then by value."""
    return (height(x), x)


def rational_sqrt(x: RationalLike) -> Optional[Fraction]:
    """Return the nonnegative rational square root of ``x``, or None."""
    x = as_rational(x)
    if x < 0:
        return None
    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    return Fraction(rn, rd)


def lcm_of_denominators(values: Iterable[Fraction]) -> int:
    d = 1
    for v in values:
        d = math.lcm(d, v.denominator)
    return d


def rationals_with_denominator(v: int, bound: int) -> list[Fraction]:
    return [Fraction(u, v) for u in range(-bound, bound + 1) if math.gcd(u, v) == 1]


@lru_cache(maxsize=16)
def rationals_up_to(bound: int) -> tuple[Fraction, ...]:
    """All rationals of height <= bound, ordered by (height, value)."""
    if bound < 1:
        raise ValueError("height bound must be >= 1")
    out = []
    for v in range(1, bound + 1):
        out.extend(rationals_with_denominator(v, bound))
    out.sort(key=canonical_key)
    return tuple(out)


# -- integer factorisation ---------------------------------------------------

@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    limit = TRIAL_DIVISION_LIMIT
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytes(len(range(i * i, limit + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_probable_prime(n: int) -> bool:
    # deterministic below 3.3e24 with these bases
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, budget: int) -> Optional[int]:
    """Find a nontrivial factor of composite odd ``n`` within ``budget`` steps."""
    steps = 0
    for c in range(1, 50):
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
                steps += 128
                if steps > budget:
                    return None
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    return None


def factorint(n: int, budget: int = DEFAULT_RHO_BUDGET) -> tuple[dict[int, int], bool]:
    """Factor ``|n|`` into prime powers.

    Returns ``(factors, complete)``.  When Pollard rho runs out of budget
    the unsplit cofactor is kept as a single entry and ``complete`` is False.
    """
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor zero")
    factors: dict[int, int] = {}
    for p in _small_primes():
        if p * p > n:
            break
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    complete = True
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m < TRIAL_DIVISION_LIMIT**2 or is_probable_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        d = _pollard_brent(m, budget)
        if d is None:
            factors[m] = factors.get(m, 0) + 1
            complete = False
            continue
        stack.extend((d, m // d))
    return dict(sorted(factors.items())), complete


def divisors(n: int, budget: int = DEFAULT_RHO_BUDGET) -> tuple[list[int], bool]:
    """Positive divisors of ``|n|`` (sorted) and whether factoring was complete."""
    factors, complete = factorint(n, budget)
    divs = [1]
    for p, e in factors.items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs), complete
