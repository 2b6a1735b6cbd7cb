import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from quadfactor.bipoly import BiPoly
from quadfactor.modred import mod_red, numeric_sequence, remainder_of, symbolic_sequence
from quadfactor.upoly import UPoly

rats = st.fractions(min_value=-50, max_value=50, max_denominator=50)


def by_division(n, p, q):
    r = UPoly.monomial(1, n) % UPoly([q, p, 1])
    return r.coeff(1), r.coeff(0)


def test_initial_values():
    assert numeric_sequence(1, 3, 5) == ([0, 1], [1, 0])
    m = mod_red(2, F(-2), F(1))
    assert (m.A, m.B) == (2, -1)


@given(st.integers(0, 12), rats, rats)
def test_numeric_matches_long_division(n, p, q):
    m = mod_red(n, p, q)
    assert (m.A, m.B) == by_division(n, p, q)


@given(st.integers(0, 12), rats, rats)
def test_symbolic_specialises_to_numeric(n, p, q):
    m = mod_red(n)
    assert m.symbolic
    assert (m.A.eval_at(p, q), m.B.eval_at(p, q)) == (mod_red(n, p, q).A, mod_red(n, p, q).B)


def test_symbolic_small_cases():
    A3, B3 = symbolic_sequence(3)[3]
    P, Q = BiPoly.P(), BiPoly.Q()
    assert A3 == P * P - Q
    assert B3 == P * Q


def test_remainder_of_detects_factor():
    f = UPoly([1, 1, -3, 0, 0, 1])  # x^5 - 3x^2 + x + 1
    assert remainder_of(f, -2, 1) == (0, 0)
    assert remainder_of(f, 1, 1) != (0, 0)


def test_argument_checks():
    with pytest.raises(ValueError):
        mod_red(4, 1)
    with pytest.raises(ValueError):
        mod_red(-1)


def test_many_random_points_against_division():
    rng = random.Random(20240613)
    for _ in range(300):
        n = rng.randint(0, 12)
        p = F(rng.randint(-50, 50), rng.randint(1, 50))
        q = F(rng.randint(-50, 50), rng.randint(1, 50))
        m = mod_red(n, p, q)
        assert (m.A, m.B) == by_division(n, p, q)
