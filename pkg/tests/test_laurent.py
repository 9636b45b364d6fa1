from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from tapkit.errors import TapkitError
from tapkit.laurent import (
    LaurentPoly,
    lgcd,
    parse_laurent,
    parse_poly,
    poly_det,
    presultant,
    squarefree_decomposition,
)

L = LaurentPoly.from_list

small = st.integers(-9, 9)
polys = st.builds(lambda cs, lo: L(cs, lo), st.lists(small, min_size=1, max_size=6),
                  st.integers(-3, 3))


def leibniz_det(M):
    n = len(M)
    total = LaurentPoly()
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = LaurentPoly.const(sign)
        for i in range(n):
            term = term * M[i][perm[i]]
        total = total + term
    return total


def test_basic_arithmetic():
    f = L([1, -4, 1])
    assert f * f == L([1, -8, 18, -8, 1])
    assert (f - f).is_zero()
    assert f.shift(-1).min_deg == -1
    assert L([1, 2], -1) == L([1, 2], -1)
    assert (LaurentPoly.monomial(1, -2) ** -1) == LaurentPoly.monomial(1, 2)


def test_parse():
    assert parse_poly("t^2 - 4*t + 1") == L([1, -4, 1])
    assert parse_laurent("t + t^-1") == L([1, 0, 1], -1)
    assert parse_poly("2t^3") == LaurentPoly.monomial(2, 3)
    with pytest.raises(TapkitError):
        parse_poly("t +* 3")


def test_exact_division_and_gcd():
    a, b = L([1, 1]), L([1, 0, 1])
    assert (a * b).exact_div(a) == b
    with pytest.raises(ArithmeticError):
        b.exact_div(a)
    assert lgcd(a * b, a * L([2, 1])) == a


def test_squarefree_decomposition():
    f = L([1, 1]) ** 3 * L([-2, 0, 1])
    parts = squarefree_decomposition(f)
    assert parts == [(L([-2, 0, 1]), 1), (L([1, 1]), 3)]


def test_resultant_known_value():
    # Res(t^2 - 2, t - 1) = (1 - 2) = -1 ; Res(t^2+1, t^2-4t+1) = |f(i) f(-i)| = 16 - 0
    assert presultant([-2, 0, 1], [-1, 1]) == -1
    assert presultant([1, 0, 1], [1, -4, 1]) == 16


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(polys, min_size=3, max_size=3), min_size=3, max_size=3))
def test_poly_det_matches_leibniz(M):
    assert poly_det(M) == leibniz_det(M)


@settings(max_examples=100, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    if not g.is_zero():
        assert (f * g).exact_div(g) == f


def test_rational_coefficients():
    f = L([Fraction(1, 2), 1])
    assert f.ring == "QQ"
    assert f.clear_denominators() == L([1, 2])
