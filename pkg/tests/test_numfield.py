import pickle

import mpmath
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from tapkit.errors import NotMonic, Reducible, ZeroPolynomialModP
from tapkit.laurent import LaurentPoly
from tapkit.numfield import (
    NumberField,
    factor_mod_p,
    ff_element_order,
    nf_regular_rep,
    regular_rep_det,
)

u = sympy.Symbol("u")
CUBIC = NumberField("u^3 + u^2 + 2*u + 1")
EISENSTEIN = NumberField("u^2 - u + 1")
GAUSS = NumberField("u^2 + 1")

coords = st.lists(st.integers(-20, 20), min_size=3, max_size=3)


def test_field_construction_checks():
    with pytest.raises(NotMonic):
        NumberField("2*u^2 + 1")
    with pytest.raises(Reducible):
        NumberField("u^2 - 1")


def test_discriminants_against_sympy():
    for K, expr in ((CUBIC, u**3 + u**2 + 2*u + 1), (EISENSTEIN, u**2 - u + 1), (GAUSS, u**2 + 1)):
        assert K.discriminant == sympy.discriminant(expr, u)
    assert CUBIC.discriminant == -23


def test_norm_against_sympy_resultant():
    x = CUBIC([3, -1, 2])
    oracle = sympy.resultant(u**3 + u**2 + 2*u + 1, 3 - u + 2*u**2, u)
    assert x.norm() == oracle
    assert CUBIC.gen.norm() == -1


@settings(max_examples=80, deadline=None)
@given(coords, coords)
def test_field_axioms(a, b):
    x, y = CUBIC(a), CUBIC(b)
    assert x * y == y * x
    assert (x + y) * y == x * y + y * y
    if not x.is_zero():
        assert x * x.inverse() == 1
        assert (y / x) * x == y
        assert x.norm() == regular_rep_det(x)


@settings(max_examples=50, deadline=None)
@given(coords, coords)
def test_regular_rep_is_multiplicative(a, b):
    x, y = CUBIC(a), CUBIC(b)
    Mx, My, Mxy = nf_regular_rep(x), nf_regular_rep(y), nf_regular_rep(x * y)
    prod = [[sum(Mx[i][k] * My[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    assert prod == Mxy


def test_embeddings_are_roots():
    with mpmath.workdps(40):
        for i in range(3):
            z = CUBIC.gen.embed(i, 30)
            assert abs(z**3 + z**2 + 2 * z + 1) < mpmath.mpf(10) ** -25


def test_torsion_units():
    assert len(EISENSTEIN.torsion_units()) == 6
    assert len(GAUSS.torsion_units()) == 4
    assert list(CUBIC.torsion_units()) == [CUBIC.one, -CUBIC.one]
    for z in EISENSTEIN.torsion_units():
        assert z ** 6 == 1


def test_pickle_round_trip():
    x = CUBIC([1, 2, 3])
    assert pickle.loads(pickle.dumps(x)) == x


def _brute_order(h, p):
    """Order of x in F_p[x]/(h) by repeated multiplication."""
    e = len(h) - 1

    def mulx(a):
        a = [0] + list(a)
        top = a[e]
        return [(a[i] - top * h[i]) % p for i in range(e)]

    one = [1] + [0] * (e - 1)
    cur = mulx(one) if e > 1 else [(-h[0]) % p]
    if e == 1:
        r, k, x = (-h[0]) % p, 1, (-h[0]) % p
        while x != 1:
            x = x * r % p
            k += 1
        return k
    k = 1
    while cur != one:
        cur = mulx(cur)
        k += 1
    return k


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_factor_mod_p_and_orders(p):
    f = LaurentPoly.from_list([1, -4, 1, 0, 3, 1])
    unit, facs = factor_mod_p(f, p)
    prod = sympy.Poly(unit, u, modulus=p)
    for g, e in facs:
        prod *= sympy.Poly(list(reversed(g)), u, modulus=p) ** e
    assert prod == sympy.Poly([1, 3, 0, 1, -4, 1], u, modulus=p)
    for g, _ in facs:
        if g[0] % p:
            assert ff_element_order(g, p) == _brute_order(g, p)


def test_factor_mod_p_zero():
    with pytest.raises(ZeroPolynomialModP):
        factor_mod_p(LaurentPoly.from_list([5, 10]), 5)


def test_element_order_examples():
    assert ff_element_order((1, 1, 1), 5) == 3
    assert ff_element_order((3, 1), 11) == 10  # root 8
    assert ff_element_order((-1, 1), 7) == 1
