import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from tapkit.covers import (
    cyclic_shift_matrix,
    expand_to_integer,
    growth_report,
    left_kernel,
    smith_form,
    torsion_of_cover,
)
from tapkit.errors import NonIntegralEntry, RepNotIntegral
from tapkit.knotgroup import Rep, trivial_rep, two_bridge_presentation
from tapkit.laurent import LaurentPoly, parse_poly
from tapkit.numfield import NumberField
from tapkit.twistpoly import cyclic_resultant

from conftest import knot_data

GAUSS = NumberField("u^2 + 1")


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def test_shift_matrix():
    assert cyclic_shift_matrix(1) == [[1]]
    assert cyclic_shift_matrix(2) == [[0, 1], [1, 0]]
    T = cyclic_shift_matrix(6)
    P = T
    for _ in range(5):
        P = matmul(P, T)
    assert P == [[int(i == j) for j in range(6)] for i in range(6)]


def test_expand_examples():
    t = LaurentPoly.monomial(1, 1)
    assert expand_to_integer([[t]], 3) == cyclic_shift_matrix(3)
    alpha = LaurentPoly.const(GAUSS.gen, GAUSS)
    assert expand_to_integer([[alpha]], 1) == [[0, -1], [1, 0]]
    with pytest.raises(NonIntegralEntry):
        expand_to_integer([[LaurentPoly.const(GAUSS.parse("u/2"), GAUSS)]], 2)


entry = st.builds(
    lambda terms: LaurentPoly({k: GAUSS([a, b]) for k, a, b in terms}, GAUSS),
    st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)), max_size=3))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(entry, min_size=2, max_size=2), min_size=2, max_size=2),
       st.lists(st.lists(entry, min_size=2, max_size=2), min_size=2, max_size=2),
       st.integers(1, 4))
def test_expand_is_multiplicative(A, B, n):
    AB = [[A[i][0] * B[0][j] + A[i][1] * B[1][j] for j in range(2)] for i in range(2)]
    assert expand_to_integer(AB, n) == matmul(expand_to_integer(A, n), expand_to_integer(B, n))


def test_smith_examples():
    assert smith_form([[2, 0], [0, 6]]).elementary_divisors == [2, 6]
    s = smith_form([[2, 4], [0, 0]])
    assert s.rank == 1 and s.elementary_divisors == [2]
    s = smith_form([[6, 0], [0, 4]])
    assert s.elementary_divisors == [2, 12]


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_smith_determinant(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    A = [[rng.randint(-20, 20) for _ in range(n)] for _ in range(n)]
    s = smith_form(A)
    det = sympy.Matrix(A).det()
    assert s.rank == sympy.Matrix(A).rank()
    if det != 0:
        assert s.torsion == abs(det)
    ds = s.elementary_divisors
    assert all(ds[i + 1] % ds[i] == 0 for i in range(len(ds) - 1))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_left_kernel_is_saturated_basis(seed):
    rng = random.Random(seed)
    m, n = rng.randint(1, 6), rng.randint(1, 4)
    B = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)]
    K, Uinv, r = left_kernel(B)
    assert len(K) == m - sympy.Matrix(B).rank()
    for row in K:
        assert all(x == 0 for x in matmul([row], B)[0])
    if K:
        # saturated: the kernel basis has trivial elementary divisors
        assert all(d == 1 for d in smith_form(K).elementary_divisors)


def test_untwisted_trefoil_covers():
    pres, amap = two_bridge_presentation(3, 1)
    triv = trivial_rep(2)
    h = torsion_of_cover(pres, triv, amap, 1)
    assert (h.betti, h.torsion) == (1, 1)
    h = torsion_of_cover(pres, triv, amap, 2)
    assert (h.betti, h.torsion) == (1, 3)
    assert torsion_of_cover(pres, triv, amap, 6).betti >= 2


def test_kernel_and_cokernel_routes_agree():
    for pq in ((3, 1), (5, 3), (7, 3)):
        pres, amap, rep, K = knot_data(*pq)
        for n in (1, 2, 3, 5):
            a = torsion_of_cover(pres, rep, amap, n, method="kernel")
            b = torsion_of_cover(pres, rep, amap, n, method="cokernel")
            assert (a.betti, a.torsion) == (b.betti, b.torsion)


def test_figure_eight_first_cover(fig8):
    pres, amap, rep, K = fig8
    h = torsion_of_cover(pres, rep, amap, 1)
    delta_bar = parse_poly("(t^2 - 4*t + 1)^2")
    assert h.torsion == abs(cyclic_resultant(delta_bar, 1)) == 4


def test_non_integral_rep_rejected():
    pres, amap = two_bridge_presentation(3, 1)
    rep = Rep(None, [[[2, 0], [0, Fraction(1, 2)]], [[2, 0], [0, Fraction(1, 2)]]])
    with pytest.raises(RepNotIntegral):
        torsion_of_cover(pres, rep, amap, 1)


def test_growth_report_untwisted_trefoil():
    pres, amap = two_bridge_presentation(3, 1)
    delta = parse_poly("t^2 - t + 1")
    rep = growth_report(pres, trivial_rep(2), amap, 12, primes=[3], delta_bar=delta)
    for row in rep.rows:
        if row.psi == LaurentPoly.const(1):
            assert row.ratio == 1
        else:
            assert row.n % 6 == 0 and row.betti >= 2
    js = rep.to_json()
    assert js["rows"][1]["torsion_order"] == "3"


def test_growth_report_trefoil_riley_bounded(trefoil):
    pres, amap, rep, K = trefoil
    report = growth_report(pres, rep, amap, 12)
    assert report.delta_bar == parse_poly("t^2 + 1")
    assert max(r.torsion for r in report.rows) <= 16
