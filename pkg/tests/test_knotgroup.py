import pytest
import sympy
from hypothesis import given, settings, strategies as st

from tapkit.errors import BadParameters, DimensionError, IndexOutOfRange
from tapkit.knotgroup import (
    AbelianMap,
    GroupRingElem,
    Presentation,
    Rep,
    Word,
    alexander_matrix,
    check_rep,
    evaluate,
    fox_derivative,
    mat_mul,
    riley_polynomial,
    riley_rep,
    sym_power,
    trivial_rep,
    two_bridge_presentation,
    two_bridge_word,
    word_reduce,
)
from tapkit.laurent import LaurentPoly, lgcd_many, parse_poly
from tapkit.numfield import NumberField

from conftest import knot_data

W = Word.parse
letters = st.lists(st.tuples(st.integers(0, 2), st.sampled_from([1, -1])), max_size=8)
words = letters.map(lambda ls: Word(tuple(ls)))


def fox_oracle(w, j):
    """Fox derivative by recursive halving and the product rule."""
    if len(w) == 0:
        return GroupRingElem()
    if len(w) == 1:
        g, e = w.letters[0]
        if g != j:
            return GroupRingElem()
        return GroupRingElem.one() if e > 0 else -GroupRingElem.word(w)
    k = len(w) // 2
    u, v = Word(w.letters[:k]), Word(w.letters[k:])
    return fox_oracle(u, j) + GroupRingElem.word(u) * fox_oracle(v, j)


def test_word_reduce_examples():
    assert word_reduce(W("aA")) == Word()
    assert word_reduce(W("abBa")) == W("aa")
    assert word_reduce(W("xyXYxy", "xy")) == W("xyXYxy", "xy")


@given(words)
def test_word_reduce_idempotent(w):
    r = word_reduce(w)
    assert word_reduce(r) == r
    assert word_reduce(w * w.inverse()) == Word()


def test_two_bridge_words():
    assert two_bridge_word(7, 3) == W("abABab")
    assert two_bridge_word(3, 1) == W("ab")
    assert two_bridge_word(5, 3) == W("aBAb")
    for bad in ((4, 1), (5, 2), (9, 3), (5, 5), (1, 1)):
        with pytest.raises(BadParameters):
            two_bridge_presentation(*bad)


def test_relator_abelianizes_to_zero():
    for p, q in ((3, 1), (5, 3), (5, 1), (7, 3), (9, 5), (11, 7)):
        pres, amap = two_bridge_presentation(p, q)
        assert pres.deficiency == 1
        assert amap.degree(pres.relators[0]) == 0


def test_fox_examples():
    a = W("a")
    assert fox_derivative(a, 0) == GroupRingElem.one()
    assert fox_derivative(W("b"), 0) == GroupRingElem()
    expected = GroupRingElem.one() - GroupRingElem.word(W("abA"))
    assert fox_derivative(W("abAB"), 0) == expected


@settings(max_examples=500, deadline=None)
@given(words, words, st.integers(0, 2))
def test_fox_product_rule_and_oracle(u, v, j):
    lhs = fox_derivative(u * v, j)
    assert lhs == fox_derivative(u, j) + GroupRingElem.word(u) * fox_derivative(v, j)
    assert lhs == fox_oracle(u * v, j)


@settings(max_examples=500, deadline=None)
@given(words)
def test_fundamental_identity(w):
    total = GroupRingElem()
    for j in range(3):
        xj = GroupRingElem.word(Word.gen(j)) - GroupRingElem.one()
        total = total + fox_derivative(w, j) * xj
    assert total == GroupRingElem.word(w) - GroupRingElem.one()


def test_evaluate_examples(trefoil):
    pres, amap, rep, K = trefoil
    one = evaluate(GroupRingElem.one(), rep, amap)
    assert one == [[LaurentPoly.const(1, K), LaurentPoly({}, K)], [LaurentPoly({}, K), LaurentPoly.const(1, K)]]
    ev = evaluate(GroupRingElem.word(W("a")), rep, amap)
    t = LaurentPoly.monomial(1, 1, K)
    assert ev == [[t, t], [LaurentPoly({}, K), t]]
    # 1 - a b a^-1 against a sympy matrix product
    e = GroupRingElem.one() - GroupRingElem.word(W("abA"))
    ev = evaluate(e, rep, amap)
    ts = sympy.Symbol("t")
    alpha = -1  # root of u + 1
    A = sympy.Matrix([[1, 1], [0, 1]])
    B = sympy.Matrix([[1, 0], [alpha, 1]])
    oracle = sympy.eye(2) - A * B * A.inv() * ts
    for i in range(2):
        for j in range(2):
            got = sum(int(c.rational_value()) * ts**k for k, c in ev[i][j].coeffs.items())
            assert sympy.expand(got - oracle[i, j]) == 0


def test_classical_alexander_polynomial():
    pres, amap = two_bridge_presentation(3, 1)
    A = alexander_matrix(pres, trivial_rep(2), amap)
    assert len(A) == 1 and len(A[0]) == 2
    assert lgcd_many(A[0]) == parse_poly("t^2 - t + 1")
    pres8, amap8 = two_bridge_presentation(5, 3)
    A8 = alexander_matrix(pres8, trivial_rep(2), amap8)
    assert lgcd_many(A8[0]) == parse_poly("t^2 - 3*t + 1")


def test_unknot_has_no_rows():
    pres = Presentation(1, (), "a")
    assert alexander_matrix(pres, trivial_rep(1), AbelianMap((1,))) == []


def _sympy_riley(p, q, sign):
    u = sympy.Symbol("u")
    A = sympy.Matrix([[1, 1], [0, 1]])
    B = sympy.Matrix([[1, 0], [sign * u, 1]])
    M = sympy.eye(2)
    for g, e in two_bridge_word(p, q).letters:
        X = A if g == 0 else B
        M = M * (X if e > 0 else X.inv())
    R = (M * A - B * M).applyfunc(sympy.expand)
    g = 0
    for x in R:
        g = sympy.gcd(g, x)
    return sympy.Poly(g, u)


@pytest.mark.parametrize("pq,expected", [
    ((7, 3), "u^3 + u^2 + 2*u + 1"),
    ((3, 1), "u + 1"),
    ((5, 3), "u^2 - u + 1"),
    ((5, 1), "u^2 + 3*u + 1"),
])
def test_riley_polynomials(pq, expected):
    rp = riley_polynomial(*pq)
    assert rp == parse_poly(expected, "u")
    oracle = _sympy_riley(*pq, 1)
    assert [int(c) for c in oracle.all_coeffs()] in (
        [int(c) for c in reversed(rp.to_list())], [-int(c) for c in reversed(rp.to_list())])
    # the lower-left entry -u gives the mirror polynomial f(-u)
    mirror = _sympy_riley(*pq, -1)
    flipped = [c * (-1) ** k for k, c in enumerate(rp.to_list())]
    got = [int(c) for c in reversed(mirror.all_coeffs())]
    assert got in (flipped, [-c for c in flipped])


def test_riley_rep_properties():
    for pq in ((3, 1), (5, 3), (5, 1), (7, 3), (9, 7)):
        pres, amap, rep, K = knot_data(*pq)
        assert check_rep(pres, rep)[0]
        for m in rep.mats:
            assert m[0][0] + m[1][1] == 2
            assert m[0][0] * m[1][1] - m[0][1] * m[1][0] == 1
    assert knot_data(5, 3)[3].discriminant == -3
    assert knot_data(7, 3)[3].discriminant == -23
    with pytest.raises(IndexOutOfRange):
        riley_rep(7, 3, 1)


def test_check_rep_witness(trefoil):
    pres, amap, rep, K = trefoil
    assert check_rep(pres, trivial_rep(2))[0]
    bad = Rep(K, [rep.mats[0], [[1, 0], [-2, 1]]])
    ok, (rel, mat) = check_rep(pres, bad)
    assert not ok and rel == pres.relators[0]
    assert mat != [[1, 0], [0, 1]]


def test_sym_power_examples():
    K = NumberField("u^2 + 1")
    lam = K.gen
    D = Rep(K, [[[lam, 0], [0, -lam]]])
    S = sym_power(D, 2)
    assert S.mats[0] == [[lam**2, 0, 0], [0, lam * -lam, 0], [0, 0, (-lam)**2]]
    pres, amap, rep, _ = knot_data(5, 3)
    assert sym_power(rep, 1) is rep
    with pytest.raises(DimensionError):
        sym_power(S, 2)


@pytest.mark.parametrize("k", range(1, 7))
def test_sym_power_is_representation(k):
    pres, amap, rep, _ = knot_data(5, 3)
    Sk = sym_power(rep, k)
    assert Sk.N == k + 1
    assert check_rep(pres, Sk)[0]


def test_sym_power_homomorphism():
    pres, amap, rep, _ = knot_data(7, 3)
    a, b = rep.mats
    prod = Rep(rep.field, [mat_mul(a, b)])
    lhs = sym_power(prod, 3).mats[0]
    S = sym_power(rep, 3)
    assert lhs == mat_mul(S.mats[0], S.mats[1])
