from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from tapkit.errors import NotSquarefreeModP, ReducibleInput, RootsNotUnits, GaloisDegreeUnknown
from tapkit.laurent import LaurentPoly, parse_poly
from tapkit.measures import (
    galois_closure_degree,
    linear_residues,
    lobachevsky,
    mahler,
    newton_polygon,
    padic_mahler,
    power_multiset,
    residue_orbit,
    residue_power_orbit,
    split_scan,
    teichmuller_data,
    volume_trend,
)
from tapkit.twistpoly import cyclic_resultant, strip_cyclotomic


L = LaurentPoly.from_list
int_polys = st.lists(st.integers(-30, 30), min_size=2, max_size=7).filter(lambda c: c[0] and c[-1]).map(L)


def close(a, b):
    return abs(a.value - b) <= a.error + mpmath.mpf(10) ** -20


@mpmath.workdps(40)
def test_mahler_examples():
    assert close(mahler(parse_poly("t^2 + 1")), 1)
    assert close(mahler(parse_poly("t^2 - 4*t + 1")), 2 + mpmath.sqrt(3))
    assert close(mahler(parse_poly("(t^2 - 4*t + 1)^2")), 7 + 4 * mpmath.sqrt(3))
    assert close(mahler(parse_poly("3*t + 9")), 9)
    m = mahler(parse_poly("t^3 - t - 1"), 40)  # smallest Pisot number
    assert m.error < mpmath.mpf(10) ** -40
    assert abs(m.value - mpmath.findroot(lambda x: x**3 - x - 1, 1.3)) < mpmath.mpf(10) ** -35


def test_mahler_flags_roots_near_circle():
    # (2t^2 - 2t + 1) has roots (1 +- i)/2 inside; t^2 - t + 1 is cyclotomic
    m = mahler(parse_poly("(t^2 - t + 1)*(2*t^2 - 2*t + 1)"))
    assert m.cyclotomic == [(6, 1)]
    assert close(m, 2)


@settings(max_examples=40, deadline=None)
@given(int_polys, int_polys)
def test_mahler_multiplicative(f, g):
    a, b, ab = mahler(f, 20), mahler(g, 20), mahler(f * g, 20)
    assert abs(ab.value - a.value * b.value) <= ab.error + a.error * b.value + b.error * a.value + mpmath.mpf(10) ** -15 * ab.value


@settings(max_examples=40, deadline=None)
@given(int_polys)
def test_mahler_reciprocal_invariance(f):
    a, b = mahler(f, 20), mahler(f.reciprocal(), 20)
    assert abs(a.value - b.value) <= a.error + b.error + mpmath.mpf(10) ** -18 * a.value


def test_newton_polygon_examples():
    np7 = newton_polygon(parse_poly("t^2 - 4*t + 1"), 7)
    assert np7.segments == [(0, 2)] and np7.roots_on_unit_circle
    np3 = newton_polygon(parse_poly("3*t + 9"), 3)
    assert np3.vertices == [(0, 2), (1, 1)] and np3.segments == [(-1, 1)]
    assert np3.root_valuations() == [1]
    npt = newton_polygon(parse_poly("t"), 5)
    assert npt.segments == [] and npt.roots_on_unit_circle


def test_padic_examples():
    for p in (2, 3, 5, 7, 11, 23):
        assert padic_mahler(parse_poly("t^2 - 4*t + 1"), p).value == 1
    assert padic_mahler(parse_poly("3*t + 9"), 3).value == Fraction(1, 3)
    big = parse_poly("25*t^6 - 104*t^5 + 219*t^4 - 272*t^3 + 219*t^2 - 104*t + 25")
    assert padic_mahler(big, 5).value == 1


@settings(max_examples=100, deadline=None)
@given(int_polys, st.sampled_from([2, 3, 5, 7]))
def test_padic_reciprocal_invariance(f, p):
    assert padic_mahler(f, p) == padic_mahler(f.reciprocal(), p)


def test_padic_limit_of_cyclic_resultants():
    f = parse_poly("9*t^2 - 4*t + 3")
    core, _ = strip_cyclotomic(f)
    assert core == f
    r = cyclic_resultant(f, 200)
    from tapkit.covers import p_norm
    pn = p_norm(r, 3)
    approx = mpmath.root(mpmath.mpf(pn.numerator) / pn.denominator, 200)
    v = padic_mahler(f, 3).value
    exact = mpmath.mpf(v.numerator) / v.denominator
    assert abs(approx / exact - 1) < 0.1


def test_cyclic_resultant_growth_matches_mahler():
    f = parse_poly("t^3 - 2*t^2 + 5*t - 3")
    r = abs(cyclic_resultant(f, 200))
    m = mahler(f, 20).value
    assert abs(mpmath.root(r, 200) / m - 1) < 0.1


def _brute_teichmuller_orders(coeffs, p):
    """Orders of the roots of f in F_{p^2} (f of degree 2), by enumeration."""
    # F_{p^2} = F_p[s]/(s^2 - n) for a non-residue n (p odd)
    n = next(x for x in range(2, p) if pow(x, (p - 1) // 2, p) == p - 1)

    def mul(a, b):
        return ((a[0] * b[0] + n * a[1] * b[1]) % p, (a[0] * b[1] + a[1] * b[0]) % p)

    c0, c1, c2 = coeffs
    roots = []
    for a in range(p):
        for b in range(p):
            z = (a, b)
            z2 = mul(z, z)
            val = ((c2 * z2[0] + c1 * a + c0) % p, (c2 * z2[1] + c1 * b) % p)
            if val == (0, 0):
                roots.append(z)
    orders = []
    for z in roots:
        k, w = 1, z
        while w != (1, 0):
            w = mul(w, z)
            k += 1
        orders.append(k)
    return sorted(orders), roots, mul


def test_teichmuller_against_brute_force():
    f = parse_poly("t^2 - 4*t + 1")
    for p in (5, 11, 13, 7, 19):
        oracle, _, _ = _brute_teichmuller_orders([1, -4, 1], p)
        assert teichmuller_data(f, p).orders == oracle
    d5 = teichmuller_data(f, 5)
    assert d5.m == 3 and [(e.degree, e.order) for e in d5.entries] == [(2, 3)]
    assert teichmuller_data(f, 11).m == 10
    assert teichmuller_data(parse_poly("t - 1"), 7).m == 1


def test_teichmuller_exclusions():
    with pytest.raises(RootsNotUnits):
        teichmuller_data(parse_poly("3*t + 9"), 3)
    with pytest.raises(NotSquarefreeModP):
        teichmuller_data(parse_poly("t^2 - 4*t + 1"), 2)  # (t+1)^2 mod 2


@settings(max_examples=50, deadline=None)
@given(int_polys, st.sampled_from([5, 7, 11, 13]))
def test_teichmuller_reciprocal_invariance(f, p):
    try:
        a = teichmuller_data(f, p)
    except (NotSquarefreeModP, RootsNotUnits):
        return
    assert teichmuller_data(f.reciprocal(), p).orders == a.orders


def test_residue_power_orbit():
    f = parse_poly("t^2 - 4*t + 1")
    assert linear_residues(residue_power_orbit(f, 11, 1), 11) == [7, 8]
    assert linear_residues(residue_power_orbit(f, 11, 3), 11) == [2, 6]
    orbit = residue_orbit(f, 11)
    assert sorted(orbit) == [1, 3, 7, 9]
    for u, ms in orbit.items():
        for v in orbit:
            assert power_multiset(ms, 11, v) == orbit[u * v % 10]


def test_residue_orbit_in_extension_against_brute_force():
    f = parse_poly("t^2 - 4*t + 1")
    _, roots, mul = _brute_teichmuller_orders([1, -4, 1], 5)
    orbit = residue_orbit(f, 5)
    for u, ms in orbit.items():
        # brute force: the u-th powers of the roots are again roots of the descriptor
        (g, count), = ms
        for z in roots:
            w = (1, 0)
            for _ in range(u):
                w = mul(w, z)
            w2 = mul(w, w)
            val = ((g[2] * w2[0] + g[1] * w[0] + g[0]) % 5, (g[2] * w2[1] + g[1] * w[1]) % 5)
            assert val == (0, 0)


def _brute_splits(coeffs, p):
    roots = [x for x in range(p) if sum(c * pow(x, k, p) for k, c in enumerate(coeffs)) % p == 0]
    return len(roots) == len(coeffs) - 1


def test_split_scan_matches_root_counting():
    cubic = parse_poly("u^3 + u^2 + 2*u + 1", "u")
    assert galois_closure_degree(cubic) == 6
    rows = split_scan(cubic, 6, 200)
    assert [r.p for r in rows][:4] == [7, 13, 19, 31]
    for r in rows:
        if not r.excluded:
            assert r.splits == _brute_splits([1, 2, 1, 1], r.p)


def test_split_scan_controls():
    rows = split_scan(parse_poly("x^2 + 1", "x"), 2, 60)
    for r in rows:
        assert r.splits == (r.p % 4 == 1)
    assert all(r.splits for r in split_scan(parse_poly("x - 5", "x"), 1, 50) if not r.excluded)
    with pytest.raises(ReducibleInput):
        split_scan(parse_poly("x^2 - 1", "x"))
    with pytest.raises(GaloisDegreeUnknown):
        split_scan(parse_poly("x^4 + x + 1", "x"))


def lobachevsky_oracle(theta):
    return -mpmath.quad(lambda s: mpmath.log(abs(2 * mpmath.sin(s))), [0, theta])


def test_lobachevsky():
    vol = 6 * lobachevsky_oracle(mpmath.pi / 3)
    assert abs(vol - mpmath.mpf("2.029883212819307")) < 1e-12
    assert abs(lobachevsky(mpmath.pi / 3) - lobachevsky_oracle(mpmath.pi / 3)) < 1e-12


def test_volume_trend_small(fig8):
    pres, amap, rep, K = fig8
    vt = volume_trend(pres, rep, amap, 7)
    assert vt.odd[0] == (3, 0)
    assert vt.even[0] == (2, 0)
    values = [v for _, v in vt.odd]
    assert values == sorted(values)
