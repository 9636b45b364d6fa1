"""Mahler measures (complex and p-adic), Newton polygons, Teichmueller
order data read off residues mod p, split-prime scans and the volume trend
of symmetric-power torsions."""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd, isqrt, lcm

import mpmath
import sympy

from .errors import (
    BadParameters,
    DegenerateAtOne,
    ExtensionTooLarge,
    GaloisDegreeUnknown,
    InternalMismatch,
    NotSquarefreeModP,
    PrecisionNotReached,
    ReducibleInput,
    RootsNotUnits,
    ZeroPolynomial,
)
from .laurent import LaurentPoly, pderiv, presultant, squarefree_decomposition
from .numfield import factor_mod_p, ff_element_order, poly_pow_mod
from .twistpoly import factor_over_z, strip_cyclotomic

MAX_BITS = 4096


def _as_poly(f):
    if isinstance(f, LaurentPoly):
        return f
    return LaurentPoly.from_list(list(f))


# ---------------------------------------------------------------------------
# complex Mahler measure
# ---------------------------------------------------------------------------

@dataclass
class MahlerMeasure:
    value: mpmath.mpf
    error: mpmath.mpf
    digits: int
    on_circle: int = 0  # roots whose certified disc meets |z| = 1
    cyclotomic: list = dc_field(default_factory=list)

    def __float__(self):
        return float(self.value)

    def to_json(self):
        with mpmath.workdps(self.digits + 10):
            log_v = mpmath.log(self.value)
            err = self.error / self.value
        return {"value_log": mpmath.nstr(log_v, self.digits),
                "error_log": mpmath.nstr(err, 5)}


class _NotCertified(Exception):
    pass


def certified_roots(coeffs, bits):
    """Roots of a squarefree polynomial with Smith-type inclusion radii.

    ``coeffs`` ascending rationals.  Each returned ``(z, r)`` disc contains
    exactly one root (the discs are checked pairwise disjoint).
    """
    n = len(coeffs) - 1
    with mpmath.workprec(bits):
        desc = [mpmath.mpf(c.numerator) / c.denominator if isinstance(c, Fraction) else mpmath.mpf(c)
                for c in reversed(coeffs)]
        try:
            zs = mpmath.polyroots(desc, maxsteps=200 + 4 * n, extraprec=bits)
        except mpmath.libmp.libhyper.NoConvergence:
            raise _NotCertified
        if n == 1:
            zs = [zs] if not isinstance(zs, list) else zs
        eps = mpmath.mpf(2) ** (-bits + 8)
        out = []
        lc = abs(desc[0])
        for i, z in enumerate(zs):
            val = mpmath.polyval(desc, z)
            mag = sum(abs(c) * abs(z) ** (n - k) for k, c in enumerate(desc))
            denom = lc
            for j, w in enumerate(zs):
                if j != i:
                    denom *= abs(z - w)
            if denom == 0:
                raise _NotCertified
            out.append((z, n * (abs(val) + eps * mag) / denom))
        for i in range(n):
            for j in range(i + 1, n):
                if abs(out[i][0] - out[j][0]) <= out[i][1] + out[j][1]:
                    raise _NotCertified
    return out


def mahler(f, digits=30):
    """``|lc| prod max(1, |root|)`` with a certified absolute error bound."""
    f = _as_poly(f)
    if f.is_zero():
        raise ZeroPolynomial("Mahler measure of zero")
    if digits < 10:
        raise ValueError("digits must be >= 10")
    g = f.normalized()
    lc = abs(Fraction(g.lc))
    cyclo = []
    core = g
    if g.is_integral() and g.span > 0:
        core, cyclo = strip_cyclotomic(g)
    parts = squarefree_decomposition(core) if core.span > 0 else []
    bits = max(64, int(digits * 3.33) + 32)
    while bits <= MAX_BITS:
        try:
            with mpmath.workprec(bits + 32):
                lo = hi = mpmath.mpf(1)
                flagged = 0
                for h, mult in parts:
                    for z, r in certified_roots(h.to_list(), bits):
                        a = abs(z)
                        if a - r <= 1 <= a + r:
                            flagged += mult
                        lo *= max(mpmath.mpf(1), a - r) ** mult
                        hi *= max(mpmath.mpf(1), a + r) ** mult
                c = mpmath.mpf(lc.numerator) / lc.denominator
                value = c * (lo + hi) / 2
                err = c * (hi - lo) / 2
        except _NotCertified:
            bits *= 2
            continue
        if err <= mpmath.mpf(10) ** (-digits) * max(1, value):
            return MahlerMeasure(value, err, digits, flagged, cyclo)
        bits *= 2
    raise PrecisionNotReached(f"could not certify {digits} digits within {MAX_BITS} bits")


# ---------------------------------------------------------------------------
# p-adic measure and Newton polygons
# ---------------------------------------------------------------------------

def vp(x, p):
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero")
    v, num, den = 0, x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


@dataclass
class NewtonPolygon:
    p: int
    vertices: list
    segments: list  # (slope, length)

    @property
    def roots_on_unit_circle(self):
        return all(s == 0 for s, _ in self.segments) and all(v == 0 for _, v in self.vertices)

    def root_valuations(self):
        """Valuations of the roots with multiplicity (slope s -> -s)."""
        out = []
        for s, length in self.segments:
            out.extend([-s] * length)
        return out

    def to_json(self):
        return {"p": self.p,
                "vertices": [[i, v] for i, v in self.vertices],
                "segments": [[str(s), n] for s, n in self.segments]}


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_polygon(f, p):
    f = _as_poly(f)
    if f.is_zero():
        raise ZeroPolynomial("Newton polygon of zero")
    g = f.normalized()
    pts = [(k, vp(c, p)) for k, c in sorted(g.coeffs.items())]
    hull = []
    for pt in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    segs = [(Fraction(b[1] - a[1], b[0] - a[0]), b[0] - a[0]) for a, b in zip(hull, hull[1:])]
    return NewtonPolygon(p, hull, segs)


@dataclass(frozen=True)
class PadicMahler:
    p: int
    valuation: int  # the measure equals p^(-valuation)

    @property
    def value(self):
        v = self.valuation
        return Fraction(1, self.p ** v) if v >= 0 else Fraction(self.p ** (-v))

    def to_json(self):
        return {"p": self.p, "valuation": str(self.valuation)}


def padic_mahler(f, p):
    """p-adic Mahler measure by the Gauss norm, cross-checked against the
    Newton polygon form of Jensen's formula."""
    f = _as_poly(f)
    if f.is_zero():
        raise ZeroPolynomial("p-adic Mahler measure of zero")
    if not sympy.isprime(p):
        raise BadParameters(f"{p} is not prime")
    gauss = min(vp(c, p) for c in f.coeffs.values())
    poly = newton_polygon(f, p)
    up = sum((s * n for s, n in poly.segments if s > 0), Fraction(0))
    newton = vp(f.lc, p) - up
    if newton != gauss:
        raise InternalMismatch(f"Gauss norm exponent {gauss} != Newton polygon exponent {newton}")
    return PadicMahler(p, int(gauss))


# ---------------------------------------------------------------------------
# Teichmueller data and residue orbits
# ---------------------------------------------------------------------------

@dataclass
class TeichmullerEntry:
    factor: tuple  # monic irreducible mod p, ascending
    degree: int
    order: int


@dataclass
class TeichmullerData:
    p: int
    entries: list
    m: int

    @property
    def orders(self):
        """Orders of all roots with multiplicity, sorted."""
        out = []
        for e in self.entries:
            out.extend([e.order] * e.degree)
        return sorted(out)

    def to_json(self):
        return {"p": self.p, "m": self.m,
                "entries": [{"factor": list(e.factor), "degree": e.degree, "order": e.order}
                            for e in self.entries],
                "orders": self.orders}


def _mod_p_factors(f, p):
    f = _as_poly(f).normalized()
    if f.lc % p == 0 or f.tc % p == 0:
        raise RootsNotUnits(f"p = {p} divides the leading or constant coefficient")
    _, facs = factor_mod_p(f, p)
    if any(e > 1 for _, e in facs):
        raise NotSquarefreeModP(f"f is not squarefree mod {p}")
    return [h for h, _ in facs]


def teichmuller_data(f, p):
    """Orders of the root residues mod p, one entry per irreducible factor."""
    if not sympy.isprime(p):
        raise BadParameters(f"{p} is not prime")
    entries = [TeichmullerEntry(h, len(h) - 1, ff_element_order(h, p)) for h in _mod_p_factors(f, p)]
    m = 1
    for e in entries:
        m = lcm(m, e.order)
    return TeichmullerData(p, entries, m)


def minimal_polynomial_mod_p(y, g, p):
    """Minimal polynomial over F_p of ``y`` in ``F_p[x]/(g)``, g irreducible."""
    e = len(g) - 1
    basis = []  # (pivot, reduced vector, combination of powers of y)
    for k in range(e + 1):
        v = list(poly_pow_mod(y, k, g, p)) + [0] * e
        v = [c % p for c in v[:e]]
        combo = [0] * k + [1]
        for piv, bv, bc in basis:
            f = v[piv]
            if f:
                v = [(a - f * b) % p for a, b in zip(v, bv)]
                combo = [(a - f * (bc[i] if i < len(bc) else 0)) % p for i, a in enumerate(combo)]
        piv = next((i for i, c in enumerate(v) if c), None)
        if piv is None:
            return tuple(combo)
        inv = pow(v[piv], -1, p)
        basis.append((piv, [c * inv % p for c in v], [c * inv % p for c in combo]))
    raise AssertionError("powers of y stayed independent beyond the degree")


EXTENSION_CAP = 24


def _multiset(descs):
    out = {}
    for d in descs:
        out[d] = out.get(d, 0) + 1
    return tuple(sorted(out.items(), key=lambda kv: (len(kv[0]), kv[0][::-1])))


def power_multiset(ms, p, u):
    """Raise every residue described by ``ms`` (pairs of minimal polynomial
    and count) to the u-th power."""
    descs = []
    for g, count in ms:
        y = poly_pow_mod((0, 1), u, g, p)
        descs.extend([minimal_polynomial_mod_p(y, g, p)] * count)
    return _multiset(descs)


def residue_multiset(f, p):
    """Root residues of ``f`` mod p as (minimal polynomial, count) pairs."""
    facs = _mod_p_factors(f, p)
    E = 1
    for h in facs:
        E = lcm(E, len(h) - 1)
    if E > EXTENSION_CAP:
        raise ExtensionTooLarge(f"common extension degree {E} > {EXTENSION_CAP}")
    return _multiset(facs)


def residue_power_orbit(f, p, u):
    """Residue multiset after raising every root residue to the u-th power."""
    data = teichmuller_data(f, p)
    if gcd(u, data.m) != 1:
        raise BadParameters(f"u = {u} is not prime to m = {data.m}")
    return power_multiset(residue_multiset(f, p), p, u % data.m if data.m > 1 else 1)


def residue_orbit(f, p):
    """``{u: residue_power_orbit(f, p, u)}`` for u in (Z/m)^*."""
    data = teichmuller_data(f, p)
    base = residue_multiset(f, p)
    units = [u for u in range(1, data.m + 1) if gcd(u, data.m) == 1] if data.m > 1 else [1]
    return {u: power_multiset(base, p, u) for u in units}


def linear_residues(ms, p):
    """Residues with degree-one descriptors, with multiplicity, sorted."""
    out = []
    for g, count in ms:
        if len(g) == 2:
            out.extend([(-g[0]) % p] * count)
    return sorted(out)


# ---------------------------------------------------------------------------
# split-prime scan
# ---------------------------------------------------------------------------

def integer_discriminant(f):
    a = _as_poly(f).normalized().to_list()
    n = len(a) - 1
    if n < 1:
        raise BadParameters("discriminant of a constant")
    if n == 1:
        return 1
    r = Fraction(presultant(a, pderiv(a))) / a[-1]
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return int(sign * r)


def galois_closure_degree(f):
    n = _as_poly(f).normalized().max_deg
    if n <= 2:
        return n
    if n == 3:
        disc = integer_discriminant(f)
        return 3 if disc > 0 and isqrt(disc) ** 2 == disc else 6
    raise GaloisDegreeUnknown(f"degree {n} > 3: supply d")


@dataclass
class SplitRow:
    p: int
    splits: bool
    excluded: bool

    def to_json(self):
        return {"p": self.p, "splits_completely": self.splits, "excluded": self.excluded}


def split_scan(f, d=None, p_max=200):
    """For primes p <= p_max with d | p - 1: does f split into distinct
    linear factors mod p?"""
    f = _as_poly(f).normalized()
    content, facs = factor_over_z(f)
    if len(facs) != 1 or facs[0][1] != 1:
        raise ReducibleInput("split_scan needs an irreducible polynomial")
    if d is None:
        d = galois_closure_degree(f)
    disc = integer_discriminant(f)
    rows = []
    for p in sympy.primerange(2, p_max + 1):
        if (p - 1) % d:
            continue
        if disc % p == 0 or f.lc % p == 0 or f.tc % p == 0:
            rows.append(SplitRow(p, False, True))
            continue
        _, mod = factor_mod_p(f, p)
        ok = all(len(h) == 2 and e == 1 for h, e in mod)
        rows.append(SplitRow(p, ok, False))
    return rows


# ---------------------------------------------------------------------------
# volume trend from symmetric powers
# ---------------------------------------------------------------------------

def lobachevsky(theta):
    """``-int_0^theta log|2 sin u| du``."""
    return mpmath.clsin(2, 2 * theta) / 2


@dataclass
class VolumeTrend:
    odd: list
    even: list
    flagged: list
    tau: dict = dc_field(default_factory=dict)

    def to_json(self):
        return {"odd": [[k, mpmath.nstr(v, 12)] for k, v in self.odd],
                "even": [[k, mpmath.nstr(v, 12)] for k, v in self.even],
                "flagged": self.flagged}


def _order_at_one(f):
    """``(a, g)`` with ``f = (t - 1)^a g`` and ``g(1) != 0``."""
    lin = LaurentPoly.from_list([-1, 1], 0, f.field)
    a = 0
    while True:
        q, r = f.divmod_poly(lin)
        if not r.is_zero():
            return a, f
        f, a = q, a + 1


def _value_at_one(f):
    return sum(f.coeffs.values(), f.field.zero if f.field is not None else 0)


def torsion_at_one(pres, rep, amap, k, embedding_index=0, digits=30):
    """Leading behaviour of the k-dimensional symmetric-power torsion at t = 1.

    Returns ``(a, |c|)`` where ``tau_k(t) ~ c (t - 1)^a`` near 1 under the
    chosen complex embedding (``a`` may be negative).
    """
    from .knotgroup import sym_power
    from .twistpoly import wada_invariant

    rk = sym_power(rep, k - 1)
    w = wada_invariant(pres, rk, amap, check_columns=False)
    a_num, g_num = _order_at_one(w.numerator)
    a_den, g_den = _order_at_one(w.denominator)
    val = _value_at_one(g_num) / _value_at_one(g_den)
    with mpmath.workdps(digits):
        return a_num - a_den, abs(val.embed(embedding_index, digits))


def volume_trend(pres, rep, amap, k_max, embedding_index=0, digits=30):
    """``log|A_k(1)| / k^2`` with ``A_k = tau_k / tau_3`` (odd k) or
    ``tau_k / tau_2`` (even k), the value at 1 taken as a limit."""
    if rep.N != 2 or not rep.special:
        raise BadParameters("volume_trend needs a 2-dimensional special representation")
    if k_max < 3:
        raise BadParameters("k_max must be >= 3")
    taus, flagged = {}, []
    for k in range(2, k_max + 1):
        taus[k] = torsion_at_one(pres, rep, amap, k, embedding_index, digits)
    odd, even = [], []
    with mpmath.workdps(digits):
        for k in sorted(taus):
            base = 3 if k % 2 else 2
            (a, c), (a0, c0) = taus[k], taus[base]
            # A_k(1) is finite and nonzero only when the orders at t = 1 agree
            if a != a0:
                flagged.append(k)
                continue
            (odd if k % 2 else even).append((k, mpmath.log(c / c0) / k ** 2))
    if not odd and not even:
        raise DegenerateAtOne("every ratio degenerates at t = 1")
    return VolumeTrend(odd, even, flagged, taus)
