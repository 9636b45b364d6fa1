"""Laurent-polynomial invariants: resultants, cyclotomic factors, minor gcds,
twisted Alexander polynomials, Wada invariants, norm polynomials and the
Hillar-class test.

All gcd computations run over the coefficient *field*; results are cleared to
integral representatives and put in a canonical form afterwards.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import comb, lcm

import sympy

from .errors import (
    AllColumnsDegenerate,
    DeficiencyError,
    DegreeCapExceeded,
    MinorCapExceeded,
    NonTorsion,
    ZeroPolynomial,
)
from .laurent import LaurentPoly, lgcd, lgcd_many, poly_det, presultant, ptrim

MINOR_CAP = comb(12, 6)
FACTOR_DEGREE_CAP = 32

EQUAL = "equal"
INCONCLUSIVE = "inconclusive"
DIFFERENT = "different"


# ---------------------------------------------------------------------------
# units and canonical forms
# ---------------------------------------------------------------------------

def _units(f):
    if f.field is None:
        return (1, -1)
    return f.field.torsion_units()


def integral_representative(f):
    """Scale by a positive integer so every coefficient is integral."""
    if f.is_zero() or f.is_integral():
        return f
    if f.field is None:
        return f.clear_denominators().primitive()
    den = 1
    for c in f.coeffs.values():
        for x in c.c:
            den = lcm(den, Fraction(x).denominator)
    return f * den if den != 1 else f


def _coefficient_key(g):
    out = []
    for k in range(g.max_deg, g.min_deg - 1, -1):
        c = g.coeff(k)
        out.extend(c.c if not isinstance(c, (int, Fraction)) else (c,))
    return tuple(out)


def canonical_form(f):
    """Normalize ``f`` up to ``t^k`` and the torsion units of its ring.

    Over Z/Q the leading coefficient is made positive; over a number field
    the unit multiple with the largest coordinate vector (leading
    coefficient first) is chosen, which only depends on the orbit.
    """
    if f.is_zero():
        raise ZeroPolynomial("canonical form of the zero polynomial")
    g = f.normalized()
    if g.field is None:
        return -g if g.lc < 0 else g
    return max((g * z for z in _units(g)), key=_coefficient_key)


def compare_up_to_units(f, g):
    """``EQUAL`` when ``f = unit * t^k * g`` for a recognized unit,
    ``INCONCLUSIVE`` when the ratio is an algebraic unit of infinite order
    (not searched), ``DIFFERENT`` otherwise."""
    if f.is_zero() or g.is_zero():
        return EQUAL if f.is_zero() and g.is_zero() else DIFFERENT
    if f.field is None and g.field is not None:
        f = LaurentPoly(f.coeffs, g.field)
    if g.field is None and f.field is not None:
        g = LaurentPoly(g.coeffs, f.field)
    a, b = f.normalized(), g.normalized()
    if a.max_deg != b.max_deg:
        return DIFFERENT
    c = a.lc / b.lc if a.field is not None else Fraction(a.lc) / b.lc
    if a != b * c:
        return DIFFERENT
    if c in _units(a):
        return EQUAL
    if a.field is not None and c.is_integral() and abs(c.norm()) == 1:
        return INCONCLUSIVE
    return DIFFERENT


def associated_over_field(f, g):
    """True when ``f = c t^k g`` for some nonzero constant ``c`` of the
    coefficient field (the ambiguity of gcds computed over a field)."""
    if f.is_zero() or g.is_zero():
        return f.is_zero() and g.is_zero()
    if f.field is None and g.field is not None:
        f = LaurentPoly(f.coeffs, g.field)
    if g.field is None and f.field is not None:
        g = LaurentPoly(g.coeffs, f.field)
    a, b = f.normalized(), g.normalized()
    if a.max_deg != b.max_deg:
        return False
    c = a.lc / b.lc if a.field is not None else Fraction(a.lc) / b.lc
    return a == b * c


def unit_equal(f, g):
    return compare_up_to_units(f, g) == EQUAL


@dataclass(frozen=True)
class UnitClass:
    """A Laurent polynomial up to ``t^k`` and torsion units (canonical form)."""

    poly: LaurentPoly

    @classmethod
    def of(cls, f):
        if f.is_zero():
            return cls(f)
        return cls(canonical_form(integral_representative(f)))

    def is_zero(self):
        return self.poly.is_zero()

    @property
    def ring_tag(self):
        r = self.poly.ring
        return r if isinstance(r, str) else f"NF[{r.poly_string()}]"

    def equals(self, other):
        other = other.poly if isinstance(other, UnitClass) else other
        return compare_up_to_units(self.poly, other)

    def __eq__(self, other):
        if isinstance(other, (UnitClass, LaurentPoly)):
            return self.equals(other) == EQUAL
        return NotImplemented

    def __hash__(self):
        return hash(self.poly)

    def to_json(self):
        return {"ring": self.ring_tag,
                "coefficients": [str(c) for c in self.poly.to_list()]}

    def __str__(self):
        return self.poly.format()


# ---------------------------------------------------------------------------
# resultants and cyclotomics
# ---------------------------------------------------------------------------

def resultant(f, g):
    """Resultant of the polynomials obtained by shifting ``f`` and ``g`` to
    ``min_deg == 0``."""
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomial("resultant of the zero polynomial")
    return presultant(f.normalized().to_list(), g.normalized().to_list())


def _t_n_minus_one(n):
    return [-1] + [0] * (n - 1) + [1]


def _integral_cyclic_resultant(n, g):
    """``Res(t^n - 1, g)`` for an integer ``g`` (ascending, degree >= 1).

    The first Euclidean step is done by integer pseudo-division, which
    keeps the expensive reduction of ``t^n`` out of rational arithmetic.
    """
    d, lc = len(g) - 1, g[-1]
    v = [1] + [0] * (d - 1)  # lc^m t^m mod g after m steps
    for _ in range(n):
        top = v[-1]
        v = [lc * a - top * b for a, b in zip([0] + v[:-1], g)]
    s = n
    v[0] -= lc ** s
    r = ptrim(v)
    sign = -1 if (n * d) % 2 else 1
    if not r:
        return 0
    # Res(t^n - 1, g) = (-1)^(nd) lc^(n - deg r) Res(g, r) / lc^(s d)
    num = sign * lc ** (n - (len(r) - 1)) * presultant(g, r)
    den = lc ** (s * d)
    q, rem = divmod(num, den)
    if rem:
        raise ArithmeticError("cyclic resultant is not integral")
    return q


def cyclic_resultant(f, n):
    """``prod_{zeta^n = 1} f(zeta)`` computed exactly as ``Res(t^n - 1, f)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if f.is_zero():
        return 0
    g = f.normalized()
    if g.is_integral() and g.max_deg >= 1:
        r = _integral_cyclic_resultant(n, [int(c) for c in g.to_list()])
    else:
        r = presultant(_t_n_minus_one(n), g.to_list())
    # f = t^k g and prod zeta = (-1)^(n+1)
    k = f.min_deg
    if k % 2 and n % 2 == 0:
        r = -r
    return r


@lru_cache(maxsize=None)
def cyclotomic(m):
    """The m-th cyclotomic polynomial over Z."""
    if m < 1:
        raise ValueError("m must be >= 1")
    num = LaurentPoly.from_list(_t_n_minus_one(m))
    for d in range(1, m):
        if m % d == 0:
            num = num.exact_div(cyclotomic(d))
    return num


def totient(m):
    return int(sympy.totient(m))


def strip_cyclotomic(f):
    """Divide out all cyclotomic factors.

    Returns ``(core, [(m, multiplicity), ...])`` with
    ``f == core * prod cyclotomic(m)**multiplicity``.
    """
    if f.is_zero():
        raise ZeroPolynomial("cannot strip the zero polynomial")
    core = f
    found = []
    bound = 2 * f.span ** 2 + 2
    for m in range(1, bound + 1):
        if core.span == 0:
            break
        if totient(m) > core.span:
            continue
        phi = cyclotomic(m)
        mult = 0
        while core.span >= phi.span:
            q, r = core.divmod_poly(phi)
            if not r.is_zero():
                break
            core = q
            mult += 1
        if mult:
            found.append((m, mult))
    return core, found


def psi(f, n):
    """``gcd(f, t^n - 1)`` over Q for integer ``f`` (monic, from cyclotomic data)."""
    _, facs = strip_cyclotomic(f)
    out = LaurentPoly.const(1)
    for m, _mult in facs:
        if n % m == 0:
            out = out * cyclotomic(m)
    return out


# ---------------------------------------------------------------------------
# minors, twisted Alexander polynomials, Wada invariant
# ---------------------------------------------------------------------------

def _field_of(matrix):
    for row in matrix:
        for e in row:
            return e.field
    return None


def minor_gcd(matrix, k):
    """gcd of all k-by-k minors of a matrix of Laurent polynomials."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    if k < 1 or k > min(rows, cols):
        raise ValueError(f"minor size {k} out of range for {rows}x{cols} matrix")
    n_combos = comb(rows, k) * comb(cols, k)
    if n_combos > MINOR_CAP:
        raise MinorCapExceeded(f"{n_combos} minors exceed the cap {MINOR_CAP}")
    fld = _field_of(matrix)
    minors = []
    for rs in combinations(range(rows), k):
        for cs in combinations(range(cols), k):
            sub = [[matrix[i][j] for j in cs] for i in rs]
            minors.append(poly_det(sub))
    g = lgcd_many(minors, fld)
    return UnitClass.of(g)


def _deficiency_one(pres):
    if pres.deficiency != 1:
        raise DeficiencyError(f"deficiency {pres.deficiency} != 1")


def h0_matrix(pres, rep, amap):
    """Horizontally stacked blocks ``rho (x) alpha (x_j) - I``."""
    from .knotgroup import generator_block

    blocks = [generator_block(rep, amap, j) for j in range(pres.n_gens)]
    N = rep.N
    return [[blocks[j][r][c] for j in range(pres.n_gens) for c in range(N)]
            for r in range(N)]


@dataclass
class WadaResult:
    numerator: LaurentPoly
    denominator: LaurentPoly
    quotient: LaurentPoly  # exact numerator / denominator when polynomial
    is_polynomial: bool
    column: int
    reduced: UnitClass
    columns_checked: list = dc_field(default_factory=list)


def wada_invariant(pres, rep, amap, check_columns=True):
    """Wada's invariant ``det A_j / det(rho (x) alpha (x_j) - I)``."""
    from .knotgroup import alexander_matrix, generator_block

    _deficiency_one(pres)
    A = alexander_matrix(pres, rep, amap)
    N = rep.N
    results = []
    for j in range(pres.n_gens):
        den = poly_det(generator_block(rep, amap, j))
        if den.is_zero():
            continue
        keep = [c for c in range(pres.n_gens * N) if not (j * N <= c < (j + 1) * N)]
        num = poly_det([[row[c] for c in keep] for row in A]) if A else LaurentPoly.const(1, rep.field)
        results.append((j, num, den))
        if not check_columns:
            break
    if not results:
        raise AllColumnsDegenerate("det(rho(x_j) t^e - I) vanishes for every generator")
    j, num, den = results[0]
    if num.is_zero():
        raise NonTorsion("Wada numerator vanishes: H_1 is not torsion")
    q, r = num.divmod_poly(den)
    if r.is_zero():
        quotient, is_poly = q, True
    else:
        g = lgcd(num, den)
        quotient, is_poly = num.exact_div(g), False
    checked = [j]
    for j2, num2, den2 in results[1:]:
        if compare_up_to_units(num * den2, num2 * den) != EQUAL:
            raise AssertionError(f"Wada invariant depends on column ({j} vs {j2})")
        checked.append(j2)
    return WadaResult(num, den, quotient, is_poly, j, UnitClass.of(quotient), checked)


def twisted_alexander(pres, rep, amap, i=1, method="wada"):
    """Twisted Alexander polynomial ``Delta_{rho,i}`` as a ``UnitClass``.

    ``i = 0``: gcd of maximal minors of the ``H_0`` presentation.
    ``i = 1``: ``W * Delta_0`` (``method="wada"``) or the gcd of the
    ``(g-1)N`` minors of the Alexander matrix (``method="minors"``), which
    presents ``H_1`` plus a free summand.
    """
    from .knotgroup import alexander_matrix

    _deficiency_one(pres)
    if i == 0:
        return minor_gcd(h0_matrix(pres, rep, amap), rep.N)
    if i != 1:
        raise ValueError("i must be 0 or 1")
    if method == "minors":
        A = alexander_matrix(pres, rep, amap)
        k = (pres.n_gens - 1) * rep.N
        res = minor_gcd(A, k)
        if res.is_zero():
            raise NonTorsion("all maximal minors vanish")
        return res
    w = wada_invariant(pres, rep, amap)
    d0 = twisted_alexander(pres, rep, amap, 0)
    return UnitClass.of(w.quotient * d0.poly)


# ---------------------------------------------------------------------------
# norms, reciprocity
# ---------------------------------------------------------------------------

def norm_polynomial(f):
    """Product of the Galois conjugates of ``f`` (coefficients in Q(alpha)).

    Computed as ``det(sum_k t^k M(c_k))`` where ``M`` is the regular
    representation; equal to ``Res_x(m(x), F(x, t))``.
    """
    from .numfield import nf_regular_rep

    if f.is_zero():
        raise ZeroPolynomial("norm of the zero polynomial")
    if f.field is None:
        return f
    d = f.field.degree
    mats = {k: nf_regular_rep(c) for k, c in f.coeffs.items()}
    entries = [[LaurentPoly({k: m[i][j] for k, m in mats.items()}) for j in range(d)]
               for i in range(d)]
    return poly_det(entries)


def is_reciprocal(f):
    """True when ``t^span f(1/t)`` equals ``f`` up to ``t^k`` and torsion units."""
    if f.is_zero():
        raise ZeroPolynomial("reciprocity of the zero polynomial")
    return compare_up_to_units(f.normalized(), f.reciprocal()) == EQUAL


# ---------------------------------------------------------------------------
# integer factorization
# ---------------------------------------------------------------------------

def factor_over_z(f):
    """Irreducible factorization over Z: ``(content, [(factor, mult), ...])``.

    ``content`` carries the sign; factors are primitive with positive leading
    coefficient, sorted by degree then coefficients.
    """
    if not isinstance(f, LaurentPoly):
        f = LaurentPoly.from_list(list(f))
    if f.is_zero():
        raise ZeroPolynomial("cannot factor zero")
    if not f.is_integral() or f.field is not None:
        raise ValueError("factor_over_z needs integer coefficients")
    if f.min_deg < 0:
        raise ValueError("factor_over_z needs an ordinary polynomial")
    if f.max_deg > FACTOR_DEGREE_CAP:
        raise DegreeCapExceeded(f"degree {f.max_deg} > {FACTOR_DEGREE_CAP}")
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(f.to_list())), x, domain=sympy.ZZ)
    content, facs = poly.factor_list()
    out = []
    for g, e in facs:
        coeffs = [int(c) for c in reversed(g.all_coeffs())]
        if coeffs[-1] < 0:
            coeffs = [-c for c in coeffs]
            if e % 2:
                content = -content
        out.append((LaurentPoly.from_list(coeffs), int(e)))
    if f.min_deg > 0:
        out.append((LaurentPoly.monomial(1, 1), f.min_deg))
    out.sort(key=lambda fe: (fe[0].max_deg, tuple(fe[0].to_list()), fe[1]))
    return int(content), out


# ---------------------------------------------------------------------------
# Hillar classes
# ---------------------------------------------------------------------------

@dataclass
class HillarResult:
    kind: str  # SameClassCertified | SequencesMatch | Distinct
    depth: int
    witness: int = None
    u: LaurentPoly = None
    v: LaurentPoly = None

    def to_json(self):
        out = {"kind": self.kind, "depth": self.depth}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.u is not None:
            out["u"] = [str(c) for c in self.u.to_list()]
            out["v"] = [str(c) for c in self.v.to_list()]
        return out


CERTIFICATE_CAP = 1 << 16


def hillar_test(f, g, depth=64):
    """Compare nonzero cyclic resultant absolute values to ``depth`` and try
    to certify ``f = u v``, ``g = u v*`` from integer factorizations."""
    if depth < 8:
        raise ValueError("depth must be >= 8")
    for n in range(1, depth + 1):
        a, b = abs(cyclic_resultant(f, n)), abs(cyclic_resultant(g, n))
        if a and b and a != b:
            return HillarResult("Distinct", depth, witness=n)
    content, facs = factor_over_z(f.normalized())
    ranges = [range(e + 1) for _, e in facs]
    total = 1
    for _, e in facs:
        total *= e + 1
    if total <= CERTIFICATE_CAP:
        target = canonical_form(g)
        full = LaurentPoly.const(content)
        for p, e in facs:
            full = full * p ** e
        for exps in product(*ranges):
            v = LaurentPoly.const(1)
            for (p, _), k in zip(facs, exps):
                if k:
                    v = v * p ** k
            u = full.exact_div(v)
            if canonical_form(u * v.reciprocal()) == target:
                return HillarResult("SameClassCertified", depth, u=u, v=v)
    return HillarResult("SequencesMatch", depth)
