"""Exact arithmetic in Q(alpha) for alpha a root of a monic irreducible
integer polynomial, plus finite-field helpers (factoring mod p, element
orders).

Elements are stored on the power basis 1, alpha, ..., alpha^(d-1).  The
order Z[alpha] stands in for the ring of integers: an element is *integral*
when all its coordinates are integers.
"""

from fractions import Fraction

import mpmath
import sympy
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor, gf_from_int_poly, gf_pow_mod

from .errors import (
    DegreeCapExceeded,
    FieldMismatch,
    NotMonic,
    NotSquarefree,
    PrecisionNotReached,
    Reducible,
    TapkitError,
    ZeroPolynomialModP,
    ZeroRoot,
)
from .laurent import (
    LaurentPoly,
    field_det,
    norm_scalar,
    parse_poly,
    pderiv,
    pgcd,
    presultant,
    ptrim,
    pxgcd,
)

DEGREE_CAP = 32


class NumberField:
    """Q(alpha) with alpha a root of ``min_poly`` (ascending integer coefficients).

    >>> K = NumberField("u^3 + u^2 + 2*u + 1")
    >>> K.degree, K.discriminant
    (3, -23)
    """

    def __init__(self, min_poly, var="u", check=True):
        if isinstance(min_poly, str):
            min_poly = parse_poly(min_poly, var)
        if isinstance(min_poly, LaurentPoly):
            if min_poly.is_zero() or min_poly.min_deg < 0:
                raise TapkitError("minimal polynomial must be an ordinary polynomial")
            min_poly = [min_poly.coeff(k) for k in range(min_poly.max_deg + 1)]
        coeffs = ptrim(norm_scalar(Fraction(c)) for c in min_poly)
        if len(coeffs) < 2:
            raise NotMonic("minimal polynomial must have degree >= 1")
        if not all(isinstance(c, int) for c in coeffs):
            raise NotMonic("minimal polynomial must have integer coefficients")
        if coeffs[-1] != 1:
            raise NotMonic(f"leading coefficient {coeffs[-1]} != 1")
        self.min_poly = tuple(coeffs)
        self.degree = len(coeffs) - 1
        self.var = var
        self._emb_cache = {}
        self._disc = None
        if self.degree > DEGREE_CAP:
            raise DegreeCapExceeded(f"degree {self.degree} > {DEGREE_CAP}")
        if check:
            self._verify()

    def _verify(self):
        m = list(self.min_poly)
        if len(pgcd(m, pderiv(m))) > 1:
            raise NotSquarefree("minimal polynomial has a repeated factor")
        if self.degree > 1:
            from .twistpoly import factor_over_z
            content, factors = factor_over_z(LaurentPoly.from_list(m))
            if len(factors) > 1 or factors[0][1] > 1:
                raise Reducible(factors[0][0])

    # -- identity -----------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, NumberField) and self.min_poly == other.min_poly

    def __hash__(self):
        return hash(("NumberField", self.min_poly))

    def __repr__(self):
        return f"NumberField({self.poly_string()})"

    def poly_string(self):
        return LaurentPoly.from_list(self.min_poly).format(self.var)

    # -- elements -----------------------------------------------------------
    def __call__(self, value):
        if isinstance(value, NFElem):
            if value.field != self:
                raise FieldMismatch("element belongs to another field")
            return value
        if isinstance(value, (int, Fraction)):
            return NFElem(self, [value])
        if isinstance(value, (list, tuple)):
            return NFElem(self, value)
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, sympy.Basic):
            return self.parse(value)
        raise TypeError(f"cannot coerce {value!r} into {self}")

    @property
    def zero(self):
        return NFElem(self, [0])

    @property
    def one(self):
        return NFElem(self, [1])

    @property
    def gen(self):
        return NFElem(self, [0, 1]) if self.degree > 1 else NFElem(self, [-self.min_poly[0]])

    def parse(self, expr):
        if isinstance(expr, str):
            p = parse_poly(expr, self.var)
        else:
            sym = sympy.Symbol(self.var)
            poly = sympy.Poly(sympy.expand(expr), sym, domain=sympy.QQ)
            p = LaurentPoly({m[0]: Fraction(int(c.p), int(c.q)) for m, c in poly.terms()})
        if p.is_zero():
            return self.zero
        if p.min_deg < 0:
            raise TapkitError("negative powers of the field generator are not supported")
        return NFElem(self, [p.coeff(k) for k in range(p.max_deg + 1)])

    # -- invariants ---------------------------------------------------------
    @property
    def discriminant(self):
        if self._disc is None:
            m = list(self.min_poly)
            d = self.degree
            if d == 1:
                self._disc = 1
            else:
                r = presultant(m, pderiv(m))
                sign = -1 if (d * (d - 1) // 2) % 2 else 1
                self._disc = norm_scalar(sign * r)
        return self._disc

    def embeddings(self, digits=30):
        """Complex roots of the minimal polynomial, sorted by (real, imag)."""
        digits = int(digits)
        if digits < 10:
            raise ValueError("digits must be >= 10")
        if digits not in self._emb_cache:
            self._emb_cache[digits] = _complex_roots(self.min_poly, digits)
        return self._emb_cache[digits]

    def torsion_units(self):
        """Roots of unity in Q(alpha), deterministic order, starting with 1, -1."""
        if not hasattr(self, "_torsion"):
            self._torsion = _roots_of_unity(self)
        return self._torsion

    def __reduce__(self):
        return (NumberField, (list(self.min_poly), self.var, False))


def _complex_roots(coeffs, digits):
    d = len(coeffs) - 1
    tol = mpmath.mpf(10) ** (-digits)
    with mpmath.workdps(digits + 20):
        desc = [mpmath.mpf(c) for c in reversed(coeffs)]
        if d == 1:
            roots = [mpmath.mpc(-desc[1])]
        else:
            try:
                roots = mpmath.polyroots(desc, maxsteps=400 + 20 * d, extraprec=4 * digits + 60)
            except mpmath.libmp.NoConvergence as exc:
                raise PrecisionNotReached(str(exc)) from None
        deriv = [c * (d - i) for i, c in enumerate(desc[:-1])]
        refined = []
        for r in roots:
            r = mpmath.mpc(r)
            for _ in range(4):
                fr = mpmath.polyval(desc, r)
                dr = mpmath.polyval(deriv, r)
                if dr == 0:
                    break
                r = r - fr / dr
            if abs(mpmath.polyval(desc, r)) >= tol:
                raise PrecisionNotReached(f"root refinement failed near {mpmath.nstr(r, 10)}")
            if abs(r.imag) < tol:
                r = mpmath.mpc(r.real, 0)
            refined.append(r)
        scale = mpmath.mpf(10) ** (digits - 5)
        refined.sort(key=lambda z: (int(mpmath.nint(z.real * scale)), z.imag))
    return tuple(refined)


def _roots_of_unity(field):
    """Enumerate torsion units by finding roots of cyclotomic polynomials.

    Only orders k with phi(k) | degree can occur.  Roots of Phi_k in Q(alpha)
    are found as linear factors over the field via sympy.
    """
    from .twistpoly import cyclotomic

    d = field.degree
    units = [field.one, -field.one]
    if d == 1:
        return tuple(units)
    orders = [k for k in range(3, 4 * d * d + 3) if d % sympy.totient(k) == 0]
    if not orders:
        return tuple(units)
    x = sympy.Symbol("_x")
    u = sympy.Symbol(field.var)
    mpoly = sum(c * u ** i for i, c in enumerate(field.min_poly))
    root = sympy.CRootOf(mpoly, 0)
    try:
        K = sympy.QQ.algebraic_field(root)
    except Exception:
        return tuple(units)
    if list(K.ext.coeffs()) != [1, 0]:
        return tuple(units)
    best, zeta = 2, None
    for k in orders:
        phi = cyclotomic(k)
        expr = sum(c * x ** i for i, c in enumerate(phi.to_list()))
        facs = sympy.Poly(expr, x, domain=K).factor_list()[1]
        lin = [f for f, _ in facs if f.degree() == 1]
        if lin and k > best:
            c = lin[0].rep.to_list()
            root = (-c[1] / c[0]).to_list()
            best = k
            zeta = NFElem(field, [Fraction(int(q.numerator), int(q.denominator))
                                  for q in reversed(root)])
    if zeta is None:
        return tuple(units)
    # the torsion group is cyclic; -zeta has order 2k when k is odd
    if best % 2:
        zeta, best = -zeta, 2 * best
    units = []
    z = field.one
    for _ in range(best):
        units.append(z)
        z = z * zeta
    units.sort(key=lambda e: (e != 1, e != -1, e.sort_key()))
    return tuple(units)


class NFElem:
    """Element of a ``NumberField`` stored on the power basis."""

    __slots__ = ("field", "c")

    def __init__(self, field, coeffs):
        d = field.degree
        vals = [norm_scalar(Fraction(x)) if not isinstance(x, int) else x for x in coeffs]
        if len(vals) > d:
            vals = _reduce(vals, field.min_poly)
        vals = vals + [0] * (d - len(vals))
        self.field = field
        self.c = tuple(vals)

    # -- coercion helpers ---------------------------------------------------
    def _other(self, other):
        if isinstance(other, NFElem):
            if other.field != self.field:
                raise FieldMismatch("elements of different number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return NFElem(self.field, [other])
        return None

    # -- predicates ---------------------------------------------------------
    def is_zero(self):
        return not any(self.c)

    def is_rational(self):
        return not any(self.c[1:])

    def rational_value(self):
        return self.c[0]

    def is_integral(self):
        return all(isinstance(x, int) for x in self.c)

    def sort_key(self):
        return tuple(Fraction(x) for x in self.c)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return NFElem(self.field, [a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return NFElem(self.field, [-a for a in self.c])

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return NFElem(self.field, [a - b for a, b in zip(self.c, o.c)])

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NFElem(self.field, [a * other for a in self.c])
        o = self._other(other)
        if o is None:
            return NotImplemented
        a, b = self.c, o.c
        d = len(a)
        prod = [0] * (2 * d - 1)
        for i in range(d):
            ai = a[i]
            if ai == 0:
                continue
            for j in range(d):
                if b[j] != 0:
                    prod[i + j] += ai * b[j]
        return NFElem(self.field, _reduce(prod, self.field.min_poly))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a number field")
        if self.is_rational():
            return NFElem(self.field, [Fraction(1) / self.c[0]])
        g, s, _ = pxgcd(ptrim(self.c), list(self.field.min_poly))
        return NFElem(self.field, s)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return NFElem(self.field, [Fraction(a) / other for a in self.c])
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, NFElem):
            return self.field == other.field and self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.c[0] == other
        return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self.is_rational():
            return hash(self.c[0])
        return hash(self.c)

    def __bool__(self):
        return not self.is_zero()

    # -- invariants ---------------------------------------------------------
    def norm(self):
        return nf_norm(self)

    def trace(self):
        m = nf_regular_rep(self)
        return norm_scalar(sum(Fraction(m[i][i]) for i in range(len(m))))

    def embed(self, index, digits=30):
        root = self.field.embeddings(digits)[index]
        with mpmath.workdps(digits + 20):
            acc = mpmath.mpc(0)
            for x in reversed(self.c):
                acc = acc * root + mpmath.mpf(Fraction(x).numerator) / Fraction(x).denominator
            return acc

    def __str__(self):
        return LaurentPoly.from_list(list(self.c)).format(self.field.var)

    def __repr__(self):
        return f"NFElem({self})"

    def __reduce__(self):
        return (NFElem, (self.field, list(self.c)))


def _reduce(vals, m):
    vals = list(vals)
    d = len(m) - 1
    for k in range(len(vals) - 1, d - 1, -1):
        c = vals[k]
        if c == 0:
            continue
        vals[k] = 0
        for i in range(d):
            if m[i]:
                vals[k - d + i] -= c * m[i]
    return [norm_scalar(x) for x in vals[:d]]


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def nf_make(min_poly, var="u"):
    return NumberField(min_poly, var)


def nf_arith(a, b, op):
    if isinstance(a, NFElem) and isinstance(b, NFElem) and a.field != b.field:
        raise FieldMismatch("elements of different number fields")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def nf_norm(x):
    """Norm via ``Res(m, X)``; for monic m this is the product of conjugates."""
    if x.is_zero():
        return 0
    return norm_scalar(presultant(list(x.field.min_poly), ptrim(x.c)))


def nf_embeddings(field, digits=30):
    return list(field.embeddings(digits))


def nf_regular_rep(x):
    """Matrix of multiplication by ``x`` on the basis 1, alpha, ...

    Column j holds the coordinates of ``x * alpha^j``.
    """
    K = x.field
    d = K.degree
    cols = []
    basis = NFElem(K, [1])
    alpha = NFElem(K, [0, 1]) if d > 1 else None
    for j in range(d):
        cols.append((x * basis).c)
        if alpha is not None:
            basis = basis * alpha
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def regular_rep_det(x):
    return field_det(nf_regular_rep(x))


# ---------------------------------------------------------------------------
# finite fields
# ---------------------------------------------------------------------------

def _ascending_ints(f):
    if isinstance(f, LaurentPoly):
        if f.is_zero():
            return []
        f = f.normalized()
        return [int(f.coeff(k)) for k in range(f.max_deg + 1)]
    return ptrim(int(c) for c in f)


def factor_mod_p(f, p):
    """Factor an integer polynomial over the field with p elements.

    Returns ``(unit, [(factor, multiplicity), ...])`` where each factor is a
    monic ascending coefficient tuple with entries in ``range(p)``; factors are
    sorted by degree then coefficients.
    """
    if not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")
    coeffs = _ascending_ints(f)
    red = [c % p for c in coeffs]
    if not any(red):
        raise ZeroPolynomialModP(f"all coefficients divisible by {p}")
    desc = gf_from_int_poly(list(reversed(coeffs)), p)
    unit, facs = gf_factor(desc, p, ZZ)
    out = [(tuple(int(c) % p for c in reversed(g)), int(e)) for g, e in facs]
    out.sort(key=lambda fe: (len(fe[0]), fe[0][::-1], fe[1]))
    return int(unit) % p, out


def poly_pow_mod(base, n, mod, p):
    """``base^n mod (mod, p)`` on ascending lists."""
    r = gf_pow_mod(list(reversed([c % p for c in base])) or [0], n,
                   list(reversed([c % p for c in mod])), p, ZZ)
    return tuple(int(c) for c in reversed(r))


def ff_element_order(h, p):
    """Multiplicative order of a root of the irreducible ``h`` over F_p."""
    h = tuple(c % p for c in _ascending_ints(h))
    if not h or h[0] == 0:
        raise ZeroRoot("h(0) = 0: root is zero")
    e = len(h) - 1
    if e == 0:
        raise ValueError("constant polynomial has no roots")
    n = p ** e - 1
    order = n
    for q in sympy.factorint(n):
        while order % q == 0 and poly_pow_mod((0, 1), order // q, h, p) == (1,):
            order //= q
    return order
