"""Laurent polynomials in one variable ``t`` over Z, Q or a number field.

Coefficients are Python ``int``/``Fraction`` (rational ring) or ``NFElem``
instances (number-field ring).  The class itself is agnostic: it only uses
``+ - * /`` and ``== 0`` on coefficients, so any exact field works.

Low-level routines operate on *ascending* coefficient lists (``[a0, a1, ...]``)
without trailing zeros; they are reused by the number-field code.
"""

from fractions import Fraction

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication,
    parse_expr,
    standard_transformations,
)

from .errors import ZeroPolynomial, TapkitError


def norm_scalar(c):
    """Collapse integral ``Fraction`` values to ``int``."""
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _is_rational(c):
    return isinstance(c, (int, Fraction))


def field_div(a, b):
    if _is_rational(a) and _is_rational(b):
        return norm_scalar(Fraction(a) / b)
    return a / b


# ---------------------------------------------------------------------------
# ascending-list polynomial kernels
# ---------------------------------------------------------------------------

def ptrim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def padd(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    return ptrim(out)


def psub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return ptrim(out)


def pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return ptrim(out)


def pscale(a, c):
    return ptrim([x * c for x in a])


def pdivmod(a, b):
    """Division with remainder over a field."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    if len(a) <= db:
        return [], ptrim(a)
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c == 0:
            continue
        c = field_div(c, lb)
        q[k - db] = c
        for i in range(db + 1):
            a[k - db + i] = a[k - db + i] - c * b[i]
    return ptrim([norm_scalar(x) for x in q]), ptrim([norm_scalar(x) for x in a[:db]])


def pmonic(a):
    if not a:
        return []
    lc = a[-1]
    return [norm_scalar(field_div(x, lc)) for x in a]


def pgcd(a, b):
    """Monic gcd over a field."""
    a, b = ptrim(a), ptrim(b)
    while b:
        a, b = b, pdivmod(a, b)[1]
    return pmonic(a)


def pxgcd(a, b):
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    r0, r1 = ptrim(a), ptrim(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1))
        t0, t1 = t1, psub(t0, pmul(q, t1))
    if not r0:
        return [], [], []
    lc = r0[-1]
    inv = field_div(1, lc)
    return pscale(r0, inv), pscale(s0, inv), pscale(t0, inv)


def pderiv(a):
    return ptrim([i * a[i] for i in range(1, len(a))])


def peval(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def presultant(a, b):
    """Resultant of two nonzero polynomials over a field (Euclidean scheme).

    Uses ``Res(a, b) = (-1)^(deg a deg b) lc(b)^(deg a - deg r) Res(b, r)``
    with ``r = a mod b``.
    """
    a, b = ptrim(a), ptrim(b)
    if not a or not b:
        raise ZeroPolynomial("resultant of the zero polynomial")
    acc = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return norm_scalar(acc * b[0] ** da) if da else norm_scalar(acc * 1)
        if da == 0:
            return norm_scalar(acc * a[0] ** db)
        r = pdivmod(a, b)[1]
        if not r:
            return 0
        dr = len(r) - 1
        if (da * db) % 2:
            acc = -acc
        acc = acc * b[-1] ** (da - dr)
        a, b = b, r


def bareiss_det(rows, exact_div):
    """Fraction-free determinant over an integral domain.

    ``exact_div(x, y)`` must return the exact quotient ``x / y``.
    """
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = None
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0 * m[0][0]
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                v = row_i[j] * pivot - mik * row_k[j]
                row_i[j] = exact_div(v, prev) if prev is not None else v
            row_i[k] = 0 * pivot
        prev = pivot
    d = m[n - 1][n - 1]
    return d if sign == 1 else -d


def field_det(rows):
    """Determinant over a field by Gaussian elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    det = 1
    for k in range(n):
        piv = None
        for i in range(k, n):
            if m[i][k] != 0:
                piv = i
                break
        if piv is None:
            return 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        p = m[k][k]
        det = det * p
        for i in range(k + 1, n):
            if m[i][k] == 0:
                continue
            f = field_div(m[i][k], p)
            for j in range(k + 1, n):
                m[i][j] = m[i][j] - f * m[k][j]
    return norm_scalar(det)


# ---------------------------------------------------------------------------
# LaurentPoly
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Immutable Laurent polynomial ``sum c_k t^k``.

    ``field`` is ``None`` for rational coefficients, otherwise the
    ``NumberField`` whose elements are the coefficients.
    """

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs=None, field=None):
        if coeffs is None:
            coeffs = {}
        elif not isinstance(coeffs, dict):
            coeffs = dict(enumerate(coeffs))
        clean = {}
        for k, c in coeffs.items():
            if field is not None:
                c = field(c)
            else:
                c = norm_scalar(c)
            if c != 0:
                clean[int(k)] = c
        self.coeffs = clean
        self.field = field

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_list(cls, values, low=0, field=None):
        return cls({low + i: c for i, c in enumerate(values)}, field)

    @classmethod
    def monomial(cls, c=1, k=1, field=None):
        return cls({k: c}, field)

    @classmethod
    def const(cls, c, field=None):
        return cls({0: c}, field)

    def _like(self, coeffs):
        return LaurentPoly(coeffs, self.field)

    # -- basic data ---------------------------------------------------------
    def is_zero(self):
        return not self.coeffs

    @property
    def min_deg(self):
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no degree")
        return min(self.coeffs)

    @property
    def max_deg(self):
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no degree")
        return max(self.coeffs)

    @property
    def span(self):
        return self.max_deg - self.min_deg

    @property
    def lc(self):
        return self.coeffs[self.max_deg]

    @property
    def tc(self):
        return self.coeffs[self.min_deg]

    def coeff(self, k):
        if k in self.coeffs:
            return self.coeffs[k]
        return self.field.zero if self.field is not None else 0

    @property
    def ring(self):
        """``'ZZ'``, ``'QQ'`` or the coefficient ``NumberField``."""
        if self.field is not None:
            return self.field
        if all(isinstance(c, int) for c in self.coeffs.values()):
            return "ZZ"
        return "QQ"

    def is_integral(self):
        if self.field is not None:
            return all(c.is_integral() for c in self.coeffs.values())
        return all(isinstance(c, int) for c in self.coeffs.values())

    def to_list(self):
        """Ascending coefficients starting at ``min_deg``."""
        if not self.coeffs:
            return []
        lo, hi = self.min_deg, self.max_deg
        z = self.field.zero if self.field is not None else 0
        return [self.coeffs.get(k, z) for k in range(lo, hi + 1)]

    def normalized(self):
        """Shift so that ``min_deg == 0``."""
        if not self.coeffs:
            return self
        return self.shift(-self.min_deg)

    def shift(self, k):
        return self._like({e + k: c for e, c in self.coeffs.items()})

    def map_coeffs(self, fn, field=None):
        return LaurentPoly({e: fn(c) for e, c in self.coeffs.items()}, field)

    def is_constant(self):
        return not self.coeffs or set(self.coeffs) == {0}

    # -- arithmetic ---------------------------------------------------------
    def _pair(self, other):
        """Bring ``self`` and ``other`` to a common coefficient ring."""
        if not isinstance(other, LaurentPoly):
            fld = getattr(other, "field", None)
            other = LaurentPoly({0: other}, fld if fld is not None else self.field)
        if other.field == self.field:
            return self, other
        if self.field is None:
            return LaurentPoly(self.coeffs, other.field), other
        if other.field is None:
            return self, LaurentPoly(other.coeffs, self.field)
        raise TypeError("Laurent polynomials over different fields")

    def __add__(self, other):
        a, b = self._pair(other)
        out = dict(a.coeffs)
        for k, c in b.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return a._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        a, b = self._pair(other)
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly) and getattr(other, "field", None) == self.field:
            return self._like({k: c * other for k, c in self.coeffs.items()})
        a, b = self._pair(other)
        out = {}
        for i, x in a.coeffs.items():
            for j, y in b.coeffs.items():
                k = i + j
                out[k] = out[k] + x * y if k in out else x * y
        return a._like(out)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n):
        if n < 0:
            if len(self.coeffs) == 1:
                (k, c), = self.coeffs.items()
                return self._like({k * n: field_div(1, c) ** (-n)})
            raise ValueError("negative power of a non-monomial")
        result = self._like({0: 1})
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            if self.coeffs.keys() != other.coeffs.keys():
                return False
            return all(self.coeffs[k] == other.coeffs[k] for k in self.coeffs)
        if other == 0:
            return not self.coeffs
        return self == LaurentPoly({0: other}, self.field)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(tuple(sorted((k, hash(c)) for k, c in self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    # -- division -----------------------------------------------------------
    def divmod_poly(self, other):
        """Euclidean division of the shifted polynomials; Laurent offsets kept
        on the quotient."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return self, self
        q, r = pdivmod(self.to_list(), other.to_list())
        lo = self.min_deg
        return (LaurentPoly.from_list(q, lo - other.min_deg, self.field),
                LaurentPoly.from_list(r, lo, self.field))

    def exact_div(self, other):
        """Quotient in the Laurent ring; raises ``ArithmeticError`` if inexact."""
        if not isinstance(other, LaurentPoly):
            return self._like({k: field_div(c, other) for k, c in self.coeffs.items()})
        if self.is_zero():
            return self
        q, r = self.divmod_poly(other)
        if not r.is_zero():
            raise ArithmeticError("inexact Laurent division")
        return q

    def divides(self, other):
        """True when ``self`` divides ``other`` in the Laurent ring."""
        if self.is_zero():
            return other.is_zero()
        if other.is_zero():
            return True
        return other.divmod_poly(self)[1].is_zero()

    # -- misc ---------------------------------------------------------------
    def __call__(self, x):
        lst = self.to_list()
        if not lst:
            return 0
        v = peval(lst, x)
        lo = self.min_deg
        return v * x ** lo if lo >= 0 else v / x ** (-lo)

    def derivative(self):
        return self._like({k - 1: k * c for k, c in self.coeffs.items() if k != 0})

    def reciprocal(self):
        """``t^span f(1/t)``, normalized to ``min_deg == 0``."""
        if self.is_zero():
            return self
        return self._like({-k: c for k, c in self.coeffs.items()}).normalized()

    def content(self):
        """Positive gcd of integer coefficients (rational ring only)."""
        from math import gcd
        g = 0
        for c in self.coeffs.values():
            g = gcd(g, int(c))
        return g

    def primitive(self):
        g = self.content()
        return self._like({k: c // g for k, c in self.coeffs.items()}) if g else self

    def clear_denominators(self):
        """Smallest positive integer multiple with integer coefficients."""
        from math import lcm
        den = 1
        for c in self.coeffs.values():
            den = lcm(den, Fraction(c).denominator)
        return self * den

    def monic(self):
        return self.exact_div(self.lc)

    def format(self, var="t", descending=True):
        if not self.coeffs:
            return "0"
        terms = []
        keys = sorted(self.coeffs, reverse=descending)
        for k in keys:
            c = self.coeffs[k]
            cs = str(c)
            simple = _is_rational(c) or (hasattr(c, "is_rational") and c.is_rational())
            if simple:
                val = c if _is_rational(c) else c.rational_value()
                neg = val < 0
                mag = -val if neg else val
                mag_s = str(mag)
                if k == 0:
                    body = mag_s
                elif mag == 1:
                    body = _mono(var, k)
                else:
                    body = f"{mag_s}*{_mono(var, k)}"
                terms.append(("-" if neg else "+", body))
            else:
                body = f"({cs})" if k == 0 else f"({cs})*{_mono(var, k)}"
                terms.append(("+", body))
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for s, b in terms[1:]:
            out += f" {s} {b}"
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"LaurentPoly({self.format()})"


def _mono(var, k):
    return var if k == 1 else f"{var}^{k}"


# ---------------------------------------------------------------------------
# helpers on LaurentPoly
# ---------------------------------------------------------------------------

def lgcd(f, g):
    """Monic gcd over the coefficient field, normalized to ``min_deg == 0``.

    Units of the Laurent ring are ``c t^k`` so the result is canonical up to
    that ambiguity; zero only when both inputs vanish.
    """
    if f.is_zero():
        return g.normalized().monic() if not g.is_zero() else g
    if g.is_zero():
        return f.normalized().monic()
    lst = pgcd(f.to_list(), g.to_list())
    return LaurentPoly.from_list(lst, 0, f.field)


def lgcd_many(polys, field=None):
    acc = LaurentPoly({}, field)
    for p in polys:
        acc = lgcd(acc, p)
        if not acc.is_zero() and acc.span == 0:
            break
    return acc


def squarefree_decomposition(f):
    """Yun's algorithm over Q: returns ``[(g_i, i)]`` with monic squarefree
    pairwise coprime ``g_i`` and ``f = lc * t^k * prod g_i^i``."""
    a = f.normalized().to_list()
    # strip factors of t as a separate part
    out = []
    b = pderiv(a)
    c = pgcd(a, b)
    w = pdivmod(a, c)[0]
    y = pdivmod(b, c)[0]
    z = psub(y, pderiv(w))
    i = 1
    while len(w) > 1:
        g = pgcd(w, z)
        if len(g) > 1:
            out.append((LaurentPoly.from_list(g, 0, f.field), i))
        w = pdivmod(w, g)[0]
        y = pdivmod(z, g)[0]
        z = psub(y, pderiv(w))
        i += 1
    return out


def poly_det(matrix):
    """Exact determinant of a square matrix of ``LaurentPoly`` entries.

    Rows are first shifted into ``F[t]`` (the determinant is corrected by the
    inverse shift afterwards), then fraction-free elimination is run.
    """
    n = len(matrix)
    if n == 0:
        return None
    field = None
    for row in matrix:
        for e in row:
            if isinstance(e, LaurentPoly):
                field = e.field
                break
    shifted = []
    total = 0
    for row in matrix:
        nz = [e for e in row if not e.is_zero()]
        if not nz:
            return LaurentPoly({}, field)
        s = min(e.min_deg for e in nz)
        total += s
        shifted.append([e.shift(-s) for e in row])
    d = bareiss_det(shifted, lambda x, y: x.exact_div(y))
    return d.shift(total)


# ---------------------------------------------------------------------------
# text parsing
# ---------------------------------------------------------------------------

_TRANSFORMS = standard_transformations + (convert_xor, implicit_multiplication)


def _sympify(text, names):
    if not isinstance(text, str) or not text.strip():
        raise TapkitError(f"cannot parse polynomial {text!r}")
    local = {n: sympy.Symbol(n) for n in names}
    try:
        expr = parse_expr(text, local_dict=local, transformations=_TRANSFORMS)
    except Exception as exc:  # sympy raises a zoo of types here
        raise TapkitError(f"cannot parse polynomial {text!r}: {exc}") from None
    free = {s.name for s in expr.free_symbols}
    if not free <= set(names):
        raise TapkitError(f"unexpected symbols {sorted(free - set(names))} in {text!r}")
    return sympy.expand(expr)


def _terms(expr, sym):
    out = {}
    for term in sympy.Add.make_args(expr):
        c, e = term.as_coeff_exponent(sym)
        if not e.is_Integer:
            raise TapkitError(f"non-integer exponent in {term}")
        out[int(e)] = out.get(int(e), 0) + c
    return out


def _to_fraction(c):
    c = sympy.nsimplify(c) if not c.is_Rational else c
    if not c.is_Rational:
        raise TapkitError(f"coefficient {c} is not rational")
    return norm_scalar(Fraction(int(c.p), int(c.q)))


def parse_poly(text, var="t"):
    """Parse an integer/rational (Laurent) polynomial; returns ``LaurentPoly``."""
    expr = _sympify(text, [var])
    sym = sympy.Symbol(var)
    return LaurentPoly({k: _to_fraction(c) for k, c in _terms(expr, sym).items()})


def parse_laurent(text, var="t", field=None):
    """Parse a Laurent polynomial whose coefficients may involve the field
    generator (named ``field.var``)."""
    if field is None:
        return parse_poly(text, var)
    expr = _sympify(text, [var, field.var])
    sym = sympy.Symbol(var)
    out = {}
    for k, c in _terms(expr, sym).items():
        out[k] = field.parse(c)
    return LaurentPoly(out, field)
