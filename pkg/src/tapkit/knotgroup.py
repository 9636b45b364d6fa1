"""Group presentations, Fox calculus, two-bridge knots and their parabolic
(Riley) representations, plus symmetric powers of 2-dimensional reps.

Words use letter strings: ``a`` is generator 0, ``A`` its inverse.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

from .errors import (
    BadParameters,
    DimensionError,
    IndexOutOfRange,
    RepCheckFailed,
    RepMismatch,
    TapkitError,
)
from .laurent import LaurentPoly, lgcd_many
from .numfield import NumberField

DEFAULT_NAMES = "abcdefghijklmnopqrstuvwxyz"


# ---------------------------------------------------------------------------
# words
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Word:
    """Sequence of ``(generator, +1/-1)`` letters."""

    letters: tuple = ()

    @classmethod
    def parse(cls, text, names=DEFAULT_NAMES):
        out = []
        for ch in text:
            if ch in names:
                out.append((names.index(ch), 1))
            elif ch.lower() in names and ch != ch.lower():
                out.append((names.index(ch.lower()), -1))
            else:
                raise TapkitError(f"letter {ch!r} is not a generator of {names!r}")
        return cls(tuple(out))

    @classmethod
    def gen(cls, j, e=1):
        return cls(((j, e),))

    def format(self, names=DEFAULT_NAMES):
        return "".join(names[g] if e > 0 else names[g].upper() for g, e in self.letters)

    def __str__(self):
        return self.format() or "1"

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other):
        return Word(self.letters + other.letters)

    def inverse(self):
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def reduced(self):
        return word_reduce(self)

    def max_gen(self):
        return max((g for g, _ in self.letters), default=-1)


def word_reduce(w):
    stack = []
    for g, e in w.letters:
        if stack and stack[-1] == (g, -e):
            stack.pop()
        else:
            stack.append((g, e))
    return Word(tuple(stack))


# ---------------------------------------------------------------------------
# presentations and abelianization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Presentation:
    n_gens: int
    relators: tuple
    names: str = DEFAULT_NAMES[:2]

    def __post_init__(self):
        if self.n_gens < 1:
            raise TapkitError("a presentation needs at least one generator")
        if len(self.names) != self.n_gens or len(set(self.names)) != self.n_gens:
            raise TapkitError("generator names must be distinct single letters, one per generator")
        for r in self.relators:
            if r.max_gen() >= self.n_gens:
                raise TapkitError(f"relator {r} uses an unknown generator")

    @classmethod
    def from_strings(cls, generators, relators):
        return cls(len(generators), tuple(Word.parse(r, generators) for r in relators), generators)

    @property
    def deficiency(self):
        return self.n_gens - len(self.relators)

    def to_json(self):
        return {"generators": self.names,
                "relators": [r.format(self.names) for r in self.relators]}


@dataclass(frozen=True)
class AbelianMap:
    """``x_j -> t^{exponents[j]}``."""

    exponents: tuple

    def degree(self, w):
        return sum(self.exponents[g] * e for g, e in w.letters)

    def validate(self, pres):
        if len(self.exponents) != pres.n_gens:
            raise TapkitError("abelian map length differs from the number of generators")
        g = 0
        for e in self.exponents:
            g = gcd(g, e)
        if g != 1:
            raise TapkitError("abelian map is not surjective onto t^Z")
        for r in pres.relators:
            if self.degree(r) != 0:
                raise TapkitError(f"relator {r.format(pres.names)} does not abelianize to 1")
        return self


# ---------------------------------------------------------------------------
# group ring and Fox calculus
# ---------------------------------------------------------------------------

class GroupRingElem:
    """Finite integer combination of freely reduced words."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for w, c in (terms or {}).items():
            w = word_reduce(w)
            clean[w] = clean.get(w, 0) + c
        self.terms = {w: c for w, c in clean.items() if c}

    @classmethod
    def word(cls, w, c=1):
        return cls({w: c})

    @classmethod
    def one(cls):
        return cls({Word(): 1})

    def __add__(self, other):
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t.get(w, 0) + c
        return GroupRingElem(t)

    def __neg__(self):
        return GroupRingElem({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElem({w: c * other for w, c in self.terms.items()})
        t = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = word_reduce(w1 * w2)
                t[w] = t.get(w, 0) + c1 * c2
        return GroupRingElem(t)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, GroupRingElem) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def format(self, names=DEFAULT_NAMES):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w.letters)):
            c = self.terms[w]
            body = w.format(names) or "1"
            parts.append(f"{c:+d}*{body}" if abs(c) != 1 else ("+" if c > 0 else "-") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"GroupRingElem({self.format()})"


def fox_derivative(w, j):
    """Free derivative of the word ``w`` with respect to generator ``j``."""
    terms = {}
    prefix = ()
    for g, e in w.letters:
        if g == j:
            if e > 0:
                key = Word(prefix)
                terms[key] = terms.get(key, 0) + 1
            else:
                key = Word(prefix + ((g, e),))
                terms[key] = terms.get(key, 0) - 1
        prefix = prefix + ((g, e),)
    return GroupRingElem(terms)


# ---------------------------------------------------------------------------
# matrices over a field (entries NFElem, or int/Fraction when field is None)
# ---------------------------------------------------------------------------

def _zero(field):
    return field.zero if field is not None else 0


def _one(field):
    return field.one if field is not None else 1


def identity(n, field=None):
    return [[_one(field) if i == j else _zero(field) for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    n, m, k = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = A[i]
        out_row = []
        for j in range(k):
            s = row[0] * B[0][j]
            for l in range(1, m):
                a = row[l]
                if a != 0:
                    s = s + a * B[l][j]
            out_row.append(s)
        out.append(out_row)
    return out


def mat_inv(A, field=None):
    """Gauss-Jordan inverse; raises ``TapkitError`` when singular."""
    n = len(A)
    M = [list(r) + identity(n, field)[i] for i, r in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise TapkitError("singular matrix")
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col] if field is not None else Fraction(1, 1) / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    out = [row[n:] for row in M]
    if field is None:
        out = [[int(x) if Fraction(x).denominator == 1 else Fraction(x) for x in row] for row in out]
    return out


def mat_det(A, field=None):
    from .laurent import field_det
    return field_det([list(r) for r in A])


# ---------------------------------------------------------------------------
# representations
# ---------------------------------------------------------------------------

class Rep:
    """``rho: F(x_0..x_{g-1}) -> GL_N(K)`` given by generator matrices."""

    def __init__(self, field, mats, special=False, name=None):
        if not mats:
            raise TapkitError("a representation needs at least one generator matrix")
        self.field = field
        self.N = len(mats[0])
        conv = (lambda x: field(x)) if field is not None else (lambda x: x)
        self.mats = [[[conv(x) for x in row] for row in m] for m in mats]
        for m in self.mats:
            if len(m) != self.N or any(len(r) != self.N for r in m):
                raise DimensionError("generator matrices must be square of equal size")
        self.inverses = [mat_inv(m, field) for m in self.mats]
        self.special = special
        self.name = name
        if special:
            one = _one(field)
            for m in self.mats:
                if mat_det(m, field) != one:
                    raise TapkitError("special flag set but a determinant differs from 1")
        self._cache = {}

    @property
    def n_gens(self):
        return len(self.mats)

    def gen_image(self, g, e):
        return self.mats[g] if e > 0 else self.inverses[g]

    def image(self, w):
        key = w.letters
        if key in self._cache:
            return self._cache[key]
        if not key:
            out = identity(self.N, self.field)
        else:
            # reuse the cached prefix
            out = mat_mul(self.image(Word(key[:-1])), self.gen_image(*key[-1]))
        if len(self._cache) < 4096:
            self._cache[key] = out
        return out

    def is_integral(self):
        for m in self.mats + self.inverses:
            for row in m:
                for x in row:
                    ok = x.is_integral() if self.field is not None else Fraction(x).denominator == 1
                    if not ok:
                        return False
        return True

    def __repr__(self):
        return f"Rep(N={self.N}, field={self.field}, name={self.name})"


def trivial_rep(n_gens, N=1, field=None):
    return Rep(field, [identity(N, field) for _ in range(n_gens)], special=True, name="trivial")


def check_rep(pres, rep):
    """``(True, None)`` if every relator maps to the identity, otherwise
    ``(False, (relator, matrix))``."""
    if rep.n_gens != pres.n_gens:
        return False, (None, None)
    I = identity(rep.N, rep.field)
    for r in pres.relators:
        m = rep.image(r)
        if m != I:
            return False, (r, m)
    return True, None


def _require_rep(pres, rep):
    if rep.n_gens != pres.n_gens:
        raise RepMismatch(f"rep has {rep.n_gens} generators, presentation {pres.n_gens}")


def evaluate(e, rep, amap):
    """Image of a group ring element under ``rho (x) alpha``."""
    N, fld = rep.N, rep.field
    acc = [[{} for _ in range(N)] for _ in range(N)]
    for w, c in e.terms.items():
        if w.max_gen() >= rep.n_gens:
            raise RepMismatch(f"word {w} uses a generator outside the rep")
        m = rep.image(w)
        deg = amap.degree(w)
        for i in range(N):
            for j in range(N):
                x = m[i][j]
                if x != 0:
                    d = acc[i][j]
                    d[deg] = d.get(deg, _zero(fld)) + x * c
    return [[LaurentPoly(acc[i][j], fld) for j in range(N)] for i in range(N)]


def alexander_matrix(pres, rep, amap):
    """Block matrix with block ``(i, j)`` the image of ``d r_i / d x_j``."""
    _require_rep(pres, rep)
    N = rep.N
    rows = []
    for r in pres.relators:
        blocks = [evaluate(fox_derivative(r, j), rep, amap) for j in range(pres.n_gens)]
        for i in range(N):
            rows.append([blocks[j][i][c] for j in range(pres.n_gens) for c in range(N)])
    return rows


def generator_block(rep, amap, j):
    """``rho(x_j) t^{alpha_j} - I`` as a matrix of Laurent polynomials."""
    m, e, fld = rep.mats[j], amap.exponents[j], rep.field
    N = rep.N
    out = []
    for i in range(N):
        row = []
        for c in range(N):
            terms = {e: m[i][c]}
            if i == c:
                terms[0] = terms.get(0, _zero(fld)) - 1
            row.append(LaurentPoly(terms, fld))
        out.append(row)
    return out


# ---------------------------------------------------------------------------
# two-bridge knots and Riley representations
# ---------------------------------------------------------------------------

def _check_two_bridge(p, q):
    if not (isinstance(p, int) and isinstance(q, int)):
        raise BadParameters("p and q must be integers")
    if p < 3 or p % 2 == 0:
        raise BadParameters(f"p = {p} must be odd and >= 3")
    if q % 2 == 0 or not 0 < q < p:
        raise BadParameters(f"q = {q} must be odd with 0 < q < p")
    if gcd(p, q) != 1:
        raise BadParameters(f"gcd({p}, {q}) != 1")


def two_bridge_word(p, q):
    _check_two_bridge(p, q)
    letters = []
    for i in range(1, p):
        eps = -1 if (i * q // p) % 2 else 1
        letters.append((0 if i % 2 else 1, eps))
    return Word(tuple(letters))


def two_bridge_presentation(p, q):
    """``<a, b | w a w^-1 b^-1>`` (that is ``w a = b w``) with both generators
    sent to ``t``."""
    w = two_bridge_word(p, q)
    rel = w * Word.gen(0) * w.inverse() * Word.gen(1, -1)
    pres = Presentation(2, (rel,), "ab")
    return pres, AbelianMap((1, 1)).validate(pres)


def _riley_matrices(u):
    # rho(b) is lower unipotent with entry +u so that w a = b w holds
    return [[1, 1], [0, 1]], [[1, 0], [u, 1]]


def _poly_mat_mul(A, B):
    return [[A[i][0] * B[0][j] + A[i][1] * B[1][j] for j in range(2)] for i in range(2)]


def riley_polynomial(p, q):
    """Gcd of the entries of ``W rho(a) - rho(b) W`` over Z[u], primitive
    with positive leading coefficient."""
    w = two_bridge_word(p, q)
    u = LaurentPoly.monomial(1, 1)
    one, zero = LaurentPoly.const(1), LaurentPoly()
    a, b = _riley_matrices(u)
    a = [[LaurentPoly.const(x) if isinstance(x, int) else x for x in r] for r in a]
    b = [[LaurentPoly.const(x) if isinstance(x, int) else x for x in r] for r in b]
    a_inv = [[one, LaurentPoly.const(-1)], [zero, one]]
    b_inv = [[one, zero], [-u, one]]
    W = [[one, zero], [zero, one]]
    for g, e in w.letters:
        m = (a if e > 0 else a_inv) if g == 0 else (b if e > 0 else b_inv)
        W = _poly_mat_mul(W, m)
    lhs, rhs = _poly_mat_mul(W, a), _poly_mat_mul(b, W)
    entries = [lhs[i][j] - rhs[i][j] for i in range(2) for j in range(2)]
    g = lgcd_many(entries)
    g = g.clear_denominators().primitive()
    return -g if g.lc < 0 else g


def riley_factors(p, q):
    from .twistpoly import factor_over_z

    _, facs = factor_over_z(riley_polynomial(p, q))
    return [f for f, _ in facs]


def riley_rep(p, q, factor_index=0):
    """Parabolic representation at a root of the chosen irreducible factor."""
    facs = riley_factors(p, q)
    if not 0 <= factor_index < len(facs):
        raise IndexOutOfRange(f"factor index {factor_index} out of range 0..{len(facs) - 1}")
    K = NumberField(facs[factor_index], var="u")
    a, b = _riley_matrices(K.gen)
    rep = Rep(K, [a, b], special=True, name=f"riley{factor_index}")
    pres, _ = two_bridge_presentation(p, q)
    ok, witness = check_rep(pres, rep)
    if not ok:
        raise RepCheckFailed(f"relator {witness[0]} does not map to the identity")
    return rep, K


# ---------------------------------------------------------------------------
# symmetric powers
# ---------------------------------------------------------------------------

def _hom_power(x, y, m, field):
    """Coefficients (by y-degree) of ``(x X + y Y)^m``."""
    return [comb(m, i) * x ** (m - i) * y ** i for i in range(m + 1)]


def _sym_matrix(g, k, field):
    (a, b), (c, d) = g
    cols = []
    for j in range(k + 1):
        p1 = _hom_power(a, c, k - j, field)
        p2 = _hom_power(b, d, j, field)
        col = [_zero(field)] * (k + 1)
        for i1, x in enumerate(p1):
            for i2, y in enumerate(p2):
                col[i1 + i2] = col[i1 + i2] + x * y
        cols.append(col)
    return [[cols[j][i] for j in range(k + 1)] for i in range(k + 1)]


def sym_power(rep, k):
    """Action on degree-k homogeneous polynomials, basis ``X^{k-i} Y^i``.

    ``g`` acts by ``f(v) -> f(v g)`` on row vectors ``v = (X, Y)``, which is
    a homomorphism; ``k = 1`` returns the input matrices.
    """
    if rep.N != 2:
        raise DimensionError("sym_power needs a 2-dimensional representation")
    if k < 1:
        raise DimensionError("k must be >= 1")
    if k == 1:
        return rep
    mats = [_sym_matrix(m, k, rep.field) for m in rep.mats]
    name = f"{rep.name}^sym{k}" if rep.name else None
    return Rep(rep.field, mats, special=rep.special, name=name)
