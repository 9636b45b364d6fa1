"""Homology of Z/n cyclic covers with twisted integral coefficients.

Matrices over ``Z[alpha][t^{+-1}]`` are expanded to integer matrices by
substituting ``t -> T_n`` (cyclic shift) and ``alpha ->`` its regular
representation; everything afterwards is exact integer linear algebra.
Row-vector convention: ``C_2 --A--> C_1 --B--> C_0``.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd

import mpmath

from .errors import NonIntegralEntry, RepNotIntegral
from .knotgroup import _require_rep, alexander_matrix, generator_block
from .laurent import LaurentPoly, presultant
from .twistpoly import norm_polynomial, psi, wada_invariant


# ---------------------------------------------------------------------------
# expansion to integer matrices
# ---------------------------------------------------------------------------

def cyclic_shift_matrix(n):
    """Permutation matrix of ``t`` acting on ``Z[t]/(t^n - 1)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return [[1 if i == (j + 1) % n else 0 for j in range(n)] for i in range(n)]


def _coefficient_matrix(c, field):
    if field is None:
        if Fraction(c).denominator != 1:
            raise NonIntegralEntry(f"coefficient {c} is not an integer")
        return [[int(c)]]
    from .numfield import nf_regular_rep

    if not c.is_integral():
        raise NonIntegralEntry(f"coefficient {c} is not in Z[alpha]")
    return [[int(x) for x in row] for row in nf_regular_rep(c)]


def _matrix_field(M):
    for row in M:
        for e in row:
            if isinstance(e, LaurentPoly):
                return e.field
    return None


def expand_to_integer(M, n):
    """Integer matrix of size ``(rows d n) x (cols d n)``.

    Entry ``sum_e c_e t^e`` becomes ``sum_e R(c_e) (x) T_n^e``; index
    ``(a, i)`` of a block is ``a * n + i``.
    """
    fld = _matrix_field(M)
    d = fld.degree if fld is not None else 1
    rows, cols = len(M), (len(M[0]) if M else 0)
    size = d * n
    out = [[0] * (cols * size) for _ in range(rows * size)]
    for r in range(rows):
        for c in range(cols):
            e = M[r][c]
            if not isinstance(e, LaurentPoly):
                e = LaurentPoly.const(e, fld)
            for k, coef in e.coeffs.items():
                R = _coefficient_matrix(coef, fld)
                s = k % n
                for a in range(d):
                    for b in range(d):
                        x = R[a][b]
                        if not x:
                            continue
                        for j in range(n):
                            i = (j + s) % n
                            out[r * size + a * n + i][c * size + b * n + j] += x
    return out


# ---------------------------------------------------------------------------
# Smith normal form and integer kernels
# ---------------------------------------------------------------------------

@dataclass
class SmithForm:
    rank: int
    elementary_divisors: list

    @property
    def torsion(self):
        out = 1
        for d in self.elementary_divisors:
            out *= d
        return out

    @property
    def torsion_divisors(self):
        return [d for d in self.elementary_divisors if d > 1]


def _chain(diag):
    d = sorted(diag)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = gcd(d[i], d[j])
            if g != d[i]:
                d[i], d[j] = g, d[i] * d[j] // g
    return d


def smith_form(A):
    """Exact elementary divisors of an integer matrix.

    Diagonalizes with smallest-pivot elimination, then turns the diagonal
    into a divisibility chain via ``diag(a, b) ~ diag(gcd, lcm)``.
    """
    M = [[int(x) for x in row] for row in A]
    m = len(M)
    n = len(M[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = M[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        M[t], M[i] = M[i], M[t]
        if j != t:
            for row in M:
                row[t], row[j] = row[j], row[t]
        while True:
            p = M[t][t]
            clean = True
            for i in range(t + 1, m):
                x = M[i][t]
                if x:
                    q = x // p
                    ri, rt = M[i], M[t]
                    for j in range(t, n):
                        if rt[j]:
                            ri[j] -= q * rt[j]
                    if ri[t]:
                        clean = False
            rt = M[t]
            for j in range(t + 1, n):
                x = rt[j]
                if x:
                    q = x // p
                    for i in range(t, m):
                        if M[i][t]:
                            M[i][j] -= q * M[i][t]
                    if rt[j]:
                        clean = False
            if clean:
                break
            # move the smallest remaining entry of row/column t to the pivot
            cands = [(abs(M[i][t]), i, t) for i in range(t, m) if M[i][t]]
            cands += [(abs(M[t][j]), t, j) for j in range(t, n) if M[t][j]]
            _, i, j = min(cands)
            M[t], M[i] = M[i], M[t]
            if j != t:
                for row in M:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(M[t][t]))
        t += 1
    return SmithForm(len(diag), _chain(diag))


def left_kernel(B):
    """Basis rows ``K`` of ``{x : x B = 0}`` over Z and ``Uinv`` such that
    a kernel vector ``x`` has coordinates ``(x Uinv)[r:]`` in ``K``.

    Unimodular row reduction ``U B = H``; the rows of ``U`` meeting the
    zero rows of ``H`` form a saturated kernel basis.
    """
    m = len(B)
    n = len(B[0]) if m else 0
    H = [list(map(int, r)) for r in B]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    Uinv = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def swap(i, k):
        H[i], H[k] = H[k], H[i]
        U[i], U[k] = U[k], U[i]
        for row in Uinv:
            row[i], row[k] = row[k], row[i]

    def sub(i, k, q):
        # row_i -= q row_k
        hi, hk = H[i], H[k]
        for j in range(n):
            if hk[j]:
                hi[j] -= q * hk[j]
        ui, uk = U[i], U[k]
        for j in range(m):
            if uk[j]:
                ui[j] -= q * uk[j]
        for row in Uinv:
            if row[i]:
                row[k] += q * row[i]

    r = 0
    for col in range(n):
        while True:
            nz = [(abs(H[i][col]), i) for i in range(r, m) if H[i][col]]
            if not nz:
                break
            _, piv = min(nz)
            if piv != r:
                swap(piv, r)
            if len(nz) == 1:
                r += 1
                break
            p = H[r][col]
            for i in range(r + 1, m):
                if H[i][col]:
                    sub(i, r, H[i][col] // p)
        if r == m:
            break
    return U[r:], Uinv, r


def matrix_rank(A):
    return smith_form(A).rank if A and A[0] else 0


# ---------------------------------------------------------------------------
# cover homology
# ---------------------------------------------------------------------------

@dataclass
class CoverHomology:
    n: int
    betti: int
    torsion: int
    divisors: list


def _boundary_matrices(pres, rep, amap):
    A = alexander_matrix(pres, rep, amap)
    B = []
    for j in range(pres.n_gens):
        B.extend(generator_block(rep, amap, j))
    return A, B


def torsion_of_cover(pres, rep, amap, n, method="kernel"):
    """Free rank and torsion order of ``H_1`` of the n-fold cyclic cover.

    ``method="kernel"`` computes ``ker d_1 / im d_2`` in an integer kernel
    basis; ``method="cokernel"`` uses that ``C_1 / im d_2`` is ``H_1`` plus
    the free module ``im d_1`` and reads the torsion off ``d_2`` alone.
    """
    _require_rep(pres, rep)
    if not rep.is_integral():
        raise RepNotIntegral("representation matrices are not integral")
    A, B = _boundary_matrices(pres, rep, amap)
    d = rep.field.degree if rep.field is not None else 1
    c1 = pres.n_gens * rep.N * d * n
    EB = expand_to_integer(B, n)
    EA = expand_to_integer(A, n) if A else []
    if method == "cokernel":
        sa = smith_form(EA) if EA else SmithForm(0, [])
        betti = c1 - sa.rank - smith_form(EB).rank
        divs = sa.torsion_divisors
    elif method == "kernel":
        K, Uinv, r = left_kernel(EB)
        if EA:
            X = [[sum(row[i] * Uinv[i][j] for i in range(c1) if row[i]) for j in range(r, c1)]
                 for row in EA]
            sx = smith_form(X)
        else:
            sx = SmithForm(0, [])
        betti = len(K) - sx.rank
        divs = sx.torsion_divisors
    else:
        raise ValueError(f"unknown method {method!r}")
    tor = 1
    for x in divs:
        tor *= x
    return CoverHomology(n, betti, tor, divs)


# ---------------------------------------------------------------------------
# growth report
# ---------------------------------------------------------------------------

def p_valuation(x, p):
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def p_norm(x, p):
    """``|x|_p`` as an exact rational."""
    v = p_valuation(x, p)
    return Fraction(1, p ** v) if v >= 0 else Fraction(p ** (-v))


def norm_polynomial_of(pres, rep, amap):
    """``Nr(Delta_{rho,1})`` from the Wada route, kept at its exact scale."""
    from .twistpoly import twisted_alexander

    w = wada_invariant(pres, rep, amap)
    d0 = twisted_alexander(pres, rep, amap, 0).poly
    return norm_polynomial(w.quotient * d0).normalized()


@dataclass
class GrowthRow:
    n: int
    betti: int
    torsion: int
    psi: LaurentPoly
    r_n: int
    ratio: Fraction
    p_adic_norms: dict

    def to_json(self):
        return {
            "n": self.n,
            "betti": self.betti,
            "torsion_order": str(self.torsion),
            "psi": self.psi.format(),
            "r_n": str(self.r_n),
            "ratio": str(self.ratio),
            "p_adic_norms": {str(p): str(v) for p, v in self.p_adic_norms.items()},
        }


@dataclass
class GrowthReport:
    delta_bar: LaurentPoly
    rows: list
    primes: tuple = ()
    s_primes: tuple = ()
    mahler: object = None
    padic: dict = dc_field(default_factory=dict)

    def root_sequence(self, digits=20):
        """``torsion^(1/n)`` per row."""
        with mpmath.workdps(digits):
            return [mpmath.root(r.torsion, r.n) for r in self.rows]

    def padic_root_sequence(self, p, digits=20):
        with mpmath.workdps(digits):
            return [mpmath.root(mpmath.mpf(r.p_adic_norms[p]), r.n) for r in self.rows]

    def to_json(self):
        out = {
            "delta_bar": [str(c) for c in self.delta_bar.to_list()],
            "rows": [r.to_json() for r in self.rows],
            "torsion_root": [mpmath.nstr(x, 15) for x in self.root_sequence()],
        }
        if self.mahler is not None:
            out["mahler"] = self.mahler.to_json()
        if self.padic:
            out["padic_mahler"] = [m.to_json() for m in self.padic.values()]
        return out


def _row_worker(args):
    pres, rep, amap, n = args
    return torsion_of_cover(pres, rep, amap, n)


def cover_row(delta_bar, hom, primes=(), s_primes=()):
    n = hom.n
    ps = psi(delta_bar, n)
    tn = LaurentPoly.from_list([-1] + [0] * (n - 1) + [1])
    quot = tn.exact_div(ps)
    r_n = presultant(quot.to_list(), delta_bar.normalized().to_list())
    r_n = int(r_n)
    denom = Fraction(abs(r_n))
    for p in s_primes:
        denom *= p_norm(r_n, p)
    ratio = Fraction(hom.torsion) / denom
    norms = {p: p_norm(hom.torsion, p) for p in primes}
    return GrowthRow(n, hom.betti, hom.torsion, ps, r_n, ratio, norms)


def growth_report(pres, rep, amap, n_max, primes=(), s_primes=(), jobs=1,
                  delta_bar=None, digits=20):
    """Torsion of the covers for ``n = 1..n_max`` against ``Res(Delta_bar, .)``."""
    from .measures import mahler, padic_mahler

    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if delta_bar is None:
        delta_bar = norm_polynomial_of(pres, rep, amap)
    tasks = [(pres, rep, amap, n) for n in range(1, n_max + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            homs = list(ex.map(_row_worker, tasks))
    else:
        homs = [_row_worker(t) for t in tasks]
    rows = [cover_row(delta_bar, h, primes, s_primes) for h in homs]
    report = GrowthReport(delta_bar, rows, tuple(primes), tuple(s_primes))
    report.mahler = mahler(delta_bar, digits)
    report.padic = {p: padic_mahler(delta_bar, p) for p in primes}
    return report
