"""Regression driver over the Riley-representation examples of the four
built-in knots, plus the split-prime scan and the volume trend."""


import mpmath

from .knotgroup import riley_polynomial
from .laurent import LaurentPoly, parse_laurent
from .measures import lobachevsky, mahler, padic_mahler, split_scan, volume_trend
from .twistpoly import (
    EQUAL,
    compare_up_to_units,
    cyclotomic,
    is_reciprocal,
    norm_polynomial,
    strip_cyclotomic,
    twisted_alexander,
    wada_invariant,
)

PRIMES = (2, 3, 5, 7, 11, 23)
VOLUME_TARGET_TOL = 0.15


def _row(item, expected, observed, ok):
    return {"item": item, "expected": str(expected), "observed": str(observed), "pass": bool(ok)}


def _expected_delta(name, field):
    if name == "3_1":
        return [parse_laurent("t^2+1", field=field)]
    if name == "4_1":
        return [parse_laurent("t^2-4*t+1", field=field)]
    if name == "5_2":
        return [parse_laurent("(4+u^2)*t^2-4*t+(4+u^2)", field=field)]
    # 5_1: Phi_4 times t^4 - c t^2 + 1 with c = (1 +- sqrt 5)/2 = u + 2 or -u - 1
    return [parse_laurent(f"(t^2+1)*(t^4-({c})*t^2+1)", field=field) for c in ("u+2", "-u-1")]


def _expected_norm(name):
    phi4, phi20 = cyclotomic(4), cyclotomic(20)
    return {
        "3_1": phi4 * phi4,
        "4_1": parse_laurent("(t^2-4*t+1)^2"),
        "5_1": phi4 * phi4 * phi20,
        "5_2": parse_laurent("25*t^6-104*t^5+219*t^4-272*t^3+219*t^2-104*t+25"),
    }[name]


EXPECTED_RILEY = {"3_1": "u+1", "4_1": "u^2-u+1", "5_1": "u^2+3*u+1", "5_2": "u^3+u^2+2*u+1"}
EXPECTED_MAHLER = {"3_1": 1, "4_1": 7 + 4 * mpmath.sqrt(3), "5_1": 1}


def knot_rows(catalog, name, primes=PRIMES, digits=30):
    knot = catalog.knot(name)
    rows = []
    rp = riley_polynomial(*knot.two_bridge)
    exp_rp = parse_laurent(EXPECTED_RILEY[name], "u")
    rows.append(_row(f"{name} riley polynomial", exp_rp.format("u"), rp.format("u"), rp == exp_rp))
    rep = catalog.rep(name, "riley0")
    d0 = twisted_alexander(knot.pres, rep, knot.amap, 0)
    rows.append(_row(f"{name} Delta_0", "1", d0, d0.poly.span == 0))
    w = wada_invariant(knot.pres, rep, knot.amap)
    delta = w.quotient * d0.poly
    expected = _expected_delta(name, rep.field)
    ok = any(compare_up_to_units(delta, e) == EQUAL for e in expected)
    rows.append(_row(f"{name} Delta_rho", " or ".join(e.format() for e in expected), delta.normalized(), ok))
    rows.append(_row(f"{name} reciprocal", True, is_reciprocal(delta), is_reciprocal(delta)))
    nr = norm_polynomial(delta).normalized()
    exp_nr = _expected_norm(name)
    rows.append(_row(f"{name} norm polynomial", exp_nr, nr, compare_up_to_units(nr, exp_nr) == EQUAL))
    if name == "5_1":
        core, facs = strip_cyclotomic(nr)
        ok = core == LaurentPoly.const(1) and facs == [(4, 2), (20, 1)]
        rows.append(_row(f"{name} cyclotomic factors", "core 1, [(4, 2), (20, 1)]", f"core {core}, {facs}", ok))
    m = mahler(nr, digits)
    if name in EXPECTED_MAHLER:
        exp_m = EXPECTED_MAHLER[name]
        ok = abs(m.value - exp_m) < mpmath.mpf(10) ** -8
        rows.append(_row(f"{name} Mahler measure", mpmath.nstr(exp_m, 12), mpmath.nstr(m.value, 12), ok))
    else:
        rows.append(_row(f"{name} Mahler measure", "(not stated)", mpmath.nstr(m.value, 12), True))
    for p in primes:
        mp = padic_mahler(nr, p)
        rows.append(_row(f"{name} p-adic Mahler measure p={p}", 1, mp.value, mp.value == 1))
    return rows


def paper_suite(catalog=None, k_max=13, digits=30):
    """All example checks as report rows (failures are rows, never raised)."""
    from .catalog import builtin_catalog

    catalog = catalog or builtin_catalog()
    rows = []
    for name in ("3_1", "4_1", "5_1", "5_2"):
        try:
            rows.extend(knot_rows(catalog, name, digits=digits))
        except Exception as exc:  # a failure is a report row
            rows.append(_row(f"{name} examples", "no error", repr(exc), False))
    cubic = parse_laurent(EXPECTED_RILEY["5_2"], "u")
    scan = split_scan(cubic, 6, 200)
    bad = [r.p for r in scan if not r.excluded and not r.splits]
    rows.append(_row("5_2 cubic splits at p = 1 mod 6, p <= 200", "no violations",
                     f"violations at {bad}" if bad else "no violations", not bad))
    try:
        knot = catalog.knot("4_1")
        vt = volume_trend(knot.pres, catalog.rep("4_1", "riley0"), knot.amap, k_max, digits=digits)
        target = 6 * lobachevsky(mpmath.pi / 3) / (4 * mpmath.pi)
        last = vt.odd[-1][1]
        ok = abs(last - target) <= VOLUME_TARGET_TOL * target
        rows.append(_row(f"4_1 volume trend k={vt.odd[-1][0]}", mpmath.nstr(target, 8),
                         mpmath.nstr(last, 8), ok))
    except Exception as exc:
        rows.append(_row("4_1 volume trend", "no error", repr(exc), False))
    return rows
