"""``tapkit`` command-line front end.

Exit status: 0 success, 1 mathematical error, 2 usage or catalog error.
"""

import argparse
import json
import os
import sys
import time

import mpmath

from . import covers, knotgroup, measures, twistpoly
from .catalog import builtin_catalog, load_catalog
from .errors import CatalogError, TapkitError
from .laurent import parse_laurent
from .numfield import NumberField


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# serialization helpers
# ---------------------------------------------------------------------------

def poly_json(f, var="t"):
    """Ascending coefficient array (JSON) plus a descending display string."""
    if f.is_zero():
        return {"low": 0, "coefficients": [], "text": "0"}
    return {"low": f.min_deg, "coefficients": [str(c) for c in f.to_list()],
            "text": f.format(var)}


def _mp(x, digits):
    return mpmath.nstr(x, digits)


def _matrix_json(m):
    return [[str(x) for x in row] for row in m]


# ---------------------------------------------------------------------------
# command implementations: each returns (inputs, results, warnings)
# ---------------------------------------------------------------------------

def _knot_rep(ctx, args):
    try:
        knot = ctx.catalog.knot(args.knot)
        rep = ctx.catalog.rep(args.knot, args.rep) if getattr(args, "rep", None) else None
    except KeyError as exc:
        raise UsageError(exc.args[0])
    return knot, rep


def _poly_arg(text, var="t"):
    try:
        return parse_laurent(text, var)
    except TapkitError as exc:
        raise UsageError(str(exc))


def cmd_present(ctx, args):
    knot, _ = _knot_rep(ctx, args)
    res = {"presentation": knot.pres.to_json(), "abelian_map": list(knot.amap.exponents),
           "deficiency": knot.pres.deficiency}
    if knot.two_bridge:
        res["two_bridge"] = list(knot.two_bridge)
        res["w"] = knotgroup.two_bridge_word(*knot.two_bridge).format(knot.pres.names)
    return {"knot": args.knot}, res, []


def _two_bridge_of(ctx, args):
    if args.pq:
        return tuple(args.pq)
    knot, _ = _knot_rep(ctx, args)
    if knot.two_bridge is None:
        raise UsageError(f"knot {args.knot} has no two-bridge parameters")
    return knot.two_bridge


def cmd_riley_poly(ctx, args):
    p, q = _two_bridge_of(ctx, args)
    rp = knotgroup.riley_polynomial(p, q)
    facs = knotgroup.riley_factors(p, q)
    return ({"p": p, "q": q},
            {"riley_polynomial": poly_json(rp, "u"), "factors": [poly_json(f, "u") for f in facs]}, [])


def cmd_riley_rep(ctx, args):
    knot, rep = _knot_rep(ctx, args)
    res = {"dimension": rep.N, "matrices": [_matrix_json(m) for m in rep.mats],
           "check_rep": knotgroup.check_rep(knot.pres, rep)[0]}
    if rep.field is not None:
        res["field"] = rep.field.poly_string()
        res["discriminant"] = rep.field.discriminant
    return {"knot": args.knot, "rep": args.rep}, res, []


def cmd_tap(ctx, args):
    knot, rep = _knot_rep(ctx, args)
    d0 = twistpoly.twisted_alexander(knot.pres, rep, knot.amap, 0)
    w = twistpoly.wada_invariant(knot.pres, rep, knot.amap)
    delta = w.quotient * d0.poly
    warnings = []
    res = {
        "delta_0": poly_json(d0.poly),
        "wada": {"numerator": poly_json(w.numerator), "denominator": poly_json(w.denominator),
                 "reduced": poly_json(w.quotient.normalized()), "is_polynomial": w.is_polynomial,
                 "columns_checked": w.columns_checked},
        "delta_1": poly_json(delta.normalized()),
        "reciprocal": twistpoly.is_reciprocal(delta),
        "norm_polynomial": poly_json(twistpoly.norm_polynomial(delta).normalized()),
    }
    if args.method == "minors":
        m = twistpoly.twisted_alexander(knot.pres, rep, knot.amap, 1, method="minors")
        res["delta_1_minors"] = poly_json(m.poly)
        agree = twistpoly.associated_over_field(m.poly, delta)
        res["routes_agree"] = agree
        if not agree:
            warnings.append("minor-gcd route disagrees with the Wada route")
    if rep.field is not None:
        res["field"] = rep.field.poly_string()
    return {"knot": args.knot, "rep": args.rep, "method": args.method}, res, warnings


def cmd_norm(ctx, args):
    K = NumberField(args.field, var=args.var) if args.field else None
    try:
        f = parse_laurent(args.poly, "t", K)
    except TapkitError as exc:
        raise UsageError(str(exc))
    return ({"poly": args.poly, "field": args.field},
            {"norm": poly_json(twistpoly.norm_polynomial(f).normalized())}, [])


def cmd_mahler(ctx, args):
    f = _poly_arg(args.poly)
    m = measures.mahler(f, ctx.digits)
    res = {"value": _mp(m.value, ctx.digits), "error": _mp(m.error, 5),
           "on_circle": m.on_circle, "cyclotomic_factors": [list(x) for x in m.cyclotomic]}
    res.update(m.to_json())
    return {"poly": args.poly, "digits": ctx.digits}, res, []


def cmd_padic_mahler(ctx, args):
    f = _poly_arg(args.poly)
    out = []
    for p in args.p:
        m = measures.padic_mahler(f, p)
        d = m.to_json()
        d["value"] = str(m.value)
        out.append(d)
    return {"poly": args.poly, "p": args.p}, {"measures": out}, []


def cmd_newton(ctx, args):
    f = _poly_arg(args.poly)
    out = []
    for p in args.p:
        np_ = measures.newton_polygon(f, p)
        d = np_.to_json()
        d["roots_on_unit_circle"] = np_.roots_on_unit_circle
        out.append(d)
    return {"poly": args.poly, "p": args.p}, {"polygons": out}, []


def cmd_cyclic_res(ctx, args):
    f = _poly_arg(args.poly)
    rows = [{"n": n, "r_n": str(twistpoly.cyclic_resultant(f, n))} for n in args.n]
    return {"poly": args.poly, "n": args.n}, {"rows": rows}, []


def cmd_hillar(ctx, args):
    f, g = _poly_arg(args.f), _poly_arg(args.g)
    return ({"f": args.f, "g": args.g, "depth": args.depth},
            twistpoly.hillar_test(f, g, args.depth).to_json(), [])


def cmd_strip(ctx, args):
    f = _poly_arg(args.poly)
    core, facs = twistpoly.strip_cyclotomic(f)
    return ({"poly": args.poly},
            {"core": poly_json(core), "factors": [{"m": m, "multiplicity": e} for m, e in facs]}, [])


def cmd_homology(ctx, args):
    knot, rep = _knot_rep(ctx, args)
    rows = []
    for n in args.n:
        h = covers.torsion_of_cover(knot.pres, rep, knot.amap, n, method=args.method)
        rows.append({"n": n, "betti": h.betti, "torsion": str(h.torsion),
                     "divisors": [str(d) for d in h.divisors]})
    return {"knot": args.knot, "rep": args.rep, "n": args.n, "method": args.method}, {"rows": rows}, []


def cmd_growth(ctx, args):
    knot, rep = _knot_rep(ctx, args)
    n_max = args.n_max or ctx.catalog.defaults["n_max"]
    primes = args.primes if args.primes is not None else []
    rep_ = covers.growth_report(knot.pres, rep, knot.amap, n_max, primes, args.s_primes or (),
                                jobs=ctx.jobs, digits=ctx.digits)
    res = rep_.to_json()
    res["delta_bar"] = poly_json(rep_.delta_bar)
    return ({"knot": args.knot, "rep": args.rep, "n_max": n_max, "primes": primes,
             "s_primes": args.s_primes or []}, res, [])


def cmd_teichmuller(ctx, args):
    f = _poly_arg(args.poly)
    data = measures.teichmuller_data(f, args.p)
    res = data.to_json()
    if args.power is not None:
        ms = measures.residue_power_orbit(f, args.p, args.power)
        res["power"] = args.power
        res["residues"] = [{"minpoly": list(g), "count": c} for g, c in ms]
    return {"poly": args.poly, "p": args.p, "power": args.power}, res, []


def cmd_split_scan(ctx, args):
    f = _poly_arg(args.poly, "u") if "u" in args.poly else _poly_arg(args.poly)
    rows = measures.split_scan(f, args.d, args.p_max)
    bad = [r.p for r in rows if not r.excluded and not r.splits]
    warnings = [f"non-excluded primes that do not split: {bad}"] if bad else []
    return ({"poly": args.poly, "d": args.d, "p_max": args.p_max},
            {"rows": [r.to_json() for r in rows]}, warnings)


def cmd_volume_trend(ctx, args):
    knot, rep = _knot_rep(ctx, args)
    vt = measures.volume_trend(knot.pres, rep, knot.amap, args.k_max, args.embedding, ctx.digits)
    res = vt.to_json()
    res["taus"] = [{"k": k, "order_at_one": a, "modulus": _mp(c, 15)} for k, (a, c) in sorted(vt.tau.items())]
    res["volume_over_4pi_reference"] = _mp(6 * measures.lobachevsky(mpmath.pi / 3) / (4 * mpmath.pi), 12)
    warnings = [f"degenerate at t = 1 for k = {vt.flagged}"] if vt.flagged else []
    return {"knot": args.knot, "rep": args.rep, "k_max": args.k_max, "embedding": args.embedding}, res, warnings


def cmd_paper_suite(ctx, args):
    from .suite import paper_suite

    rows = paper_suite(ctx.catalog, k_max=args.k_max, digits=ctx.digits)
    failed = [r["item"] for r in rows if not r["pass"]]
    warnings = [f"failed: {x}" for x in failed]
    return {"k_max": args.k_max}, {"rows": rows, "passed": len(rows) - len(failed), "failed": len(failed)}, warnings


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _global_options(parser, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--catalog", default=d(None), help="catalog JSON file")
    parser.add_argument("--format", choices=("json", "text"), default=d("text"))
    parser.add_argument("--digits", type=int, default=d(None), help="decimal digits for real outputs")
    parser.add_argument("--jobs", type=int, default=d(None), help="parallel workers")
    parser.add_argument("--timing", action="store_true", default=d(False),
                        help="include wall-clock timing in the report")


def build_parser():
    parser = argparse.ArgumentParser(prog="tapkit", description=__doc__.splitlines()[0])
    _global_options(parser, False)
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, True)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(fn=fn)
        return p

    def knot_rep(p, rep=True):
        p.add_argument("--knot", required=True)
        if rep:
            p.add_argument("--rep", default="riley0")

    knot_rep(add("present", cmd_present, "show a knot presentation"), rep=False)
    p = add("riley-poly", cmd_riley_poly, "Riley polynomial of a two-bridge knot")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--knot")
    g.add_argument("--pq", type=int, nargs=2, metavar=("P", "Q"))
    knot_rep(add("riley-rep", cmd_riley_rep, "parabolic representation matrices"))
    p = add("tap", cmd_tap, "twisted Alexander polynomials, Wada invariant and norm")
    knot_rep(p)
    p.add_argument("--method", choices=("wada", "minors"), default="wada")
    p = add("norm", cmd_norm, "norm polynomial of a polynomial over a number field")
    p.add_argument("--poly", required=True)
    p.add_argument("--field", help="minimal polynomial, e.g. 'u^2-u+1'")
    p.add_argument("--var", default="u")
    add("mahler", cmd_mahler, "Mahler measure").add_argument("--poly", required=True)
    for name, fn in (("padic-mahler", cmd_padic_mahler), ("newton", cmd_newton)):
        p = add(name, fn, "p-adic Mahler measure" if name == "padic-mahler" else "Newton polygon")
        p.add_argument("--poly", required=True)
        p.add_argument("--p", type=int, nargs="+", required=True)
    p = add("cyclic-res", cmd_cyclic_res, "cyclic resultants Res(t^n - 1, f)")
    p.add_argument("--poly", required=True)
    p.add_argument("--n", type=int, nargs="+", required=True)
    p = add("hillar", cmd_hillar, "Hillar-class comparison")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--depth", type=int, default=64)
    add("strip-cyclotomic", cmd_strip, "divide out cyclotomic factors").add_argument("--poly", required=True)
    p = add("homology", cmd_homology, "homology of cyclic covers")
    knot_rep(p)
    p.add_argument("--n", type=int, nargs="+", required=True)
    p.add_argument("--method", choices=("kernel", "cokernel"), default="kernel")
    p = add("growth", cmd_growth, "torsion growth report")
    knot_rep(p)
    p.add_argument("--n-max", type=int)
    p.add_argument("--primes", type=int, nargs="*")
    p.add_argument("--s-primes", type=int, nargs="*")
    p = add("teichmuller", cmd_teichmuller, "orders of root residues mod p")
    p.add_argument("--poly", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--power", type=int)
    p = add("split-scan", cmd_split_scan, "complete splitting mod p for p = 1 mod d")
    p.add_argument("--poly", required=True)
    p.add_argument("--d", type=int)
    p.add_argument("--p-max", type=int, default=200)
    p = add("volume-trend", cmd_volume_trend, "symmetric-power torsion trend at t = 1")
    knot_rep(p)
    p.add_argument("--k-max", type=int, default=13)
    p.add_argument("--embedding", type=int, default=0)
    p = add("paper-suite", cmd_paper_suite, "run all worked-example checks")
    p.add_argument("--k-max", type=int, default=13)
    return parser


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _scalar_text(v):
    if isinstance(v, dict) and "text" in v and "coefficients" in v:
        return v["text"]
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def _table(rows):
    cols = []
    for r in rows:
        for k in r:
            if k not in cols:
                cols.append(k)
    cells = [[_scalar_text(r.get(c, "")) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip() for row in cells]
    return lines


def render_text(report):
    lines = [f"# tapkit {report['command']}"]
    for k, v in report["inputs"].items():
        if v is not None:
            lines.append(f"{k}: {_scalar_text(v)}")
    lines.append("")
    for k, v in report["results"].items():
        if isinstance(v, list) and v and all(isinstance(x, dict) for x in v):
            lines.append(f"{k}:")
            lines += ["  " + l for l in _table(v)]
        else:
            lines.append(f"{k}: {_scalar_text(v)}")
    for w in report["warnings"]:
        lines.append(f"warning: {w}")
    if "timing" in report:
        lines.append(f"timing: {report['timing']} s")
    return "\n".join(lines) + "\n"


def render_json(report):
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


class Context:
    def __init__(self, catalog, digits, jobs):
        self.catalog = catalog
        self.digits = digits
        self.jobs = jobs


def run(argv=None, out=None, err=None):
    """Run one command; returns the exit status."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        catalog = load_catalog(args.catalog) if args.catalog else builtin_catalog()
    except (OSError, CatalogError) as exc:
        err.write(f"tapkit: catalog error: {exc}\n")
        return 2
    digits = args.digits or catalog.defaults["digits"]
    if digits < 10:
        err.write("tapkit: --digits must be >= 10\n")
        return 2
    jobs = args.jobs or os.cpu_count() or 1
    ctx = Context(catalog, digits, jobs)
    start = time.perf_counter()
    try:
        inputs, results, warnings = args.fn(ctx, args)
    except UsageError as exc:
        err.write(f"tapkit: {exc}\n")
        return 2
    except CatalogError as exc:
        err.write(f"tapkit: catalog error: {exc}\n")
        return 2
    except TapkitError as exc:
        err.write(f"tapkit: {type(exc).__name__}: {exc}\n")
        return 1
    report = {"command": args.command, "inputs": inputs, "results": results, "warnings": warnings}
    if args.timing:
        report["timing"] = f"{time.perf_counter() - start:.3f}"
    out.write(render_json(report) if args.format == "json" else render_text(report))
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
