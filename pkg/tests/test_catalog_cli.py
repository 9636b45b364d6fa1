import io
import json

import pytest

from tapkit.catalog import builtin_catalog, load_catalog, parse_catalog
from tapkit.cli import run
from tapkit.errors import ParseError, ValidationError
from tapkit.twistpoly import norm_polynomial, wada_invariant

OVERRIDE_52 = {
    "schema": 1,
    "knots": {"5_2": {"presentation": {"generators": "xy", "relators": ["xyXYxyxYXyxYXY"]},
                      "two_bridge": [7, 3]}},
}


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_empty_catalog_is_builtins(tmp_path):
    path = tmp_path / "cat.json"
    path.write_text("{}")
    cat = load_catalog(path)
    assert sorted(cat.knots) == ["3_1", "4_1", "5_1", "5_2"]
    assert cat.knots["5_2"].two_bridge == (7, 3)
    assert not cat.reps


def test_override_with_explicit_presentation_matches_builtin():
    cat = parse_catalog(json.dumps(OVERRIDE_52))
    knot = cat.knot("5_2")
    assert knot.pres.relators[0].format(knot.pres.names) == "xyXYxyxYXyxYXY"
    rep = cat.rep("5_2", "riley0")
    w = wada_invariant(knot.pres, rep, knot.amap)
    ref = builtin_catalog()
    k0 = ref.knot("5_2")
    w0 = wada_invariant(k0.pres, ref.rep("5_2", "riley0"), k0.amap)
    assert w.quotient.normalized() == w0.quotient.normalized()
    assert norm_polynomial(w.quotient).normalized() == norm_polynomial(w0.quotient).normalized()


def test_bad_explicit_rep_names_relator():
    text = json.dumps({"reps": {"bad": {"kind": "explicit", "knot": "3_1",
                                        "matrices": [[[1, 1], [0, 1]], [[1, 0], [1, 1]]]}}})
    with pytest.raises(ValidationError) as info:
        parse_catalog(text)
    assert info.value.name == "bad" and "relator" in str(info.value)


def test_good_explicit_rep_loads():
    # trefoil Riley rep at u = -1, given by hand
    text = json.dumps({"reps": {"r": {"kind": "explicit", "knot": "3_1",
                                      "matrices": [[[1, 1], [0, 1]], [[1, 0], [-1, 1]]]}}})
    cat = parse_catalog(text)
    assert cat.rep("3_1", "r").N == 2


def test_parse_error_location():
    with pytest.raises(ParseError) as info:
        parse_catalog('{\n  "knots": {\n    "x": [1, 2,]\n  }\n}')
    assert info.value.line == 3 and info.value.column is not None


def test_unknown_schema_rejected():
    with pytest.raises(ValidationError):
        parse_catalog('{"schema": 2}')


def test_exit_codes(tmp_path):
    assert cli("mahler", "--poly", "t^2-4*t+1")[0] == 0
    assert cli("teichmuller", "--poly", "3*t+9", "--p", "3")[0] == 1
    code, out, err = cli("tap", "--knot", "9_99")
    assert code == 2 and out == "" and "9_99" in err
    assert cli("no-such-command")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, out, err = cli("--catalog", str(bad), "present", "--knot", "3_1")
    assert code == 2 and out == "" and "line" in err


def test_json_round_trip():
    for argv in (("tap", "--knot", "4_1"), ("mahler", "--poly", "t^2+1"),
                 ("homology", "--knot", "3_1", "--rep", "trivial", "--n", "1", "2", "6")):
        code, out, _ = cli(*argv, "--format", "json")
        assert code == 0
        assert json.dumps(json.loads(out), indent=2, sort_keys=True) + "\n" == out


def test_global_flags_either_side():
    a = cli("--format", "json", "mahler", "--poly", "t^2+1")[1]
    b = cli("mahler", "--poly", "t^2+1", "--format", "json")[1]
    assert a == b


def test_tap_5_2_json():
    code, out, _ = cli("tap", "--knot", "5_2", "--rep", "riley0", "--format", "json")
    res = json.loads(out)["results"]
    assert res["norm_polynomial"]["coefficients"] == ["25", "-104", "219", "-272", "219", "-104", "25"]
    assert res["field"] == "u^3 + u^2 + 2*u + 1"
    assert res["wada"]["is_polynomial"] is True


def test_tap_minors_route_agrees():
    code, out, _ = cli("tap", "--knot", "5_2", "--method", "minors", "--format", "json")
    assert json.loads(out)["results"]["routes_agree"] is True


def test_mahler_cli():
    code, out, _ = cli("mahler", "--poly", "t^2-4*t+1", "--digits", "20", "--format", "json")
    assert json.loads(out)["results"]["value"].startswith("3.73205080756887729")


def test_growth_cli():
    code, out, _ = cli("growth", "--knot", "4_1", "--rep", "riley0", "--n-max", "8",
                       "--jobs", "1", "--format", "json")
    rows = json.loads(out)["results"]["rows"]
    assert [r["n"] for r in rows] == list(range(1, 9))
    assert {r["ratio"] for r in rows} == {"1"}


def test_text_output_and_timing():
    code, out, _ = cli("cyclic-res", "--poly", "t^2-t+1", "--n", "1", "2", "3", "--timing")
    assert code == 0
    assert out.startswith("# tapkit cyclic-res") and "timing:" in out
    code, out, _ = cli("cyclic-res", "--poly", "t^2-t+1", "--n", "1", "--format", "json")
    assert "timing" not in json.loads(out)


def test_riley_poly_cli():
    code, out, _ = cli("riley-poly", "--pq", "7", "3", "--format", "json")
    assert json.loads(out)["results"]["riley_polynomial"]["text"] == "u^3 + u^2 + 2*u + 1"
