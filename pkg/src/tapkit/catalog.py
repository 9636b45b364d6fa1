"""Knot and representation catalog (JSON, ``"schema": 1``).

Example::

    {
      "schema": 1,
      "knots": {
        "5_2": {"presentation": {"generators": "xy",
                                 "relators": ["xyXYxyxYXyxYXY"]},
                "two_bridge": [7, 3]}
      },
      "reps": {"adj": {"kind": "riley", "factor": 0, "sym_power": 2}},
      "defaults": {"digits": 30, "n_max": 8, "primes": [2, 3, 5, 7, 11, 23]}
    }

A knot given by an explicit presentation may name ``two_bridge`` parameters
so Riley representations can be attached; they are checked against its
relators.  Explicit representations name the knot they belong to.
"""

import json
import re
from dataclasses import dataclass, field as dc_field

from .errors import ParseError, TapkitError, ValidationError
from .knotgroup import (
    AbelianMap,
    Presentation,
    Rep,
    check_rep,
    riley_rep,
    sym_power,
    trivial_rep,
    two_bridge_presentation,
)
from .numfield import NumberField

SCHEMA = 1
BUILTIN_KNOTS = {"3_1": (3, 1), "4_1": (5, 3), "5_1": (5, 1), "5_2": (7, 3)}
DEFAULTS = {"digits": 30, "n_max": 8, "primes": [2, 3, 5, 7, 11, 23]}


@dataclass
class Knot:
    name: str
    pres: Presentation
    amap: AbelianMap
    two_bridge: tuple = None


@dataclass
class RepSpec:
    name: str
    kind: str  # riley | explicit | trivial
    factor: int = 0
    sym_power: int = 1
    knot: str = None
    field: str = None
    matrices: list = None


@dataclass
class Catalog:
    knots: dict = dc_field(default_factory=dict)
    reps: dict = dc_field(default_factory=dict)
    defaults: dict = dc_field(default_factory=lambda: dict(DEFAULTS))

    def knot(self, name):
        if name not in self.knots:
            raise KeyError(f"unknown knot {name!r}; known: {', '.join(sorted(self.knots))}")
        return self.knots[name]

    def rep_spec(self, name):
        if name in self.reps:
            return self.reps[name]
        m = re.fullmatch(r"riley(\d+)", name)
        if m:
            return RepSpec(name, "riley", int(m.group(1)))
        if name == "trivial":
            return RepSpec(name, "trivial")
        raise KeyError(f"unknown representation {name!r}")

    def rep(self, knot_name, rep_name):
        """Resolve ``rep_name`` on ``knot_name`` to a checked ``Rep``."""
        knot = self.knot(knot_name)
        spec = self.rep_spec(rep_name)
        return build_rep(knot, spec)


def build_rep(knot, spec):
    if spec.kind == "trivial":
        rep = trivial_rep(knot.pres.n_gens)
    elif spec.kind == "riley":
        if knot.two_bridge is None:
            raise ValidationError(spec.name, f"knot {knot.name} has no two-bridge parameters")
        rep, _ = riley_rep(*knot.two_bridge, spec.factor)
        rep = Rep(rep.field, rep.mats, special=True, name=spec.name)
    else:
        if spec.knot is not None and spec.knot != knot.name:
            raise ValidationError(spec.name, f"representation belongs to knot {spec.knot}")
        rep = _explicit_rep(spec, knot.pres.n_gens)
    if spec.sym_power > 1:
        rep = sym_power(rep, spec.sym_power)
    ok, witness = check_rep(knot.pres, rep)
    if not ok:
        rel = witness[0].format(knot.pres.names) if witness[0] is not None else "?"
        raise ValidationError(spec.name, f"relator {rel} does not map to the identity")
    return rep


def _explicit_rep(spec, n_gens):
    try:
        K = NumberField(spec.field) if spec.field else None
        mats = spec.matrices
        if len(mats) != n_gens:
            raise ValidationError(spec.name, f"expected {n_gens} matrices, got {len(mats)}")
        if K is None:
            from fractions import Fraction
            conv = [[[Fraction(str(x)) for x in row] for row in m] for m in mats]
            conv = [[[int(x) if x.denominator == 1 else x for x in row] for row in m] for m in conv]
        else:
            conv = [[[K.parse(str(x)) for x in row] for row in m] for m in mats]
        return Rep(K, conv, name=spec.name)
    except ValidationError:
        raise
    except (TapkitError, ValueError, TypeError) as exc:
        raise ValidationError(spec.name, str(exc)) from exc


def builtin_catalog():
    cat = Catalog()
    for name, (p, q) in BUILTIN_KNOTS.items():
        pres, amap = two_bridge_presentation(p, q)
        cat.knots[name] = Knot(name, pres, amap, (p, q))
    return cat


def _knot_entry(name, entry):
    if not isinstance(entry, dict):
        raise ValidationError(name, "knot entry must be an object")
    tb = entry.get("two_bridge")
    if tb is not None:
        if not (isinstance(tb, list) and len(tb) == 2 and all(isinstance(x, int) for x in tb)):
            raise ValidationError(name, "two_bridge must be [p, q]")
        tb = tuple(tb)
    try:
        if "presentation" in entry:
            pr = entry["presentation"]
            pres = Presentation.from_strings(pr["generators"], pr["relators"])
            amap = AbelianMap(tuple(entry.get("abelian", [1] * pres.n_gens))).validate(pres)
        elif tb is not None:
            pres, amap = two_bridge_presentation(*tb)
        else:
            raise ValidationError(name, "knot needs 'two_bridge' or 'presentation'")
    except ValidationError:
        raise
    except (TapkitError, KeyError, TypeError) as exc:
        raise ValidationError(name, str(exc)) from exc
    return Knot(name, pres, amap, tb)


def _rep_entry(name, entry):
    if not isinstance(entry, dict) or "kind" not in entry:
        raise ValidationError(name, "representation entry needs a 'kind'")
    kind = entry["kind"]
    if kind not in ("riley", "explicit", "trivial"):
        raise ValidationError(name, f"unknown kind {kind!r}")
    spec = RepSpec(name, kind, int(entry.get("factor", 0)), int(entry.get("sym_power", 1)),
                   entry.get("knot"), entry.get("field"), entry.get("matrices"))
    if kind == "explicit" and (spec.matrices is None or spec.knot is None):
        raise ValidationError(name, "explicit representations need 'knot' and 'matrices'")
    return spec


def parse_catalog(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from exc
    if not isinstance(data, dict):
        raise ParseError("catalog must be a JSON object", 1, 1)
    schema = data.get("schema", SCHEMA)
    if schema != SCHEMA:
        raise ValidationError("schema", f"unsupported schema {schema!r}")
    cat = builtin_catalog()
    for name, entry in (data.get("knots") or {}).items():
        cat.knots[name] = _knot_entry(name, entry)
    for name, entry in (data.get("reps") or {}).items():
        cat.reps[name] = _rep_entry(name, entry)
    defaults = data.get("defaults") or {}
    unknown = set(defaults) - set(DEFAULTS)
    if unknown:
        raise ValidationError("defaults", f"unknown keys {sorted(unknown)}")
    cat.defaults.update(defaults)
    # explicit reps are checked against their knot now
    for spec in cat.reps.values():
        if spec.kind == "explicit":
            if spec.knot not in cat.knots:
                raise ValidationError(spec.name, f"unknown knot {spec.knot!r}")
            build_rep(cat.knots[spec.knot], spec)
    return cat


def load_catalog(path):
    with open(path, encoding="utf-8") as fh:
        return parse_catalog(fh.read())
