"""JSON bundle files: named objects, matrices, finite monoids and structures.

A bundle looks like::

    {
      "field": "rational",            # or {"prime": 5}
      "objects": {"A": 2},
      "morphisms": {"mu": {"dom": ["A", "A"], "cod": ["A"], "entries": [["1", "0", ...], ...]}},
      "finmonoids": {"Z2": {"elements": ["0", "1"], "table": [[0, 1], [1, 0]], "unit": 0}},
      "structures": {"kZ2": {"type": "monoid", "carrier": ["A"], "mul": "mu", "unit": "eta"}}
    }

Entries are row-major with one row per basis vector of the codomain.
Rationals are written as strings ("3/4"), residues as integers.
``serialize_bundle`` writes a canonical text, so parse and serialize round
trip byte for byte.
"""

from __future__ import annotations

import json
from pathlib import Path

from .coaction import MonoidalTwistedCoactionData, TwistedCoactionData
from .errors import BundleError, ShapeError
from .extension import ExtensionData, FibrationData
from .mixed import MixedOpwreathData
from .structures import BimonoidObj, ComonoidObj, FinMonoid, MonoidObj
from .tensor import QQ, Field, Gen, Mor, Word
from .wreath import WreathData

__all__ = ["Bundle", "parse_bundle", "parse_bundle_text", "serialize_bundle", "write_bundle", "SCHEMA"]

# record layout per structure type: (key, kind) with kind one of
# word, mor, struct:<types>, finmonoid, indices, table, words
SCHEMA = {
    "monoid": [("carrier", "word"), ("mul", "mor"), ("unit", "mor")],
    "comonoid": [("carrier", "word"), ("comul", "mor"), ("counit", "mor")],
    "bimonoid": [("monoid", "struct:monoid"), ("comonoid", "struct:comonoid")],
    "wreath": [("monoid", "struct:monoid"), ("s", "word"), ("nu", "mor"), ("sigma0", "mor"), ("lambda", "mor")],
    "opwreath": [("monoid", "struct:monoid"), ("c", "word"), ("d", "mor"), ("w", "mor"), ("z", "mor")],
    "coaction": [("monoid", "struct:monoid"), ("bimonoid", "struct:bimonoid"), ("gamma", "mor"), ("tau", "mor")],
    "monoidal-coaction": [("coaction", "struct:coaction"), ("dd", "mor")],
    "fibration": [("e", "finmonoid"), ("m", "finmonoid"), ("p", "indices"), ("j", "indices")],
    "extension": [("m", "finmonoid"), ("a", "finmonoid"), ("alpha", "table"), ("rho", "table")],
}
OPTIONAL = {"monoidal-coaction": [("gens", "words")]}


class Bundle:
    def __init__(self, field: Field = QQ):
        self.field = field
        self.objects: dict[str, int] = {}
        self.morphisms: dict[str, Mor] = {}
        self.finmonoids: dict[str, FinMonoid] = {}
        self.structures: dict[str, dict] = {}
        self._built: dict[str, object] = {}

    # reading

    def word(self, names) -> Word:
        if not isinstance(names, list) or not all(isinstance(n, str) for n in names):
            raise BundleError(f"a word must be a list of object names, got {names!r}")
        gens = []
        for n in names:
            if n not in self.objects:
                raise BundleError(f"unknown object {n!r}")
            gens.append(Gen(n, self.objects[n]))
        return Word(gens)

    def kind(self, name: str) -> str:
        if name not in self.structures:
            raise BundleError(f"unknown structure {name!r}")
        return self.structures[name]["type"]

    def get(self, name: str, *types):
        """Typed value of a structure; ``types`` restricts what is accepted."""
        kind = self.kind(name)
        if types and kind not in types:
            if "monoid" in types and kind == "bimonoid":
                return self.get(name).monoid
            raise BundleError(f"structure {name!r} is a {kind}, expected {' or '.join(types)}")
        if name not in self._built:
            self._built[name] = None  # cycle guard
            self._built[name] = self._build(name, kind, self.structures[name])
        elif self._built[name] is None:
            raise BundleError(f"structure {name!r} refers to itself")
        return self._built[name]

    def _mor(self, owner: str, ref) -> Mor:
        if not isinstance(ref, str) or ref not in self.morphisms:
            raise BundleError(f"structure {owner!r} refers to unknown morphism {ref!r}")
        return self.morphisms[ref]

    def _fin(self, owner: str, ref) -> FinMonoid:
        if not isinstance(ref, str) or ref not in self.finmonoids:
            raise BundleError(f"structure {owner!r} refers to unknown finite monoid {ref!r}")
        return self.finmonoids[ref]

    def _build(self, name: str, kind: str, rec: dict):
        r = {}
        for key, what in SCHEMA[kind] + OPTIONAL.get(kind, []):
            if key not in rec:
                if (key, what) in OPTIONAL.get(kind, []):
                    continue
                raise BundleError(f"structure {name!r} ({kind}) is missing {key!r}")
            v = rec[key]
            if what == "word":
                r[key] = self.word(v)
            elif what == "words":
                r[key] = [self.word(x) for x in v]
            elif what == "mor":
                r[key] = self._mor(name, v)
            elif what == "finmonoid":
                r[key] = self._fin(name, v)
            elif what.startswith("struct:"):
                if not isinstance(v, str) or v not in self.structures:
                    raise BundleError(f"structure {name!r} refers to unknown structure {v!r}")
                r[key] = self.get(v, what.split(":")[1])
            else:
                r[key] = v
        try:
            return _assemble(kind, r)
        except (ShapeError, ValueError, TypeError) as e:
            raise BundleError(f"structure {name!r}: {e}") from e

    def validate(self):
        for name in self.structures:
            self.get(name)
        return self

    # writing

    def add_object(self, name: str, dim: int):
        if self.objects.get(name, dim) != dim:
            raise BundleError(f"object {name!r} already has dimension {self.objects[name]}")
        self.objects[name] = dim

    def add_morphism(self, name: str, m: Mor) -> str:
        if m.field != self.field:
            raise BundleError(f"morphism {name!r} is over {m.field}, bundle over {self.field}")
        for g in list(m.dom) + list(m.cod):
            self.add_object(g.name, g.dim)
        self.morphisms[name] = m
        return name

    def add_finmonoid(self, name: str, fm: FinMonoid) -> str:
        self.finmonoids[name] = fm
        return name

    def add_structure(self, name: str, kind: str, **fields) -> str:
        if kind not in SCHEMA:
            raise BundleError(f"unknown structure type {kind!r}")
        self.structures[name] = {"type": kind, **fields}
        self._built.pop(name, None)
        return name

    def put(self, name: str, value) -> str:
        """Store a typed value; its morphisms are named ``name.<field>``."""
        def mor(key, m):
            return self.add_morphism(f"{name}.{key}", m)

        def words(w):
            for g in w:
                self.add_object(g.name, g.dim)
            return w.names()

        if isinstance(value, MonoidObj):
            fields = dict(carrier=words(value.carrier), mul=mor("mul", value.mul), unit=mor("unit", value.unit))
            self.add_structure(name, "monoid", **fields)
        elif isinstance(value, ComonoidObj):
            fields = dict(carrier=words(value.carrier), comul=mor("comul", value.comul), counit=mor("counit", value.counit))
            self.add_structure(name, "comonoid", **fields)
        elif isinstance(value, BimonoidObj):
            self.put(f"{name}.monoid", value.monoid)
            self.put(f"{name}.comonoid", value.comonoid)
            self.add_structure(name, "bimonoid", monoid=f"{name}.monoid", comonoid=f"{name}.comonoid")
        elif isinstance(value, WreathData):
            self.put(f"{name}.A", value.monoid)
            self.add_structure(
                name, "wreath", monoid=f"{name}.A", s=words(value.s),
                nu=mor("nu", value.nu), sigma0=mor("sigma0", value.sigma0), **{"lambda": mor("lambda", value.lam)},
            )
        elif isinstance(value, MixedOpwreathData):
            self.put(f"{name}.A", value.monoid)
            self.add_structure(
                name, "opwreath", monoid=f"{name}.A", c=words(value.c),
                d=mor("d", value.d), w=mor("w", value.w), z=mor("z", value.z),
            )
        elif isinstance(value, TwistedCoactionData):
            self.put(f"{name}.A", value.a)
            self.put(f"{name}.B", value.b)
            self.add_structure(
                name, "coaction", monoid=f"{name}.A", bimonoid=f"{name}.B",
                gamma=mor("gamma", value.gamma), tau=mor("tau", value.tau),
            )
        elif isinstance(value, MonoidalTwistedCoactionData):
            self.put(f"{name}.base", value.base)
            self.add_structure(name, "monoidal-coaction", coaction=f"{name}.base", dd=mor("dd", value.dd))
        elif isinstance(value, FibrationData):
            self.add_finmonoid(f"{name}.E", value.e)
            self.add_finmonoid(f"{name}.M", value.m)
            self.add_structure(name, "fibration", e=f"{name}.E", m=f"{name}.M", p=list(value.p), j=list(value.j))
        elif isinstance(value, ExtensionData):
            self.add_finmonoid(f"{name}.M", value.m)
            self.add_finmonoid(f"{name}.A", value.a)
            self.add_structure(
                name, "extension", m=f"{name}.M", a=f"{name}.A",
                alpha=[list(r) for r in value.alpha], rho=[list(r) for r in value.rho],
            )
        elif isinstance(value, FinMonoid):
            self.add_finmonoid(name, value)
        elif isinstance(value, Mor):
            self.add_morphism(name, value)
        else:
            raise TypeError(f"cannot store {type(value).__name__} in a bundle")
        return name


def _assemble(kind: str, r: dict):
    if kind == "monoid":
        return MonoidObj(r["carrier"], r["mul"], r["unit"])
    if kind == "comonoid":
        return ComonoidObj(r["carrier"], r["comul"], r["counit"])
    if kind == "bimonoid":
        return BimonoidObj(r["monoid"], r["comonoid"])
    if kind == "wreath":
        return WreathData(r["monoid"], r["s"], r["nu"], r["sigma0"], r["lambda"])
    if kind == "opwreath":
        return MixedOpwreathData(r["monoid"], r["c"], r["d"], r["w"], r["z"])
    if kind == "coaction":
        return TwistedCoactionData(r["monoid"], r["bimonoid"], r["gamma"], r["tau"])
    if kind == "monoidal-coaction":
        m = MonoidalTwistedCoactionData(r["coaction"], r["dd"])
        return (m, r.get("gens"))
    if kind == "fibration":
        return FibrationData(r["e"], r["m"], r["p"], r["j"])
    if kind == "extension":
        return ExtensionData(r["m"], r["a"], r["alpha"], r["rho"])
    raise BundleError(f"unknown structure type {kind!r}")


def _field(raw) -> Field:
    try:
        if raw == "rational" or raw == {"kind": "rational"}:
            return QQ
        if isinstance(raw, dict):
            if set(raw) == {"prime"}:
                return Field(int(raw["prime"]))
            if raw.get("kind") == "prime" and set(raw) == {"kind", "p"}:
                return Field(int(raw["p"]))
    except ValueError as e:
        raise BundleError(f"bad field: {e}") from e
    raise BundleError(f"field must be \"rational\" or {{\"prime\": p}}, got {raw!r}")


def _dict(doc, key) -> dict:
    v = doc.get(key, {})
    if not isinstance(v, dict):
        raise BundleError(f"{key!r} must be an object")
    return v


def parse_bundle_text(text: str) -> Bundle:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise BundleError(f"malformed JSON: {e}") from e
    if not isinstance(doc, dict):
        raise BundleError("a bundle must be a JSON object")
    unknown = set(doc) - {"field", "objects", "morphisms", "finmonoids", "structures"}
    if unknown:
        raise BundleError(f"unknown top-level keys {sorted(unknown)}")
    if "field" not in doc:
        raise BundleError("bundle has no field")
    b = Bundle(_field(doc["field"]))

    objects = doc.get("objects", {})
    if isinstance(objects, list) and not objects:
        objects = {}
    if not isinstance(objects, dict):
        raise BundleError("'objects' must map names to dimensions")
    for name, dim in objects.items():
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
            raise BundleError(f"object {name!r} needs a positive integer dimension, got {dim!r}")
        b.objects[name] = dim

    for name, rec in _dict(doc, "morphisms").items():
        if not isinstance(rec, dict) or set(rec) != {"dom", "cod", "entries"}:
            raise BundleError(f"morphism {name!r} needs exactly dom, cod and entries")
        dom, cod = b.word(rec["dom"]), b.word(rec["cod"])
        rows = rec["entries"]
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise BundleError(f"morphism {name!r}: entries must be a list of rows")
        shape = f"{len(rows)}x{len(rows[0]) if rows else 0}"
        if len(rows) != cod.dim or any(len(r) != dom.dim for r in rows):
            raise BundleError(
                f"morphism {name!r}: {dom} -> {cod} needs a {cod.dim}x{dom.dim} matrix, got {shape}"
            )
        for row in rows:
            for x in row:
                if isinstance(x, bool) or not isinstance(x, (int, str)):
                    raise BundleError(f"morphism {name!r}: entry {x!r} is not an exact scalar")
        try:
            b.morphisms[name] = Mor(dom, cod, rows, b.field)
        except (ValueError, ZeroDivisionError) as e:
            raise BundleError(f"morphism {name!r}: {e}") from e

    for name, rec in _dict(doc, "finmonoids").items():
        if not isinstance(rec, dict) or set(rec) != {"elements", "table", "unit"}:
            raise BundleError(f"finite monoid {name!r} needs exactly elements, table and unit")
        try:
            b.finmonoids[name] = FinMonoid(rec["elements"], rec["table"], rec["unit"])
        except (ValueError, TypeError) as e:
            raise BundleError(f"finite monoid {name!r}: {e}") from e

    for name, rec in _dict(doc, "structures").items():
        if not isinstance(rec, dict) or rec.get("type") not in SCHEMA:
            raise BundleError(f"structure {name!r} has no known type")
        allowed = {"type"} | {k for k, _ in SCHEMA[rec["type"]]} | {k for k, _ in OPTIONAL.get(rec["type"], [])}
        extra = set(rec) - allowed
        if extra:
            raise BundleError(f"structure {name!r} has unknown keys {sorted(extra)}")
        b.structures[name] = rec
    return b.validate()


def parse_bundle(path) -> Bundle:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise BundleError(f"cannot read {path}: {e}") from e
    return parse_bundle_text(text)


def _scalar_rows(m: Mor, field: Field):
    return [[field.format(x) for x in row] for row in m.tolist()]


def _doc(b: Bundle) -> dict:
    field = "rational" if b.field.p is None else {"prime": b.field.p}
    morphisms = {
        name: {"dom": m.dom.names(), "cod": m.cod.names(), "entries": _scalar_rows(m, b.field)}
        for name, m in b.morphisms.items()
    }
    finmonoids = {
        name: {"elements": list(fm.elements), "table": [list(r) for r in fm.table], "unit": fm.unit}
        for name, fm in b.finmonoids.items()
    }
    structures = {}
    for name, rec in b.structures.items():
        kind = rec["type"]
        out = {"type": kind}
        for key, _ in SCHEMA[kind] + OPTIONAL.get(kind, []):
            if key in rec:
                out[key] = rec[key]
        structures[name] = out
    return {
        "field": field,
        "objects": dict(b.objects),
        "morphisms": morphisms,
        "finmonoids": finmonoids,
        "structures": structures,
    }


def _flat(v) -> bool:
    return not isinstance(v, (list, dict))


def _emit(v, depth: int) -> str:
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(v, dict):
        if not v:
            return "{}"
        items = [f"{inner}{json.dumps(k, ensure_ascii=False)}: {_emit(x, depth + 1)}" for k, x in v.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(v, list):
        if all(_flat(x) for x in v):
            return "[" + ", ".join(json.dumps(x, ensure_ascii=False) for x in v) + "]"
        return "[\n" + ",\n".join(inner + _emit(x, depth + 1) for x in v) + "\n" + pad + "]"
    return json.dumps(v, ensure_ascii=False)


def serialize_bundle(b: Bundle) -> str:
    return _emit(_doc(b), 0) + "\n"


def write_bundle(b: Bundle, path):
    Path(path).write_text(serialize_bundle(b), encoding="utf-8")
