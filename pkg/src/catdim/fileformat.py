"""JSON algebra files: parsing with located errors, serialization, and
construction of algebras and families.

An algebra file looks like::

    {"name": "B2", "field": "q", "vertices": ["1", "2"],
     "arrows": [{"name": "a", "from": "1", "to": "2", "degree": 0}],
     "relations": [], "blocks": [["1"], ["2"]]}

``"tensor": ["B2", "B3"]`` builds a tensor product instead; each name is a
sibling file ``<name>.json`` or a built-in (``B<n>``, ``kronecker``, ``xyz``).
An optional ``"family"`` section describes a polynomial family.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from dataclasses import field as _field
from fractions import Fraction
from pathlib import Path
from typing import Any

from .algebra import Algebra, Arrow, Quiver, path_algebra, tensor_product
from .linalg import Field, parse_field
from .family import ModuleFamily, Poly, PolyComplex, PolyMatrix

SCHEMA_VERSION = "catdim.algebra/1"
KEYS = {"name", "field", "vertices", "arrows", "relations", "tensor", "blocks", "family", "schema"}


class ParseError(ValueError):
    """Malformed input; ``location`` is a path like ``arrows[1].from``."""

    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


@dataclass
class AlgebraFile:
    name: str
    field: str = "q"
    vertices: list[str] = _field(default_factory=list)
    arrows: list[dict] = _field(default_factory=list)
    relations: list[list[str]] = _field(default_factory=list)
    tensor: list[str] = _field(default_factory=list)
    blocks: list[list[str]] | None = None
    family: dict | None = None
    base_dir: Path | None = None

    def to_json(self) -> dict:
        out: dict[str, Any] = {"name": self.name, "field": self.field}
        if self.tensor:
            out["tensor"] = list(self.tensor)
        else:
            out["vertices"] = list(self.vertices)
            out["arrows"] = [dict(a) for a in self.arrows]
            out["relations"] = [list(r) for r in self.relations]
        if self.blocks is not None:
            out["blocks"] = [list(b) for b in self.blocks]
        if self.family is not None:
            out["family"] = self.family
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _expect(cond: bool, message: str, loc: str):
    if not cond:
        raise ParseError(message, loc)


def _str_list(x, loc: str) -> list[str]:
    _expect(isinstance(x, list), "expected a list", loc)
    for i, v in enumerate(x):
        _expect(isinstance(v, (str, int)) and not isinstance(v, bool), "expected a string", f"{loc}[{i}]")
    return [str(v) for v in x]


def parse(doc: Any, base_dir: Path | None = None) -> AlgebraFile:
    """Validate a decoded JSON document and return its :class:`AlgebraFile`."""
    _expect(isinstance(doc, dict), "top level must be an object", "$")
    unknown = set(doc) - KEYS
    _expect(not unknown, f"unknown keys {sorted(unknown)}", "$")
    _expect(isinstance(doc.get("name"), str) and doc["name"], "missing or empty name", "name")
    fld = doc.get("field", "q")
    try:
        parse_field(str(fld))
    except ValueError as e:
        raise ParseError(str(e), "field") from None
    af = AlgebraFile(doc["name"], str(fld), base_dir=base_dir)
    if "tensor" in doc:
        af.tensor = _str_list(doc["tensor"], "tensor")
        _expect(len(af.tensor) >= 1, "tensor needs at least one factor", "tensor")
        for k in ("vertices", "arrows", "relations"):
            _expect(k not in doc, "not allowed together with tensor", k)
    else:
        _expect("vertices" in doc, "missing vertices", "vertices")
        af.vertices = _str_list(doc["vertices"], "vertices")
        _expect(len(set(af.vertices)) == len(af.vertices), "duplicate vertex", "vertices")
        arrows = doc.get("arrows", [])
        _expect(isinstance(arrows, list), "expected a list", "arrows")
        names = set()
        for i, a in enumerate(arrows):
            loc = f"arrows[{i}]"
            _expect(isinstance(a, dict), "expected an object", loc)
            extra = set(a) - {"name", "from", "to", "degree"}
            _expect(not extra, f"unknown keys {sorted(extra)}", loc)
            for k in ("name", "from", "to"):
                _expect(isinstance(a.get(k), (str, int)) and not isinstance(a.get(k), bool),
                        "missing or not a string", f"{loc}.{k}")
            nm = str(a["name"])
            _expect(nm not in names, f"duplicate arrow {nm}", f"{loc}.name")
            names.add(nm)
            for k in ("from", "to"):
                _expect(str(a[k]) in af.vertices, f"unknown vertex {a[k]}", f"{loc}.{k}")
            deg = a.get("degree", 0)
            _expect(isinstance(deg, int) and not isinstance(deg, bool), "degree must be an integer",
                    f"{loc}.degree")
            af.arrows.append({"name": nm, "from": str(a["from"]), "to": str(a["to"]), "degree": deg})
        rels = doc.get("relations", [])
        _expect(isinstance(rels, list), "expected a list", "relations")
        for i, r in enumerate(rels):
            r = _str_list(r, f"relations[{i}]")
            _expect(bool(r), "empty relation", f"relations[{i}]")
            for j, nm in enumerate(r):
                _expect(nm in names, f"unknown arrow {nm}", f"relations[{i}][{j}]")
            af.relations.append(r)
    if "blocks" in doc:
        blocks = doc["blocks"]
        _expect(isinstance(blocks, list), "expected a list", "blocks")
        af.blocks = [_str_list(b, f"blocks[{i}]") for i, b in enumerate(blocks)]
        if af.vertices:
            seen = [v for b in af.blocks for v in b]
            _expect(sorted(seen) == sorted(af.vertices), "blocks must partition the vertices", "blocks")
    if "family" in doc:
        _expect(isinstance(doc["family"], dict), "expected an object", "family")
        af.family = doc["family"]
    return af


def loads(text: str, base_dir: Path | None = None) -> AlgebraFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, f"line {e.lineno} column {e.colno}") from None
    return parse(doc, base_dir)


def load(path: str | Path) -> AlgebraFile:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise ParseError(str(e), str(p)) from None
    return loads(text, p.parent)


# -- construction ---------------------------------------------------------------

_BUILTIN = re.compile(r"^B(\d+)$")


def _resolve(name: str, base_dir: Path | None, fld: Field, depth: int) -> Algebra:
    if base_dir is not None:
        cand = base_dir / f"{name}.json"
        if cand.exists():
            return build(load(cand), fld, depth + 1)
    from . import catalog
    m = _BUILTIN.match(name)
    if m:
        return catalog.B(int(m.group(1)), fld)
    if name == "kronecker":
        return catalog.kronecker(2, fld)
    if name == "xyz":
        return catalog.xyz(fld)
    raise ParseError(f"cannot resolve tensor factor {name}", "tensor")


def build(af: AlgebraFile, fld: Field | None = None, _depth: int = 0) -> Algebra:
    """The algebra described by ``af``; ``fld`` overrides the file's field."""
    if _depth > 8:
        raise ParseError("tensor references nest too deeply", "tensor")
    F = fld or parse_field(af.field)
    if af.tensor:
        out = _resolve(af.tensor[0], af.base_dir, F, _depth)
        for nm in af.tensor[1:]:
            out = tensor_product(out, _resolve(nm, af.base_dir, F, _depth))
        out.name = af.name
        if af.blocks is not None:
            out.blocks = af.blocks
        return out
    q = Quiver(tuple(af.vertices),
               tuple(Arrow(a["name"], a["from"], a["to"], a["degree"]) for a in af.arrows))
    return path_algebra(q, af.relations, F, name=af.name, blocks=af.blocks)


def from_algebra(A: Algebra) -> AlgebraFile:
    """File content for a quiver algebra (inverse of :func:`build`)."""
    if A.quiver is None:
        raise ValueError("only quiver algebras can be serialized")
    q = A.quiver
    return AlgebraFile(
        A.name or "algebra", A.field.spec(), list(q.vertices),
        [{"name": a.name, "from": a.source, "to": a.target, "degree": a.degree} for a in q.arrows],
        [list(r) for r in A.relations], blocks=A.blocks)


# -- families -----------------------------------------------------------------

def _scalar(x, loc: str):
    if isinstance(x, bool):
        raise ParseError("expected a number", loc)
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return Fraction(x)
        except ValueError:
            raise ParseError(f"bad number {x!r}", loc) from None
    raise ParseError("expected an integer or a rational string", loc)


def _poly(x, F: Field, loc: str) -> Poly:
    """A polynomial is a scalar or a coefficient list, constant term first."""
    if isinstance(x, list):
        return Poly([_scalar(c, f"{loc}[{i}]") for i, c in enumerate(x)], F)
    return Poly.const(_scalar(x, loc), F)


def _matrix(x, shape: tuple[int, int], F: Field, loc: str) -> PolyMatrix:
    _expect(isinstance(x, list) and len(x) == shape[0], f"expected {shape[0]} rows", loc)
    rows = []
    for i, row in enumerate(x):
        _expect(isinstance(row, list) and len(row) == shape[1], f"expected {shape[1]} columns",
                f"{loc}[{i}]")
        rows.append([_poly(c, F, f"{loc}[{i}][{j}]") for j, c in enumerate(row)])
    return PolyMatrix(shape[0], shape[1], rows) if rows else PolyMatrix.zero(*shape, F)


def _module_family(A: Algebra, spec, loc: str) -> ModuleFamily:
    _expect(isinstance(spec, dict), "expected an object", loc)
    q = A.quiver
    dims = spec.get("dims", {})
    _expect(isinstance(dims, dict), "expected an object", f"{loc}.dims")
    for v, d in dims.items():
        _expect(v in q.vertices, f"unknown vertex {v}", f"{loc}.dims")
        _expect(isinstance(d, int) and d >= 0, "dimension must be a nonnegative integer", f"{loc}.dims.{v}")
    maps = {}
    for nm, m in spec.get("maps", {}).items():
        try:
            a = q.arrow(nm)
        except KeyError:
            raise ParseError(f"unknown arrow {nm}", f"{loc}.maps") from None
        maps[nm] = _matrix(m, (dims.get(a.target, 0), dims.get(a.source, 0)), A.field,
                           f"{loc}.maps.{nm}")
    return ModuleFamily(A, dims, maps)


def build_family(af: AlgebraFile, A: Algebra):
    """``("complex", PolyComplex)`` or ``("modules", (M, N))``."""
    from .family import NotHereditary, family_rhom

    fam = af.family
    if fam is None:
        raise ParseError("no family section", "family")
    kind = fam.get("kind")
    F = A.field
    if kind == "complex":
        ranks = fam.get("ranks")
        _expect(isinstance(ranks, dict) and ranks, "expected an object of ranks", "family.ranks")
        try:
            rk = {int(k): int(v) for k, v in ranks.items()}
        except (TypeError, ValueError):
            raise ParseError("ranks must map integers to integers", "family.ranks") from None
        d = {}
        for k, m in fam.get("d", {}).items():
            try:
                i = int(k)
            except ValueError:
                raise ParseError("differential keys must be integers", "family.d") from None
            d[i] = _matrix(m, (rk.get(i + 1, 0), rk.get(i, 0)), F, f"family.d.{k}")
        try:
            return "complex", PolyComplex(rk, d, F)
        except ValueError as e:
            raise ParseError(str(e), "family.d") from None
    if kind == "modules":
        try:
            M = _module_family(A, fam.get("M"), "family.M")
            N = _module_family(A, fam.get("N", fam.get("M")), "family.N")
        except NotHereditary as e:
            raise ParseError(str(e), "family") from None
        return "modules", (M, N, family_rhom(M, N))
    raise ParseError("kind must be 'complex' or 'modules'", "family.kind")
