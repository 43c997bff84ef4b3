"""JSON file formats for every structure the command line consumes.

Each emit_* function produces plain dicts ready for json.dump; the
matching parse_* function inverts it bit-exactly (scalars travel as
strings, so nothing is rounded). Twist and phi files do not embed their
algebra; the algebra arrives as a separate file and is passed to the
parser explicitly.
"""

from __future__ import annotations

import json
from pathlib import Path

from .equivalence import EquivalenceData, equivalence_from_twist
from .exactmath import Matrix, PrimeField, QQ, RationalField
from .graded import GradedAlgebra, GradedModule, GradedMorphism, GradedVectorSpace
from .groups import FiniteGroup, IntegerWindow
from .twist import AUTOMORPHISM, COCYCLE, EXPLICIT, PhiFamily, TwistingSystem


class FileFormatError(ValueError):
    """Raised when a JSON file is syntactically valid but not a structure."""


def read_json(path):
    """Load a JSON file, reporting file, line and column on syntax errors."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise FileFormatError(f"{path}: {exc.strerror or exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(
            f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc


def write_json(path, data):
    Path(path).write_text(json.dumps(data, indent=1) + "\n")


def _need(data, key, what):
    if not isinstance(data, dict) or key not in data:
        raise FileFormatError(f"{what} is missing the key {key!r}")
    return data[key]


# -- fields ------------------------------------------------------------

def emit_field(field) -> str:
    if isinstance(field, RationalField):
        return "QQ"
    if isinstance(field, PrimeField):
        return f"GF({field.p})"
    raise FileFormatError(f"cannot serialize field {field!r}")


def parse_field(text):
    if text == "QQ":
        return QQ
    if isinstance(text, str) and text.startswith("GF(") and text.endswith(")"):
        return PrimeField(int(text[3:-1]))
    raise FileFormatError(f"unknown field {text!r} (expected 'QQ' or 'GF(p)')")


# -- matrices ----------------------------------------------------------

def emit_matrix(m: Matrix) -> dict:
    return {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [m.field.format(x) for x in m.data],
    }


def parse_matrix(data, field) -> Matrix:
    rows = _need(data, "rows", "matrix")
    cols = _need(data, "cols", "matrix")
    entries = _need(data, "entries", "matrix")
    if len(entries) != rows * cols:
        raise FileFormatError(
            f"matrix declares {rows}x{cols} but carries {len(entries)} entries"
        )
    parsed = [field.parse(x) if isinstance(x, str) else field.coerce(x) for x in entries]
    return Matrix(rows, cols, field, parsed)


# -- groups ------------------------------------------------------------

def emit_group(group) -> dict:
    if isinstance(group, FiniteGroup):
        out = {
            "kind": "finite",
            "order": group.order,
            "identity": group.identity,
            "table": [list(row) for row in group.table],
        }
        if group.names is not None:
            out["names"] = list(group.names)
        return out
    if isinstance(group, IntegerWindow):
        return {"kind": "integers", "window": [group.lo, group.hi]}
    raise FileFormatError(f"cannot serialize group {group!r}")


def parse_group(data):
    kind = _need(data, "kind", "group")
    if kind == "finite":
        group = FiniteGroup(
            _need(data, "table", "finite group"),
            identity=data.get("identity", 0),
            names=data.get("names"),
        )
        declared = data.get("order")
        if declared is not None and declared != group.order:
            raise FileFormatError(
                f"group declares order {declared} but its table has {group.order} rows"
            )
        return group
    if kind == "integers":
        lo, hi = _need(data, "window", "integer group")
        return IntegerWindow(lo, hi)
    raise FileFormatError(f"unknown group kind {kind!r}")


# -- degree keys: decimal indices (finite) or signed integers ----------

def _degree_key(g) -> str:
    return str(g)


def _pair_key(g, h) -> str:
    return f"{g},{h}"


def _parse_degree(key: str):
    try:
        return int(key)
    except ValueError:
        raise FileFormatError(f"degree key {key!r} is not an integer") from None


def _parse_pair(key: str):
    parts = key.split(",")
    if len(parts) != 2:
        raise FileFormatError(f"degree-pair key {key!r} is not of the form 'g,h'")
    return _parse_degree(parts[0]), _parse_degree(parts[1])


def _emit_dims(space: GradedVectorSpace) -> dict:
    return {_degree_key(g): d for g, d in sorted(space.dims.items())}


def _parse_dims(data) -> dict:
    return {_parse_degree(k): v for k, v in data.items()}


# -- algebras and modules ----------------------------------------------

def emit_algebra(a: GradedAlgebra) -> dict:
    return {
        "field": emit_field(a.field),
        "group": emit_group(a.group),
        "dims": _emit_dims(a.space),
        "mult": {_pair_key(g, h): emit_matrix(m) for (g, h), m in sorted(a.mult.items())},
        "unit": [a.field.format(x) for x in a.unit.data],
    }


def parse_algebra(data) -> GradedAlgebra:
    field = parse_field(_need(data, "field", "algebra"))
    group = parse_group(_need(data, "group", "algebra"))
    space = GradedVectorSpace(group, _parse_dims(_need(data, "dims", "algebra")))
    mult = {
        _parse_pair(k): parse_matrix(m, field)
        for k, m in _need(data, "mult", "algebra").items()
    }
    raw_unit = _need(data, "unit", "algebra")
    unit = Matrix(
        len(raw_unit), 1, field,
        [field.parse(x) if isinstance(x, str) else field.coerce(x) for x in raw_unit],
    )
    return GradedAlgebra(space, mult, unit, field)


def emit_module(m: GradedModule) -> dict:
    return {
        "field": emit_field(m.field),
        "group": emit_group(m.group),
        "dims": _emit_dims(m.space),
        "action": {_pair_key(g, h): emit_matrix(x) for (g, h), x in sorted(m.action.items())},
        "algebra": emit_algebra(m.algebra),
    }


def parse_module(data, base_dir=None, algebra: GradedAlgebra | None = None) -> GradedModule:
    """Read a module file. The "algebra" entry may be an inline object or
    a file path, resolved relative to base_dir; an explicitly supplied
    algebra overrides both."""
    if algebra is None:
        ref = _need(data, "algebra", "module")
        if isinstance(ref, str):
            path = Path(ref)
            if base_dir is not None and not path.is_absolute():
                path = Path(base_dir) / path
            algebra = parse_algebra(read_json(path))
        else:
            algebra = parse_algebra(ref)
    field = parse_field(_need(data, "field", "module"))
    if field != algebra.field:
        raise FileFormatError("module field disagrees with its algebra")
    space = GradedVectorSpace(algebra.group, _parse_dims(_need(data, "dims", "module")))
    action = {
        _parse_pair(k): parse_matrix(x, field)
        for k, x in _need(data, "action", "module").items()
    }
    return GradedModule(space, algebra, action)


# -- morphisms (self-describing, for standalone output files) ----------

def emit_morphism(f: GradedMorphism) -> dict:
    return {
        "field": emit_field(f.field),
        "group": emit_group(f.source.group),
        "source_dims": _emit_dims(f.source),
        "target_dims": _emit_dims(f.target),
        "components": {
            _degree_key(g): emit_matrix(m) for g, m in sorted(f.components.items())
        },
    }


def parse_morphism(data) -> GradedMorphism:
    field = parse_field(_need(data, "field", "morphism"))
    group = parse_group(_need(data, "group", "morphism"))
    source = GradedVectorSpace(group, _parse_dims(_need(data, "source_dims", "morphism")))
    target = GradedVectorSpace(group, _parse_dims(_need(data, "target_dims", "morphism")))
    comps = {
        _parse_degree(k): parse_matrix(m, field)
        for k, m in _need(data, "components", "morphism").items()
    }
    return GradedMorphism(source, target, comps, field)


# -- twisting systems (algebra supplied separately) --------------------

def emit_twist(t: TwistingSystem) -> dict:
    if t.kind == EXPLICIT:
        return {
            "kind": "explicit",
            "maps": {_pair_key(d, g): emit_matrix(m) for (d, g), m in sorted(t.maps.items())},
        }
    if t.kind == COCYCLE:
        field = t.algebra.field
        return {
            "kind": "cocycle",
            "alpha": {_pair_key(d, g): field.format(v) for (d, g), v in sorted(t.alpha.items())},
        }
    return {
        "kind": "automorphism",
        "sigma": {_degree_key(g): emit_matrix(m) for g, m in sorted(t.sigma.components.items())},
        "order": t.order,
    }


def parse_twist(data, algebra: GradedAlgebra) -> TwistingSystem:
    kind = _need(data, "kind", "twist")
    field = algebra.field
    if kind == "explicit":
        maps = {
            _parse_pair(k): parse_matrix(m, field)
            for k, m in _need(data, "maps", "twist").items()
        }
        return TwistingSystem(algebra, EXPLICIT, maps=maps)
    if kind == "cocycle":
        alpha = {
            _parse_pair(k): field.parse(v) if isinstance(v, str) else field.coerce(v)
            for k, v in _need(data, "alpha", "twist").items()
        }
        return TwistingSystem(algebra, COCYCLE, alpha=alpha)
    if kind == "automorphism":
        comps = {
            _parse_degree(k): parse_matrix(m, field)
            for k, m in _need(data, "sigma", "twist").items()
        }
        sigma = GradedMorphism(algebra.space, algebra.space, comps, field)
        return TwistingSystem(algebra, AUTOMORPHISM, sigma=sigma, order=data.get("order"))
    raise FileFormatError(f"unknown twist kind {kind!r}")


# -- phi families (endpoint algebras supplied separately) --------------

def emit_phi(p: PhiFamily) -> dict:
    return {
        "kind": "phi",
        "maps": {_pair_key(d, g): emit_matrix(m) for (d, g), m in sorted(p.maps.items())},
    }


def parse_phi(data, source: GradedAlgebra, target: GradedAlgebra) -> PhiFamily:
    if data.get("kind", "phi") != "phi":
        raise FileFormatError(f"expected a phi file, found kind {data.get('kind')!r}")
    maps = {
        _parse_pair(k): parse_matrix(m, source.field)
        for k, m in _need(data, "maps", "phi family").items()
    }
    return PhiFamily(source, target, maps)


# -- equivalence data --------------------------------------------------

def emit_equivalence(data: EquivalenceData) -> dict:
    """The stored roster is the family of shifted regular modules, so the
    algebra and twist determine everything; the shift witnesses are
    emitted alongside for inspection."""
    return {
        "kind": "equivalence",
        "algebra": emit_algebra(data.algebra),
        "twist": emit_twist(data.twist),
        "witnesses": {
            _degree_key(g): {
                "components": {
                    _degree_key(d): emit_matrix(m)
                    for d, m in sorted(w.components.items())
                }
            }
            for g, w in sorted(data.witnesses.items())
        },
    }


def parse_equivalence(data) -> EquivalenceData:
    if data.get("kind") != "equivalence":
        raise FileFormatError("expected an equivalence file")
    algebra = parse_algebra(_need(data, "algebra", "equivalence"))
    twist = parse_twist(_need(data, "twist", "equivalence"), algebra)
    return equivalence_from_twist(twist)


# -- hom-space basis export --------------------------------------------

def emit_hom_basis(space, degree) -> dict:
    basis = []
    for i in range(space.dim):
        element = space.basis_element(i)
        basis.append(
            {_degree_key(p): emit_matrix(element.component(p)) for p, _o, _s in space.source_layout}
        )
    return {"degree": degree, "basis": basis}
