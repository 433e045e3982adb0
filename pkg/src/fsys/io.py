"""The .fsys interchange format and the built-in catalog.

Files are JSON documents whose every number is an exact string; a value in
Q(zeta_n) is the list of its phi(n) rational coordinates over the power
basis, little-endian. Serialization is canonical (sorted keys, sorted
blocks, reduced fractions, trailing newline) so equal systems produce
byte-equal files. The catalog ships pre-verified systems as package data;
scripts/build_catalog.py regenerates them from the derivation oracles.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from importlib import resources

from fsys.cyclotomic import CycField, CycNumber, FieldMatrix
from fsys.fusion import FusionRing, FusionSystem, col_triples, row_triples, validate_ring
from fsys.modular import ModularSystem
from fsys.twist import Grading

FORMAT = "fsys"
FORMAT_VERSION = 1

CATALOG_NAMES = (
    "fibonacci",
    "yang-lee",
    "su2-level2",
    "ising",
    "toric-code",
    "z2-trivial",
    "z2-semion",
)
MODULAR_VARIANTS = ("fibonacci-modular", "yang-lee-modular", "toric-code-modular")
ALL_CATALOG_NAMES = CATALOG_NAMES + MODULAR_VARIANTS


class SchemaError(ValueError):
    """A .fsys document that parses as JSON but violates the schema."""


@dataclass
class SystemFile:
    """One document: the system plus its name, optional grading, metadata."""

    name: str
    system: FusionSystem | ModularSystem
    grading: Grading | None = None
    metadata: dict[str, Any] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# reading

def _expect(doc: dict, key: str, kind, where: str):
    if key not in doc:
        raise SchemaError(f"missing field {key!r} at {where}")
    value = doc[key]
    if kind is int and isinstance(value, bool):
        raise SchemaError(f"field {key!r} at {where} must be an integer")
    if not isinstance(value, kind):
        raise SchemaError(f"field {key!r} at {where} has the wrong type")
    return value


def _parse_wire(raw, fld: CycField, where: str) -> CycNumber:
    if not isinstance(raw, list) or len(raw) != fld.degree:
        raise SchemaError(
            f"value at {where} must be a list of {fld.degree} coordinate strings"
        )
    coeffs = []
    for i, part in enumerate(raw):
        if not isinstance(part, str):
            raise SchemaError(f"coordinate {i} at {where} is not a string")
        try:
            coeffs.append(Fraction(part))
        except (ValueError, ZeroDivisionError):
            raise SchemaError(f"coordinate {i} at {where} is not a rational") from None
    return CycNumber.from_coeffs(fld, coeffs)


def _parse_triple(raw, ring: FusionRing, where: str) -> tuple[int, int, int]:
    if not isinstance(raw, list) or len(raw) != 3:
        raise SchemaError(f"basis triple at {where} must be [i, label, j]")
    i, mid, j = raw
    if not isinstance(i, int) or not isinstance(j, int) or not isinstance(mid, str):
        raise SchemaError(f"basis triple at {where} must be [int, label, int]")
    if mid not in ring.labels:
        raise SchemaError(f"unknown label {mid!r} at {where}")
    return (i, ring.index(mid), j)


def loads_file(text: str) -> SystemFile:
    """Parse and structurally validate one document.

    Axiom checks (pentagon and friends) are deliberately not run here; load
    then verify if the file is untrusted.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"not valid JSON: {e}") from None
    if not isinstance(doc, dict):
        raise SchemaError("top level must be an object")
    known = {
        "format", "format_version", "name", "cyclotomic_order", "labels",
        "unit", "dual", "fusion", "F", "R", "epsilon", "sqrt_u", "grading",
        "metadata",
    }
    for key in doc:
        if key not in known:
            raise SchemaError(f"unknown field {key!r} at top level")
    if _expect(doc, "format", str, "top level") != FORMAT:
        raise SchemaError("field 'format' must be 'fsys'")
    if _expect(doc, "format_version", int, "top level") != FORMAT_VERSION:
        raise SchemaError(f"unsupported format_version {doc['format_version']}")
    name = _expect(doc, "name", str, "top level")
    order = _expect(doc, "cyclotomic_order", int, "top level")
    if order < 1:
        raise SchemaError("cyclotomic_order must be a positive integer")
    fld = CycField.of(order)

    labels = _expect(doc, "labels", list, "top level")
    if not labels or any(not isinstance(x, str) or not x for x in labels):
        raise SchemaError("labels must be a nonempty list of nonempty strings")
    if len(set(labels)) != len(labels):
        raise SchemaError("labels must be distinct")
    size = len(labels)
    lab = tuple(labels)

    unit_name = _expect(doc, "unit", str, "top level")
    if unit_name not in lab:
        raise SchemaError(f"unknown label {unit_name!r} in field 'unit'")
    unit = lab.index(unit_name)

    dual_doc = _expect(doc, "dual", dict, "top level")
    if set(dual_doc) != set(lab):
        raise SchemaError("field 'dual' must map every label exactly once")
    dual = [0] * size
    for a_name, b_name in dual_doc.items():
        if b_name not in lab:
            raise SchemaError(f"unknown label {b_name!r} in field 'dual'")
        dual[lab.index(a_name)] = lab.index(b_name)

    fusion_doc = _expect(doc, "fusion", list, "top level")
    mult = [[[0] * size for _ in range(size)] for _ in range(size)]
    seen = set()
    for k, row in enumerate(fusion_doc):
        where = f"fusion[{k}]"
        if not isinstance(row, list) or len(row) != 4:
            raise SchemaError(f"{where} must be [a, b, c, N]")
        a = _label_index_ring(lab, row[0], where)
        b = _label_index_ring(lab, row[1], where)
        c = _label_index_ring(lab, row[2], where)
        n = row[3]
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise SchemaError(f"multiplicity at {where} must be a positive integer")
        if (a, b, c) in seen:
            raise SchemaError(f"duplicate fusion entry at {where}")
        seen.add((a, b, c))
        mult[a][b][c] = n
    ring = FusionRing(
        lab, unit, tuple(dual), tuple(tuple(tuple(r) for r in p) for p in mult)
    )
    ring_report = validate_ring(ring)
    if not ring_report.ok():
        bad = next(c for c in ring_report.checks if c.status == "fail")
        raise SchemaError(f"fusion ring fails the {bad.name} check: {bad.witness}")

    F: dict[tuple[int, int, int, int], FieldMatrix] = {}
    for k, block in enumerate(_expect(doc, "F", list, "top level")):
        where = f"F[{k}]"
        if not isinstance(block, dict):
            raise SchemaError(f"{where} must be an object")
        raw_labels = _expect(block, "labels", list, where)
        if len(raw_labels) != 4:
            raise SchemaError(f"{where} labels must be [a, b, c, u]")
        quad = tuple(_label_index_ring(lab, x, where) for x in raw_labels)
        pretty = f"({', '.join(raw_labels[:3])}; {raw_labels[3]})"
        rows = row_triples(ring, *quad)
        cols = col_triples(ring, *quad)
        if not rows:
            raise SchemaError(f"F block for {pretty} is not admissible")
        if quad in F:
            raise SchemaError(f"duplicate F block for {pretty}")
        got_rows = [_parse_triple(t, ring, where) for t in _expect(block, "rows", list, where)]
        got_cols = [_parse_triple(t, ring, where) for t in _expect(block, "cols", list, where)]
        if got_rows != list(rows) or got_cols != list(cols):
            raise SchemaError(
                f"declared basis triples for {pretty} do not match the "
                "lexicographic row/column convention"
            )
        grid = _expect(block, "entries", list, where)
        if len(grid) != len(rows) or any(
            not isinstance(r, list) or len(r) != len(cols) for r in grid
        ):
            raise SchemaError(
                f"F block for {pretty} has the wrong shape: expected "
                f"{len(rows)}x{len(cols)} entries"
            )
        F[quad] = FieldMatrix.from_rows(
            [
                [_parse_wire(v, fld, f"{where} entry ({i},{j})") for j, v in enumerate(r)]
                for i, r in enumerate(grid)
            ]
        )
    try:
        system: FusionSystem | ModularSystem = FusionSystem(ring, fld, F)
    except ValueError as e:
        raise SchemaError(str(e)) from None

    if "R" in doc:
        R: dict[tuple[int, int, int], FieldMatrix] = {}
        for k, block in enumerate(_expect(doc, "R", list, "top level")):
            where = f"R[{k}]"
            if not isinstance(block, dict):
                raise SchemaError(f"{where} must be an object")
            raw_labels = _expect(block, "labels", list, where)
            if len(raw_labels) != 3:
                raise SchemaError(f"{where} labels must be [a, b, c]")
            key = tuple(_label_index_ring(lab, x, where) for x in raw_labels)
            pretty = f"({', '.join(raw_labels[:2])}; {raw_labels[2]})"
            if key in R:
                raise SchemaError(f"duplicate R block for {pretty}")
            n = ring.n(*key)
            grid = _expect(block, "entries", list, where)
            if len(grid) != n or any(not isinstance(r, list) or len(r) != n for r in grid):
                raise SchemaError(
                    f"R block for {pretty} has the wrong shape: expected {n}x{n}"
                )
            R[key] = FieldMatrix.from_rows(
                [
                    [_parse_wire(v, fld, f"{where} entry ({i},{j})") for j, v in enumerate(r)]
                    for i, r in enumerate(grid)
                ]
            )
        eps_doc = _expect(doc, "epsilon", dict, "top level")
        if set(eps_doc) != set(lab):
            raise SchemaError("field 'epsilon' must map every label exactly once")
        epsilon = tuple(
            _pm_one(eps_doc[name], f"epsilon[{name!r}]") for name in lab
        )
        sqrt_u = None
        if "sqrt_u" in doc:
            su_doc = _expect(doc, "sqrt_u", dict, "top level")
            if set(su_doc) != set(lab):
                raise SchemaError("field 'sqrt_u' must map every label exactly once")
            sqrt_u = {
                lab.index(name): _parse_wire(su_doc[name], fld, f"sqrt_u[{name!r}]")
                for name in lab
            }
        try:
            system = ModularSystem(system, R, epsilon, sqrt_u)
        except ValueError as e:
            raise SchemaError(str(e)) from None
    elif "epsilon" in doc or "sqrt_u" in doc:
        raise SchemaError("epsilon and sqrt_u require R blocks")

    grading = None
    if "grading" in doc:
        g_doc = _expect(doc, "grading", dict, "top level")
        modulus = _expect(g_doc, "modulus", int, "grading")
        deg_doc = _expect(g_doc, "deg", dict, "grading")
        if set(deg_doc) != set(lab):
            raise SchemaError("grading 'deg' must map every label exactly once")
        deg = []
        for label in lab:
            d = deg_doc[label]
            if not isinstance(d, int) or isinstance(d, bool):
                raise SchemaError(f"grading degree for {label!r} must be an integer")
            deg.append(d)
        grading = Grading(modulus, tuple(deg))
        try:
            grading.validate(ring)
        except ValueError as e:
            raise SchemaError(f"grading: {e}") from None

    metadata = {}
    if "metadata" in doc:
        metadata = _expect(doc, "metadata", dict, "top level")
    return SystemFile(name=name, system=system, grading=grading, metadata=metadata)


def _label_index_ring(lab: tuple[str, ...], name, where: str) -> int:
    if not isinstance(name, str) or name not in lab:
        raise SchemaError(f"unknown label {name!r} at {where}")
    return lab.index(name)


def _pm_one(value, where: str) -> int:
    if value not in (1, -1) or isinstance(value, bool):
        raise SchemaError(f"{where} must be 1 or -1")
    return value


def load_file(path) -> SystemFile:
    with open(path, encoding="utf-8") as fh:
        return loads_file(fh.read())


def load_system(path) -> FusionSystem | ModularSystem:
    return load_file(path).system


# ---------------------------------------------------------------------------
# writing

def _wire(v: CycNumber) -> list[str]:
    return list(v.wire())


def _matrix_grid(m: FieldMatrix) -> list[list[list[str]]]:
    return [[_wire(m.at(i, j)) for j in range(m.cols)] for i in range(m.rows)]


def file_document(sf: SystemFile) -> dict:
    """The canonical JSON document for a system file."""
    system = sf.system
    base = system.base if isinstance(system, ModularSystem) else system
    ring = base.ring
    lab = ring.labels
    doc: dict[str, Any] = {
        "format": FORMAT,
        "format_version": FORMAT_VERSION,
        "name": sf.name,
        "cyclotomic_order": base.field.order,
        "labels": list(lab),
        "unit": lab[ring.unit],
        "dual": {lab[a]: lab[ring.dual[a]] for a in range(ring.size)},
        "fusion": [
            [lab[a], lab[b], lab[c], ring.n(a, b, c)]
            for a in range(ring.size)
            for b in range(ring.size)
            for c in range(ring.size)
            if ring.n(a, b, c) > 0
        ],
        "F": [
            {
                "labels": [lab[x] for x in key],
                "rows": [[i, lab[d], j] for (i, d, j) in row_triples(ring, *key)],
                "cols": [[m, lab[e], n] for (m, e, n) in col_triples(ring, *key)],
                "entries": _matrix_grid(base.F[key]),
            }
            for key in sorted(base.F)
        ],
    }
    if isinstance(system, ModularSystem):
        doc["R"] = [
            {
                "labels": [lab[x] for x in key],
                "entries": _matrix_grid(system.R[key]),
            }
            for key in sorted(system.R)
        ]
        doc["epsilon"] = {lab[a]: system.epsilon[a] for a in range(ring.size)}
        if system.sqrt_u is not None:
            doc["sqrt_u"] = {lab[a]: _wire(system.sqrt_u[a]) for a in range(ring.size)}
    if sf.grading is not None:
        doc["grading"] = {
            "modulus": sf.grading.modulus,
            "deg": {lab[a]: sf.grading.deg[a] for a in range(ring.size)},
        }
    if sf.metadata:
        doc["metadata"] = sf.metadata
    return doc


def dumps_file(sf: SystemFile) -> str:
    return json.dumps(file_document(sf), sort_keys=True, indent=1) + "\n"


def save_file(sf: SystemFile, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_file(sf))


def save_system(
    s: FusionSystem | ModularSystem,
    path,
    *,
    name: str = "system",
    grading: Grading | None = None,
    metadata: dict[str, Any] | None = None,
) -> None:
    save_file(SystemFile(name=name, system=s, grading=grading, metadata=metadata or {}), path)


# ---------------------------------------------------------------------------
# the built-in catalog

def catalog_names() -> tuple[str, ...]:
    """The seven base entries; each *-modular variant is loadable as well."""
    return CATALOG_NAMES


def catalog_text(name: str) -> str:
    if name not in ALL_CATALOG_NAMES:
        raise ValueError(f"unknown catalog name {name!r}")
    return (
        resources.files("fsys").joinpath("catalog", f"{name}.fsys").read_text("utf-8")
    )


def load_catalog(name: str) -> SystemFile:
    return loads_file(catalog_text(name))
