import json

import pytest

from fsys.fusion import FusionSystem, verify_fusion
from fsys.io import (
    ALL_CATALOG_NAMES,
    CATALOG_NAMES,
    SchemaError,
    SystemFile,
    catalog_names,
    catalog_text,
    dumps_file,
    load_catalog,
    load_file,
    load_system,
    loads_file,
    save_file,
    save_system,
)
from fsys.modular import ModularSystem, verify_modular
from fsys.twist import Grading


def doc_of(name):
    return json.loads(catalog_text(name))


def reject(doc, match):
    with pytest.raises(SchemaError, match=match):
        loads_file(json.dumps(doc))


class TestRoundTrip:
    @pytest.mark.parametrize("name", ALL_CATALOG_NAMES)
    def test_dump_is_canonical(self, name):
        text = catalog_text(name)
        assert dumps_file(loads_file(text)) == text
        assert text.endswith("\n")

    @pytest.mark.parametrize("name", ALL_CATALOG_NAMES)
    def test_load_dump_load(self, name):
        first = load_catalog(name)
        second = loads_file(dumps_file(first))
        assert second.name == first.name
        assert second.system == first.system
        assert second.grading == first.grading
        assert second.metadata == first.metadata

    def test_unreduced_fractions_canonicalize(self):
        doc = doc_of("z2-trivial")
        doc["F"][0]["entries"][0][0] = ["2/2"]
        again = dumps_file(loads_file(json.dumps(doc)))
        assert again == catalog_text("z2-trivial")

    def test_disk_round_trip(self, tmp_path):
        sf = load_catalog("fibonacci-modular")
        path = tmp_path / "out.fsys"
        save_file(sf, path)
        back = load_file(path)
        assert back.system == sf.system and back.metadata == sf.metadata

    def test_save_system_defaults(self, tmp_path, fib):
        path = tmp_path / "plain.fsys"
        save_system(fib, path)
        sf = load_file(path)
        assert sf.name == "system" and sf.metadata == {} and sf.grading is None
        assert load_system(path) == fib

    def test_save_system_with_grading(self, tmp_path, su2):
        path = tmp_path / "graded.fsys"
        g = Grading(2, (0, 1, 0))
        save_system(su2, path, name="g", grading=g, metadata={"note": "x"})
        sf = load_file(path)
        assert sf.grading == g and sf.metadata == {"note": "x"}


class TestCatalog:
    def test_names(self):
        assert catalog_names() == CATALOG_NAMES
        assert len(CATALOG_NAMES) == 7
        assert len(ALL_CATALOG_NAMES) == 10

    def test_unknown_name(self):
        with pytest.raises(ValueError, match="unknown catalog name 'nope'"):
            catalog_text("nope")

    @pytest.mark.parametrize("name", ALL_CATALOG_NAMES)
    def test_entry_verifies(self, catalog, name):
        sf = catalog[name]
        assert sf.name == name
        if isinstance(sf.system, ModularSystem):
            assert verify_modular(sf.system).outcome == "pass"
        else:
            assert verify_fusion(sf.system).ok()

    def test_gradings_ship_where_meaningful(self, catalog):
        graded = {n for n in ALL_CATALOG_NAMES if catalog[n].grading is not None}
        assert graded == {"su2-level2", "ising", "z2-trivial", "z2-semion"}

    def test_modular_variants(self, catalog):
        for name in ("fibonacci-modular", "yang-lee-modular", "toric-code-modular"):
            assert isinstance(catalog[name].system, ModularSystem)
        for name in CATALOG_NAMES:
            assert isinstance(catalog[name].system, FusionSystem)
            assert not isinstance(catalog[name].system, ModularSystem)

    def test_fields_on_file(self, catalog):
        # the braided fibonacci lives in the lifted field, the plain one does not
        assert catalog["fibonacci"].system.field.order == 5
        assert catalog["fibonacci-modular"].system.base.field.order == 20
        assert catalog["toric-code-modular"].system.base.field.order == 1

    def test_toric_square_roots_on_file(self, catalog):
        m = catalog["toric-code-modular"].system
        assert m.sqrt_u is not None
        one = m.base.one()
        assert all(v == one for v in m.sqrt_u.values())
        assert catalog["fibonacci-modular"].system.sqrt_u is None


class TestTopLevelErrors:
    def test_not_json(self):
        with pytest.raises(SchemaError, match="not valid JSON"):
            loads_file("{")

    def test_not_an_object(self):
        with pytest.raises(SchemaError, match="top level must be an object"):
            loads_file("[]")


def drop(doc, key):
    del doc[key]


CASES = [
    ("unknown-top-key", lambda d: d.__setitem__("extra", 1),
     "unknown field 'extra' at top level"),
    ("wrong-format", lambda d: d.__setitem__("format", "sys"),
     "must be 'fsys'"),
    ("wrong-version", lambda d: d.__setitem__("format_version", 2),
     "unsupported format_version 2"),
    ("missing-name", lambda d: drop(d, "name"),
     "missing field 'name' at top level"),
    ("name-not-string", lambda d: d.__setitem__("name", 3),
     "has the wrong type"),
    ("order-zero", lambda d: d.__setitem__("cyclotomic_order", 0),
     "cyclotomic_order must be a positive integer"),
    ("order-bool", lambda d: d.__setitem__("cyclotomic_order", True),
     "must be an integer"),
    ("empty-label", lambda d: d.__setitem__("labels", ["1", ""]),
     "nonempty strings"),
    ("duplicate-labels", lambda d: d.__setitem__("labels", ["x", "x"]),
     "labels must be distinct"),
    ("unknown-unit", lambda d: d.__setitem__("unit", "q"),
     "unknown label 'q' in field 'unit'"),
    ("dual-incomplete", lambda d: d.__setitem__("dual", {"1": "1"}),
     "must map every label exactly once"),
    ("dual-unknown-target", lambda d: d.__setitem__("dual", {"1": "1", "x": "q"}),
     "unknown label 'q' in field 'dual'"),
    ("fusion-arity", lambda d: d["fusion"].__setitem__(0, ["1", "1", "1"]),
     r"must be \[a, b, c, N\]"),
    ("fusion-unknown-label", lambda d: d["fusion"].__setitem__(0, ["q", "1", "1", 1]),
     r"unknown label 'q' at fusion\[0\]"),
    ("multiplicity-zero", lambda d: d["fusion"][0].__setitem__(3, 0),
     "multiplicity at .* must be a positive integer"),
    ("multiplicity-bool", lambda d: d["fusion"][0].__setitem__(3, True),
     "must be a positive integer"),
    ("duplicate-fusion", lambda d: d["fusion"].append(list(d["fusion"][0])),
     "duplicate fusion entry"),
    ("broken-ring", lambda d: d.__setitem__(
        "fusion", [r for r in d["fusion"] if r != ["x", "x", "1", 1]]),
     "fusion ring fails the dual-channel check"),
    ("f-not-object", lambda d: d["F"].__setitem__(0, 3),
     r"F\[0\] must be an object"),
    ("f-labels-arity", lambda d: d["F"][0].__setitem__("labels", ["1", "1", "1"]),
     r"labels must be \[a, b, c, u\]"),
    ("f-inadmissible", lambda d: d["F"].append(
        {"labels": ["x", "x", "x", "1"], "rows": [], "cols": [], "entries": []}),
     r"F block for \(x, x, x; 1\) is not admissible"),
    ("f-duplicate", lambda d: d["F"].append(dict(d["F"][0])),
     "duplicate F block"),
    ("f-basis-convention", lambda d: d["F"][0]["rows"][0].__setitem__(0, 7),
     "lexicographic row/column convention"),
    ("f-shape", lambda d: d["F"][0].__setitem__("entries", []),
     "wrong shape: expected 1x1"),
    ("wire-length", lambda d: d["F"][0].__setitem__("entries", [[["1", "0"]]]),
     "must be a list of 1 coordinate strings"),
    ("wire-not-string", lambda d: d["F"][0].__setitem__("entries", [[[1]]]),
     "coordinate 0 .* is not a string"),
    ("wire-not-rational", lambda d: d["F"][0].__setitem__("entries", [[["x"]]]),
     "is not a rational"),
    ("wire-zero-denominator", lambda d: d["F"][0].__setitem__("entries", [[["1/0"]]]),
     "is not a rational"),
    ("missing-f-block", lambda d: d.__setitem__("F", d["F"][1:]),
     "missing F block"),
    ("epsilon-without-r", lambda d: d.__setitem__("epsilon", {"1": 1, "x": 1}),
     "epsilon and sqrt_u require R blocks"),
    ("grading-unit-degree", lambda d: d["grading"]["deg"].__setitem__("1", 1),
     "grading: unit label must have degree zero"),
    ("grading-degree-type", lambda d: d["grading"]["deg"].__setitem__("x", "1"),
     "grading degree for 'x' must be an integer"),
]


class TestSchemaErrors:
    @pytest.mark.parametrize(
        "mutate,match", [c[1:] for c in CASES], ids=[c[0] for c in CASES]
    )
    def test_rejected(self, mutate, match):
        doc = doc_of("z2-trivial")
        mutate(doc)
        reject(doc, match)


BRAIDED_CASES = [
    ("r-not-object", lambda d: d["R"].__setitem__(0, 1),
     r"R\[0\] must be an object"),
    ("r-labels-arity", lambda d: d["R"][0].__setitem__("labels", ["1", "1"]),
     r"labels must be \[a, b, c\]"),
    ("r-duplicate", lambda d: d["R"].append(dict(d["R"][0])),
     "duplicate R block"),
    ("r-shape", lambda d: d["R"][0].__setitem__("entries", []),
     "wrong shape: expected 1x1"),
    ("r-missing-block", lambda d: d.__setitem__("R", d["R"][1:]),
     "missing R block"),
    ("missing-epsilon", lambda d: drop(d, "epsilon"),
     "missing field 'epsilon' at top level"),
    ("epsilon-zero", lambda d: d["epsilon"].__setitem__("1", 0),
     r"epsilon\['1'\] must be 1 or -1"),
    ("epsilon-bool", lambda d: d["epsilon"].__setitem__("1", True),
     "must be 1 or -1"),
    ("epsilon-incomplete", lambda d: d.__setitem__("epsilon", {"1": 1}),
     "'epsilon' must map every label exactly once"),
    ("sqrt-u-incomplete", lambda d: d.__setitem__("sqrt_u", {"1": ["1"]}),
     "'sqrt_u' must map every label exactly once"),
]


class TestBraidedSchemaErrors:
    @pytest.mark.parametrize(
        "mutate,match", [c[1:] for c in BRAIDED_CASES], ids=[c[0] for c in BRAIDED_CASES]
    )
    def test_rejected(self, mutate, match):
        doc = doc_of("toric-code-modular")
        mutate(doc)
        reject(doc, match)
