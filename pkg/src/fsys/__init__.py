"""fsys: exact verification of fusion and braided fusion data over cyclotomic fields.

The package checks coherence of F/R data given in `.fsys` files, decides gauge
equivalence, applies Galois and sign twists, and ships a small catalog of
worked systems. All verdicts come from exact arithmetic; floats appear only in
explicitly approximate display output.
"""

from fsys.cyclotomic import (
    CycField,
    CycNumber,
    FieldMatrix,
    FieldMismatchError,
    SingularMatrixError,
    embed_complex,
    galois_apply,
    invert,
    lift_field,
    matrix_inverse,
)
from fsys.fusion import FusionRing, FusionSystem, verify_fusion
from fsys.gauge import GaugeElement, apply_gauge, decide_gauge_equiv, random_gauge
from fsys.io import (
    SchemaError,
    SystemFile,
    catalog_names,
    load_catalog,
    load_file,
    load_system,
    save_file,
    save_system,
)
from fsys.modular import ModularSystem, intrinsic_data, verify_modular
from fsys.twist import Grading, galois_orbit, tau_twist, twist_system

__version__ = "0.1.0"

__all__ = [
    "CycField",
    "CycNumber",
    "FieldMatrix",
    "FieldMismatchError",
    "FusionRing",
    "FusionSystem",
    "GaugeElement",
    "Grading",
    "ModularSystem",
    "SchemaError",
    "SingularMatrixError",
    "SystemFile",
    "apply_gauge",
    "catalog_names",
    "decide_gauge_equiv",
    "embed_complex",
    "galois_apply",
    "galois_orbit",
    "intrinsic_data",
    "invert",
    "lift_field",
    "load_catalog",
    "load_file",
    "load_system",
    "matrix_inverse",
    "random_gauge",
    "save_file",
    "save_system",
    "tau_twist",
    "twist_system",
    "verify_fusion",
    "verify_modular",
]
