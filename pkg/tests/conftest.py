"""Shared fixtures and independent test-side oracles.

The oracles here deliberately take different routes than the package code:
sympy for cyclotomic polynomials, rational null spaces, Smith normal form,
and field-extension factoring. Nothing in src/ imports sympy.
"""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from fsys.cyclotomic import CycField, CycNumber, FieldMatrix
from fsys.fusion import FusionRing, FusionSystem, row_triples
from fsys.io import ALL_CATALOG_NAMES, load_catalog
from fsys.modular import ModularSystem

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=20,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("suite")


def one_by_one(v: CycNumber) -> FieldMatrix:
    return FieldMatrix.from_rows([[v]])


def identity_blocks(ring: FusionRing, field: CycField) -> dict:
    one = CycNumber.one(field)
    zero = CycNumber.zero(field)
    F = {}
    for a in range(ring.size):
        for b in range(ring.size):
            for c in range(ring.size):
                for u in range(ring.size):
                    rows = row_triples(ring, a, b, c, u)
                    if rows:
                        n = len(rows)
                        F[(a, b, c, u)] = FieldMatrix.from_rows(
                            [[one if i == j else zero for j in range(n)] for i in range(n)]
                        )
    return F


@pytest.fixture(scope="session")
def catalog():
    return {name: load_catalog(name) for name in ALL_CATALOG_NAMES}


@pytest.fixture(scope="session")
def fib(catalog):
    return catalog["fibonacci"].system


@pytest.fixture(scope="session")
def yl(catalog):
    return catalog["yang-lee"].system


@pytest.fixture(scope="session")
def su2(catalog):
    return catalog["su2-level2"].system


@pytest.fixture(scope="session")
def ising(catalog):
    return catalog["ising"].system


@pytest.fixture(scope="session")
def toric(catalog):
    return catalog["toric-code"].system


@pytest.fixture(scope="session")
def fib_mod(catalog):
    return catalog["fibonacci-modular"].system


@pytest.fixture(scope="session")
def yl_mod(catalog):
    return catalog["yang-lee-modular"].system


@pytest.fixture(scope="session")
def toric_mod(catalog):
    return catalog["toric-code-modular"].system


def z2_ring() -> FusionRing:
    return FusionRing(("1", "x"), 0, (0, 1), (((1, 0), (0, 1)), ((0, 1), (1, 0))))


def semion_system() -> ModularSystem:
    """A braided Z2 system over Q(zeta_4) with a genuine square root on file:
    F_xxx^x = -1, R_xx^1 = zeta_4, lambda_x = zeta_4."""
    field = CycField.of(4)
    one = CycNumber.one(field)
    i_unit = CycNumber.zeta_power(field, 1)
    ring = z2_ring()
    F = identity_blocks(ring, field)
    F[(1, 1, 1, 1)] = one_by_one(-one)
    base = FusionSystem(ring, field, F)
    R = {}
    for a in range(2):
        for b in range(2):
            for c in range(2):
                if ring.n(a, b, c):
                    R[(a, b, c)] = one_by_one(one)
    R[(1, 1, 0)] = one_by_one(i_unit)
    return ModularSystem(base, R, (1, 1), {0: one, 1: i_unit})


@pytest.fixture()
def semion():
    return semion_system()


def mult2_system() -> FusionSystem:
    """Structurally valid system on the rank-2 ring with N_xx^x = 2.

    Used for the not-applicable paths; nothing here claims the pentagon.
    """
    field = CycField.of(1)
    ring = FusionRing(("1", "x"), 0, (0, 1), (((1, 0), (0, 1)), ((0, 1), (1, 2))))
    return FusionSystem(ring, field, identity_blocks(ring, field))


# ---------------------------------------------------------------------------
# sympy oracles

def sympy_cyclotomic(n: int) -> list[int]:
    """Little-endian integer coefficients of Phi_n, by sympy."""
    import sympy

    x = sympy.Symbol("x")
    coeffs = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()
    return [int(c) for c in reversed(coeffs)]


def lattice_equals_integer_kernel(words, basis) -> bool:
    """Does the basis span exactly the integer left kernel of the word matrix?

    Three independent facts are checked: every basis vector is an exact
    integer relation; the count matches the rational nullity; and the Smith
    normal form of the basis has all invariant factors 1, so the span is a
    saturated sublattice. A saturated full-rank sublattice of the kernel
    lattice is the kernel lattice.
    """
    import sympy
    from sympy.matrices.normalforms import smith_normal_form

    rows = [list(words.words[k].exponents) for k in words.nonzero]
    M = sympy.Matrix(rows)
    vecs = [list(v) for v in basis.basis]
    if vecs:
        B = sympy.Matrix(vecs)
        if B * M != sympy.zeros(B.rows, M.cols):
            return False
    if len(vecs) != M.rows - M.rank():
        return False
    if vecs:
        snf = smith_normal_form(sympy.Matrix(vecs), domain=sympy.ZZ)
        diag = [snf[i, i] for i in range(min(snf.rows, snf.cols))]
        if len(diag) < len(vecs) or any(d != 1 for d in diag):
            return False
    return True


def square_root_exists_in_field(value: CycNumber) -> bool:
    """Is X^2 - value reducible over the value's own cyclotomic field?"""
    import sympy

    x = sympy.Symbol("x")
    n = value.field.order
    zeta = sympy.exp(2 * sympy.pi * sympy.I / n)
    expr = sum(
        sympy.Rational(c.numerator, c.denominator) * zeta**k
        for k, c in enumerate(value.coeffs)
    )
    factors = sympy.factor_list(x**2 - expr, x, extension=zeta)[1]
    return max(sympy.Poly(f, x).degree() for f, _ in factors) == 1
