"""Gauge transformations, relabelings, and the invariant-based equivalence test.

A gauge element assigns an invertible matrix g_{ab}^u to every admissible
(a, b, u); it acts on F blockwise through the four fusion spaces at the
corners of the associator and on R by conjugation across the (a, b) swap.
For multiplicity-free rings the zero pattern of F and a finite family of
monomial products of F entries are a complete set of gauge invariants, which
decide_gauge_equiv evaluates on an integer kernel basis of the exponent
lattice spanned by the four-triple words.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Sequence

from fsys.cyclotomic import (
    CycField,
    CycNumber,
    FieldMatrix,
    SingularMatrixError,
    invert,
    matrix_inverse,
)
from fsys.fusion import FusionSystem, Quad, col_triples, lift_system, row_triples
from fsys.modular import ModularSystem, RKey, lift_modular
from fsys.report import FAIL, PASS, SKIP, CheckResult, Report

System = FusionSystem | ModularSystem


class NonHyperringError(ValueError):
    """Raised when a multiplicity-free ring is required but not given."""


def admissible_triples(ring) -> list[RKey]:
    """All (a, b, u) with N_{ab}^u > 0, in lexicographic order."""
    L = range(ring.size)
    return [(a, b, u) for a in L for b in L for u in L if ring.n(a, b, u) > 0]


# ---------------------------------------------------------------------------
# gauge elements and their action

class GaugeElement:
    """Invertible matrix per admissible triple, with the inverse family cached.

    `normalized` records the convention that every unit-strand matrix
    g_{1a}^a and g_{a1}^a is the identity, in which case the triangle
    identity survives the action verbatim.
    """

    def __init__(self, matrices: dict[RKey, FieldMatrix], normalized: bool):
        inverses = {}
        for key, m in matrices.items():
            if m.rows != m.cols:
                raise ValueError(f"gauge matrix for {key} is not square")
            try:
                inverses[key] = matrix_inverse(m)
            except SingularMatrixError:
                raise ValueError(f"gauge matrix for {key} is not invertible") from None
        self.matrices = matrices
        self.inverses = inverses
        self.normalized = normalized
        self.field: CycField = next(iter(matrices.values())).entries[0].field

    def matrix(self, key: RKey) -> FieldMatrix:
        try:
            return self.matrices[key]
        except KeyError:
            raise ValueError(f"gauge element has no matrix for triple {key}") from None

    def inverse(self, key: RKey) -> FieldMatrix:
        try:
            return self.inverses[key]
        except KeyError:
            raise ValueError(f"gauge element has no matrix for triple {key}") from None


def identity_gauge(s: System) -> GaugeElement:
    ring = _ring(s)
    field = _field(s)
    mats = {
        key: FieldMatrix.identity(ring.n(*key), field) for key in admissible_triples(ring)
    }
    return GaugeElement(mats, normalized=True)


def character_gauge(s: System, values: dict[int, CycNumber]) -> GaugeElement:
    """The stabilizer gauge g_{ab}^u = zeta(a) zeta(b) / zeta(u) * I.

    `values` maps every label to a nonzero scalar. These elements act
    trivially on both F and R, which the test suite checks entry-exactly.
    """
    ring = _ring(s)
    field = _field(s)
    if set(values) != set(range(ring.size)):
        raise ValueError("character must assign a value to every label")
    for a, v in values.items():
        if v.is_zero():
            raise ValueError(f"character value for {ring.label(a)} is zero")
    zero = CycNumber.zero(field)
    mats = {}
    for key in admissible_triples(ring):
        a, b, u = key
        scalar = values[a] * values[b] * invert(values[u])
        n = ring.n(*key)
        mats[key] = FieldMatrix(
            n, n, tuple(scalar if i == j else zero for i in range(n) for j in range(n))
        )
    return GaugeElement(mats, normalized=values[ring.unit].is_one())


def compose_gauges(h: GaugeElement, g: GaugeElement) -> GaugeElement:
    """(h.g)_{ab}^u = h_{ab}^u g_{ab}^u; acting by g first, then h."""
    if set(h.matrices) != set(g.matrices):
        raise ValueError("gauge elements are defined on different triples")
    mats = {key: h.matrices[key] @ g.matrices[key] for key in g.matrices}
    return GaugeElement(mats, normalized=h.normalized and g.normalized)


def inverse_gauge(g: GaugeElement) -> GaugeElement:
    return GaugeElement(dict(g.inverses), normalized=g.normalized)


def random_gauge(s: System, seed: int) -> GaugeElement:
    """Deterministic pseudo-random normalized gauge with entries in -3..3.

    Each matrix is redrawn until invertible, at most 64 times; the fallback
    (never reached in practice) is the identity plus one off-diagonal unit.
    """
    ring = _ring(s)
    field = _field(s)
    rng = random.Random(seed)
    one = ring.unit
    mats: dict[RKey, FieldMatrix] = {}
    for key in admissible_triples(ring):
        a, b, _ = key
        n = ring.n(*key)
        if a == one or b == one:
            mats[key] = FieldMatrix.identity(n, field)
            continue
        found = None
        for _ in range(64):
            rows = [
                [CycNumber.rational(field, rng.randint(-3, 3)) for _ in range(n)]
                for _ in range(n)
            ]
            cand = FieldMatrix.from_rows(rows)
            try:
                matrix_inverse(cand)
            except SingularMatrixError:
                continue
            found = cand
            break
        if found is None:
            entries = list(FieldMatrix.identity(n, field).entries)
            if n > 1:
                entries[1] = CycNumber.one(field)
            found = FieldMatrix(n, n, tuple(entries))
        mats[key] = found
    return GaugeElement(mats, normalized=True)


def _gauge_f(s: FusionSystem, g: GaugeElement) -> dict[Quad, FieldMatrix]:
    ring = s.ring
    field = s.field
    zero = CycNumber.zero(field)
    out = {}
    for key in s.F:
        a, b, c, u = key
        rows = row_triples(ring, a, b, c, u)
        cols = col_triples(ring, a, b, c, u)
        # left factor: (g_{ab}^d)_{i' i} (g_{dc}^u)_{j' j}, block-diagonal in d
        left = []
        for (i2, d2, j2) in rows:
            line = []
            for (i, d, j) in rows:
                if d != d2:
                    line.append(zero)
                else:
                    gab = g.matrix((a, b, d))
                    gdc = g.matrix((d, c, u))
                    line.append(gab.at(i2 - 1, i - 1) * gdc.at(j2 - 1, j - 1))
            left.append(line)
        # right factor: (g_u^{ae})_{m m'} (g_e^{bc})_{n n'}, block-diagonal in e
        right = []
        for (m, e, n) in cols:
            line = []
            for (m2, e2, n2) in cols:
                if e != e2:
                    line.append(zero)
                else:
                    iae = g.inverse((a, e, u))
                    ibc = g.inverse((b, c, e))
                    line.append(iae.at(m - 1, m2 - 1) * ibc.at(n - 1, n2 - 1))
            right.append(line)
        out[key] = FieldMatrix.from_rows(left) @ s.F[key] @ FieldMatrix.from_rows(right)
    return out


def apply_gauge(s: System, g: GaugeElement):
    """Transform F (and R) by the gauge element g.

    R moves by (R^g)_{ab}^u = g_{ba}^u R_{ab}^u (g_{ab}^u)^-1. Duality
    scalars are not gauge-invariant, so any stored square roots of u_a are
    dropped from the result.
    """
    if g.field.order != _field(s).order:
        raise ValueError("gauge element is over the wrong field")
    if isinstance(s, ModularSystem):
        base = FusionSystem(s.ring, s.field, _gauge_f(s.base, g))
        R = {
            (a, b, u): g.matrix((b, a, u)) @ mat @ g.inverse((a, b, u))
            for (a, b, u), mat in s.R.items()
        }
        return ModularSystem(base, R, s.epsilon, None)
    return FusionSystem(s.ring, s.field, _gauge_f(s, g))


# ---------------------------------------------------------------------------
# relabeling along ring automorphisms

@dataclass(frozen=True)
class RingAut:
    """A permutation of label positions fixing the unit and preserving N."""

    perm: tuple[int, ...]

    def apply(self, a: int) -> int:
        return self.perm[a]

    def inverse(self) -> "RingAut":
        inv = [0] * len(self.perm)
        for i, p in enumerate(self.perm):
            inv[p] = i
        return RingAut(tuple(inv))


def is_ring_automorphism(ring, perm: Sequence[int]) -> bool:
    if sorted(perm) != list(range(ring.size)) or perm[ring.unit] != ring.unit:
        return False
    L = range(ring.size)
    return all(
        ring.n(a, b, u) == ring.n(perm[a], perm[b], perm[u])
        for a in L
        for b in L
        for u in L
    )


def ring_automorphisms(ring) -> tuple[RingAut, ...]:
    """Brute-force enumeration; fine for the label counts in scope."""
    rest = [a for a in range(ring.size) if a != ring.unit]
    found = []
    for images in itertools.permutations(rest):
        perm = list(range(ring.size))
        for a, img in zip(rest, images):
            perm[a] = img
        if is_ring_automorphism(ring, perm):
            found.append(RingAut(tuple(perm)))
    return tuple(found)


def apply_relabeling(s: System, phi: RingAut):
    """Pull every block back along phi^-1, reordering basis triples to match."""
    ring = _ring(s)
    if not is_ring_automorphism(ring, phi.perm):
        raise ValueError("permutation is not a ring automorphism of the given ring")
    inv = phi.inverse().perm

    def pulled_f(base: FusionSystem) -> dict[Quad, FieldMatrix]:
        out = {}
        for key in base.F:
            a, b, c, u = key
            old = (inv[a], inv[b], inv[c], inv[u])
            rows = row_triples(ring, *key)
            cols = col_triples(ring, *key)
            grid = [
                [
                    base.f(*old, (i, inv[d], j), (m, inv[e], n))
                    for (m, e, n) in cols
                ]
                for (i, d, j) in rows
            ]
            out[key] = FieldMatrix.from_rows(grid)
        return out

    if isinstance(s, ModularSystem):
        base = FusionSystem(ring, s.field, pulled_f(s.base))
        R = {key: s.R[(inv[key[0]], inv[key[1]], inv[key[2]])] for key in s.R}
        eps = tuple(s.epsilon[inv[a]] for a in range(ring.size))
        sqrt_u = None
        if s.sqrt_u is not None:
            sqrt_u = {a: s.sqrt_u[inv[a]] for a in range(ring.size)}
        return ModularSystem(base, R, eps, sqrt_u)
    return FusionSystem(ring, s.field, pulled_f(s))


# ---------------------------------------------------------------------------
# the invariant procedure for multiplicity-free rings

def hyperring_triples(ring) -> tuple[RKey, ...]:
    """The ordered set T of admissible triples of a multiplicity-free ring."""
    if not ring.is_multiplicity_free():
        raise NonHyperringError("ring has a fusion multiplicity greater than one")
    return tuple(admissible_triples(ring))


@dataclass(frozen=True)
class HyperringWord:
    """One four-triple word: t_{ab}^d t_{dc}^u (t_{bc}^e t_{ae}^u)^-1.

    `exponents` is its image in Z^T with the two numerator triples counted
    +1 and the two denominator triples -1; `value` is the single F entry
    the word evaluates to.
    """

    labels: tuple[int, int, int, int, int, int]  # (a, b, c, d, e, u)
    num: tuple[RKey, RKey]
    den: tuple[RKey, RKey]
    exponents: tuple[int, ...]
    value: CycNumber


@dataclass(frozen=True)
class WordSystem:
    """All words Q of a system, with the nonzero subset Q-hat by position."""

    triples: tuple[RKey, ...]
    words: tuple[HyperringWord, ...]
    nonzero: tuple[int, ...]


def hyperring_words(s: FusionSystem) -> WordSystem:
    """Enumerate every word of the multiplicity-free system, values included.

    Words with equal exponent vectors are kept separate on purpose: their
    values need not agree (the unit word and the longest two-label word both
    have exponent zero but different entries), and the ratio of any two of
    them is exactly the kind of invariant the kernel basis is built to
    capture.
    """
    ring = s.ring
    T = hyperring_triples(ring)
    pos = {t: k for k, t in enumerate(T)}
    L = range(ring.size)
    words = []
    for a, b, c in itertools.product(L, L, L):
        for d in L:
            if ring.n(a, b, d) != 1:
                continue
            for u in L:
                if ring.n(d, c, u) != 1:
                    continue
                for e in L:
                    if ring.n(b, c, e) != 1 or ring.n(a, e, u) != 1:
                        continue
                    exps = [0] * len(T)
                    exps[pos[(a, b, d)]] += 1
                    exps[pos[(d, c, u)]] += 1
                    exps[pos[(b, c, e)]] -= 1
                    exps[pos[(a, e, u)]] -= 1
                    words.append(
                        HyperringWord(
                            labels=(a, b, c, d, e, u),
                            num=((a, b, d), (d, c, u)),
                            den=((b, c, e), (a, e, u)),
                            exponents=tuple(exps),
                            value=s.f(a, b, c, u, (1, d, 1), (1, e, 1)),
                        )
                    )
    words.sort(key=lambda w: w.labels)
    nonzero = tuple(k for k, w in enumerate(words) if not w.value.is_zero())
    return WordSystem(triples=T, words=tuple(words), nonzero=nonzero)


@dataclass(frozen=True)
class KernelBasis:
    """Integer basis of the exponent-lattice kernel, rows over Q-hat."""

    basis: tuple[tuple[int, ...], ...]


def _hermite(rows: list[list[int]], track: bool):
    """Row Hermite form by Euclidean elimination; optionally the transform.

    Returns (h, u, rank) with u unimodular and u*rows == h when tracked.
    Pivots are positive and entries above each pivot are reduced into
    [0, pivot). Deterministic for a fixed input ordering.
    """
    m = len(rows)
    a = [list(r) for r in rows]
    u = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    n = len(a[0]) if a else 0
    r = 0
    for c in range(n):
        live = [i for i in range(r, m) if a[i][c] != 0]
        if not live:
            continue
        while len(live) > 1:
            live.sort(key=lambda i: (abs(a[i][c]), i))
            p = live[0]
            for i in live[1:]:
                q = a[i][c] // a[p][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[p])]
                    if track:
                        u[i] = [x - q * y for x, y in zip(u[i], u[p])]
            live = [i for i in range(r, m) if a[i][c] != 0]
        p = live[0]
        if p != r:
            a[p], a[r] = a[r], a[p]
            if track:
                u[p], u[r] = u[r], u[p]
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            if track:
                u[r] = [-x for x in u[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                if track:
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return a, u, r


def kernel_basis(words: WordSystem) -> KernelBasis:
    """Basis of all integer relations among the nonzero-word exponent vectors.

    Exact integer elimination with a tracked unimodular transform; the rows
    of the transform over the zero rows of the Hermite form are the kernel,
    re-reduced once more so the returned basis is itself in Hermite form.
    """
    mat = [list(words.words[k].exponents) for k in words.nonzero]
    if not mat:
        return KernelBasis(basis=())
    _, u, rank = _hermite(mat, track=True)
    kernel = u[rank:]
    if not kernel:
        return KernelBasis(basis=())
    h, _, krank = _hermite(kernel, track=False)
    return KernelBasis(basis=tuple(tuple(row) for row in h[:krank]))


def _evaluate(words: WordSystem, basis: KernelBasis) -> tuple[CycNumber, ...]:
    out = []
    for vec in basis.basis:
        acc = None
        for k, q in zip(vec, words.nonzero):
            if k == 0:
                continue
            term = words.words[q].value ** k
            acc = term if acc is None else acc * term
        if acc is None:
            field = words.words[0].value.field
            acc = CycNumber.one(field)
        out.append(acc)
    return tuple(out)


def gauge_invariants(s: FusionSystem, basis: KernelBasis) -> tuple[CycNumber, ...]:
    """Evaluate the basis relations on the system's word values.

    Every returned number is unchanged under apply_gauge with any gauge
    element, normalized or not.
    """
    return _evaluate(hyperring_words(s), basis)


def _r_invariant_items(m: ModularSystem) -> list[tuple[str, RKey, CycNumber]]:
    """Braiding data unchanged by scalar gauges: R_{aa}^c, and R_{ab}^c R_{ba}^c."""
    ring = m.ring
    L = range(ring.size)
    items = []
    for a in L:
        for c in L:
            if ring.n(a, a, c) == 1:
                items.append(("diagonal", (a, a, c), m.R[(a, a, c)].at(0, 0)))
    for a in L:
        for b in L:
            if b <= a:
                continue
            for c in L:
                if ring.n(a, b, c) == 1 and ring.n(b, a, c) == 1:
                    prod = m.R[(a, b, c)].at(0, 0) * m.R[(b, a, c)].at(0, 0)
                    items.append(("product", (a, b, c), prod))
    return items


def decide_gauge_equiv(s1: System, s2: System) -> Report:
    """Decide gauge equivalence of two systems over the same ring.

    For multiplicity-free fusion data the verdict is complete: equivalent
    iff the zero patterns agree on every word and every kernel-basis
    invariant agrees. For braided systems an R comparison is layered on
    top; it is sound (any difference proves inequivalence) but agreement
    only shows the pair is indistinguishable by the implemented invariants.
    Rings with a multiplicity above one get the not-applicable verdict.
    """
    if isinstance(s1, ModularSystem) != isinstance(s2, ModularSystem):
        raise ValueError("cannot compare a braided system with a fusion-only one")
    braided = isinstance(s1, ModularSystem)
    if _ring(s1) != _ring(s2):
        raise ValueError("systems are over different fusion rings")
    ring = _ring(s1)
    if not ring.is_multiplicity_free():
        return Report(
            outcome="not-applicable",
            checks=[
                CheckResult(
                    "hyperring",
                    SKIP,
                    detail="ring has a fusion multiplicity greater than one",
                )
            ],
        )
    n = math.lcm(_field(s1).order, _field(s2).order)
    if braided:
        s1 = lift_modular(s1, n)
        s2 = lift_modular(s2, n)
        f1, f2 = s1.base, s2.base
    else:
        s1 = lift_system(s1, n)
        s2 = lift_system(s2, n)
        f1, f2 = s1, s2

    checks = []
    w1 = hyperring_words(f1)
    w2 = hyperring_words(f2)
    mismatch = None
    for a, b in zip(w1.words, w2.words):
        if a.value.is_zero() != b.value.is_zero():
            mismatch = {
                "word": [f1.ring.label(x) for x in a.labels],
                "left": list(a.value.wire()),
                "right": list(b.value.wire()),
            }
            break
    checks.append(
        CheckResult(
            "zero-pattern",
            FAIL if mismatch else PASS,
            detail="" if mismatch else f"{len(w1.words)} words compared",
            witness=mismatch,
        )
    )
    if mismatch:
        return Report(outcome="inequivalent", checks=checks)

    basis = kernel_basis(w1)
    inv1 = _evaluate(w1, basis)
    inv2 = _evaluate(w2, basis)
    bad = None
    for k, (a, b) in enumerate(zip(inv1, inv2)):
        if a != b:
            bad = {
                "relation": list(basis.basis[k]),
                "left": list(a.wire()),
                "right": list(b.wire()),
            }
            break
    checks.append(
        CheckResult(
            "f-invariants",
            FAIL if bad else PASS,
            detail=f"{len(basis.basis)} kernel relations",
            witness=bad,
        )
    )
    if bad:
        return Report(outcome="inequivalent", checks=checks)

    if braided:
        items1 = _r_invariant_items(s1)
        items2 = _r_invariant_items(s2)
        rbad = None
        for (kind, key, va), (_, _, vb) in zip(items1, items2):
            if va != vb:
                rbad = {
                    "kind": kind,
                    "triple": [ring.label(x) for x in key],
                    "left": list(va.wire()),
                    "right": list(vb.wire()),
                }
                break
        checks.append(
            CheckResult(
                "r-invariants",
                FAIL if rbad else PASS,
                detail=(
                    ""
                    if rbad
                    else "agreement means indistinguishable by the implemented invariants"
                ),
                witness=rbad,
            )
        )
        if rbad:
            return Report(outcome="inequivalent", checks=checks)

    return Report(
        outcome="equivalent",
        checks=checks,
        values={"kernel_rank": len(basis.basis)},
    )


def _ring(s: System):
    return s.ring


def _field(s: System) -> CycField:
    return s.field
