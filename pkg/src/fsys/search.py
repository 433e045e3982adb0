"""Brute-force derivation oracles for data the axioms determine but do not print.

Everything here is exhaustive search with exact arithmetic: braiding entries
over lists of candidate roots of unity, and residual associator signs over
{+1, -1}. The searches are used once to derive catalog data and re-run by the
test suite as independent evidence; none of them are needed on the
verification path.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

from fsys.cyclotomic import (
    CycNumber,
    FieldMatrix,
    SingularMatrixError,
)
from fsys.fusion import FusionSystem, Quad, pentagon_holds, row_triples
from fsys.modular import ModularSystem, RKey, hexagon_violations, reverse_braiding


def braiding_triples(s: FusionSystem) -> tuple[list[RKey], list[RKey]]:
    """Admissible braiding triples split into (unit-strand, searched).

    Unit-strand values are pinned to 1 in every search: any hexagon solution
    has them equal to 1, so excluding them loses no solutions and shrinks the
    space. Requires a multiplicity-free ring.
    """
    ring = s.ring
    if not ring.is_multiplicity_free():
        raise ValueError("braiding search supports multiplicity-free rings only")
    one = ring.unit
    L = range(ring.size)
    unit, searched = [], []
    for a in L:
        for b in L:
            for c in L:
                if ring.n(a, b, c) == 0:
                    continue
                (unit if a == one or b == one else searched).append((a, b, c))
    return unit, searched


def _braiding_ok(m: ModularSystem) -> bool:
    try:
        q = reverse_braiding(m)
    except SingularMatrixError:
        return False
    if next(hexagon_violations(m, m.R), None) is not None:
        return False
    return next(hexagon_violations(m, q), None) is None


def _as_system(s: FusionSystem, assignment: dict[RKey, CycNumber]) -> ModularSystem:
    R = {key: FieldMatrix.from_rows([[val]]) for key, val in assignment.items()}
    eps = tuple(1 for _ in s.ring.labels)
    return ModularSystem(s, R, eps)


def search_braidings(
    s: FusionSystem, roots: Sequence[CycNumber]
) -> Iterator[dict[RKey, CycNumber]]:
    """All hexagon-satisfying 1x1 R assignments, in deterministic scan order.

    Searched triples are ordered lexicographically; candidates enumerate the
    cartesian power of `roots` with the last triple cycling fastest. Each
    candidate is checked against both hexagon families in full.
    """
    unit, searched = braiding_triples(s)
    one = CycNumber.one(s.field)
    for combo in itertools.product(roots, repeat=len(searched)):
        assignment = {key: one for key in unit}
        assignment.update(zip(searched, combo))
        if any(v.is_zero() for v in combo):
            continue
        if _braiding_ok(_as_system(s, assignment)):
            yield assignment


def pointed_product(s: FusionSystem, a: int, b: int) -> int:
    """The unique fusion product in a pointed ring."""
    ring = s.ring
    out = [c for c in range(ring.size) if ring.n(a, b, c) > 0]
    if len(out) != 1:
        raise ValueError(f"ring is not pointed at ({ring.label(a)},{ring.label(b)})")
    return out[0]


def _generator_exponents(s: FusionSystem, generators: Sequence[int]) -> dict[int, tuple[int, ...]]:
    """Express every label as a product of powers of the generators (BFS).

    Exponents are the word counts along the first discovery path; for abelian
    pointed rings this is a valid decomposition.
    """
    ring = s.ring
    reps = {ring.unit: tuple(0 for _ in generators)}
    frontier = [ring.unit]
    while frontier:
        nxt = []
        for a in frontier:
            for gi, g in enumerate(generators):
                b = pointed_product(s, a, g)
                if b not in reps:
                    e = list(reps[a])
                    e[gi] += 1
                    reps[b] = tuple(e)
                    nxt.append(b)
        frontier = nxt
    if len(reps) != ring.size:
        missing = [ring.label(a) for a in range(ring.size) if a not in reps]
        raise ValueError(f"generators do not reach labels {missing}")
    return reps


def search_pointed_braidings(
    s: FusionSystem, generators: Sequence[int], roots: Sequence[CycNumber]
) -> Iterator[dict[RKey, CycNumber]]:
    """Hexagon solutions for a pointed system, scanned via generator pairs.

    With a trivial associator the hexagons force multiplicativity of R in
    each slot, so every solution is determined by its values on pairs of
    generators; candidates therefore enumerate root assignments to those
    pairs (last pair cycling fastest), extended multiplicatively and then
    verified against both full hexagon families, which rejects extensions
    that fail to be well-defined.
    """
    ring = s.ring
    reps = _generator_exponents(s, generators)
    one = CycNumber.one(s.field)
    pairs = [(g, h) for g in generators for h in generators]
    unit, searched = braiding_triples(s)
    for combo in itertools.product(roots, repeat=len(pairs)):
        val = dict(zip(pairs, combo))
        assignment = {key: one for key in unit}
        for a, b, c in searched:
            acc = one
            for gi, g in enumerate(generators):
                for hj, h in enumerate(generators):
                    exp = reps[a][gi] * reps[b][hj]
                    if exp:
                        acc = acc * val[(g, h)] ** exp
            assignment[(a, b, c)] = acc
        if _braiding_ok(_as_system(s, assignment)):
            yield assignment


def search_pentagon_signs(
    ring_system: FusionSystem, unknown: Sequence[Quad]
) -> Iterator[dict[Quad, int]]:
    """All +-1 assignments to the given 1x1 F blocks passing the pentagon.

    `ring_system` supplies every other block; the unknowns are overwritten
    per candidate. Scan order: +1 before -1, last quadruple fastest.
    """
    field = ring_system.field
    for key in unknown:
        if len(row_triples(ring_system.ring, *key)) != 1:
            raise ValueError(f"unknown block {key} is not 1x1")
    for combo in itertools.product((1, -1), repeat=len(unknown)):
        F = dict(ring_system.F)
        for key, sign in zip(unknown, combo):
            F[key] = FieldMatrix.from_rows([[CycNumber.rational(field, sign)]])
        candidate = FusionSystem(ring_system.ring, field, F)
        if pentagon_holds(candidate):
            yield dict(zip(unknown, combo))
