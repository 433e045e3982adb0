"""Field automorphism twists, orbit grouping, and graded associator twists.

Applying a Galois automorphism of Q(zeta_n) to every F and R entry yields
another valid system over the same ring; the orbit of a system under all
phi(n) automorphisms, grouped by the equivalence test of fsys.gauge, is a
basic classification datum. Independently, a cyclic grading of the labels
and a root of unity tau define a scalar rescaling of the associator blocks
that again preserves the pentagon.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from fsys.cyclotomic import CycNumber, FieldMatrix, galois_apply
from fsys.fusion import FusionRing, FusionSystem
from fsys.gauge import decide_gauge_equiv
from fsys.modular import ModularSystem

System = FusionSystem | ModularSystem


@dataclass(frozen=True)
class GaloisAuto:
    """The automorphism zeta_n -> zeta_n^k; k must be coprime to the order."""

    k: int


def _apply_matrix(k: int, m: FieldMatrix) -> FieldMatrix:
    return FieldMatrix(m.rows, m.cols, tuple(galois_apply(k, e) for e in m.entries))


def twist_system(s: System, sigma: GaloisAuto | int):
    """Apply sigma entrywise to F (and R); the signs epsilon are untouched.

    Stored square roots of the duality scalars are conjugated along, which
    keeps them exact square roots of the twisted u_a.
    """
    k = sigma.k if isinstance(sigma, GaloisAuto) else sigma
    n = s.field.order
    if math.gcd(k, n) != 1:
        raise ValueError(f"k={k} is not coprime to the field order {n}")
    if isinstance(s, ModularSystem):
        base = FusionSystem(
            s.ring, s.field, {key: _apply_matrix(k, m) for key, m in s.base.F.items()}
        )
        R = {key: _apply_matrix(k, m) for key, m in s.R.items()}
        sqrt_u = None
        if s.sqrt_u is not None:
            sqrt_u = {a: galois_apply(k, v) for a, v in s.sqrt_u.items()}
        return ModularSystem(base, R, s.epsilon, sqrt_u)
    return FusionSystem(
        s.ring, s.field, {key: _apply_matrix(k, m) for key, m in s.F.items()}
    )


@dataclass(frozen=True)
class OrbitReport:
    """Galois orbit of one system: twists grouped into equivalence classes.

    `classes` partitions the automorphism exponents; `representatives` is the
    least exponent of each class. `method` records how classes were compared,
    and `caveat` is set when the comparison is only known to be sound, not
    complete.
    """

    order: int
    twists: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...]
    method: str
    caveat: str | None = None


def galois_orbit(s: System) -> OrbitReport:
    """Compute all phi(n) twists of s and group them into classes.

    Multiplicity-free rings are grouped with decide_gauge_equiv (braiding
    invariants included for braided systems); anything else falls back to
    exact entry equality, which can only overcount classes.
    """
    n = s.field.order
    ks = [k for k in range(1, n + 1) if math.gcd(k, n) == 1]
    hyper = s.ring.is_multiplicity_free()
    braided = isinstance(s, ModularSystem)
    if hyper:
        method = "gauge-invariants+braiding" if braided else "gauge-invariants"
    else:
        method = "exact-equality"

    def same(a: System, b: System) -> bool:
        if hyper:
            return decide_gauge_equiv(a, b).outcome == "equivalent"
        return a == b

    classes: list[list[int]] = []
    reps: list[System] = []
    unproven = False
    for k in ks:
        tw = twist_system(s, k)
        for members, rep in zip(classes, reps):
            # entry equality is proof of equivalence; only memberships that
            # rest on the partial braided invariants taint the grouping
            if rep == tw:
                members.append(k)
                break
            if same(rep, tw):
                if braided:
                    unproven = True
                members.append(k)
                break
        else:
            classes.append([k])
            reps.append(tw)
    caveat = None
    if hyper and braided and unproven:
        caveat = (
            "two twists in one class are indistinguishable by the implemented "
            "invariants; braided equivalence is not decided completely"
        )
    return OrbitReport(
        order=n,
        twists=tuple(ks),
        classes=tuple(tuple(c) for c in classes),
        representatives=tuple(c[0] for c in classes),
        method=method,
        caveat=caveat,
    )


# ---------------------------------------------------------------------------
# graded scalar twists

@dataclass(frozen=True)
class Grading:
    """A Z/modulus degree per label position, additive on fusion channels."""

    modulus: int
    deg: tuple[int, ...]

    def validate(self, ring: FusionRing) -> None:
        if self.modulus < 1:
            raise ValueError("grading modulus must be positive")
        if len(self.deg) != ring.size:
            raise ValueError("grading must assign a degree to every label")
        if any(not 0 <= d < self.modulus for d in self.deg):
            raise ValueError("degrees must be canonical representatives")
        if self.deg[ring.unit] != 0:
            raise ValueError("unit label must have degree zero")
        L = range(ring.size)
        for a in L:
            for b in L:
                for c in L:
                    if ring.n(a, b, c) > 0:
                        if (self.deg[a] + self.deg[b] - self.deg[c]) % self.modulus:
                            raise ValueError(
                                "grading is not additive on channel "
                                f"({ring.label(a)}, {ring.label(b)}; {ring.label(c)})"
                            )


def _carry(p: int, q: int, modulus: int) -> int:
    # floor((p+q)/m) - floor(p/m) - floor(q/m) on canonical representatives
    return (p + q) // modulus


def tau_twist(s: FusionSystem, g: Grading, tau: CycNumber) -> FusionSystem:
    """Rescale each F block by tau^(deg(a) * carry(deg(b), deg(c))).

    The exponent is the standard cyclic cocycle, so the pentagon survives;
    with the Z/2 grading (0, 1, 0) on three labels and tau = -1 the only
    rescaled block is the one with all outer labels of degree one.
    """
    if not isinstance(s, FusionSystem):
        raise ValueError("tau twist applies to fusion-only systems")
    g.validate(s.ring)
    if tau.field.order != s.field.order:
        raise ValueError("tau is over the wrong field")
    if not (tau ** g.modulus).is_one():
        raise ValueError("tau must be a root of unity of order dividing the modulus")
    out = {}
    for key, m in s.F.items():
        a, b, c, _ = key
        e = g.deg[a] * _carry(g.deg[b], g.deg[c], g.modulus)
        if e % g.modulus == 0:
            out[key] = m
        else:
            factor = tau ** e
            out[key] = FieldMatrix(m.rows, m.cols, tuple(factor * x for x in m.entries))
    return FusionSystem(s.ring, s.field, out)
