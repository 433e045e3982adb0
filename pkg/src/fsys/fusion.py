"""Fusion rings, associator matrices, and exact verification of their axioms.

A fusion system is a finite label set with multiplicities N, together with an
invertible change-of-basis matrix F_{abc}^u for every admissible quadruple,
relating the two parenthesizations of a triple product. Rows of F_{abc}^u are
indexed by (ab)c-side basis triples (i, e, j) with i counting a,b -> e and j
counting e,c -> u; columns by a(bc)-side triples (m, e', n) with m counting
a,e' -> u and n counting b,c -> e'. Both lists are ordered lexicographically
by (position of the middle label, first index, second index); multiplicity
indices are 1-based throughout to match the constraint equations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from fsys.cyclotomic import (
    CycField,
    CycNumber,
    FieldMatrix,
    SingularMatrixError,
    lift_matrix,
    matrix_inverse,
)
from fsys.report import FAIL, PASS, WARN, CheckResult, Report, combine

Triple = tuple[int, int, int]  # (i, middle label index, j), i and j 1-based
Quad = tuple[int, int, int, int]


@dataclass(frozen=True)
class FusionRing:
    """Label set with unit, dual involution, and fusion multiplicities.

    `mult[a][b][c]` is the multiplicity of c in a*b; labels are addressed by
    position. The unit and the dual map are explicit data, validated against
    N by validate_ring rather than recomputed from it.
    """

    labels: tuple[str, ...]
    unit: int
    dual: tuple[int, ...]
    mult: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def size(self) -> int:
        return len(self.labels)

    def n(self, a: int, b: int, c: int) -> int:
        return self.mult[a][b][c]

    def is_multiplicity_free(self) -> bool:
        return all(n <= 1 for plane in self.mult for row in plane for n in row)

    def label(self, a: int) -> str:
        return self.labels[a]

    def index(self, name: str) -> int:
        try:
            return self.labels.index(name)
        except ValueError:
            raise KeyError(f"unknown label {name!r}") from None


def validate_ring(ring: FusionRing) -> Report:
    """Check the ring axioms, reporting the first witness of each violation kind."""
    checks: list[CheckResult] = []
    L = range(ring.size)
    one = ring.unit

    bad = None
    if ring.dual[one] != one:
        bad = {"label": ring.label(one), "reason": "dual of unit is not unit"}
    else:
        for a in L:
            if ring.dual[ring.dual[a]] != a:
                bad = {"label": ring.label(a), "reason": "dual map is not an involution"}
                break
    checks.append(CheckResult("dual-involution", FAIL if bad else PASS, witness=bad))

    bad = None
    count = 0
    for a in L:
        for b in L:
            want = 1 if a == b else 0
            if ring.n(one, a, b) != want or ring.n(a, one, b) != want:
                count += 1
                if bad is None:
                    bad = {"a": ring.label(a), "b": ring.label(b)}
    checks.append(CheckResult("unit-channel", FAIL if bad else PASS, witness=bad, violations=count))

    bad = None
    count = 0
    for a in L:
        for b in L:
            want = 1 if ring.dual[a] == b else 0
            if ring.n(a, b, one) != want:
                count += 1
                if bad is None:
                    bad = {"a": ring.label(a), "b": ring.label(b), "got": ring.n(a, b, one)}
    checks.append(CheckResult("dual-channel", FAIL if bad else PASS, witness=bad, violations=count))

    bad = None
    count = 0
    for a in L:
        for b in L:
            for c in L:
                for u in L:
                    left = sum(ring.n(a, b, e) * ring.n(e, c, u) for e in L)
                    right = sum(ring.n(a, e, u) * ring.n(b, c, e) for e in L)
                    if left != right:
                        count += 1
                        if bad is None:
                            bad = {
                                "a": ring.label(a), "b": ring.label(b),
                                "c": ring.label(c), "u": ring.label(u),
                                "left": left, "right": right,
                            }
    checks.append(CheckResult("associativity", FAIL if bad else PASS, witness=bad, violations=count))
    return combine(checks)


@lru_cache(maxsize=None)
def row_triples(ring: FusionRing, a: int, b: int, c: int, u: int) -> tuple[Triple, ...]:
    """(ab)c-side triples (i, e, j): 1 <= i <= N_ab^e, 1 <= j <= N_ec^u."""
    out: list[Triple] = []
    for e in range(ring.size):
        for i in range(1, ring.n(a, b, e) + 1):
            for j in range(1, ring.n(e, c, u) + 1):
                out.append((i, e, j))
    return tuple(out)


@lru_cache(maxsize=None)
def col_triples(ring: FusionRing, a: int, b: int, c: int, u: int) -> tuple[Triple, ...]:
    """a(bc)-side triples (m, e, n): 1 <= m <= N_ae^u, 1 <= n <= N_bc^e."""
    out: list[Triple] = []
    for e in range(ring.size):
        for m in range(1, ring.n(a, e, u) + 1):
            for n in range(1, ring.n(b, c, e) + 1):
                out.append((m, e, n))
    return tuple(out)


class FusionSystem:
    """A fusion ring with a field order and the full family of F-matrices.

    Construction validates structure only (every positive-dimensional
    quadruple has a square matrix of the right size over the right field);
    the axioms are checked by the verify routines.
    """

    def __init__(self, ring: FusionRing, field: CycField, F: dict[Quad, FieldMatrix]):
        self.ring = ring
        self.field = field
        self.F = F
        self._rowpos: dict[Quad, dict[Triple, int]] = {}
        self._colpos: dict[Quad, dict[Triple, int]] = {}
        L = range(ring.size)
        for a in L:
            for b in L:
                for c in L:
                    for u in L:
                        rows = row_triples(ring, a, b, c, u)
                        cols = col_triples(ring, a, b, c, u)
                        key = (a, b, c, u)
                        if not rows and not cols:
                            if key in F:
                                raise ValueError(f"F block for inadmissible quadruple {self._q(key)}")
                            continue
                        if len(rows) != len(cols):
                            raise ValueError(
                                f"quadruple {self._q(key)} has {len(rows)} row and "
                                f"{len(cols)} column triples; ring is not associative"
                            )
                        m = F.get(key)
                        if m is None:
                            raise ValueError(f"missing F block for admissible quadruple {self._q(key)}")
                        if (m.rows, m.cols) != (len(rows), len(cols)):
                            raise ValueError(
                                f"F block {self._q(key)} is {m.rows}x{m.cols}, "
                                f"expected {len(rows)}x{len(cols)}"
                            )
                        for entry in m.entries:
                            if entry.field.order != field.order:
                                raise ValueError(f"F block {self._q(key)} entry over wrong field")
                        self._rowpos[key] = {t: k for k, t in enumerate(rows)}
                        self._colpos[key] = {t: k for k, t in enumerate(cols)}

    def _q(self, key: Quad) -> str:
        a, b, c, u = key
        lbl = self.ring.label
        return f"({lbl(a)},{lbl(b)},{lbl(c)};{lbl(u)})"

    def quadruples(self) -> Iterator[Quad]:
        L = range(self.ring.size)
        for a in L:
            for b in L:
                for c in L:
                    for u in L:
                        if (a, b, c, u) in self.F:
                            yield (a, b, c, u)

    def fmat(self, a: int, b: int, c: int, u: int) -> FieldMatrix:
        return self.F[(a, b, c, u)]

    def f(self, a: int, b: int, c: int, u: int, row: Triple, col: Triple) -> CycNumber:
        key = (a, b, c, u)
        return self.F[key].at(self._rowpos[key][row], self._colpos[key][col])

    def row_index(self, key: Quad, t: Triple) -> int:
        return self._rowpos[key][t]

    def col_index(self, key: Quad, t: Triple) -> int:
        return self._colpos[key][t]

    def zero(self) -> CycNumber:
        return CycNumber.zero(self.field)

    def one(self) -> CycNumber:
        return CycNumber.one(self.field)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FusionSystem):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.field.order == other.field.order
            and self.F == other.F
        )

    def __repr__(self) -> str:
        return (
            f"FusionSystem({len(self.ring.labels)} labels, "
            f"Q(zeta_{self.field.order}), {len(self.F)} F blocks)"
        )


def lift_system(s: FusionSystem, n: int) -> FusionSystem:
    """Re-express every F entry in Q(zeta_n); n must be a multiple of the order."""
    if n == s.field.order:
        return s
    return FusionSystem(
        s.ring, CycField.of(n), {key: lift_matrix(m, n) for key, m in s.F.items()}
    )


# ---------------------------------------------------------------------------
# axiom checks

def _identity_violation(s: FusionSystem, key: Quad) -> tuple[int, int] | None:
    """First (row, col) position where the block differs from the identity."""
    m = s.F[key]
    for r in range(m.rows):
        for c in range(m.cols):
            e = m.at(r, c)
            ok = e.is_one() if r == c else e.is_zero()
            if not ok:
                return (r, c)
    return None


def check_triangle(s: FusionSystem) -> Report:
    """Middle-unit blocks F_{a1b}^u must be identity matrices.

    The unit-on-the-left and unit-on-the-right identities follow from this
    one plus the pentagon, so standalone they are audited as warnings only.
    """
    ring = s.ring
    one = ring.unit
    L = range(ring.size)

    def scan(quads: list[Quad], name: str, status_on_fail: str) -> CheckResult:
        bad = None
        count = 0
        for key in quads:
            hit = _identity_violation(s, key)
            if hit is not None:
                count += 1
                if bad is None:
                    bad = {"quadruple": s._q(key), "position": [hit[0], hit[1]]}
        return CheckResult(name, status_on_fail if bad else PASS, witness=bad, violations=count)

    mid = [(a, one, b, u) for a in L for b in L for u in L if (a, one, b, u) in s.F]
    left = [(one, a, b, u) for a in L for b in L for u in L if (one, a, b, u) in s.F]
    right = [(a, b, one, u) for a in L for b in L for u in L if (a, b, one, u) in s.F]

    checks = [
        scan(mid, "triangle", FAIL),
        scan(left, "triangle-left-audit", WARN),
        scan(right, "triangle-right-audit", WARN),
    ]
    return combine(checks)


def duality_scalars(s: FusionSystem) -> dict[int, CycNumber]:
    """u_a: the (1,unit,1)/(1,unit,1) entry of F_{a a* a}^a."""
    ring = s.ring
    one = ring.unit
    out = {}
    for a in range(ring.size):
        t = (1, one, 1)
        out[a] = s.f(a, ring.dual[a], a, a, t, t)
    return out


def check_duality(s: FusionSystem) -> Report:
    """Every F block invertible and every duality scalar u_a nonzero."""
    checks: list[CheckResult] = []
    bad = None
    count = 0
    for key in s.quadruples():
        try:
            matrix_inverse(s.F[key])
        except SingularMatrixError:
            count += 1
            if bad is None:
                bad = {"quadruple": s._q(key)}
    checks.append(CheckResult("f-invertible", FAIL if bad else PASS, witness=bad, violations=count))

    u = duality_scalars(s)
    bad = None
    count = 0
    for a, val in u.items():
        if val.is_zero():
            count += 1
            if bad is None:
                bad = {"label": s.ring.label(a)}
    checks.append(CheckResult("duality-scalars", FAIL if bad else PASS, witness=bad, violations=count))

    values = {"u": {s.ring.label(a): list(val.wire()) for a, val in u.items()}}
    return combine(checks, values)


def pentagon_frames(s: FusionSystem) -> Iterator[tuple[int, ...]]:
    """Label frames (a,b,c,d,u,e,f,g,h) with every free multiplicity index
    range nonempty; deterministic lexicographic order."""
    ring = s.ring
    L = range(ring.size)
    n = ring.n
    for a in L:
        for b in L:
            for c in L:
                for d in L:
                    for u in L:
                        for e in L:
                            if n(a, b, e) == 0:
                                continue
                            for f in L:
                                if n(e, c, f) == 0 or n(f, d, u) == 0:
                                    continue
                                for g in L:
                                    if n(c, d, g) == 0:
                                        continue
                                    for h in L:
                                        if n(a, h, u) == 0 or n(b, g, h) == 0:
                                            continue
                                        yield (a, b, c, d, u, e, f, g, h)


def pentagon_instance_values(
    s: FusionSystem, frame: tuple[int, ...], i: int, j: int, k: int, m: int, n_: int, o: int
) -> tuple[CycNumber, CycNumber]:
    """Both sides of one pentagon instance, evaluated exactly.

    Left: sum over l of F_{ecd}^u[(j,f,k);(l,g,m)] * F_{abg}^u[(i,e,l);(n,h,o)].
    Right: sum over q,p,r,v of F_{abc}^f[(i,e,j);(p,q,r)] * F_{aqd}^u[(p,f,k);(n,h,v)]
           * F_{bcd}^h[(r,q,v);(o,g,m)].
    """
    a, b, c, d, u, e, f, g, h = frame
    ring = s.ring
    N = ring.n

    lhs = s.zero()
    for l in range(1, N(e, g, u) + 1):
        x = s.f(e, c, d, u, (j, f, k), (l, g, m))
        if x.is_zero():
            continue
        lhs = lhs + x * s.f(a, b, g, u, (i, e, l), (n_, h, o))

    rhs = s.zero()
    for q in range(ring.size):
        for p in range(1, N(a, q, f) + 1):
            for r in range(1, N(b, c, q) + 1):
                x = s.f(a, b, c, f, (i, e, j), (p, q, r))
                if x.is_zero():
                    continue
                for v in range(1, N(q, d, h) + 1):
                    y = s.f(a, q, d, u, (p, f, k), (n_, h, v))
                    if y.is_zero():
                        continue
                    rhs = rhs + x * y * s.f(b, c, d, h, (r, q, v), (o, g, m))
    return lhs, rhs


def pentagon_violations(s: FusionSystem) -> Iterator[dict]:
    """Witnesses of failing pentagon instances, in deterministic order."""
    ring = s.ring
    N = ring.n
    for frame in pentagon_frames(s):
        a, b, c, d, u, e, f, g, h = frame
        for i in range(1, N(a, b, e) + 1):
            for j in range(1, N(e, c, f) + 1):
                for k in range(1, N(f, d, u) + 1):
                    for m in range(1, N(c, d, g) + 1):
                        for n_ in range(1, N(a, h, u) + 1):
                            for o in range(1, N(b, g, h) + 1):
                                lhs, rhs = pentagon_instance_values(s, frame, i, j, k, m, n_, o)
                                if lhs != rhs:
                                    yield {
                                        "labels": [ring.label(x) for x in frame],
                                        "indices": [i, j, k, m, n_, o],
                                        "left": list(lhs.wire()),
                                        "right": list(rhs.wire()),
                                    }


def pentagon_holds(s: FusionSystem) -> bool:
    """Early-exit pentagon test for search loops."""
    return next(pentagon_violations(s), None) is None


def check_pentagon(s: FusionSystem) -> Report:
    """Every pentagon instance must balance exactly."""
    bad = None
    count = 0
    for witness in pentagon_violations(s):
        count += 1
        if bad is None:
            bad = witness
    check = CheckResult("pentagon", FAIL if bad else PASS, witness=bad, violations=count)
    return combine([check])


def compute_G(s: FusionSystem) -> dict[Quad, FieldMatrix]:
    """Inverse associator matrices.

    G_{abc}^u is the plain matrix inverse of F_{abc}^u, read with the index
    roles exchanged: its rows are indexed by the a(bc)-side triples and its
    columns by the (ab)c-side triples.
    """
    return {key: matrix_inverse(mat) for key, mat in s.F.items()}


def g_entry(
    s: FusionSystem, G: dict[Quad, FieldMatrix], key: Quad, row: Triple, col: Triple
) -> CycNumber:
    """Entry of G_{abc}^u: `row` is an a(bc)-side triple, `col` an (ab)c-side one."""
    return G[key].at(s.col_index(key, row), s.row_index(key, col))


def inverse_scalars(s: FusionSystem, G: dict[Quad, FieldMatrix]) -> dict[int, CycNumber]:
    """v_a: the (1,unit,1)/(1,unit,1) entry of G_{a a* a}^a."""
    ring = s.ring
    t = (1, ring.unit, 1)
    return {a: g_entry(s, G, (a, ring.dual[a], a, a), t, t) for a in range(ring.size)}


def check_inverse_consistency(s: FusionSystem) -> Report:
    """G must invert F block-wise, and v at a dual label must equal u there."""
    checks: list[CheckResult] = []
    try:
        G = compute_G(s)
    except SingularMatrixError as err:
        checks.append(CheckResult("inverse-associator", FAIL, detail=str(err)))
        return combine(checks)

    bad = None
    count = 0
    for key, mat in s.F.items():
        if not (G[key] @ mat).is_identity():
            count += 1
            if bad is None:
                bad = {"quadruple": s._q(key)}
    checks.append(CheckResult("inverse-associator", FAIL if bad else PASS, witness=bad, violations=count))

    u = duality_scalars(s)
    v = inverse_scalars(s, G)
    bad = None
    count = 0
    for a in range(s.ring.size):
        if v[s.ring.dual[a]] != u[a]:
            count += 1
            if bad is None:
                bad = {"label": s.ring.label(a)}
    checks.append(CheckResult("dual-scalar-match", FAIL if bad else PASS, witness=bad, violations=count))
    return combine(checks)


def verify_fusion(s: FusionSystem) -> Report:
    """Full fusion verification: ring, triangle, duality, pentagon, inverses.

    Once the pentagon holds the left/right unit identities are consequences,
    so their audit warnings are promoted to failures here.
    """
    checks: list[CheckResult] = []
    values: dict = {}

    ring_report = validate_ring(s.ring)
    checks.extend(ring_report.checks)
    if ring_report.outcome == FAIL:
        return Report(FAIL, checks, values)

    tri = check_triangle(s)
    dual = check_duality(s)
    pent = check_pentagon(s)
    inv = check_inverse_consistency(s)
    checks.extend(tri.checks)
    checks.extend(dual.checks)
    checks.extend(pent.checks)
    checks.extend(inv.checks)
    values.update(dual.values)

    failed = any(c.status == FAIL for c in checks)
    if not failed and pent.outcome == PASS:
        failed = any(c.status == WARN for c in checks if c.name.startswith("triangle-"))
        for c in checks:
            if c.name.startswith("triangle-") and c.status == WARN:
                c.status = FAIL
                c.detail = "required once the pentagon holds"
    return Report(FAIL if failed else PASS, checks, values)
