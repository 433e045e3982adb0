"""Exact arithmetic in cyclotomic fields Q(zeta_n) and dense linear algebra over them.

Elements are stored on the power basis 1, zeta, ..., zeta^(phi(n)-1) and kept
reduced modulo the n-th cyclotomic polynomial, so equality is coefficient-wise.
All coefficients are `fractions.Fraction`; nothing here ever touches a float
except `embed_complex`, which exists for display only.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence


class FieldMismatchError(ValueError):
    """Raised when two operands live over different cyclotomic orders."""


class SingularMatrixError(ArithmeticError):
    """Raised when a matrix has no inverse; doubles as the invertibility test."""


# ---------------------------------------------------------------------------
# integer/rational polynomial helpers (little-endian coefficient lists)

def _poly_trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(p: Sequence, q: Sequence) -> list:
    out = [0] * (len(p) + len(q) - 1) if p and q else []
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _poly_trim(out)


def _poly_divmod_exact(num: Sequence[int], den: Sequence[int]) -> list[int]:
    """Exact division of integer polynomials; den monic is not assumed but the
    division must leave no remainder (used only for building Phi_n)."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(q) - 1, -1, -1):
        c = num[k + len(den) - 1]
        if c % lead != 0:
            raise ArithmeticError("non-exact polynomial division")
        q[k] = c // lead
        if q[k]:
            for j, d in enumerate(den):
                num[k + j] -= q[k] * d
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return _poly_trim(q)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Little-endian integer coefficients of Phi_n.

    Computed by exact division of x^n - 1 by the product of Phi_d over the
    proper divisors d of n. Phi_1 = x - 1 seeds the recursion.
    """
    if n < 1:
        raise ValueError(f"cyclotomic order must be positive, got {n}")
    if n == 1:
        return (-1, 1)
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    den = [1]
    for d in range(1, n):
        if n % d == 0:
            den = _poly_mul(den, cyclotomic_polynomial(d))
    return tuple(_poly_divmod_exact(num, den))


@lru_cache(maxsize=None)
def _euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@dataclass(frozen=True)
class CycField:
    """The field Q(zeta_n), presented by Phi_n."""

    order: int
    min_poly: tuple[int, ...]
    degree: int

    @staticmethod
    @lru_cache(maxsize=None)
    def of(n: int) -> "CycField":
        poly = cyclotomic_polynomial(n)
        return CycField(order=n, min_poly=poly, degree=len(poly) - 1)

    def __repr__(self) -> str:
        return f"CycField(Q(zeta_{self.order}))"


def _reduce_mod_minpoly(coeffs: list[Fraction], field: CycField) -> tuple[Fraction, ...]:
    """Remainder modulo Phi_n. Phi_n is monic, so this is exact and unique."""
    deg = field.degree
    poly = field.min_poly
    coeffs = list(coeffs)
    for k in range(len(coeffs) - 1, deg - 1, -1):
        c = coeffs[k]
        if c:
            for j in range(deg):
                coeffs[k - deg + j] -= c * poly[j]
        coeffs.pop()
    while len(coeffs) < deg:
        coeffs.append(_ZERO)
    return tuple(coeffs)


_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True, slots=True)
class CycNumber:
    """An element of Q(zeta_n), reduced modulo Phi_n."""

    field: CycField
    coeffs: tuple[Fraction, ...]

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_coeffs(field: CycField, coeffs: Iterable) -> "CycNumber":
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > field.degree:
            return CycNumber(field, _reduce_mod_minpoly(cs, field))
        cs += [_ZERO] * (field.degree - len(cs))
        return CycNumber(field, tuple(cs))

    @staticmethod
    def rational(field: CycField, value) -> "CycNumber":
        return CycNumber.from_coeffs(field, [Fraction(value)])

    @staticmethod
    def zeta_power(field: CycField, k: int) -> "CycNumber":
        """zeta_n^k, exponent taken modulo n."""
        k %= field.order
        cs = [_ZERO] * (k + 1)
        cs[k] = _ONE
        return CycNumber.from_coeffs(field, cs)

    @staticmethod
    def zero(field: CycField) -> "CycNumber":
        return CycNumber.from_coeffs(field, [])

    @staticmethod
    def one(field: CycField) -> "CycNumber":
        return CycNumber.rational(field, 1)

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and all(c == 0 for c in self.coeffs[1:])

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational element")
        return self.coeffs[0]

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "CycNumber") -> None:
        if self.field.order != other.field.order:
            raise FieldMismatchError(
                f"operands over Q(zeta_{self.field.order}) and Q(zeta_{other.field.order})"
            )

    def __add__(self, other: "CycNumber") -> "CycNumber":
        self._check(other)
        return CycNumber(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CycNumber") -> "CycNumber":
        self._check(other)
        return CycNumber(self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CycNumber":
        return CycNumber(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other: "CycNumber") -> "CycNumber":
        self._check(other)
        deg = self.field.degree
        out = [_ZERO] * (2 * deg - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b != 0:
                    out[i + j] += a * b
        return CycNumber(self.field, _reduce_mod_minpoly(out, self.field))

    def __truediv__(self, other: "CycNumber") -> "CycNumber":
        return self * invert(other)

    def scale(self, q) -> "CycNumber":
        f = Fraction(q)
        return CycNumber(self.field, tuple(c * f for c in self.coeffs))

    def __pow__(self, k: int) -> "CycNumber":
        if k < 0:
            return invert(self) ** (-k)
        result = CycNumber.one(self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def wire(self) -> tuple[str, ...]:
        """Exact little-endian coefficient strings, "p" or "p/q" in lowest terms."""
        return tuple(
            str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
            for c in self.coeffs
        )

    def __repr__(self) -> str:
        return f"CycNumber(n={self.field.order}, {list(self.wire())})"


def invert(a: CycNumber) -> CycNumber:
    """Inverse via the extended Euclidean algorithm against Phi_n.

    Phi_n is irreducible over Q, so any nonzero residue is a unit.
    """
    if a.is_zero():
        raise ZeroDivisionError("inverse of zero in cyclotomic field")
    field = a.field
    # Euclid over Q[x] on (coeff poly, Phi_n), tracking only the first Bezout factor.
    r0 = [Fraction(c) for c in field.min_poly]
    r1 = _poly_trim(list(a.coeffs))
    s0: list[Fraction] = []
    s1: list[Fraction] = [_ONE]
    while r1:
        q, r = _poly_divmod_frac(r0, r1)
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        r0, r1 = r1, r
    # r0 = gcd, a nonzero constant; s1-era s0 satisfies s0 * a = r0 (mod Phi).
    const = r0[0]
    inv_coeffs = [c / const for c in s0]
    return CycNumber.from_coeffs(field, inv_coeffs)


def _poly_sub(p: list, q: list) -> list:
    out = list(p) + [_ZERO] * (len(q) - len(p))
    for i, c in enumerate(q):
        out[i] -= c
    return _poly_trim(out)


def _poly_divmod_frac(num: list, den: list) -> tuple[list, list]:
    num = list(num)
    if len(num) < len(den):
        return [], _poly_trim(num)
    q = [_ZERO] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(q) - 1, -1, -1):
        c = num[k + len(den) - 1]
        if c:
            qk = c / lead
            q[k] = qk
            for j, d in enumerate(den):
                num[k + j] -= qk * d
    return _poly_trim(q), _poly_trim(num)


def galois_apply(k: int, a: CycNumber) -> CycNumber:
    """Field automorphism zeta |-> zeta^k for gcd(k, n) = 1, applied to one element."""
    n = a.field.order
    if gcd(k, n) != 1:
        raise ValueError(f"k={k} not coprime to field order n={n}")
    out = [_ZERO] * n
    for i, c in enumerate(a.coeffs):
        if c != 0:
            out[(i * k) % n] += c
    return CycNumber.from_coeffs(a.field, out)


def lift_field(a: CycNumber, n: int) -> CycNumber:
    """Embed Q(zeta_m) into Q(zeta_n) by zeta_m |-> zeta_n^(n/m); m must divide n."""
    m = a.field.order
    if n % m != 0:
        raise ValueError(f"target order {n} is not a multiple of source order {m}")
    target = CycField.of(n)
    step = n // m
    out = [_ZERO] * n
    for i, c in enumerate(a.coeffs):
        if c != 0:
            out[(i * step) % n] += c
    return CycNumber.from_coeffs(target, out)


def embed_complex(a: CycNumber) -> tuple[float, float]:
    """Floating-point image at zeta = exp(2*pi*i/n). Display only; no verification
    decision may depend on this value."""
    n = a.field.order
    z = complex(0.0)
    for i, c in enumerate(a.coeffs):
        if c != 0:
            z += float(c) * cmath.exp(2j * cmath.pi * i / n)
    return (z.real, z.imag)


# ---------------------------------------------------------------------------
# matrices

@dataclass(frozen=True, slots=True)
class FieldMatrix:
    """Dense matrix with CycNumber entries over one shared field."""

    rows: int
    cols: int
    entries: tuple[CycNumber, ...]

    @staticmethod
    def from_rows(rows: Sequence[Sequence[CycNumber]]) -> "FieldMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        flat: list[CycNumber] = []
        for row in rows:
            if len(row) != c:
                raise ValueError("ragged rows")
            flat.extend(row)
        return FieldMatrix(r, c, tuple(flat))

    @staticmethod
    def identity(n: int, field: CycField) -> "FieldMatrix":
        one, zero = CycNumber.one(field), CycNumber.zero(field)
        return FieldMatrix(n, n, tuple(one if i == j else zero for i in range(n) for j in range(n)))

    def at(self, r: int, c: int) -> CycNumber:
        return self.entries[r * self.cols + c]

    def row(self, r: int) -> tuple[CycNumber, ...]:
        return self.entries[r * self.cols:(r + 1) * self.cols]

    def __matmul__(self, other: "FieldMatrix") -> "FieldMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        field = self.entries[0].field if self.entries else other.entries[0].field
        zero = CycNumber.zero(field)
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    a = self.at(i, k)
                    if not a.is_zero():
                        acc = acc + a * other.at(k, j)
                out.append(acc)
        return FieldMatrix(self.rows, other.cols, tuple(out))

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(
            self.at(i, j).is_one() if i == j else self.at(i, j).is_zero()
            for i in range(self.rows)
            for j in range(self.cols)
        )

    def scalar(self) -> CycNumber:
        if self.rows != 1 or self.cols != 1:
            raise ValueError("not a 1x1 matrix")
        return self.entries[0]


def matrix_inverse(m: FieldMatrix) -> FieldMatrix:
    """Exact Gauss-Jordan inverse. Pivot is the first nonzero entry scanning down
    each column; arithmetic is exact so no magnitude pivoting is wanted, and the
    fixed scan keeps elimination deterministic."""
    if m.rows != m.cols:
        raise SingularMatrixError(f"non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 0:
        return m
    field = m.entries[0].field
    aug = [list(m.row(i)) + list(FieldMatrix.identity(n, field).row(i)) for i in range(n)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if not aug[r][col].is_zero()), None)
        if pivot_row is None:
            raise SingularMatrixError(f"singular matrix (no pivot in column {col})")
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        inv_p = invert(aug[col][col])
        aug[col] = [e * inv_p for e in aug[col]]
        for r in range(n):
            if r != col and not aug[r][col].is_zero():
                f = aug[r][col]
                aug[r] = [e - f * p for e, p in zip(aug[r], aug[col])]
    return FieldMatrix.from_rows([row[n:] for row in aug])


def matrix_determinant(m: FieldMatrix) -> CycNumber:
    """Exact determinant by the same first-nonzero-pivot elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of non-square matrix")
    n = m.rows
    if n == 0:
        raise ValueError("empty matrix")
    field = m.entries[0].field
    work = [list(m.row(i)) for i in range(n)]
    det = CycNumber.one(field)
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if not work[r][col].is_zero()), None)
        if pivot_row is None:
            return CycNumber.zero(field)
        if pivot_row != col:
            work[col], work[pivot_row] = work[pivot_row], work[col]
            det = -det
        p = work[col][col]
        det = det * p
        inv_p = invert(p)
        for r in range(col + 1, n):
            if not work[r][col].is_zero():
                f = work[r][col] * inv_p
                work[r] = [e - f * q for e, q in zip(work[r], work[col])]
    return det


def lift_matrix(m: FieldMatrix, n: int) -> FieldMatrix:
    return FieldMatrix(m.rows, m.cols, tuple(lift_field(e, n) for e in m.entries))
