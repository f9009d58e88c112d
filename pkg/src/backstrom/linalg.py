"""Exact dense linear algebra over a prime field or the rationals.

Prime-field elements are ints reduced mod p, rational entries are
``fractions.Fraction``; there is no floating point anywhere. Every matrix
in this package is tiny (at most a few hundred rows), so plain Gaussian
elimination on row-major dense storage is the whole story.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Union

Element = Union[int, Fraction]

MAX_PRIME = 2**31

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n below 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class GroundField:
    """The residue field of the base ring: F_p for a prime p, or Q."""

    kind: str  # "prime" | "rationals"
    p: int = 0

    def __post_init__(self) -> None:
        if self.kind == "prime":
            if not (2 <= self.p <= MAX_PRIME and is_prime(self.p)):
                raise ValueError(f"modulus must be a prime <= 2^31, got {self.p}")
        elif self.kind == "rationals":
            if self.p:
                raise ValueError("the rational field takes no modulus")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @staticmethod
    def prime(p: int) -> "GroundField":
        return GroundField("prime", p)

    @staticmethod
    def rationals() -> "GroundField":
        return GroundField("rationals")

    @property
    def zero(self) -> Element:
        return 0 if self.kind == "prime" else Fraction(0)

    @property
    def one(self) -> Element:
        return 1 if self.kind == "prime" else Fraction(1)

    def element(self, x: Union[int, Fraction]) -> Element:
        if self.kind == "prime":
            if isinstance(x, Fraction):
                if x.denominator == 1:
                    return x.numerator % self.p
                return self.mul(x.numerator % self.p, self.inv(x.denominator % self.p))
            return int(x) % self.p
        return Fraction(x)

    def add(self, a: Element, b: Element) -> Element:
        return (a + b) % self.p if self.kind == "prime" else a + b

    def sub(self, a: Element, b: Element) -> Element:
        return (a - b) % self.p if self.kind == "prime" else a - b

    def mul(self, a: Element, b: Element) -> Element:
        return (a * b) % self.p if self.kind == "prime" else a * b

    def neg(self, a: Element) -> Element:
        return (-a) % self.p if self.kind == "prime" else -a

    def inv(self, a: Element) -> Element:
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if self.kind == "prime":
            return pow(a, self.p - 2, self.p)
        return Fraction(1) / a

    def is_zero(self, a: Element) -> bool:
        return a == 0

    def __str__(self) -> str:
        return f"F_{self.p}" if self.kind == "prime" else "Q"


@dataclass
class ExactMatrix:
    """Dense matrix with entries in a :class:`GroundField`, row-major."""

    field: GroundField
    rows: int
    cols: int
    entries: List[Element]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        self.entries = [self.field.element(x) for x in self.entries]

    @classmethod
    def zeros(cls, field: GroundField, rows: int, cols: int) -> "ExactMatrix":
        return cls(field, rows, cols, [field.zero] * (rows * cols))

    @classmethod
    def identity(cls, field: GroundField, n: int) -> "ExactMatrix":
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.entries[i * n + i] = field.one
        return m

    @classmethod
    def from_rows(cls, field: GroundField, rows: Sequence[Sequence]) -> "ExactMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        flat: List[Element] = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            flat.extend(r)
        return cls(field, nrows, ncols, flat)

    def entry(self, i: int, j: int) -> Element:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> List[Element]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> List[List[Element]]:
        return [self.row(i) for i in range(self.rows)]


def _eliminate(m: ExactMatrix) -> tuple[List[List[Element]], List[int]]:
    """Reduced row echelon form of a copy of m, with pivot column indices."""
    f = m.field
    work = m.to_rows()
    pivots: List[int] = []
    r = 0
    for c in range(m.cols):
        pivot_row: Optional[int] = None
        for i in range(r, m.rows):
            if not f.is_zero(work[i][c]):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = f.inv(work[r][c])
        work[r] = [f.mul(inv, x) for x in work[r]]
        for i in range(m.rows):
            if i != r and not f.is_zero(work[i][c]):
                factor = work[i][c]
                work[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return work, pivots


def rank(m: ExactMatrix) -> int:
    """Row rank by exact Gaussian elimination."""
    _, pivots = _eliminate(m)
    return len(pivots)


def kernel_basis(m: ExactMatrix) -> List[List[Element]]:
    """Basis of the right kernel, one column vector per free column."""
    f = m.field
    rref, pivots = _eliminate(m)
    pivot_set = set(pivots)
    basis: List[List[Element]] = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [f.zero] * m.cols
        v[free] = f.one
        for r, pc in enumerate(pivots):
            v[pc] = f.neg(rref[r][free])
        basis.append(v)
    return basis


def block_diag_embed(
    blocks: Sequence[ExactMatrix], field: Optional[GroundField] = None
) -> ExactMatrix:
    """Block-diagonal assembly of matrices over a shared field.

    An empty block list yields the 0x0 matrix (over ``field`` when given,
    otherwise over the rationals).
    """
    if not blocks:
        return ExactMatrix.zeros(field or GroundField.rationals(), 0, 0)
    f = blocks[0].field
    if field is not None and field != f:
        raise ValueError("field mismatch between blocks and requested field")
    for b in blocks:
        if b.field != f:
            raise ValueError("field mismatch between blocks")
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = ExactMatrix.zeros(f, rows, cols)
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            base = (r0 + i) * cols + c0
            out.entries[base : base + b.cols] = b.row(i)
        r0 += b.rows
        c0 += b.cols
    return out
