"""Exact core types: integer vectors, rational scalars, lattice bases.

Scalars are plain ``int`` and ``fractions.Fraction`` (always canonical:
lowest terms, positive denominator).  Vectors are tuples.  A coefficient
vector is a tuple of ints whose length equals the basis dimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

IntVector = Tuple[int, ...]


class DependentRowsError(ValueError):
    """Rows are not linearly independent; ``index`` is the first vanishing
    Gram-Schmidt norm (1-based)."""

    def __init__(self, index: int):
        super().__init__(f"row {index} is linearly dependent on earlier rows")
        self.index = index


def inner_product(u: Sequence, v: Sequence):
    assert len(u) == len(v), "inner_product: length mismatch"
    return sum(a * b for a, b in zip(u, v))


def squared_norm(v: Sequence):
    return inner_product(v, v)


def vec_add(u: Sequence, v: Sequence) -> tuple:
    assert len(u) == len(v), "vec_add: length mismatch"
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence, v: Sequence) -> tuple:
    assert len(u) == len(v), "vec_sub: length mismatch"
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v: Sequence) -> tuple:
    return tuple(c * a for a in v)


def vec_neg(v: Sequence) -> tuple:
    return tuple(-a for a in v)


def is_zero_vector(v: Sequence) -> bool:
    return all(a == 0 for a in v)


def round_half(q) -> int:
    """Nearest integer with ties rounded up: floor(q + 1/2)."""
    q = Fraction(q)
    return (2 * q.numerator + q.denominator) // (2 * q.denominator)


@dataclass(frozen=True)
class Basis:
    """Ordered list of d integer row vectors in n-dimensional space.

    Shape constraints are checked at construction; linear independence is
    checked by validate_basis (it needs the GSO).
    """

    rows: Tuple[IntVector, ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        d = len(rows)
        assert d >= 1, "Basis: need at least one row"
        n = len(rows[0])
        assert all(len(r) == n for r in rows), "Basis: ragged rows"
        assert 1 <= d <= n, f"Basis: need 1 <= d <= n, got d={d} n={n}"

    @property
    def d(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    def combine(self, coeffs: Sequence) -> tuple:
        """The lattice vector sum(coeffs[i] * rows[i])."""
        assert len(coeffs) == self.d, "combine: coefficient length mismatch"
        v = [0] * self.n
        for c, row in zip(coeffs, self.rows):
            if c:
                for k, a in enumerate(row):
                    v[k] += c * a
        return tuple(v)


def validate_basis(b: Basis) -> None:
    """Raise DependentRowsError unless the rows are linearly independent."""
    from .gso import compute_gso

    compute_gso(b)
