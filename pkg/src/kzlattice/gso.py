"""Exact Gram-Schmidt orthogonalisation over the rationals.

For a basis (b_1, ..., b_d) the GSO is b_i* = b_i - sum_{j<i} mu_{i,j} b_j*
with mu_{i,j} = <b_i, b_j*> / ||b_j*||^2.  Everything here is computed from
the integer Gram matrix through the recurrence

    mu_{i,j} = (G[i][j] - sum_{k<j} mu_{j,k} mu_{i,k} B_k) / B_j
    B_i      = G[i][i] - sum_{k<i} mu_{i,k}^2 B_k

which stays in exact rational arithmetic throughout.  GSO data is always
recomputed from the current rows, never patched incrementally.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .basis import Basis, DependentRowsError, inner_product, vec_sub

Row = Sequence


@dataclass(frozen=True)
class GsoData:
    """mu: d x d lower-triangular rational matrix (unit diagonal);
    bstar_sq: the squared GSO norms ||b_i*||^2, all positive."""

    mu: Tuple[Tuple[Fraction, ...], ...]
    bstar_sq: Tuple[Fraction, ...]

    @property
    def d(self) -> int:
        return len(self.bstar_sq)


def gram_matrix(rows: Sequence[Row]) -> List[List]:
    """Matrix of pairwise inner products <rows[i], rows[j]>."""
    d = len(rows)
    g = [[0] * d for _ in range(d)]
    for i in range(d):
        for j in range(i + 1):
            g[i][j] = g[j][i] = inner_product(rows[i], rows[j])
    return g


def gso_from_gram(gram: Sequence[Sequence], allow_zero: bool = False):
    """(mu, bstar_sq) from a Gram matrix via the recurrence above.

    With allow_zero, a vanishing ||b_j*||^2 is tolerated: the corresponding
    mu column is set to zero (the numerator <b_i, b_j*> vanishes identically
    when b_j* = 0, which is asserted).  Otherwise DependentRowsError.
    """
    d = len(gram)
    mu = [[Fraction(0)] * d for _ in range(d)]
    bsq = [Fraction(0)] * d
    for i in range(d):
        mu[i][i] = Fraction(1)
        for j in range(i):
            num = Fraction(gram[i][j]) - sum(
                (mu[j][k] * mu[i][k] * bsq[k] for k in range(j)), Fraction(0)
            )
            if bsq[j] == 0:
                assert num == 0, "nonzero component along a vanished GSO vector"
                mu[i][j] = Fraction(0)
            else:
                mu[i][j] = num / bsq[j]
        bsq[i] = Fraction(gram[i][i]) - sum(
            (mu[i][k] ** 2 * bsq[k] for k in range(i)), Fraction(0)
        )
        if bsq[i] <= 0:
            assert bsq[i] == 0, "negative squared GSO norm"
            if not allow_zero:
                raise DependentRowsError(i + 1)
    return tuple(tuple(r) for r in mu), tuple(bsq)


def gso_from_rows(rows: Sequence[Row], allow_zero: bool = False):
    return gso_from_gram(gram_matrix(rows), allow_zero=allow_zero)


def compute_gso(b: Basis) -> GsoData:
    """GSO of a basis; raises DependentRowsError on dependent rows."""
    mu, bsq = gso_from_rows(b.rows)
    return GsoData(mu=mu, bstar_sq=bsq)


def bstar_vectors(b: Basis, g: GsoData) -> List[tuple]:
    """The orthogonalised vectors b_i* themselves, as rational tuples."""
    stars: List[tuple] = []
    for i, row in enumerate(b.rows):
        v = [Fraction(x) for x in row]
        for j in range(i):
            m = g.mu[i][j]
            if m:
                for k, a in enumerate(stars[j]):
                    v[k] -= m * a
        stars.append(tuple(v))
    return stars


def project_tail(b: Basis, g: GsoData, i: int) -> List[tuple]:
    """Vectors b_i^(i), ..., b_d^(i): the tail projected orthogonally to
    span(b_1, ..., b_{i-1}).  Indices are 1-based; i = 1 returns the basis
    rows unchanged (as rational tuples)."""
    assert 1 <= i <= b.d, f"project_tail: index {i} out of range"
    stars = bstar_vectors(b, g)
    out = []
    for j in range(i - 1, b.d):
        v = [Fraction(x) for x in b.rows[j]]
        for k in range(i - 1):
            m = g.mu[j][k]
            if m:
                for t, a in enumerate(stars[k]):
                    v[t] -= m * a
        out.append(tuple(v))
    return out


def lattice_volume_sq(b: Basis) -> Fraction:
    """det(L)^2 = prod ||b_i*||^2, an exact rational."""
    g = compute_gso(b)
    out = Fraction(1)
    for v in g.bstar_sq:
        out *= v
    return out


def matrix_det(m: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    d = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    assert all(len(row) == d for row in a), "matrix_det: not square"
    det = Fraction(1)
    for col in range(d):
        piv = next((r for r in range(col, d) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, d):
            if a[r][col]:
                f = a[r][col] * inv
                for c in range(col, d):
                    a[r][c] -= f * a[col][c]
    return det


def solve_linear(m: Sequence[Sequence], rhs: Sequence) -> List[Fraction]:
    """Solve m x = rhs exactly; m must be invertible."""
    d = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(m)]
    for col in range(d):
        piv = next((r for r in range(col, d) if a[r][col] != 0), None)
        assert piv is not None, "solve_linear: singular matrix"
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        for c in range(col, d + 1):
            a[col][c] *= inv
        for r in range(d):
            if r != col and a[r][col]:
                f = a[r][col]
                for c in range(col, d + 1):
                    a[r][c] -= f * a[col][c]
    return [a[r][d] for r in range(d)]


def coeffs_in_basis(b: Basis, v: Sequence) -> Tuple[Fraction, ...]:
    """Rational coordinates of v in the basis rows; ValueError if v is not
    in their linear span."""
    assert len(v) == b.n, "coeffs_in_basis: ambient dimension mismatch"
    gram = gram_matrix(b.rows)
    rhs = [inner_product(v, row) for row in b.rows]
    x = solve_linear(gram, rhs)
    recon = [Fraction(0)] * b.n
    for c, row in zip(x, b.rows):
        if c:
            for k, a in enumerate(row):
                recon[k] += c * a
    if any(r != Fraction(e) for r, e in zip(recon, v)):
        raise ValueError("vector is not in the span of the basis")
    return tuple(x)
