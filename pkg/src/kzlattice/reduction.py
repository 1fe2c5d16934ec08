"""Size-reduction and LLL reduction with the exact Lovasz condition.

All predicates and reduction decisions are exact rational comparisons; GSO
data is recomputed from the current rows after every row mutation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .basis import Basis, is_zero_vector, round_half, squared_norm
from .gso import coeffs_in_basis, gso_from_rows


@dataclass(frozen=True)
class LllParams:
    """Lovasz factor delta, constrained to 1/4 < delta <= 1."""

    delta: Fraction = Fraction(3, 4)

    def __post_init__(self):
        delta = Fraction(self.delta)
        object.__setattr__(self, "delta", delta)
        assert Fraction(1, 4) < delta <= 1, f"delta out of range: {delta}"


@dataclass(frozen=True)
class LllReport:
    swaps: int
    loop_iterations: int


def _reduction_coeffs(mu, i: int) -> List[int]:
    """Integer multipliers c_j such that subtracting sum c_j b_j from b_i
    leaves all |mu_{i,j}| <= 1/2.  Works on a scratch copy of the mu row;
    the basis itself is untouched here."""
    w = [Fraction(m) for m in mu[i][:i]]
    cs = [0] * i
    for j in range(i - 1, -1, -1):
        m = round_half(w[j])
        if m:
            cs[j] = m
            for k in range(j):
                w[k] -= m * mu[j][k]
            w[j] -= m
    return cs


def _apply_row_reduction(rows, i: int, cs: List[int]) -> bool:
    changed = False
    for j, c in enumerate(cs):
        if c:
            changed = True
            rj = rows[j]
            rows[i] = tuple(a - c * b for a, b in zip(rows[i], rj))
    return changed


def _lll_loop(rows: List[tuple], delta: Fraction, generating: bool):
    """Core LLL sweep.  With generating=True the input may contain exactly
    one linear dependency: vanishing GSO norms are tolerated and the row
    that becomes the zero vector is discarded.

    Returns (rows, swaps, iterations).
    """
    swaps = 0
    iterations = 0
    kappa = 1
    while kappa < len(rows):
        iterations += 1
        if generating:
            z = next((t for t, r in enumerate(rows) if is_zero_vector(r)), None)
            if z is not None:
                rows.pop(z)
                kappa = 1
                continue
        mu, bsq = gso_from_rows(rows, allow_zero=generating)
        cs = _reduction_coeffs(mu, kappa)
        if _apply_row_reduction(rows, kappa, cs):
            if generating and is_zero_vector(rows[kappa]):
                continue
            mu, bsq = gso_from_rows(rows, allow_zero=generating)
        # Lovasz: delta * B_{kappa-1} <= B_kappa + mu^2 * B_{kappa-1}
        assert not (generating and bsq[kappa - 1] == 0), (
            "vanished GSO norm should have been swapped to the front"
        )
        if delta * bsq[kappa - 1] <= bsq[kappa] + mu[kappa][kappa - 1] ** 2 * bsq[kappa - 1]:
            kappa += 1
        else:
            rows[kappa - 1], rows[kappa] = rows[kappa], rows[kappa - 1]
            swaps += 1
            kappa = max(kappa - 1, 1)
    return rows, swaps, iterations


def size_reduce(b: Basis) -> Basis:
    """Same lattice, all |mu_{i,j}| <= 1/2; GSO norms are unchanged."""
    rows = list(b.rows)
    for i in range(1, len(rows)):
        mu, _ = gso_from_rows(rows)
        _apply_row_reduction(rows, i, _reduction_coeffs(mu, i))
    return Basis(tuple(rows))


def lll_reduce(b: Basis, params: Optional[LllParams] = None) -> Tuple[Basis, LllReport]:
    """LLL-reduce a basis.

    Args:
        b: a valid (full-rank) basis.
        params: Lovasz factor; defaults to delta = 3/4.

    Returns:
        (reduced basis, report).  The output spans the same lattice, is
        size-reduced, and satisfies every Lovasz condition exactly.
    """
    params = params or LllParams()
    rows, swaps, iterations = _lll_loop(list(b.rows), params.delta, generating=False)
    return Basis(tuple(rows)), LllReport(swaps=swaps, loop_iterations=iterations)


def lll_with_prefix(v0: Sequence[int], b: Basis, params: Optional[LllParams] = None) -> Basis:
    """LLL on the d+1 generating vectors (v0, b_1, ..., b_d) of a rank-d
    lattice.  The single dependent direction is rolled into an actual zero
    vector by the swap passes and discarded.  If v0 is a shortest nonzero
    lattice vector it survives as the first output vector (a swap at the
    front would need delta * ||v0||^2 > ||b||^2 for some nonzero lattice
    vector b, impossible for delta <= 1).

    Raises ValueError if v0 is zero or not in the lattice of b.
    """
    params = params or LllParams()
    v0 = tuple(int(x) for x in v0)
    if is_zero_vector(v0):
        raise ValueError("v0 is zero")
    coords = coeffs_in_basis(b, v0)
    if any(c.denominator != 1 for c in coords):
        raise ValueError("v0 is not a lattice vector of the given basis")
    rows, _, _ = _lll_loop([v0] + list(b.rows), params.delta, generating=True)
    assert len(rows) == b.d, "generating-set LLL did not drop exactly one vector"
    return Basis(tuple(rows))


def is_size_reduced(b: Basis) -> bool:
    mu, _ = gso_from_rows(b.rows)
    half = Fraction(1, 2)
    return all(
        abs(mu[i][j]) <= half for i in range(b.d) for j in range(i)
    )


def is_lll_reduced(b: Basis, params: Optional[LllParams] = None) -> bool:
    params = params or LllParams()
    mu, bsq = gso_from_rows(b.rows)
    if not is_size_reduced(b):
        return False
    return all(
        params.delta * bsq[k - 1] <= bsq[k] + mu[k][k - 1] ** 2 * bsq[k - 1]
        for k in range(1, b.d)
    )


def first_vector_bound_holds(b: Basis) -> bool:
    """Exact integer form of the LLL first-vector bound:
    ||b_1||^(2d) <= 2^(d(d-1)/2) * prod ||b_i*||^2."""
    _, bsq = gso_from_rows(b.rows)
    d = b.d
    lhs = Fraction(squared_norm(b.rows[0])) ** d
    rhs = Fraction(2) ** (d * (d - 1) // 2)
    for v in bsq:
        rhs *= v
    return lhs <= rhs
