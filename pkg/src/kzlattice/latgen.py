"""Deterministic lattice instance generation and brute-force oracles.

The PRNG is splitmix64 (Steele-Lea-Flood): state advances by the 64-bit
golden-gamma constant 0x9E3779B97F4A7C15 and the output mixing multiplies
by 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB with xor-shifts 30/27/31.
First output for seed 0 is 0xE220A8397B1DCDAF.  Any implementation of the
same algorithm reproduces the instances bit for bit.

The SVP/CVP oracles do an exhaustive scan of a complete coefficient box.
They share no traversal logic with the enumeration module: a candidate is
accepted or rejected on its fully assembled vector only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, isqrt
from typing import Optional, Tuple

try:
    import numpy as _np
except ImportError:  # the oracles fall back to pure python
    _np = None

from .basis import Basis, round_half, squared_norm, vec_sub
from .gso import compute_gso
from .reduction import lll_reduce

_MASK64 = (1 << 64) - 1

KINDS = ("identity", "diagonal", "knapsack", "uniform-unimodular")


class GenError(ValueError):
    pass


class OracleBoxTooLarge(RuntimeError):
    pass


class SplitMix64:
    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        # plain modulo reduction; the tiny bias is irrelevant here and
        # keeps cross-language reimplementation trivial
        assert n >= 1
        return self.next_u64() % n


@dataclass(frozen=True)
class GenSpec:
    """Parameters of a generated instance.  Same spec -> same basis,
    on every platform."""

    kind: str
    dim: int
    entry_bits: int = 4
    seed: int = 0
    ambient: Optional[int] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise GenError(f"unknown kind {self.kind!r}")
        if self.dim < 1:
            raise GenError("dim must be >= 1")
        if self.entry_bits < 0:
            raise GenError("entry_bits must be >= 0")
        if self.seed < 0:
            raise GenError("seed must be >= 0")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "dim": self.dim,
            "entry_bits": self.entry_bits,
            "seed": self.seed,
            "ambient": self.ambient,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GenSpec":
        return cls(
            kind=d["kind"],
            dim=int(d["dim"]),
            entry_bits=int(d.get("entry_bits", 4)),
            seed=int(d.get("seed", 0)),
            ambient=d.get("ambient"),
        )


def generate(spec: GenSpec) -> Basis:
    """Full-rank integer basis for the spec; deterministic in (spec)."""
    rng = SplitMix64(spec.seed)
    d = spec.dim
    top = 1 << spec.entry_bits

    if spec.kind == "identity":
        n = spec.ambient if spec.ambient is not None else d
        if n < d:
            raise GenError("ambient smaller than dim")
        rows = tuple(tuple(1 if j == i else 0 for j in range(n)) for i in range(d))

    elif spec.kind == "diagonal":
        if spec.ambient not in (None, d):
            raise GenError("diagonal kind needs ambient == dim")
        diag = [1 + rng.below(top) for _ in range(d)]
        rows = tuple(
            tuple(diag[i] if j == i else 0 for j in range(d)) for i in range(d)
        )

    elif spec.kind == "knapsack":
        # classic: weight column followed by the identity, ambient d+1
        if spec.ambient not in (None, d + 1):
            raise GenError("knapsack kind needs ambient == dim + 1")
        weights = [1 + rng.below(top) for _ in range(d)]
        rows = tuple(
            tuple([weights[i]] + [1 if j == i else 0 for j in range(d)])
            for i in range(d)
        )

    elif spec.kind == "uniform-unimodular":
        # random positive diagonal times a random unimodular factor built
        # from 3d elementary row operations with coefficients in {-2..2}
        if spec.ambient not in (None, d):
            raise GenError("uniform-unimodular kind needs ambient == dim")
        diag = [1 + rng.below(top) for _ in range(d)]
        u = [[1 if j == i else 0 for j in range(d)] for i in range(d)]
        if d > 1:
            for _ in range(3 * d):
                i = rng.below(d)
                j = rng.below(d - 1)
                if j >= i:
                    j += 1
                c = (-2, -1, 1, 2)[rng.below(4)]
                u[i] = [a + c * b for a, b in zip(u[i], u[j])]
        for i in range(d):
            if rng.below(2):
                u[i] = [-a for a in u[i]]
        rows = tuple(tuple(u[i][j] * diag[j] for j in range(d)) for i in range(d))

    else:  # pragma: no cover - guarded by GenSpec
        raise GenError(spec.kind)

    b = Basis(rows)
    compute_gso(b)  # rank guarantee
    return b


def _sqrt_upper(q: Fraction) -> Fraction:
    """A rational >= sqrt(q)."""
    q = Fraction(q)
    assert q >= 0
    return Fraction(isqrt(q.numerator * q.denominator) + 1, q.denominator)


def _svp_box_radii(g, a_bound) -> list:
    # complete hull: any |sum x_i b_i|^2 <= A satisfies |x_i| <= R_i with
    # R_i = ceil( sqrt(A / B_i) + sum_{j>i} |mu_{j,i}| R_j )
    d = g.d
    radii = [0] * d
    for i in reversed(range(d)):
        bound = _sqrt_upper(Fraction(a_bound) / g.bstar_sq[i])
        for j in range(i + 1, d):
            if radii[j]:
                bound += abs(g.mu[j][i]) * radii[j]
        radii[i] = ceil(bound)
    return radii


def _box_total(radii) -> int:
    total = 1
    for r in radii:
        total *= 2 * r + 1
    return total


def _svp_scan_python(rows, radii):
    d = len(rows)
    n = len(rows[0])
    best = None
    wit = []
    xs = [0] * d

    def rec(i, vec):
        nonlocal best, wit
        if i == d:
            if not any(xs):
                return
            ns = sum(a * a for a in vec)
            if best is None or ns < best:
                best = ns
                wit = [tuple(vec)]
            elif ns == best:
                wit.append(tuple(vec))
            return
        row = rows[i]
        for x in range(-radii[i], radii[i] + 1):
            xs[i] = x
            rec(i + 1, [a + x * b for a, b in zip(vec, row)])
        xs[i] = 0

    rec(0, [0] * n)
    return best, wit


def _svp_scan_numpy(rows, radii):
    d = len(rows)
    mat = _np.array(rows, dtype=_np.int64)
    sizes = [2 * r + 1 for r in radii]
    total = _box_total(radii)
    best = None
    wit = []
    chunk = 200_000
    for start in range(0, total, chunk):
        idx = _np.arange(start, min(start + chunk, total), dtype=_np.int64)
        coeff = _np.empty((len(idx), d), dtype=_np.int64)
        rem = idx
        for i in range(d):
            coeff[:, i] = rem % sizes[i] - radii[i]
            rem = rem // sizes[i]
        vecs = coeff @ mat
        norms = _np.einsum("ij,ij->i", vecs, vecs)
        nonzero = _np.any(coeff != 0, axis=1)
        if not nonzero.any():
            continue
        norms = _np.where(nonzero, norms, _np.iinfo(_np.int64).max)
        m = int(norms.min())
        if best is None or m < best:
            best = m
            wit = [tuple(int(x) for x in v) for v in vecs[norms == m]]
        elif m == best:
            wit.extend(tuple(int(x) for x in v) for v in vecs[norms == m])
    return best, wit


def _numpy_safe(rows, radii) -> bool:
    if _np is None:
        return False
    coord = 0
    for r, row in zip(radii, rows):
        coord += r * max(abs(a) for a in row)
    return len(rows[0]) * coord * coord < (1 << 62)


def oracle_svp(b: Basis, box_cap: int = 60_000_000) -> Tuple[int, frozenset]:
    """(squared minimum, all vectors attaining it), by exhaustive scan of a
    complete coefficient box around an LLL-reduced basis of the lattice."""
    reduced, _ = lll_reduce(b)
    g = compute_gso(reduced)
    a_bound = squared_norm(reduced.rows[0])
    radii = _svp_box_radii(g, a_bound)
    if _box_total(radii) > box_cap:
        raise OracleBoxTooLarge(f"box of {_box_total(radii)} points exceeds cap")
    if _numpy_safe(reduced.rows, radii):
        best, wit = _svp_scan_numpy(reduced.rows, radii)
    else:
        best, wit = _svp_scan_python(reduced.rows, radii)
    assert best is not None and best <= a_bound
    return best, frozenset(wit)


def oracle_cvp(b: Basis, target, box_cap: int = 2_000_000) -> Tuple[int, frozenset]:
    """(squared distance, all closest lattice vectors) for an integer
    target, by exhaustive scan of a box around the nearest-plane seed."""
    target = tuple(int(x) for x in target)
    assert len(target) == b.n, "oracle_cvp: ambient dimension mismatch"
    reduced, _ = lll_reduce(b)
    g = compute_gso(reduced)
    d = reduced.d

    # target coordinates in the GSO frame: s_i = <t,b_i> - sum mu_{i,j} s_j
    s = []
    for i in range(d):
        si = Fraction(sum(a * t for a, t in zip(reduced.rows[i], target)))
        for j in range(i):
            si -= g.mu[i][j] * s[j]
        s.append(si)
    tstar = [s[i] / g.bstar_sq[i] for i in range(d)]

    # nearest-plane seed and its in-span squared distance
    x0 = [0] * d
    span_dist = Fraction(0)
    for i in reversed(range(d)):
        e = tstar[i] - sum(g.mu[j][i] * x0[j] for j in range(i + 1, d))
        x0[i] = round_half(e)
        span_dist += (x0[i] - e) ** 2 * g.bstar_sq[i]

    # complete box: |x_i - x0_i| <= sqrt(A/B_i) + sum |mu_{j,i}| R_j + 1/2
    radii = [0] * d
    for i in reversed(range(d)):
        bound = _sqrt_upper(span_dist / g.bstar_sq[i]) + Fraction(1, 2)
        for j in range(i + 1, d):
            if radii[j]:
                bound += abs(g.mu[j][i]) * radii[j]
        radii[i] = ceil(bound)
    if _box_total(radii) > box_cap:
        raise OracleBoxTooLarge(f"box of {_box_total(radii)} points exceeds cap")

    best = None
    wit = []
    xs = [0] * d

    def rec(i, vec):
        nonlocal best, wit
        if i == d:
            dist = sum(a * a for a in vec_sub(vec, target))
            if best is None or dist < best:
                best = dist
                wit = [tuple(vec)]
            elif dist == best:
                wit.append(tuple(vec))
            return
        row = reduced.rows[i]
        for x in range(x0[i] - radii[i], x0[i] + radii[i] + 1):
            xs[i] = x
            rec(i + 1, [a + x * b for a, b in zip(vec, row)])

    rec(0, [0] * b.n)
    assert best is not None
    return best, frozenset(wit)
