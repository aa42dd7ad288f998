"""Scalar functionals: l2/l4 norms, the Gowers u2 fourth power by three
independent routes, and exact integer additive energy.

The three u2 routes are kept permanently because they are oracles for one
another:

  u2_fourth_naive      O(N^3) summation straight from the definition
  u2_fourth_fast       sum of fourth powers of the expectation spectrum
  u2_fourth_by_cosets  the rewriting over cosets of ker pi_ij

Energy certification numbers always come from the exact integer paths
(additive_energy, energy_via_krawtchouk); the float routes never feed them.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .hypercube import (
    PairIndex,
    SphereSpec,
    check_pair,
    check_point,
    pair_coset,
    pair_mask,
    sphere_points,
)
from .spectral import DenseFunction, fwht_in_place

# O(N^3) routes become unreasonable past 2^8; exact energy tables past 2^20.
NAIVE_MAX_DIMENSION = 8
ENERGY_MAX_DIMENSION = 20


def l2_norm(f: DenseFunction) -> float:
    """(E_x f(x)^2)^(1/2) under the uniform measure on F_2^n."""
    return float(np.sqrt(np.mean(np.square(f.values))))


def l4_fourth(f: DenseFunction) -> float:
    """E_x f(x)^4."""
    return float(np.mean(np.square(np.square(f.values))))


@lru_cache(maxsize=None)
def _xor_grid_flat(n: int) -> np.ndarray:
    """Flattened 2^n x 2^n table of a ^ b, read-only."""
    idx = np.arange(1 << n, dtype=np.intp)
    grid = np.bitwise_xor.outer(idx, idx).ravel()
    grid.setflags(write=False)
    return grid


def _quadruple_sum(v1: np.ndarray, v2: np.ndarray, v3: np.ndarray, v4: np.ndarray, m: int) -> float:
    """sum over a1,a2,a3 in F_2^m of v1(a1) v2(a2) v3(a3) v4(a1^a2^a3).

    Literal summation (no transform), vectorized over (a2, a3) per a1.
    """
    grid = _xor_grid_flat(m)
    pair_prod = np.outer(v2, v3).ravel()
    total = 0.0
    for a1 in range(v1.shape[0]):
        c = v1[a1]
        if c != 0.0:
            total += c * float(pair_prod @ v4[grid ^ a1])
    return total


def u2_fourth_naive(f: DenseFunction) -> float:
    """Ground-truth oracle: (1/N^3) sum_{a1,a2,a3} f(a1)f(a2)f(a3)f(a1+a2+a3).

    The fourth point is a4 = a1+a2+a3 (characteristic 2). O(N^3); refuses
    dimensions above NAIVE_MAX_DIMENSION.
    """
    if f.n > NAIVE_MAX_DIMENSION:
        raise ValueError(f"naive u2 route is O(N^3); n={f.n} exceeds {NAIVE_MAX_DIMENSION}")
    v = f.values
    total = _quadruple_sum(v, v, v, v, f.n)
    return total / float(v.shape[0]) ** 3


def u2_fourth_fast(f: DenseFunction) -> float:
    """sum_xi fhat(xi)^4 over the expectation-normalized spectrum; O(N log N)."""
    w = f.values.copy()
    fwht_in_place(w)
    w /= w.shape[0]
    np.square(w, out=w)
    return float(w @ w)


def coset_bracket(f: DenseFunction, p: PairIndex, b1: int, b2: int, b3: int) -> float:
    """One bracketed term of the coset rewriting.

    Sums f(a1)f(a2)f(a3)f(a4) over a_t in the coset of b_t with
    a1+a2 = a3+a4; b4 = b1+b2+b3 is determined. The representatives must be
    canonical (bits i and j clear). For sphere-supported f the sum has 1, 2
    or 8 surviving terms depending on how many b_t have weight k-1.
    """
    check_pair(p, f.n)
    mask = pair_mask(p)
    for b in (b1, b2, b3):
        check_point(b, f.n)
        if b & mask:
            raise ValueError(f"representative {b:#b} must have bits {p} clear")
    v = f.values
    total = 0.0
    for a1 in pair_coset(b1, p):
        for a2 in pair_coset(b2, p):
            for a3 in pair_coset(b3, p):
                total += v[a1] * v[a2] * v[a3] * v[a1 ^ a2 ^ a3]
    return total


def _pair_offsets(p: PairIndex) -> tuple[int, int, int, int]:
    return pair_coset(0, p)


@lru_cache(maxsize=None)
def _canonical_points(n: int, p: PairIndex) -> np.ndarray:
    """Sorted masks with bits i, j clear; index order is XOR-compatible.

    Packing out the two cleared bit positions is an order-preserving group
    isomorphism onto F_2^(n-2), so canon[c ^ c'] == canon[c] ^ canon[c'].
    """
    mask = pair_mask(p)
    pts = np.array([b for b in range(1 << n) if not b & mask], dtype=np.intp)
    pts.setflags(write=False)
    return pts


def coset_bracket_grid(f: DenseFunction, p: PairIndex) -> np.ndarray:
    """All brackets at once: grid[c1,c2,c3] = coset_bracket(f, p, canon[c1], canon[c2], canon[c3]).

    canon is the sorted list of canonical representatives. O(N^3) work in
    4^3 vectorized passes; refuses dimensions above NAIVE_MAX_DIMENSION.
    """
    if f.n < 2:
        raise ValueError("coset structure needs n >= 2")
    if f.n > NAIVE_MAX_DIMENSION:
        raise ValueError(f"bracket grid is O(N^3); n={f.n} exceeds {NAIVE_MAX_DIMENSION}")
    check_pair(p, f.n)
    v = f.values
    canon = _canonical_points(f.n, p)
    m = f.n - 2
    size = 1 << m
    compact = np.arange(size, dtype=np.intp)
    x3 = np.bitwise_xor.outer(np.bitwise_xor.outer(compact, compact), compact)
    offsets = _pair_offsets(p)
    grid = np.zeros((size, size, size))
    for o1 in offsets:
        g1 = v[canon ^ o1]
        for o2 in offsets:
            g2 = v[canon ^ o2]
            for o3 in offsets:
                g3 = v[canon ^ o3]
                g4 = v[canon ^ (o1 ^ o2 ^ o3)]
                grid += g1[:, None, None] * g2[None, :, None] * g3[None, None, :] * g4[x3]
    return grid


def u2_fourth_by_cosets(f: DenseFunction, p: PairIndex) -> float:
    """u2^4 via the rewriting over cosets of ker pi_ij.

    Equals (1/N^3) times the sum of coset_bracket over all canonical
    representative triples (b1, b2, b3), with b4 = b1+b2+b3; equivalently
    (1/4^3) times the representative-quadruple average. Agrees with
    u2_fourth_naive for every pair p.
    """
    if f.n < 2:
        raise ValueError("coset route needs n >= 2")
    if f.n > NAIVE_MAX_DIMENSION:
        raise ValueError(f"coset u2 route is O(N^3); n={f.n} exceeds {NAIVE_MAX_DIMENSION}")
    check_pair(p, f.n)
    v = f.values
    canon = _canonical_points(f.n, p)
    m = f.n - 2
    offsets = _pair_offsets(p)
    total = 0.0
    for o1 in offsets:
        g1 = v[canon ^ o1]
        for o2 in offsets:
            g2 = v[canon ^ o2]
            for o3 in offsets:
                g3 = v[canon ^ o3]
                g4 = v[canon ^ (o1 ^ o2 ^ o3)]
                total += _quadruple_sum(g1, g2, g3, g4, m)
    return total / float(v.shape[0]) ** 3


def additive_energy(points, n: int) -> int:
    """Exact number of quadruples (a1,a2,a3,a4) in A^4 with a1+a2 = a3+a4.

    Computed as (1/N) sum_xi Ahat(xi)^4 with the integer counting-measure
    transform of the indicator. The transform runs in int64 (intermediates
    are bounded by |A| <= 2^20, far from overflow); the fourth-power sum is
    taken in arbitrary-precision Python ints, so the whole path is exact.
    """
    if not 0 <= n <= ENERGY_MAX_DIMENSION:
        raise ValueError(f"exact energy path supports 0 <= n <= {ENERGY_MAX_DIMENSION}, got {n}")
    pts = set(points)
    if not pts:
        return 0
    for x in pts:
        check_point(x, n)
    table = np.zeros(1 << n, dtype=np.int64)
    table[sorted(pts)] = 1
    fwht_in_place(table)
    values, counts = np.unique(table, return_counts=True)
    total = sum(int(c) * int(v) ** 4 for v, c in zip(values.tolist(), counts.tolist()))
    count, rem = divmod(total, 1 << n)
    if rem:
        raise ArithmeticError("fourth-power sum not divisible by 2^n; transform is corrupted")
    return count


def mu_constant(s: SphereSpec) -> Fraction:
    """The ratio attained by the constant function on S(n,k): E(S) / (2^n |S|^2).

    Exact rational from the integer energy.
    """
    energy = additive_energy(sphere_points(s), s.n)
    return Fraction(energy, (1 << s.n) * s.size**2)


def krawtchouk(n: int, k: int, w: int) -> int:
    """K_k(w) = sum_j (-1)^j C(w,j) C(n-w,k-j).

    The counting-measure transform of a weight-k sphere indicator at any
    character of weight w. Exact integer.
    """
    if not 0 <= w <= n:
        raise ValueError(f"weight argument must satisfy 0 <= w <= n, got w={w}, n={n}")
    lo = max(0, k - (n - w))
    hi = min(w, k)
    return sum((-1) ** j * math.comb(w, j) * math.comb(n - w, k - j) for j in range(lo, hi + 1))


def energy_via_krawtchouk(s: SphereSpec) -> int:
    """Closed-form cross-check of additive_energy for spheres.

    E(S(n,k)) = (1/2^n) sum_w C(n,w) K_k(w)^4, all in exact integers.
    """
    total = sum(math.comb(s.n, w) * krawtchouk(s.n, s.k, w) ** 4 for w in range(s.n + 1))
    count, rem = divmod(total, 1 << s.n)
    if rem:
        raise ArithmeticError("Krawtchouk fourth-moment sum not divisible by 2^n")
    return count
