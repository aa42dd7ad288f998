"""Bit-level combinatorics of F_2^n: points, weights, spheres, coordinate pairs.

Points are plain ints used as bitmasks relative to an ambient dimension n;
bit position i-1 holds the coefficient of the basis vector e_i. Coordinate
indices in the API are 1-based (e_1 .. e_n), bit positions 0-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

MAX_DIMENSION = 24

Point = int
PairIndex = tuple[int, int]


@dataclass(frozen=True)
class SphereSpec:
    """The Hamming sphere S(n, k): all n-bit masks with exactly k ones."""

    n: int
    k: int

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_DIMENSION:
            raise ValueError(f"dimension must be in [0, {MAX_DIMENSION}], got n={self.n}")
        if not 0 <= self.k <= self.n:
            raise ValueError(f"weight must satisfy 0 <= k <= n, got k={self.k}, n={self.n}")

    @property
    def size(self) -> int:
        return math.comb(self.n, self.k)


def check_point(x: Point, n: int) -> None:
    """Reject masks with bits at positions >= n."""
    if x < 0 or x >> n:
        raise ValueError(f"point {x:#b} is not a valid mask for dimension {n}")


def check_pair(p: PairIndex, n: int) -> None:
    i, j = p
    if not 1 <= i < j <= n:
        raise ValueError(f"pair indices must satisfy 1 <= i < j <= n, got {p} for n={n}")


def pair_mask(p: PairIndex) -> int:
    """Bitmask of e_i + e_j."""
    i, j = p
    return (1 << (i - 1)) | (1 << (j - 1))


def all_pairs(n: int) -> list[PairIndex]:
    """All coordinate pairs (i, j) with 1 <= i < j <= n, lexicographic."""
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def weight(x: Point) -> int:
    """Hamming weight: number of ones in the mask."""
    return x.bit_count()


def sphere_points(s: SphereSpec) -> list[Point]:
    """All C(n,k) weight-k masks in strictly increasing order.

    The successor of each mask is computed with Gosper's next-combination
    bit trick, so enumeration is constant work per point.
    """
    if s.k == 0:
        return [0]
    v = (1 << s.k) - 1
    limit = 1 << s.n
    out = []
    while v < limit:
        out.append(v)
        low = v & -v
        ripple = v + low
        v = ripple | (((v ^ ripple) >> 2) // low)
    return out


def pair_parity(x: Point, p: PairIndex) -> int:
    """The inner product <x, e_i + e_j>: 0 when bits i and j agree, 1 when they differ."""
    i, j = p
    return ((x >> (i - 1)) ^ (x >> (j - 1))) & 1


def flip_pair(x: Point, p: PairIndex) -> Point:
    """x + e_i + e_j. An involution; preserves weight iff bits i and j differ."""
    return x ^ pair_mask(p)


def project_pair(x: Point, p: PairIndex) -> Point:
    """Canonical representative of x's coset {b, b+e_i, b+e_j, b+e_i+e_j}: bits i, j cleared."""
    return x & ~pair_mask(p)


def pair_coset(b: Point, p: PairIndex) -> tuple[Point, Point, Point, Point]:
    """The four coset members over canonical representative b (bits i, j of b must be clear)."""
    i, j = p
    ei = 1 << (i - 1)
    ej = 1 << (j - 1)
    return b, b | ei, b | ej, b | ei | ej


def sphere_connected(s: SphereSpec) -> bool:
    """BFS check that S(n,k) is connected under moves x -> x + e_i + e_j of equal weight.

    Neighbors of x are obtained by flipping one set bit and one clear bit,
    i.e. exactly the weight-preserving pair flips.
    """
    pts = sphere_points(s)
    if len(pts) <= 1:
        return True
    seen = {pts[0]}
    frontier = [pts[0]]
    positions = range(s.n)
    while frontier:
        x = frontier.pop()
        ones = [i for i in positions if (x >> i) & 1]
        zeros = [i for i in positions if not (x >> i) & 1]
        for i in ones:
            for j in zeros:
                y = x ^ (1 << i) ^ (1 << j)
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
    return len(seen) == len(pts)
