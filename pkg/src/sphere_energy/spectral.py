"""Walsh-Hadamard transforms over F_2^n with explicit normalization conventions.

Two scalings appear throughout the package and are easy to mix up, so every
Spectrum carries a tag:

  expectation   coeffs(xi) = (1/2^n) sum_x f(x) (-1)^<xi,x>
  counting      coeffs(xi) =         sum_x f(x) (-1)^<xi,x>

The raw in-place butterfly computes the counting form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hypercube import MAX_DIMENSION

NORMALIZATIONS = ("expectation", "counting")


@dataclass
class DenseFunction:
    """A real-valued table f : F_2^n -> R of length 2^n, indexed by point bitmask."""

    n: int
    values: np.ndarray

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_DIMENSION:
            raise ValueError(f"dimension must be in [0, {MAX_DIMENSION}], got n={self.n}")
        self.values = np.ascontiguousarray(self.values, dtype=np.float64)
        if self.values.shape != (1 << self.n,):
            raise ValueError(
                f"table for n={self.n} must have length {1 << self.n}, got shape {self.values.shape}"
            )
        if not np.all(np.isfinite(self.values)):
            raise ValueError("function values must be finite")

    @classmethod
    def zeros(cls, n: int) -> "DenseFunction":
        return cls(n, np.zeros(1 << n))

    @classmethod
    def constant(cls, n: int, value: float) -> "DenseFunction":
        return cls(n, np.full(1 << n, float(value)))

    @classmethod
    def indicator(cls, n: int, points) -> "DenseFunction":
        """The 0/1 indicator of a set of points."""
        values = np.zeros(1 << n)
        values[list(points)] = 1.0
        return cls(n, values)

    def copy(self) -> "DenseFunction":
        return DenseFunction(self.n, self.values.copy())


@dataclass
class Spectrum:
    """Walsh-Hadamard coefficients of length 2^n, indexed by character bitmask."""

    n: int
    coeffs: np.ndarray
    normalization: str = "expectation"

    def __post_init__(self) -> None:
        if self.normalization not in NORMALIZATIONS:
            raise ValueError(f"unknown normalization {self.normalization!r}")
        self.coeffs = np.ascontiguousarray(self.coeffs, dtype=np.float64)
        if self.coeffs.shape != (1 << self.n,):
            raise ValueError(
                f"spectrum for n={self.n} must have length {1 << self.n}, got shape {self.coeffs.shape}"
            )


def fwht_in_place(table: np.ndarray) -> np.ndarray:
    """In-place unnormalized transform t(xi) := sum_x t(x) (-1)^<xi,x>.

    Iterative O(N log N) butterfly over a length-2^n table; applying it twice
    multiplies the original table by 2^n. Keeps the input dtype, so integer
    tables transform exactly (intermediates are partial signed sums bounded
    by sum |t|).
    """
    size = table.shape[0]
    if size == 0 or size & (size - 1):
        raise ValueError(f"table length must be a power of two, got {size}")
    h = 1
    while h < size:
        x = table.reshape(-1, 2, h)
        even = x[:, 0, :] + x[:, 1, :]
        odd = x[:, 0, :] - x[:, 1, :]
        x[:, 0, :] = even
        x[:, 1, :] = odd
        h *= 2
    return table


def fourier_forward(f: DenseFunction) -> Spectrum:
    """Expectation-normalized spectrum: coeffs(xi) = E_x f(x) (-1)^<xi,x>."""
    coeffs = f.values.copy()
    fwht_in_place(coeffs)
    coeffs /= coeffs.shape[0]
    return Spectrum(f.n, coeffs, "expectation")


def fourier_inverse(s: Spectrum) -> DenseFunction:
    """f(x) = sum_xi coeffs(xi) (-1)^<xi,x>; inverts fourier_forward."""
    if s.normalization != "expectation":
        raise ValueError("fourier_inverse requires an expectation-normalized spectrum")
    values = s.coeffs.copy()
    fwht_in_place(values)
    return DenseFunction(s.n, values)
