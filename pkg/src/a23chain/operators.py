"""Dense complex operators on small tensor-product spaces.

Every operator carries the ordered list of tensor-factor dimensions it
acts on (each factor is 4- or 6-dimensional here), so embeddings, swaps
and partial traces are unambiguous.  Indexing is row-major with the
FIRST listed factor most significant, which is exactly what np.kron
produces.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np


@dataclass
class LabeledOperator:
    """A square complex matrix on an ordered tensor product of factors."""

    dims: tuple[int, ...]
    mat: np.ndarray

    def __post_init__(self):
        self.dims = tuple(int(d) for d in self.dims)
        self.mat = np.asarray(self.mat, dtype=complex)
        n = prod(self.dims)
        if self.mat.shape != (n, n):
            raise ValueError(f"matrix shape {self.mat.shape} does not match dims {self.dims}")

    @property
    def dim(self) -> int:
        return prod(self.dims)

    def __matmul__(self, other: "LabeledOperator") -> "LabeledOperator":
        if self.dims != other.dims:
            raise ValueError(f"dimension mismatch: {self.dims} vs {other.dims}")
        return LabeledOperator(self.dims, self.mat @ other.mat)

    def __add__(self, other: "LabeledOperator") -> "LabeledOperator":
        if self.dims != other.dims:
            raise ValueError(f"dimension mismatch: {self.dims} vs {other.dims}")
        return LabeledOperator(self.dims, self.mat + other.mat)

    def __sub__(self, other: "LabeledOperator") -> "LabeledOperator":
        if self.dims != other.dims:
            raise ValueError(f"dimension mismatch: {self.dims} vs {other.dims}")
        return LabeledOperator(self.dims, self.mat - other.mat)

    def __rmul__(self, scalar: complex) -> "LabeledOperator":
        return LabeledOperator(self.dims, scalar * self.mat)

    def embed(self, positions, dims) -> "LabeledOperator":
        """Embed into a larger product space, acting on the listed slots."""
        if tuple(self.dims) != tuple(dims[p] for p in positions):
            raise ValueError("slot dimensions do not match operator factors")
        return LabeledOperator(dims, embed(self.mat, positions, dims))

    def partial_trace(self, position: int) -> "LabeledOperator":
        """Trace out one tensor factor."""
        return LabeledOperator(
            tuple(d for i, d in enumerate(self.dims) if i != position),
            partial_trace(self.mat, self.dims, position),
        )

    def transpose_factor(self, position: int) -> "LabeledOperator":
        """Partial transposition in a single factor."""
        n = len(self.dims)
        t = self.mat.reshape(self.dims + self.dims)
        axes = list(range(2 * n))
        axes[position], axes[n + position] = axes[n + position], axes[position]
        return LabeledOperator(self.dims, t.transpose(axes).reshape(self.dim, self.dim))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.mat)))


def embed(mat: np.ndarray, positions, dims) -> np.ndarray:
    """Embed an operator on the slots ``positions`` into prod(dims) space.

    The identity is tensored onto the remaining slots and the axes are
    permuted back to the canonical slot order.
    """
    positions = list(positions)
    n = len(dims)
    rest = [i for i in range(n) if i not in positions]
    order = positions + rest
    d_rest = prod(dims[i] for i in rest) if rest else 1
    big = np.kron(np.asarray(mat, dtype=complex), np.eye(d_rest))
    shape = [dims[i] for i in order]
    t = big.reshape(shape + shape)
    inv = np.argsort(order)
    t = t.transpose(list(inv) + [n + k for k in inv])
    full = prod(dims)
    return np.ascontiguousarray(t.reshape(full, full))


def partial_trace(mat: np.ndarray, dims, position: int) -> np.ndarray:
    """Trace a square matrix over one tensor factor."""
    n = len(dims)
    t = mat.reshape(tuple(dims) + tuple(dims))
    t = np.trace(t, axis1=position, axis2=n + position)
    d = prod(dims) // dims[position]
    return t.reshape(d, d)


def swap_matrix(d1: int, d2: int) -> np.ndarray:
    """Permutation matrix mapping |kl> in C^d1 x C^d2 to |lk> in C^d2 x C^d1."""
    p = np.zeros((d1 * d2, d1 * d2))
    for k in range(d1):
        for l in range(d2):
            p[l * d1 + k, k * d2 + l] = 1.0
    return p


def permutation_16() -> np.ndarray:
    """The 16x16 permutation operator on C^4 x C^4."""
    return swap_matrix(4, 4)


def rel_residual(lhs: np.ndarray, rhs: np.ndarray) -> float:
    """Max-entry deviation of lhs from rhs, relative to the larger scale."""
    scale = max(np.max(np.abs(lhs)), np.max(np.abs(rhs)), 1.0)
    return float(np.max(np.abs(lhs - rhs)) / scale)
