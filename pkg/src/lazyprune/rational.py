"""Exact rational matrices.

Ground-truth oracle for the float paths at small dimensions: arithmetic is
performed on arbitrary-precision `fractions.Fraction` values, so results
are exact and associativity holds.  Float inputs convert losslessly
(every binary64 is a dyadic rational).
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import ShapeError, SingularMatrixError


class RationalMatrix:
    """Matrix over the rationals, stored as nested lists of Fraction."""

    __slots__ = ("data",)

    def __init__(self, rows):
        data = [[Fraction(v) for v in row] for row in rows]
        if data and any(len(r) != len(data[0]) for r in data):
            raise ShapeError("ragged rows")
        self.data = data

    @property
    def rows(self) -> int:
        return len(self.data)

    @property
    def cols(self) -> int:
        return len(self.data[0]) if self.data else 0

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    @classmethod
    def identity(cls, d: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(d)] for i in range(d)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def from_dense(cls, dense) -> "RationalMatrix":
        # Fraction(float) is exact, so this loses nothing.
        return cls([[Fraction(float(v)) for v in row] for row in dense.array])

    def to_dense(self):
        from .matrix import DenseMatrix

        return DenseMatrix([[float(v) for v in row] for row in self.data])

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.data == other.data

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix([list(col) for col in zip(*self.data)]) if self.data else RationalMatrix([])

    def matmul(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ShapeError(f"inner dimensions differ: {self.shape} @ {other.shape}")
        bt = list(zip(*other.data))
        return RationalMatrix(
            [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in self.data]
        )

    def __matmul__(self, other):
        return self.matmul(other)

    def add(self, other: "RationalMatrix") -> "RationalMatrix":
        self._same_shape(other)
        return RationalMatrix(
            [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)]
        )

    def sub(self, other: "RationalMatrix") -> "RationalMatrix":
        self._same_shape(other)
        return RationalMatrix(
            [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)]
        )

    def hadamard(self, other: "RationalMatrix") -> "RationalMatrix":
        self._same_shape(other)
        return RationalMatrix(
            [[x * y for x, y in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)]
        )

    def _same_shape(self, other) -> None:
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch: {self.shape} vs {other.shape}")

    def inverse(self) -> "RationalMatrix":
        """Exact inverse by Gauss-Jordan with partial pivoting.

        Pivoting picks the largest |entry| (ties to the lowest row) to keep
        intermediate numerators modest; correctness only needs a nonzero
        pivot.  Raises SingularMatrixError for exactly singular input.
        """
        d = self.rows
        if d != self.cols:
            raise ShapeError(f"inverse of non-square {self.shape}")
        aug = [list(row) + [Fraction(int(i == j)) for j in range(d)] for i, row in enumerate(self.data)]
        for col in range(d):
            pivot_row = max(range(col, d), key=lambda r: (abs(aug[r][col]), -r))
            if aug[pivot_row][col] == 0:
                raise SingularMatrixError(f"exactly singular at column {col}", pivot_index=col)
            if pivot_row != col:
                aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
            pivot = aug[col][col]
            aug[col] = [v / pivot for v in aug[col]]
            for r in range(d):
                if r != col and aug[r][col] != 0:
                    factor = aug[r][col]
                    aug[r] = [v - factor * p for v, p in zip(aug[r], aug[col])]
        return RationalMatrix([row[d:] for row in aug])

    def to_float_array(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.data], dtype=np.float64)

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols})"


def rational_inverse(matrix: RationalMatrix) -> RationalMatrix:
    """Exact inverse; see RationalMatrix.inverse."""
    return matrix.inverse()
