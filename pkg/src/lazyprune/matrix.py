"""Dense float64 matrices with pluggable multiply backends and exact
per-phase operation accounting.

Index conventions are half-open [lo, hi) and 0-based everywhere.  Addition
counters follow the dot-product convention: accumulating t terms costs t-1
additions (this matches the classical matmul contract of
rows*(inner-1)*cols adds).  Square roots are charged to the div counter,
which counts "hard" scalar ops (divisions and roots).
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ConfigError, FormatError, NonFiniteError, ShapeError, SingularMatrixError, SymmetryError
from .ledger import FlopLedger, OpCounts

__all__ = [
    "CLASSICAL",
    "DenseMatrix",
    "MatMulBackend",
    "load_csv",
    "load_fmat",
    "matmul",
    "max_abs_diff",
    "save_csv",
    "save_fmat",
    "spd_inverse",
    "strassen_backend",
    "strassen_flop_count",
]

FMAT_MAGIC = b"FMAT\x01\x00\x00\x00"

# Default Strassen cutoff: products with any dimension at or below this are
# done classically.  32 keeps the recursion profitable already for the
# 64-wide lazy blocks exercised by the benchmarks.
DEFAULT_STRASSEN_THRESHOLD = 32


@dataclass(frozen=True)
class MatMulBackend:
    """Multiply algorithm selector: classical triple loop or Strassen."""

    kind: str
    threshold: int = DEFAULT_STRASSEN_THRESHOLD

    def __post_init__(self):
        if self.kind not in ("classical", "strassen"):
            raise ConfigError(f"unknown backend kind: {self.kind!r}")
        if self.kind == "strassen" and self.threshold < 1:
            raise ConfigError("strassen threshold must be >= 1")

    @property
    def label(self) -> str:
        if self.kind == "classical":
            return "classical"
        return f"strassen@{self.threshold}"


CLASSICAL = MatMulBackend("classical")


def strassen_backend(threshold: int = DEFAULT_STRASSEN_THRESHOLD) -> MatMulBackend:
    return MatMulBackend("strassen", threshold)


def _require_finite(arr: np.ndarray, context: str) -> None:
    if arr.size and not np.all(np.isfinite(arr)):
        raise NonFiniteError(f"non-finite values in {context}")


class DenseMatrix:
    """Row-major float64 matrix.

    Values are treated as immutable after construction; the only sanctioned
    write path is through an explicit `view`, and a matrix must have a
    single writer at a time.  The constructor copies its input by default so
    caller-held buffers cannot alias library state.
    """

    __slots__ = ("array",)

    def __init__(self, data, copy: bool = True, validate: bool = True):
        if copy:
            arr = np.array(data, dtype=np.float64)
        else:
            arr = np.asarray(data, dtype=np.float64)
        if arr.ndim != 2:
            raise ShapeError(f"expected a 2-D matrix, got ndim={arr.ndim}")
        if validate:
            _require_finite(arr, "matrix data")
        self.array = arr

    @property
    def rows(self) -> int:
        return self.array.shape[0]

    @property
    def cols(self) -> int:
        return self.array.shape[1]

    @property
    def shape(self) -> tuple:
        return self.array.shape

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "DenseMatrix":
        return cls(np.zeros((rows, cols)), copy=False, validate=False)

    @classmethod
    def identity(cls, d: int) -> "DenseMatrix":
        return cls(np.eye(d), copy=False, validate=False)

    def view(self, row_lo: int, row_hi: int, col_lo: int, col_hi: int) -> "DenseMatrix":
        """Zero-copy view of the half-open block [row_lo, row_hi) x [col_lo, col_hi).

        Writes through the view are visible in the parent.  Degenerate
        (empty) ranges are allowed.
        """
        if not (0 <= row_lo <= row_hi <= self.rows and 0 <= col_lo <= col_hi <= self.cols):
            raise ShapeError(
                f"slice [{row_lo},{row_hi})x[{col_lo},{col_hi}) out of bounds "
                f"for {self.rows}x{self.cols}"
            )
        return DenseMatrix(self.array[row_lo:row_hi, col_lo:col_hi], copy=False, validate=False)

    def copy(self) -> "DenseMatrix":
        return DenseMatrix(self.array, copy=True, validate=False)

    def transpose(self) -> "DenseMatrix":
        return DenseMatrix(np.ascontiguousarray(self.array.T), copy=False, validate=False)

    def __repr__(self) -> str:
        return f"DenseMatrix({self.rows}x{self.cols})"


def max_abs_diff(a: DenseMatrix, b: DenseMatrix) -> float:
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch: {a.shape} vs {b.shape}")
    if a.array.size == 0:
        return 0.0
    return float(np.max(np.abs(a.array - b.array)))


def _contig(arr: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(arr, dtype=np.float64)


def _classical_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros((a.shape[0], b.shape[1]))
    if a.shape[0] and a.shape[1] and b.shape[1]:
        _kernels.matmul_classical(_contig(a), _contig(b), out)
    return out


def _strassen_rec(a: np.ndarray, b: np.ndarray, threshold: int, counts: list) -> np.ndarray:
    m, k = a.shape
    n = b.shape[1]
    if m <= threshold or k <= threshold or n <= threshold:
        counts[0] += m * k * n
        counts[1] += m * max(k - 1, 0) * n
        return _classical_product(a, b)
    # Pad odd dimensions to the next even size at this level only; deeper
    # levels re-pad their own quadrants.
    m2, k2, n2 = m + (m & 1), k + (k & 1), n + (n & 1)
    ma, ka, na = m2 // 2, k2 // 2, n2 // 2
    ap = np.zeros((m2, k2))
    ap[:m, :k] = a
    bp = np.zeros((k2, n2))
    bp[:k, :n] = b
    a11, a12 = ap[:ma, :ka], ap[:ma, ka:]
    a21, a22 = ap[ma:, :ka], ap[ma:, ka:]
    b11, b12 = bp[:ka, :na], bp[:ka, na:]
    b21, b22 = bp[ka:, :na], bp[ka:, na:]
    # 5 operand sums on each side plus 8 combination adds below.
    counts[1] += 5 * ma * ka + 5 * ka * na + 8 * ma * na
    m1 = _strassen_rec(a11 + a22, b11 + b22, threshold, counts)
    m2_ = _strassen_rec(a21 + a22, b11, threshold, counts)
    m3 = _strassen_rec(a11, b12 - b22, threshold, counts)
    m4 = _strassen_rec(a22, b21 - b11, threshold, counts)
    m5 = _strassen_rec(a11 + a12, b22, threshold, counts)
    m6 = _strassen_rec(a21 - a11, b11 + b12, threshold, counts)
    m7 = _strassen_rec(a12 - a22, b21 + b22, threshold, counts)
    out = np.empty((m2, n2))
    out[:ma, :na] = m1 + m4 - m5 + m7
    out[:ma, na:] = m3 + m5
    out[ma:, :na] = m2_ + m4
    out[ma:, na:] = m1 - m2_ + m3 + m6
    return np.ascontiguousarray(out[:m, :n])


def strassen_flop_count(m: int, k: int, n: int, threshold: int = DEFAULT_STRASSEN_THRESHOLD) -> OpCounts:
    """Exact scalar-op counts of the padded Strassen recursion for an
    (m x k) @ (k x n) product, without performing it.

    Mirrors `_strassen_rec` one-to-one; `matmul` with the strassen backend
    charges exactly these numbers.
    """
    if threshold < 1:
        raise ConfigError("strassen threshold must be >= 1")
    if m <= threshold or k <= threshold or n <= threshold:
        return OpCounts(mul=m * k * n, add=m * max(k - 1, 0) * n)
    ma, ka, na = (m + (m & 1)) // 2, (k + (k & 1)) // 2, (n + (n & 1)) // 2
    sub = strassen_flop_count(ma, ka, na, threshold)
    return OpCounts(
        mul=7 * sub.mul,
        add=7 * sub.add + 5 * ma * ka + 5 * ka * na + 8 * ma * na,
    )


def _matmul_array(
    a: np.ndarray,
    b: np.ndarray,
    backend: MatMulBackend = CLASSICAL,
    ledger: FlopLedger | None = None,
    phase: str | None = None,
) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"inner dimensions differ: {a.shape} @ {b.shape}")
    if ledger is not None and phase is None:
        raise ValueError("a ledger phase is required when a ledger is given")
    if backend.kind == "classical":
        out = _classical_product(a, b)
        if ledger is not None:
            m, k = a.shape
            n = b.shape[1]
            ledger.charge(phase, mul=m * k * n, add=m * max(k - 1, 0) * n)
    else:
        counts = [0, 0]
        out = _strassen_rec(a, b, backend.threshold, counts)
        if ledger is not None:
            ledger.charge(phase, mul=counts[0], add=counts[1])
    _require_finite(out, "matrix product")
    return out


def matmul(
    a: DenseMatrix,
    b: DenseMatrix,
    backend: MatMulBackend = CLASSICAL,
    *,
    ledger: FlopLedger | None = None,
    phase: str | None = None,
) -> DenseMatrix:
    """Product a @ b under the given backend.

    Classical charges rows*inner*cols muls and rows*(inner-1)*cols adds;
    Strassen charges the true scalar-op counts of its padded recursion
    (equal to `strassen_flop_count` for the same shapes and threshold).
    """
    out = _matmul_array(a.array, b.array, backend, ledger, phase)
    return DenseMatrix(out, copy=False, validate=False)


def _check_symmetric(arr: np.ndarray, rel: float, what: str) -> None:
    if arr.shape[0] != arr.shape[1]:
        raise ShapeError(f"{what} must be square, got {arr.shape}")
    if arr.size == 0:
        return
    scale = max(1.0, float(np.max(np.abs(arr))))
    skew = float(np.max(np.abs(arr - arr.T)))
    if skew > rel * scale:
        raise SymmetryError(f"{what} is not symmetric: max|A-A^T| = {skew:g} (scale {scale:g})")


def _cholesky_ops(d: int) -> OpCounts:
    # Mirrors cholesky_lower: column j does j muls/adds for the pivot, one
    # pivot comparison, one sqrt, then (d-1-j) rows of j muls/adds + 1 div.
    mul = sum(j * (d - j) for j in range(d))
    return OpCounts(mul=mul, add=mul, div=d + d * (d - 1) // 2, compare=d)


def _invert_lower_ops(d: int) -> OpCounts:
    mul = sum((i - j) for j in range(d) for i in range(j + 1, d))
    add = sum((i - j - 1) for j in range(d) for i in range(j + 1, d))
    return OpCounts(mul=mul, add=add, div=d + d * (d - 1) // 2)


def _lower_cross_ops(d: int) -> OpCounts:
    mul = sum((j + 1) * (d - j) for j in range(d))
    add = sum((j + 1) * (d - j - 1) for j in range(d))
    return OpCounts(mul=mul, add=add)


def spd_inverse(
    a: DenseMatrix,
    *,
    ledger: FlopLedger | None = None,
    phase: str = "hessian",
) -> DenseMatrix:
    """Inverse of a symmetric positive-definite matrix.

    Cholesky-factor-then-invert: A = L L^T, A^-1 = L^-T L^-1, followed by an
    explicit (R + R^T)/2 symmetrization.  Raises SymmetryError when the
    input is asymmetric beyond 1e-12 relative, and SingularMatrixError
    (carrying the pivot index) when a pivot is non-positive or under 1e-300.
    """
    arr = a.array
    _check_symmetric(arr, 1e-12, "spd_inverse input")
    d = arr.shape[0]
    lower = np.zeros((d, d))
    pivot = _kernels.cholesky_lower(_contig(arr), lower)
    if pivot >= 0:
        raise SingularMatrixError(
            f"matrix is not positive definite (pivot {pivot})", pivot_index=pivot
        )
    linv = np.zeros((d, d))
    _kernels.invert_lower(lower, linv)
    cross = np.empty((d, d))
    _kernels.lower_cross(linv, cross)
    inv = (cross + cross.T) * 0.5
    if ledger is not None:
        ledger.charge_counts(phase, _cholesky_ops(d))
        ledger.charge_counts(phase, _invert_lower_ops(d))
        ledger.charge_counts(phase, _lower_cross_ops(d))
        ledger.charge(phase, mul=d * d, add=d * d)  # symmetrization
    _require_finite(inv, "spd_inverse result")
    return DenseMatrix(inv, copy=False, validate=False)


def save_fmat(matrix: DenseMatrix, path) -> None:
    """Write the FMAT1 binary format: 8-byte magic, u64le rows, u64le cols,
    then row-major IEEE-754 binary64 little-endian values."""
    arr = np.ascontiguousarray(matrix.array, dtype="<f8")
    with open(path, "wb") as fh:
        fh.write(FMAT_MAGIC)
        fh.write(struct.pack("<QQ", matrix.rows, matrix.cols))
        fh.write(arr.tobytes())


def load_fmat(path) -> DenseMatrix:
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < 24 or blob[:8] != FMAT_MAGIC:
        raise FormatError(f"{path}: not an FMAT1 file")
    rows, cols = struct.unpack_from("<QQ", blob, 8)
    expected = 24 + rows * cols * 8
    if len(blob) != expected:
        raise FormatError(f"{path}: expected {expected} bytes for {rows}x{cols}, got {len(blob)}")
    data = np.frombuffer(blob, dtype="<f8", offset=24).reshape(rows, cols)
    return DenseMatrix(data.astype(np.float64), copy=False)


def save_csv(matrix: DenseMatrix, path) -> None:
    """Plain-decimal CSV, one row per line; values round-trip exactly."""
    with open(path, "w", encoding="ascii") as fh:
        for row in matrix.array:
            fh.write(",".join(repr(float(v)) for v in row))
            fh.write("\n")


def load_csv(path) -> DenseMatrix:
    rows = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                rows.append([float(tok) for tok in line.split(",")])
            except ValueError as exc:
                raise FormatError(f"{path}:{lineno}: {exc}") from None
    if not rows:
        raise FormatError(f"{path}: no rows")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise FormatError(f"{path}: ragged rows")
    return DenseMatrix(rows)
