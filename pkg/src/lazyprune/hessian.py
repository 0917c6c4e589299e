"""Regularized inverse Hessian of the calibration reconstruction problem.

Given calibration inputs X (d x N) and lambda > 0, builds
H = (X X^T + lambda I)^-1.  The Gram product is always computed with the
classical backend: it is a one-time cost and keeping it classical makes the
hessian-phase ledger exactly d^2*N multiplies for the Gram term.  Pass a
strassen backend explicitly to override.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DegenerateCalibrationError, ShapeError, SingularMatrixError, SymmetryError
from .ledger import FlopLedger
from .matrix import CLASSICAL, DenseMatrix, MatMulBackend, _matmul_array, spd_inverse

# Auto lambda: 1% of the mean Gram diagonal.  Data-scaled default; the
# algorithm itself only requires lambda > 0.
AUTO_LAMBDA_FRACTION = 0.01


@dataclass
class InverseHessian:
    """H = (X X^T + lambda I)^-1 with its regularizer and cached smallest
    diagonal entry (always > 0: H is the inverse of an SPD matrix)."""

    matrix: DenseMatrix
    lam: float
    diag_min: float

    @property
    def dim(self) -> int:
        return self.matrix.rows

    def diagonal(self) -> np.ndarray:
        return np.diagonal(self.matrix.array)


def build_inverse_hessian(
    x: DenseMatrix,
    lam="auto",
    *,
    ledger: FlopLedger | None = None,
    gram_backend: MatMulBackend = CLASSICAL,
) -> InverseHessian:
    """Build (X X^T + lambda I)^-1 from calibration input X (d x N).

    lam is an explicit positive float, or "auto" for
    AUTO_LAMBDA_FRACTION * mean(diag(X X^T)) (requires a nonzero X).
    All scalar work is charged to the ledger's "hessian" phase.
    """
    d, n = x.shape
    if n < 1:
        raise ShapeError("calibration matrix needs at least one column")
    gram = _matmul_array(x.array, np.ascontiguousarray(x.array.T), gram_backend, ledger, "hessian")
    if isinstance(lam, str):
        if lam != "auto":
            raise ConfigError(f"lambda must be a positive number or 'auto', got {lam!r}")
        mean_diag = float(np.trace(gram)) / d if d else 0.0
        if mean_diag <= 0.0:
            raise DegenerateCalibrationError(
                "auto lambda needs trace(X X^T) > 0; calibration input is all zero"
            )
        lam_value = AUTO_LAMBDA_FRACTION * mean_diag
    else:
        lam_value = float(lam)
        if not lam_value > 0.0:
            raise ConfigError(f"lambda must be positive, got {lam_value}")
    idx = np.arange(d)
    gram[idx, idx] += lam_value
    if ledger is not None:
        ledger.charge("hessian", add=d)
    h = spd_inverse(DenseMatrix(gram, copy=False, validate=False), ledger=ledger, phase="hessian")
    diag = np.diagonal(h.array)
    diag_min = float(diag.min()) if d else 0.0
    if d and diag_min <= 0.0:
        # Cannot happen for finite X and lambda > 0, but guard anyway.
        raise SingularMatrixError(f"inverse Hessian diagonal not positive (min {diag_min:g})")
    _assert_symmetric(h.array)
    return InverseHessian(h, lam_value, diag_min)


def _assert_symmetric(arr: np.ndarray) -> None:
    if arr.size == 0:
        return
    scale = max(1.0, float(np.max(np.abs(arr))))
    skew = float(np.max(np.abs(arr - arr.T)))
    if skew > 1e-10 * scale:
        raise SymmetryError(f"inverse Hessian asymmetric beyond tolerance: {skew:g}")
