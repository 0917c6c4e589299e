"""Per-column saliency ranking and top-k mask selection.

For a weight column w aligned with global column c, the saliency of entry i
is w_i^2 / H_cc^2 where H_cc is the inverse-Hessian diagonal entry.  Each
mask column keeps the d - floor(p*d) most salient entries; ties break
toward the smaller row index so selection is deterministic and matches the
exact-arithmetic oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ConfigError, DegenerateDiagonalError, ShapeError
from .hessian import InverseHessian
from .ledger import FlopLedger

# Diagonal entries smaller than this cannot be divided by safely.
DIAG_GUARD = 1e-300


@dataclass
class MaskBlock:
    """Binary mask for r consecutive columns: d x r of {0.0, 1.0} with
    exactly keep_count ones per column."""

    entries: np.ndarray
    keep_count: int


def keep_count(p: float, d: int) -> int:
    """Entries kept per column: d - floor(p*d).

    p = 0 keeps everything, p = 1 prunes everything, monotone in between.
    """
    if not 0.0 <= p <= 1.0:
        raise ConfigError(f"sparsity must be in [0, 1], got {p}")
    return d - math.floor(p * d)


def saliency(
    column: np.ndarray,
    h_diag: float,
    *,
    ledger: FlopLedger | None = None,
    col: int | None = None,
) -> np.ndarray:
    """Elementwise column^2 / h_diag^2; one mul for h_diag^2, then d muls
    and d divs charged to the mask phase."""
    column = np.asarray(column, dtype=np.float64)
    if abs(h_diag) < DIAG_GUARD:
        where = f" at column {col}" if col is not None else ""
        raise DegenerateDiagonalError(
            f"inverse-Hessian diagonal{where} is below {DIAG_GUARD:g}", column=col
        )
    d = column.shape[0]
    values = (column * column) / (h_diag * h_diag)
    if ledger is not None:
        ledger.charge("mask", mul=d + 1, div=d)
    return values


def top_k_indices(w: np.ndarray, k: int, *, ledger: FlopLedger | None = None) -> np.ndarray:
    """Indices of the k largest saliency values, most salient first.

    Full stable merge sort (descending, ties toward the smaller index);
    the comparison count is charged to the mask phase.
    """
    w = np.ascontiguousarray(w, dtype=np.float64)
    d = w.shape[0]
    if not 0 <= k <= d:
        raise ShapeError(f"k = {k} outside [0, {d}]")
    order = np.empty(d, dtype=np.int64)
    comps = _kernels.sort_desc(w, order)
    if ledger is not None:
        ledger.charge("mask", compare=comps)
    return order[:k].copy()


def mask_select(
    p: float,
    w_block: np.ndarray,
    h: InverseHessian,
    start_col: int,
    *,
    ledger: FlopLedger | None = None,
) -> MaskBlock:
    """Select masks for the r columns of w_block, whose first column sits at
    global column index start_col."""
    block = np.asarray(w_block, dtype=np.float64)
    if block.ndim != 2:
        raise ShapeError(f"weight block must be 2-D, got ndim={block.ndim}")
    d, r = block.shape
    if r < 1:
        raise ShapeError("weight block needs at least one column")
    if not (0 <= start_col and start_col + r <= h.dim):
        raise ShapeError(f"columns [{start_col}, {start_col + r}) outside Hessian dim {h.dim}")
    keep = keep_count(p, d)
    diag = h.diagonal()
    entries = np.zeros((d, r))
    for k_local in range(r):
        c = start_col + k_local
        values = saliency(block[:, k_local], float(diag[c]), ledger=ledger, col=c)
        idx = top_k_indices(values, keep, ledger=ledger)
        entries[idx, k_local] = 1.0
    return MaskBlock(entries, keep)
