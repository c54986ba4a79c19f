"""Dense tensor algebra: matricization, Khatri-Rao products, Kruskal tensors.

Tensors are plain numpy arrays stored in C (row-major) order; modes are
0-based.  The classical tensor literature (Kolda & Bader, SIAM Review 2009)
writes everything 1-based, so the translation used throughout is:

    literature                      here
    ----------                      ----
    mode n in 1..N                  mode in 0..N-1
    entry (i_1, ..., i_N), i >= 1   index tuple (i_0, ..., i_{N-1}), i >= 0
    column j >= 1 of the unfolding  column lam = j - 1

The mode-``n`` matricization maps entry ``(i_0, .., i_{N-1})`` to row
``i_n`` and column

    lam = sum_g i_{c_g} * prod_{g' < g} I_{c_{g'}}

where ``(c_1, .., c_G)`` are the remaining modes in ascending order, i.e.
the lowest complement mode varies fastest.  Khatri-Rao factor lists are
ordered so that reconstruction identities hold with this layout (the last
matrix in the list varies fastest).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod

import numpy as np

__all__ = [
    "KruskalFactors",
    "mode_matricize",
    "mode_fold",
    "khatri_rao",
    "complement_khatri_rao",
    "kruskal_reconstruct",
    "kruskal_vec_operator",
]


def mode_matricize(tensor: np.ndarray, mode: int) -> np.ndarray:
    """Unfold ``tensor`` along ``mode`` into an ``I_mode x Lambda`` matrix.

    Columns enumerate the complement modes with the lowest-numbered mode
    varying fastest (see module docstring for the exact index map).
    """
    tensor = np.asarray(tensor)
    if not 0 <= mode < tensor.ndim:
        raise ValueError(f"mode {mode} out of range for order-{tensor.ndim} tensor")
    return np.moveaxis(tensor, mode, 0).reshape(tensor.shape[mode], -1, order="F")


def mode_fold(matrix: np.ndarray, mode: int, shape) -> np.ndarray:
    """Inverse of :func:`mode_matricize`: rebuild the tensor of ``shape``."""
    matrix = np.asarray(matrix)
    shape = tuple(int(s) for s in shape)
    if not 0 <= mode < len(shape):
        raise ValueError(f"mode {mode} out of range for order-{len(shape)} tensor")
    complement = shape[:mode] + shape[mode + 1 :]
    expected = (shape[mode], prod(complement) if complement else 1)
    if matrix.shape != expected:
        raise ValueError(
            f"matrix shape {matrix.shape} does not match mode-{mode} "
            f"unfolding {expected} of tensor shape {shape}"
        )
    full = matrix.reshape((shape[mode],) + complement, order="F")
    return np.moveaxis(full, 0, mode)


def khatri_rao(matrices) -> np.ndarray:
    """Column-wise Kronecker product of matrices sharing a column count.

    Column ``r`` of the result is ``kron`` of column ``r`` of each input in
    list order, so the first matrix's row index varies slowest.
    """
    matrices = [np.asarray(m) for m in matrices]
    if not matrices:
        raise ValueError("khatri_rao needs at least one matrix")
    for m in matrices:
        if m.ndim != 2:
            raise ValueError("khatri_rao operands must be matrices")
    rank = matrices[0].shape[1]
    if any(m.shape[1] != rank for m in matrices):
        raise ValueError(
            "khatri_rao operands must share a column count, got "
            f"{[m.shape[1] for m in matrices]}"
        )
    out = matrices[0]
    for m in matrices[1:]:
        out = (out[:, None, :] * m[None, :, :]).reshape(-1, rank)
    return out


@dataclass(frozen=True)
class KruskalFactors:
    """Per-mode factor matrices of a rank-R decomposable tensor.

    ``factors[n]`` has shape ``(I_n, R)``; the represented tensor is the sum
    over r of ``weights[r]`` times the outer product of the r-th columns.
    ``weights`` defaults to all ones.
    """

    factors: tuple
    weights: np.ndarray | None = field(default=None)

    def __post_init__(self):
        mats = tuple(np.asarray(f) for f in self.factors)
        if not mats:
            raise ValueError("KruskalFactors needs at least one mode")
        rank = mats[0].shape[1] if mats[0].ndim == 2 else -1
        for n, m in enumerate(mats):
            if m.ndim != 2:
                raise ValueError(f"factor {n} is not a matrix")
            if m.shape[1] != rank:
                raise ValueError(
                    f"factor {n} has {m.shape[1]} columns, expected {rank}"
                )
        object.__setattr__(self, "factors", mats)
        if self.weights is not None:
            w = np.asarray(self.weights, dtype=float)
            if w.shape != (rank,):
                raise ValueError(f"weights must have length {rank}, got {w.shape}")
            object.__setattr__(self, "weights", w)

    @property
    def order(self) -> int:
        return len(self.factors)

    @property
    def rank(self) -> int:
        return self.factors[0].shape[1]

    @property
    def shape(self) -> tuple:
        return tuple(f.shape[0] for f in self.factors)


def complement_khatri_rao(factors, skip: int, weights=None) -> np.ndarray:
    """Khatri-Rao product of all factor matrices except ``skip``.

    Matrices enter in descending mode order, matching the column layout of
    :func:`mode_matricize`.  Optional ``weights`` scale the columns.
    """
    n_modes = len(factors)
    if not 0 <= skip < n_modes:
        raise ValueError(f"mode {skip} out of range")
    mats = [np.asarray(factors[t]) for t in reversed(range(n_modes)) if t != skip]
    if not mats:
        q = np.ones((1, np.asarray(factors[skip]).shape[1]))
    else:
        q = khatri_rao(mats)
    if weights is not None:
        q = q * np.asarray(weights)[None, :]
    return q


def kruskal_reconstruct(kf: KruskalFactors) -> np.ndarray:
    """Dense tensor represented by ``kf``.

    Computed through the mode-0 unfolding ``X^(0) Q^T`` and a fold, which is
    equivalent to (and much faster than) summing R outer products.
    """
    q = complement_khatri_rao(kf.factors, 0, kf.weights)
    mat = kf.factors[0] @ q.T
    return mode_fold(mat, 0, kf.shape)


def kruskal_vec_operator(kf: KruskalFactors, mode: int) -> np.ndarray:
    """Matrix mapping ``vec(X^(mode))`` to the vec'd mode unfolding.

    Returns ``kron(Q, I_{I_mode})`` where ``Q`` is the complement Khatri-Rao
    product, so ``result @ vec(X^(mode)) == vec(unfolding of the
    reconstruction)`` with column-stacking ``vec``.  Materializes a
    ``(Lambda * I_mode) x (R * I_mode)`` matrix; intended for small
    instances and tests.
    """
    if not 0 <= mode < kf.order:
        raise ValueError(f"mode {mode} out of range")
    q = complement_khatri_rao(kf.factors, mode, kf.weights)
    return np.kron(q, np.eye(kf.shape[mode]))
