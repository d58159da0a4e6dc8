"""Zero-forcing precoding and equal-power sum-rate."""

from dataclasses import dataclass

import numpy as np

from .linalg import as_matrix, gram, hermitian_inverse

__all__ = ["RatePoint", "zf_precoder", "sum_rate", "rate_point", "partition",
           "db_to_linear"]


def db_to_linear(snr_db):
    return 10.0 ** (np.asarray(snr_db, dtype=float) / 10.0)


def zf_precoder(H) -> np.ndarray:
    """Unnormalized ZF precoder ``H^+ = H^H (H H^H)^{-1}``.

    Power normalization is left to :func:`sum_rate`.
    """
    H = as_matrix(H, "H")
    return H.conj().T @ hermitian_inverse(gram(H))


def sum_rate(norm_sq, P, sigma2, n_U: int):
    """Sum-rate ``n_U log2(1 + P / (sigma2 * norm_sq))`` in bits/s/Hz.

    ``norm_sq`` is the squared Frobenius norm of the ZF precoder. ``P``
    may be an array of powers; the other arguments are scalars.
    """
    P = np.asarray(P, dtype=float)
    if norm_sq <= 0 or sigma2 <= 0 or n_U <= 0 or np.any(P <= 0):
        raise ValueError("sum_rate arguments must be positive")
    r = n_U * np.log2(1.0 + P / (sigma2 * norm_sq))
    return float(r) if r.ndim == 0 else r


@dataclass(frozen=True)
class RatePoint:
    snr_linear: float
    norm_sq: float
    n_U: int
    rate: float


def rate_point(norm_sq: float, snr_linear: float, n_U: int) -> RatePoint:
    return RatePoint(snr_linear, norm_sq, n_U,
                     sum_rate(norm_sq, snr_linear, 1.0, n_U))


def partition(H, selected) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Split ``H`` into selected and discarded beams, ``H Pi = [H_s H_d]``.

    Returns
    -------
    H_s : np.ndarray
        Columns ``selected`` in the given order.
    H_d : np.ndarray
        Remaining columns in ascending index order (may have zero columns).
    permutation : np.ndarray
        Column order of ``[H_s H_d]``; ``H[:, permutation] == [H_s H_d]``.
    """
    H = as_matrix(H, "H")
    n_B = H.shape[1]
    sel = np.asarray(selected, dtype=int).reshape(-1)
    if sel.size and (sel.min() < 0 or sel.max() >= n_B):
        raise ValueError(f"selected indices must lie in [0, {n_B})")
    if np.unique(sel).size != sel.size:
        raise ValueError("selected indices must be distinct")
    rest = np.setdiff1d(np.arange(n_B), sel)
    perm = np.concatenate([sel, rest])
    return H[:, sel], H[:, rest], perm
