"""Dense complex linear algebra used by beam selection.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. A channel
``H`` is ``n_U x n_B`` (users by beams) and its Gram matrix ``H H^H`` is
``n_U x n_U``.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.linalg import lapack

from .errors import NumericalFailure, SingularGram

__all__ = [
    "DowndateOutcome", "FEASIBILITY_TOL", "PIVOT_TOL", "as_matrix", "gram",
    "hermitian_inverse", "trace_inverse", "sherman_morrison_downdate",
    "pinv_fro_norm_sq", "hermitian_eig", "hermitian_part"
]

# A downdate G - h h^H is rejected when 1 - h^H G^{-1} h falls to this level.
FEASIBILITY_TOL = 1e-10

# Cholesky pivot tolerance, relative to the matching diagonal entry of G.
# The ratio L_ii^2 / G_ii is scale invariant.
PIVOT_TOL = 1e-12

HERMITIAN_TOL = 1e-12


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Return ``a`` as a 2-D complex array, rejecting NaN/Inf entries."""
    m = np.asarray(a, dtype=complex)
    if m.ndim == 1:
        m = m[np.newaxis, :]
    if m.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {m.shape}")
    if m.size == 0:
        raise ValueError(f"{name} is empty")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} contains non-finite entries")
    return m


def hermitian_part(G: np.ndarray) -> np.ndarray:
    """Return ``(G + G^H) / 2``."""
    return 0.5 * (G + G.conj().T)


def _check_hermitian(G: np.ndarray) -> np.ndarray:
    G = as_matrix(G, "Gram matrix")
    if G.shape[0] != G.shape[1]:
        raise ValueError(f"Gram matrix must be square, got {G.shape}")
    scale = np.linalg.norm(G)
    if np.linalg.norm(G - G.conj().T) > HERMITIAN_TOL * max(scale, 1.0):
        raise ValueError("matrix is not Hermitian")
    return hermitian_part(G)


def gram(H) -> np.ndarray:
    """Gram matrix ``H H^H`` of a wide (or square) channel matrix.

    Parameters
    ----------
    H : array_like
        ``n_U x n_B`` complex matrix with ``n_U <= n_B``.

    Returns
    -------
    np.ndarray
        Hermitian positive semi-definite ``n_U x n_U`` matrix.
    """
    H = as_matrix(H, "H")
    if H.shape[0] > H.shape[1]:
        raise ValueError(
            f"H must have rows <= cols, got {H.shape[0]} x {H.shape[1]}")
    return hermitian_part(H @ H.conj().T)


def _cholesky(G: np.ndarray) -> np.ndarray:
    L, info = lapack.zpotrf(G, lower=True, clean=True)
    if info < 0:  # pragma: no cover - argument error inside LAPACK
        raise NumericalFailure(f"zpotrf argument {-info} invalid")
    if info > 0:
        raise SingularGram(
            f"Gram matrix is singular (pivot {info - 1} not positive)",
            pivot=info - 1)
    diag = np.real(np.diag(G))
    ratio = np.abs(np.diag(L)) ** 2 / np.where(diag > 0, diag, np.inf)
    bad = np.flatnonzero(ratio <= PIVOT_TOL)
    if bad.size:
        raise SingularGram(
            f"Gram matrix is numerically singular at pivot {bad[0]}",
            pivot=int(bad[0]))
    return L


def hermitian_inverse(G) -> np.ndarray:
    """Invert a Hermitian positive definite matrix through its Cholesky factor.

    Raises
    ------
    SingularGram
        If a pivot falls below ``PIVOT_TOL`` (relative to ``G_ii``).
    """
    G = _check_hermitian(G)
    L = _cholesky(G)
    Linv, info = lapack.ztrtri(L, lower=True)
    if info != 0:  # pragma: no cover - guarded by the pivot check
        raise SingularGram("triangular factor is singular", pivot=info - 1)
    return hermitian_part(Linv.conj().T @ Linv)


def trace_inverse(G) -> float:
    """Return ``Tr(G^{-1})`` for Hermitian positive definite ``G``."""
    return float(np.real(np.trace(hermitian_inverse(G))))


@dataclass(frozen=True)
class DowndateOutcome:
    """Result of removing ``h h^H`` from a Gram matrix given its inverse.

    ``denominator`` is the Sherman-Morrison pivot ``1 - h^H G^{-1} h``.
    ``updated_inverse`` is ``None`` when the downdate is infeasible.
    """

    updated_inverse: Optional[np.ndarray]
    denominator: float
    feasible: bool


def sherman_morrison_downdate(G_inv, h) -> DowndateOutcome:
    """Inverse of ``G - h h^H`` from ``G^{-1}`` by the Sherman-Morrison formula.

    ``(G - h h^H)^{-1} = G^{-1} + G^{-1} h h^H G^{-1} / (1 - h^H G^{-1} h)``

    Infeasibility (the removal would drop the rank) is reported through
    the ``feasible`` flag rather than raised.
    """
    G_inv = np.asarray(G_inv, dtype=complex)
    h = np.asarray(h, dtype=complex).reshape(-1)
    if h.shape[0] != G_inv.shape[0]:
        raise ValueError(
            f"vector length {h.shape[0]} does not match dim {G_inv.shape[0]}")
    x = G_inv @ h
    d = float(1.0 - np.real(np.vdot(h, x)))
    if d <= FEASIBILITY_TOL:
        return DowndateOutcome(None, d, False)
    updated = hermitian_part(G_inv + np.outer(x, x.conj()) / d)
    return DowndateOutcome(updated, d, True)


def pinv_fro_norm_sq(H) -> float:
    """Squared Frobenius norm of the pseudo-inverse, ``Tr((H H^H)^{-1})``."""
    return trace_inverse(gram(H))


def hermitian_eig(G) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix, eigenvalues descending.

    Returns
    -------
    eigenvalues : np.ndarray
        Real, sorted from largest to smallest.
    eigenvectors : np.ndarray
        Orthonormal columns matching ``eigenvalues``.
    """
    G = _check_hermitian(G)
    try:
        w, V = np.linalg.eigh(G)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"eigendecomposition did not converge: {exc}")
    order = np.argsort(w)[::-1]
    return w[order], V[:, order]
