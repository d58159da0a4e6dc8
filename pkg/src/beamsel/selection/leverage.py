"""Leverage-score candidate pre-selection.

The leverage score of beam ``i`` is the squared norm of row ``i`` of the
``n_B x n_U`` right-singular-vector matrix ``V`` of ``H``, normalized by
``n_U`` so the scores sum to one. ``V`` is obtained from the small
``n_U x n_U`` Gram eigenproblem, ``V = H^H W diag(lambda)^{-1/2}``.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..errors import SingularGram
from ..linalg import as_matrix, gram, hermitian_eig, hermitian_inverse

__all__ = ["LeverageScores", "leverage_scores", "Preselection", "preselect",
           "PRESELECT_MODES"]

PRESELECT_MODES = ("top", "bernoulli")

# Relative eigenvalue floor for declaring H rank deficient.
RANK_TOL = 1e-12


@dataclass(frozen=True)
class LeverageScores:
    """``pi`` sums to one; ``p = min(1, n_B pi)`` are sampling probabilities."""

    pi: np.ndarray
    p: np.ndarray


def right_singular_vectors(H) -> np.ndarray:
    H = as_matrix(H, "H")
    lam, W = hermitian_eig(gram(H))
    if lam[-1] <= RANK_TOL * lam[0] or lam[0] <= 0:
        raise SingularGram("H is rank deficient", pivot=None)
    return H.conj().T @ (W / np.sqrt(lam))


def leverage_scores(H) -> LeverageScores:
    V = right_singular_vectors(H)
    n_B, n_U = V.shape
    pi = np.sum(np.abs(V) ** 2, axis=1) / n_U
    return LeverageScores(pi=pi, p=np.minimum(1.0, n_B * pi))


@dataclass(frozen=True)
class Preselection:
    """Candidate beams ``indices`` (ascending) and the submatrix ``H_c``."""

    H_c: np.ndarray
    indices: np.ndarray
    mode: str
    oversample: float
    scores: LeverageScores

    @property
    def n_c(self) -> int:
        return int(self.indices.size)


def _full_row_rank(Hc: np.ndarray) -> bool:
    if Hc.shape[1] < Hc.shape[0]:
        return False
    try:
        hermitian_inverse(gram(Hc))
    except SingularGram:
        return False
    return True


def preselect(H, K: int, mode: str = "top", oversample: float = 1.0,
              rng: np.random.Generator | None = None) -> Preselection:
    """Pick candidate beams before decremental selection.

    Parameters
    ----------
    H : array_like
        Full-row-rank ``n_U x n_B`` channel.
    K : int
        Number of beams the later greedy run keeps; at least ``K``
        candidates are returned.
    mode : {"top", "bernoulli"}
        ``bernoulli`` keeps beam ``i`` independently with probability
        ``min(1, oversample n_B pi_i)``. ``top`` deterministically keeps
        the ``max(K, ceil(sum_i min(1, oversample n_B pi_i)))`` beams of
        largest score, i.e. the expected Bernoulli count.
    oversample : float
        Scales the inclusion probabilities, ``>= 1``.
    rng : numpy.random.Generator
        Required for ``bernoulli``.

    Notes
    -----
    If fewer than ``K`` beams are drawn, or ``H_c`` loses row rank, the
    highest-scoring missing beams are added one at a time until both
    conditions hold.
    """
    H = as_matrix(H, "H")
    n_U, n_B = H.shape
    if mode not in PRESELECT_MODES:
        raise ValueError(f"unknown preselect mode {mode!r}")
    if oversample < 1:
        raise ValueError("oversample must be >= 1")
    if not n_U <= K <= n_B:
        raise ValueError(f"K must satisfy n_U <= K <= n_B ({n_U} <= {K} <= {n_B})")
    scores = leverage_scores(H)
    prob = np.minimum(1.0, oversample * n_B * scores.pi)
    order = np.argsort(-scores.pi, kind="stable")
    if mode == "bernoulli":
        if rng is None:
            raise ValueError("bernoulli pre-selection needs an rng")
        chosen = rng.random(n_B) < prob
    else:
        n_c = max(K, math.ceil(float(np.sum(prob)) - 1e-9))
        chosen = np.zeros(n_B, dtype=bool)
        chosen[order[:n_c]] = True
    for i in order:
        if chosen.sum() >= K and _full_row_rank(H[:, chosen]):
            break
        chosen[i] = True
    idx = np.flatnonzero(chosen)
    return Preselection(H[:, idx], idx, mode, oversample, scores)
