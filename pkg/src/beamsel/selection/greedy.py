"""Decremental (backward greedy) beam selection.

Starting from all ``n_B`` beams, the beam whose removal gives the
smallest ``Tr((H_i H_i^H)^{-1})`` is dropped, one at a time, until ``K``
beams remain. The fast path keeps ``(H_i H_i^H)^{-1}`` up to date with
Sherman-Morrison downdates, so each step costs ``O(n_U^2 n_B)``.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from ..errors import InfeasibleSelection, SingularGram
from ..linalg import (FEASIBILITY_TOL, as_matrix, gram, hermitian_inverse,
                      pinv_fro_norm_sq, sherman_morrison_downdate)

__all__ = [
    "SelectionResult", "single_step_costs", "decremental_select",
    "decremental_select_naive", "exhaustive_select", "EXHAUSTIVE_CAP"
]

EXHAUSTIVE_CAP = 10**6


@dataclass(frozen=True)
class SelectionResult:
    """Outcome of a beam selection run.

    Attributes
    ----------
    selected : tuple of int
        Surviving column indices of the input ``H``, ascending.
    eliminated : tuple of int
        Dropped columns in elimination order. Exhaustive search has no
        order and lists the complement ascending.
    step_costs : tuple of float
        ``Tr((H_i H_i^H)^{-1})`` after each elimination.
    final_norm_sq : float
        ``||H_s^+||_F^2`` of the selected submatrix.
    """

    selected: tuple
    eliminated: tuple
    step_costs: tuple
    final_norm_sq: float

    @property
    def K(self) -> int:
        return len(self.selected)

    def to_dict(self) -> dict:
        return {
            "selected": [int(i) for i in self.selected],
            "eliminated": [int(i) for i in self.eliminated],
            "step_costs": [float(c) for c in self.step_costs],
            "final_norm_sq": float(self.final_norm_sq),
        }


def _check_K(n_U: int, n_B: int, K: int) -> None:
    if not n_U <= K <= n_B:
        raise ValueError(f"K must satisfy n_U <= K <= n_B ({n_U} <= {K} <= {n_B})")


def _removal_costs(G_inv: np.ndarray, Hr: np.ndarray) -> np.ndarray:
    # Vectorized Sherman-Morrison: Tr((G - h h^H)^{-1}) for every column h.
    X = G_inv @ Hr
    d = 1.0 - np.real(np.sum(Hr.conj() * X, axis=0))
    gain = np.sum(np.abs(X) ** 2, axis=0)
    trace = np.real(np.trace(G_inv))
    costs = np.full(Hr.shape[1], np.inf)
    ok = d > FEASIBILITY_TOL
    costs[ok] = trace + gain[ok] / d[ok]
    return costs


def single_step_costs(H) -> np.ndarray:
    """Cost of dropping each single beam from ``H``.

    Entry ``j`` is ``Tr((H H^H - h_j h_j^H)^{-1})``, or ``inf`` when the
    removal would leave ``H`` rank deficient.
    """
    H = as_matrix(H, "H")
    n_U, n_B = H.shape
    if n_B <= n_U:
        raise ValueError("need n_B > n_U to drop a beam")
    return _removal_costs(hermitian_inverse(gram(H)), H)


def decremental_select(H, K: int) -> SelectionResult:
    """Greedy decremental beam selection with Sherman-Morrison downdates.

    Parameters
    ----------
    H : array_like
        Full-row-rank ``n_U x n_B`` beamspace channel.
    K : int
        Number of beams to keep, ``n_U <= K <= n_B``.

    Returns
    -------
    SelectionResult

    Raises
    ------
    InfeasibleSelection
        If every remaining removal would lose rank before ``K`` is reached.
    """
    H = as_matrix(H, "H")
    n_U, n_B = H.shape
    _check_K(n_U, n_B, K)
    G_inv = hermitian_inverse(gram(H))
    remaining = np.arange(n_B)
    eliminated, step_costs = [], []
    for _ in range(n_B - K):
        costs = _removal_costs(G_inv, H[:, remaining])
        pos = int(np.argmin(costs))  # first minimum -> lowest index on ties
        if not np.isfinite(costs[pos]):
            raise InfeasibleSelection(
                f"no rank-preserving removal left with {remaining.size} beams")
        j = int(remaining[pos])
        G_inv = sherman_morrison_downdate(G_inv, H[:, j]).updated_inverse
        remaining = np.delete(remaining, pos)
        eliminated.append(j)
        step_costs.append(float(np.real(np.trace(G_inv))))
    final = step_costs[-1] if step_costs else float(np.real(np.trace(G_inv)))
    return SelectionResult(tuple(int(i) for i in remaining), tuple(eliminated),
                           tuple(step_costs), final)


def decremental_select_naive(H, K: int) -> SelectionResult:
    """Reference decremental selection that inverts every candidate from scratch.

    Same contract as :func:`decremental_select`; ``O(n_B^2 (n_B - K))``
    Gram inversions, so meant for cross-checking only.
    """
    H = as_matrix(H, "H")
    n_U, n_B = H.shape
    _check_K(n_U, n_B, K)
    remaining = list(range(n_B))
    eliminated, step_costs = [], []
    final = pinv_fro_norm_sq(H)
    for _ in range(n_B - K):
        best_pos, best_cost = -1, math.inf
        for pos in range(len(remaining)):
            cols = remaining[:pos] + remaining[pos + 1:]
            try:
                c = pinv_fro_norm_sq(H[:, cols])
            except SingularGram:
                continue
            if c < best_cost:
                best_pos, best_cost = pos, c
        if best_pos < 0:
            raise InfeasibleSelection(
                f"no rank-preserving removal left with {len(remaining)} beams")
        eliminated.append(remaining.pop(best_pos))
        step_costs.append(best_cost)
        final = best_cost
    return SelectionResult(tuple(remaining), tuple(eliminated),
                           tuple(step_costs), final)


def _subset_costs(H: np.ndarray, combos: np.ndarray) -> np.ndarray:
    Hs = H[:, combos]                                  # n_U x c x K
    G = np.einsum("uck,vck->cuv", Hs, Hs.conj())
    w = np.linalg.eigvalsh(G)                          # ascending
    ok = w[:, 0] > 1e-12 * w[:, -1]
    costs = np.full(combos.shape[0], np.inf)
    costs[ok] = np.sum(1.0 / w[ok], axis=1)
    return costs


def exhaustive_select(H, K: int, cap: int = EXHAUSTIVE_CAP,
                      chunk: int = 4096) -> SelectionResult:
    """Optimal ``K``-subset minimizing ``||H_s^+||_F^2`` by enumeration.

    Ties go to the lexicographically smallest index set. Raises
    ``ValueError`` if ``C(n_B, K)`` exceeds ``cap``.
    """
    H = as_matrix(H, "H")
    n_U, n_B = H.shape
    _check_K(n_U, n_B, K)
    total = math.comb(n_B, K)
    if total > cap:
        raise ValueError(
            f"C({n_B}, {K}) = {total} subsets exceeds cap {cap}; "
            "use decremental_select instead")
    it = itertools.combinations(range(n_B), K)
    best, best_cost = None, math.inf
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            break
        combos = np.array(block, dtype=int)
        costs = _subset_costs(H, combos)
        i = int(np.argmin(costs))
        if costs[i] < best_cost:
            best, best_cost = combos[i], costs[i]
    if best is None:
        raise InfeasibleSelection(f"every {K}-subset is rank deficient")
    selected = tuple(int(i) for i in best)
    rest = tuple(i for i in range(n_B) if i not in set(selected))
    return SelectionResult(selected, rest, (), pinv_fro_norm_sq(H[:, list(selected)]))
