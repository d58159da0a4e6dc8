"""Upper bounds on the greedy precoder norm and lower bounds on sum-rate.

Greedy decremental selection keeping ``K`` of ``n_B`` beams satisfies

    ||H_s^+||_F^2 <= (n_B - n_U + 1) / (K - n_U + 1) * ||H^+||_F^2,

a square hyperbola in ``K`` with ``a = n_B - n_U + 1``. Running the
same argument on a pre-selected candidate matrix ``H_c`` with ``n_c``
columns gives the tighter bound with ``n_c`` in place of ``n_B``.

:func:`proof_identities` evaluates the trace identities that make the
one-step guarantee work, so they can be checked numerically.
"""

import math
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from ..errors import SingularGram
from ..linalg import as_matrix, gram, hermitian_inverse, trace_inverse
from ..precoding import sum_rate

__all__ = [
    "theorem1_bound", "improved_bound", "rate_lower_bound", "bound_factor",
    "HyperbolaProfile", "hyperbola_profile", "BoundReport", "bound_report",
    "IdentityReport", "proof_identities"
]


def bound_factor(n_total: int, n_U: int, K: int) -> float:
    """Hyperbolic factor ``(n_total - n_U + 1) / (K - n_U + 1)``."""
    if K < n_U:
        raise ValueError(f"K = {K} < n_U = {n_U}: outside the bound's domain")
    if K > n_total:
        raise ValueError(f"K = {K} exceeds the {n_total} available beams")
    return (n_total - n_U + 1) / (K - n_U + 1)


def theorem1_bound(n_B: int, n_U: int, K: int, full_norm_sq: float) -> float:
    """Upper bound on ``||H_s^+||_F^2`` after greedy selection of ``K`` beams."""
    return bound_factor(n_B, n_U, K) * full_norm_sq


def improved_bound(n_c: int, n_U: int, K: int, candidate_norm_sq: float) -> float:
    """The same bound applied to a pre-selected candidate set of ``n_c`` beams."""
    return bound_factor(n_c, n_U, K) * candidate_norm_sq


def rate_lower_bound(n_c: int, n_U: int, K: int, candidate_norm_sq: float,
                     P, sigma2: float):
    """Sum-rate lower bound implied by :func:`improved_bound`.

    ``n_U log2(1 + (K - n_U + 1) / (n_c - n_U + 1) * P / (sigma2 ||H_c^+||^2))``
    """
    return sum_rate(improved_bound(n_c, n_U, K, candidate_norm_sq), P, sigma2, n_U)


@dataclass(frozen=True)
class HyperbolaProfile:
    """Bound factor as a function of ``K`` for fixed ``n_B, n_U``.

    ``vertex`` is ``(n_U - 1 + sqrt(a), sqrt(a))``, the point of the
    hyperbola ``y = a / (K - n_U + 1)`` closest to its center
    ``(n_U - 1, 0)``.
    """

    n_B: int
    n_U: int
    a: int
    K: np.ndarray
    factor: np.ndarray
    vertex: tuple[float, float]


def hyperbola_profile(n_B: int, n_U: int) -> HyperbolaProfile:
    if not 1 <= n_U < n_B:
        raise ValueError("need 1 <= n_U < n_B")
    a = n_B - n_U + 1
    K = np.arange(n_U, n_B + 1)
    factor = a / (K - n_U + 1)
    root = math.sqrt(a)
    return HyperbolaProfile(n_B, n_U, a, K, factor, (n_U - 1 + root, root))


@dataclass(frozen=True)
class BoundReport:
    n_B: int
    n_U: int
    K: int
    n_c: int
    full_norm_sq: float
    candidate_norm_sq: Optional[float]
    theorem1_bound: float
    improved_bound: Optional[float]
    rate_lower_bound: float
    snr_linear: float

    def to_dict(self) -> dict:
        return asdict(self)


def bound_report(n_B: int, n_U: int, K: int, full_norm_sq: float,
                 snr_linear: float = 1.0, n_c: Optional[int] = None,
                 candidate_norm_sq: Optional[float] = None) -> BoundReport:
    """Collect all bounds for one configuration.

    Without pre-selection (``n_c`` is ``None``) the rate bound uses the
    full channel, i.e. ``n_c = n_B`` and ``||H_c^+|| = ||H^+||``.
    """
    t1 = theorem1_bound(n_B, n_U, K, full_norm_sq)
    if n_c is None:
        imp = None
        rate = rate_lower_bound(n_B, n_U, K, full_norm_sq, snr_linear, 1.0)
        n_c = n_B
    else:
        if candidate_norm_sq is None:
            raise ValueError("candidate_norm_sq is required with n_c")
        imp = improved_bound(n_c, n_U, K, candidate_norm_sq)
        rate = rate_lower_bound(n_c, n_U, K, candidate_norm_sq, snr_linear, 1.0)
    return BoundReport(n_B, n_U, K, n_c, full_norm_sq, candidate_norm_sq,
                       t1, imp, rate, snr_linear)


@dataclass(frozen=True)
class IdentityReport:
    """Trace identities behind the one-step greedy guarantee.

    ``q_norm_sum``
        sum of ``h_m^H (H H^H)^{-1} h_m``; equals ``n_U``.
    ``trace_sum``
        sum of ``Tr(G^{-1} h_m h_m^H G^{-1})``; equals ``||H^+||_F^2``.
    ``weighted_sum``
        sum of ``(1 - ||q_m||^2) Tr((G - h_m h_m^H)^{-1})``; equals
        ``(n_B - n_U + 1) ||H^+||_F^2``. ``None`` when some single-beam
        removal is infeasible.
    ``min_cost``
        smallest single-removal cost; at most
        ``(n_B - n_U + 1) / (n_B - n_U) ||H^+||_F^2``.
    """

    n_U: int
    n_B: int
    full_norm_sq: float
    q_norm_sum: float
    trace_sum: float
    weighted_sum: Optional[float]
    min_cost: float

    @property
    def weighted_expected(self) -> float:
        return (self.n_B - self.n_U + 1) * self.full_norm_sq

    @property
    def min_cost_bound(self) -> float:
        if self.n_B == self.n_U:
            return math.inf
        return (self.n_B - self.n_U + 1) / (self.n_B - self.n_U) * self.full_norm_sq

    def checks(self, rtol: float = 1e-9) -> dict[str, bool]:
        """Pass/fail of each identity at relative tolerance ``rtol``."""
        def close(x, y):
            return abs(x - y) <= rtol * abs(y)
        return {
            "q_norm_sum": close(self.q_norm_sum, self.n_U),
            "trace_sum": close(self.trace_sum, self.full_norm_sq),
            "weighted_sum": (self.weighted_sum is not None
                             and close(self.weighted_sum, self.weighted_expected)),
            "min_cost": self.min_cost <= self.min_cost_bound * (1 + rtol),
        }


def proof_identities(H) -> IdentityReport:
    """Evaluate the identity report for ``H``.

    Removal costs are computed by direct inversion of each downdated Gram
    matrix, independent of the Sherman-Morrison path used for selection.
    """
    H = as_matrix(H, "H")
    n_U, n_B = H.shape
    G = gram(H)
    G_inv = hermitian_inverse(G)
    full = float(np.real(np.trace(G_inv)))
    X = G_inv @ H
    q_sq = np.real(np.sum(H.conj() * X, axis=0))
    trace_terms = np.sum(np.abs(X) ** 2, axis=0)
    costs = np.full(n_B, np.inf)
    for m in range(n_B):
        h = H[:, m]
        try:
            costs[m] = trace_inverse(G - np.outer(h, h.conj()))
        except SingularGram:
            pass
    weighted = None
    if np.all(np.isfinite(costs)):
        weighted = float(np.sum((1.0 - q_sq) * costs))
    return IdentityReport(n_U, n_B, full, float(np.sum(q_sq)),
                          float(np.sum(trace_terms)), weighted,
                          float(np.min(costs)))
