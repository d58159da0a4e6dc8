"""Decremental beam selection, candidate pre-selection and bounds."""

from .bounds import (BoundReport, HyperbolaProfile, IdentityReport,
                     bound_factor, bound_report, hyperbola_profile,
                     improved_bound, proof_identities, rate_lower_bound,
                     theorem1_bound)
from .greedy import (EXHAUSTIVE_CAP, SelectionResult, decremental_select,
                     decremental_select_naive, exhaustive_select,
                     single_step_costs)
from .leverage import (LeverageScores, Preselection, leverage_scores,
                       preselect, right_singular_vectors)

__all__ = [
    "BoundReport", "HyperbolaProfile", "IdentityReport", "bound_factor",
    "bound_report", "hyperbola_profile", "improved_bound", "proof_identities",
    "rate_lower_bound", "theorem1_bound", "EXHAUSTIVE_CAP", "SelectionResult",
    "decremental_select", "decremental_select_naive", "exhaustive_select",
    "single_step_costs", "LeverageScores", "Preselection", "leverage_scores",
    "preselect", "right_singular_vectors"
]
