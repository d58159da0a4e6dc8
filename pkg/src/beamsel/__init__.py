"""Decremental beam selection for zero-forcing beamspace MIMO.

Greedy beam elimination with Sherman-Morrison downdates, hyperbolic
bounds on the resulting precoder norm, sum-rate lower bounds, and a
Monte Carlo harness on a multipath ULA channel model.
"""

from .channel import (ChannelParams, dft_matrix, generate_beamspace_channel,
                      generate_spatial_channel, load_channel, save_channel,
                      steering_vector, to_beamspace)
from .errors import (BeamselError, InfeasibleSelection, NumericalFailure,
                     SingularGram)
from .linalg import (gram, hermitian_eig, hermitian_inverse, pinv_fro_norm_sq,
                     sherman_morrison_downdate, trace_inverse)
from .precoding import partition, sum_rate, zf_precoder
from .selection import (bound_report, decremental_select,
                        decremental_select_naive, exhaustive_select,
                        hyperbola_profile, improved_bound, leverage_scores,
                        preselect, proof_identities, rate_lower_bound,
                        single_step_costs, theorem1_bound)

__version__ = "0.1.0"
