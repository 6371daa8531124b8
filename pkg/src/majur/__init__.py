"""Majorization uncertainty-relation bounds for finite-dimensional measurements."""

from .bounds import (BoundVector, Setting, SubsetBudget, dp_bound_t, dp_multi_bound,
                     ds_bound_s, ds_multi_bound, estimate_r, verify_mur)
from .lattice import (CumulativeVector, LorenzCurve, WeightVector, flatten, join,
                      lorenz_curve, majorizes, optimal_upper_bound)
from .measures import measure_U, measure_V, shannon_entropy, uncertainty_gaps
from .quantum import (Measurement, PureState, born_probabilities, builtin_measurement,
                      direct_product, direct_sum, make_state)

__version__ = "0.1.0"
