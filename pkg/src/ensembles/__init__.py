"""
Random problem instances: sparse signals, compression matrices and y = F x0.
"""

from .priors import NonzeroLaw, SignalPrior, SupportMode, sample_signal
from .matrices import MatrixEnsemble, sample_matrix
from .rng import RNG_ALGORITHM, derive_trial_seed, make_rng
from .instances import ProblemInstance, dump_instance, load_instance, make_instance

__all__ = [
    "NonzeroLaw",
    "SignalPrior",
    "SupportMode",
    "sample_signal",
    "MatrixEnsemble",
    "sample_matrix",
    "RNG_ALGORITHM",
    "derive_trial_seed",
    "make_rng",
    "ProblemInstance",
    "dump_instance",
    "load_instance",
    "make_instance",
]
