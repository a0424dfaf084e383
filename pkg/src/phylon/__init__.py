"""Exact Laplace-expansion invariants and formal diffeomorphism equivalence."""
from .errors import (DimensionMismatch, InvariantMismatch, NonCoercive, NotInvertible,
                     NotPositiveDefinite, NotRationalSquare, PhylonError, TruncationError)
from .group import (PairInstance, PhylonMap, act_on_b, act_on_f, act_on_pair, compose_phylon,
                    invert_phylon, kernel_level)
from .invariants import (InvariantSequence, MomentSpec, ScaledInvariant, gaussian_moment,
                         invariant_equal, invariant_sequence, lambda_general, lambda_reduced)
from .kernels import BACKEND
from .normalization import (EquivalenceVerdict, EquivalenceWitness, decide_equivalence,
                            morse_normalize, spherical_step)
from .series import TruncatedSeries, compose, homogeneous_part, jet, mul, tensor_coeff
from .tensors import KTensor, SymTensor, complete_trace, solve_t, t_contract, trace_decompose

__version__ = "0.1.0"
