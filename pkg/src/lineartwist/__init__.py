"""Linear twists of degree-1 functions of the extended Selberg class."""

from .characters import (DirichletCharacter, GaussData, character, characters_mod,
                         conductor_and_primitive, gauss_sum, omega_char, parity_class)
from .degree1 import (Degree1Function, PeriodicCoefficients, build_function, coefficients,
                      reference_dirichlet_series)
from .errors import (ContourError, DomainError, EmptyFunctionError, InvalidComponentError,
                     InvalidModulusError, InvalidParityError, LinearTwistError, NoSupportError,
                     PoleError, PrecisionError, RequiresPrimitiveError, SpecParseError,
                     SymmetryViolationError, UnknownCharacterError)
from .growth import lindelof_estimate
from .kernels import EvalResult, LerchPoint, hurwitz_zeta, lerch_fe_rhs, lerch_zeta, log_gamma
from .specfile import parse_spec
from .suite import RunReport, run_suite
from .twist import (TwistQuery, f_star, fe_rhs, fe_rhs_component, fe_rhs_L, l_star, l_twist,
                    linear_twist, residue_formula, residue_numeric)
from .zeros import (TrivialZeroFrame, ZeroRecord, build_frame, count_zeros, evaluate_V, evaluate_W,
                    rvm_prediction, trivial_zeros, zero_scan)

__version__ = "0.1.0"
