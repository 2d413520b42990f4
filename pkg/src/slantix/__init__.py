"""Space curves from intrinsic equations, with closed-form slant helices and
an independent Frenet-Serret integrator for cross-checking them."""

from .curves import CurveSample, FrenetFrame, Generator, SampledCurve
from .errors import (DegenerateError, DomainError, FrameError, MissingFrameError,
                     ParameterMismatchError, QuadratureError, SingularParameterError,
                     SlantixError, StepError, TooFewSamplesError)
from .families import FAMILIES, build_curve
from .oracle import InitialState, IntegratorConfig, integrate_frenet, integrate_on_grid, seeded_oracle
from .profiles import (AntiSalkowski, Branch, ConstantCurve, ConstantPrecession, CosineKappa,
                       Salkowski, Sign, SlantFromKappa, SlantParameters, Tabulated,
                       TabulatedKappa, f_of_theta, slant_tau_from_kappa)
from .synthesis import (anti_salkowski_curve, constant_precession_curve, normal_vector,
                        position_natural, position_parametric_t, salkowski_curve,
                        sample_anti_salkowski, sample_constant_precession, sample_salkowski)
from .verify import (VerificationReport, all_passed, axis_recovery, compare_curves,
                     darboux_checks, estimate_curvature_torsion, sigma_check, sigma_profile,
                     slant_angle_check, slant_suite, third_order_ode_residual)

__version__ = "0.1.0"
