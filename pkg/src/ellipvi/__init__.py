"""Elliptic representation of the sixth Painleve transcendent.

The package evaluates two-parameter solution families near the critical
points x = 0, 1, infinity, classifies their critical behavior, and solves
the connection problem through monodromy data, including the one-parameter
(non-generic) families parametrized by a triple of trace coordinates.
"""

from .errors import (CaseError, ConsistencyError, DegenerateError,
                     DenominatorError, DomainError, EllipviError,
                     FitDegenerate, GammaPoleError, GuardError,
                     LatticePoleError, PoleEncountered, PoleError,
                     RangeError, ResonanceError, SingularArgumentError,
                     StepUnderflow, StripError, ZeroSigmaError)
from .specialfn import (CoveringPoint, PeriodPair, SeriesValue, digamma,
                        gamma_complex, h_factor, hyper_F, hyper_F1, periods)
from .weierstrass import LatticeFrame, wp, wp_du, wp_prime
from .elliptic_core import (DomainSpec, EllipticParams, SeriesTable,
                            ThetaVector, bound_constant, case_exponents,
                            default_domain, domain_contains, fuchs_residual,
                            pvi_residual, reflect_theta, u_half,
                            v_coefficients, v_eval, validate_params,
                            weight_configs, y_eval)
from .critical import (AsymptoticForm, PathSpec, behavior_at_0,
                       behavior_at_1, behavior_at_inf, loop_continuation,
                       path_point, picard_behavior)
from .oracle import (Trajectory, equation_residual, fit_behavior,
                     integrate_pvi, picard_solution,
                     transcendent_derivatives)
from .monodromy import (MonodromyData, SigmaA, a_from_s, canonical_sigma,
                        laurent_coefficients, m_matrices, nu_to_sigma_a,
                        s_from_traces, sigma_a_to_nu, sigma_aliases,
                        sigma_from_trace, traces_from_params,
                        transform_to_x1, transform_to_xinf)
from .nongeneric import (K_shift, Triple, a_of, nu1_of_triple,
                         params_of_triple, sigma_of_triple, triple_from_nu,
                         triple_of, triple_to_x1, triple_to_xinf)

__version__ = "0.1.0"
