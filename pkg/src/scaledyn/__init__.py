"""scaledyn: discrete multiscale calculus on nested finite time-scales.

Build fractal scale functions by composing elementary actions, differentiate
them level by level with the Delta/nabla calculus, measure the scale effect of
refinement through correction terms and power-law regimes, and evaluate the
asymptotic operators and PDE residuals the fractional regime gives rise to.
"""

from .asymptotic import (AsymptoticContext, box_infinity,
                         box_infinity_closed_form, delta_infinity,
                         lambda_alpha, nabla_infinity)
from .dynamics import (ChainRuleCheck, CorrectionField, DerivabilityReport,
                       PointMap, ReferenceScaleFunction, chain_rule_delta,
                       chain_rule_nabla, correction_left, correction_right,
                       derivability_probe, dq_delta, dq_nabla,
                       half_difference, interpolate_onto, left_reduced_points,
                       mso_correction, okamoto_correction,
                       okamoto_identity_residual, reference_function,
                       right_reduced_points, scale_effect_identity_check,
                       scale_effect_residuals, scale_sign)
from .errors import (InsufficientDataError, NotInTimeScaleError,
                     PatternExhaustedError, RefinementKindError, ScaleDynError,
                     TooFewPointsError)
from .exactnum import Root2, sqrt_dyadic
from .observables import Observable, check_partials, polynomial_x, sin_x, x_power
from .pde import (Grid, Lagrangian, ModelParameters, Potential, PsiField,
                  box_nonlinear_residual, diffusion_residual,
                  drift_consistency_check, exponential_solution,
                  harmonic_ground_state, heat_kernel,
                  linear_scale_equation_residual, nonlinear_psi_residual,
                  plane_wave, psi_field_from_table,
                  scale_euler_lagrange_residual, scale_newton_residual,
                  schrodinger_residual)
from .regime import (Decomposition, GlobalRegime, LambdaEstimate, LocalRegime,
                     ScaleRange, SlopeFit, estimate_lambda, extend,
                     global_regime, local_regime, pointwise_regime, slope_fit)
from .scale_functions import (INFINITE, ElementaryAction, MultiscalePattern,
                              ScaleFamily, ScaleFunction, ScaleSequence,
                              build_multiscale, build_okamoto,
                              displacement_action, elem_decompose,
                              identity_base, linear_reference_action,
                              okamoto_action, read_manifest,
                              rebuild_from_manifest, save_scale_function,
                              scale_action_apply, scale_antiderivative,
                              scale_delta, scale_nabla)
from .symbolic import (ClassificationReport, SymbolSequence, classify,
                       expand_pattern, read_sequence, sequence_metric, shift)
from .synthetic import binomial_fluctuation, random_dyadic, smooth_dyadic
from .timescale import (DiscreteFunction, TimeScale, as_fraction,
                        cauchy_delta_integral, delta_antiderivative,
                        delta_derivative, nabla_derivative, write_discrete_csv)

__version__ = "0.1.0"
