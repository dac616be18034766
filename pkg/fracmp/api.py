'''Flat namespace of the public fracmp objects.'''
from .utils.exceptions import (
    FracmpException, InvalidParameter, BoundaryConditionError,
    ImproperlyConfigured, SolverError, GeometryError, PathCollapse,
    MaxIterations, CommandError, CommandNotFound
)
from .utils.config import Config, Setting
from .utils.special import gamma
from .utils.populate import populate

from .grid import FracOrder, Grid, GridFunction, DirichletGridFunction
from .fracops import (
    Side, Scheme, ConvolutionWeights, convolution_weights,
    frac_integral_left, frac_integral_right, frac_deriv_left,
    frac_deriv_right, caputo_left, caputo_right, grunwald_letnikov_left,
    grunwald_letnikov_right, rl_from_caputo, check_left_inverse,
    check_semigroup, check_integration_by_parts,
    check_integration_by_parts_integrals
)
from .space import (
    FracParams, NormReport, lp_norm, quasi_norm, sup_norm, seminorm,
    full_norm, norm_report, poincare_constant, sup_embedding_constant,
    geometry_constant, tol_disc, check_poincare, check_sup_embedding,
    check_norm_equivalence, check_integral_bound, check_lq_embedding,
    check_reverse_minkowski, check_reverse_holder, clarkson_pointwise,
    convexity_midpoint_gap, modulus_of_convexity, midpoint_bound
)
from .model import (
    Nonlinearity, CheckResult, eval_f, eval_F, check_f1, check_f2, check_f3,
    ar_constant, ar_lower_bound, default_ar_exponent
)
from .energy import (
    EnergyBreakdown, Functional, energy, gradient, weak_residual, dual_norm,
    directional_derivative, euler_identity_gap, holder_margin,
    monotonicity_margin, ps_coefficient
)
from .solver import (
    SolverOptions, GeometryEstimate, SolveReport, PSDiagnostic,
    estimate_geometry, mountain_pass_solve, convex_solve, ps_diagnostic
)
from .oracles import shooting_solution, sine_forcing, manufactured_forcing
from .apps import Application, RunConfig, Mode


__all__ = [
    #
    # Exceptions and Config
    'FracmpException',
    'InvalidParameter',
    'BoundaryConditionError',
    'ImproperlyConfigured',
    'SolverError',
    'GeometryError',
    'PathCollapse',
    'MaxIterations',
    'CommandError',
    'CommandNotFound',
    'Config',
    'Setting',
    'gamma',
    'populate',
    #
    # Grids and operators
    'FracOrder',
    'Grid',
    'GridFunction',
    'DirichletGridFunction',
    'Side',
    'Scheme',
    'ConvolutionWeights',
    'convolution_weights',
    'frac_integral_left',
    'frac_integral_right',
    'frac_deriv_left',
    'frac_deriv_right',
    'caputo_left',
    'caputo_right',
    'grunwald_letnikov_left',
    'grunwald_letnikov_right',
    'rl_from_caputo',
    'check_left_inverse',
    'check_semigroup',
    'check_integration_by_parts',
    'check_integration_by_parts_integrals',
    #
    # Space
    'FracParams',
    'NormReport',
    'lp_norm',
    'quasi_norm',
    'sup_norm',
    'seminorm',
    'full_norm',
    'norm_report',
    'poincare_constant',
    'sup_embedding_constant',
    'geometry_constant',
    'tol_disc',
    'check_poincare',
    'check_sup_embedding',
    'check_norm_equivalence',
    'check_integral_bound',
    'check_lq_embedding',
    'check_reverse_minkowski',
    'check_reverse_holder',
    'clarkson_pointwise',
    'convexity_midpoint_gap',
    'modulus_of_convexity',
    'midpoint_bound',
    #
    # Model and energy
    'Nonlinearity',
    'CheckResult',
    'eval_f',
    'eval_F',
    'check_f1',
    'check_f2',
    'check_f3',
    'ar_constant',
    'ar_lower_bound',
    'default_ar_exponent',
    'EnergyBreakdown',
    'Functional',
    'energy',
    'gradient',
    'weak_residual',
    'dual_norm',
    'directional_derivative',
    'euler_identity_gap',
    'holder_margin',
    'monotonicity_margin',
    'ps_coefficient',
    #
    # Solvers
    'SolverOptions',
    'GeometryEstimate',
    'SolveReport',
    'PSDiagnostic',
    'estimate_geometry',
    'mountain_pass_solve',
    'convex_solve',
    'ps_diagnostic',
    'shooting_solution',
    'sine_forcing',
    'manufactured_forcing',
    #
    # Application
    'Application',
    'RunConfig',
    'Mode'
]
