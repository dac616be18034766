'''Property battery of the ``verify`` command.

Each suite returns :class:`.CheckResult` rows whose ``value`` is the worst
margin or residual over a seeded sample of grid functions; a row passes
when that value meets its threshold.
'''
from collections import namedtuple
import logging

import numpy as np

from ..energy import (Functional, dphi, gradient, weak_residual,
                      euler_identity_gap, holder_margin, monotonicity_margin)
from ..fracops import (frac_integral_left, frac_deriv_left,
                       grunwald_letnikov_left, check_left_inverse,
                       check_semigroup, check_integration_by_parts,
                       check_integration_by_parts_integrals)
from ..grid import GridFunction
from ..model import (CheckResult, check_f1, check_f2, check_f3,
                     ar_lower_bound)
from ..space import (poincare_constant, sup_embedding_constant, seminorm,
                     sup_norm, tol_disc, check_poincare, check_sup_embedding,
                     check_norm_equivalence, check_integral_bound,
                     check_lq_embedding, check_reverse_minkowski,
                     check_reverse_holder, clarkson_pointwise,
                     convexity_midpoint_gap, midpoint_bound)
from ..utils.populate import populate
from ..utils.special import gamma


__all__ = ['Row', 'run_battery', 'SUITES']

LOGGER = logging.getLogger('fracmp.verify')

#: rounding slack of the exact discrete identities
EXACT = 1e-10
#: slack of first order consistency checks, in units of ``h``
FIRST_ORDER = 2.0
#: exponent of the quasi-norm checks
QUASI_P = 0.5
#: relative step of the finite difference gradient check
FD_STEP = 1e-6
FD_TOLERANCE = 1e-5


class Row(namedtuple('Row', 'suite result')):
    __slots__ = ()


def _scale(u):
    '''``max|u| + max|u'|`` with a first difference slope.'''
    values = u.values
    slope = np.diff(values) / u.grid.h
    return float(np.max(np.abs(values)) + np.max(np.abs(slope)))


def _worst(name, values, threshold, detail, upper=True):
    '''``values`` are residuals (``upper``) or margins.'''
    values = np.asarray(values, dtype=float)
    if upper:
        worst = float(np.max(values))
        return CheckResult(name, worst, worst <= threshold, detail)
    worst = float(np.min(values))
    return CheckResult(name, worst, worst >= threshold, detail)


# ########################################################### FRACOPS
def fracops_suite(run, functions):
    grid = run.grid
    alpha = run.params.alpha
    h = grid.h
    t = grid.nodes
    linear = GridFunction(grid, t)
    exact = t ** (1 + alpha) / gamma(2 + alpha)
    error = np.max(np.abs(frac_integral_left(linear, alpha).values - exact))
    yield CheckResult('power_rule_integral', error / np.max(exact),
                      error <= EXACT * np.max(exact),
                      'I^a t against t^(1+a)/Gamma(2+a)')
    exact = t ** (1 - alpha) / gamma(2 - alpha)
    error = np.max(np.abs(frac_deriv_left(linear, alpha).values -
                          exact)[1:])
    yield CheckResult('power_rule_derivative', error,
                      error <= EXACT * np.max(exact),
                      'D^a t against t^(1-a)/Gamma(2-a)')
    corpus = populate('corpus', grid=grid)
    left = [check_left_inverse(u, alpha) / (h * _scale(u)) for u in corpus]
    yield _worst('left_inverse', left, FIRST_ORDER,
                 'sup |D^a I^a u - u| / (h scale), smooth corpus')
    half = 0.5 * alpha
    semi = [check_semigroup(u, half, half) / (h * _scale(u))
            for u in corpus]
    yield _worst('semigroup', semi, FIRST_ORDER,
                 'sup |I^(a/2) I^(a/2) u - I^a u| / (h scale)')
    gl = []
    for u in corpus:
        diff = (grunwald_letnikov_left(u, alpha).values -
                frac_deriv_left(u, alpha).values)
        scale = _scale(u) + np.max(np.abs(frac_deriv_left(u, alpha).values))
        gl.append(grid.integrate(np.abs(diff)) / (h * scale))
    yield _worst('grunwald_letnikov', gl, 2 * FIRST_ORDER,
                 'L1 distance to the L1 scheme / (h scale)')
    pairs = zip(functions[::2], functions[1::2])
    ibp, ibp_int = [], []
    for u, v in pairs:
        scale = max(1.0, sup_norm(u) * sup_norm(v))
        ibp.append(check_integration_by_parts(u, v, alpha) / scale)
        ibp_int.append(check_integration_by_parts_integrals(u, v, alpha) /
                       (h * _scale(u) * _scale(v)))
    yield _worst('integration_by_parts', ibp, EXACT,
                 'Dirichlet pairs, relative residual')
    yield _worst('integration_by_parts_integrals', ibp_int, FIRST_ORDER,
                 '|<I^a u, v> - <u, I^a_T v>| / (h scale)')


# ########################################################### SPACE
def space_suite(run, functions, positives):
    params = run.params
    N = run.grid_N
    P = poincare_constant(params)
    S = sup_embedding_constant(params)
    semis = [seminorm(u, params) for u in functions]
    yield _worst('poincare',
                 [check_poincare(u, params) / (P * s)
                  for u, s in zip(functions, semis)],
                 -tol_disc(N), 'P |u| - ||u||_p, relative', upper=False)
    yield _worst('sup_embedding',
                 [check_sup_embedding(u, params) / (S * s)
                  for u, s in zip(functions, semis)],
                 -tol_disc(N), 'S |u| - ||u||_inf, relative', upper=False)
    lower, upper = zip(*(check_norm_equivalence(u, params)
                         for u in functions))
    yield _worst('norm_equivalence', np.minimum(lower, upper) /
                 np.array(semis), -EXACT,
                 'seminorm vs full norm', upper=False)
    yield _worst('integral_bound',
                 [check_integral_bound(u, params) / max(1.0, sup_norm(u))
                  for u in functions], -tol_disc(N),
                 '||I^a u||_p <= T^a/Gamma(a+1) ||u||_p', upper=False)
    q = run.nl.q
    yield _worst('lq_embedding',
                 [check_lq_embedding(u, params.p, q) /
                  max(1.0, sup_norm(u) ** q) for u in functions],
                 -EXACT, '||u||_q^q <= ||u||_inf^(q-p) ||u||_p^p',
                 upper=False)
    pairs = list(zip(functions[::2], functions[1::2]))
    yield _worst('convexity_midpoint',
                 [convexity_midpoint_gap(u, v, params) for u, v in pairs],
                 -EXACT, 'Clarkson gap of unit functions', upper=False)
    yield _worst('midpoint_bound',
                 [midpoint_bound(u, v, params) for u, v in pairs],
                 -EXACT, '1 - delta(eps) - |(u+v)/2|', upper=False)
    quasi = list(zip(positives[::2], positives[1::2]))
    yield _worst('reverse_minkowski',
                 [check_reverse_minkowski(u, v, QUASI_P) for u, v in quasi],
                 -EXACT, 'p = %s' % QUASI_P, upper=False)
    yield _worst('reverse_holder',
                 [check_reverse_holder(u, v, QUASI_P) for u, v in quasi],
                 -EXACT, 'p = %s' % QUASI_P, upper=False)


def scalar_suite(run, rng, size):
    p = run.params.p
    z = 10 * rng.standard_normal(size)
    w = 10 * rng.standard_normal(size)
    lhs, rhs = clarkson_pointwise(z, w, p)
    yield _worst('clarkson_pointwise', (lhs - rhs) / np.maximum(1, rhs),
                 1e-12, 'lhs - rhs, relative')
    scale = np.maximum(1, np.abs(z) + np.abs(w)) ** max(p - 1, 1)
    yield _worst('holder', holder_margin(z, w, p) / scale, -1e-12,
                 'continuity of |z|^(p-2) z', upper=False)
    scale = np.maximum(1, np.abs(z) + np.abs(w)) ** max(p, 2)
    yield _worst('monotonicity', monotonicity_margin(z, w, p) / scale,
                 -1e-12, 'strong monotonicity of |z|^(p-2) z', upper=False)


# ########################################################### MODEL
def model_suite(run, rng, size):
    nl = run.nl
    t = rng.uniform(0, run.params.T, size)
    xi = np.concatenate([rng.standard_normal(size // 2) * 10,
                         rng.standard_normal(size - size // 2) * 1e-3])
    yield check_f1(nl, (t, xi))
    if not nl.is_forcing:
        yield check_f2(nl, (t, xi))
        gap = nl.F(t, xi) - ar_lower_bound(nl, t, xi)
        yield _worst('ar_lower_bound', gap / np.maximum(1, nl.F(t, xi)),
                     -1e-12, 'F(t, xi) >= c |xi|^mu for |xi| >= r',
                     upper=False)
    if run.cfg.get('verify.f3'):
        yield check_f3(nl, run.params.p)


# ########################################################### ENERGY
def energy_suite(run, functions):
    params, nl = run.params, run.nl
    eps_reg = run.solver.eps_reg
    F = Functional(run.grid, params, nl, eps_reg)
    errors, residuals = [], []
    for u, v in zip(functions[::2], functions[1::2]):
        x, y = u.values, v.values
        g = F.gradient(x)
        exact = float(np.dot(g, y))
        fd = (F.value(x + FD_STEP * y) -
              F.value(x - FD_STEP * y)) / (2 * FD_STEP)
        d, dv = F.D @ x, F.D @ y
        size = (np.dot(F.w, np.abs(dphi(d, params.p, eps_reg) * dv)) +
                np.dot(F.w, np.abs(nl.f(F.t, x) * y)))
        errors.append(abs(fd - exact) / max(size, 1e-300))
        wr = weak_residual(u, v, params, nl, eps_reg)
        residuals.append(abs(wr - exact) / max(size, 1e-300))
    yield _worst('gradient_finite_difference', errors, FD_TOLERANCE,
                 'central differences, h = %g' % FD_STEP)
    yield _worst('weak_residual', residuals, EXACT,
                 'weak form against the gradient pairing')
    if params.p >= 2:
        gaps = []
        for u in functions:
            scale = max(1.0, abs(F.breakdown(u.values).J) * params.p)
            gaps.append(abs(euler_identity_gap(u, params, nl)) / scale)
        yield _worst('euler_identity', gaps, EXACT,
                     '<grad I(u), u> = p J(u) - int f(u) u')
    zero = gradient(GridFunction.zeros(run.grid), params, nl, eps_reg)
    if not nl.is_forcing:
        yield _worst('gradient_at_zero', [np.max(np.abs(zero.values))],
                     EXACT, 'the origin is a critical point')


SUITES = ('fracops', 'space', 'scalar', 'model', 'energy')


def run_battery(run):
    '''All suites on ``run``: a list of :class:`Row`.'''
    seed = run.solver.seed
    size = run.cfg.get('verify.samples') or 100
    grid = run.grid
    rng = np.random.default_rng(seed)
    functions = populate('dirichlet', 2 * max(1, size // 2), grid=grid,
                         seed=seed)
    positives = populate('positive', 2 * max(1, size // 2), grid=grid,
                         seed=seed + 1)
    rows = []
    suites = (('fracops', fracops_suite(run, functions)),
              ('space', space_suite(run, functions, positives)),
              ('scalar', scalar_suite(run, rng, 100 * size)),
              ('model', model_suite(run, rng, 100 * size)),
              ('energy', energy_suite(run, functions)))
    for suite, results in suites:
        for result in results:
            LOGGER.debug('%s.%s: %s %.6g', suite, result.name, result.status,
                         result.value)
            rows.append(Row(suite, result))
    return rows
