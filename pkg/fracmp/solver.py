'''Critical points of the discrete energy.

Mountain pass
~~~~~~~~~~~~~~~~~~

:func:`mountain_pass_solve` deforms a discrete path ``z_0 = 0, ..., z_K = e``
joining the origin to a far point of negative energy. The path starts as
the segment ``0 → e`` with one node on the peak of ``σ ↦ I(σe)``. Each
iteration

1. locates the path maximizer ``j = argmax I(z_j)`` (lowest index wins);
2. takes an Armijo step from ``z_j`` along the preconditioned gradient
   ``-M⁻¹∇I``, made ``M``-orthogonal to the path tangent
   ``z_{j+1} - z_{j-1}`` so that it only lowers the mountain;
3. climbs back to the peak of ``σ ↦ I(σ z_j)`` and replaces ``z_j``, the
   other states stay;
4. every ``redistribute_every`` iterations re-splines the path through all
   its states at uniform arc length in the seminorm metric.

``M = (p-1) Dᵀ W diag((d² + κ²)^{(p-2)/2}) D`` on interior nodes, with
``d = D z`` and ``κ`` a small fraction of the root mean square of ``d``, is
the Picard (Kačanov) metric of the ``p``-Dirichlet term. For ``p = 2`` it
is the constant stiffness matrix and is factorized once.

Convex mode
~~~~~~~~~~~~~~~~~~

:func:`convex_solve` minimizes the strictly convex energy of a pure forcing
nonlinearity by the same preconditioned Armijo descent, from several seeded
starting points.
'''
from collections import namedtuple
import logging

import numpy as np
from scipy.linalg import cho_factor, cho_solve
from scipy.interpolate import make_interp_spline
from scipy.optimize import brentq

from .energy import EPS_REG, Functional, ps_coefficient
from .fracops import Side
from .grid import Grid, DirichletGridFunction
from .space import geometry_constant
from .utils.exceptions import (InvalidParameter, GeometryError,
                               PathCollapse)
from .utils.populate import populate
from .utils.special import gamma


__all__ = ['SolverOptions', 'GeometryEstimate', 'SolveReport',
           'PSDiagnostic', 'estimate_geometry', 'mountain_pass_solve',
           'convex_solve', 'ps_diagnostic', 'ray_peak']

LOGGER = logging.getLogger('fracmp.solver')

#: smallest relative tolerance accepted by scipy's brentq
BRENT_RTOL = 4 * np.finfo(float).eps

#: relative size of the metric regularization ``κ``
KAPPA_SCALE = 1e-2
#: far point search stops at this dilation
MAX_DILATION = 2.0 ** 60
#: relative energy increase tolerated by a noise limited step
NOISE_FLOOR = 64 * np.finfo(float).eps


_options = namedtuple('SolverOptions', [
    'tol_grad', 'max_iters', 'path_points', 'step_init', 'armijo_c',
    'backtrack_factor', 'seed', 'eps_reg', 'redistribute_every',
    'multi_start', 'norm_cap', 'max_backtracks'])


class SolverOptions(_options):
    '''Tuning of the solvers.

    ============================  ======================================
    ``tol_grad``                  stop when the dual gradient norm is below
    ``max_iters``                 iteration budget
    ``path_points``               ``K``, number of path segments (``≥ 8``)
    ``step_init``                 first trial step of the line search
    ``armijo_c``                  sufficient decrease constant
    ``backtrack_factor``          step reduction factor
    ``seed``                      seed of the multi-start generator
    ``eps_reg``                   regularization of ``|z|^{p-2}`` for p < 2
    ``redistribute_every``        path redistribution period
    ``multi_start``               convex mode starting points
    ``norm_cap``                  max/median bound of the iterate norms
    ``max_backtracks``            line search budget
    ============================  ======================================
    '''
    __slots__ = ()

    def __new__(cls, tol_grad=1e-6, max_iters=2000, path_points=16,
                step_init=1.0, armijo_c=1e-4, backtrack_factor=0.5, seed=0,
                eps_reg=EPS_REG, redistribute_every=10, multi_start=3,
                norm_cap=100.0, max_backtracks=40):
        self = super().__new__(
            cls, float(tol_grad), int(max_iters), int(path_points),
            float(step_init), float(armijo_c), float(backtrack_factor),
            int(seed), float(eps_reg), int(redistribute_every),
            int(multi_start), float(norm_cap), int(max_backtracks))
        if not self.tol_grad > 0:
            raise InvalidParameter('tol_grad must be positive')
        if self.max_iters < 1:
            raise InvalidParameter('max_iters must be at least 1')
        if self.path_points < 8:
            raise InvalidParameter('path_points must be at least 8')
        if not self.step_init > 0:
            raise InvalidParameter('step_init must be positive')
        if not 0 < self.armijo_c < 1:
            raise InvalidParameter('armijo_c must be in (0, 1)')
        if not 0 < self.backtrack_factor < 1:
            raise InvalidParameter('backtrack_factor must be in (0, 1)')
        if not self.eps_reg > 0:
            raise InvalidParameter('eps_reg must be positive')
        if self.redistribute_every < 1 or self.multi_start < 1:
            raise InvalidParameter('redistribute_every and multi_start '
                                   'must be positive')
        if not self.norm_cap > 1:
            raise InvalidParameter('norm_cap must exceed 1')
        return self


class GeometryEstimate(namedtuple('GeometryEstimate',
                                  'rho beta e u0 sigma epsilon C')):
    '''Mountain pass geometry: ``I ≥ beta`` on the sphere of radius
    ``rho`` and ``I(e) < 0`` at ``e = sigma u0``.
    '''
    __slots__ = ()


class PSDiagnostic(namedtuple('PSDiagnostic',
                              'coefficient hypothesis_ok bounded ratio '
                              'ps_margin messages')):
    __slots__ = ()


class SolveReport:
    '''Outcome of a solve.

    .. attribute:: u_star

        The computed critical point, a :class:`.DirichletGridFunction`.

    .. attribute:: converged

        ``False`` when the iteration budget ran out, ``u_star`` is then the
        iterate with the smallest gradient norm, or when the mountain pass
        critical point breaks one of the geometry bounds.

    .. attribute:: violations

        Messages of the broken geometry bounds.

    .. attribute:: noise_steps

        Steps accepted without sufficient decrease because energy
        differences were below rounding.
    '''
    def __init__(self, mode, params, nl, opts, u_star, breakdown, grad_norm,
                 iterations, converged, geometry=None, path_profile=(),
                 iterate_norm_history=(), grad_norm_history=(),
                 minimizers=(), side=Side.LEFT, noise_steps=0,
                 violations=()):
        self.mode = mode
        self.params = params
        self.nl = nl
        self.opts = opts
        self.u_star = u_star
        self.breakdown = breakdown
        self.grad_norm = grad_norm
        self.iterations = iterations
        self.converged = converged
        self.geometry = geometry
        self.path_profile = np.asarray(path_profile, dtype=float)
        self.iterate_norm_history = np.asarray(iterate_norm_history,
                                               dtype=float)
        self.grad_norm_history = np.asarray(grad_norm_history, dtype=float)
        self.minimizers = list(minimizers)
        self.side = side
        self.noise_steps = int(noise_steps)
        self.violations = list(violations)

    def __repr__(self):
        return ('SolveReport(mode=%s, I=%.10g, grad_norm=%.3g, '
                'iterations=%d, converged=%s)' %
                (self.mode, self.energy_value, self.grad_norm,
                 self.iterations, self.converged))

    @property
    def energy_value(self):
        return self.breakdown.I

    @property
    def grid(self):
        return self.u_star.grid

    @property
    def multi_start_spread(self):
        '''Largest sup distance between the multi-start minimizers.'''
        if len(self.minimizers) < 2:
            return 0.0
        ref = self.minimizers[0].values
        return max(float(np.max(np.abs(m.values - ref)))
                   for m in self.minimizers[1:])


# ########################################################### METRIC
class Metric:
    '''Picard metric on interior nodes with its Cholesky factor.'''

    def __init__(self, functional):
        self.F = functional
        self.D = functional.D[:, 1:-1]
        self._constant = None
        if functional.p == 2:
            self._constant = self._factor(np.ones(functional.grid.size))

    def _factor(self, weights):
        wd = self.F.w * weights
        M = self.D.T @ (wd[:, None] * self.D)
        return M, cho_factor(M)

    def at(self, x):
        if self._constant is not None:
            return self._constant
        p = self.F.p
        d = self.F.D @ x
        kappa = KAPPA_SCALE * float(np.sqrt(np.mean(d * d))) or 1.0
        return self._factor((p - 1) * (d * d + kappa * kappa) **
                            ((p - 2) / 2))

    def direction(self, x, g, tangent=None):
        '''``-M⁻¹g``, made ``M``-orthogonal to ``tangent`` when the result
        is still a descent direction.
        '''
        M, factor = self.at(x)
        s = np.zeros_like(x)
        s[1:-1] = -cho_solve(factor, g[1:-1])
        if tangent is not None:
            tau = tangent[1:-1]
            Mtau = M @ tau
            norm = float(np.dot(tau, Mtau))
            if norm > 0:
                projected = s.copy()
                projected[1:-1] -= np.dot(s[1:-1], Mtau) / norm * tau
                if np.dot(g, projected) < 0:
                    return projected
        return s


def armijo(fun, x, fx, g, s, step, c, factor, max_backtracks):
    '''Backtracking line search along ``s``.

    Returns ``(step, x_new, f_new)`` for the first trial step meeting the
    sufficient decrease condition, ``None`` when the budget runs out.
    '''
    slope = float(np.dot(g, s))
    if slope >= 0:
        return None
    for _ in range(max_backtracks):
        x_new = x + step * s
        f_new = fun(x_new)
        if f_new <= fx + c * step * slope:
            return step, x_new, f_new
        step *= factor
    return None


def ray_peak(functional, x):
    '''Dilation ``σ > 0`` maximizing ``σ ↦ I(σ x)``.

    Root of ``d/dσ I(σx)`` bracketed around the homogeneous estimate
    ``σ₀ = (⟨φ'(Dx), Dx⟩ / ⟨f(x), x⟩)^{1/(q-p)}``.
    '''
    F = functional
    d = F.derivative(x)
    p, q = F.p, F.nl.q
    top = float(np.dot(F.w, np.abs(d) ** p))
    bottom = float(np.dot(F.w, F.nl.f(F.t, x) * x))
    if not bottom > 0 or not top > 0:
        raise GeometryError('The energy has no peak along this ray')
    sigma0 = (top / bottom) ** (1 / (q - p))

    def slope(sigma):
        return F.ray_slope(x, sigma)

    lo, hi = 0.5 * sigma0, 2 * sigma0
    for _ in range(200):
        if slope(lo) > 0:
            break
        lo *= 0.5
    else:
        raise GeometryError('Could not bracket the ray peak from below')
    for _ in range(200):
        if slope(hi) < 0:
            break
        hi *= 2
    else:
        raise GeometryError('Could not bracket the ray peak from above')
    return brentq(slope, lo, hi, xtol=1e-15 * sigma0, rtol=BRENT_RTOL)


# ########################################################### GEOMETRY
def _guard(params, nl):
    if nl.is_forcing:
        raise InvalidParameter(
            'The mountain pass needs the pure power nonlinearity')
    if abs(params.alpha - 1 / params.p) < 1e-6:
        raise InvalidParameter('alpha too close to 1/p')
    if nl.q - params.p < 1e-3:
        raise InvalidParameter('q must exceed p by at least 1e-3')


def estimate_geometry(params, nl, opts=None, N=256, side=Side.LEFT):
    '''Sphere radius ``ρ``, floor ``β`` and far point ``e``.

    ``ρ`` solves ``1/(2p) - C ρ^{q-p} = 1/(4p)`` where ``C`` bounds
    ``H(u) ≤ C ‖u‖^q`` through the Poincaré and sup embeddings, and
    ``β = ρ^p/(4p)``. The far point is ``e = σ u₀`` with ``u₀`` the unit
    sine bump and ``σ`` doubled from one until ``I(σu₀) < 0`` and
    ``σ ≥ ρ``.
    '''
    opts = opts or SolverOptions()
    _guard(params, nl)
    grid = Grid(params.T, N)
    F = Functional(grid, params, nl, opts.eps_reg, side)
    alpha, p, T = params
    q = nl.q
    C = geometry_constant(params, q, nl.a_max)
    rho = (1 / (4 * p * C)) ** (1 / (q - p))
    beta = rho ** p / (4 * p)
    epsilon = gamma(alpha + 1) / (2 * p * T ** alpha)
    bump = np.sin(np.pi * grid.nodes / T)
    bump[0] = bump[-1] = 0.0
    u0 = bump / F.seminorm(bump)
    sigma = 1.0
    while sigma <= MAX_DILATION:
        if sigma >= rho and F.value(sigma * u0) < 0:
            break
        sigma *= 2
    else:
        raise GeometryError('No dilation up to 2^60 gives negative energy')
    e = DirichletGridFunction(grid, sigma * u0)
    LOGGER.debug('geometry: rho=%.6g beta=%.6g sigma=%.6g', rho, beta, sigma)
    return GeometryEstimate(rho, beta, e, DirichletGridFunction(grid, u0),
                            sigma, epsilon, C)


# ########################################################### PATHS
def _initial_path(F, e, K):
    '''Straight path ``0 → e`` with a node on the peak of ``σ ↦ I(σe)``.

    Falls back to uniform nodes when the peak is not inside the segment.
    '''
    s = np.linspace(0, 1, K + 1)
    try:
        peak = ray_peak(F, e)
    except GeometryError:
        peak = None
    if peak is not None and 0 < peak < 1:
        n1 = min(max(int(round(K * peak)), 1), K - 1)
        s = np.concatenate([np.linspace(0, peak, n1 + 1),
                            np.linspace(peak, 1, K - n1 + 1)[1:]])
    return s[:, None] * e


def _respline(F, path, j):
    '''Re-spline ``path`` through its states at uniform seminorm arc length.

    The endpoints stay and the maximizer ``path[j]`` becomes the node
    closest to its arc length fraction.
    '''
    K = len(path) - 1
    steps = [F.seminorm(b - a) for a, b in zip(path[:-1], path[1:])]
    arc = np.concatenate([[0.0], np.cumsum(steps)])
    if not arc[-1] > 0:
        return path
    n1 = min(max(int(round(K * arc[j] / arc[-1])), 1), K - 1)
    targets = np.concatenate([np.linspace(0, arc[j], n1 + 1),
                              np.linspace(arc[j], arc[-1], K - n1 + 1)[1:]])
    keep = np.concatenate([[True], np.diff(arc) > 0])
    spline = make_interp_spline(arc[keep], path[keep], k=1, axis=0)
    resplined = spline(targets)
    resplined[0], resplined[n1], resplined[K] = path[0], path[j], path[K]
    return resplined


def _maximizer(energies):
    j = int(np.argmax(energies))
    if j in (0, len(energies) - 1):
        raise PathCollapse('Path maximizer at endpoint z_%d' % j)
    return j


def mountain_pass_solve(params, nl, opts=None, N=256, geometry=None,
                        side=Side.LEFT):
    '''Mountain pass critical point of the discrete energy.

    ``side=Side.RIGHT`` solves the mirrored problem, built on the right
    derivative, whose solutions are the reflections ``t ↦ T - t`` of the
    left ones when the weight ``a`` is constant.

    :raise PathCollapse: when the path maximizer reaches an endpoint.
    '''
    opts = opts or SolverOptions()
    if geometry is None:
        geometry = estimate_geometry(params, nl, opts, N, side)
    grid = geometry.e.grid
    F = Functional(grid, params, nl, opts.eps_reg, side)
    metric = Metric(F)
    K = opts.path_points
    path = _initial_path(F, geometry.e.values, K)
    energies = np.array([F.value(z) for z in path])
    best_x, best_g = None, np.inf
    norm_history, grad_history = [], []
    converged = False
    iterations = noise_steps = 0
    for iterations in range(opts.max_iters + 1):
        j = _maximizer(energies)
        if iterations and iterations % opts.redistribute_every == 0:
            path = _respline(F, path, j)
            energies = np.array([F.value(z) for z in path])
            j = _maximizer(energies)
        x = path[j]
        g = F.gradient(x)
        gn = F.dual_norm(g)
        norm_history.append(F.seminorm(x))
        grad_history.append(gn)
        if gn < best_g:
            best_x, best_g = x.copy(), gn
        LOGGER.debug('iteration %d: j=%d I=%.12g grad=%.3e',
                     iterations, j, energies[j], gn)
        if gn <= opts.tol_grad:
            converged = True
            break
        if iterations == opts.max_iters:
            break
        s = metric.direction(x, g, path[j + 1] - path[j - 1])
        step = _line_step(F, x, energies[j], g, gn, s, opts)
        if step is None:
            LOGGER.warning('Line search stalled at grad_norm=%.3e', gn)
            break
        x_new, noisy = step
        noise_steps += noisy
        x_new = ray_peak(F, x_new) * x_new
        path[j] = x_new
        energies[j] = F.value(x_new)
    if converged:
        u_star = path[j]
    else:
        u_star = best_x
        LOGGER.warning('Mountain pass did not converge in %d iterations '
                       '(grad_norm=%.3e)', iterations, best_g)
    _warn_noise(noise_steps, iterations)
    u_star = DirichletGridFunction(grid, u_star)
    report = SolveReport(
        'mountain_pass', params, nl, opts, u_star,
        F.breakdown(u_star.values), best_g if not converged else gn,
        iterations, converged, geometry=geometry, path_profile=energies,
        iterate_norm_history=norm_history, grad_norm_history=grad_history,
        side=Side(side), noise_steps=noise_steps)
    _check_mountain(report, F)
    return report


def _line_step(F, x, fx, g, gn, s, opts):
    '''Armijo step along ``s``, else a full step that lowers the gradient
    norm without raising the energy.

    Returns ``(x_new, noisy)``, ``noisy`` true for the fallback, or
    ``None``.
    '''
    result = armijo(F.value, x, fx, g, s, opts.step_init, opts.armijo_c,
                    opts.backtrack_factor, opts.max_backtracks)
    if result is not None:
        return result[1], False
    # energy differences below rounding
    x_new = x + opts.step_init * s
    if F.value(x_new) > fx + NOISE_FLOOR * max(1.0, abs(fx)):
        return None
    if F.dual_norm(F.gradient(x_new)) < gn:
        LOGGER.debug('noise limited step at grad_norm=%.3e', gn)
        return x_new, True
    return None


def _warn_noise(noise_steps, iterations):
    if noise_steps:
        LOGGER.warning('%d of %d steps accepted without sufficient '
                       'decrease', noise_steps, iterations)


def _check_mountain(report, F):
    '''Record mountain pass conditions violated by a converged solve.

    A violation turns the report into a non converged one.
    '''
    if not report.converged:
        return
    geometry = report.geometry
    if report.energy_value < geometry.beta - report.opts.tol_grad:
        report.violations.append(
            'critical value %.6g below the geometry floor %.6g' %
            (report.energy_value, geometry.beta))
    if F.seminorm(report.u_star.values) < 0.5 * geometry.rho:
        report.violations.append(
            'critical point inside the sphere of radius %.6g' %
            (0.5 * geometry.rho))
    for message in report.violations:
        LOGGER.warning('Mountain pass: %s', message)
    if report.violations:
        report.converged = False
        return
    LOGGER.info('mountain pass: I=%.12g grad_norm=%.3e after %d iterations',
                report.energy_value, report.grad_norm, report.iterations)


# ########################################################### CONVEX
def _descend(F, metric, x, opts):
    fx = F.value(x)
    history = []
    gn = np.inf
    noise_steps = 0
    for iteration in range(opts.max_iters + 1):
        g = F.gradient(x)
        gn = F.dual_norm(g)
        history.append(gn)
        if gn <= opts.tol_grad:
            return x, gn, iteration, True, history, noise_steps
        if iteration == opts.max_iters:
            break
        s = metric.direction(x, g)
        step = _line_step(F, x, fx, g, gn, s, opts)
        if step is None:
            break
        x, noisy = step
        noise_steps += noisy
        fx = F.value(x)
    return x, gn, iteration, False, history, noise_steps


def convex_solve(params, nl, opts=None, N=256, side=Side.LEFT):
    '''Unique minimizer of the energy of a pure forcing nonlinearity.

    The first start is the zero function, the others are seeded random
    Dirichlet functions; every start must reach the same minimizer and
    the spread is kept in the report.
    '''
    opts = opts or SolverOptions()
    if not nl.is_pure_forcing:
        raise InvalidParameter('convex_solve needs a pure forcing '
                               'nonlinearity (a = 0)')
    grid = Grid(params.T, N)
    F = Functional(grid, params, nl, opts.eps_reg, side)
    metric = Metric(F)
    starts = [np.zeros(grid.size)]
    if opts.multi_start > 1:
        starts.extend(gf.values for gf in populate(
            'dirichlet', opts.multi_start - 1, grid=grid, seed=opts.seed))
    results = [_descend(F, metric, x0, opts) for x0 in starts]
    x, gn, iterations, converged, history, _ = results[0]
    noise_steps = sum(r[5] for r in results)
    _warn_noise(noise_steps, sum(r[2] for r in results))
    minimizers = [DirichletGridFunction(grid, r[0]) for r in results]
    if not all(r[3] for r in results):
        LOGGER.warning('Convex solve did not converge from every start')
    report = SolveReport(
        'convex', params, nl, opts, minimizers[0], F.breakdown(x), gn,
        iterations, converged and all(r[3] for r in results),
        grad_norm_history=history, minimizers=minimizers, side=Side(side),
        noise_steps=noise_steps)
    LOGGER.info('convex: I=%.12g grad_norm=%.3e spread=%.3e',
                report.energy_value, gn, report.multi_start_spread)
    return report


# ########################################################### PS
def ps_diagnostic(report, params):
    '''Boundedness diagnostic of the iterates.

    The Ambrosetti-Rabinowitz chain gives
    ``(1/p - 1/μ)‖u‖^p ≤ I(u) - ⟨I'(u), u⟩/μ``; its margin at ``u_star``
    is reported together with the max/median ratio of the iterate norms.
    Informational: it never raises.
    '''
    mu = report.nl.mu
    coefficient = ps_coefficient(mu, params.p)
    messages = []
    hypothesis_ok = coefficient > 0
    if not hypothesis_ok:
        messages.append('mu <= p: (f2) requires mu > p')
    history = report.iterate_norm_history
    if history.size:
        median = float(np.median(history))
        ratio = float(np.max(history)) / median if median > 0 else np.inf
    else:
        ratio = 1.0
    bounded = ratio <= report.opts.norm_cap
    if not bounded:
        messages.append('iterate norms grew by a factor %.3g' % ratio)
    F = Functional(report.grid, params, report.nl, report.opts.eps_reg,
                   report.side)
    x = report.u_star.values
    pairing = float(np.dot(F.gradient(x), x))
    ps_margin = (F.value(x) - pairing / mu -
                 coefficient * F.seminorm(x) ** params.p)
    return PSDiagnostic(coefficient, hypothesis_ok, bounded, ratio,
                        ps_margin, tuple(messages))
