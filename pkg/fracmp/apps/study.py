'''Convergence studies of the ``converge`` command.

A study evaluates one quantity on every grid size of ``study.sizes``,
concurrently in a thread pool (numpy releases the GIL in the dense
products), and fits the slope of ``log value`` against ``log h``.

=================  =======================================================
``manufactured``   sup error of :func:`.convex_solve` against a known
                   minimizer: ``sin(πt/T)`` for ``α = 1``, ``p = 2``,
                   otherwise the discrete manufactured profile ``t(T-t)``
                   of the finest grid. Rate contract for the first only.
``identities``     integration by parts residual on Dirichlet corpus
                   functions against ``v = e^{t/T}``, which does not vanish
                   at ``T``.
``poincare``       the N independent Poincaré constant, a flat line.
=================  =======================================================
'''
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor
import logging

import numpy as np

from ..fracops import check_integration_by_parts
from ..grid import Grid, GridFunction, DirichletGridFunction
from ..model import Nonlinearity
from ..oracles import sine_forcing, manufactured_forcing
from ..solver import convex_solve
from ..space import poincare_constant
from ..utils.exceptions import ImproperlyConfigured
from ..utils.populate import populate


__all__ = ['Study', 'run_study', 'fit_slope', 'CONTRACT_SLOPE']

LOGGER = logging.getLogger('fracmp.study')

#: minimum slope of a rate contract
CONTRACT_SLOPE = 1 - 0.1
#: residuals below this are exact identities
EXACT = 1e-12


class Study(namedtuple('Study', 'kind rows slope contract passed')):
    '''``rows`` are ``(N, value, h)`` triples; ``contract`` is the minimum
    slope or ``None`` when no rate applies.
    '''
    __slots__ = ()


def fit_slope(h, values):
    '''Least squares slope of ``log values`` against ``log h``.'''
    h = np.asarray(h, dtype=float)
    values = np.asarray(values, dtype=float)
    keep = values > 0
    if keep.sum() < 2:
        return 0.0
    return float(np.polyfit(np.log(h[keep]), np.log(values[keep]), 1)[0])


def _classical(params):
    return params.alpha == 1 and params.p == 2


def _manufactured(run):
    params = run.params
    opts = run.solver._replace(multi_start=1)
    q = run.nl.q
    sizes = sorted(run.cfg['study.sizes'])
    scale = run.cfg.get('model.forcing_scale') or 1.0
    if _classical(params):
        def error(N):
            grid = Grid(params.T, N)
            nl = Nonlinearity.forcing_only(sine_forcing(grid, scale), q)
            report = convex_solve(params, nl, opts, N)
            exact = scale * np.sin(np.pi * grid.nodes / params.T)
            return float(np.max(np.abs(report.u_star.values - exact)))
        return sizes, error, CONTRACT_SLOPE
    reference = sizes[-1]
    if any(reference % N for N in sizes):
        raise ImproperlyConfigured('study.sizes must divide the largest '
                                   'size for the manufactured study')
    fine = Grid(params.T, reference)
    t = fine.nodes
    ubar = DirichletGridFunction.clamp(fine, scale * t * (params.T - t))
    forcing = manufactured_forcing(fine, params, ubar, opts.eps_reg)

    def error(N):
        grid = Grid(params.T, N)
        g = GridFunction(grid, forcing.values[::reference // N])
        report = convex_solve(params, Nonlinearity.forcing_only(g, q),
                              opts, N)
        return float(np.max(np.abs(report.u_star.values -
                                   ubar.values[::reference // N])))
    return sizes[:-1], error, None


def _identities(run):
    alpha = run.params.alpha
    T = run.params.T

    def residual(N):
        grid = Grid(T, N)
        v = GridFunction(grid, np.exp(grid.nodes / T))
        corpus = [DirichletGridFunction.clamp(grid, u.values)
                  for u in populate('corpus', grid=grid)
                  if abs(u.values[-1]) <= 1e-12]
        return max(check_integration_by_parts(u, v, alpha) for u in corpus)
    return sorted(run.cfg['study.sizes']), residual, CONTRACT_SLOPE


def _poincare(run):
    def constant(N):
        return poincare_constant(run.params)
    return sorted(run.cfg['study.sizes']), constant, None


STUDIES = {'manufactured': _manufactured,
           'identities': _identities,
           'poincare': _poincare}


def run_study(run, kind=None):
    '''Run the study ``kind`` (``study.kind`` by default) on ``run``.'''
    kind = kind or run.cfg.get('study.kind') or 'manufactured'
    if kind not in STUDIES:
        raise ImproperlyConfigured('Unknown study "%s"' % kind)
    sizes, evaluate, contract = STUDIES[kind](run)
    if len(sizes) < 2:
        raise ImproperlyConfigured('A study needs at least two sizes')
    with ThreadPoolExecutor(max_workers=run.threads) as executor:
        values = list(executor.map(evaluate, sizes))
    h = [run.params.T / N for N in sizes]
    rows = [(N, value, step) for N, value, step in zip(sizes, values, h)]
    slope = fit_slope(h, values)
    if contract is not None and max(values) <= EXACT:
        LOGGER.info('%s: residuals at rounding level, no rate to fit', kind)
        contract = None
    passed = contract is None or slope >= contract
    if not np.all(np.diff(values) <= 0) and kind != 'poincare':
        LOGGER.warning('%s: values do not decrease monotonically', kind)
    LOGGER.info('%s study: slope %.4f', kind, slope)
    return Study(kind, rows, slope, contract, passed)
