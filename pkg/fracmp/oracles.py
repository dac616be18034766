'''Independent reference solutions.

:func:`shooting_solution` solves the classical ``α = 1, p = 2`` problem
``-u'' = f(t, u)`` on ``[0, T]`` by shooting on ``u'(0)``, with no use of
the fractional machinery. The forcing builders give right hand sides with
known minimizers for the convex mode.
'''
import logging

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .energy import EPS_REG, Functional
from .grid import Grid, GridFunction, DirichletGridFunction
from .model import Nonlinearity
from .solver import BRENT_RTOL
from .utils.exceptions import SolverError


__all__ = ['shooting_solution', 'sine_forcing', 'manufactured_forcing']

LOGGER = logging.getLogger('fracmp.oracles')


def _first_zero(nl, slope, horizon, rtol, atol):
    def rhs(t, y):
        return [y[1], -float(nl.f(np.array([t]), np.array([y[0]]))[0])]

    def crossing(t, y):
        return y[0]
    crossing.terminal = True
    crossing.direction = -1
    sol = solve_ivp(rhs, (0.0, horizon), [0.0, slope], method='DOP853',
                    events=crossing, rtol=rtol, atol=atol)
    events = sol.t_events[0]
    return float(events[0]) if events.size else horizon


def shooting_solution(nl, T=1.0, N=256, rtol=1e-12, atol=1e-14):
    '''Positive solution of ``-u'' = f(t, u)``, ``u(0) = u(T) = 0``.

    Finds the initial slope ``s`` whose trajectory first returns to zero
    at ``T``, bracketing by doubling and halving ``s``.

    :return: the pair ``(s, u)`` with ``u`` a
        :class:`.DirichletGridFunction` on ``Grid(T, N)``.
    '''
    horizon = 50.0 * T

    def mismatch(slope):
        return _first_zero(nl, slope, horizon, rtol, atol) - T

    lo = hi = 1.0
    for _ in range(80):
        if mismatch(hi) < 0:
            break
        hi *= 2
    else:
        raise SolverError('Shooting: no slope returns to zero before T')
    for _ in range(80):
        if mismatch(lo) > 0:
            break
        lo *= 0.5
    else:
        raise SolverError('Shooting: no slope stays positive up to T')
    slope = brentq(mismatch, lo, hi, xtol=1e-13, rtol=BRENT_RTOL)
    grid = Grid(T, N)
    sol = solve_ivp(
        lambda t, y: [y[1], -float(nl.f(np.array([t]),
                                        np.array([y[0]]))[0])],
        (0.0, T), [0.0, slope], method='DOP853', t_eval=grid.nodes,
        rtol=rtol, atol=atol)
    LOGGER.debug('shooting slope %.12g, u(T) = %.3g', slope, sol.y[0, -1])
    return slope, DirichletGridFunction.clamp(grid, sol.y[0])


def sine_forcing(grid, scale=1.0):
    '''``g = scale (π/T)² sin(πt/T)``, whose minimizer for ``α = 1``,
    ``p = 2`` is ``scale sin(πt/T)``.
    '''
    k = np.pi / grid.T
    return GridFunction(grid, scale * k * k * np.sin(k * grid.nodes))


def manufactured_forcing(grid, params, ubar=None, eps_reg=EPS_REG):
    '''Forcing making ``ubar`` the exact discrete minimizer on ``grid``.

    ``g = ∇J(ubar)/w`` at the interior nodes, linearly extrapolated to the
    ends. ``ubar`` defaults to ``t(T - t)``.
    '''
    if ubar is None:
        t = grid.nodes
        ubar = DirichletGridFunction.clamp(grid, t * (grid.T - t))
    empty = Nonlinearity.forcing_only(GridFunction.zeros(grid))
    F = Functional(grid, params, empty, eps_reg)
    g = F.gradient(ubar.values) / F.w
    g[0] = 2 * g[1] - g[2]
    g[-1] = 2 * g[-2] - g[-3]
    return GridFunction(grid, g)
