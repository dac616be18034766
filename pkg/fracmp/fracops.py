'''Discrete Riemann-Liouville and Caputo operators on uniform grids.

Every operator is a dense ``(N + 1) x (N + 1)`` matrix assembled once per
``(grid, α)`` from convolution weights and cached. Right operators are
the left ones conjugated by the reversal ``t ↦ T - t``.

Schemes
~~~~~~~~~~~

* ``ProductTrapezoid``: fractional integral of the piecewise linear
  interpolant against the exact kernel moments. Exact for piecewise linear
  samples; at ``α = 1`` it is the cumulative trapezoid rule.
* ``L1``: Caputo derivative ``I^{1-α} u'`` of the piecewise linear
  interpolant, again with exact moments. At ``α = 1`` it is replaced by a
  finite difference stencil, central inside and one-sided at the ends,
  which satisfies summation by parts against the trapezoid weights.
* ``GrunwaldLetnikov``: first order shifted binomial weights, used as an
  independent cross-check of the L1 derivative.
'''
import enum
from collections import namedtuple
from functools import lru_cache

import numpy as np
from scipy.linalg import toeplitz

from .grid import FracOrder, GridFunction, DirichletGridFunction
from .utils.exceptions import InvalidParameter, BoundaryConditionError
from .utils.special import gamma


__all__ = [
    'Side',
    'Scheme',
    'ConvolutionWeights',
    'convolution_weights',
    'integral_matrix',
    'derivative_matrix',
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
]


class Side(enum.Enum):
    LEFT = 'left'
    RIGHT = 'right'


class Scheme(enum.Enum):
    PRODUCT_TRAPEZOID = 'ProductTrapezoid'
    GRUNWALD_LETNIKOV = 'GrunwaldLetnikov'
    L1 = 'L1'


class ConvolutionWeights(namedtuple('ConvolutionWeights', 'scheme alpha w')):
    '''Toeplitz weights ``w_0, ..., w_N`` of a convolution quadrature.'''
    __slots__ = ()

    def partial_sums(self):
        return np.cumsum(self.w)


def convolution_weights(scheme, alpha, N):
    '''Weights of ``scheme`` for order ``alpha`` on ``N`` subintervals.

    * ``ProductTrapezoid``: ``w_0 = 1`` and
      ``w_k = (k+1)^{1+α} - 2k^{1+α} + (k-1)^{1+α}``.
    * ``L1``: ``w_0 = b_0`` and ``w_k = b_k - b_{k-1}`` with
      ``b_k = (k+1)^{1-α} - k^{1-α}``.
    * ``GrunwaldLetnikov``: ``w_0 = 1``, ``w_k = w_{k-1} (k-1-α)/k``.
    '''
    scheme = Scheme(scheme)
    alpha = FracOrder(alpha)
    if N < 1:
        raise InvalidParameter('Need at least one weight beyond w_0')
    return ConvolutionWeights(scheme, alpha,
                              _weights(scheme, float(alpha), int(N)))


@lru_cache(maxsize=128)
def _weights(scheme, alpha, N):
    k = np.arange(N + 1, dtype=float)
    if scheme == Scheme.PRODUCT_TRAPEZOID:
        a = alpha + 1
        w = np.empty(N + 1)
        w[0] = 1.0
        kk = k[1:]
        w[1:] = (kk + 1) ** a - 2 * kk ** a + (kk - 1) ** a
    elif scheme == Scheme.L1:
        b = (k + 1) ** (1 - alpha) - k ** (1 - alpha)
        w = np.empty(N + 1)
        w[0] = b[0]
        w[1:] = np.diff(b)
    else:
        w = np.empty(N + 1)
        w[0] = 1.0
        for j in range(1, N + 1):
            w[j] = w[j - 1] * (j - 1 - alpha) / j
    w.setflags(write=False)
    return w


# ########################################################### ASSEMBLY
def _lower_toeplitz(column):
    return toeplitz(column, np.zeros_like(column))


def _reflect(matrix):
    reflected = np.ascontiguousarray(matrix[::-1, ::-1])
    reflected.setflags(write=False)
    return reflected


@lru_cache(maxsize=64)
def _integral_left(grid, alpha):
    N = grid.N
    w = _weights(Scheme.PRODUCT_TRAPEZOID, alpha, N)
    A = _lower_toeplitz(np.array(w))
    n = np.arange(1, N + 1, dtype=float)
    A[1:, 0] = (n - 1) ** (alpha + 1) - (n - 1 - alpha) * n ** alpha
    A[0, :] = 0.0
    A *= grid.h ** alpha / gamma(alpha + 2)
    A.setflags(write=False)
    return A


@lru_cache(maxsize=64)
def _caputo_left(grid, alpha):
    N = grid.N
    h = grid.h
    if alpha == 1.0:
        D = np.zeros((N + 1, N + 1))
        i = np.arange(1, N)
        D[i, i - 1] = -0.5 / h
        D[i, i + 1] = 0.5 / h
        D[0, :2] = (-1 / h, 1 / h)
        D[N, N - 1:] = (-1 / h, 1 / h)
    else:
        c = h ** (-alpha) / gamma(2 - alpha)
        w = _weights(Scheme.L1, alpha, N)
        D = _lower_toeplitz(np.array(w))
        k = np.arange(N, dtype=float)
        b = (k + 1) ** (1 - alpha) - k ** (1 - alpha)
        D[1:, 0] = -b
        D[0, :] = 0.0
        D *= c
    D.setflags(write=False)
    return D


@lru_cache(maxsize=64)
def _gl_left(grid, alpha):
    w = _weights(Scheme.GRUNWALD_LETNIKOV, alpha, grid.N)
    G = _lower_toeplitz(np.array(w)) * grid.h ** (-alpha)
    G.setflags(write=False)
    return G


@lru_cache(maxsize=64)
def _integral_right(grid, alpha):
    return _reflect(_integral_left(grid, alpha))


@lru_cache(maxsize=64)
def _caputo_right(grid, alpha):
    return _reflect(_caputo_left(grid, alpha))


@lru_cache(maxsize=64)
def _gl_right(grid, alpha):
    return _reflect(_gl_left(grid, alpha))


def integral_matrix(grid, alpha, side=Side.LEFT):
    '''Read-only matrix of the fractional integral of order ``alpha``.'''
    alpha = float(FracOrder(alpha))
    if Side(side) == Side.LEFT:
        return _integral_left(grid, alpha)
    return _integral_right(grid, alpha)


def derivative_matrix(grid, alpha, side=Side.LEFT):
    '''Read-only matrix of the Caputo derivative of order ``alpha``.

    On functions vanishing at the base point of ``side`` it coincides with
    the Riemann-Liouville derivative. At ``alpha = 1`` the right matrix is
    minus the left one.
    '''
    alpha = float(FracOrder(alpha))
    if Side(side) == Side.LEFT:
        return _caputo_left(grid, alpha)
    return _caputo_right(grid, alpha)


# ########################################################### OPERATORS
def _values(u):
    if not isinstance(u, GridFunction):
        raise InvalidParameter('Expected a GridFunction, got %r' % (u,))
    return u.regular()


def _trace_check(u, index, name):
    values = _values(u)
    scale = max(1.0, float(np.max(np.abs(values))))
    if abs(values[index]) > 1e-12 * scale:
        raise BoundaryConditionError(
            '%s requires u(%s) = 0, got %s' %
            (name, '0' if index == 0 else 'T', values[index]))
    return values


def frac_integral_left(u, alpha):
    '''Left Riemann-Liouville integral ``₀I_t^α u`` at every node.'''
    values = _values(u)
    A = integral_matrix(u.grid, alpha, Side.LEFT)
    return GridFunction(u.grid, A @ values)


def frac_integral_right(u, alpha):
    '''Right Riemann-Liouville integral ``ₜI_T^α u`` at every node.'''
    values = _values(u)
    A = integral_matrix(u.grid, alpha, Side.RIGHT)
    return GridFunction(u.grid, A @ values)


def caputo_left(u, alpha):
    '''Left Caputo derivative, no trace requirement.'''
    D = derivative_matrix(u.grid, alpha, Side.LEFT)
    return GridFunction(u.grid, D @ _values(u))


def caputo_right(u, alpha):
    '''Right Caputo derivative, no trace requirement.'''
    D = derivative_matrix(u.grid, alpha, Side.RIGHT)
    return GridFunction(u.grid, D @ _values(u))


def frac_deriv_left(u, alpha):
    '''Left Riemann-Liouville derivative ``₀D_t^α u`` of a function with
    ``u(0) = 0``, where it coincides with the Caputo derivative.
    '''
    values = _trace_check(u, 0, 'frac_deriv_left')
    D = derivative_matrix(u.grid, alpha, Side.LEFT)
    return GridFunction(u.grid, D @ values)


def frac_deriv_right(v, alpha):
    '''Right Riemann-Liouville derivative ``ₜD_T^α v`` of a function with
    ``v(T) = 0``.
    '''
    values = _trace_check(v, -1, 'frac_deriv_right')
    D = derivative_matrix(v.grid, alpha, Side.RIGHT)
    return GridFunction(v.grid, D @ values)


def grunwald_letnikov_left(u, alpha):
    '''First order Grünwald-Letnikov approximation of ``₀D_t^α u``.'''
    values = _values(u)
    return GridFunction(u.grid, _gl_matrix(u.grid, alpha, Side.LEFT) @ values)


def grunwald_letnikov_right(v, alpha):
    values = _values(v)
    return GridFunction(v.grid,
                        _gl_matrix(v.grid, alpha, Side.RIGHT) @ values)


def _gl_matrix(grid, alpha, side):
    alpha = float(FracOrder(alpha))
    if Side(side) == Side.LEFT:
        return _gl_left(grid, alpha)
    return _gl_right(grid, alpha)


def rl_from_caputo(u, alpha, side=Side.LEFT):
    '''Riemann-Liouville derivative from the Caputo one.

    Adds the boundary term ``u(0) t^{-α} / Γ(1-α)`` (left) or
    ``u(T) (T-t)^{-α} / Γ(1-α)`` (right). When the trace does not vanish
    the base point is infinite and returned as a singular entry.
    '''
    alpha = FracOrder(alpha)
    if alpha.is_classical:
        raise InvalidParameter('rl_from_caputo requires 0 < alpha < 1')
    side = Side(side)
    grid = u.grid
    values = _values(u)
    t = grid.nodes
    if side == Side.LEFT:
        trace, distance, base = values[0], t, 0
        caputo = caputo_left(u, alpha).values
    else:
        trace, distance, base = values[-1], grid.T - t, grid.N
        caputo = caputo_right(u, alpha).values
    if trace == 0:
        return GridFunction(grid, caputo)
    result = np.array(caputo)
    mask = np.arange(grid.size) != base
    result[mask] += trace * distance[mask] ** (-alpha) / gamma(1 - alpha)
    return GridFunction(grid, result, singular=(base,))


# ########################################################### IDENTITIES
@lru_cache(maxsize=64)
def _starting_weights(grid, alpha):
    '''Correction ``c`` with ``D(t^α) + c t_1^α = Γ(1+α)`` at every node.

    ``I^α`` of a function with ``u(0) ≠ 0`` behaves like ``u(0) t^α`` near
    the origin, where the L1 derivative keeps an ``O(1)`` error. Adding
    ``c`` times the value at the first node removes it; a remainder
    vanishing at the origin is changed by ``O(h)``.
    '''
    power = grid.nodes ** alpha
    computed = _caputo_left(grid, alpha) @ power
    weights = (gamma(1 + alpha) - computed) / power[1]
    weights[0] = 0.0
    weights.setflags(write=False)
    return weights


def check_left_inverse(u, alpha):
    '''Sup norm over interior nodes of ``D^α(I^α u) - u``.

    For ``α < 1`` the derivative is the L1 matrix with starting weights,
    so the residual vanishes under refinement also when ``u(0) ≠ 0``.
    '''
    alpha = float(FracOrder(alpha))
    values = _values(u)
    iu = frac_integral_left(u, alpha)
    diu = frac_deriv_left(iu, alpha).values
    if alpha < 1:
        diu = diu + _starting_weights(u.grid, alpha) * iu.values[1]
    return float(np.max(np.abs(diu - values)[1:-1]))


def check_semigroup(u, alpha, beta):
    '''Sup norm of ``I^α(I^β u) - I^{α+β} u``; requires ``α + β ≤ 1``.'''
    alpha = FracOrder(alpha)
    beta = FracOrder(beta)
    if alpha + beta > 1 + 1e-12:
        raise InvalidParameter('check_semigroup requires alpha + beta <= 1')
    composite = frac_integral_left(frac_integral_left(u, beta), alpha)
    direct = frac_integral_left(u, min(1.0, alpha + beta))
    return float(np.max(np.abs(composite.values - direct.values)))


def check_integration_by_parts(u, v, alpha):
    '''``|∫ (₀D^α u) v - ∫ u (ₜD^α v)|`` with trapezoid quadrature.

    ``u`` must vanish at both ends. When ``v(T) ≠ 0`` and ``α < 1`` the
    right derivative carries the boundary term ``v(T)(T-t)^{-α}/Γ(1-α)``,
    whose product integral with ``u`` is ``v(T) ₀I^{1-α}u(T)``.

    The L1 pair satisfies the identity exactly when ``v(T) = 0``; the
    residual measures the quadrature gap of the boundary term otherwise.
    '''
    alpha = FracOrder(alpha)
    if not isinstance(u, DirichletGridFunction):
        u = DirichletGridFunction(u.grid, _values(u))
    grid = u.grid
    vv = _values(v)
    lhs = grid.integrate(frac_deriv_left(u, alpha).values * vv)
    rhs = grid.integrate(u.values * caputo_right(v, alpha).values)
    if not alpha.is_classical and vv[-1] != 0:
        correction = frac_integral_left(u, 1 - alpha).values[-1]
        rhs += vv[-1] * correction
    return abs(lhs - rhs)


def check_integration_by_parts_integrals(u, v, alpha):
    '''``|∫ (₀I^α u) v - ∫ u (ₜI^α v)|`` with trapezoid quadrature.'''
    grid = u.grid
    lhs = grid.integrate(frac_integral_left(u, alpha).values * _values(v))
    rhs = grid.integrate(_values(u) * frac_integral_right(v, alpha).values)
    return abs(lhs - rhs)
