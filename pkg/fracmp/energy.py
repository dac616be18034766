'''The energy ``I = J - H`` and its exact discrete gradient.

``J(u) = ∫ φ(₀D^α u)`` with ``φ(z) = |z|^p/p`` and ``H(u) = ∫ F(t, u)``,
both with trapezoid quadrature on the nodes. The gradient is the true
gradient of this discrete objective with respect to the interior node
values (discretize, then differentiate)::

    ∇I(u) = Dᵀ W φ'(D u) - W f(t, u)

with ``W`` the diagonal of trapezoid weights and the two end components
set to zero.

For ``p < 2`` the singular ``|z|^{p-2}z`` is replaced by
``(z² + ε²)^{(p-2)/2} z`` and ``φ`` by its primitive
``((z² + ε²)^{p/2} - ε^p)/p``, so the gradient stays exact for the
regularized objective.
'''
from collections import namedtuple

import numpy as np

from .fracops import Side, derivative_matrix
from .grid import GridFunction, DirichletGridFunction
from .utils.exceptions import InvalidParameter


__all__ = ['EPS_REG', 'EnergyBreakdown', 'Functional', 'phi', 'dphi',
           'energy', 'gradient',
           'weak_residual', 'dual_norm', 'directional_derivative',
           'euler_identity_gap', 'holder_constant', 'holder_margin',
           'monotonicity_constant', 'monotonicity_margin', 'ps_coefficient']

EPS_REG = 1e-10


class EnergyBreakdown(namedtuple('EnergyBreakdown', 'J H I')):
    __slots__ = ()

    @classmethod
    def create(cls, J, H):
        return cls(float(J), float(H), float(J - H))


def phi(z, p, eps_reg=EPS_REG):
    if p >= 2:
        return np.abs(z) ** p / p
    return ((z * z + eps_reg * eps_reg) ** (p / 2) - eps_reg ** p) / p


def dphi(z, p, eps_reg=EPS_REG):
    '''``φ'(z)``, the (regularized) ``|z|^{p-2}z``.'''
    if p >= 2:
        return np.abs(z) ** (p - 2) * z
    return (z * z + eps_reg * eps_reg) ** ((p - 2) / 2) * z


class Functional:
    '''The discrete energy on a fixed grid, acting on raw node vectors.

    Solvers call :meth:`value` and :meth:`gradient` in tight loops, the
    module level functions wrap them for :class:`.GridFunction` inputs.
    ``side`` selects the derivative: ``RIGHT`` gives the mirrored problem.
    '''
    def __init__(self, grid, params, nl, eps_reg=EPS_REG, side=Side.LEFT):
        if grid.T != params.T:
            raise InvalidParameter('Grid length %s differs from T = %s' %
                                   (grid.T, params.T))
        self.grid = grid
        self.params = params
        self.nl = nl
        self.eps_reg = float(eps_reg)
        self.side = Side(side)
        self.D = derivative_matrix(grid, params.alpha, self.side)
        self.w = grid.weights
        self.t = grid.nodes

    @property
    def p(self):
        return self.params.p

    def derivative(self, x):
        return self.D @ x

    def breakdown(self, x):
        d = self.D @ x
        J = np.dot(self.w, phi(d, self.p, self.eps_reg))
        H = np.dot(self.w, self.nl.F(self.t, x))
        return EnergyBreakdown.create(J, H)

    def value(self, x):
        return self.breakdown(x).I

    def gradient(self, x):
        d = self.D @ x
        g = self.D.T @ (self.w * dphi(d, self.p, self.eps_reg))
        g -= self.w * self.nl.f(self.t, x)
        g[0] = g[-1] = 0.0
        return g

    def ray_slope(self, x, sigma):
        '''``d/dσ I(σ x)``.'''
        return float(np.dot(self.gradient(sigma * x), x))

    def seminorm(self, x):
        d = self.D @ x
        return float(np.dot(self.w, np.abs(d) ** self.p)) ** (1 / self.p)

    def dual_norm(self, g):
        '''``(Σ g_i² / w_i)^{1/2}`` over interior nodes.'''
        inner = g[1:-1]
        return float(np.sqrt(np.sum(inner * inner / self.w[1:-1])))


def _vector(u):
    if not isinstance(u, GridFunction):
        raise InvalidParameter('Expected a GridFunction, got %r' % (u,))
    if not isinstance(u, DirichletGridFunction):
        u = DirichletGridFunction(u.grid, u.regular())
    return u.values


def energy(u, params, nl, eps_reg=EPS_REG, side=Side.LEFT):
    ''':class:`EnergyBreakdown` ``(J, H, I)`` of a Dirichlet function.'''
    x = _vector(u)
    return Functional(u.grid, params, nl, eps_reg, side).breakdown(x)


def gradient(u, params, nl, eps_reg=EPS_REG, side=Side.LEFT):
    '''Exact gradient of the discrete energy, zero at both ends.'''
    x = _vector(u)
    g = Functional(u.grid, params, nl, eps_reg, side).gradient(x)
    return DirichletGridFunction(u.grid, g)


def weak_residual(u, test, params, nl, eps_reg=EPS_REG, side=Side.LEFT):
    '''``∫ φ'(D^α u) D^α φ - ∫ f(t, u) φ`` for a test function ``φ``.

    Equal to ``⟨∇I(u), φ⟩`` up to rounding.
    '''
    x = _vector(u)
    y = _vector(test)
    F = Functional(u.grid, params, nl, eps_reg, side)
    lhs = np.dot(F.w, dphi(F.D @ x, F.p, F.eps_reg) * (F.D @ y))
    rhs = np.dot(F.w, nl.f(F.t, x) * y)
    return float(lhs - rhs)


def dual_norm(g):
    '''Discrete dual norm of a gradient, ``(Σ g_i²/w_i)^{1/2}`` over the
    interior nodes. It does not depend on the mesh size for smooth
    residual densities ``g_i / w_i``.
    '''
    values = g.regular()
    w = g.grid.weights
    return float(np.sqrt(np.sum(values[1:-1] ** 2 / w[1:-1])))


def directional_derivative(u, v, params, nl, eps_reg=EPS_REG):
    return float(np.dot(gradient(u, params, nl, eps_reg).values,
                        _vector(v)))


def euler_identity_gap(u, params, nl):
    '''``⟨∇I(u), u⟩ - (p J(u) - ∫ f(t, u) u)``, zero for ``p ≥ 2``.'''
    x = _vector(u)
    F = Functional(u.grid, params, nl)
    J = F.breakdown(x).J
    load = np.dot(F.w, nl.f(F.t, x) * x)
    return float(np.dot(F.gradient(x), x) - (params.p * J - load))


# ########################################################### SCALAR SUITES
def holder_constant(p):
    '''``β`` of the Hölder-type continuity of ``|z|^{p-2}z``:
    ``p - 1`` for ``p ≥ 2`` and ``2^{2-p}`` for ``1 < p < 2``.
    '''
    return p - 1 if p >= 2 else 2 ** (2 - p)


def holder_margin(z, y, p):
    '''Margin of the continuity estimate of ``z ↦ |z|^{p-2}z``.

    * ``p ≥ 2``: ``β|z-y|(|z|+|y|)^{p-2} - ||z|^{p-2}z - |y|^{p-2}y|``
    * ``1 < p < 2``: ``β|z-y|^{p-1} - ||z|^{p-2}z - |y|^{p-2}y|``
    '''
    z = np.asarray(z, dtype=float)
    y = np.asarray(y, dtype=float)
    lhs = np.abs(_power(z, p) - _power(y, p))
    beta = holder_constant(p)
    if p >= 2:
        rhs = beta * np.abs(z - y) * (np.abs(z) + np.abs(y)) ** (p - 2)
    else:
        rhs = beta * np.abs(z - y) ** (p - 1)
    return rhs - lhs


def _power(z, p):
    return np.sign(z) * np.abs(z) ** (p - 1)


def monotonicity_constant(p):
    '''``2^{2-p}`` for ``p ≥ 2`` and ``p - 1`` for ``1 < p < 2``.'''
    return 2 ** (2 - p) if p >= 2 else p - 1


def monotonicity_margin(z, y, p):
    '''Margin of the strong monotonicity of ``z ↦ |z|^{p-2}z``.

    * ``p ≥ 2``: ``(φ'(z) - φ'(y))(z - y) - C|z-y|^p``
    * ``1 < p < 2``: ``(φ'(z) - φ'(y))(z - y) - C|z-y|²/(|z|+|y|)^{2-p}``
    '''
    z = np.asarray(z, dtype=float)
    y = np.asarray(y, dtype=float)
    lhs = (_power(z, p) - _power(y, p)) * (z - y)
    C = monotonicity_constant(p)
    if p >= 2:
        rhs = C * np.abs(z - y) ** p
    else:
        total = np.abs(z) + np.abs(y)
        with np.errstate(divide='ignore', invalid='ignore'):
            rhs = np.where(total > 0,
                           C * (z - y) ** 2 / total ** (2 - p), 0.0)
    return lhs - rhs


def ps_coefficient(mu, p):
    '''``1/p - 1/μ``, positive exactly when the Ambrosetti-Rabinowitz
    exponent exceeds ``p``.
    '''
    return 1 / p - 1 / mu
