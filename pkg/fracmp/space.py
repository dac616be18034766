'''Norms, embedding constants and convexity inequalities of the fractional
Sobolev type space ``E₀^{α,p}`` realized on a grid.

All integrals use the composite trapezoid weights of the grid, so the
discrete ``L^p`` norms are norms of a weighted sequence space and the
pointwise inequalities (Clarkson, reverse Minkowski, reverse Hölder)
carry over exactly.
'''
from collections import namedtuple
import math

import numpy as np

from .grid import FracOrder, GridFunction, DirichletGridFunction
from .fracops import frac_deriv_left, frac_integral_left
from .utils.exceptions import InvalidParameter
from .utils.special import gamma


__all__ = [
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
    'conjugate_exponent',
]

#: calibration constant of the discretization slack ``tol_disc``
TOL_DISC_CONSTANT = 2e-2


class FracParams(namedtuple('FracParams', 'alpha p T')):
    '''Problem parameters ``(α, p, T)`` with ``1 < p`` and
    ``1/p < α ≤ 1``.
    '''
    __slots__ = ()

    def __new__(cls, alpha, p, T=1.0):
        alpha = FracOrder(alpha)
        p = float(p)
        T = float(T)
        if not np.isfinite(p) or p <= 1:
            raise InvalidParameter('p must be in (1, ∞), got %s' % p)
        if not alpha > 1 / p:
            raise InvalidParameter(
                'alpha must exceed 1/p = %s, got %s' % (1 / p, alpha))
        if not np.isfinite(T) or T <= 0:
            raise InvalidParameter('T must be positive, got %s' % T)
        return super().__new__(cls, alpha, p, T)

    @property
    def conjugate(self):
        '''Conjugate exponent ``p' = p / (p - 1)``.'''
        return conjugate_exponent(self.p)


class NormReport(namedtuple('NormReport',
                            'lp_norm seminorm full_norm sup_norm')):
    __slots__ = ()


def _values(u):
    if not isinstance(u, GridFunction):
        raise InvalidParameter('Expected a GridFunction, got %r' % (u,))
    return u.regular()


def _dirichlet(u):
    if isinstance(u, DirichletGridFunction):
        return u
    return DirichletGridFunction(u.grid, _values(u))


def lp_norm(u, p):
    '''Trapezoid ``L^p`` norm, ``p ≥ 1``.'''
    p = float(p)
    if not p >= 1:
        raise InvalidParameter('lp_norm requires p >= 1, got %s' % p)
    values = np.abs(_values(u))
    return u.grid.integrate(values ** p) ** (1 / p)


def quasi_norm(u, p):
    '''``(∫|u|^p)^{1/p}`` for any ``p ≠ 0``, a quasi-norm below one.

    Negative exponents require every sample to be nonzero.
    '''
    p = float(p)
    if p == 0:
        raise InvalidParameter('quasi_norm requires p != 0')
    values = np.abs(_values(u))
    if p < 0 and np.any(values == 0):
        raise InvalidParameter('Negative exponents need nonzero samples')
    return u.grid.integrate(values ** p) ** (1 / p)


def sup_norm(u):
    return float(np.max(np.abs(_values(u))))


def seminorm(u, params):
    '''``‖₀D_t^α u‖_{L^p}``, the working norm of the space.'''
    u = _dirichlet(u)
    return lp_norm(frac_deriv_left(u, params.alpha), params.p)


def full_norm(u, params):
    lp = lp_norm(u, params.p)
    semi = seminorm(u, params)
    return (lp ** params.p + semi ** params.p) ** (1 / params.p)


def norm_report(u, params):
    u = _dirichlet(u)
    lp = lp_norm(u, params.p)
    semi = seminorm(u, params)
    full = (lp ** params.p + semi ** params.p) ** (1 / params.p)
    return NormReport(lp, semi, full, sup_norm(u))


# ########################################################### CONSTANTS
def poincare_constant(params):
    '''``T^α / Γ(α+1)``: ``‖u‖_{L^p} ≤ C ‖₀D^α u‖_{L^p}``.'''
    return params.T ** params.alpha / gamma(params.alpha + 1)


def sup_embedding_constant(params):
    '''``T^{α-1/p} / (Γ(α) ((α-1)q + 1)^{1/q})`` with ``q = p/(p-1)``:
    ``‖u‖_∞ ≤ C ‖₀D^α u‖_{L^p}``.
    '''
    alpha, p, T = params
    if not alpha > 1 / p:
        raise InvalidParameter('sup embedding requires alpha > 1/p')
    q = params.conjugate
    inner = (alpha - 1) * q + 1
    return T ** (alpha - 1 / p) / (gamma(alpha) * inner ** (1 / q))


def geometry_constant(params, q, a_max):
    '''Constant ``C`` of ``∫ a|u|^q/q ≤ C ‖u‖^q``.

    From ``∫|u|^q ≤ ‖u‖_∞^{q-p} ∫|u|^p`` and the two embeddings,
    ``C = a_max S^{q-p} P^p / q``.
    '''
    S = sup_embedding_constant(params)
    P = poincare_constant(params)
    return a_max * S ** (q - params.p) * P ** params.p / q


def tol_disc(N, scale=1.0):
    '''Discretization slack ``c N^{-1/2}`` for the embedding checks,
    relative to ``scale``.
    '''
    return TOL_DISC_CONSTANT * N ** -0.5 * scale


# ########################################################### INEQUALITIES
def check_poincare(u, params):
    '''``P ‖₀D^α u‖_{L^p} - ‖u‖_{L^p}``, expected ``≥ -tol_disc``.'''
    u = _dirichlet(u)
    return poincare_constant(params) * seminorm(u, params) - lp_norm(
        u, params.p)


def check_sup_embedding(u, params):
    '''``S ‖₀D^α u‖_{L^p} - ‖u‖_∞``, expected ``≥ -tol_disc``.'''
    u = _dirichlet(u)
    return sup_embedding_constant(params) * seminorm(u, params) - sup_norm(u)


def check_norm_equivalence(u, params):
    '''Margins of ``|u| ≤ ‖u‖ ≤ (1 + P^p)^{1/p} |u|`` where ``|u|`` is the
    seminorm and ``‖u‖`` the full norm.
    '''
    report = norm_report(u, params)
    bound = (1 + poincare_constant(params) ** params.p) ** (1 / params.p)
    return (report.full_norm - report.seminorm,
            bound * report.seminorm - report.full_norm)


def check_integral_bound(u, params):
    '''``T^α/Γ(α+1) ‖u‖_{L^p} - ‖₀I^α u‖_{L^p}``.'''
    integral = frac_integral_left(u, params.alpha)
    return (poincare_constant(params) * lp_norm(u, params.p) -
            lp_norm(integral, params.p))


def check_lq_embedding(u, p, q):
    '''``‖u‖_∞^{q-p} ‖u‖_p^p - ‖u‖_q^q`` for ``q ≥ p ≥ 1``.'''
    if q < p:
        raise InvalidParameter('check_lq_embedding requires q >= p')
    return (sup_norm(u) ** (q - p) * lp_norm(u, p) ** p -
            lp_norm(u, q) ** q)


def check_reverse_minkowski(u, v, p):
    '''``‖|u|+|v|‖_p - ‖u‖_p - ‖v‖_p`` for ``0 < p < 1``, expected
    ``≥ 0``.
    '''
    if not 0 < p < 1:
        raise InvalidParameter('Reverse Minkowski requires 0 < p < 1')
    total = GridFunction(u.grid, np.abs(_values(u)) + np.abs(_values(v)))
    return quasi_norm(total, p) - quasi_norm(u, p) - quasi_norm(v, p)


def check_reverse_holder(u, v, p):
    '''``∫|uv| - ‖u‖_p ‖v‖_{p'}`` for ``0 < p < 1`` and
    ``p' = p/(p-1) < 0``, expected ``≥ 0``. ``v`` must not vanish.
    '''
    if not 0 < p < 1:
        raise InvalidParameter('Reverse Hölder requires 0 < p < 1')
    q = conjugate_exponent(p)
    product = u.grid.integrate(np.abs(_values(u) * _values(v)))
    return product - quasi_norm(u, p) * quasi_norm(v, q)


def clarkson_pointwise(z, w, p):
    '''Both sides of Clarkson's inequality for scalars.

    For ``p ≥ 2``::

        |(z+w)/2|^p + |(z-w)/2|^p ≤ ½|z|^p + ½|w|^p

    and for ``1 < p < 2``, with ``p' = p/(p-1)``::

        |(z+w)/2|^{p'} + |(z-w)/2|^{p'} ≤ (½|z|^p + ½|w|^p)^{1/(p-1)}

    Accepts scalars or arrays and returns ``(lhs, rhs)``.
    '''
    p = float(p)
    if not p > 1:
        raise InvalidParameter('clarkson_pointwise requires p > 1')
    z = np.asarray(z, dtype=float)
    w = np.asarray(w, dtype=float)
    mean = 0.5 * (np.abs(z) ** p + np.abs(w) ** p)
    plus = np.abs(0.5 * (z + w))
    minus = np.abs(0.5 * (z - w))
    if p >= 2:
        lhs = plus ** p + minus ** p
        rhs = mean
    else:
        r = p / (p - 1)
        lhs = plus ** r + minus ** r
        rhs = mean ** (1 / (p - 1))
    if lhs.ndim == 0:
        return float(lhs), float(rhs)
    return lhs, rhs


def modulus_of_convexity(epsilon, p):
    '''``δ(ε)`` solving ``1 - (ε/2)^r = (1 - δ)^r`` with ``r = p`` for
    ``p ≥ 2`` and ``r = p'`` otherwise: two unit vectors at distance ``ε``
    have midpoint norm at most ``1 - δ``.
    '''
    if not 0 <= epsilon <= 2:
        raise InvalidParameter('epsilon must be in [0, 2]')
    r = p if p >= 2 else p / (p - 1)
    return 1 - (1 - (epsilon / 2) ** r) ** (1 / r)


def convexity_midpoint_gap(u, v, params):
    '''Clarkson gap of the seminorm for ``u`` and ``v`` normalized to unit
    seminorm, non-negative by uniform convexity.

    For ``p ≥ 2``: ``1 - |(u+v)/2|^p - |(u-v)/2|^p``; for ``1 < p < 2`` the
    exponent on the midpoint terms is ``p'``.
    '''
    u = _dirichlet(u)
    v = _dirichlet(v)
    nu = seminorm(u, params)
    nv = seminorm(v, params)
    if nu == 0 or nv == 0:
        raise InvalidParameter('Cannot normalize a zero grid function')
    u = u / nu
    v = v / nv
    p = params.p
    r = p if p >= 2 else params.conjugate
    plus = seminorm((u + v) / 2, params)
    minus = seminorm((u - v) / 2, params)
    return 1.0 - plus ** r - minus ** r


def midpoint_bound(u, v, params):
    '''``1 - δ(ε) - |(u+v)/2|`` for unit-normalized ``u`` and ``v`` at
    seminorm distance ``ε``; non-negative by uniform convexity.
    '''
    u = _dirichlet(u)
    v = _dirichlet(v)
    u = u / seminorm(u, params)
    v = v / seminorm(v, params)
    epsilon = min(2.0, seminorm(u - v, params))
    delta = modulus_of_convexity(epsilon, params.p)
    return 1 - delta - seminorm((u + v) / 2, params)


def conjugate_exponent(q):
    '''``q' = q/(q-1)``.'''
    return math.inf if q == 1 else q / (q - 1)
