'''The nonlinearity ``f(t, ξ) = a(t)|ξ|^{q-2}ξ + g(t)``.

The pure power part satisfies the growth, Ambrosetti-Rabinowitz and
small-amplitude hypotheses ``(f1)``-``(f3)`` with ``F`` in closed form.
The forcing ``g`` is verification-only: it breaks ``(f3)`` and is used
for the convex manufactured-solution mode of the solver.
'''
from collections import namedtuple
import numbers

import numpy as np

from .grid import GridFunction
from .utils.exceptions import InvalidParameter


__all__ = ['Nonlinearity', 'CheckResult', 'eval_f', 'eval_F',
           'check_f1', 'check_f2', 'check_f3', 'ar_constant',
           'ar_lower_bound', 'default_ar_exponent']

#: absolute floor for the strict positivity of ``F`` in ``(f2)``
F_FLOOR = 1e-14


class CheckResult(namedtuple('CheckResult', 'name value passed detail')):
    '''Outcome of a numerical check: the measured ``value``, whether it
    meets its contract and a short human readable ``detail``.
    '''
    __slots__ = ()

    def __new__(cls, name, value, passed, detail=''):
        return super().__new__(cls, name, float(value), bool(passed), detail)

    @property
    def status(self):
        return 'PASS' if self.passed else 'FAIL'


class Nonlinearity:
    '''Parametric Carathéodory nonlinearity.

    :param q: growth exponent, ``q > 1``.
    :param a: positive weight, a number or a :class:`.GridFunction`.
    :param mu: Ambrosetti-Rabinowitz exponent, ``0 < mu ≤ q``.
    :param r: Ambrosetti-Rabinowitz threshold.
    :param c_growth: constant of the growth bound, defaults to
        ``max(max a, max |g|)``.
    :param forcing: optional :class:`.GridFunction` ``g``. In forcing mode
        the weight may vanish identically.
    '''
    __slots__ = ('q', 'a', 'mu', 'r', 'c_growth', 'forcing')

    def __init__(self, q=4.0, a=1.0, mu=None, r=1.0, c_growth=None,
                 forcing=None):
        q = float(q)
        if not np.isfinite(q) or q <= 1:
            raise InvalidParameter('q must be greater than 1, got %s' % q)
        mu = q if mu is None else float(mu)
        if not 0 < mu <= q:
            raise InvalidParameter('mu must be in (0, q], got %s' % mu)
        r = float(r)
        if not r > 0:
            raise InvalidParameter('r must be positive, got %s' % r)
        if forcing is not None and not isinstance(forcing, GridFunction):
            raise InvalidParameter('forcing must be a GridFunction')
        if isinstance(a, GridFunction):
            a_values = a.regular()
        elif isinstance(a, numbers.Real):
            a = float(a)
            a_values = np.array([a])
        else:
            raise InvalidParameter('a must be a number or a GridFunction')
        if not np.all(np.isfinite(a_values)):
            raise InvalidParameter('a must be finite')
        a_min = float(np.min(a_values))
        if forcing is None:
            if not a_min > 0:
                raise InvalidParameter('a must be bounded below by a '
                                       'positive constant')
        elif a_min < 0:
            raise InvalidParameter('a must be non-negative')
        if c_growth is None:
            c_growth = float(np.max(a_values))
            if forcing is not None:
                c_growth = max(c_growth,
                               float(np.max(np.abs(forcing.values))))
            c_growth = c_growth or 1.0
        c_growth = float(c_growth)
        if not c_growth > 0:
            raise InvalidParameter('c_growth must be positive')
        self.q = q
        self.a = a
        self.mu = mu
        self.r = r
        self.c_growth = c_growth
        self.forcing = forcing

    @classmethod
    def forcing_only(cls, forcing, q=2.0):
        '''Pure forcing ``f(t, ξ) = g(t)``, the convex verification mode.'''
        return cls(q=q, a=0.0, forcing=forcing)

    def __repr__(self):
        return ('Nonlinearity(q=%s, a=%s, mu=%s, r=%s, c_growth=%s, '
                'forcing=%s)' % (self.q, self._a_repr(), self.mu, self.r,
                                 self.c_growth, self.forcing is not None))

    def _a_repr(self):
        return 'GridFunction' if isinstance(self.a, GridFunction) else self.a

    @property
    def is_forcing(self):
        return self.forcing is not None

    @property
    def is_pure_forcing(self):
        return self.is_forcing and self.a_max == 0

    @property
    def a_min(self):
        if isinstance(self.a, GridFunction):
            return float(np.min(self.a.values))
        return self.a

    @property
    def a_max(self):
        if isinstance(self.a, GridFunction):
            return float(np.max(self.a.values))
        return self.a

    def sample_times(self):
        '''Times where ``t``-dependence is resolved.'''
        for gf in (self.a, self.forcing):
            if isinstance(gf, GridFunction):
                return gf.grid.nodes
        return np.zeros(1)

    def weight(self, t):
        if isinstance(self.a, GridFunction):
            return self.a.at(t)
        return np.full(np.shape(t), self.a)

    def forcing_at(self, t):
        if self.forcing is None:
            return np.zeros(np.shape(t))
        return self.forcing.at(t)

    def f(self, t, xi):
        xi = np.asarray(xi, dtype=float)
        power = np.sign(xi) * np.abs(xi) ** (self.q - 1)
        return self.weight(t) * power + self.forcing_at(t)

    def F(self, t, xi):
        xi = np.asarray(xi, dtype=float)
        return (self.weight(t) * np.abs(xi) ** self.q / self.q +
                self.forcing_at(t) * xi)


def eval_f(nl, t, xi):
    '''``f(t, ξ)``, scalars or broadcastable arrays.'''
    result = nl.f(t, xi)
    return float(result) if np.ndim(result) == 0 else result


def eval_F(nl, t, xi):
    '''``F(t, ξ) = ∫₀^ξ f(t, σ) dσ`` in closed form.'''
    result = nl.F(t, xi)
    return float(result) if np.ndim(result) == 0 else result


def _samples(samples):
    t, xi = samples
    t = np.asarray(t, dtype=float)
    xi = np.asarray(xi, dtype=float)
    return np.broadcast_arrays(t, xi)


def check_f1(nl, samples):
    '''Worst ratio ``|f| / (C (1 + |ξ|^{q-1}))``; passes when ``≤ 1``.

    :param samples: a pair ``(t, ξ)`` of broadcastable arrays.
    '''
    t, xi = _samples(samples)
    bound = nl.c_growth * (1 + np.abs(xi) ** (nl.q - 1))
    ratio = float(np.max(np.abs(nl.f(t, xi)) / bound)) if xi.size else 0.0
    return CheckResult('f1', ratio, ratio <= 1 + 1e-12,
                       'max |f|/(C(1+|xi|^(q-1)))')


def check_f2(nl, samples):
    '''Worst margin of ``0 < μF ≤ ξf`` over samples with ``|ξ| ≥ r``.

    The value is ``min(min ξf - μF, min F)``. ``μ = q`` makes the first
    term vanish identically and is accepted.
    '''
    t, xi = _samples(samples)
    keep = np.abs(xi) >= nl.r
    t, xi = t[keep], xi[keep]
    if not xi.size:
        return CheckResult('f2', 0.0, False, 'no samples with |xi| >= r')
    F = nl.F(t, xi)
    xf = xi * nl.f(t, xi)
    gap = xf - nl.mu * F
    slack = 1e-12 * np.abs(xf)
    ar_ok = bool(np.all(gap >= -slack))
    positive = bool(np.all(F > F_FLOOR))
    value = min(float(np.min(gap)), float(np.min(F)))
    detail = 'min(xi f - mu F) = %.6g, min F = %.6g' % (np.min(gap),
                                                          np.min(F))
    return CheckResult('f2', value, ar_ok and positive, detail)


def check_f3(nl, p, xi=None):
    '''Estimate ``lim_{ξ→0} f(t,ξ)/|ξ|^{p-1}`` along ``ξ_k = 2^{-k}``.

    Passes when the ratios decrease monotonically and either drop below
    ``1e-6`` or follow a power law with positive exponent. Forcing mode
    always fails: ``g(t)/|ξ|^{p-1}`` diverges.
    '''
    xi = 2.0 ** -np.arange(1, 61) if xi is None else np.asarray(xi, float)
    t = nl.sample_times()
    ratios = np.array([np.max(np.abs(nl.f(t, x))) / x ** (p - 1)
                       for x in xi])
    limit = float(ratios[-1])
    monotone = bool(np.all(np.diff(ratios) <= 1e-12 * ratios[:-1]))
    slope = np.nan
    positive = ratios > 0
    if positive.sum() >= 2:
        slope = float(np.polyfit(np.log(xi[positive]),
                                 np.log(ratios[positive]), 1)[0])
    if nl.is_forcing:
        return CheckResult('f3', limit, False,
                           'forcing mode violates (f3) by construction')
    passed = monotone and (limit < 1e-6 or slope > 0)
    return CheckResult('f3', limit, passed,
                       'monotone=%s, power law exponent %.4g' %
                       (monotone, slope))


def ar_constant(nl):
    '''``c`` in ``F(t, ξ) ≥ c|ξ|^μ`` for ``|ξ| ≥ r``.'''
    return nl.a_min * nl.r ** (nl.q - nl.mu) / nl.q


def ar_lower_bound(nl, t, xi):
    '''Lower bound ``c|ξ|^μ`` of ``F(t, ξ)`` for ``|ξ| ≥ r`` obtained by
    integrating the Ambrosetti-Rabinowitz inequality from ``r``.
    '''
    xi = np.asarray(xi, dtype=float)
    scale = nl.weight(np.asarray(t, dtype=float)) * nl.r ** (nl.q - nl.mu)
    bound = scale * np.abs(xi) ** nl.mu / nl.q
    return np.where(np.abs(xi) >= nl.r, bound, 0.0)


def default_ar_exponent(p, q):
    '''``μ = q - (q - p)/4`` when ``q > p``, strictly inside ``(p, q)``;
    ``q`` otherwise.
    '''
    p, q = float(p), float(q)
    return q - 0.25 * (q - p) if q > p else q
