'''Uniform grids on ``[0, T]`` and the sample vectors living on them.

Every numerical object of the package is a :class:`GridFunction`: a
read-only vector of ``N + 1`` node values bound to a :class:`Grid`.
'''
from collections import namedtuple
from functools import lru_cache
import numbers

import numpy as np

from .utils.exceptions import InvalidParameter, BoundaryConditionError


__all__ = ['FracOrder', 'Grid', 'GridFunction', 'DirichletGridFunction']

#: relative slack when checking a zero trace
TRACE_TOLERANCE = 1e-12


class FracOrder(float):
    '''A fractional order ``α`` in ``(0, 1]``.'''

    def __new__(cls, alpha):
        try:
            value = float(alpha)
        except (TypeError, ValueError):
            raise InvalidParameter('Invalid fractional order %r' % (alpha,))
        if not np.isfinite(value) or not 0 < value <= 1:
            raise InvalidParameter(
                'Fractional order must be in (0, 1], got %s' % value)
        return super().__new__(cls, value)

    def __repr__(self):
        return 'FracOrder(%s)' % float(self)

    @property
    def is_classical(self):
        return float(self) == 1.0


class Grid(namedtuple('Grid', 'T N')):
    '''Uniform partition of ``[0, T]`` with ``N`` subintervals.

    Grids are hashable values: operator matrices are cached per grid.
    '''
    __slots__ = ()

    def __new__(cls, T, N):
        try:
            T = float(T)
        except (TypeError, ValueError):
            raise InvalidParameter('Interval length must be a number')
        if not np.isfinite(T) or T <= 0:
            raise InvalidParameter('Interval length must be positive')
        if isinstance(N, bool) or not isinstance(N, numbers.Integral):
            raise InvalidParameter('Number of subintervals must be integer')
        N = int(N)
        if N < 2:
            raise InvalidParameter('A grid needs at least 2 subintervals')
        return super().__new__(cls, T, N)

    @property
    def h(self):
        return self.T / self.N

    @property
    def size(self):
        return self.N + 1

    @property
    def nodes(self):
        return _nodes(self.T, self.N)

    @property
    def weights(self):
        '''Composite trapezoid weights.'''
        return _weights(self.T, self.N)

    def integrate(self, values):
        return float(np.dot(self.weights, values))

    def refine(self, factor=2):
        return self.__class__(self.T, self.N * factor)


@lru_cache(maxsize=64)
def _nodes(T, N):
    nodes = np.linspace(0.0, T, N + 1)
    nodes.setflags(write=False)
    return nodes


@lru_cache(maxsize=64)
def _weights(T, N):
    w = np.full(N + 1, T / N)
    w[0] = w[-1] = 0.5 * T / N
    w.setflags(write=False)
    return w


class GridFunction:
    '''Real samples on the nodes of a :class:`Grid`.

    :param grid: the :class:`Grid`.
    :param values: ``N + 1`` samples, copied into a read-only array.
    :param singular: indices where the value is genuinely infinite. They
        hold ``nan`` and are the only entries allowed to be non-finite.
    '''
    __slots__ = ('grid', 'values', 'singular')

    def __init__(self, grid, values, singular=()):
        if not isinstance(grid, Grid):
            raise InvalidParameter('A GridFunction needs a Grid')
        values = np.array(values, dtype=float)
        if values.shape != (grid.size,):
            raise InvalidParameter(
                'Expected %d node values, got shape %s' %
                (grid.size, values.shape))
        singular = frozenset(int(i) % grid.size for i in singular)
        finite = np.isfinite(values)
        if singular:
            idx = list(singular)
            finite[idx] = True
            values[idx] = np.nan
        if not finite.all():
            raise InvalidParameter('Grid function values must be finite')
        values.setflags(write=False)
        self.grid = grid
        self.values = values
        self.singular = singular

    @classmethod
    def from_callable(cls, grid, f):
        return cls(grid, f(grid.nodes))

    @classmethod
    def zeros(cls, grid):
        return cls(grid, np.zeros(grid.size))

    def __repr__(self):
        return '%s(N=%d, T=%s)' % (self.__class__.__name__,
                                   self.grid.N, self.grid.T)

    def __len__(self):
        return self.grid.size

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.values
        return self.values.astype(dtype)

    @property
    def nodes(self):
        return self.grid.nodes

    @property
    def is_regular(self):
        return not self.singular

    def regular(self):
        '''Values with singular entries rejected.'''
        if self.singular:
            raise InvalidParameter(
                'Operation requires finite values at every node')
        return self.values

    def interior(self):
        return self.values[1:-1]

    def reversed(self):
        '''Samples of ``t ↦ u(T - t)``.'''
        n = self.grid.N
        return self.__class__(self.grid, self.values[::-1],
                              tuple(n - i for i in self.singular))

    def at(self, t):
        '''Piecewise linear interpolation at ``t``.'''
        return np.interp(t, self.grid.nodes, self.regular())

    def sample(self, grid):
        '''Interpolate onto another grid over the same interval.'''
        if grid.T != self.grid.T:
            raise InvalidParameter('Grids cover different intervals')
        return self.__class__(grid, self.at(grid.nodes))

    # arithmetic
    def _result_class(self, other):
        if isinstance(self, DirichletGridFunction) and (
                not isinstance(other, GridFunction) or
                isinstance(other, DirichletGridFunction)):
            return DirichletGridFunction
        return GridFunction

    def _operand(self, other):
        if isinstance(other, GridFunction):
            if other.grid != self.grid:
                raise InvalidParameter('Grid functions on different grids')
            return other.regular()
        if isinstance(other, numbers.Real):
            return float(other)
        return NotImplemented

    def _binary(self, other, op):
        value = self._operand(other)
        if value is NotImplemented:
            return NotImplemented
        cls = self._result_class(other)
        return cls(self.grid, op(self.regular(), value))

    def __add__(self, other):
        if isinstance(other, numbers.Real):
            return GridFunction(self.grid, self.regular() + float(other))
        return self._binary(other, np.add)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, numbers.Real):
            return GridFunction(self.grid, self.regular() - float(other))
        return self._binary(other, np.subtract)

    def __mul__(self, other):
        if isinstance(other, GridFunction):
            return GridFunction(self.grid, self.regular() * other.regular())
        return self._binary(other, np.multiply)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, numbers.Real):
            return NotImplemented
        return self._binary(other, np.divide)

    def __neg__(self):
        return self._binary(-1.0, np.multiply)


class DirichletGridFunction(GridFunction):
    '''A :class:`GridFunction` vanishing at both ends of the interval.

    End values within a relative ``1e-12`` of zero (rounding of
    ``sin(πt)`` at ``t = T`` for instance) are set to exactly zero,
    anything larger raises :class:`BoundaryConditionError`.
    '''
    __slots__ = ()

    def __init__(self, grid, values, singular=()):
        values = np.array(values, dtype=float)
        if singular:
            raise BoundaryConditionError(
                'Dirichlet grid functions cannot be singular')
        if values.ndim == 1 and values.size:
            scale = max(1.0, float(np.max(np.abs(values))))
            for i in (0, -1):
                if abs(values[i]) > TRACE_TOLERANCE * scale:
                    raise BoundaryConditionError(
                        'Dirichlet grid function must vanish at t=%s' %
                        ('0' if i == 0 else 'T'))
                values[i] = 0.0
        super().__init__(grid, values)

    @classmethod
    def clamp(cls, grid, values):
        '''Build from ``values`` after forcing both end values to zero.'''
        values = np.array(values, dtype=float)
        values[0] = values[-1] = 0.0
        return cls(grid, values)

    @classmethod
    def from_interior(cls, grid, interior):
        values = np.zeros(grid.size)
        values[1:-1] = interior
        return cls(grid, values)
