import numpy as np

from ..grid import GridFunction, DirichletGridFunction


SMOOTH_CORPUS = (
    lambda s: s,
    lambda s: s * s,
    lambda s: np.sin(np.pi * s),
    lambda s: np.sin(2 * np.pi * s),
    lambda s: s * (1 - s),
    lambda s: s * np.exp(s),
    lambda s: np.sin(np.pi * s) ** 2,
    lambda s: s ** 3,
    lambda s: 1 - np.cos(np.pi * s),
    lambda s: s * np.cos(np.pi * s),
)


def def_converter(x):
    return x


def populate(datatype='dirichlet', size=10, grid=None, start=None, end=None,
             converter=None, choice_from=None, seed=None, modes=8):
    '''Utility function for populating lists with seeded random data.

    Useful when sampling functions for numerical property checks. The
    same ``seed`` always gives the same list.

    Supported data-types

    * *dirichlet*
        For example::

            populate('dirichlet', 100, grid=Grid(1, 256), seed=3)

        create a 100 elements list of :class:`.DirichletGridFunction`,
        each a random combination of at most ``modes`` sine modes plus
        a piecewise linear bump, vanishing at both ends

    * *positive*
        For example::

            populate('positive', 10, grid=Grid(1, 256), start=0.5, end=2)

        create a 10 elements list of :class:`.GridFunction` with smooth
        values between ``start`` and ``end``, usable as weights

    * *corpus*
        For example::

            populate('corpus', grid=Grid(1, 256))

        the first ``size`` (at most 10) functions of a fixed corpus of
        smooth :class:`.GridFunction` vanishing at ``t = 0``, for the
        operator identities

    * *float*
        For example::

            populate('float', 200, start=0, end=10)

        create a 200 elements list with random floats between ``start``
        and ``end``

    * *choice* (elements of an iterable)
        For example::

            populate('choice', 200, choice_from=[0.3, 0.5, 0.8])

        create a 200 elements list with random elements from
        ``choice_from``
    '''
    rng = np.random.default_rng(seed)
    converter = converter or def_converter
    if datatype == 'dirichlet':
        return [converter(random_dirichlet(grid, rng, modes))
                for _ in range(size)]
    elif datatype == 'corpus':
        s = grid.nodes / grid.T
        return [converter(GridFunction(grid, f(s)))
                for f in SMOOTH_CORPUS[:size]]
    elif datatype == 'positive':
        start = 0.5 if start is None else start
        end = 2.0 if end is None else end
        return [converter(random_positive(grid, rng, start, end))
                for _ in range(size)]
    elif datatype == 'float':
        start = start or 0
        end = end or 10
        return [converter(float(v)) for v in rng.uniform(start, end, size)]
    elif datatype == 'choice' and choice_from:
        choices = list(choice_from)
        return [converter(choices[i])
                for i in rng.integers(0, len(choices), size)]
    raise ValueError('Unknown datatype "%s"' % datatype)


def random_dirichlet(grid, rng, modes=8):
    t = grid.nodes / grid.T
    n = int(rng.integers(1, modes + 1))
    k = np.arange(1, n + 1)
    coefficients = rng.normal(size=n) / k
    values = np.sin(np.pi * np.outer(t, k)) @ coefficients
    # hat function peaking at a random interior point
    peak = rng.uniform(0.1, 0.9)
    height = rng.normal()
    values += height * np.minimum(t / peak, (1 - t) / (1 - peak))
    return DirichletGridFunction.clamp(grid, values)


def random_positive(grid, rng, start, end):
    t = grid.nodes / grid.T
    phase, frequency = rng.uniform(0, 2 * np.pi), rng.uniform(0.5, 3)
    shape = 0.5 * (1 + np.sin(2 * np.pi * frequency * t + phase))
    return GridFunction(grid, start + (end - start) * shape)
