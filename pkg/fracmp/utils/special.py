'''Gamma function with the argument checks the fractional constants need.'''
import numpy as np
from scipy import special

from .exceptions import InvalidParameter


def gamma(x):
    '''Gamma function of a scalar or an array.

    Non-positive integers are poles and raise :class:`InvalidParameter`.
    '''
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise InvalidParameter('gamma requires finite arguments')
    if np.any((arr <= 0) & (arr == np.round(arr))):
        raise InvalidParameter('gamma has poles at non-positive integers')
    result = special.gamma(arr)
    if np.ndim(x) == 0:
        return float(result)
    return result
