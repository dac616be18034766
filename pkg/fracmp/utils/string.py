'''Text helpers for config files and reports.'''
import numpy as np


def to_string(s, encoding=None, errors='strict'):
    """Convert ``s`` into a native string"""
    if isinstance(s, bytes):
        return s.decode(encoding or 'utf-8', errors)
    elif not isinstance(s, str):
        return str(s)
    else:
        return s


def format_value(value):
    '''Text representation of a configuration or report value.

    Floats use ``repr`` so that parsing the text back gives the same
    number; sequences are comma separated.
    '''
    if value is None:
        return ''
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (list, tuple, np.ndarray)):
        return ', '.join(format_value(v) for v in value)
    return to_string(value)
