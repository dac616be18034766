'''Version string helpers.

A version is a five elements tuple ``(major, minor, micro, level, serial)``
where ``level`` is one of ``alpha``, ``beta``, ``rc`` or ``final``.
'''
import platform

import numpy as np
import scipy

LEVELS = {'alpha': 'a', 'beta': 'b', 'rc': 'rc', 'final': ''}


def get_version(version):
    if len(version) != 5 or version[3] not in LEVELS:
        raise ValueError('Invalid version tuple %s' % (version,))
    main = '.'.join(map(str, version[:3]))
    level = LEVELS[version[3]]
    if level:
        main = '%s%s%s' % (main, level, version[4])
    return main


def stack_versions():
    '''Versions of the numerical stack, recorded in run reports so that
    outputs can be traced to the libraries which produced them.
    '''
    return (('python', platform.python_version()),
            ('numpy', np.__version__),
            ('scipy', scipy.__version__))
