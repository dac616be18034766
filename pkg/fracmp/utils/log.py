'''
Logging configuration for fracmp.

All loggers live in the ``fracmp`` namespace (``fracmp.solver``,
``fracmp.apps`` ...) and the namespace is configured once per process by
:func:`configured_logger`, which applies a copy of :data:`LOGGING_CONFIG`
with :func:`logging.config.dictConfig`.

=====================  ==================================================
handler                output
=====================  ==================================================
``console``            ``time level logger: message`` on stderr, coloured
                       on a terminal
``console_message``    the bare message on stderr
``silent``             nothing
=====================  ==================================================
'''
import logging
import sys
from copy import deepcopy
from logging.config import dictConfig
from threading import Lock


LOGGING_CONFIG = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '%(asctime)s %(levelname)-7s %(name)s: %(message)s',
            'datefmt': '%H:%M:%S'
        },
        'message': {'format': '%(message)s'}
    },
    'handlers': {
        'silent': {
            'class': 'logging.NullHandler'
        },
        'console': {
            'class': 'fracmp.utils.log.ColoredStream',
            'formatter': 'verbose'
        },
        'console_message': {
            'class': 'fracmp.utils.log.ColoredStream',
            'formatter': 'message'
        }
    },
    'loggers': {}
}

LEVELS = {
    'debug': logging.DEBUG,
    'info': logging.INFO,
    'warning': logging.WARNING,
    'error': logging.ERROR,
    'critical': logging.CRITICAL
}

_lock = Lock()
_configured = set()


def clear_logger():
    '''Forget configured namespaces, the next call reconfigures them.'''
    with _lock:
        _configured.clear()


def get_level(level):
    '''Numeric level of ``level``; ``NOTSET`` for ``none`` or anything
    unknown.
    '''
    if isinstance(level, int):
        return level
    return LEVELS.get(str(level).lower(), logging.NOTSET)


def configured_logger(name='fracmp', config=None, level=None,
                      handlers=None):
    '''Configure the logger at ``name`` once and return it.

    A second call with the same ``name`` returns the existing logger
    untouched. An unknown ``level`` (``none`` included) attaches the
    ``silent`` handler.
    '''
    with _lock:
        if name in _configured:
            return logging.getLogger(name)
        _configured.add(name)
        level = get_level(level)
        if level == logging.NOTSET:
            level, handlers = logging.CRITICAL, ['silent']
        logconfig = deepcopy(config or LOGGING_CONFIG)
        logconfig['loggers'] = {
            name: {'level': level,
                   'propagate': False,
                   'handlers': list(handlers or ['console'])}
        }
        dictConfig(logconfig)
        return logging.getLogger(name)


class ColoredStream(logging.StreamHandler):
    '''Stream handler colouring records by level when writing to a tty.'''
    COLORS = {'DEBUG': 36,
              'INFO': 32,
              'WARNING': 35,
              'ERROR': 31,
              'CRITICAL': 31}

    def __init__(self, stream=None):
        super().__init__(stream or sys.stderr)

    def format(self, record):
        text = super().format(record)
        isatty = getattr(self.stream, 'isatty', None)
        if isatty and isatty():
            code = self.COLORS.get(record.levelname, 37)
            text = '\x1b[%sm%s\x1b[0m' % (code, text)
        return text
