'''
A list of all Exception specific to fracmp library.
'''
import traceback


class FracmpException(Exception):
    '''Base class of all fracmp exceptions.

    .. attribute:: exit_code

        the exit code returned by the command line application when this
        exception is not handled by a command. Exceptions with an exit code
        are logged without the stack trace.
    '''
    exit_code = 3


class InvalidParameter(FracmpException, ValueError):
    '''A :class:`FracmpException` raised when an input is outside the domain
    of an operation: a fractional order outside its window, non-finite
    samples, an exponent below one, an ill-formed grid.
    '''
    exit_code = 1


class BoundaryConditionError(InvalidParameter):
    '''Raised when a grid function does not vanish where a zero trace is
    required.
    '''


class ImproperlyConfigured(FracmpException):
    '''A :class:`FracmpException` raised when an inconsistent configuration
    has occurred.
    '''
    exit_code = 1


class SolverError(FracmpException):
    '''Base class for failures of the critical point solvers.'''
    exit_code = 2


class GeometryError(SolverError):
    '''No far point with negative energy could be found along the initial
    direction.
    '''


class PathCollapse(SolverError):
    '''The maximizer of a discrete path reached one of its endpoints.'''


class MaxIterations(SolverError):
    '''A solver exhausted its iteration budget before converging.'''


class CommandError(FracmpException):
    exit_code = 1


class CommandNotFound(CommandError):

    def __init__(self, name):
        super().__init__('Command "%s" not available' % name)


def format_traceback(exc):
    return traceback.format_exception(exc.__class__, exc, exc.__traceback__)
