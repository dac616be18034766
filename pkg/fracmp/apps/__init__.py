"""Command line application.

An :class:`Application` loads a :class:`.Config` from defaults, keyword
parameters, a config file and the command line (in this order), builds
the :class:`RunConfig` of the run and dispatches it to the command
registered under ``run.command``::

    from fracmp.apps import Application

    exit_code = Application(argv=['solve', '--config', 'run.cfg'])()

Exit codes
~~~~~~~~~~~~~~

==== =========================================================
 0   success
 1   invalid parameters or configuration, failed verification
 2   solver failure or non-convergence (outputs are still written)
 3   unexpected error
==== =========================================================
"""
import enum
import logging
import os

from ..fracops import Side
from ..grid import Grid, DirichletGridFunction
from ..model import Nonlinearity, default_ar_exponent
from ..oracles import sine_forcing, manufactured_forcing
from ..solver import SolverOptions
from ..space import FracParams
from ..utils.config import Config
from ..utils.exceptions import (FracmpException, ImproperlyConfigured,
                                format_traceback)
from ..utils.log import configured_logger


__all__ = ['Application', 'RunConfig', 'Mode', 'study_threads']

LOGGER = logging.getLogger('fracmp.apps')

UNEXPECTED_EXIT_CODE = 3


class Mode(enum.Enum):
    MOUNTAIN_PASS = 'mountain_pass'
    CONVEX = 'convex'
    VERIFY = 'verify'
    CONVERGENCE_STUDY = 'converge'


def study_threads(requested=0):
    '''Worker threads of a study: ``requested`` (0 for the CPU count),
    capped by the ``FRACMP_THREADS`` environment variable.
    '''
    threads = requested or os.cpu_count() or 1
    cap = os.environ.get('FRACMP_THREADS')
    if cap:
        try:
            cap = int(cap)
        except ValueError:
            raise ImproperlyConfigured(
                'FRACMP_THREADS must be an integer, got "%s"' % cap) from None
        if cap < 1:
            raise ImproperlyConfigured('FRACMP_THREADS must be positive')
        threads = min(threads, cap)
    return threads


class RunConfig:
    '''Everything a command needs, validated.

    .. attribute:: cfg

        The :class:`.Config` this run was built from.
    '''
    def __init__(self, params, nl, grid_N, solver, mode, output_dir,
                 cfg=None, side=Side.LEFT):
        self.params = params
        self.nl = nl
        self.grid_N = grid_N
        self.solver = solver
        self.mode = Mode(mode)
        self.output_dir = output_dir
        self.cfg = cfg if cfg is not None else Config()
        self.side = Side(side)

    def __repr__(self):
        return 'RunConfig(mode=%s, params=%s, N=%d)' % (
            self.mode.value, tuple(self.params), self.grid_N)

    @property
    def grid(self):
        return Grid(self.params.T, self.grid_N)

    @property
    def command(self):
        return self.cfg.get('run.command') or 'solve'

    @property
    def threads(self):
        return study_threads(self.cfg.get('run.threads'))

    @classmethod
    def from_config(cls, cfg):
        '''Build and validate the run described by ``cfg``.

        :raise InvalidParameter: when a component rejects its parameters.
        :raise ImproperlyConfigured: for inconsistent combinations.
        '''
        command = cfg.get('run.command') or 'solve'
        params = FracParams(cfg['params.alpha'], cfg['params.p'],
                            cfg['params.T'])
        N = cfg['grid.N']
        grid = Grid(params.T, N)
        forcing_kind = cfg.get('model.forcing', 'none')
        scale = cfg['model.forcing_scale']
        if forcing_kind == 'sine':
            forcing = sine_forcing(grid, scale)
        elif forcing_kind == 'manufactured':
            t = grid.nodes
            ubar = DirichletGridFunction.clamp(grid,
                                               scale * t * (params.T - t))
            forcing = manufactured_forcing(grid, params, ubar,
                                           cfg['solver.eps_reg'])
        else:
            forcing = None
        if command == 'verify':
            mode = Mode.VERIFY
        elif command == 'converge':
            mode = Mode.CONVERGENCE_STUDY
        else:
            mode = Mode(cfg['run.mode'])
        if mode == Mode.CONVEX:
            if forcing is None:
                raise ImproperlyConfigured(
                    'convex mode requires model.forcing')
            nl = Nonlinearity(q=cfg['model.q'], a=0.0, forcing=forcing)
        else:
            if mode == Mode.MOUNTAIN_PASS and forcing is not None:
                raise ImproperlyConfigured(
                    'mountain_pass mode does not accept a forcing')
            mu = cfg.get('model.mu')
            if mu is None:
                mu = default_ar_exponent(params.p, cfg['model.q'])
            nl = Nonlinearity(q=cfg['model.q'], a=cfg['model.a'],
                              mu=mu, r=cfg['model.r'],
                              c_growth=cfg.get('model.c_growth'),
                              forcing=forcing)
        solver = SolverOptions(
            tol_grad=cfg['solver.tol_grad'],
            max_iters=cfg['solver.max_iters'],
            path_points=cfg['solver.path_points'],
            step_init=cfg['solver.step_init'],
            armijo_c=cfg['solver.armijo_c'],
            backtrack_factor=cfg['solver.backtrack_factor'],
            seed=cfg['run.seed'],
            eps_reg=cfg['solver.eps_reg'],
            redistribute_every=cfg['solver.redistribute_every'],
            multi_start=cfg['solver.multi_start'],
            norm_cap=cfg['solver.norm_cap'])
        side = Side.RIGHT if cfg.get('run.mirror') else Side.LEFT
        return cls(params, nl, N, solver, mode, cfg['run.output_dir'],
                   cfg=cfg, side=side)


class Application:
    """Configure and run a command.

    :parameter argv: Optional list of command line parameters to parse, if
        not supplied the :attr:`sys.argv` list will be used.
    :parameter parse_console: ``True`` (default) if the console parameters
        needs parsing.
    :parameter cfg: Optional :class:`.Config`, a new one otherwise.
    :parameter params: a dictionary of configuration parameters which
        overrides the defaults. They will be overwritten by a config file
        or command line arguments.

    .. attribute:: cfg

        The :class:`.Config` for this :class:`Application`.
    """
    def __init__(self, argv=None, parse_console=True, cfg=None, **params):
        self.cfg = cfg if isinstance(cfg, Config) else self.create_config(
            cfg or {})
        self.cfg.update(params, True)
        self.argv = argv
        self.console_parsed = parse_console

    def __repr__(self):
        return 'fracmp'

    @property
    def version(self):
        return self.cfg.version

    @classmethod
    def create_config(cls, params):
        """Create a new :class:`.Config` container with ``params`` as
        defaults.
        """
        cfg = Config()
        cfg.update(params, True)
        return cfg

    def load_config(self):
        """Load the configuration from a file and/or from the command line.

        The parameters overriding order is the following:

        * default parameters.
        * the key-valued params passed in the initialisation.
        * the parameters in the optional configuration file
        * the parameters passed in the command line.
        """
        if self.console_parsed:
            self.cfg.parse_command_line(self.argv)
        elif self.cfg.get('config'):
            self.cfg.import_from_file()

    def __call__(self):
        """Run the configured command and return its exit code."""
        from .commands import get_command
        try:
            self.load_config()
            self.cfg.configured_logger()
            run = RunConfig.from_config(self.cfg)
            command = get_command(run.command)
            LOGGER.debug('running %s with %r', run.command, run)
            return command(run)
        except FracmpException as exc:
            self._logger().error(str(exc))
            return exc.exit_code
        except Exception as exc:
            self._logger().critical('Unexpected error\n%s',
                                    ''.join(format_traceback(exc)))
            return UNEXPECTED_EXIT_CODE

    def _logger(self):
        configured_logger('fracmp', level=self.cfg.get('run.log_level'),
                          handlers=self.cfg.get('run.log_handlers'))
        return LOGGER

    def start(self):
        return self()
