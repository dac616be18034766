"""Configuration of a run. Every parameter is a :class:`Setting` which can
be given in a config file and, when the setting declares ``flags``, on the
command line. Parsing is implemented using the python argparser_ standard
library module.

Config files are flat ``section.name = value`` lines::

    # fractional mountain pass, cubic nonlinearity
    params.alpha = 0.8
    params.p = 2
    model.q = 4

Blank lines and ``#`` comments are ignored, unknown keys are an error.

Config
~~~~~~~~~~

.. autoclass:: Config
   :members:
   :member-order: bysource

Setting
~~~~~~~~~~

.. autoclass:: Setting
   :members:
   :member-order: bysource


.. _argparser: http://docs.python.org/dev/library/argparse.html
"""
import argparse
import logging
import textwrap

from .exceptions import ImproperlyConfigured
from .log import configured_logger
from .string import format_value


__all__ = [
    'Config',
    'Setting',
    'ordered_settings',
    'read_config_file',
    'validate_string',
    'validate_bool',
    'validate_list',
    'validate_pos_int',
    'validate_pos_float',
    'validate_float',
    'validate_int_list'
]

LOGGER = logging.getLogger('fracmp.config')

section_docs = {}
KNOWN_SETTINGS = {}
KNOWN_SETTINGS_ORDER = []


def set_if_avail(container, key, value, *skip_values):
    if value is not None and value not in skip_values:
        container[key] = value


def wrap_method(func):
    def _wrapped(instance, *args, **kwargs):
        return func(*args, **kwargs)
    return _wrapped


def ordered_settings():
    for name in KNOWN_SETTINGS_ORDER:
        yield KNOWN_SETTINGS[name]


def read_config_file(path):
    """Read a ``section.name = value`` file into a list of pairs."""
    try:
        with open(path, encoding='utf-8') as fp:
            lines = fp.read().splitlines()
    except OSError as exc:
        raise ImproperlyConfigured(
            'Failed to read config file "%s". %s' % (path, exc)) from None
    return parse_lines(lines, path)


def parse_lines(lines, source='<string>'):
    pairs = []
    for number, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        key, sep, value = line.partition('=')
        key = key.strip()
        if not sep or not key:
            raise ImproperlyConfigured(
                '%s:%d: expected "key = value"' % (source, number))
        pairs.append((key, value.strip()))
    return pairs


class Config:
    """A dictionary-like container of :class:`Setting` parameters for
    fine tuning a run.

    It provides easy access to :attr:`Setting.value` through
    :meth:`get` and item access, keyed by the dotted :attr:`Setting.name`.

    :param description: description used when parsing the command line,
        same usage as in the :class:`argparse.ArgumentParser` class.
    :param epilog: epilog used when parsing the command line, same usage
        as in the :class:`argparse.ArgumentParser` class.
    :param version: version used when parsing the command line, same usage
        as in the :class:`argparse.ArgumentParser` class.

    .. attribute:: settings

        Dictionary of all :class:`Setting` instances available in this
        :class:`Config` container.

        Keys are given by the :attr:`Setting.name` attribute.
    """
    exclude_from_config = set(('config',))

    def __init__(self, description=None, epilog=None, version=None,
                 **params):
        self.settings = {}
        for s in ordered_settings():
            setting = s()
            self.settings[setting.name] = setting
        self.description = description or 'Fractional mountain pass solver'
        self.epilog = epilog or ('exit codes: 0 success, 1 invalid input, '
                                 '2 not converged, 3 unexpected error')
        if version is None:
            from fracmp import __version__ as version
        self.version = version
        self.update(params)

    def __iter__(self):
        return iter(self.settings)

    def __len__(self):
        return len(self.settings)

    def __contains__(self, name):
        return name in self.settings

    def __getitem__(self, name):
        try:
            return self.settings[name].get()
        except KeyError:
            raise KeyError("'%s'" % name) from None

    def __eq__(self, other):
        return (isinstance(other, Config) and
                dict(self.items()) == dict(other.items()))

    def items(self):
        for k, setting in self.settings.items():
            yield k, setting.value

    def update(self, data, default=False):
        """Update this :attr:`Config` with ``data``.

        :param data: a ``Mapping`` or an iterable of key-value pairs.
        :param default: if ``True`` the updated :attr:`settings` will also
            set their :attr:`~Setting.default` attribute with the
            updating value.
        """
        items = data.items() if hasattr(data, 'items') else data
        for name, value in items:
            if value is not None:
                self.set(name, value, default)

    def get(self, name, default=None):
        """Get the value at ``name`` for this :class:`Config` container,
        ``default`` for unknown names or unset values.
        """
        setting = self.settings.get(name)
        if setting is None or setting.value is None:
            return default
        return setting.value

    def set(self, name, value, default=False):
        """Set the :class:`Setting` at ``name`` with a new ``value``.

        If ``default`` is ``True``, the :attr:`Setting.default` is also set.

        :raise ImproperlyConfigured: for unknown names or invalid values.
        """
        if name not in self.settings:
            raise ImproperlyConfigured('Unknown setting "%s"' % name)
        self.settings[name].set(value, default=default)

    def parser(self):
        """Create the argparser_ for this configuration by adding all
        settings via the :meth:`Setting.add_argument` method.

        :rtype: an instance of :class:`ArgumentParser`.
        """
        parser = argparse.ArgumentParser(description=self.description,
                                         epilog=self.epilog)
        parser.add_argument('--version',
                            action='version',
                            version=self.version)
        return self.add_to_parser(parser)

    def add_to_parser(self, parser):
        """Add this container :attr:`settings` to an existing ``parser``,
        one argument group per documented section.
        """
        setts = self.settings
        groups = {}

        def sorter(x):
            return (setts[x].order, setts[x].section)

        for k in sorted(setts, key=sorter):
            section = setts[k].section
            target = parser
            if section in section_docs:
                if section not in groups:
                    groups[section] = parser.add_argument_group(
                        section, section_docs[section].strip())
                target = groups[section]
            setts[k].add_argument(target)
        return parser

    def import_from_file(self, path=None):
        if path:
            self.set('config', path)
        path = self.get('config')
        LOGGER.debug('loading config file %s', path)
        for key, value in read_config_file(path):
            if key in self.exclude_from_config:
                continue
            self.set(key, value, True)

    def parse_command_line(self, argv=None):
        """Parse the command line.

        The config file named by ``--config`` is loaded first, command line
        values override it.
        """
        parser = argparse.ArgumentParser(add_help=False)
        self.settings['config'].add_argument(parser)
        opts, _ = parser.parse_known_args(argv)
        if opts.config is not None:
            self.import_from_file(opts.config)

        parser = self.parser()
        try:
            opts = parser.parse_args(argv)
        except SystemExit as exc:
            if exc.code:
                raise ImproperlyConfigured('Invalid command line') from None
            raise
        for k, v in opts.__dict__.items():
            if v is None:
                continue
            self.set(k, v)
        return self

    def serialize(self):
        """Config file text of every setting, in registry order."""
        lines = []
        for name in KNOWN_SETTINGS_ORDER:
            if name in self.exclude_from_config:
                continue
            lines.append('%s = %s' % (name, format_value(self[name])))
        return '\n'.join(lines) + '\n'

    @classmethod
    def parse(cls, text):
        """A new :class:`Config` from config file ``text``."""
        cfg = cls()
        cfg.update(parse_lines(text.splitlines()), True)
        return cfg

    def configured_logger(self, name='fracmp'):
        """Configure the ``fracmp`` namespace at the ``run.log_level``
        level and return the logger at ``name``.
        """
        configured_logger('fracmp', level=self.get('run.log_level'),
                          handlers=self.get('run.log_handlers'))
        return logging.getLogger(name)

    def copy(self):
        """A copy of this :class:`Config` container."""
        cls = self.__class__
        me = cls.__new__(cls)
        me.__dict__.update(self.__dict__)
        me.settings = dict(((name, setting.copy())
                            for name, setting in self.settings.items()))
        return me

    def __copy__(self):
        return self.copy()

    def __deepcopy__(self, memo):
        return self.copy()


class SettingMeta(type):
    """A metaclass which collects all setting classes and put them
    in the global ``KNOWN_SETTINGS`` list.
    """
    def __new__(cls, name, bases, attrs):
        super_new = super().__new__
        val = attrs.get("validator")
        if val:
            attrs["validator"] = wrap_method(val)
        if attrs.pop('virtual', False):
            return super_new(cls, name, bases, attrs)
        attrs["order"] = len(KNOWN_SETTINGS) + 1
        new_class = super_new(cls, name, bases, attrs)
        new_class.fmt_desc(attrs.get('desc') or '')
        if not new_class.name:
            raise ImproperlyConfigured('Setting %s has no name' % name)
        if new_class.name in KNOWN_SETTINGS_ORDER:
            old_class = KNOWN_SETTINGS.pop(new_class.name)
            new_class.order = old_class.order
        else:
            KNOWN_SETTINGS_ORDER.append(new_class.name)
        KNOWN_SETTINGS[new_class.name] = new_class
        return new_class

    def fmt_desc(cls, desc):
        desc = textwrap.dedent(desc).strip()
        setattr(cls, "desc", desc)
        lines = desc.split('\n\n')
        setattr(cls, "short", '' if not lines else lines[0])


class Setting(metaclass=SettingMeta):
    """Class for creating settings.

    All settings can be specified on a ``config`` file, those with
    ``flags`` or ``nargs`` on the command line too.
    """
    virtual = True      # type: bool
    """If set to ``True`` the settings won't be loaded.

    It can be only used as base class for other settings."""
    name = None         # type: str
    """The dotted key, ``section.name``, of this setting."""
    validator = None    # type: Callable
    """A validating function for this setting.

    It provided it must be a function accepting one positional argument,
    the value to validate."""
    value = None        # type: Any
    """The actual value for this setting."""
    default = None      # type: Any
    """The default value for this setting."""
    nargs = None        # type: str
    """The number of command-line arguments that should be consumed"""
    const = None        # type: Any
    """A constant value required by some action and nargs selections"""
    section = None      # type: str
    """Setting section, the part of :attr:`name` before the dot."""
    flags = None        # type: List
    """List of options strings, e.g. ``[-f, --foo]``."""
    choices = None      # type: List
    """Restrict the argument to the choices provided."""
    type = None         # type: Any
    """The type to which the command-line argument should be converted"""
    meta = None         # type: str
    """Same usage as ``metavar`` in the python :mod:`argparse` module. It is
    the name for the argument in usage message."""
    action = None       # type: str
    """The basic type of action to be taken when this argument is encountered
    at the command line"""
    short = None        # type: str
    """Optional shot description string"""
    desc = None         # type: str
    """Description string"""

    def __init__(self):
        self.extra = e = {}
        set_if_avail(e, 'choices', self.choices)
        set_if_avail(e, 'const', self.const)
        set_if_avail(e, 'type', self.type)
        self.flags = tuple(self.flags or ())
        self.short = self.short or self.desc
        self.desc = self.desc or self.short
        if not self.section:
            self.section = self.name.partition('.')[0]
        self.value = None
        if self.default is not None:
            self.set(self.default)
        self.modified = False

    def __str__(self):
        return '{0} ({1})'.format(self.name, self.value)
    __repr__ = __str__

    def get(self):
        """Returns :attr:`value`"""
        return self.value

    def set(self, val, default=False):
        """Set ``val`` as the :attr:`value` for this :class:`Setting`.

        If ``default`` is ``True`` set also the :attr:`default` value.
        """
        if hasattr(self.validator, '__call__'):
            try:
                val = self.validator(val)
            except (TypeError, ValueError) as exc:
                raise ImproperlyConfigured(
                    'Could not validate value for "%s" setting: %s' %
                    (self.name, exc)
                ) from None
        if self.choices and val is not None and val not in self.choices:
            raise ImproperlyConfigured(
                '"%s" must be one of %s, got "%s"' %
                (self.name, ', '.join(self.choices), val))
        self.value = val
        if default:
            self.default = val
        self.modified = True

    def add_argument(self, parser, set_default=False):
        """Add this :class:`Setting` to the ``parser``.

        The operation is carried out only if :attr:`flags` or
        :attr:`nargs` and :attr:`name` are defined.
        """
        default = self.default if set_default else None
        kwargs = dict(
            nargs=self.nargs,
            default=default,
            help="%s [%s]" % (self.short, self.default)
        )
        kwargs.update(self.extra)
        if self.flags:
            args = tuple(self.flags)
            kwargs.update({'dest': self.name,
                           'action': self.action or "store"})
            if kwargs["action"] != "store":
                kwargs.pop("type", None)
                kwargs.pop("nargs", None)
                kwargs.pop("choices", None)
        elif self.nargs and self.name:
            args = (self.name,)
            kwargs.update({'metavar': self.meta or None})
        else:
            # Not added to argparser
            return
        if self.meta:
            kwargs['metavar'] = self.meta
        parser.add_argument(*args, **kwargs)

    def copy(self):
        """Copy this :class:`Setting`"""
        setting = self.__class__.__new__(self.__class__)
        setting.__dict__.update(self.__dict__)
        return setting

    def __copy__(self):
        return self.copy()

    def __deepcopy__(self, memo):
        return self.copy()


def validate_bool(val):
    if isinstance(val, bool):
        return val
    if isinstance(val, int):
        return bool(val)
    if not isinstance(val, str):
        raise TypeError("Invalid type for casting: %s" % val)
    if val.lower().strip() == "true":
        return True
    elif val.lower().strip() == "false":
        return False
    else:
        raise ValueError("Invalid boolean: %s" % val)


def validate_pos_int(val):
    if isinstance(val, float):
        raise TypeError("Not an integer: %s" % val)
    if not isinstance(val, int):
        val = int(val, 0)
    else:
        # Booleans are ints!
        val = int(val)
    if val < 0:
        raise ValueError("Value must be positive: %s" % val)
    return val


def validate_pos_float(val):
    val = float(val)
    if val < 0:
        raise ValueError("Value must be positive: %s" % val)
    return val


def validate_float(val):
    if val is None or val == '':
        return None
    return float(val)


def validate_string(val):
    if val is None:
        return None
    if not isinstance(val, str):
        raise TypeError("Not a string: %s" % val)
    return val.strip() or None


def validate_list(val):
    if isinstance(val, str):
        val = [v.strip() for v in val.split(',') if v.strip()]
    if val and not isinstance(val, (list, tuple)):
        raise TypeError("Not a list: %s" % val)
    return list(val or ())


def validate_int_list(val):
    return [validate_pos_int(v) for v in validate_list(val)]


############################################################################
#    Run
section_docs['run'] = """
What to run, where to write and how loud to be.
"""


class Run(Setting):
    virtual = True
    section = "run"


class ConfigFile(Run):
    name = "config"
    flags = ["-c", "--config"]
    meta = "FILE"
    validator = validate_string
    desc = """\
        The path to a config file of ``section.name = value`` lines.
        """


class Command(Run):
    name = "run.command"
    nargs = "?"
    meta = "COMMAND"
    choices = ("solve", "verify", "converge")
    validator = validate_string
    desc = """\
        Command to run: solve, verify or converge.
        """


class Mode(Run):
    name = "run.mode"
    flags = ["--mode"]
    choices = ("mountain_pass", "convex")
    validator = validate_string
    default = "mountain_pass"
    desc = """\
        Solver mode of the solve command.

        ``convex`` needs a forcing (``model.forcing``) and solves the
        strictly convex problem with ``a = 0``.
        """


class OutputDir(Run):
    name = "run.output_dir"
    flags = ["--out"]
    meta = "DIR"
    validator = validate_string
    default = "fracmp-output"
    desc = """\
        Directory for the output files.
        """


class Seed(Run):
    name = "run.seed"
    flags = ["--seed"]
    type = int
    validator = validate_pos_int
    default = 0
    desc = """\
        Seed of every random generator of the run.
        """


class LogLevel(Run):
    name = "run.log_level"
    flags = ["--log-level"]
    choices = ("debug", "info", "warning", "error", "critical", "none")
    validator = validate_string
    default = "info"
    desc = """\
        The granularity of log outputs, ``none`` to silence them.
        """


class LogHandlers(Run):
    name = "run.log_handlers"
    flags = ["--log-handlers"]
    type = validate_list
    validator = validate_list
    default = ["console"]
    desc = """\
        Comma separated log handlers, ``console`` or ``console_message``.
        """


class Threads(Run):
    name = "run.threads"
    flags = ["--threads"]
    type = int
    validator = validate_pos_int
    default = 0
    desc = """\
        Threads of the convergence study, 0 for the number of CPUs.

        The ``FRACMP_THREADS`` environment variable caps this value.
        """


class Mirror(Run):
    name = "run.mirror"
    flags = ["--mirror"]
    action = "store_true"
    validator = validate_bool
    default = False
    desc = """\
        Solve the mirrored problem built on the right derivative.
        """


############################################################################
#    Parameters of the space
section_docs['params'] = """
Order, exponent and length of the fractional Sobolev space.
"""


class Params(Setting):
    virtual = True
    section = "params"
    validator = validate_float


class Alpha(Params):
    name = "params.alpha"
    flags = ["--alpha"]
    type = float
    default = 0.8
    desc = "Fractional order, 1/p < alpha <= 1."


class Exponent(Params):
    name = "params.p"
    flags = ["--p"]
    type = float
    default = 2.0
    desc = "Exponent of the p-Laplacian, p > 1."


class Length(Params):
    name = "params.T"
    flags = ["--T"]
    type = float
    default = 1.0
    desc = "Length of the interval [0, T]."


class Subintervals(Setting):
    name = "grid.N"
    flags = ["--N"]
    type = int
    validator = validate_pos_int
    default = 256
    desc = "Number of grid subintervals."


############################################################################
#    Nonlinearity
section_docs['model'] = """
The nonlinearity ``f(t, u) = a|u|^{q-2}u + g(t)``.
"""


class Model(Setting):
    virtual = True
    section = "model"
    validator = validate_float


class GrowthExponent(Model):
    name = "model.q"
    flags = ["--q"]
    type = float
    default = 4.0
    desc = "Growth exponent q > p."


class Weight(Model):
    name = "model.a"
    type = float
    default = 1.0
    desc = "Constant weight a > 0."


class AR(Model):
    name = "model.mu"
    type = float
    desc = "Ambrosetti-Rabinowitz exponent, defaults to q - (q - p)/4."


class ARThreshold(Model):
    name = "model.r"
    type = float
    default = 1.0
    desc = "Ambrosetti-Rabinowitz threshold r > 0."


class GrowthConstant(Model):
    name = "model.c_growth"
    type = float
    desc = "Constant of the growth bound, defaults to max a."


class Forcing(Model):
    name = "model.forcing"
    flags = ["--forcing"]
    choices = ("none", "sine", "manufactured")
    validator = validate_string
    default = "none"
    desc = """\
        Forcing ``g`` of the convex mode.

        ``sine`` is ``scale (pi/T)^2 sin(pi t/T)``, ``manufactured`` is the
        discrete forcing whose minimizer is ``scale t(T - t)``.
        """


class ForcingScale(Model):
    name = "model.forcing_scale"
    type = float
    default = 1.0
    desc = "Amplitude of the forcing."


############################################################################
#    Solver
section_docs['solver'] = """
Tolerances and budgets of the critical point solvers.
"""


class Solver(Setting):
    virtual = True
    section = "solver"
    validator = validate_pos_float
    type = float


class TolGrad(Solver):
    name = "solver.tol_grad"
    flags = ["--tol"]
    default = 1e-6
    desc = "Stop when the dual gradient norm is below this value."


class MaxIters(Solver):
    name = "solver.max_iters"
    type = int
    validator = validate_pos_int
    default = 2000
    desc = "Iteration budget."


class PathPoints(Solver):
    name = "solver.path_points"
    type = int
    validator = validate_pos_int
    default = 16
    desc = "Number K of mountain pass path segments, at least 8."


class StepInit(Solver):
    name = "solver.step_init"
    default = 1.0
    desc = "First trial step of the line search."


class ArmijoC(Solver):
    name = "solver.armijo_c"
    default = 1e-4
    desc = "Sufficient decrease constant."


class BacktrackFactor(Solver):
    name = "solver.backtrack_factor"
    default = 0.5
    desc = "Step reduction factor of the line search."


class EpsReg(Solver):
    name = "solver.eps_reg"
    default = 1e-10
    desc = "Regularization of |z|^(p-2) when p < 2."


class RedistributeEvery(Solver):
    name = "solver.redistribute_every"
    type = int
    validator = validate_pos_int
    default = 10
    desc = "Iterations between arc-length path redistributions."


class MultiStart(Solver):
    name = "solver.multi_start"
    type = int
    validator = validate_pos_int
    default = 3
    desc = "Starting points of the convex mode."


class NormCap(Solver):
    name = "solver.norm_cap"
    default = 100.0
    desc = "Max/median bound of the iterate norms."


############################################################################
#    Verify and convergence study
class Samples(Setting):
    name = "verify.samples"
    flags = ["--samples"]
    type = int
    validator = validate_pos_int
    default = 100
    desc = "Random functions per property check."


class CheckF3(Setting):
    name = "verify.f3"
    validator = validate_bool
    default = True
    desc = "Include the small amplitude hypothesis (f3)."


class StudyKind(Setting):
    name = "study.kind"
    flags = ["--kind"]
    choices = ("manufactured", "identities", "poincare")
    validator = validate_string
    default = "manufactured"
    desc = """\
        Convergence study: ``manufactured`` convex solve errors,
        ``identities`` operator identity residuals or the N-independent
        ``poincare`` constant.
        """


class StudySizes(Setting):
    name = "study.sizes"
    type = validate_int_list
    validator = validate_int_list
    default = [64, 128, 256, 512, 1024]
    desc = "Comma separated grid sizes of the convergence study."
