'''Commands of the command line application.

A command is a function of a :class:`.RunConfig` returning an exit code,
registered with the :class:`command` decorator and looked up by name with
:func:`get_command`.
'''
import logging
import sys

import numpy as np

from .. import __version__
from ..energy import Functional, weak_residual
from ..grid import DirichletGridFunction
from ..oracles import shooting_solution
from ..solver import (mountain_pass_solve, convex_solve, ps_diagnostic,
                      estimate_geometry)
from ..utils.exceptions import CommandNotFound, MaxIterations, SolverError
from ..utils.version import stack_versions
from . import Mode
from .output import (write_solution, write_path_profile, write_report,
                     write_convergence, format_table)
from .study import run_study
from .verify import run_battery


__all__ = ['command', 'get_command', 'cmd_solve', 'cmd_verify',
           'cmd_converge', 'global_commands_table']

LOGGER = logging.getLogger('fracmp.commands')

global_commands_table = {}

#: sine test functions of the weak residual check
TEST_FUNCTIONS = 16

FAILED_EXIT_CODE = 1


def get_command(name):
    '''Get the command function *name*'''
    command = global_commands_table.get(name.lower())
    if not command:
        raise CommandNotFound(name)
    return command


class command:
    '''Decorator for command functions.

    :parameter name: registry name, defaults to the function name without
        its ``cmd_`` prefix.
    '''
    def __init__(self, name=None):
        self.name = name

    def __call__(self, f):
        name = self.name or f.__name__.lower()
        if name.startswith('cmd_'):
            name = name[4:]
        global_commands_table[name] = f
        f.command_name = name
        return f


def sine_residuals(u, params, nl, eps_reg, side, count=TEST_FUNCTIONS):
    '''Weak residuals against ``sin(kπt/T)``, ``k = 1, ..., count``.'''
    grid = u.grid
    residuals = []
    for k in range(1, count + 1):
        test = DirichletGridFunction.clamp(
            grid, np.sin(k * np.pi * grid.nodes / grid.T))
        residuals.append(abs(weak_residual(u, test, params, nl, eps_reg,
                                           side)))
    return np.array(residuals)


@command()
def cmd_solve(run):
    '''Solve and write ``solution.csv``, ``path_profile.csv`` and
    ``report.txt``; exit 2 when the solver did not converge.
    '''
    params, nl, opts = run.params, run.nl, run.solver
    if run.mode == Mode.CONVEX:
        report = convex_solve(params, nl, opts, run.grid_N, run.side)
        diagnostic = None
    else:
        geometry = estimate_geometry(params, nl, opts, run.grid_N, run.side)
        report = mountain_pass_solve(params, nl, opts, run.grid_N, geometry,
                                     run.side)
        diagnostic = ps_diagnostic(report, params)
    u = report.u_star
    F = Functional(u.grid, params, nl, opts.eps_reg, run.side)
    residuals = sine_residuals(u, params, nl, opts.eps_reg, run.side)
    entries = [
        ('version', __version__),
        ('command', 'solve'),
        ('mode', report.mode),
        ('side', run.side.value),
        ('params.alpha', params.alpha),
        ('params.p', params.p),
        ('params.T', params.T),
        ('grid.N', run.grid_N),
        ('model.q', nl.q),
        ('model.mu', nl.mu),
        ('seed', opts.seed),
        ('converged', report.converged),
        ('iterations', report.iterations),
        ('grad_norm', report.grad_norm),
        ('noise_steps', report.noise_steps),
        ('violations', '; '.join(report.violations)),
        ('energy.J', report.breakdown.J),
        ('energy.H', report.breakdown.H),
        ('energy.I', report.breakdown.I),
        ('seminorm', F.seminorm(u.values)),
        ('sup_norm', float(np.max(np.abs(u.values)))),
        ('weak_residual.max', float(np.max(residuals))),
    ]
    entries.extend(('stack.%s' % name, value)
                   for name, value in stack_versions())
    if report.geometry is not None:
        g = report.geometry
        entries.extend([('geometry.rho', g.rho), ('geometry.beta', g.beta),
                        ('geometry.sigma', g.sigma),
                        ('geometry.epsilon', g.epsilon),
                        ('geometry.C', g.C)])
    if diagnostic is not None:
        entries.extend([('ps.coefficient', diagnostic.coefficient),
                        ('ps.hypothesis_ok', diagnostic.hypothesis_ok),
                        ('ps.bounded', diagnostic.bounded),
                        ('ps.ratio', diagnostic.ratio),
                        ('ps.margin', diagnostic.ps_margin),
                        ('ps.messages', '; '.join(diagnostic.messages))])
    if report.mode == 'convex':
        entries.append(('multi_start.spread', report.multi_start_spread))
    if _classical(run):
        _, oracle = shooting_solution(nl, params.T, run.grid_N)
        if run.side.value == 'right':
            oracle = oracle.reversed()
        entries.append(('shooting.sup_error',
                        float(np.max(np.abs(u.values - oracle.values)))))
    write_solution(run.output_dir, u, F.derivative(u.values))
    if report.mode == 'mountain_pass':
        write_path_profile(run.output_dir, report.path_profile)
    write_report(run.output_dir, entries)
    LOGGER.info('%s: I=%.12g grad_norm=%.3e, outputs in %s', report.mode,
                report.energy_value, report.grad_norm, run.output_dir)
    if report.violations:
        raise SolverError('Critical point violates the mountain pass '
                          'geometry: %s' % '; '.join(report.violations))
    if not report.converged:
        raise MaxIterations('Solver did not converge after %d iterations, '
                            'outputs flagged converged = false' %
                            report.iterations)
    return 0


def _classical(run):
    params, nl = run.params, run.nl
    return (run.mode == Mode.MOUNTAIN_PASS and params.alpha == 1 and
            params.p == 2 and not nl.is_forcing and
            nl.a_min == nl.a_max)


@command()
def cmd_verify(run, stream=None):
    '''Run the property battery and print a pass/fail table; exit 0 iff
    every check passes.
    '''
    stream = stream or sys.stdout
    rows = run_battery(run)
    stream.write(format_table(
        ('suite', 'check', 'value', 'status', 'detail'),
        [(r.suite, r.result.name, '%.6g' % r.result.value,
          r.result.status, r.result.detail) for r in rows]))
    failed = [r for r in rows if not r.result.passed]
    stream.write('\n%d checks, %d failed\n' % (len(rows), len(failed)))
    for row in failed:
        LOGGER.warning('%s.%s failed: %s', row.suite, row.result.name,
                       row.result.detail)
    return FAILED_EXIT_CODE if failed else 0


@command()
def cmd_converge(run, stream=None):
    '''Run the convergence study and write ``convergence.csv``; exit 0
    iff the fitted slope meets its contract.
    '''
    stream = stream or sys.stdout
    study = run_study(run)
    write_convergence(run.output_dir, study.rows)
    stream.write(format_table(
        ('N', 'value', 'h'),
        [(str(n), '%.6g' % v, '%.6g' % h) for n, v, h in study.rows]))
    if study.contract is None:
        stream.write('\nslope %.4f (no rate contract)\n' % study.slope)
    else:
        stream.write('\nslope %.4f, required >= %.4f: %s\n' %
                     (study.slope, study.contract,
                      'PASS' if study.passed else 'FAIL'))
    return 0 if study.passed else FAILED_EXIT_CODE
