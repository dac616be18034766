'''Mountain pass and convex solvers'''
import unittest

import numpy as np

from fracmp.energy import Functional, energy, weak_residual
from fracmp.fracops import Side
from fracmp.grid import Grid, GridFunction, DirichletGridFunction
from fracmp.model import Nonlinearity
from fracmp.oracles import (shooting_solution, sine_forcing,
                            manufactured_forcing)
from fracmp.solver import (SolverOptions, SolveReport, Metric, armijo,
                           ray_peak, estimate_geometry, mountain_pass_solve,
                           convex_solve, ps_diagnostic, _line_step,
                           _initial_path, _respline)
from fracmp.space import FracParams
from fracmp.utils.exceptions import InvalidParameter, PathCollapse


def sine(grid):
    return DirichletGridFunction.clamp(grid, np.sin(np.pi * grid.nodes /
                                                    grid.T))


class Landscape:
    '''Energy ``sign |x|²`` with a gradient shrinking away from the origin,
    independent of the energy.
    '''
    def __init__(self, sign):
        self.sign = sign

    def value(self, x):
        return self.sign * float(x @ x)

    def gradient(self, x):
        return np.exp(-float(x @ x)) * np.array([1.0, 0.0])

    def dual_norm(self, g):
        return float(np.sqrt(g @ g))


class TestOptions(unittest.TestCase):

    def test_defaults(self):
        opts = SolverOptions()
        self.assertEqual(opts.tol_grad, 1e-6)
        self.assertEqual(opts.path_points, 16)
        self.assertEqual(opts.multi_start, 3)
        self.assertEqual(opts._replace(seed=4).seed, 4)

    def testInvalid(self):
        self.assertRaises(InvalidParameter, SolverOptions, tol_grad=0)
        self.assertRaises(InvalidParameter, SolverOptions, max_iters=0)
        self.assertRaises(InvalidParameter, SolverOptions, path_points=4)
        self.assertRaises(InvalidParameter, SolverOptions, armijo_c=1)
        self.assertRaises(InvalidParameter, SolverOptions,
                          backtrack_factor=1.5)
        self.assertRaises(InvalidParameter, SolverOptions, eps_reg=0)
        self.assertRaises(InvalidParameter, SolverOptions, multi_start=0)
        self.assertRaises(InvalidParameter, SolverOptions, norm_cap=1)


class TestLineSearch(unittest.TestCase):

    def test_armijo(self):
        x = np.array([1.0, 2.0])

        def fun(y):
            return float(y @ y)

        g = 2 * x
        step, x_new, f_new = armijo(fun, x, fun(x), g, -g, 1.0, 1e-4, 0.5,
                                    40)
        self.assertEqual(step, 0.5)
        self.assertEqual(f_new, 0)
        self.assertIsNone(armijo(fun, x, fun(x), g, g, 1.0, 1e-4, 0.5, 40))

    def test_line_step(self):
        opts = SolverOptions()
        x = np.zeros(2)
        F = Landscape(-1)
        g = F.gradient(x)
        x_new, noisy = _line_step(F, x, 0.0, g, 1.0, -g, opts)
        self.assertFalse(noisy)
        self.assertEqual(F.value(x_new), -1)
        # no slope along s: only the fallback can move
        s = np.array([0.0, 1.0])
        x_new, noisy = _line_step(F, x, 0.0, g, 1.0, s, opts)
        self.assertTrue(noisy)
        self.assertTrue(np.array_equal(x_new, s))
        self.assertIsNone(_line_step(Landscape(1), x, 0.0, g, 1.0, s, opts))

    def test_noise_steps_counted(self):
        params = FracParams(1, 2)
        grid = Grid(1, 64)
        nl = Nonlinearity.forcing_only(sine_forcing(grid))
        # a full Newton step on a quadratic decreases by half the slope
        opts = SolverOptions(armijo_c=0.6, max_backtracks=1, multi_start=1)
        with self.assertLogs('fracmp.solver', 'WARNING') as logs:
            report = convex_solve(params, nl, opts, N=64)
        self.assertTrue(report.converged)
        self.assertEqual(report.noise_steps, 1)
        self.assertIn('without sufficient decrease', logs.output[0])
        self.assertEqual(convex_solve(params, nl, N=64).noise_steps, 0)

    def test_metric_projection(self):
        grid = Grid(1, 32)
        F = Functional(grid, FracParams(0.8, 2), Nonlinearity())
        metric = Metric(F)
        x = 2 * sine(grid).values
        g = F.gradient(x)
        tangent = np.zeros_like(x)
        tangent[1:-1] = np.sin(2 * np.pi * grid.nodes[1:-1])
        s = metric.direction(x, g, tangent)
        M, _ = metric.at(x)
        self.assertEqual(s[0], 0)
        self.assertEqual(s[-1], 0)
        self.assertLess(np.dot(g, s), 0)
        self.assertLess(abs(tangent[1:-1] @ M @ s[1:-1]), 1e-10)

    def test_metric_p3(self):
        grid = Grid(1, 32)
        F = Functional(grid, FracParams(0.8, 3), Nonlinearity())
        metric = Metric(F)
        x = sine(grid).values
        g = F.gradient(x)
        self.assertLess(np.dot(g, metric.direction(x, g)), 0)
        metric.at(np.zeros_like(x))


class TestGeometry(unittest.TestCase):

    def test_classical(self):
        params = FracParams(1, 2)
        nl = Nonlinearity(q=4)
        geometry = estimate_geometry(params, nl, N=128)
        self.assertAlmostEqual(geometry.C, 0.25)
        self.assertAlmostEqual(geometry.rho, np.sqrt(0.5))
        self.assertAlmostEqual(geometry.beta, 0.0625)
        self.assertAlmostEqual(geometry.epsilon, 0.25)
        self.assertGreaterEqual(geometry.sigma, geometry.rho)
        self.assertLess(energy(geometry.e, params, nl).I, 0)
        F = Functional(Grid(1, 128), params, nl)
        self.assertAlmostEqual(F.seminorm(geometry.u0.values), 1)

    def test_guards(self):
        grid = Grid(1, 16)
        forced = Nonlinearity(forcing=GridFunction(grid, np.ones(17)))
        self.assertRaises(InvalidParameter, estimate_geometry,
                          FracParams(0.8, 2), forced, N=16)
        self.assertRaises(InvalidParameter, estimate_geometry,
                          FracParams(0.8, 2), Nonlinearity(q=2.0005), N=16)
        self.assertRaises(InvalidParameter, estimate_geometry,
                          FracParams(0.5 + 1e-7, 2), Nonlinearity(), N=16)

    def test_ray_peak(self):
        grid = Grid(1, 64)
        F = Functional(grid, FracParams(1, 2), Nonlinearity(q=4))
        x = sine(grid).values
        A = np.dot(F.w, F.derivative(x) ** 2)
        B = np.dot(F.w, x ** 4)
        self.assertAlmostEqual(ray_peak(F, x), np.sqrt(A / B), places=10)


class TestMountainPass(unittest.TestCase):

    def test_classical_against_shooting(self):
        params = FracParams(1, 2)
        nl = Nonlinearity(q=4)
        report = mountain_pass_solve(params, nl, N=512)
        self.assertTrue(report.converged)
        self.assertLessEqual(report.grad_norm, 1e-6)
        _, oracle = shooting_solution(nl, N=512)
        u = report.u_star.values
        if u[256] < 0:
            u = -u
        self.assertLess(np.max(np.abs(u - oracle.values)), 1e-3)
        self.assertGreater(report.energy_value, report.geometry.beta)
        self.assertIn('mountain_pass', repr(report))

    def test_fractional(self):
        params = FracParams(0.8, 2)
        nl = Nonlinearity(q=4)
        report = mountain_pass_solve(params, nl, N=128)
        self.assertTrue(report.converged)
        self.assertGreaterEqual(report.energy_value,
                                report.geometry.beta - 1e-6)
        profile = report.path_profile
        self.assertEqual(profile.size, 17)
        self.assertEqual(profile[0], 0)
        self.assertLess(profile[-1], 0)
        self.assertAlmostEqual(np.max(profile), report.energy_value,
                               places=8)
        self.assertEqual(report.grad_norm_history[-1], report.grad_norm)
        self.assertEqual(report.grid, Grid(1, 128))

    def test_nontrivial_weak_solutions(self):
        for params, nl in ((FracParams(0.8, 2), Nonlinearity(q=4)),
                           (FracParams(0.75, 3), Nonlinearity(q=5))):
            geometry = estimate_geometry(params, nl, N=256)
            report = mountain_pass_solve(params, nl,
                                         SolverOptions(tol_grad=1e-6), N=256,
                                         geometry=geometry)
            self.assertTrue(report.converged)
            self.assertEqual(report.violations, [])
            self.assertLessEqual(report.grad_norm, 1e-6)
            u = report.u_star
            F = Functional(u.grid, params, nl)
            self.assertGreaterEqual(F.seminorm(u.values), 0.5 * geometry.rho)
            self.assertGreaterEqual(report.energy_value, geometry.beta)
            grid = u.grid
            residuals = [weak_residual(u, DirichletGridFunction.clamp(
                grid, np.sin(k * np.pi * grid.nodes)), params, nl)
                for k in range(1, 17)]
            self.assertLessEqual(np.max(np.abs(residuals)), 1e-5)

    def test_path_collapse(self):
        params = FracParams(1, 2)
        nl = Nonlinearity(q=4)
        geometry = estimate_geometry(params, nl, N=64)
        # far point before the peak of its ray
        near = DirichletGridFunction(geometry.u0.grid,
                                     0.1 * geometry.u0.values)
        self.assertGreater(energy(near, params, nl).I, 0)
        self.assertRaises(PathCollapse, mountain_pass_solve, params, nl,
                          N=64, geometry=geometry._replace(e=near))

    def test_geometry_violations(self):
        params = FracParams(1, 2)
        nl = Nonlinearity(q=4)
        geometry = estimate_geometry(params, nl, N=64)
        report = mountain_pass_solve(params, nl, N=64, geometry=geometry)
        self.assertTrue(report.converged)
        self.assertEqual(report.violations, [])
        inflated = geometry._replace(beta=1e6, rho=1e6)
        with self.assertLogs('fracmp.solver', 'WARNING'):
            report = mountain_pass_solve(params, nl, N=64,
                                         geometry=inflated)
        self.assertFalse(report.converged)
        self.assertLessEqual(report.grad_norm, 1e-6)
        self.assertEqual(len(report.violations), 2)
        self.assertIn('geometry floor', report.violations[0])
        self.assertIn('sphere', report.violations[1])

    def test_path_states(self):
        params = FracParams(0.8, 2)
        nl = Nonlinearity(q=4)
        geometry = estimate_geometry(params, nl, N=64)
        F = Functional(geometry.e.grid, params, nl)
        path = _initial_path(F, geometry.e.values, 16)
        self.assertEqual(path.shape, (17, 65))
        self.assertEqual(np.max(np.abs(path[0])), 0)
        self.assertTrue(np.array_equal(path[-1], geometry.e.values))
        energies = [F.value(z) for z in path]
        j = int(np.argmax(energies))
        # the maximizer sits on the peak of the ray through e
        peak = ray_peak(F, geometry.e.values)
        self.assertTrue(np.allclose(path[j], peak * geometry.e.values))
        bent = path.copy()
        bent[j] = geometry.u0.values * ray_peak(F, geometry.u0.values)
        bent[j, 10:20] *= 1.5
        resplined = _respline(F, bent, j)
        self.assertEqual(resplined.shape, bent.shape)
        self.assertTrue(np.array_equal(resplined[0], bent[0]))
        self.assertTrue(np.array_equal(resplined[-1], bent[-1]))
        steps = [F.seminorm(b - a)
                 for a, b in zip(resplined[:-1], resplined[1:])]
        self.assertTrue(any(np.array_equal(z, bent[j]) for z in resplined))
        self.assertLess(max(steps), 2 * sum(steps) / len(steps))

    def test_p_greater_than_two(self):
        params = FracParams(0.9, 3)
        nl = Nonlinearity(q=5)
        report = mountain_pass_solve(params, nl,
                                     SolverOptions(tol_grad=1e-4), N=64)
        self.assertTrue(report.converged)
        self.assertGreater(report.energy_value, 0)

    def test_mirror(self):
        params = FracParams(0.8, 2)
        nl = Nonlinearity(q=4)
        left = mountain_pass_solve(params, nl, N=64)
        right = mountain_pass_solve(params, nl, N=64, side=Side.RIGHT)
        self.assertEqual(right.side, Side.RIGHT)
        self.assertAlmostEqual(left.energy_value, right.energy_value,
                               delta=1e-6 * abs(left.energy_value))
        mirrored = right.u_star.reversed().values
        self.assertLess(np.max(np.abs(mirrored - left.u_star.values)), 1e-3)

    def test_budget(self):
        params = FracParams(0.8, 2)
        report = mountain_pass_solve(params, Nonlinearity(q=4),
                                     SolverOptions(max_iters=1,
                                                   tol_grad=1e-14), N=32)
        self.assertFalse(report.converged)
        self.assertEqual(report.grad_norm,
                         float(np.min(report.grad_norm_history)))


class TestConvex(unittest.TestCase):

    def test_sine_single_newton_step(self):
        params = FracParams(1, 2)
        grid = Grid(1, 128)
        nl = Nonlinearity.forcing_only(sine_forcing(grid))
        report = convex_solve(params, nl, N=128)
        self.assertTrue(report.converged)
        self.assertEqual(report.iterations, 1)
        self.assertEqual(len(report.minimizers), 3)
        self.assertLess(report.multi_start_spread, 1e-10)
        error = np.max(np.abs(report.u_star.values - sine(grid).values))
        self.assertLess(error, 1e-3)

    def test_zero_forcing(self):
        grid = Grid(1, 32)
        nl = Nonlinearity.forcing_only(GridFunction.zeros(grid))
        for p in (2, 3):
            report = convex_solve(FracParams(0.8, p), nl,
                                  SolverOptions(multi_start=1), N=32)
            self.assertTrue(report.converged)
            self.assertEqual(report.iterations, 0)
            self.assertEqual(np.max(np.abs(report.u_star.values)), 0)
            self.assertEqual(report.multi_start_spread, 0)

    def test_manufactured(self):
        grid = Grid(1, 64)
        t = grid.nodes
        ubar = DirichletGridFunction.clamp(grid, t * (1 - t))
        for p, tol in ((2, 1e-6), (3, 1e-9)):
            params = FracParams(0.8, p)
            g = manufactured_forcing(grid, params, ubar)
            report = convex_solve(params, Nonlinearity.forcing_only(g),
                                  SolverOptions(tol_grad=tol, multi_start=1),
                                  N=64)
            self.assertTrue(report.converged)
            error = np.max(np.abs(report.u_star.values - ubar.values))
            self.assertLess(error, 1e-5)

    def test_requires_pure_forcing(self):
        self.assertRaises(InvalidParameter, convex_solve, FracParams(0.8, 2),
                          Nonlinearity(), N=16)


class TestPSDiagnostic(unittest.TestCase):

    def report(self, nl, history=(1, 1, 1)):
        params = FracParams(0.8, 2)
        grid = Grid(1, 64)
        u = sine(grid)
        return SolveReport('mountain_pass', params, nl, SolverOptions(), u,
                           energy(u, params, nl), 1.0, 3, True,
                           iterate_norm_history=history)

    def test_ar_exponent_equal_q(self):
        nl = Nonlinearity(q=4)
        diag = ps_diagnostic(self.report(nl), FracParams(0.8, 2))
        self.assertEqual(diag.coefficient, 0.25)
        self.assertTrue(diag.hypothesis_ok)
        self.assertTrue(diag.bounded)
        self.assertEqual(diag.ratio, 1)
        self.assertAlmostEqual(diag.ps_margin, 0, places=10)
        self.assertEqual(diag.messages, ())

    def test_ar_exponent_below_q(self):
        nl = Nonlinearity(q=4, mu=3)
        diag = ps_diagnostic(self.report(nl), FracParams(0.8, 2))
        self.assertGreater(diag.ps_margin, 0)

    def test_flags(self):
        nl = Nonlinearity(q=4, mu=2)
        diag = ps_diagnostic(self.report(nl, (1, 1, 1000)),
                             FracParams(0.8, 2))
        self.assertEqual(diag.coefficient, 0)
        self.assertFalse(diag.hypothesis_ok)
        self.assertFalse(diag.bounded)
        self.assertEqual(diag.ratio, 1000)
        self.assertEqual(len(diag.messages), 2)
