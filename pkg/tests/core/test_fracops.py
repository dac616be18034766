'''Fractional integrals and derivatives on grids'''
import unittest

import numpy as np
from hypothesis import given, settings, strategies as st

from fracmp.apps.study import fit_slope
from fracmp.fracops import (
    Side, Scheme, convolution_weights, integral_matrix, derivative_matrix,
    frac_integral_left, frac_integral_right, frac_deriv_left,
    frac_deriv_right, caputo_left, caputo_right, grunwald_letnikov_left,
    rl_from_caputo, check_left_inverse, check_semigroup,
    check_integration_by_parts, check_integration_by_parts_integrals
)
from fracmp.grid import Grid, GridFunction, DirichletGridFunction
from fracmp.utils.exceptions import InvalidParameter, BoundaryConditionError
from fracmp.utils.populate import populate
from fracmp.utils.special import gamma


def sine(grid):
    return DirichletGridFunction.clamp(grid, np.sin(np.pi * grid.nodes /
                                                    grid.T))


class TestWeights(unittest.TestCase):

    def test_product_trapezoid(self):
        w = convolution_weights('ProductTrapezoid', 0.5, 10).w
        self.assertEqual(w[0], 1)
        self.assertAlmostEqual(w[1], 2 ** 1.5 - 2)
        self.assertTrue(np.all(w > 0))

    def test_l1(self):
        weights = convolution_weights(Scheme.L1, 0.3, 50)
        self.assertEqual(weights.w[0], 1)
        self.assertTrue(np.all(weights.w[1:] < 0))
        # partial sums telescope to b_k
        k = np.arange(51)
        b = (k + 1) ** 0.7 - k ** 0.7
        self.assertTrue(np.allclose(weights.partial_sums(), b))

    def test_grunwald_letnikov(self):
        w = convolution_weights('GrunwaldLetnikov', 0.4, 2000).w
        self.assertEqual(w[0], 1)
        self.assertAlmostEqual(w[1], -0.4)
        self.assertAlmostEqual(w[2], -0.4 * 0.6 / 2)
        self.assertLess(abs(np.sum(w)), 0.05)

    def testInvalid(self):
        self.assertRaises(ValueError, convolution_weights, 'foo', 0.5, 4)
        self.assertRaises(InvalidParameter, convolution_weights, 'L1', 0, 4)
        self.assertRaises(InvalidParameter, convolution_weights, 'L1',
                          0.5, 0)


class TestMatrices(unittest.TestCase):

    def test_cached_and_read_only(self):
        grid = Grid(1, 32)
        A = integral_matrix(grid, 0.7)
        self.assertIs(A, integral_matrix(Grid(1.0, 32), 0.7))
        self.assertFalse(A.flags.writeable)
        self.assertFalse(derivative_matrix(grid, 0.7).flags.writeable)

    def test_classical_right_is_minus_left(self):
        grid = Grid(1, 16)
        left = derivative_matrix(grid, 1)
        right = derivative_matrix(grid, 1, Side.RIGHT)
        self.assertTrue(np.allclose(right, -left))

    def test_summation_by_parts(self):
        grid = Grid(2, 16)
        D = derivative_matrix(grid, 1)
        WD = grid.weights[:, None] * D
        B = np.zeros((17, 17))
        B[0, 0], B[-1, -1] = -1, 1
        self.assertTrue(np.allclose(WD + WD.T, B))


class TestPowerRules(unittest.TestCase):

    def test_integral_of_linear(self):
        grid = Grid(1, 64)
        t = grid.nodes
        for alpha in (0.3, 0.5, 0.8, 1):
            result = frac_integral_left(GridFunction(grid, t), alpha)
            exact = t ** (1 + alpha) / gamma(2 + alpha)
            self.assertLess(np.max(np.abs(result.values - exact)), 1e-13)

    def test_derivative_of_linear(self):
        grid = Grid(2, 64)
        t = grid.nodes
        for alpha in (0.3, 0.5, 0.8, 1):
            result = frac_deriv_left(GridFunction(grid, t), alpha)
            exact = t ** (1 - alpha) / gamma(2 - alpha)
            self.assertLess(np.max(np.abs(result.values - exact)[1:]),
                            1e-12)

    def test_caputo_of_constant(self):
        grid = Grid(1, 32)
        result = caputo_left(GridFunction(grid, np.ones(33)), 0.6)
        self.assertLess(np.max(np.abs(result.values)), 1e-13)

    def test_first_order_grunwald_letnikov(self):
        errors = []
        for N in (64, 128, 256):
            grid = Grid(1, N)
            t = grid.nodes
            u = GridFunction(grid, t * t)
            exact = 2 * t ** 1.5 / gamma(2.5)
            gl = grunwald_letnikov_left(u, 0.5).values
            errors.append(grid.integrate(np.abs(gl - exact)))
        self.assertLess(errors[1], errors[0])
        self.assertLess(errors[2], errors[1])


class TestTraces(unittest.TestCase):

    def test_zero_trace_required(self):
        grid = Grid(1, 16)
        u = GridFunction(grid, np.ones(17))
        self.assertRaises(BoundaryConditionError, frac_deriv_left, u, 0.5)
        self.assertRaises(BoundaryConditionError, frac_deriv_right, u, 0.5)
        self.assertRaises(InvalidParameter, frac_integral_left, 'u', 0.5)

    def test_rl_from_caputo(self):
        grid = Grid(1, 16)
        alpha = 0.4
        u = GridFunction(grid, np.ones(17))
        rl = rl_from_caputo(u, alpha)
        self.assertEqual(rl.singular, frozenset((0,)))
        t = grid.nodes[1:]
        exact = t ** -alpha / gamma(1 - alpha)
        self.assertTrue(np.allclose(rl.values[1:], exact))
        right = rl_from_caputo(u, alpha, Side.RIGHT)
        self.assertEqual(right.singular, frozenset((16,)))
        self.assertTrue(np.allclose(right.values[:-1], exact[::-1]))
        self.assertRaises(InvalidParameter, rl_from_caputo, u, 1)

    def test_rl_from_caputo_zero_trace(self):
        grid = Grid(1, 16)
        u = sine(grid)
        rl = rl_from_caputo(u, 0.5)
        self.assertTrue(rl.is_regular)
        self.assertTrue(np.allclose(rl.values, caputo_left(u, 0.5).values))


class TestReflection(unittest.TestCase):

    def test_right_operators_reflect_left(self):
        grid = Grid(1, 32)
        t = grid.nodes
        v = GridFunction(grid, np.exp(t))
        for alpha in (0.5, 0.9, 1):
            right = frac_integral_right(v, alpha).values
            left = frac_integral_left(v.reversed(), alpha).values[::-1]
            self.assertTrue(np.allclose(right, left, atol=1e-15))
            right = caputo_right(v, alpha).values
            left = caputo_left(v.reversed(), alpha).values[::-1]
            self.assertTrue(np.allclose(right, left))


class TestIdentities(unittest.TestCase):

    def test_left_inverse_first_order(self):
        for N in (64, 256):
            grid = Grid(1, N)
            residual = check_left_inverse(sine(grid), 0.7)
            self.assertLess(residual, 2 * np.pi * grid.h)

    def test_left_inverse_of_constant(self):
        for alpha in (0.3, 0.6, 0.9):
            for N in (64, 256):
                grid = Grid(1, N)
                one = GridFunction(grid, np.ones(grid.size))
                self.assertLess(check_left_inverse(one, alpha), 1e-9)

    def test_left_inverse_nonzero_trace(self):
        residuals = []
        for N in (64, 128, 256, 512):
            grid = Grid(1, N)
            u = GridFunction(grid, np.cos(np.pi * grid.nodes))
            residuals.append(check_left_inverse(u, 0.6))
        self.assertTrue(np.all(np.diff(residuals) < 0))
        self.assertLess(residuals[-1], 1e-2)

    @settings(max_examples=20, deadline=None)
    @given(alpha=st.floats(0.3, 0.95), shift=st.floats(-10, 10))
    def test_left_inverse_trace_shift(self, alpha, shift):
        grid = Grid(1, 64)
        u = sine(grid)
        shifted = GridFunction(grid, u.values + shift)
        self.assertAlmostEqual(check_left_inverse(shifted, alpha),
                               check_left_inverse(u, alpha),
                               delta=1e-8 * (1 + abs(shift)))

    def test_identity_rates_on_corpus(self):
        sizes = (128, 256, 512, 1024)
        h = [1 / N for N in sizes]
        for alpha in (0.6, 0.8):
            left, semi = [], []
            for N in sizes:
                corpus = populate('corpus', grid=Grid(1, N))
                left.append([check_left_inverse(u, alpha) for u in corpus])
                semi.append([check_semigroup(u, alpha / 2, alpha / 2)
                             for u in corpus])
            for residuals in (np.array(left).T, np.array(semi).T):
                for values in residuals:
                    self.assertTrue(np.all(np.diff(values) < 0))
                    self.assertGreaterEqual(fit_slope(h, values), 0.8)

    def test_semigroup(self):
        grid = Grid(1, 128)
        self.assertLess(check_semigroup(sine(grid), 0.3, 0.4), 0.05)
        self.assertRaises(InvalidParameter, check_semigroup, sine(grid),
                          0.6, 0.6)

    @settings(max_examples=20, deadline=None)
    @given(alpha=st.floats(0.3, 1.0), seed=st.integers(0, 2 ** 16))
    def test_integration_by_parts_dirichlet(self, alpha, seed):
        grid = Grid(1, 48)
        u, v = populate('dirichlet', 2, grid=grid, seed=seed)
        scale = max(1.0, np.max(np.abs(u.values)) * np.max(np.abs(v.values)))
        self.assertLess(check_integration_by_parts(u, v, alpha) / scale,
                        1e-11)

    def test_integration_by_parts_classical_any_v(self):
        grid = Grid(1, 64)
        v = GridFunction(grid, np.exp(grid.nodes))
        self.assertLess(check_integration_by_parts(sine(grid), v, 1), 1e-12)

    def test_integration_by_parts_boundary_term(self):
        residuals = []
        for N in (64, 128, 256):
            grid = Grid(1, N)
            v = GridFunction(grid, np.exp(grid.nodes))
            residuals.append(check_integration_by_parts(sine(grid), v, 0.6))
        self.assertLess(residuals[1], residuals[0])
        self.assertLess(residuals[2], residuals[1])
        self.assertLess(residuals[2], 1e-2)

    def test_integration_by_parts_integrals(self):
        grid = Grid(1, 128)
        u = sine(grid)
        v = GridFunction(grid, np.cos(grid.nodes))
        self.assertLess(check_integration_by_parts_integrals(u, v, 0.5),
                        1e-3)
