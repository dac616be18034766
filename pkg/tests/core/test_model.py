'''Nonlinearity and its structural hypotheses'''
import unittest

import numpy as np
from hypothesis import given, strategies as st

from fracmp.grid import Grid, GridFunction
from fracmp.model import (Nonlinearity, CheckResult, eval_f, eval_F,
                          check_f1, check_f2, check_f3, ar_constant,
                          ar_lower_bound, default_ar_exponent)
from fracmp.utils.exceptions import InvalidParameter


def samples(size=500, seed=0):
    rng = np.random.default_rng(seed)
    return rng.uniform(0, 1, size), 10 * rng.standard_normal(size)


class TestNonlinearity(unittest.TestCase):

    def test_defaults(self):
        nl = Nonlinearity()
        self.assertEqual(nl.q, 4)
        self.assertEqual(nl.mu, 4)
        self.assertEqual(nl.r, 1)
        self.assertEqual(nl.c_growth, 1)
        self.assertFalse(nl.is_forcing)
        self.assertIn('q=4.0', repr(nl))

    def testInvalid(self):
        self.assertRaises(InvalidParameter, Nonlinearity, q=1)
        self.assertRaises(InvalidParameter, Nonlinearity, q=3, mu=4)
        self.assertRaises(InvalidParameter, Nonlinearity, mu=0)
        self.assertRaises(InvalidParameter, Nonlinearity, r=0)
        self.assertRaises(InvalidParameter, Nonlinearity, a=0)
        self.assertRaises(InvalidParameter, Nonlinearity, a='one')
        self.assertRaises(InvalidParameter, Nonlinearity, c_growth=-1)
        self.assertRaises(InvalidParameter, Nonlinearity,
                          forcing=np.zeros(3))
        grid = Grid(1, 8)
        self.assertRaises(InvalidParameter, Nonlinearity, a=-1,
                          forcing=GridFunction.zeros(grid))

    def test_values(self):
        nl = Nonlinearity(q=4, a=2)
        self.assertEqual(eval_f(nl, 0.3, 2), 16)
        self.assertEqual(eval_f(nl, 0.3, -2), -16)
        self.assertEqual(eval_F(nl, 0.3, 2), 8)
        values = eval_f(nl, np.zeros(3), np.array([0, 1, -1]))
        self.assertTrue(np.array_equal(values, [0, 2, -2]))

    def test_weight_function(self):
        grid = Grid(1, 8)
        a = GridFunction(grid, 1 + grid.nodes)
        nl = Nonlinearity(q=3, a=a)
        self.assertEqual(nl.a_min, 1)
        self.assertEqual(nl.a_max, 2)
        self.assertEqual(nl.c_growth, 2)
        self.assertAlmostEqual(eval_f(nl, 0.5, 1), 1.5)
        self.assertTrue(np.array_equal(nl.sample_times(), grid.nodes))

    def test_forcing(self):
        grid = Grid(1, 8)
        g = GridFunction(grid, 3 * np.ones(9))
        nl = Nonlinearity.forcing_only(g)
        self.assertTrue(nl.is_forcing)
        self.assertTrue(nl.is_pure_forcing)
        self.assertEqual(nl.c_growth, 3)
        self.assertEqual(eval_f(nl, 0.2, 5), 3)
        self.assertEqual(eval_F(nl, 0.2, 5), 15)
        mixed = Nonlinearity(a=1, forcing=g)
        self.assertTrue(mixed.is_forcing)
        self.assertFalse(mixed.is_pure_forcing)


class TestHypotheses(unittest.TestCase):

    def test_f1(self):
        result = check_f1(Nonlinearity(q=3.5, a=2), samples())
        self.assertIsInstance(result, CheckResult)
        self.assertTrue(result.passed)
        self.assertEqual(result.status, 'PASS')
        self.assertLessEqual(result.value, 1)
        result = check_f1(Nonlinearity(q=3, a=2, c_growth=1), samples())
        self.assertFalse(result.passed)

    def test_f2(self):
        self.assertTrue(check_f2(Nonlinearity(q=4), samples()).passed)
        self.assertTrue(check_f2(Nonlinearity(q=4, mu=3), samples()).passed)
        empty = check_f2(Nonlinearity(r=100), samples())
        self.assertFalse(empty.passed)

    def test_f3(self):
        self.assertTrue(check_f3(Nonlinearity(q=4), 2).passed)
        self.assertTrue(check_f3(Nonlinearity(q=2.5), 2).passed)
        self.assertFalse(check_f3(Nonlinearity(q=3), 3).passed)
        grid = Grid(1, 8)
        forced = Nonlinearity(forcing=GridFunction(grid, np.ones(9)))
        result = check_f3(forced, 2)
        self.assertFalse(result.passed)
        self.assertEqual(result.status, 'FAIL')

    def test_ar_constant(self):
        nl = Nonlinearity(q=4, a=2, mu=3, r=2)
        self.assertEqual(ar_constant(nl), 2 * 2 / 4)

    @given(xi=st.floats(-1e3, 1e3), mu=st.floats(1.1, 4))
    def test_ar_lower_bound(self, xi, mu):
        nl = Nonlinearity(q=4, a=1.5, mu=mu, r=0.5)
        F = eval_F(nl, 0.5, xi)
        bound = float(ar_lower_bound(nl, 0.5, xi))
        self.assertLessEqual(bound, F * (1 + 1e-12))
        if abs(xi) < 0.5:
            self.assertEqual(bound, 0)

    @given(p=st.floats(1.1, 5), gap=st.floats(1e-3, 10))
    def test_default_ar_exponent(self, p, gap):
        mu = default_ar_exponent(p, p + gap)
        self.assertGreater(mu, p)
        self.assertLess(mu, p + gap)
        self.assertTrue(check_f2(Nonlinearity(q=p + gap, mu=mu),
                                 samples()).passed)
        self.assertEqual(default_ar_exponent(2, 4), 3.5)
        self.assertEqual(default_ar_exponent(3, 2), 2)
