'''Config and Setting classes'''
import copy
import os
import tempfile
import unittest

from fracmp.utils.config import (
    Config, Setting, KNOWN_SETTINGS, KNOWN_SETTINGS_ORDER, read_config_file,
    parse_lines, validate_bool, validate_pos_int, validate_pos_float,
    validate_float, validate_string, validate_list, validate_int_list
)
from fracmp.utils.exceptions import ImproperlyConfigured

from tests.utils import config


class TestConfig(unittest.TestCase):

    def testDefaults(self):
        cfg = config()
        self.assertEqual(list(sorted(cfg)), list(sorted(cfg.settings)))
        self.assertEqual(cfg['params.alpha'], 0.8)
        self.assertEqual(cfg['params.p'], 2.0)
        self.assertEqual(cfg['grid.N'], 256)
        self.assertEqual(cfg['model.q'], 4.0)
        self.assertEqual(cfg['solver.tol_grad'], 1e-6)
        self.assertEqual(cfg['study.sizes'], [64, 128, 256, 512, 1024])
        self.assertEqual(cfg['run.log_level'], 'none')
        self.assertEqual(cfg.get('model.mu'), None)
        self.assertEqual(cfg.get('model.mu', 3), 3)
        self.assertEqual(cfg.get('foo', 5), 5)
        self.assertRaises(KeyError, lambda: cfg['foo'])

    def testSet(self):
        cfg = config()
        cfg.set('params.alpha', '0.9')
        self.assertEqual(cfg['params.alpha'], 0.9)
        self.assertRaises(ImproperlyConfigured, cfg.set, 'foo', 3)
        self.assertRaises(ImproperlyConfigured, cfg.set, 'grid.N', 'bla')
        self.assertRaises(ImproperlyConfigured, cfg.set, 'run.mode', 'bla')
        self.assertRaises(ImproperlyConfigured, cfg.set, 'solver.tol_grad',
                          -1)
        cfg.update({'model.q': 5, 'model.mu': None})
        self.assertEqual(cfg['model.q'], 5.0)
        cfg.update([('grid.N', '64')])
        self.assertEqual(cfg['grid.N'], 64)

    def testDefaultOverride(self):
        cfg = config()
        cfg.set('grid.N', 32, default=True)
        self.assertEqual(cfg.settings['grid.N'].default, 32)

    def test_serialize_parse(self):
        cfg = config(**{'params.alpha': 0.75, 'model.mu': 3.5,
                        'run.mirror': True, 'study.sizes': [16, 32]})
        text = cfg.serialize()
        self.assertIn('params.alpha = 0.75\n', text)
        self.assertIn('model.c_growth = \n', text)
        self.assertNotIn('config =', text)
        cfg2 = Config.parse(text)
        self.assertEqual(cfg, cfg2)
        self.assertEqual(cfg2['study.sizes'], [16, 32])
        self.assertEqual(cfg2['run.mirror'], True)
        self.assertEqual(cfg2.serialize(), text)

    def test_parse_errors(self):
        self.assertRaises(ImproperlyConfigured, Config.parse, 'bla\n')
        self.assertRaises(ImproperlyConfigured, Config.parse, 'foo = 3\n')
        self.assertRaises(ImproperlyConfigured, parse_lines, [' = 3'])
        pairs = parse_lines(['# comment', '', 'grid.N = 16'])
        self.assertEqual(pairs, [('grid.N', '16')])

    def test_config_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'run.cfg')
            with open(path, 'w') as fp:
                fp.write('# test\nparams.alpha = 0.9\ngrid.N = 64\n')
            self.assertEqual(read_config_file(path),
                             [('params.alpha', '0.9'), ('grid.N', '64')])
            cfg = config()
            cfg.parse_command_line(['solve', '--config', path, '--N', '32'])
            self.assertEqual(cfg['params.alpha'], 0.9)
            self.assertEqual(cfg['grid.N'], 32)
            self.assertEqual(cfg['run.command'], 'solve')
            self.assertRaises(ImproperlyConfigured, read_config_file,
                              os.path.join(tmp, 'missing.cfg'))

    def test_command_line(self):
        cfg = config()
        cfg.parse_command_line(['verify', '--alpha', '0.7', '--mirror',
                                '--samples', '20', '--kind', 'identities'])
        self.assertEqual(cfg['run.command'], 'verify')
        self.assertEqual(cfg['params.alpha'], 0.7)
        self.assertEqual(cfg['run.mirror'], True)
        self.assertEqual(cfg['verify.samples'], 20)
        self.assertEqual(cfg['study.kind'], 'identities')
        cfg = config()
        cfg.parse_command_line([])
        self.assertEqual(cfg.get('run.command'), None)
        self.assertEqual(cfg['run.mirror'], False)

    def test_bad_command_line(self):
        cfg = config()
        self.assertRaises(ImproperlyConfigured, cfg.parse_command_line,
                          ['foo'])
        self.assertRaises(ImproperlyConfigured, cfg.parse_command_line,
                          ['--mode', 'bla'])

    def test_parser_groups(self):
        parser = config().parser()
        titles = [g.title for g in parser._action_groups]
        for section in ('run', 'params', 'model', 'solver'):
            self.assertIn(section, titles)
        self.assertIn('2 not converged', parser.epilog)
        opts = parser.parse_args(['solve', '--alpha', '0.7'])
        self.assertEqual(getattr(opts, 'run.command'), 'solve')
        self.assertEqual(getattr(opts, 'params.alpha'), 0.7)

    def test_copy(self):
        cfg = config()
        cfg2 = copy.copy(cfg)
        self.assertEqual(cfg, cfg2)
        cfg2.set('grid.N', 12)
        self.assertNotEqual(cfg, cfg2)
        self.assertEqual(cfg['grid.N'], 256)
        cfg3 = copy.deepcopy(cfg)
        self.assertEqual(cfg, cfg3)

    def test_registry(self):
        self.assertIn('params.alpha', KNOWN_SETTINGS)
        setting = config().settings['solver.max_iters']
        self.assertEqual(setting.section, 'solver')
        self.assertEqual(str(setting), 'solver.max_iters (2000)')

        class Extra(Setting):
            name = 'test.extra'
            validator = validate_pos_int
            default = 3
        try:
            cfg = config()
            self.assertEqual(cfg['test.extra'], 3)
        finally:
            KNOWN_SETTINGS.pop('test.extra')
            KNOWN_SETTINGS_ORDER.remove('test.extra')


class TestValidators(unittest.TestCase):

    def test_validate_bool(self):
        self.assertEqual(validate_bool(True), True)
        self.assertEqual(validate_bool(0), False)
        self.assertEqual(validate_bool('true'), True)
        self.assertEqual(validate_bool(' False '), False)
        self.assertRaises(ValueError, validate_bool, 'yes')
        self.assertRaises(TypeError, validate_bool, [])

    def test_validate_pos_int(self):
        self.assertEqual(validate_pos_int('12'), 12)
        self.assertEqual(validate_pos_int(3), 3)
        self.assertRaises(ValueError, validate_pos_int, -1)
        self.assertRaises(TypeError, validate_pos_int, 1.5)

    def test_validate_floats(self):
        self.assertEqual(validate_pos_float('1e-6'), 1e-6)
        self.assertRaises(ValueError, validate_pos_float, -2)
        self.assertEqual(validate_float(''), None)
        self.assertEqual(validate_float(None), None)
        self.assertEqual(validate_float('-0.5'), -0.5)

    def test_validate_string(self):
        self.assertEqual(validate_string(None), None)
        self.assertEqual(validate_string(' a '), 'a')
        self.assertEqual(validate_string('  '), None)
        self.assertRaises(TypeError, validate_string, 3)

    def test_validate_lists(self):
        self.assertEqual(validate_list('a, b,'), ['a', 'b'])
        self.assertEqual(validate_list(None), [])
        self.assertEqual(validate_list(('a',)), ['a'])
        self.assertRaises(TypeError, validate_list, 3)
        self.assertEqual(validate_int_list('64, 128'), [64, 128])
        self.assertEqual(validate_int_list([1, '2']), [1, 2])
