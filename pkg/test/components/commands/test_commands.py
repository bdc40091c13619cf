"""
Run the sub commands through the application entry point.
"""
import io
import json
import os
import shutil
import tempfile
import unittest

import mock

from supertorsion import configuration
from supertorsion.application import Application
from supertorsion.components import register_core_commands
from test.components.helpers import data_path


class CommandTestCase(unittest.TestCase):

    def setUp(self):
        configuration.reset()
        register_core_commands()
        self.output = io.StringIO()
        self.application = Application(output=self.output)

    def run_command(self, *argv):
        status = self.application.run(list(argv))
        return status, json.loads(self.output.getvalue())


class ValidateCommandTestCase(CommandTestCase):

    def test_admissible(self):
        status, content = self.run_command('validate', data_path('circle_cone.json'))
        self.assertEqual(status, 0)
        self.assertEqual(content['status'], 'ok')
        self.assertEqual(content['passed'], ['complex', 'mc', 'dual', 'morphism:projection'])

    def test_not_orientable(self):
        status, content = self.run_command('validate', data_path('projective_plane.json'))
        self.assertEqual(status, 1)
        self.assertEqual(content['status'], 'error')
        self.assertEqual(content['diagnostics'][0]['code'], 'not_orientable')
        self.assertEqual(content['diagnostics'][0]['validator'], 'complex')

    def test_structure_relation(self):
        status, content = self.run_command('validate', data_path('sphere_broken.json'))
        self.assertEqual(status, 1)
        self.assertEqual([diagnostic['code'] for diagnostic in content['diagnostics']], ['mc_violation'])
        self.assertEqual(content['diagnostics'][0]['simplex'], [0, 1, 2])

    def test_corpus_name(self):
        status, content = self.run_command('validate', 'circle_twisted_2')
        self.assertEqual(status, 0)
        self.assertEqual(content['job'], 'circle_twisted_2')

    def test_missing_job(self):
        status, content = self.run_command('validate', 'no_such_job')
        self.assertEqual(status, 1)
        self.assertEqual(content['error']['code'], 'parse_error')

    def test_configuration_file_is_read_before_the_command(self):
        corpus = tempfile.mkdtemp()
        self.addCleanup(shutil.rmtree, corpus)
        shutil.copy(data_path('circle_twisted_2.json'), os.path.join(corpus, 'renamed.json'))
        filename = os.path.join(corpus, 'supertorsion.ini')
        with open(filename, 'w') as handle:
            handle.write('[corpus]\npath = %s\n' % corpus)

        with mock.patch.dict(os.environ):
            os.environ.pop(configuration.CORPUS_ENVIRONMENT_KEY, None)
            status, content = self.run_command('-c', filename, 'validate', 'renamed')
        self.assertEqual(status, 0)
        self.assertEqual(content['status'], 'ok')


class CohomologyCommandTestCase(CommandTestCase):

    def test_sphere(self):
        status, content = self.run_command('cohomology', data_path('sphere_trivial.json'))
        self.assertEqual(status, 0)
        self.assertEqual(content['h_dims'], [2, 0])
        self.assertEqual(content['pages'][0]['r'], 0)
        self.assertEqual(sum(content['pages'][-1]['entries'].values()), 2)


class TorsionCommandTestCase(CommandTestCase):

    def test_twisted_circle(self):
        status, content = self.run_command('torsion', data_path('circle_twisted_3.json'))
        self.assertEqual(status, 0)
        self.assertEqual(content['status'], 'ok')
        self.assertEqual(content['tau_squared'], '3/4')
        self.assertEqual([check['name'] for check in content['checks']],
                         ['subdivision', 'duality', 'mu', 'cohomology-bundle'])
        self.assertTrue(all(check['passed'] for check in content['checks']))

    def test_options(self):
        status, content = self.run_command('torsion', data_path('circle_twisted_7_2.json'), '--checks', 'duality',
                                           '--precision', '3', '--mu', '2')
        self.assertEqual(status, 0)
        self.assertEqual(content['tau_squared'], '14/25')
        self.assertEqual(content['tau'], '0.748')
        self.assertEqual([check['name'] for check in content['checks']], ['duality', 'cohomology-bundle'])

    def test_even_dimension(self):
        status, content = self.run_command('torsion', data_path('sphere_trivial.json'))
        self.assertEqual(status, 1)
        self.assertEqual(content['status'], 'error')
        self.assertEqual(content['error']['code'], 'odd_dimension_required')
        self.assertEqual(content['error']['dimension'], 2)

    def test_unknown_check(self):
        with self.assertRaises(SystemExit):
            self.application.run(['torsion', data_path('circle_twisted_3.json'), '--checks', 'bogus'])


class SelfTestCommandTestCase(CommandTestCase):

    def setUp(self):
        super(SelfTestCommandTestCase, self).setUp()
        self.corpus = tempfile.mkdtemp()
        for name in ('circle_twisted_2.json', 'circle_twisted_3.json'):
            shutil.copy(data_path(name), os.path.join(self.corpus, name))
        configuration.get_configuration().set(configuration.SELFTEST_SECTION_NAME,
                                              configuration.RANDOM_TRIALS_KEY, '3')

    def tearDown(self):
        shutil.rmtree(self.corpus)

    def test_passes(self):
        status, content = self.run_command('selftest', '--corpus', self.corpus)
        self.assertEqual(content['failures'], [])
        self.assertEqual(status, 0)
        self.assertIn('golden:circle_twisted_3', [result['name'] for result in content['results']])

    def test_sign_error_is_detected(self):
        status, content = self.run_command('selftest', '--corpus', self.corpus, '--inject-sign-error')
        self.assertEqual(status, 1)
        self.assertEqual(content['status'], 'failed')
        self.assertIn('skew-adjoint:circle_twisted_3:2', content['failures'])
