"""
Job corpus and the self test run over it.
"""
import os
import unittest

import mock

from supertorsion import configuration
from supertorsion.components import corpus
from supertorsion.components import selftest
from supertorsion.components import simplicial
from test.components.helpers import data_path


class CorpusTestCase(unittest.TestCase):

    def setUp(self):
        configuration.reset()

    def test_list_jobs(self):
        names = corpus.list_jobs(data_path())
        self.assertIn('circle_twisted_3', names)
        self.assertIn('projective_plane', names)
        self.assertNotIn('README', names)
        self.assertEqual(names, sorted(names))

    def test_missing_directory(self):
        self.assertEqual(corpus.list_jobs('/nonexistent/corpus'), [])

    def test_environment(self):
        with mock.patch.dict(os.environ, {configuration.CORPUS_ENVIRONMENT_KEY: data_path()}):
            self.assertEqual(corpus.get_corpus_path(), data_path())
            self.assertEqual(corpus.resolve('circle_trivial'), data_path('circle_trivial.json'))

    def test_load_job(self):
        job = corpus.load_job('circle_twisted_5', data_path())
        self.assertEqual(job.name, 'circle_twisted_5')
        self.assertEqual(job.expected['tau_squared'], '5/16')

        job = corpus.load_job(data_path('circle_rank2.json'))
        self.assertEqual(job.representation.fiber(0).dims, (2, 0))


class SelfTestTestCase(unittest.TestCase):

    def setUp(self):
        configuration.reset()
        self.jobs = [(name, corpus.load_job(name, data_path()))
                     for name in ('circle_twisted_2', 'circle_twisted_3', 'sphere_broken')]

    def test_passes(self):
        payload = selftest.run_self_test(self.jobs, trials=3)
        self.assertEqual(payload.failures, [])
        names = [result['name'] for result in payload.populate_payload()['results']]
        self.assertIn('linalg', names)
        self.assertIn('golden:circle_twisted_2', names)
        self.assertIn('expected-error:sphere_broken', names)
        self.assertIn('direct-sum-multiplicative:circle_twisted_2+circle_twisted_3', names)

    def test_injected_sign_error(self):
        payload = selftest.run_self_test(self.jobs, inject_sign_error=True, trials=3)
        self.assertFalse(payload.passed)
        self.assertIn('skew-adjoint:circle_twisted_2:2', payload.failures)
        self.assertNotIn('golden:circle_twisted_2', payload.failures)

    def test_corrupted_sign(self):
        self.assertEqual(selftest.corrupted_cup_sign(0, 0), -simplicial.cup_sign(0, 0))
        self.assertEqual(selftest.corrupted_cup_sign(1, 1), simplicial.cup_sign(1, 1))
