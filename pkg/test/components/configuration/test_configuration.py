"""
Unit tests for the configuration module.
"""
import os
import tempfile
import unittest

import mock

from supertorsion import configuration

CONFIGURATION = """
[display]
precision = 6

[checks]
default = duality, mu
"""


class ConfigurationTestCase(unittest.TestCase):

    def setUp(self):
        configuration.reset()

    def tearDown(self):
        configuration.reset()

    def test_defaults(self):
        self.assertEqual(configuration.get_precision(), 12)
        self.assertEqual(configuration.get_default_checks(), ['subdivision', 'duality', 'mu', 'quasi-iso'])
        self.assertEqual(configuration.get_mu_scale(), '7')
        self.assertEqual(configuration.get_random_trials(), 20)

    def test_load_file(self):
        handle, filename = tempfile.mkstemp(suffix='.ini')
        with os.fdopen(handle, 'w') as stream:
            stream.write(CONFIGURATION)
        try:
            self.assertEqual(configuration.load_file(filename), [filename])
        finally:
            os.remove(filename)

        self.assertEqual(configuration.get_precision(), 6)
        self.assertEqual(configuration.get_default_checks(), ['duality', 'mu'])
        self.assertEqual(configuration.get_mu_scale(), '7')

    def test_missing_file(self):
        self.assertEqual(configuration.load_file('/nonexistent/supertorsion.ini'), [])
        self.assertEqual(configuration.get_precision(), 12)

    def test_reset(self):
        configuration.get_configuration().set(configuration.DISPLAY_SECTION_NAME, configuration.PRECISION_KEY, '3')
        configuration.reset()
        self.assertEqual(configuration.get_precision(), 12)

    def test_corpus_path(self):
        self.assertTrue(configuration.get_corpus_path().endswith('data'))
        with mock.patch.dict(os.environ, {configuration.CORPUS_ENVIRONMENT_KEY: '/srv/jobs'}):
            self.assertEqual(configuration.get_corpus_path(), '/srv/jobs')
