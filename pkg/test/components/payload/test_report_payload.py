"""
Formatting of command results.
"""
import unittest
from fractions import Fraction

from supertorsion import configuration
from supertorsion.components import torsion
from supertorsion.components.errors import DualIncompatible, OddDimensionRequired
from supertorsion.components.payload import report
from supertorsion.components.torsion import CheckResult, InvarianceReport, TorsionConfig
from test.components.helpers import twisted_circle


class FormattingTestCase(unittest.TestCase):

    def setUp(self):
        configuration.reset()

    def test_rationals(self):
        self.assertEqual(report.rational_to_string(Fraction(3, 4)), '3/4')
        self.assertEqual(report.rational_to_string(Fraction(-2)), '-2')
        self.assertEqual(report.rational_to_string(Fraction(-6, 4)), '-3/2')

    def test_display_float(self):
        self.assertEqual(report.display_float(Fraction(1, 3)), '0.333333333333')
        self.assertEqual(report.display_float(Fraction(3, 4), 3), '0.75')
        self.assertEqual(report.display_float(Fraction(2, 3), 2), '0.67')

    def test_configured_precision(self):
        configuration.get_configuration().set(configuration.DISPLAY_SECTION_NAME, configuration.PRECISION_KEY, '4')
        self.assertEqual(report.display_float(Fraction(1, 3)), '0.3333')

    def test_keys(self):
        self.assertEqual(report.simplex_key((0, 1, 2)), '0,1,2')
        self.assertEqual(report.page_key((1, 0)), '1,0')

    def test_dumps_is_sorted(self):
        self.assertEqual(report.dumps({'b': 1, 'a': [2]}), '{\n  "a": [\n    2\n  ],\n  "b": 1\n}')


class TorsionReportTestCase(unittest.TestCase):

    def setUp(self):
        configuration.reset()
        self.report = torsion.torsion_direct(TorsionConfig(twisted_circle(3)))

    def test_fields(self):
        content = report.TorsionReportPayload(self.report, name='circle_twisted_3').populate_payload()
        self.assertEqual(content['status'], 'ok')
        self.assertEqual(content['job'], 'circle_twisted_3')
        self.assertEqual(content['h_dims'], [0, 0])
        self.assertEqual(content['tau_squared'], '3/4')
        self.assertEqual(content['tau'], '0.866025403784')
        self.assertEqual(content['basis'], {'even': [], 'odd': []})
        self.assertNotIn('checks', content)

    def test_pages(self):
        content = report.TorsionReportPayload(self.report).populate_payload()
        pages = content['diagnostics']['pages']
        self.assertEqual(pages[0]['r'], 0)
        self.assertTrue(all(dim == 0 for dim in pages[-1]['entries'].values()))
        self.assertIn('0,0', pages[0]['entries'])
        self.assertTrue(content['diagnostics']['local_system'])

    def test_checks(self):
        checks = InvarianceReport([CheckResult('duality', True, Fraction(3, 4), Fraction(3, 4)),
                                   CheckResult('mu', False, Fraction(1), Fraction(2), detail={'scale': Fraction(7)})])
        payload = report.TorsionReportPayload(self.report, checks)
        self.assertFalse(payload.passed)

        content = payload.populate_payload()
        self.assertEqual(content['status'], 'failed')
        self.assertEqual(content['checks'][0], {'name': 'duality', 'passed': True,
                                                'expected': '3/4', 'actual': '3/4'})
        self.assertEqual(content['checks'][1]['discrepancy'], '1')
        self.assertEqual(content['checks'][1]['detail'], {'scale': '7'})


class DiagnosticPayloadTestCase(unittest.TestCase):

    def test_validation(self):
        payload = report.ValidationReportPayload('circle')
        payload.add_passed('complex')
        self.assertTrue(payload.passed)

        payload.add_error('dual', DualIncompatible('Dual operator does not match', simplex=(0, 2)))
        self.assertFalse(payload.passed)
        self.assertEqual(payload.errors, [('dual', 'dual_incompatible')])
        self.assertEqual(payload.populate_payload(), {
            'status': 'error',
            'job': 'circle',
            'passed': ['complex'],
            'diagnostics': [{'code': 'dual_incompatible', 'message': 'Dual operator does not match',
                             'simplex': [0, 2], 'validator': 'dual'}],
        })

    def test_error(self):
        error = OddDimensionRequired('Even dimension', dimension=2)
        self.assertEqual(report.ErrorPayload(error, 'sphere').populate_payload(), {
            'status': 'error',
            'job': 'sphere',
            'error': {'code': 'odd_dimension_required', 'message': 'Even dimension', 'dimension': 2},
        })

    def test_cohomology(self):
        content = report.CohomologyReportPayload((1, 0), [(0, {(0, 0): 3, (1, 0): 3})], 'sphere').populate_payload()
        self.assertEqual(content['h_dims'], [1, 0])
        self.assertEqual(content['pages'], [{'r': 0, 'entries': {'0,0': 3, '1,0': 3}}])

    def test_self_test(self):
        payload = report.SelfTestPayload()
        payload.append('golden', True, {'tau_squared': Fraction(3, 4)})
        self.assertTrue(payload.passed)
        payload.append('duality', False)
        self.assertEqual(payload.failures, ['duality'])
        self.assertEqual(payload.populate_payload(), {
            'status': 'failed',
            'results': [{'name': 'golden', 'passed': True, 'detail': {'tau_squared': '3/4'}},
                        {'name': 'duality', 'passed': False}],
            'failures': ['duality'],
        })
