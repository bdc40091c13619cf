"""
Payloads for passing around results of commands.  Each payload turns a library result into the
JSON compatible structure printed on standard output.
"""
import json
import logging
import math

from supertorsion import configuration

logger = logging.getLogger(__name__)


def rational_to_string(value):
    if value.denominator == 1:
        return str(value.numerator)
    return '%d/%d' % (value.numerator, value.denominator)


def display_float(value, precision=None):
    """
    Floating display value with the configured number of significant digits.
    """
    if precision is None:
        precision = configuration.get_precision()
    return '%.*g' % (precision, float(value))


def simplex_key(simplex):
    return ','.join(str(vertex) for vertex in simplex)


def page_key(key):
    return '%s,%s' % key


def _vectors(vectors):
    return [[rational_to_string(entry) for entry in vector] for vector in vectors]


def _matrix(matrix):
    return [[rational_to_string(entry) for entry in row] for row in matrix.row_list()]


def _page_table(table):
    return [{'r': r, 'entries': dict((page_key(key), dim) for key, dim in sorted(dims.items()))}
            for r, dims in table]


def dumps(document):
    """
    Serialize a document deterministically.
    """
    return json.dumps(document, sort_keys=True, indent=2, separators=(',', ': '))


class CohomologyReportPayload:
    """
    Dimensions of the cohomology together with the page table of the degree filtration.
    """

    def __init__(self, dims, pages, name=None):
        self.dims = tuple(dims)
        self.pages = list(pages)
        self.name = name

    def populate_payload(self):
        return {
            'status': 'ok',
            'job': self.name,
            'h_dims': list(self.dims),
            'pages': _page_table(self.pages),
        }


class CheckResultPayload:
    """
    One invariance check.
    """

    def __init__(self, result):
        self._result = result

    def populate_payload(self):
        result = self._result
        payload = {'name': result.name, 'passed': result.passed}
        for key in ('expected', 'actual'):
            value = getattr(result, key)
            if value is not None:
                payload[key] = rational_to_string(value)
        if result.expected is not None and result.actual is not None and not result.passed:
            payload['discrepancy'] = rational_to_string(result.actual - result.expected)
        if result.detail is not None:
            payload['detail'] = _plain_detail(result.detail)
        return payload


def _plain_detail(detail):
    if isinstance(detail, dict):
        return dict((str(key), _plain_detail(value)) for key, value in detail.items())
    if isinstance(detail, (list, tuple)):
        return [_plain_detail(value) for value in detail]
    if hasattr(detail, 'denominator') and not isinstance(detail, int):
        return rational_to_string(detail)
    return detail


class TorsionReportPayload:
    """
    Torsion report with the basis it refers to, the evaluations of both routes and the invariance checks.
    """

    def __init__(self, report, checks=None, name=None, precision=None):
        self._report = report
        self._checks = checks
        self.name = name
        self.precision = precision

    @property
    def passed(self):
        return self._checks is None or self._checks.passed

    def populate_payload(self):
        report = self._report
        diagnostics = report.diagnostics
        payload = {
            'status': 'ok' if self.passed else 'failed',
            'job': self.name,
            'h_dims': list(report.h_dims),
            'tau_squared': rational_to_string(report.tau_squared),
            'tau': display_float(math.sqrt(report.tau_squared), self.precision),
            'route_direct': rational_to_string(report.route_direct),
            'route_e2': rational_to_string(report.route_e2),
            'pd': rational_to_string(report.pd),
            'nu': rational_to_string(report.nu),
            'basis': {'even': _vectors(report.basis[0]), 'odd': _vectors(report.basis[1])},
            'diagnostics': {
                'pages': _page_table(diagnostics.get('pages', [])),
                'dual_pages': _page_table(diagnostics.get('dual_pages', [])),
                'second_page_pairing': dict((page_key(key), _matrix(block)) for key, block
                                            in sorted(diagnostics.get('second_page_pairing', {}).items())),
                'limit_pairing_nondegenerate': diagnostics.get('limit_pairing_nondegenerate'),
                'routes_same_sign': diagnostics.get('routes_same_sign'),
                'local_system': diagnostics.get('local_system'),
            },
        }
        if diagnostics.get('via_cohomology_bundle'):
            payload['diagnostics']['page_transfer'] = rational_to_string(diagnostics['page_transfer'])
        if self._checks is not None:
            payload['checks'] = [CheckResultPayload(result).populate_payload() for result in self._checks.results]
        return payload


class ValidationReportPayload:
    """
    Outcome of the validators run on a job.
    """

    def __init__(self, name=None):
        self.name = name
        self._passed = []
        self._errors = []

    def add_passed(self, validator):
        self._passed.append(validator)

    def add_error(self, validator, error):
        self._errors.append((validator, error))

    @property
    def passed(self):
        return not self._errors

    @property
    def errors(self):
        """
        :return: list of (validator, error code)
        """
        return [(validator, error.code.value) for validator, error in self._errors]

    def populate_payload(self):
        return {
            'status': 'ok' if self.passed else 'error',
            'job': self.name,
            'passed': list(self._passed),
            'diagnostics': [dict(error.to_dict(), validator=validator) for validator, error in self._errors],
        }


class ErrorPayload:

    def __init__(self, error, name=None):
        self._error = error
        self.name = name

    def populate_payload(self):
        return {'status': 'error', 'job': self.name, 'error': self._error.to_dict()}


class SelfTestPayload:
    """
    Results of the self test, one entry per property checked.
    """

    def __init__(self):
        self._results = []

    def append(self, name, passed, detail=None):
        self._results.append((name, passed, detail))

    @property
    def passed(self):
        return all(passed for _, passed, _ in self._results)

    @property
    def failures(self):
        return [name for name, passed, _ in self._results if not passed]

    def populate_payload(self):
        return {
            'status': 'ok' if self.passed else 'failed',
            'results': [dict({'name': name, 'passed': passed},
                             **({'detail': _plain_detail(detail)} if detail is not None else {}))
                        for name, passed, detail in self._results],
            'failures': self.failures,
        }
