"""
Squared torsion of a job, evaluated along both routes, followed by the requested invariance checks.

The checks run are taken from the command line, then from the job options, then from the
configuration.  The exit status is non-zero when any check fails.
"""
import logging

from supertorsion import configuration
from supertorsion.components import torsion
from supertorsion.components.commands.base_command import JobCommand
from supertorsion.components.enums import Checks, JobOptions
from supertorsion.components.payload.report import TorsionReportPayload

logger = logging.getLogger(__name__)

BUNDLE_CHECK = 'cohomology-bundle'


def _check_list(value):
    checks = [item.strip() for item in value.split(',') if item.strip()]
    for check in checks:
        Checks(check)
    return checks


def torsion_payload(job, checks=None, subdivide=None, precision=None, mu=None):
    """
    :return: TorsionReportPayload
    """
    if checks is None:
        checks = job.option(JobOptions.CHECKS)
    if checks is None:
        checks = configuration.get_default_checks()
    if subdivide is None:
        subdivide = job.option(JobOptions.SUBDIVIDE)
    if precision is None:
        precision = job.option(JobOptions.PRECISION)

    cfg = job.torsion_config(mu)
    report = torsion.torsion_direct(cfg)

    suite = torsion.check_invariance_suite(cfg, checks, subdivide, configuration.get_mu_scale(),
                                           base_report=report)
    via_bundle = torsion.torsion_via_cohomology_bundle(cfg, report.basis)
    suite.append(torsion.CheckResult(BUNDLE_CHECK, via_bundle.tau_squared == report.tau_squared,
                                     report.tau_squared, via_bundle.tau_squared))
    for result in suite.results:
        if not result.passed:
            logger.error('Check %s failed on %s', result.name, job.name)

    return TorsionReportPayload(report, suite, job.name, precision)


class ComputeTorsion(JobCommand):

    name = 'torsion'
    description = 'Compute the squared torsion and run the invariance checks'

    def add_arguments(self, parser):
        super(ComputeTorsion, self).add_arguments(parser)
        parser.add_argument('--checks', type=_check_list, default=None,
                            help='comma separated checks among %s' % ','.join(check.value for check in Checks))
        parser.add_argument('--subdivide', type=int, default=None, help='barycentric subdivisions for the check')
        parser.add_argument('--precision', type=int, default=None, help='significant digits of displayed values')
        parser.add_argument('--mu', default=None, help='constant density weight, an exact rational')

    def command_start(self, arguments):
        job = self.load_job(arguments)
        payload = torsion_payload(job, arguments.checks, arguments.subdivide, arguments.precision, arguments.mu)
        self.emit(payload)
        return 0 if payload.passed else 1


compute_torsion = ComputeTorsion
