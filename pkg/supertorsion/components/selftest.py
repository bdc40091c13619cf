"""
Property suite run by the ``selftest`` command over the job corpus.

Every property is recorded by name in a :class:`SelfTestPayload`; nothing here raises on a failed
property.  Setting ``inject_sign_error`` flips the cup product sign on zero dimensional back faces,
which the skew-adjointness validation must detect.
"""
import logging
import random

from supertorsion import configuration
from supertorsion.components import linalg
from supertorsion.components import representation
from supertorsion.components import simplicial
from supertorsion.components import spectral
from supertorsion.components import torsion
from supertorsion.components.commands.compute_torsion import torsion_payload
from supertorsion.components.commands.validate_job import validate_payload
from supertorsion.components.enums import JobOptions
from supertorsion.components.errors import SupertorsionError
from supertorsion.components.graded import DetElement
from supertorsion.components.linalg import Matrix
from supertorsion.components.payload.report import SelfTestPayload, dumps

logger = logging.getLogger(__name__)


def corrupted_cup_sign(p, fiber_parity):
    sign = simplicial.cup_sign(p, fiber_parity)
    return -sign if p == 0 else sign


def _random_matrix(generator, rows, cols):
    return Matrix.from_rows([[generator.randint(-3, 3) for _ in range(cols)] for _ in range(rows)], cols)


class SelfTest:
    """
    Runs the property suite.
    """

    def __init__(self, jobs, inject_sign_error=False, seed=None, trials=None):
        """
        :param jobs: list of (name, JobPayload)
        """
        self._jobs = list(jobs)
        self._sign = corrupted_cup_sign if inject_sign_error else simplicial.cup_sign
        self._seed = configuration.get_random_seed() if seed is None else seed
        self._trials = configuration.get_random_trials() if trials is None else trials
        self._payload = SelfTestPayload()

    def record(self, name, passed, detail=None):
        if not passed:
            logger.error('Property %s failed', name)
        self._payload.append(name, bool(passed), detail)

    def attempt(self, name, method, *args):
        """
        Record a property whose failure shows up as a library error.
        """
        try:
            result = method(*args)
        except SupertorsionError as e:
            self.record(name, False, e.to_dict())
            return None
        self.record(name, True)
        return result

    def run(self):
        """
        :return: SelfTestPayload
        """
        self.linalg_properties()
        acyclic = []
        for name, job in self._jobs:
            logger.info('Self test of %s', name)
            try:
                report = self.job_properties(name, job)
            except SupertorsionError as e:
                self.record('job:%s' % name, False, e.to_dict())
                continue
            if report is not None and report.h_dims == (0, 0) and job.complex.dimension == 1:
                acyclic.append((name, job, report))
        self.direct_sum_properties(acyclic[:2])
        return self._payload

    def linalg_properties(self):
        generator = random.Random(self._seed)
        failures = []
        for trial in range(self._trials):
            rows, cols = generator.randint(1, 4), generator.randint(1, 4)
            matrix = _random_matrix(generator, rows, cols)
            kernel = linalg.kernel_basis(matrix)
            if linalg.rank(matrix) + len(kernel) != cols:
                failures.append((trial, 'rank-nullity'))
            if any(not linalg.is_zero_vector(matrix.apply(vector)) for vector in kernel):
                failures.append((trial, 'kernel'))

            size = generator.randint(1, 4)
            first, second = _random_matrix(generator, size, size), _random_matrix(generator, size, size)
            if linalg.det(first * second) != linalg.det(first) * linalg.det(second):
                failures.append((trial, 'det-multiplicative'))
            if linalg.det(first.transpose()) != linalg.det(first):
                failures.append((trial, 'det-transpose'))
            if linalg.det(first) and linalg.inverse(first) * first != Matrix.identity(size):
                failures.append((trial, 'inverse'))
        self.record('linalg', not failures, failures or None)

    def _system(self, rep):
        if rep.is_local_system():
            return representation.LocalSystem.from_rep(rep)
        return representation.fiber_cohomology_system(rep)

    def job_properties(self, name, job):
        """
        :return: the TorsionReport of the job, or None when no torsion is computed
        """
        expected = job.expected
        if expected.get('error'):
            codes = [code for _, code in validate_payload(job).errors]
            if not codes and job.complex.dimension % 2:
                try:
                    torsion.torsion_direct(job.torsion_config())
                except SupertorsionError as e:
                    codes.append(e.code.value)
            self.record('expected-error:%s' % name, expected['error'] in codes, {'codes': codes})
            return None

        rep = job.representation
        cochains = self.attempt('differential-squares-to-zero:%s' % name, representation.cochain_complex, rep)
        if cochains is None:
            return None

        dims = spectral.cohomology(cochains).dims
        if 'h_dims' in expected:
            self.record('cohomology-dimensions:%s' % name, list(dims) == list(expected['h_dims']),
                        {'h_dims': list(dims)})

        system = self._system(rep)
        local = representation.local_cohomology_dims(system)
        second = cochains.page(2).dims()
        keys = set(local) | set(second)
        self.record('second-page:%s' % name, all(local.get(key, 0) == second.get(key, 0) for key in keys))

        top = cochains.top
        self.record('pages-stabilize:%s' % name, cochains.page(top + 1).dims() == cochains.page(top + 2).dims())

        self.skew_adjoint_properties(name, system)

        cfg = job.torsion_config()
        if job.complex.dimension % 2 == 0:
            self.scaling_properties(name, cfg)
            return None
        return self.torsion_properties(name, job, cfg)

    def skew_adjoint_properties(self, name, system):
        cfg = torsion.TorsionConfig(system)
        first, second = cfg.cochains, cfg.dual_cochains
        cycle = cfg.validate()
        pairing = representation.cup_pairing_matrix(cycle, cfg.dual, system, second, first, sign=self._sign)
        for r in range(2, first.top + 2):
            pages = self.attempt('skew-adjoint:%s:%s' % (name, r), spectral.page_pairing, second, first, pairing, r)
            if pages is None:
                return
            self.record('page-skew-adjoint:%s:%s' % (name, r), pages.is_skew_adjoint())

    def scaling_properties(self, name, cfg):
        chi = simplicial.euler_characteristic(cfg.complex)
        space = torsion.build_CK(cfg).space
        base = torsion.mu_norm(cfg).norm(DetElement.standard(space))
        for scale in (2, 3):
            scaled = torsion.mu_norm(cfg.rescaled(scale)).norm(DetElement.standard(space))
            self.record('mu-scaling:%s:%s' % (name, scale), scaled == base * abs(linalg.QQ(scale)) ** (-chi))

    def torsion_properties(self, name, job, cfg):
        report = self.attempt('route-agreement:%s' % name, torsion.torsion_direct, cfg)
        if report is None:
            return None
        self.record('tau-squared-positive:%s' % name, report.tau_squared > 0)
        self.record('limit-pairing-nondegenerate:%s' % name, report.diagnostics['limit_pairing_nondegenerate'])

        if 'tau_squared' in job.expected:
            golden = linalg.to_rational(job.expected['tau_squared'])
            self.record('golden:%s' % name, report.tau_squared == golden,
                        {'expected': golden, 'actual': report.tau_squared})

        via_bundle = self.attempt('cohomology-bundle:%s' % name, torsion.torsion_via_cohomology_bundle, cfg,
                                  report.basis)
        if via_bundle is not None:
            self.record('cohomology-bundle-agrees:%s' % name, via_bundle.tau_squared == report.tau_squared,
                        {'expected': report.tau_squared, 'actual': via_bundle.tau_squared})

        even, odd = report.h_dims
        g = {0: Matrix.diagonal([2] + [1] * (even - 1)) if even else Matrix.identity(0),
             1: Matrix.diagonal([3] + [1] * (odd - 1)) if odd else Matrix.identity(0)}
        rebased = self.attempt('covariance:%s' % name, torsion.torsion_direct, cfg, torsion.rebase(report.basis, g))
        if rebased is not None:
            self.record('covariance-scaling:%s' % name,
                        rebased.tau_squared == report.tau_squared * torsion.berezinian(g) ** 2)

        checks = job.option(JobOptions.CHECKS)
        if checks is None:
            checks = configuration.get_default_checks()
        suite = torsion.check_invariance_suite(cfg, checks, job.option(JobOptions.SUBDIVIDE),
                                               configuration.get_mu_scale(), base_report=report)
        for result in suite.results:
            self.record('%s:%s' % (result.name, name), result.passed,
                        {'expected': result.expected, 'actual': result.actual} if not result.passed else None)

        if job.complex.dimension == 1:
            first = dumps(torsion_payload(job, checks=[]).populate_payload())
            second = dumps(torsion_payload(job, checks=[]).populate_payload())
            self.record('deterministic:%s' % name, first == second)
        return report

    def direct_sum_properties(self, acyclic):
        if len(acyclic) < 2:
            return
        (first_name, first, first_report), (second_name, second, second_report) = acyclic
        if first.complex != second.complex:
            return
        summed = representation.direct_sum(first.representation, second.representation)
        report = self.attempt('direct-sum:%s+%s' % (first_name, second_name), torsion.torsion_direct,
                              torsion.TorsionConfig(summed))
        if report is not None:
            self.record('direct-sum-multiplicative:%s+%s' % (first_name, second_name),
                        report.tau_squared == first_report.tau_squared * second_report.tau_squared)


def run_self_test(jobs, inject_sign_error=False, seed=None, trials=None):
    return SelfTest(jobs, inject_sign_error, seed, trials).run()
