"""
Squared torsion of representations on odd dimensional spheres, checked against closed forms and an
independent sympy evaluation of the acyclic case.
"""
import random
import unittest
from fractions import Fraction

import sympy

from supertorsion.components import representation
from supertorsion.components import spectral
from supertorsion.components import torsion
from supertorsion.components.enums import Checks
from supertorsion.components.errors import DegenerateWedge, NotClosed, NotLocalSystem, OddDimensionRequired
from supertorsion.components.graded import DetElement
from supertorsion.components.linalg import Matrix
from supertorsion.components.payload.job import JobPayload
from supertorsion.components.representation import LocalSystem, RepMorphism
from supertorsion.components.simplicial import OrderedComplex
from supertorsion.components.torsion import TorsionConfig
from test.components.helpers import (SLOW_TESTS, acyclic_s3, circle, cone_circle, data_path, homotopy_s3, identity,
                                     nonassociative_s3, s3, sphere, trivial_system, twisted_circle)


def to_sympy(matrix):
    return sympy.Matrix(matrix.rows, matrix.cols,
                        lambda r, c: sympy.Rational(matrix[r, c].numerator, matrix[r, c].denominator))


def acyclic_oracle(cfg):
    """
    ``1 / |det d * det d*|`` for an acyclic complex concentrated in degrees zero and one.
    """
    product = sympy.Integer(1)
    for cochains in (cfg.cochains, cfg.dual_cochains):
        product *= to_sympy(cochains.differential.out_of(0)).det()
    return 1 / abs(product)


def circle_system(fibers, holonomy):
    operators = dict((edge, identity(len(holonomy))) for edge in circle().simplices(1))
    operators[(0, 2)] = holonomy
    return LocalSystem(circle(), [fibers] * 3, operators)


class GoldenValueTestCase(unittest.TestCase):

    def test_twisted_circle(self):
        for holonomy, expected in ((2, 2), (3, Fraction(3, 4)), (5, Fraction(5, 16)), ('7/2', Fraction(14, 25)),
                                   ('1/2', 2)):
            report = torsion.torsion_direct(TorsionConfig(twisted_circle(holonomy)))
            self.assertEqual(report.tau_squared, expected)
            self.assertEqual(report.h_dims, (0, 0))

    def test_holonomy_placement(self):
        for edge in ((0, 1), (1, 2)):
            self.assertEqual(torsion.torsion_direct(TorsionConfig(twisted_circle(3, edge))).tau_squared,
                             Fraction(3, 4))

    def test_rank_two(self):
        self.assertEqual(torsion.torsion_direct(TorsionConfig(circle_system((2, 0), [[2, 0], [0, 3]]))).tau_squared,
                         Fraction(3, 2))
        self.assertEqual(torsion.torsion_direct(TorsionConfig(circle_system((2, 0), [[0, -1], [1, 0]]))).tau_squared,
                         Fraction(1, 4))

    def test_odd_line_inverts(self):
        self.assertEqual(torsion.torsion_direct(TorsionConfig(circle_system((0, 1), [[3]]))).tau_squared,
                         Fraction(4, 3))
        self.assertEqual(torsion.torsion_direct(TorsionConfig(circle_system((1, 1), [[2, 0], [0, 3]]))).tau_squared,
                         Fraction(8, 3))

    def test_cone(self):
        report = torsion.torsion_direct(TorsionConfig(cone_circle(3)))
        self.assertEqual(report.tau_squared, Fraction(3, 4))
        self.assertFalse(report.diagnostics['local_system'])

    def test_tau(self):
        report = torsion.torsion_direct(TorsionConfig(twisted_circle(3)))
        self.assertAlmostEqual(report.tau, 0.75 ** 0.5)


class OracleTestCase(unittest.TestCase):

    def test_acyclic_circles(self):
        for rep in (twisted_circle(2), twisted_circle('7/2'), circle_system((2, 0), [[2, 1], [0, 3]]),
                    circle_system((2, 0), [[0, -1], [1, 0]])):
            cfg = TorsionConfig(rep)
            self.assertEqual(cfg.cochains.size + cfg.dual_cochains.size, 6 * rep.fiber(0).dim)
            tau_squared = torsion.torsion_direct(cfg).tau_squared
            self.assertEqual(sympy.Rational(tau_squared.numerator, tau_squared.denominator), acyclic_oracle(cfg))


class RouteTestCase(unittest.TestCase):

    def test_routes_agree(self):
        for rep in (trivial_system(circle()), twisted_circle(5), cone_circle(2)):
            report = torsion.torsion_direct(TorsionConfig(rep))
            self.assertEqual(abs(report.route_direct), abs(report.route_e2))
            self.assertTrue(report.diagnostics['limit_pairing_nondegenerate'])

    def test_even_dimension(self):
        with self.assertRaises(OddDimensionRequired):
            torsion.torsion_direct(TorsionConfig(trivial_system(sphere())))

    def test_open_circle(self):
        arc = OrderedComplex([[0, 1], [1, 2]])
        with self.assertRaises(NotClosed):
            torsion.torsion_direct(TorsionConfig(trivial_system(arc)))

    def test_trivial_circle_diagnostics(self):
        report = torsion.torsion_direct(TorsionConfig(trivial_system(circle())))
        self.assertEqual(report.h_dims, (1, 1))
        self.assertTrue(report.diagnostics['local_system'])
        self.assertEqual(report.diagnostics['pages'][-1][1], {(0, 0): 1, (0, 1): 0, (1, 0): 1, (1, 1): 0})
        self.assertGreater(report.tau_squared, 0)


class PairingTestCase(unittest.TestCase):

    def setUp(self):
        self.cfg = TorsionConfig(trivial_system(s3()))
        cochains, dual_cochains = self.cfg.cochains, self.cfg.dual_cochains
        constant = dict(((vertex,), [1]) for vertex in range(5))
        top = {(0, 1, 2, 3): [1]}
        self.h = {0: [cochains.restrict(0, cochains.full_vector(constant))],
                  1: [cochains.restrict(1, cochains.full_vector(top))]}
        self.k = {0: [dual_cochains.restrict(0, dual_cochains.full_vector(constant))],
                  1: [dual_cochains.restrict(1, dual_cochains.full_vector(top))]}

    def test_chain_level_pairing(self):
        self.assertEqual(abs(torsion.cohomology_pairing_determinant(self.cfg, self.h, self.k)), 1)

    def test_second_page_pairing(self):
        pages = torsion.second_page_pairing(self.cfg)
        self.assertTrue(pages.is_nondegenerate())
        self.assertTrue(pages.is_skew_adjoint())
        self.assertEqual(abs(torsion.pd_determinant(self.cfg, self.h, self.k, pages)), 1)

    def test_scaled_basis(self):
        doubled = dict(self.h)
        doubled[0] = [[2 * entry for entry in self.h[0][0]]]
        self.assertEqual(abs(torsion.cohomology_pairing_determinant(self.cfg, doubled, self.k)), Fraction(1, 2))


class BasisChangeTestCase(unittest.TestCase):

    def test_berezinian(self):
        self.assertEqual(torsion.berezinian({0: Matrix.from_rows([[2]]), 1: Matrix.from_rows([[3]])}), Fraction(2, 3))
        with self.assertRaises(DegenerateWedge):
            torsion.berezinian({0: Matrix.zeros(1, 1), 1: Matrix.identity(1)})

    def test_rebase(self):
        basis = {0: [[1, 0], [0, 1]], 1: []}
        g = {0: Matrix.from_rows([[1, 2], [0, 1]]), 1: Matrix.identity(0)}
        self.assertEqual(torsion.rebase(basis, g), {0: [[1, 0], [2, 1]], 1: []})
        with self.assertRaises(ValueError):
            torsion.rebase(basis, {0: Matrix.identity(1), 1: Matrix.identity(0)})

    def test_covariance(self):
        cfg = TorsionConfig(trivial_system(circle()))
        report = torsion.torsion_direct(cfg)
        g = {0: Matrix.from_rows([[2]]), 1: Matrix.from_rows([[3]])}
        rebased = torsion.torsion_direct(cfg, torsion.rebase(report.basis, g))
        self.assertEqual(rebased.tau_squared, report.tau_squared * Fraction(4, 9))


class DensityTestCase(unittest.TestCase):

    def test_sphere_scaling(self):
        cfg = TorsionConfig(trivial_system(sphere()))
        space = torsion.build_CK(cfg).space
        self.assertEqual(torsion.mu_norm(cfg).norm(DetElement.standard(space)), 1)
        for scale, expected in ((2, Fraction(1, 4)), (3, Fraction(1, 9)), (-2, Fraction(1, 4))):
            self.assertEqual(torsion.mu_norm(cfg.rescaled(scale)).norm(DetElement.standard(space)), expected)

    def test_circle_is_insensitive(self):
        cfg = TorsionConfig(twisted_circle(3))
        self.assertEqual(torsion.torsion_direct(cfg.rescaled(7)).tau_squared, Fraction(3, 4))
        self.assertEqual(torsion.torsion_direct(TorsionConfig(twisted_circle(3), mu='5/2')).tau_squared,
                         Fraction(3, 4))

    def test_weights(self):
        with self.assertRaises(ValueError):
            TorsionConfig(twisted_circle(3), mu=[1, 2])
        with self.assertRaises(ValueError):
            TorsionConfig(twisted_circle(3), mu=0)


class InvarianceTestCase(unittest.TestCase):

    def test_gauge(self):
        transformed, _ = representation.gauge_transform(twisted_circle(3), {1: [[5]], 2: [[-2]]})
        self.assertEqual(torsion.torsion_direct(TorsionConfig(transformed)).tau_squared, Fraction(3, 4))

    def test_direct_sum(self):
        total = representation.direct_sum(twisted_circle(2), twisted_circle(3))
        self.assertEqual(torsion.torsion_direct(TorsionConfig(total)).tau_squared, Fraction(3, 2))

    def test_cohomology_bundle(self):
        for rep in (cone_circle(3), twisted_circle(5)):
            cfg = TorsionConfig(rep)
            self.assertEqual(torsion.torsion_via_cohomology_bundle(cfg).tau_squared,
                             torsion.torsion_direct(cfg).tau_squared)

    def test_suite(self):
        for rep in (trivial_system(circle()), twisted_circle(3), circle_system((1, 1), [[2, 0], [0, 3]])):
            suite = torsion.check_invariance_suite(TorsionConfig(rep), ['subdivision', 'duality', 'mu'])
            self.assertEqual([result.name for result in suite.results], ['subdivision', 'duality', 'mu'])
            self.assertTrue(suite.passed, [(result.name, result.expected, result.actual) for result in suite.results])

    def test_quasi_isomorphism(self):
        rep = cone_circle(3)
        phi = RepMorphism(rep, twisted_circle(3), dict(((vertex,), [[1, 0, 0]]) for vertex in range(3)), 'projection')
        cfg = TorsionConfig(rep, morphisms=[(phi, None)])
        suite = torsion.check_invariance_suite(cfg, [Checks.QUASI_ISO, Checks.SUBDIVISION])
        self.assertEqual(suite.results[0].name, 'quasi-iso:projection')
        self.assertTrue(suite.passed)

    def test_failed_quasi_isomorphism(self):
        phi = RepMorphism(twisted_circle(3), twisted_circle(3))
        suite = torsion.check_invariance_suite(TorsionConfig(twisted_circle(3), morphisms=[(phi, None)]),
                                               ['quasi-iso'])
        self.assertFalse(suite.passed)
        self.assertEqual(suite.results[0].detail, 'not a quasi-isomorphism')

    def test_twice_subdivided(self):
        suite = torsion.check_invariance_suite(TorsionConfig(twisted_circle(2)), ['subdivision'], subdivide=2)
        self.assertTrue(suite.passed)
        self.assertEqual(suite.results[0].detail, {'subdivisions': 2})

    def test_non_constant_weights(self):
        cfg = TorsionConfig(twisted_circle(3), mu=[1, 2, 3])
        self.assertEqual(torsion.torsion_direct(cfg).tau_squared, Fraction(1, 4))
        result = torsion.check_invariance_suite(cfg, ['subdivision']).results[0]
        self.assertTrue(result.passed)
        self.assertEqual(result.expected, Fraction(3, 4))
        self.assertEqual(result.actual, Fraction(3, 4))
        self.assertEqual(result.detail, {'subdivisions': 1, 'density_weights': 'constant'})


class SparseTorsionTestCase(unittest.TestCase):

    def test_matches_direct(self):
        for rep in (twisted_circle(3), trivial_system(circle()), circle_system((1, 1), [[2, 0], [0, 3]]),
                    circle_system((2, 0), [[0, -1], [1, 0]]), trivial_system(s3())):
            cfg = TorsionConfig(rep)
            report = torsion.torsion_direct(cfg)
            sparse = torsion.torsion_sparse(cfg, report.basis, report.dual_basis)
            self.assertEqual(sparse.tau_squared, report.tau_squared)
            self.assertEqual(sparse.pd, report.pd)
            self.assertEqual(abs(sparse.route_direct), abs(report.route_direct))
            self.assertTrue(sparse.diagnostics['sparse'])

    def test_weights(self):
        cfg = TorsionConfig(twisted_circle(3), mu=[1, 2, 3])
        report = torsion.torsion_direct(cfg)
        self.assertEqual(torsion.torsion_sparse(cfg, report.basis, report.dual_basis).tau_squared,
                         report.tau_squared)

    def test_rebased(self):
        cfg = TorsionConfig(trivial_system(circle()))
        report = torsion.torsion_direct(cfg)
        g = {0: Matrix.from_rows([[2]]), 1: Matrix.from_rows([[3]])}
        sparse = torsion.torsion_sparse(cfg, torsion.rebase(report.basis, g), report.dual_basis)
        self.assertEqual(sparse.tau_squared, report.tau_squared * Fraction(4, 9))

    def test_rejects_wrong_basis(self):
        cfg = TorsionConfig(trivial_system(circle()))
        report = torsion.torsion_direct(cfg)
        with self.assertRaises(DegenerateWedge):
            torsion.torsion_sparse(cfg, {0: [], 1: report.basis[1]}, report.dual_basis)
        boundary = cfg.cochains.restrict(1, cfg.cochains.differential.full_matrix().apply(
            cfg.cochains.embed(0, [1, 0, 0])))
        with self.assertRaises(DegenerateWedge):
            torsion.torsion_sparse(cfg, {0: report.basis[0], 1: [boundary]}, report.dual_basis)

    def test_needs_local_systems(self):
        rep, dual = homotopy_s3()
        with self.assertRaises(NotLocalSystem):
            torsion.torsion_sparse(TorsionConfig(rep, dual), {0: [], 1: []}, {0: [], 1: []})
        with self.assertRaises(OddDimensionRequired):
            torsion.torsion_sparse(TorsionConfig(trivial_system(sphere())), {0: [], 1: []}, {0: [], 1: []})


def closed_form(holonomy):
    """
    Squared torsion of the rank one local system on the circle with the given positive holonomy.
    """
    return holonomy / (holonomy - 1) ** 2


def embed_summand(total, part, first, second, basis):
    """
    Carry cochain vectors of the first summand into the cochains of the direct sum.
    """
    embedded = {}
    for parity in (0, 1):
        embedded[parity] = []
        for vector in basis[parity]:
            placed = {}
            for simplex, values in part.cochains(part.embed(parity, vector)).items():
                vertex = simplex[0]
                positions, _ = representation._sum_positions(first.fiber(vertex), second.fiber(vertex))
                fibre = [0] * total.rep.fiber(vertex).dim
                for position, value in zip(positions, values):
                    fibre[position] = value
                placed[simplex] = fibre
            embedded[parity].append(total.restrict(parity, total.full_vector(placed)))
    return embedded


class DirectSumTestCase(unittest.TestCase):

    def setUp(self):
        self.generator = random.Random(2718)

    def holonomy(self):
        while True:
            value = Fraction(self.generator.randint(1, 9), self.generator.randint(1, 5))
            if value != 1:
                return value

    def test_acyclic_summands(self):
        for _ in range(6):
            first, second = self.holonomy(), self.holonomy()
            total = representation.direct_sum(twisted_circle(first), twisted_circle(second))
            self.assertEqual(torsion.torsion_direct(TorsionConfig(total)).tau_squared,
                             closed_form(first) * closed_form(second))

    def test_summand_with_cohomology(self):
        for _ in range(5):
            part = TorsionConfig(trivial_system(circle(), self.generator.randint(1, 2), self.generator.randint(0, 1)))
            report = torsion.torsion_direct(part)
            holonomy = self.holonomy()
            first, second = part.rep, twisted_circle(holonomy)
            cfg = TorsionConfig(representation.direct_sum(first, second))
            h = embed_summand(cfg.cochains, part.cochains, first, second, report.basis)
            k = embed_summand(cfg.dual_cochains, part.dual_cochains, first, second, report.dual_basis)

            self.assertEqual(torsion.torsion_direct(cfg, h).tau_squared, report.tau_squared * closed_form(holonomy))
            self.assertEqual(torsion.cohomology_pairing_determinant(cfg, h, k), report.pd)
            pages = torsion.second_page_pairing(cfg)
            self.assertTrue(pages.is_nondegenerate())
            self.assertEqual(abs(torsion.pd_determinant(cfg, h, k, pages)),
                             abs(torsion.pd_determinant(part, report.basis, report.dual_basis)))


class EvenSphereTestCase(unittest.TestCase):

    def test_cup_pairing_on_cohomology(self):
        cfg = TorsionConfig(trivial_system(sphere()))
        pages = spectral.page_pairing(cfg.dual_cochains, cfg.cochains, torsion.cup_matrix(cfg),
                                      cfg.complex.dimension + 1, validate=False)
        for p in (0, 2):
            block = pages.block(p, 0)
            self.assertEqual(block.shape, (1, 1))
            self.assertNotEqual(block[0, 0], 0)
        self.assertEqual(pages.block(1, 0).shape, (0, 0))
        self.assertEqual(pages.block(1, 1).shape, (0, 0))
        self.assertTrue(pages.is_nondegenerate())


class ThreeSphereTestCase(unittest.TestCase):

    def test_trivial_line(self):
        cfg = TorsionConfig(trivial_system(s3()))
        report = torsion.torsion_direct(cfg)
        self.assertEqual(report.h_dims, (1, 1))
        suite = torsion.check_invariance_suite(cfg, ['duality', 'mu'], base_report=report)
        self.assertTrue(suite.passed)

    def test_acyclic(self):
        self.assertEqual(torsion.torsion_direct(TorsionConfig(acyclic_s3())).tau_squared, 1)

    def test_nonassociative(self):
        rep, dual = nonassociative_s3()
        self.assertEqual(torsion.torsion_direct(TorsionConfig(rep, dual)).tau_squared, 1)

    def test_homotopy_matches_bundle(self):
        rep, dual = homotopy_s3()
        cfg = TorsionConfig(rep, dual)
        report = torsion.torsion_direct(cfg)
        self.assertEqual(report.h_dims, (2, 2))
        self.assertEqual(torsion.torsion_via_cohomology_bundle(cfg, report.basis).tau_squared, report.tau_squared)

    def test_subdivision(self):
        suite = torsion.check_invariance_suite(TorsionConfig(trivial_system(s3())), ['subdivision'])
        self.assertTrue(suite.passed, [(result.name, result.expected, result.actual) for result in suite.results])

    @unittest.skipUnless(SLOW_TESTS, 'set SUPERTORSION_SLOW_TESTS to run')
    def test_twice_subdivided(self):
        suite = torsion.check_invariance_suite(TorsionConfig(trivial_system(s3())), ['subdivision'], subdivide=2)
        self.assertTrue(suite.passed, [(result.name, result.expected, result.actual) for result in suite.results])
        self.assertEqual(suite.results[0].detail, {'subdivisions': 2})

    def test_homotopy_subdivision(self):
        rep, dual = homotopy_s3()
        suite = torsion.check_invariance_suite(TorsionConfig(rep, dual), ['subdivision'])
        self.assertTrue(suite.passed, [(result.name, result.expected, result.actual) for result in suite.results])

    def test_homotopy_duality(self):
        rep, dual = homotopy_s3()
        cfg = TorsionConfig(rep, dual)
        self.assertFalse(torsion.is_chain_level(cfg))
        self.assertFalse(torsion.is_chain_level(cfg.swapped()))
        suite = torsion.check_invariance_suite(cfg, ['duality'])
        self.assertTrue(suite.passed, [(result.name, result.expected, result.actual) for result in suite.results])

    def test_homotopy_job_checks(self):
        job = JobPayload.from_file(data_path('s3_homotopy.json'))
        suite = torsion.check_invariance_suite(job.torsion_config(), ['duality', 'mu'])
        self.assertTrue(suite.passed)
