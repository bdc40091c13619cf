"""
Torsion of a representation on a closed odd dimensional triangulated manifold.

The torsion complex is the direct sum of the twisted cochains of the representation and of its
dual.  Its determinant line carries the flat density norm; the squared torsion of a cohomology basis
h is that norm evaluated on the element sent to ``h (x) h`` by the cohomology isomorphism followed by
the pairing of the dual cohomology with the cohomology.  Two independent evaluations are made, one
direct and one through the spectral sequence of the degree filtration, and they must agree.
"""
import logging
import math

from supertorsion.components import graded
from supertorsion.components import linalg
from supertorsion.components import representation
from supertorsion.components import simplicial
from supertorsion.components import spectral
from supertorsion.components.enums import Checks
from supertorsion.components.errors import (DegeneratePairing, DegenerateWedge, NotLocalSystem, OddDimensionRequired,
                                            RouteMismatch, SupertorsionError)
from supertorsion.components.graded import DetElement, DetNorm, PARITIES
from supertorsion.components.linalg import Matrix, ZERO, ONE

logger = logging.getLogger(__name__)


def _mu_values(mu, vertex_count):
    if mu is None:
        values = [ONE] * vertex_count
    elif isinstance(mu, (list, tuple)):
        values = [linalg.to_rational(value) for value in mu]
    else:
        values = [linalg.to_rational(mu)] * vertex_count
    if len(values) != vertex_count:
        raise ValueError('Expected %s density weights, received %s' % (vertex_count, len(values)))
    if any(not value for value in values):
        raise ValueError('Density weights must be non-zero')
    return values


class TorsionConfig:
    """
    Everything a torsion computation needs: the representation, optional dual data, the density
    weights of the vertices and morphisms to other representations used by the quasi-isomorphism check.
    """

    def __init__(self, rep, dual_rep=None, mu=None, morphisms=()):
        self._rep = rep
        self._supplied_dual = dual_rep
        self._mu = _mu_values(mu, rep.complex.vertex_count)
        self._morphisms = list(morphisms)
        self._cycle = None
        self._dual = None
        self._cochains = None
        self._dual_cochains = None

    @property
    def complex(self):
        return self._rep.complex

    @property
    def rep(self):
        return self._rep

    @property
    def supplied_dual(self):
        return self._supplied_dual

    @property
    def mu(self):
        return list(self._mu)

    @property
    def morphisms(self):
        return list(self._morphisms)

    @property
    def cycle(self):
        if self._cycle is None:
            self._cycle = simplicial.validate_closed_oriented(self.complex)
        return self._cycle

    @property
    def dual(self):
        if self._dual is None:
            self._dual = representation.dual(self._rep, self._supplied_dual)
        return self._dual

    @property
    def cochains(self):
        if self._cochains is None:
            self._cochains = representation.cochain_complex(self._rep)
        return self._cochains

    @property
    def dual_cochains(self):
        if self._dual_cochains is None:
            self._dual_cochains = representation.cochain_complex(self.dual)
        return self._dual_cochains

    def validate(self):
        """
        Check the orientation of the complex and the dual data.
        :return: FundamentalCycle
        """
        cycle = self.cycle
        self.dual
        return cycle

    def rescaled(self, factor):
        factor = linalg.to_rational(factor)
        return TorsionConfig(self._rep, self._supplied_dual, [value * factor for value in self._mu], self._morphisms)

    def swapped(self):
        """
        Configuration of the dual representation, with the representation as its dual.
        """
        return TorsionConfig(self.dual, self._rep, self._mu)


class TorsionReport:
    """
    Result of a torsion computation.
    """

    def __init__(self, tau_squared, basis, dual_basis, route_direct, route_e2, pd, nu, diagnostics=None):
        self.tau_squared = tau_squared
        self.basis = basis
        self.dual_basis = dual_basis
        self.route_direct = route_direct
        self.route_e2 = route_e2
        self.pd = pd
        self.nu = nu
        self.diagnostics = diagnostics or {}

    @property
    def tau(self):
        return math.sqrt(self.tau_squared)

    @property
    def h_dims(self):
        return len(self.basis[0]), len(self.basis[1])


class CheckResult:

    def __init__(self, name, passed, expected=None, actual=None, detail=None):
        self.name = name
        self.passed = passed
        self.expected = expected
        self.actual = actual
        self.detail = detail


class InvarianceReport:

    def __init__(self, results=None):
        self.results = list(results or [])

    def append(self, result):
        self.results.append(result)

    @property
    def passed(self):
        return all(result.passed for result in self.results)


def build_CK(cfg):
    return spectral.direct_sum_complex(cfg.cochains, cfg.dual_cochains)


def _reference_coefficient(cfg):
    coefficient = ONE
    for simplex in cfg.complex.simplices():
        weight = cfg.mu[simplex[0]]
        coefficient *= weight if (len(simplex) - 1) % 2 == 0 else ONE / weight
    return coefficient


def mu_norm(cfg, fiber_bases=None):
    """
    Flat density norm on the determinant line of the torsion complex.
    :param fiber_bases: optional dictionary vertex -> Matrix whose columns are the fibre basis
        playing the role of the standard one; the dual fibres use the dual basis.
    """
    ck = build_CK(cfg)
    coefficient = _reference_coefficient(cfg)
    if not fiber_bases:
        return DetNorm(DetElement.standard(ck.space, coefficient))

    first, second = cfg.cochains, cfg.dual_cochains
    wedges = {0: [], 1: []}
    for which, cochains in enumerate((first, second)):
        for simplex in cfg.complex.simplices():
            vertex = simplex[0]
            size = cfg.rep.fiber(vertex).dim
            basis = fiber_bases.get(vertex, Matrix.identity(size))
            if which:
                basis = linalg.inverse(basis).transpose()
            for column in range(size):
                vector = [ZERO] * cochains.size
                for row in range(size):
                    vector[cochains.layout.position(simplex, row)] = basis[row, column]
                parity = (len(simplex) - 1 + cfg.rep.fiber(vertex).parities()[column]) % 2
                wedges[parity].append(_torsion_vector(first, second, which, parity, cochains.restrict(parity, vector)))
    return DetNorm(DetElement(ck.space, wedges[0], wedges[1], coefficient))


def _torsion_vector(first, second, which, parity, vector):
    """
    Coordinates in the torsion complex of a vector of one summand, given in the coordinates of one parity.
    """
    if which == 0:
        return list(vector) + [ZERO] * second.space.dim_of(parity)
    return [ZERO] * first.space.dim_of(parity) + list(vector)


def _pairing_ratio(pairing, left, right):
    """
    ``det <left_even, right_odd> / det <left_odd, right_even>`` for full coordinate vectors.
    """
    transposed = pairing.transpose()
    blocks = {}
    for parity in PARITIES:
        rows = [transposed.apply(vector) for vector in left[parity]]
        blocks[parity] = Matrix.from_rows([[linalg.dot(row, column) for column in right[(parity + 1) % 2]]
                                           for row in rows], len(right[(parity + 1) % 2]))
    return _block_ratio(blocks)


def _block_ratio(blocks):
    """
    ``det blocks[0] / det blocks[1]`` for the two parity blocks of a cohomology pairing.
    """
    values = []
    for parity in PARITIES:
        block = blocks[parity]
        if not block.is_square():
            raise DegeneratePairing('Paired cohomologies have mismatched dimensions in parity %s' % parity,
                                    shape=block.shape)
        value = linalg.det(block)
        if not value:
            raise DegeneratePairing('Cohomology pairing is degenerate in parity %s' % parity, parity=parity)
        values.append(value)
    return values[0] / values[1]


def _full_basis(complex_, basis):
    return dict((parity, [complex_.embed(parity, vector) for vector in basis[parity]]) for parity in PARITIES)


def cohomology_pairing_determinant(cfg, h_basis, k_basis, pairing=None):
    """
    Scalar with ``det(k) = pd * det(h)`` read off the cup pairing of the cohomology representatives
    themselves.  Only meaningful for local systems, where the cup pairing is a chain level pairing.
    :param h_basis: cohomology representatives of the representation, by parity
    :param k_basis: cohomology representatives of the dual, by parity
    """
    first, second = cfg.cochains, cfg.dual_cochains
    if pairing is None:
        pairing = cup_matrix(cfg)
    return _pairing_ratio(pairing, _full_basis(second, k_basis), _full_basis(first, h_basis))


def is_chain_level(cfg):
    """
    True when both sides are local systems, so the cup pairing is a chain map and can be evaluated on cohomology.
    """
    return cfg.rep.is_local_system() and cfg.dual.is_local_system()


def cup_matrix(cfg):
    return representation.cup_pairing_matrix(cfg.cycle, cfg.dual, cfg.rep, cfg.dual_cochains, cfg.cochains)


def second_page_pairing(cfg, pairing=None, validate=None):
    """
    Pairing of the second pages of the dual and of the representation.  Validation checks that the
    blocks respect the filtration and that every page differential is skew-adjoint.
    """
    if pairing is None:
        pairing = cup_matrix(cfg)
    if validate is None:
        validate = is_chain_level(cfg)
    return spectral.page_pairing(cfg.dual_cochains, cfg.cochains, pairing, 2, validate=validate)


def pd_determinant(cfg, h_basis=None, k_basis=None, pages=None):
    """
    Duality scalar computed on the second pages and carried to cohomology along the later pages.
    :param h_basis: cohomology representatives of the representation; computed when omitted
    :param k_basis: cohomology representatives of the dual; computed when omitted
    :raises DegeneratePairing: if the second page pairing is degenerate.
    """
    if h_basis is None:
        h_basis = spectral.Cohomology(cfg.cochains).basis()
    if k_basis is None:
        k_basis = spectral.Cohomology(cfg.dual_cochains).basis()
    if pages is None:
        pages = second_page_pairing(cfg)
    scalar = pages.determinant_ratio()
    return scalar * spectral.page_transfer(cfg.cochains, 2, h_basis) / spectral.page_transfer(cfg.dual_cochains, 2,
                                                                                               k_basis)


def _diagnostics(cfg, pages, pairing, route_direct, route_e2):
    first, second = cfg.cochains, cfg.dual_cochains
    top = first.top
    limit = spectral.page_pairing(second, first, pairing, top + 1, validate=False)
    return {
        'pages': [(r, dims) for r, dims in spectral.page_table(first)],
        'dual_pages': [(r, dims) for r, dims in spectral.page_table(second)],
        'second_page_pairing': dict((key, pages.block(*key)) for key in pages.keys()),
        'limit_pairing_nondegenerate': limit.is_nondegenerate(),
        'routes_same_sign': (route_direct > 0) == (route_e2 > 0),
        'local_system': cfg.rep.is_local_system(),
    }


def torsion_direct(cfg, basis=None):
    """
    Squared torsion of a cohomology basis.
    :param basis: cohomology representatives by parity in the cochain coordinates; computed when omitted
    :raises OddDimensionRequired: on even dimensional complexes.
    :raises RouteMismatch: if the direct and the spectral sequence evaluations disagree.
    :return: TorsionReport
    """
    n = cfg.complex.dimension
    if n % 2 == 0:
        raise OddDimensionRequired('Torsion needs an odd dimensional manifold, received dimension %s' % n,
                                   dimension=n)
    cfg.validate()
    first, second = cfg.cochains, cfg.dual_cochains

    h = spectral.Cohomology(first, basis)
    k = spectral.Cohomology(second)
    ck = build_CK(cfg)
    combined = dict((parity, [_torsion_vector(first, second, 0, parity, vector) for vector in h.representatives(parity)]
                     + [_torsion_vector(first, second, 1, parity, vector) for vector in k.representatives(parity)])
                    for parity in PARITIES)

    s_direct = graded.det_cohomology(ck, combined)
    s_chain = spectral.det_chain(first, h.basis()) * spectral.det_chain(second, k.basis())

    pairing = cup_matrix(cfg)
    pages = second_page_pairing(cfg, pairing)
    pd_e2 = pd_determinant(cfg, h.basis(), k.basis(), pages)
    if is_chain_level(cfg):
        pd_direct = cohomology_pairing_determinant(cfg, h.basis(), k.basis(), pairing)
    else:
        pd_direct = pd_e2

    route_direct = s_direct * pd_direct
    route_e2 = s_chain * pd_e2
    if abs(route_direct) != abs(route_e2):
        raise RouteMismatch('Direct and spectral evaluations disagree', route_direct=route_direct, route_e2=route_e2)

    nu = mu_norm(cfg).norm(DetElement.standard(ck.space))
    tau_squared = nu / abs(route_direct)
    logger.info('Squared torsion %s for cohomology of dimensions %s', tau_squared, h.dims)

    return TorsionReport(tau_squared, h.basis(), k.basis(), route_direct, route_e2, pd_direct, nu,
                         _diagnostics(cfg, pages, pairing, route_direct, route_e2))


def leading_basis(cfg, system, basis=None):
    """
    Second page representatives of the cochains, read as cocycles of the fibre cohomology system.
    :return: (basis of the system cochains by parity, scalar c with second page = c * h)
    """
    first = cfg.cochains
    h = spectral.Cohomology(first, basis)
    second_page = first.page(2)
    target = representation.cochain_complex(system)

    result = {0: [], 1: []}
    for (p, q) in second_page.keys():
        entry = second_page.entry(p, q)
        for vector in entry.representatives:
            leading = first.leading_component(vector, p)
            values = representation.fiber_cocycle_coordinates(cfg.rep, leading)
            full = target.full_vector(values)
            result[entry.total_parity].append(target.restrict(entry.total_parity, full))
    return result, spectral.page_transfer(first, 2, h.basis())


def torsion_via_cohomology_bundle(cfg, basis=None):
    """
    Squared torsion computed on the local system of fibre cohomologies.
    """
    if cfg.rep.is_local_system():
        return torsion_direct(cfg, basis)

    system = representation.fiber_cohomology_system(cfg.rep)
    reduced = TorsionConfig(system, mu=cfg.mu)
    leading, scalar = leading_basis(cfg, system, basis)
    report = torsion_direct(reduced, leading)

    h = spectral.Cohomology(cfg.cochains, basis)
    diagnostics = dict(report.diagnostics)
    diagnostics['via_cohomology_bundle'] = True
    diagnostics['page_transfer'] = scalar
    return TorsionReport(report.tau_squared / (scalar * scalar), h.basis(), report.dual_basis,
                         report.route_direct * scalar * scalar, report.route_e2 * scalar * scalar,
                         report.pd, report.nu, diagnostics)


def sparse_cohomology_scalar(layout, columns, basis):
    """
    The scalar of :func:`graded.det_cohomology` for a complex given by sparse columns, up to sign.

    In each parity the boundaries are the images of independent columns of the differential and
    their lifts are the matching unit vectors, so ``det [b, h, lifts]`` is the determinant of ``[b, h]``
    on the rows that are not lifts.
    :param layout: CochainLayout of the complex
    :param columns: columns of the differential, see :func:`representation.sparse_differential`
    :param basis: cohomology representatives by parity, in full coordinates
    :raises DegenerateWedge: if basis does not represent a basis of the cohomology.
    """
    positions = {0: range(layout.even_count), 1: range(layout.even_count, layout.size)}
    lifts = dict((parity, [positions[parity][index]
                           for index in linalg.independent_columns([columns[col] for col in positions[parity]])])
                 for parity in PARITIES)

    determinants = {}
    for parity in PARITIES:
        lifted = set(lifts[parity])
        index = dict((row, count) for count, row in enumerate(row for row in positions[parity] if row not in lifted))
        square = [dict((index[row], value) for row, value in columns[col].items() if row in index)
                  for col in lifts[(parity + 1) % 2]]
        expected = len(index) - len(square)
        if len(basis[parity]) != expected:
            raise DegenerateWedge('Cohomology basis of parity %s has %s vectors, expected %s'
                                  % (parity, len(basis[parity]), expected), parity=parity)
        square.extend(dict((index[row], value) for row, value in enumerate(vector) if value and row in index)
                      for vector in basis[parity])
        determinants[parity] = linalg.sparse_det(square, len(index))
        if not determinants[parity]:
            raise DegenerateWedge('Cohomology basis of parity %s is dependent modulo boundaries' % parity,
                                  parity=parity)
    return determinants[1] / determinants[0]


def torsion_sparse(cfg, basis, dual_basis):
    """
    Squared torsion of a local system computed by sparse column reduction, for subdivided complexes
    too large for the dense cochain complexes of :func:`torsion_direct`.  Only the direct route is taken.
    :param basis: cohomology representatives of the representation by parity
    :param dual_basis: cohomology representatives of the dual by parity
    :raises NotLocalSystem: unless the representation and its dual are local systems.
    :return: TorsionReport
    """
    n = cfg.complex.dimension
    if n % 2 == 0:
        raise OddDimensionRequired('Torsion needs an odd dimensional manifold, received dimension %s' % n,
                                   dimension=n)
    cycle = cfg.validate()
    if not is_chain_level(cfg):
        raise NotLocalSystem('Sparse torsion needs local systems on both sides')

    layout = representation.CochainLayout(cfg.rep)
    dual_layout = representation.CochainLayout(cfg.dual)
    h = dict((parity, [layout.embed(parity, vector) for vector in basis[parity]]) for parity in PARITIES)
    k = dict((parity, [dual_layout.embed(parity, vector) for vector in dual_basis[parity]]) for parity in PARITIES)

    scalar = (sparse_cohomology_scalar(layout, representation.sparse_differential(cfg.rep, layout), h)
              * sparse_cohomology_scalar(dual_layout, representation.sparse_differential(cfg.dual, dual_layout), k))
    pd = _block_ratio(dict((parity, representation.cup_pairing_values(cycle, cfg.rep, dual_layout, layout, k[parity],
                                                                      h[(parity + 1) % 2]))
                           for parity in PARITIES))

    route = scalar * pd
    nu = ONE / abs(_reference_coefficient(cfg))
    tau_squared = nu / abs(route)
    logger.info('Squared torsion %s from sparse elimination on %s cochains', tau_squared, layout.size)
    return TorsionReport(tau_squared, basis, dual_basis, route, None, pd, nu,
                         {'local_system': True, 'sparse': True})


def berezinian(g):
    """
    ``det g_even / det g_odd`` for a parity preserving change of basis.
    :param g: dictionary parity -> square Matrix
    """
    even, odd = linalg.det(g[0]), linalg.det(g[1])
    if not even or not odd:
        raise DegenerateWedge('Change of basis is not invertible')
    return even / odd


def rebase(basis, g):
    """
    The basis whose j-th vector of each parity is ``sum_i g[i, j] * basis[i]``.
    The squared torsion of the result is the squared torsion of basis times ``berezinian(g) ** 2``.
    """
    result = {}
    for parity in PARITIES:
        vectors = basis[parity]
        matrix = g[parity]
        if matrix.shape != (len(vectors), len(vectors)):
            raise ValueError('Change of basis of shape %s for %s vectors' % (matrix.shape, len(vectors)))
        result[parity] = [Matrix.from_columns(vectors, len(vectors[0])).apply(matrix.column(j))
                          for j in range(len(vectors))]
    return result


def _compare(name, expected, actual, detail=None):
    return CheckResult(name, expected == actual, expected, actual, detail)


def _as_local_system(rep):
    return rep if isinstance(rep, representation.LocalSystem) else representation.LocalSystem.from_rep(rep)


def _subdivision_check(cfg, base_report, times, basis):
    """
    Carry the cohomology bases of the representation, or of its fibre cohomology system, and of the dual
    across the subdivisions and compare the sparse torsion there with the torsion of the base.  Torsion
    with non-constant density weights is compared with constant weights on both sides.
    """
    uniform = len(set(cfg.mu)) == 1
    weight = cfg.mu[0] if uniform else ONE
    if is_chain_level(cfg):
        base_cfg = TorsionConfig(cfg.rep, cfg.dual, weight)
        if uniform:
            report = base_report
        else:
            report = torsion_direct(base_cfg, basis if basis is not None else base_report.basis)
    else:
        system = cfg.rep if cfg.rep.is_local_system() else representation.fiber_cohomology_system(cfg.rep)
        base_cfg = TorsionConfig(system, mu=weight)
        current_basis = basis if system is cfg.rep else leading_basis(cfg, system, basis)[0]
        report = torsion_direct(base_cfg, current_basis)

    current, dual_current = _as_local_system(base_cfg.rep), _as_local_system(base_cfg.dual)
    layout, dual_layout = representation.CochainLayout(current), representation.CochainLayout(dual_current)
    h = dict((parity, [layout.embed(parity, vector) for vector in report.basis[parity]]) for parity in PARITIES)
    k = dict((parity, [dual_layout.embed(parity, vector) for vector in report.dual_basis[parity]])
             for parity in PARITIES)
    for _ in range(times):
        subdivision, refined = representation.subdivide_local_system(current)
        _, dual_refined = representation.subdivide_local_system(dual_current, subdivision)
        refined_layout = representation.CochainLayout(refined)
        dual_refined_layout = representation.CochainLayout(dual_refined)
        h = dict((parity, representation.subdivide_cochains(subdivision, current, layout, refined_layout, h[parity]))
                 for parity in PARITIES)
        k = dict((parity, representation.subdivide_cochains(subdivision, dual_current, dual_layout,
                                                            dual_refined_layout, k[parity]))
                 for parity in PARITIES)
        current, dual_current = refined, dual_refined
        layout, dual_layout = refined_layout, dual_refined_layout

    refined_cfg = TorsionConfig(current, dual_current, weight)
    actual = torsion_sparse(refined_cfg,
                            dict((parity, [layout.restrict(parity, vector) for vector in h[parity]])
                                 for parity in PARITIES),
                            dict((parity, [dual_layout.restrict(parity, vector) for vector in k[parity]])
                                 for parity in PARITIES)).tau_squared
    detail = {'subdivisions': times}
    if not uniform:
        detail['density_weights'] = 'constant'
    return _compare(Checks.SUBDIVISION.value, report.tau_squared, actual, detail)


def _duality_check(cfg, base_report):
    swapped = cfg.swapped()
    actual = torsion_direct(swapped, base_report.dual_basis).tau_squared
    expected = base_report.pd * base_report.pd * base_report.tau_squared
    return _compare(Checks.DUALITY.value, expected, actual)


def _mu_check(cfg, base_report, scale, basis):
    scale = linalg.to_rational(scale)
    chi = simplicial.euler_characteristic(cfg.complex)
    actual = torsion_direct(cfg.rescaled(scale), basis if basis is not None else base_report.basis).tau_squared
    expected = base_report.tau_squared * abs(scale) ** (-chi)
    return _compare(Checks.MU.value, expected, actual, {'scale': scale})


def _quasi_iso_checks(cfg, base_report):
    results = []
    for phi, target_dual in cfg.morphisms:
        name = '%s:%s' % (Checks.QUASI_ISO.value, phi.name or 'morphism')
        if not representation.is_quasi_iso(phi):
            results.append(CheckResult(name, False, detail='not a quasi-isomorphism'))
            continue
        target_cfg = TorsionConfig(phi.target, target_dual, cfg.mu)
        image = representation.induced_cohomology_map(phi, base_report.basis, cfg.cochains, target_cfg.cochains)
        actual = torsion_direct(target_cfg, image).tau_squared
        results.append(_compare(name, base_report.tau_squared, actual))
    return results


def check_invariance_suite(cfg, checks=None, subdivide=1, mu_scale=7, basis=None, base_report=None):
    """
    Run the requested invariance checks against a base computation.
    :param checks: iterable of :class:`Checks` or their values; all checks when omitted
    :return: InvarianceReport
    """
    checks = [Checks(check) for check in (checks if checks is not None else [check.value for check in Checks])]
    report = InvarianceReport()
    base_report = base_report or torsion_direct(cfg, basis)

    for check in checks:
        try:
            if check is Checks.SUBDIVISION:
                report.append(_subdivision_check(cfg, base_report, subdivide, basis))
            elif check is Checks.DUALITY:
                report.append(_duality_check(cfg, base_report))
            elif check is Checks.MU:
                report.append(_mu_check(cfg, base_report, mu_scale, basis))
            elif check is Checks.QUASI_ISO:
                for result in _quasi_iso_checks(cfg, base_report):
                    report.append(result)
        except SupertorsionError as e:
            logger.error('Check %s raised %s', check.value, e.code.value)
            report.append(CheckResult(check.value, False, detail=e.to_dict()))

    return report
