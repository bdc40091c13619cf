"""
Z/2-graded complexes, their cohomology and the spectral sequence of a finite decreasing filtration.

A filtered complex assigns an integer degree to every standard basis vector; the filtration level
``F_p`` is spanned by the vectors of degree at least p and the differential may only raise degree.
Pages are computed directly from the definition: for total parity t,

* ``Z_r^p`` are the vectors a of ``F_p`` with ``D a`` in ``F_{p+r}``,
* the relations are spanned by ``F_{p+1}`` and ``D(F_{p-r+1})``,

and ``E_r^{p,q}`` is the quotient for fibre parity ``q = t - p``.  Every entry keeps explicit
representatives so that later pages, pairings and torsion computations can be expressed in
coordinates.
"""
import logging

from supertorsion.components import graded
from supertorsion.components import linalg
from supertorsion.components.errors import NotAComplex, NotSkewAdjoint, DegeneratePairing
from supertorsion.components.graded import GradedSpace, GradedMap, PARITIES
from supertorsion.components.linalg import Matrix, ZERO

logger = logging.getLogger(__name__)


class Z2Complex:
    """
    Graded space with an odd square-zero differential.
    """

    def __init__(self, space, differential, z_degree=None, validate=True):
        if differential.parity != 1:
            raise NotAComplex('Differential must be odd')
        if differential.source != space or differential.target != space:
            raise NotAComplex('Differential must be an endomorphism of the space')

        self._space = space
        self._differential = differential
        self._matrix = differential.full_matrix()
        self._parities = space.parities()
        self._degrees = None

        if z_degree is not None:
            try:
                self._degrees = [z_degree[label] for label in space.labels]
            except KeyError as e:
                raise NotAComplex('Missing degree for basis vector %s' % (e.args[0],))

        if validate:
            if not (self._matrix * self._matrix).is_zero():
                raise NotAComplex('Differential does not square to zero')
            if self._degrees is not None:
                for row in range(self._matrix.rows):
                    for col in range(self._matrix.cols):
                        if self._matrix[row, col] and self._degrees[row] < self._degrees[col]:
                            raise NotAComplex('Differential lowers the filtration degree',
                                              source=space.labels[col], target=space.labels[row])

    @classmethod
    def from_matrix(cls, space, matrix, z_degree=None, validate=True):
        return cls(space, GradedMap.from_matrix(space, space, matrix, 1), z_degree, validate)

    @property
    def space(self):
        return self._space

    @property
    def differential(self):
        return self._differential

    @property
    def matrix(self):
        return self._matrix

    @property
    def size(self):
        return self._space.dim

    @property
    def dims(self):
        return self._space.dims

    def parity_at(self, index):
        return self._parities[index]

    def degree_at(self, index):
        return self._degrees[index]

    def embed(self, parity, vector):
        """
        Full coordinates of a vector given in the coordinates of one parity.
        """
        even_dim, odd_dim = self._space.dims
        if parity == 0:
            return list(vector) + [ZERO] * odd_dim
        return [ZERO] * even_dim + list(vector)

    def restrict(self, parity, vector):
        even_dim = self._space.even_dim
        if parity == 0:
            return list(vector[:even_dim])
        return list(vector[even_dim:])


class FilteredComplex(Z2Complex):
    """
    Complex with a finite decreasing filtration ``F_0 = C`` down to ``F_{top+1} = 0``.
    """

    def __init__(self, space, differential, z_degree, top=None, validate=True):
        super(FilteredComplex, self).__init__(space, differential, z_degree, validate)
        highest = max(self._degrees) if self._degrees else 0
        if min(self._degrees or [0]) < 0:
            raise NotAComplex('Filtration degrees must be non-negative')
        self._top = highest if top is None else top
        if self._top < highest:
            raise NotAComplex('Filtration length %s is below the highest degree %s' % (self._top, highest))
        self._pages = {}

    @classmethod
    def from_matrix(cls, space, matrix, z_degree, top=None, validate=True):
        return cls(space, GradedMap.from_matrix(space, space, matrix, 1), z_degree, top, validate)

    @property
    def top(self):
        return self._top

    def indices(self, parity, at_least=0, below=None):
        return [index for index in range(self.size)
                if self._parities[index] == parity and self._degrees[index] >= at_least
                and (below is None or self._degrees[index] < below)]

    def page(self, r):
        if r not in self._pages:
            self._pages[r] = _compute_page(self, r)
        return self._pages[r]

    def limit_page(self):
        return self.page(self._top + 1)


def direct_sum_complex(first, second, tags=('E', 'E*')):
    """
    Filtered direct sum; coordinates of each parity list the first summand before the second.
    """
    space = GradedSpace([(tags[0], label) for label in first.space.even_basis]
                        + [(tags[1], label) for label in second.space.even_basis],
                        [(tags[0], label) for label in first.space.odd_basis]
                        + [(tags[1], label) for label in second.space.odd_basis])
    blocks = {}
    for target in PARITIES:
        for source in PARITIES:
            blocks[(target, source)] = Matrix.block_diagonal(first.differential.block(target, source),
                                                              second.differential.block(target, source))
    degrees = {}
    for tag, summand in zip(tags, (first, second)):
        for index, label in enumerate(summand.space.labels):
            degrees[(tag, label)] = summand.degree_at(index)
    return FilteredComplex(space, GradedMap(space, space, 1, blocks), degrees,
                           top=max(first.top, second.top), validate=False)


class Cohomology:
    """
    Cohomology of a complex with chosen cocycle representatives.
    """

    def __init__(self, complex_, representatives=None):
        self._complex = complex_
        cycles, boundaries = graded.cycles_and_boundaries(complex_.space, complex_.differential)
        self._boundaries = boundaries
        if representatives is None:
            representatives = dict((parity, linalg.complement_basis(boundaries[parity], cycles[parity],
                                                                     complex_.space.dim_of(parity)))
                                   for parity in PARITIES)
        self._representatives = dict((parity, [list(vector) for vector in representatives[parity]])
                                     for parity in PARITIES)
        self._space = GradedSpace.of_dimension(len(self._representatives[0]), len(self._representatives[1]), 'h')

    @property
    def complex(self):
        return self._complex

    @property
    def space(self):
        return self._space

    @property
    def dims(self):
        return self._space.dims

    def representatives(self, parity):
        return self._representatives[parity]

    def boundaries(self, parity):
        return self._boundaries[parity]

    def basis(self):
        return dict(self._representatives)

    def project(self, parity, vectors):
        """
        Cohomology coordinates of cocycles given in the coordinates of one parity.
        :raises NoSolution: if a vector is not a cocycle.
        """
        adapted = self._boundaries[parity] + self._representatives[parity]
        skip = len(self._boundaries[parity])
        coords = linalg.coordinates(adapted, vectors, self._complex.space.dim_of(parity))
        return [vector[skip:] for vector in coords]


def cohomology(complex_, representatives=None):
    return Cohomology(complex_, representatives)


class PageEntry:
    """
    One entry ``E_r^{p,q}`` with representatives in the full coordinates of the filtered complex.
    """

    def __init__(self, p, q, representatives, relations, size):
        self._p = p
        self._q = q
        self._representatives = representatives
        self._relations = relations
        self._size = size

    @property
    def p(self):
        return self._p

    @property
    def q(self):
        return self._q

    @property
    def total_parity(self):
        return (self._p + self._q) % 2

    @property
    def representatives(self):
        return self._representatives

    @property
    def relations(self):
        return self._relations

    @property
    def dim(self):
        return len(self._representatives)

    def coordinates(self, vectors):
        """
        :raises NoSolution: if a vector is not in the numerator of the entry.
        """
        skip = len(self._relations)
        coords = linalg.coordinates(self._relations + self._representatives, vectors, self._size)
        return [vector[skip:] for vector in coords]


class Page:
    """
    A page of the spectral sequence together with its differential.
    """

    def __init__(self, r, top, entries, differentials):
        self._r = r
        self._top = top
        self._entries = entries
        self._differentials = differentials
        self._offsets = {}
        counters = {0: 0, 1: 0}
        for key in self.keys():
            entry = entries[key]
            self._offsets[key] = counters[entry.total_parity]
            counters[entry.total_parity] += entry.dim
        self._totals = counters
        self._complex = None

    @property
    def r(self):
        return self._r

    @property
    def top(self):
        return self._top

    def keys(self):
        return sorted(self._entries)

    def entry(self, p, q):
        return self._entries[(p, q)]

    def entry_of_total(self, p, total_parity):
        return self._entries[(p, (total_parity - p) % 2)]

    def target_of(self, p, q):
        return p + self._r, (q - self._r + 1) % 2

    def differential(self, p, q):
        return self._differentials[(p, q)]

    def dims(self):
        return dict((key, self._entries[key].dim) for key in self.keys())

    def total_dims(self):
        return self._totals[0], self._totals[1]

    def offset(self, p, q):
        return self._offsets[(p, q)]

    def complex_vector(self, p, q, coords):
        """
        Coordinates in :meth:`as_complex` of a class given in the entry basis.
        """
        entry = self._entries[(p, q)]
        vector = [ZERO] * self._totals[entry.total_parity]
        offset = self._offsets[(p, q)]
        vector[offset:offset + entry.dim] = coords
        return vector

    def as_complex(self):
        """
        The page as a complex whose standard basis is the list of representatives.
        """
        if self._complex is not None:
            return self._complex

        even = []
        odd = []
        for key in self.keys():
            entry = self._entries[key]
            labels = [('E', key[0], key[1], index) for index in range(entry.dim)]
            (even if entry.total_parity == 0 else odd).extend(labels)
        space = GradedSpace(even, odd)

        position = {}
        for key in self.keys():
            entry = self._entries[key]
            base = self._offsets[key] + (0 if entry.total_parity == 0 else space.even_dim)
            position[key] = base

        data = [[ZERO] * space.dim for _ in range(space.dim)]
        for key in self.keys():
            target = self.target_of(*key)
            if target not in self._entries:
                continue
            block = self._differentials[key]
            for row in range(block.rows):
                for col in range(block.cols):
                    data[position[target] + row][position[key] + col] = block[row, col]

        self._complex = Z2Complex.from_matrix(space, Matrix.from_rows(data, space.dim),
                                              dict((label, label[1]) for label in space.labels))
        return self._complex


def _compute_page(f, r):
    size = f.size
    matrix = f.matrix
    entries = {}

    for p in range(f.top + 1):
        for t in PARITIES:
            columns = f.indices(t, at_least=p)
            constraints = f.indices((t + 1) % 2, below=p + r)
            if constraints:
                kernel = linalg.kernel_basis(matrix.submatrix(constraints, columns))
            else:
                kernel = [linalg.unit_vector(len(columns), index) for index in range(len(columns))]
            numerator = []
            for vector in kernel:
                full = [ZERO] * size
                for index, value in zip(columns, vector):
                    full[index] = value
                numerator.append(full)

            generators = [linalg.unit_vector(size, index) for index in f.indices(t, at_least=p + 1)]
            generators += [matrix.column(index) for index in f.indices((t + 1) % 2, at_least=max(p - r + 1, 0))]
            relations = linalg.image_basis(Matrix.from_columns(generators, size)) if generators else []
            representatives = linalg.complement_basis(relations, numerator, size)

            entries[(p, (t - p) % 2)] = PageEntry(p, (t - p) % 2, representatives, relations, size)

    differentials = {}
    for (p, q), entry in entries.items():
        target = (p + r, (q - r + 1) % 2)
        if target not in entries:
            differentials[(p, q)] = Matrix.zeros(0, entry.dim)
            continue
        images = [matrix.apply(vector) for vector in entry.representatives]
        coords = entries[target].coordinates(images)
        differentials[(p, q)] = Matrix.from_columns(coords, entries[target].dim)

    logger.debug('Page %s: %s', r, dict((key, entry.dim) for key, entry in sorted(entries.items())))
    return Page(r, f.top, entries, differentials)


def page(f, r):
    """
    The page ``E_r`` of a filtered complex; every r above the filtration length gives the limit page.
    """
    if r < 0:
        raise ValueError('Page index must be non-negative')
    return f.page(r)


def page_table(f):
    """
    Entry dimensions of every page up to the limit.
    """
    return [(r, f.page(r).dims()) for r in range(f.top + 2)]


def _chain_pairing_checks(first, second, pairing, top):
    if pairing.shape != (first.size, second.size):
        raise ValueError('Pairing matrix has shape %s, expected %s' % (pairing.shape, (first.size, second.size)))

    for row in range(pairing.rows):
        for col in range(pairing.cols):
            if pairing[row, col] and first.degree_at(row) + second.degree_at(col) > top:
                raise ValueError('Pairing does not respect the filtrations at %s, %s'
                                 % (first.space.labels[row], second.space.labels[col]))

    left = first.matrix.transpose() * pairing
    right = pairing * second.matrix
    for row in range(pairing.rows):
        sign = -1 if first.parity_at(row) == 0 else 1
        for col in range(pairing.cols):
            if left[row, col] != sign * right[row, col]:
                raise NotSkewAdjoint('Pairing is not skew-adjoint',
                                     basis_pair=(first.space.labels[row], second.space.labels[col]))


class PagePairing:
    """
    Pairing ``E_r^{p,q}(A) x E_r^{top-p,q}(B) -> Q`` induced by a chain level pairing.
    """

    def __init__(self, first_page, second_page, blocks):
        self._first = first_page
        self._second = second_page
        self._blocks = blocks

    @property
    def r(self):
        return self._first.r

    @property
    def first_page(self):
        return self._first

    @property
    def second_page(self):
        return self._second

    def block(self, p, q):
        return self._blocks[(p, q)]

    def keys(self):
        return sorted(self._blocks)

    def is_nondegenerate(self):
        for key in self.keys():
            block = self._blocks[key]
            if not block.is_square() or not linalg.det(block):
                return False
        return True

    def parity_matrix(self, parity):
        """
        Values of the pairing between every representative of the first page with the given total
        parity and every representative of the second page of the other parity.
        """
        first_total, second_total = self._first.total_dims(), self._second.total_dims()
        other = (parity + 1) % 2
        data = [[ZERO] * second_total[other] for _ in range(first_total[parity])]
        for (p, q) in self.keys():
            if (p + q) % 2 != parity:
                continue
            block = self._blocks[(p, q)]
            row_offset = self._first.offset(p, q)
            partner = (self._first.top - p, q)
            col_offset = self._second.offset(*partner)
            for row in range(block.rows):
                for col in range(block.cols):
                    data[row_offset + row][col_offset + col] = block[row, col]
        return Matrix.from_rows(data, second_total[other])

    def determinant_ratio(self):
        """
        ``det(P_even) / det(P_odd)``.
        :raises DegeneratePairing: if either block is singular or not square.
        """
        values = []
        for parity in PARITIES:
            matrix = self.parity_matrix(parity)
            if not matrix.is_square():
                raise DegeneratePairing('Paired pages have mismatched dimensions in parity %s' % parity,
                                        shape=matrix.shape)
            value = linalg.det(matrix)
            if not value:
                raise DegeneratePairing('Page pairing is degenerate in parity %s' % parity, parity=parity)
            values.append(value)
        return values[0] / values[1]

    def is_skew_adjoint(self):
        """
        ``<d a, b> = -(-1)^|a| <a, d b>`` on the page.
        """
        r = self.r
        top = self._first.top
        for (p, q) in self.keys():
            partner_p = top - p - r
            partner_q = (q - r + 1) % 2
            if partner_p < 0 or (partner_p, partner_q) not in self._second.dims():
                continue
            sign = -1 if (p + q) % 2 == 0 else 1
            lifted = (p + r, partner_q)
            rows = self._first.entry(p, q).dim
            cols = self._second.entry(partner_p, partner_q).dim
            if lifted in self._blocks:
                left = self._first.differential(p, q).transpose() * self._blocks[lifted]
            else:
                left = Matrix.zeros(rows, cols)
            right = self._blocks[(p, q)] * self._second.differential(partner_p, partner_q)
            if left != right.scale(sign):
                return False
        return True


def page_pairing(first, second, pairing, r, validate=True):
    """
    Induced pairing on the r-th pages of two filtered complexes of the same length.
    :param pairing: matrix of the chain level pairing, rows indexed by the first complex
    :raises NotSkewAdjoint: if validation finds a pair of basis vectors violating skew-adjointness.
    """
    top = first.top
    if validate:
        _chain_pairing_checks(first, second, pairing, top)

    first_page = first.page(r)
    second_page = second.page(r)
    transposed = pairing.transpose()
    blocks = {}
    for (p, q) in first_page.keys():
        entry = first_page.entry(p, q)
        partner = (top - p, q)
        if partner not in second_page.dims():
            blocks[(p, q)] = Matrix.zeros(entry.dim, 0)
            continue
        other = second_page.entry(*partner)
        data = []
        for a in entry.representatives:
            weighted = transposed.apply(a)
            data.append([linalg.dot(weighted, b) for b in other.representatives])
        blocks[(p, q)] = Matrix.from_rows(data, other.dim)
    return PagePairing(first_page, second_page, blocks)


def _initial_pieces(f):
    first = f.page(0)
    pieces = []
    for p in range(f.top + 1):
        piece = []
        for t in PARITIES:
            piece.append([f.restrict(t, vector) for vector in first.entry_of_total(p, t).representatives])
        pieces.append(tuple(piece))
    return pieces


def page_step(f, r):
    """
    Scalar s with ``E_r = s * E_{r+1}`` for the chosen representatives of both pages.
    """
    current = f.page(r)
    following = f.page(r + 1)
    h_basis = {0: [], 1: []}
    for key in current.keys():
        entry = following.entry(*key)
        if not entry.dim:
            continue
        coords = current.entry(*key).coordinates(entry.representatives)
        for vector in coords:
            h_basis[entry.total_parity].append(current.complex_vector(key[0], key[1], vector))
    return graded.det_cohomology(current.as_complex(), h_basis)


def limit_scalar(f, cohomology_):
    """
    Scalar s with ``std(H) = s * E_infinity`` where H is written in the given cohomology basis.
    """
    limit = f.limit_page()
    pieces = []
    for p in range(f.top + 1):
        piece = []
        for t in PARITIES:
            vectors = [f.restrict(t, vector) for vector in limit.entry_of_total(p, t).representatives]
            piece.append(cohomology_.project(t, vectors) if vectors else [])
        pieces.append(tuple(piece))
    return graded.det_filtered(cohomology_.space, pieces=pieces)


def page_transfer(f, start, h_basis=None):
    """
    Scalar c with ``E_start = c * h``, composing the page steps from start onwards with the limit.
    """
    cohomology_ = Cohomology(f, h_basis)
    scalar = linalg.ONE
    for r in range(start, f.top + 1):
        scalar *= page_step(f, r)
    return scalar / limit_scalar(f, cohomology_)


def det_chain(f, h_basis=None):
    """
    The scalar of :func:`supertorsion.components.graded.det_cohomology` obtained through the
    spectral sequence instead of directly; both agree up to sign.
    """
    scalar = graded.det_filtered(f.space, pieces=_initial_pieces(f)) * page_transfer(f, 0, h_basis)
    logger.debug('det_chain over %s pages: %s', f.top + 2, scalar)
    return scalar
