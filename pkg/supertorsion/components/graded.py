"""
Z/2-graded vector spaces, their determinant lines and the canonical isomorphisms between them.

A determinant element of a graded space ``V = V0 + V1`` is stored as a coefficient together with a
wedge of even vectors and a wedge of odd vectors; it represents ``c * (v_1 ^ ... ^ v_a) / (w_1 ^ ... ^ w_b)``.
The functions :func:`det_ses`, :func:`det_cohomology` and :func:`det_filtered` return the scalar that
relates the standard element of the middle space to the element built from the bases of the pieces.
Those scalars are canonical up to a sign which callers are expected to discard.
"""
import logging

from supertorsion.components.errors import DegenerateWedge, NotExact, NoSolution
from supertorsion.components import linalg
from supertorsion.components.linalg import Matrix, ONE

logger = logging.getLogger(__name__)

PARITIES = (0, 1)


class GradedSpace:
    """
    Finite dimensional Z/2-graded vector space with labelled standard bases.
    """

    def __init__(self, even_basis=(), odd_basis=()):
        self._even = tuple(even_basis)
        self._odd = tuple(odd_basis)
        labels = self._even + self._odd
        if len(set(labels)) != len(labels):
            raise ValueError('Basis labels of a graded space must be unique')
        self._parities = dict([(label, 0) for label in self._even] + [(label, 1) for label in self._odd])

    @classmethod
    def of_dimension(cls, even_dim, odd_dim, tag='e'):
        return cls([(tag, 0, index) for index in range(even_dim)], [(tag, 1, index) for index in range(odd_dim)])

    @property
    def even_basis(self):
        return self._even

    @property
    def odd_basis(self):
        return self._odd

    @property
    def even_dim(self):
        return len(self._even)

    @property
    def odd_dim(self):
        return len(self._odd)

    @property
    def dims(self):
        return self.even_dim, self.odd_dim

    @property
    def dim(self):
        return self.even_dim + self.odd_dim

    @property
    def labels(self):
        return self._even + self._odd

    def basis(self, parity):
        return self._even if parity == 0 else self._odd

    def dim_of(self, parity):
        return len(self.basis(parity))

    def parity_of(self, label):
        return self._parities[label]

    def parities(self):
        """
        Parity of each coordinate in the even-then-odd ordering.
        """
        return [0] * self.even_dim + [1] * self.odd_dim

    def __eq__(self, other):
        if not isinstance(other, GradedSpace):
            return NotImplemented
        return self._even == other._even and self._odd == other._odd

    def __hash__(self):
        return hash((self._even, self._odd))

    def __repr__(self):
        return 'GradedSpace(%s|%s)' % self.dims


def parity_shift(space):
    return GradedSpace(space.odd_basis, space.even_basis)


def dual_space(space):
    return GradedSpace([('*', label) for label in space.even_basis], [('*', label) for label in space.odd_basis])


class GradedMap:
    """
    Linear map between graded spaces stored as four blocks ``(target parity, source parity)``.
    """

    def __init__(self, source, target, parity, blocks=None):
        if parity not in PARITIES:
            raise ValueError('Parity must be 0 or 1')
        self._source = source
        self._target = target
        self._parity = parity
        self._blocks = {}
        blocks = blocks or {}

        for target_parity in PARITIES:
            for source_parity in PARITIES:
                shape = (target.dim_of(target_parity), source.dim_of(source_parity))
                block = blocks.get((target_parity, source_parity))
                if block is None:
                    block = Matrix.zeros(*shape)
                if block.shape != shape:
                    raise ValueError('Block %s has shape %s, expected %s'
                                     % ((target_parity, source_parity), block.shape, shape))
                if (target_parity + source_parity) % 2 != parity and not block.is_zero():
                    raise ValueError('Block %s is incompatible with parity %s' % ((target_parity, source_parity), parity))
                self._blocks[(target_parity, source_parity)] = block

    @classmethod
    def from_matrix(cls, source, target, matrix, parity):
        """
        Split a matrix written in even-then-odd coordinates into blocks.
        """
        if matrix.shape != (target.dim, source.dim):
            raise ValueError('Matrix shape %s does not match %s -> %s' % (matrix.shape, source, target))
        rows = {0: range(target.even_dim), 1: range(target.even_dim, target.dim)}
        cols = {0: range(source.even_dim), 1: range(source.even_dim, source.dim)}
        blocks = {}
        for target_parity in PARITIES:
            for source_parity in PARITIES:
                blocks[(target_parity, source_parity)] = matrix.submatrix(rows[target_parity], cols[source_parity])
        return cls(source, target, parity, blocks)

    @property
    def source(self):
        return self._source

    @property
    def target(self):
        return self._target

    @property
    def parity(self):
        return self._parity

    def block(self, target_parity, source_parity):
        return self._blocks[(target_parity, source_parity)]

    def out_of(self, source_parity):
        """
        The only possibly non-zero block leaving the given parity.
        """
        return self._blocks[((source_parity + self._parity) % 2, source_parity)]

    def full_matrix(self):
        top = self._blocks[(0, 0)].hstack(self._blocks[(0, 1)])
        bottom = self._blocks[(1, 0)].hstack(self._blocks[(1, 1)])
        return top.vstack(bottom)

    def compose(self, other):
        """
        ``self o other``.
        """
        if other.target != self._source:
            raise ValueError('Cannot compose maps with mismatched spaces')
        return GradedMap.from_matrix(other.source, self._target, self.full_matrix() * other.full_matrix(),
                                     (self._parity + other.parity) % 2)

    def is_zero(self):
        return all(block.is_zero() for block in self._blocks.values())


class DetElement:
    """
    Element of the determinant line of a graded space.
    """

    def __init__(self, space, even_wedge, odd_wedge, coefficient=ONE):
        even_wedge = [list(vector) for vector in even_wedge]
        odd_wedge = [list(vector) for vector in odd_wedge]
        for parity, wedge in ((0, even_wedge), (1, odd_wedge)):
            if len(wedge) != space.dim_of(parity):
                raise DegenerateWedge('Wedge of %s vectors in a space of dimension %s'
                                      % (len(wedge), space.dim_of(parity)), parity=parity)
            for vector in wedge:
                if len(vector) != space.dim_of(parity):
                    raise ValueError('Vector of length %s in parity %s of %s' % (len(vector), parity, space))
        if not coefficient:
            raise DegenerateWedge('Zero coefficient')

        self._space = space
        self._even = even_wedge
        self._odd = odd_wedge
        self._coefficient = linalg.to_rational(coefficient)

    @classmethod
    def standard(cls, space, coefficient=ONE):
        even = [linalg.unit_vector(space.even_dim, index) for index in range(space.even_dim)]
        odd = [linalg.unit_vector(space.odd_dim, index) for index in range(space.odd_dim)]
        return cls(space, even, odd, coefficient)

    @property
    def space(self):
        return self._space

    @property
    def coefficient(self):
        return self._coefficient

    def wedge(self, parity):
        return self._even if parity == 0 else self._odd

    def scaled(self, scalar):
        return DetElement(self._space, self._even, self._odd, self._coefficient * scalar)

    def wedge_determinant(self, parity):
        return linalg.det(Matrix.from_columns(self.wedge(parity), self._space.dim_of(parity)))


def ratio(x, y):
    """
    The scalar r with ``x = r * y``.
    :raises DegenerateWedge: if either element has a dependent wedge.
    """
    if x.space != y.space:
        raise ValueError('Determinant elements live in different spaces')

    determinants = {}
    for name, element in (('x', x), ('y', y)):
        for parity in PARITIES:
            value = element.wedge_determinant(parity)
            if not value:
                raise DegenerateWedge('Wedge %s of parity %s is dependent' % (name, parity), parity=parity)
            determinants[(name, parity)] = value

    return ((x.coefficient / y.coefficient)
            * (determinants[('x', 0)] / determinants[('y', 0)])
            / (determinants[('x', 1)] / determinants[('y', 1)]))


class DetNorm:
    """
    Norm on a determinant line, normalised by a reference element of norm one.
    """

    def __init__(self, reference):
        self._reference = reference

    @property
    def reference(self):
        return self._reference

    def norm(self, element):
        return abs(ratio(element, self._reference))


def _matrix(vectors, length):
    return Matrix.from_columns(vectors, length)


def det_ses(inclusion, projection):
    """
    Scalar s such that ``std(V) = s * (std(U) (x) std(W))`` for the short exact sequence
    ``0 -> U -> V -> W -> 0`` given by two even maps written in the standard bases.
    :raises NotExact: if the sequence is not exact.
    """
    if inclusion.parity != 0 or projection.parity != 0:
        raise NotExact('Maps of a short exact sequence must be even')
    if inclusion.target != projection.source:
        raise NotExact('Inclusion and projection do not share the middle space')

    scalars = {}
    for parity in PARITIES:
        u_dim = inclusion.source.dim_of(parity)
        v_dim = inclusion.target.dim_of(parity)
        w_dim = projection.target.dim_of(parity)
        into = inclusion.block(parity, parity)
        onto = projection.block(parity, parity)

        if u_dim + w_dim != v_dim:
            raise NotExact('Dimensions %s + %s != %s in parity %s' % (u_dim, w_dim, v_dim, parity), parity=parity)
        if not (onto * into).is_zero():
            raise NotExact('Composite of the sequence is non-zero in parity %s' % parity, parity=parity)
        if linalg.rank(into) != u_dim:
            raise NotExact('Inclusion is not injective in parity %s' % parity, parity=parity)

        try:
            lifts = linalg.solve_many(onto, [linalg.unit_vector(w_dim, index) for index in range(w_dim)])
        except NoSolution:
            raise NotExact('Projection is not surjective in parity %s' % parity, parity=parity)

        scalars[parity] = linalg.det(into.hstack(_matrix(lifts, v_dim)))

    if not scalars[0] or not scalars[1]:
        raise NotExact('Sequence is not exact in the middle')

    return scalars[1] / scalars[0]


def cycles_and_boundaries(space, differential):
    """
    Bases of the cycles and the boundaries in each parity, in the coordinates of that parity.
    :return: (cycles, boundaries) dictionaries keyed by parity
    """
    cycles = {}
    boundaries = {}
    for parity in PARITIES:
        cycles[parity] = linalg.kernel_basis(differential.out_of(parity))
        boundaries[parity] = linalg.image_basis(differential.out_of((parity + 1) % 2))
    return cycles, boundaries


def cohomology_representatives(space, differential):
    """
    Cycles completing a boundary basis to a cycle basis, one family for each parity.
    """
    cycles, boundaries = cycles_and_boundaries(space, differential)
    return dict((parity, linalg.complement_basis(boundaries[parity], cycles[parity], space.dim_of(parity)))
                for parity in PARITIES)


def _labelled(tag, even_count, odd_count):
    return GradedSpace.of_dimension(even_count, odd_count, tag)


def det_cohomology(complex_, h_basis=None):
    """
    Scalar s such that ``std(C) = s * det(h)`` under the canonical isomorphism ``det C = det H(C)``.

    The scalar is assembled from the two short exact sequences ``B -> Z -> H`` and ``Z -> C -> Pi B``.
    :param complex_: anything with ``space`` and an odd ``differential``.
    :param h_basis: dictionary parity -> cocycles representing a basis of the cohomology.
    :raises DegenerateWedge: if h_basis does not represent a basis.
    """
    space = complex_.space
    differential = complex_.differential
    cycles, boundaries = cycles_and_boundaries(space, differential)

    if h_basis is None:
        h_basis = dict((parity, linalg.complement_basis(boundaries[parity], cycles[parity], space.dim_of(parity)))
                       for parity in PARITIES)

    for parity in PARITIES:
        expected = len(cycles[parity]) - len(boundaries[parity])
        if len(h_basis[parity]) != expected:
            raise DegenerateWedge('Cohomology basis of parity %s has %s vectors, expected %s'
                                  % (parity, len(h_basis[parity]), expected), parity=parity)

    z_space = _labelled('z', len(cycles[0]), len(cycles[1]))
    b_space = _labelled('b', len(boundaries[0]), len(boundaries[1]))
    h_space = _labelled('h', len(h_basis[0]), len(h_basis[1]))
    shifted_b = parity_shift(b_space)

    # B -> Z -> H, written in the cycle basis.
    b_into_z = {}
    z_onto_h = {}
    for parity in PARITIES:
        length = space.dim_of(parity)
        try:
            b_into_z[(parity, parity)] = _matrix(linalg.coordinates(cycles[parity], boundaries[parity], length),
                                                 len(cycles[parity]))
            adapted = boundaries[parity] + h_basis[parity]
            if linalg.rank(_matrix(adapted, length)) != len(adapted):
                raise DegenerateWedge('Cohomology basis of parity %s is dependent modulo boundaries' % parity,
                                      parity=parity)
            coords = linalg.coordinates(adapted, cycles[parity], length)
        except NoSolution:
            raise DegenerateWedge('Cohomology basis of parity %s does not consist of cocycles' % parity,
                                  parity=parity)
        skip = len(boundaries[parity])
        z_onto_h[(parity, parity)] = _matrix([vector[skip:] for vector in coords], len(h_basis[parity]))

    first = det_ses(GradedMap(b_space, z_space, 0, b_into_z), GradedMap(z_space, h_space, 0, z_onto_h))

    # Z -> C -> Pi B, the differential read in the boundary basis of the next parity.
    z_into_c = {}
    c_onto_b = {}
    for parity in PARITIES:
        following = (parity + 1) % 2
        z_into_c[(parity, parity)] = _matrix(cycles[parity], space.dim_of(parity))
        images = differential.out_of(parity).columns()
        coords = linalg.coordinates(boundaries[following], images, space.dim_of(following))
        c_onto_b[(parity, parity)] = _matrix(coords, len(boundaries[following]))

    second = det_ses(GradedMap(z_space, space, 0, z_into_c), GradedMap(space, shifted_b, 0, c_onto_b))

    logger.debug('det_cohomology: dims %s, scalars %s and %s', space.dims, first, second)
    return first * second


def filtration_pieces(space, levels):
    """
    Bases of the successive quotients of a decreasing filtration.
    :param levels: list of (even spanning vectors, odd spanning vectors) for F_0 containing F_1 and so on
    :return: list of (even representatives, odd representatives)
    """
    pieces = []
    for index, level in enumerate(levels):
        following = levels[index + 1] if index + 1 < len(levels) else ([], [])
        piece = []
        for parity in PARITIES:
            length = space.dim_of(parity)
            below = linalg.image_basis(_matrix(following[parity], length)) if following[parity] else []
            piece.append(linalg.complement_basis(below, level[parity], length))
        pieces.append(tuple(piece))
    return pieces


def det_filtered(space, levels=None, pieces=None):
    """
    Scalar s such that ``std(V) = s * (piece_0 (x) piece_1 (x) ...)`` for a filtered space.
    :param levels: the filtration, see :func:`filtration_pieces`
    :param pieces: bases of the graded pieces, used instead of levels when given
    :raises DegenerateWedge: if the pieces do not assemble into a basis.
    """
    if pieces is None:
        if levels is None:
            raise ValueError('Either levels or pieces is required')
        pieces = filtration_pieces(space, levels)

    determinants = {}
    for parity in PARITIES:
        vectors = [vector for piece in pieces for vector in piece[parity]]
        if len(vectors) != space.dim_of(parity):
            raise DegenerateWedge('Graded pieces provide %s vectors in parity %s, expected %s'
                                  % (len(vectors), parity, space.dim_of(parity)), parity=parity)
        determinants[parity] = linalg.det(_matrix(vectors, space.dim_of(parity)))
        if not determinants[parity]:
            raise DegenerateWedge('Graded pieces are dependent in parity %s' % parity, parity=parity)

    return determinants[1] / determinants[0]
