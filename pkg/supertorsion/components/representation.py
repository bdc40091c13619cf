"""
Z/2-graded representations up to homotopy of the simplices of an ordered complex, their twisted
cochain complexes, morphisms and duals.

A representation puts a graded fibre on every vertex and an operator on every simplex.  The
operator of a k-simplex maps the fibre of its last vertex to the fibre of its first vertex and has
parity ``(k + 1) mod 2``; operators that are not given are zero.  The twisted differential is

    (D F)(s) = sum_{i=1..k} (-1)^i F(d_i s) + sum_{j=0..k} (-1)^{((j+1) mod 2)(k-j)} w_j(back_j s) F(front_{k-j} s)

and squares to zero exactly when every residual computed by :func:`mc_residual` vanishes.
"""
import logging

from supertorsion.components import linalg
from supertorsion.components.errors import (BaseMismatch, DualDataRequired, DualIncompatible, InducedMapNotInvertible,
                                            NotChainMap, NotLocalSystem, Violation, NoSolution)
from supertorsion.components.graded import GradedSpace, GradedMap
from supertorsion.components.linalg import Matrix, ZERO
from supertorsion.components.simplicial import face, back_front, barycentric_subdivision, cup_sign
from supertorsion.components.spectral import FilteredComplex, Z2Complex, Cohomology

logger = logging.getLogger(__name__)


def operator_parity(simplex):
    return len(simplex) % 2


def _as_matrix(value):
    if isinstance(value, Matrix):
        return value
    return Matrix.from_rows(value)


def _fiber_space(vertex, dims):
    if isinstance(dims, GradedSpace):
        return dims
    even, odd = dims
    return GradedSpace.of_dimension(int(even), int(odd), tag=vertex)


def _check_typing(matrix, rows_space, cols_space, parity, simplex):
    row_parities = rows_space.parities()
    col_parities = cols_space.parities()
    for row in range(matrix.rows):
        for col in range(matrix.cols):
            if matrix[row, col] and row_parities[row] != (col_parities[col] + parity) % 2:
                raise ValueError('Operator on %s has an entry of the wrong parity at %s'
                                 % (simplex, (row, col)))


class RepUH:
    """
    Representation up to homotopy of the simplices of an ordered complex.
    """

    def __init__(self, complex_, fibers, operators=None):
        if len(fibers) != complex_.vertex_count:
            raise ValueError('Expected %s fibres, received %s' % (complex_.vertex_count, len(fibers)))

        self._complex = complex_
        self._fibers = [_fiber_space(vertex, dims) for vertex, dims in enumerate(fibers)]
        self._operators = {}
        self._cohomology = {}

        for simplex, matrix in (operators or {}).items():
            simplex = tuple(simplex)
            if simplex not in complex_:
                raise ValueError('Operator given on %s which is not a simplex' % (simplex,))
            matrix = _as_matrix(matrix)
            rows_space = self._fibers[simplex[0]]
            cols_space = self._fibers[simplex[-1]]
            if matrix.shape != (rows_space.dim, cols_space.dim):
                raise ValueError('Operator on %s has shape %s, expected %s'
                                 % (simplex, matrix.shape, (rows_space.dim, cols_space.dim)))
            _check_typing(matrix, rows_space, cols_space, operator_parity(simplex), simplex)
            if not matrix.is_zero():
                self._operators[simplex] = matrix

    @property
    def complex(self):
        return self._complex

    @property
    def fibers(self):
        return list(self._fibers)

    def fiber(self, vertex):
        return self._fibers[vertex]

    def operator(self, simplex):
        simplex = tuple(simplex)
        if simplex in self._operators:
            return self._operators[simplex]
        return Matrix.zeros(self._fibers[simplex[0]].dim, self._fibers[simplex[-1]].dim)

    def differential(self, vertex):
        return self.operator((vertex,))

    def operators(self):
        return sorted(self._operators.items(), key=lambda item: (len(item[0]), item[0]))

    def max_degree(self):
        return max([len(simplex) - 1 for simplex in self._operators] or [0])

    def is_local_system(self):
        if any(len(simplex) != 2 for simplex in self._operators):
            return False
        for edge in self._complex.simplices(1):
            matrix = self.operator(edge)
            if not matrix.is_square() or not linalg.det(matrix):
                return False
        return all(mc_residual(self, triangle).is_zero() for triangle in self._complex.simplices(2))

    def fiber_cohomology(self, vertex):
        """
        Cohomology of the fibre at a vertex with respect to its differential.
        """
        if vertex not in self._cohomology:
            space = self._fibers[vertex]
            complex_ = Z2Complex(space, GradedMap.from_matrix(space, space, self.differential(vertex), 1))
            self._cohomology[vertex] = Cohomology(complex_)
        return self._cohomology[vertex]

    def __repr__(self):
        return '%s(%s, fibres=%s)' % (self.__class__.__name__, self._complex, [fiber.dims for fiber in self._fibers])


class LocalSystem(RepUH):
    """
    Representation whose only operators are invertible edge transports satisfying the cocycle condition.
    """

    def __init__(self, complex_, fibers, operators=None):
        super(LocalSystem, self).__init__(complex_, fibers, operators)
        for simplex in self._operators:
            if len(simplex) != 2:
                raise NotLocalSystem('Local systems only carry edge operators', simplex=simplex)
        for edge in complex_.simplices(1):
            matrix = self.operator(edge)
            if not matrix.is_square() or not linalg.det(matrix):
                raise NotLocalSystem('Transport along %s is not invertible' % (edge,), simplex=edge)
        for triangle in complex_.simplices(2):
            residual = mc_residual(self, triangle)
            if not residual.is_zero():
                raise Violation('Cocycle condition fails on %s' % (triangle,), simplex=triangle, residual=residual)
        self._inverses = {}

    @classmethod
    def from_rep(cls, rep):
        return cls(rep.complex, rep.fibers, dict(rep.operators()))

    def holonomy(self, target, source):
        """
        Transport from the fibre at source to the fibre at target along the edge joining them.
        """
        if target == source:
            return Matrix.identity(self._fibers[target].dim)
        if target < source:
            return self.operator((target, source))
        if (source, target) not in self._inverses:
            self._inverses[(source, target)] = linalg.inverse(self.operator((source, target)))
        return self._inverses[(source, target)]


class RepMorphism:
    """
    Morphism of representations; the component of a k-simplex maps the source fibre of its last
    vertex to the target fibre of its first vertex and has parity ``k mod 2``.
    """

    def __init__(self, source, target, components=None, name=None):
        if source.complex != target.complex:
            raise BaseMismatch('Morphism between representations on different complexes')
        self._source = source
        self._target = target
        self._name = name
        self._components = {}
        for simplex, matrix in (components or {}).items():
            simplex = tuple(simplex)
            matrix = _as_matrix(matrix)
            rows_space = target.fiber(simplex[0])
            cols_space = source.fiber(simplex[-1])
            if matrix.shape != (rows_space.dim, cols_space.dim):
                raise ValueError('Component on %s has shape %s, expected %s'
                                 % (simplex, matrix.shape, (rows_space.dim, cols_space.dim)))
            _check_typing(matrix, rows_space, cols_space, (len(simplex) - 1) % 2, simplex)
            if not matrix.is_zero():
                self._components[simplex] = matrix

    @property
    def source(self):
        return self._source

    @property
    def target(self):
        return self._target

    @property
    def name(self):
        return self._name

    def component(self, simplex):
        simplex = tuple(simplex)
        if simplex in self._components:
            return self._components[simplex]
        return Matrix.zeros(self._target.fiber(simplex[0]).dim, self._source.fiber(simplex[-1]).dim)


class CochainLayout:
    """
    Coordinates of the twisted cochains: one coordinate for every simplex and every basis vector of
    the fibre over its first vertex, even total parity first.
    """

    def __init__(self, rep):
        even = []
        odd = []
        for simplex in rep.complex.simplices():
            parities = rep.fiber(simplex[0]).parities()
            for index, parity in enumerate(parities):
                entry = (simplex, index)
                (even if (len(simplex) - 1 + parity) % 2 == 0 else odd).append(entry)
        self._entries = even + odd
        self._even_count = len(even)
        self._position = dict((entry, position) for position, entry in enumerate(self._entries))

    @property
    def size(self):
        return len(self._entries)

    @property
    def entries(self):
        return list(self._entries)

    def position(self, simplex, index):
        return self._position[(simplex, index)]

    def space(self):
        labels = [('c',) + entry for entry in self._entries]
        return GradedSpace(labels[:self._even_count], labels[self._even_count:])

    def degrees(self):
        return dict((('c',) + entry, len(entry[0]) - 1) for entry in self._entries)

    @property
    def even_count(self):
        return self._even_count

    def embed(self, parity, vector):
        """
        Full coordinates of a vector given in the coordinates of one parity.
        """
        if parity == 0:
            return list(vector) + [ZERO] * (self.size - self._even_count)
        return [ZERO] * self._even_count + list(vector)

    def restrict(self, parity, vector):
        if parity == 0:
            return list(vector[:self._even_count])
        return list(vector[self._even_count:])


class CochainComplex(FilteredComplex):
    """
    Filtered twisted cochain complex of a representation.
    """

    def __init__(self, rep, layout, matrix):
        space = layout.space()
        super(CochainComplex, self).__init__(space, GradedMap.from_matrix(space, space, matrix, 1), layout.degrees(),
                                             top=rep.complex.dimension, validate=False)
        self._rep = rep
        self._layout = layout

    @property
    def rep(self):
        return self._rep

    @property
    def layout(self):
        return self._layout

    def full_vector(self, cochains):
        """
        Full coordinates of a family of cochains given as ``{simplex: fibre vector}``.
        """
        vector = [ZERO] * self.size
        for simplex, values in cochains.items():
            for index, value in enumerate(values):
                vector[self._layout.position(tuple(simplex), index)] = linalg.to_rational(value)
        return vector

    def cochains(self, vector):
        """
        Inverse of :meth:`full_vector`, dropping zero values.
        """
        result = {}
        for position, (simplex, index) in enumerate(self._layout.entries):
            if vector[position]:
                values = result.setdefault(simplex, [ZERO] * self._rep.fiber(simplex[0]).dim)
                values[index] = vector[position]
        return result

    def leading_component(self, vector, degree):
        return dict((simplex, values) for simplex, values in self.cochains(vector).items()
                    if len(simplex) - 1 == degree)


def _differential_entries(rep, layout):
    """
    Non-zero contributions ``(row, column, value)`` to the twisted differential; repeated positions add up.
    """
    for simplex in rep.complex.simplices():
        k = len(simplex) - 1
        first = rep.fiber(simplex[0]).dim
        rows = [layout.position(simplex, a) for a in range(first)]
        for i in range(1, k + 1):
            sign = (-1) ** i
            target = face(simplex, i)
            for a in range(first):
                yield rows[a], layout.position(target, a), sign
        for j in range(k + 1):
            back, front = back_front(simplex, j)
            operator = rep.operator(back)
            if operator.is_zero():
                continue
            sign = (-1) ** (((j + 1) % 2) * (k - j))
            cols = [layout.position(front, b) for b in range(operator.cols)]
            for a in range(operator.rows):
                for b in range(operator.cols):
                    if operator[a, b]:
                        yield rows[a], cols[b], sign * operator[a, b]


def _assemble_differential(rep, layout):
    size = layout.size
    data = [[ZERO] * size for _ in range(size)]
    for row, col, value in _differential_entries(rep, layout):
        data[row][col] += value
    return Matrix.from_rows(data, size)


def sparse_differential(rep, layout=None):
    """
    Columns of the twisted differential as ``{row: value}`` dictionaries, for complexes too large for
    dense matrices.  Unlike :func:`cochain_complex` the square of the differential is not checked.
    """
    layout = layout or CochainLayout(rep)
    columns = [{} for _ in range(layout.size)]
    for row, col, value in _differential_entries(rep, layout):
        column = columns[col]
        updated = column.get(row, ZERO) + value
        if updated:
            column[row] = updated
        else:
            column.pop(row, None)
    return columns


def mc_residual(rep, simplex):
    """
    Value on a simplex of the curvature whose vanishing is equivalent to ``D^2 = 0``.
    """
    simplex = tuple(simplex)
    k = len(simplex) - 1
    residual = Matrix.zeros(rep.fiber(simplex[0]).dim, rep.fiber(simplex[-1]).dim)
    for i in range(1, k):
        residual = residual + rep.operator(face(simplex, i)).scale((-1) ** i)
    for a in range(k + 1):
        back, front = back_front(simplex, a)
        left = rep.operator(back)
        right = rep.operator(front)
        if left.is_zero() or right.is_zero():
            continue
        residual = residual + (left * right).scale((-1) ** (((a + 1) % 2) * (k - a)))
    return residual


def _first_violation(rep):
    for simplex in rep.complex.simplices():
        residual = mc_residual(rep, simplex)
        if not residual.is_zero():
            return simplex, residual
    return None, None


def validate_mc(rep):
    """
    :raises Violation: at the lowest simplex where the Maurer-Cartan relations fail.
    """
    cochain_complex(rep)


def cochain_complex(rep):
    """
    :raises Violation: if the differential does not square to zero.
    :return: CochainComplex
    """
    layout = CochainLayout(rep)
    matrix = _assemble_differential(rep, layout)
    if not (matrix * matrix).is_zero():
        simplex, residual = _first_violation(rep)
        raise Violation('Maurer-Cartan relation fails on %s' % (simplex,), simplex=simplex, residual=residual)
    logger.debug('Cochain complex of %r has dimensions %s', rep, layout.space().dims)
    return CochainComplex(rep, layout, matrix)


def induced_fiber_map(rep, target_rep, matrix, source_vertex, target_vertex):
    """
    Map between fibre cohomologies induced by an even fibre map.
    """
    source = rep.fiber_cohomology(source_vertex)
    target = target_rep.fiber_cohomology(target_vertex)
    source_space = rep.fiber(source_vertex)
    target_space = target_rep.fiber(target_vertex)
    columns = []
    for parity in (0, 1):
        for representative in source.representatives(parity):
            full = ([ZERO] * source_space.even_dim + representative) if parity else \
                (representative + [ZERO] * source_space.odd_dim)
            image = matrix.apply(full)
            image = image[:target_space.even_dim] if parity == 0 else image[target_space.even_dim:]
            coords = target.project(parity, [image])[0]
            column = [ZERO] * target.space.dim
            offset = 0 if parity == 0 else target.space.even_dim
            column[offset:offset + len(coords)] = coords
            columns.append(column)
    return Matrix.from_columns(columns, target.space.dim)


def fiber_cohomology_system(rep):
    """
    Local system of fibre cohomologies with transports induced by the edge operators.
    :raises InducedMapNotInvertible: if an edge operator does not induce an isomorphism.
    """
    complex_ = rep.complex
    fibers = [rep.fiber_cohomology(vertex).dims for vertex in range(complex_.vertex_count)]
    operators = {}
    for edge in complex_.simplices(1):
        induced = induced_fiber_map(rep, rep, rep.operator(edge), edge[1], edge[0])
        if not induced.is_square() or not linalg.det(induced):
            raise InducedMapNotInvertible('Edge %s does not induce an isomorphism' % (edge,), simplex=edge)
        operators[edge] = induced
    return LocalSystem(complex_, fibers, operators)


def project_to_fiber_cohomology(rep, vertex, vector):
    """
    Fibre cohomology coordinates of a cocycle of the fibre at a vertex.
    """
    space = rep.fiber(vertex)
    cohomology_ = rep.fiber_cohomology(vertex)
    result = []
    for parity in (0, 1):
        part = vector[:space.even_dim] if parity == 0 else vector[space.even_dim:]
        result.extend(cohomology_.project(parity, [part])[0])
    return result


def _parity_signs(space):
    return Matrix.diagonal([(-1) ** parity for parity in space.parities()])


def dual(rep, supplied=None):
    """
    Dual representation, built from the transposes for representations whose operators stop at
    edges, or the supplied one after checking its compatibility.
    :raises DualDataRequired: if the dual cannot be built from the given data alone.
    """
    if supplied is not None:
        check_dual_compatible(rep, supplied)
        return supplied

    for simplex, _ in rep.operators():
        if len(simplex) > 2:
            raise DualDataRequired('Operator on %s needs explicit dual data' % (simplex,), simplex=simplex)

    operators = {}
    for vertex in range(rep.complex.vertex_count):
        differential = rep.differential(vertex)
        if not differential.is_zero():
            operators[(vertex,)] = -(differential.transpose() * _parity_signs(rep.fiber(vertex)))
    for edge in rep.complex.simplices(1):
        matrix = rep.operator(edge)
        if not matrix.is_square() or not linalg.det(matrix):
            raise DualDataRequired('Edge operator on %s is not invertible' % (edge,), simplex=edge)
        operators[edge] = linalg.inverse(matrix).transpose()

    cls = LocalSystem if isinstance(rep, LocalSystem) else RepUH
    return cls(rep.complex, rep.fibers, operators)


def fiber_pairing_matrix(rep, other, vertex):
    """
    Values of the fibre pairing between cohomology representatives of the dual and of the representation.
    """
    first = other.fiber_cohomology(vertex)
    second = rep.fiber_cohomology(vertex)
    space = rep.fiber(vertex)

    def full(parity, vector):
        return (vector + [ZERO] * space.odd_dim) if parity == 0 else ([ZERO] * space.even_dim + vector)

    rows = [full(parity, vector) for parity in (0, 1) for vector in first.representatives(parity)]
    cols = [full(parity, vector) for parity in (0, 1) for vector in second.representatives(parity)]
    return Matrix.from_rows([[linalg.dot(row, col) for col in cols] for row in rows], len(cols))


def check_dual_compatible(rep, other):
    """
    :raises DualIncompatible: with the offending vertex or edge and the residual.
    """
    if rep.complex != other.complex:
        raise BaseMismatch('Dual data lives on a different complex')
    complex_ = rep.complex

    for vertex in range(complex_.vertex_count):
        if rep.fiber(vertex).dims != other.fiber(vertex).dims:
            raise DualIncompatible('Fibre dimensions differ at vertex %s' % vertex, vertex=vertex)
        space = rep.fiber(vertex)
        differential = GradedMap.from_matrix(space, space, rep.differential(vertex), 1)
        candidate = GradedMap.from_matrix(space, space, other.differential(vertex), 1)
        for target, source in ((0, 1), (1, 0)):
            block = candidate.block(target, source)
            transposed = differential.block(source, target).transpose()
            if block != transposed and block != -transposed:
                raise DualIncompatible('Dual differential at vertex %s is not a signed transpose' % vertex,
                                       vertex=vertex, residual=block - transposed)

    pairings = {}
    for vertex in range(complex_.vertex_count):
        pairing = fiber_pairing_matrix(rep, other, vertex)
        if not pairing.is_square() or not linalg.det(pairing):
            raise DualIncompatible('Fibre cohomologies are not paired at vertex %s' % vertex, vertex=vertex)
        pairings[vertex] = pairing

    for edge in complex_.simplices(1):
        forward = induced_fiber_map(rep, rep, rep.operator(edge), edge[1], edge[0])
        backward = induced_fiber_map(other, other, other.operator(edge), edge[1], edge[0])
        residual = backward.transpose() * pairings[edge[0]] * forward - pairings[edge[1]]
        if not residual.is_zero():
            raise DualIncompatible('Transports along %s do not preserve the pairing' % (edge,),
                                   simplex=edge, residual=residual)


def parity_signs_identification(rep):
    """
    Morphism from the double dual back to the representation, the parity sign on every fibre.
    """
    double = dual(dual(rep))
    components = dict(((vertex,), _parity_signs(rep.fiber(vertex))) for vertex in range(rep.complex.vertex_count))
    return RepMorphism(double, rep, components)


def _sum_positions(first, second):
    """
    Positions of each summand's basis in the even-then-odd basis of the direct sum fibre.
    """
    even = first.even_dim + second.even_dim
    left = list(range(first.even_dim)) + [even + index for index in range(first.odd_dim)]
    right = [first.even_dim + index for index in range(second.even_dim)] + \
        [even + first.odd_dim + index for index in range(second.odd_dim)]
    return left, right


def direct_sum(rep, other):
    """
    :raises BaseMismatch: if the representations live on different complexes.
    """
    if rep.complex != other.complex:
        raise BaseMismatch('Direct sum of representations on different complexes')
    complex_ = rep.complex
    fibers = []
    positions = []
    for vertex in range(complex_.vertex_count):
        first, second = rep.fiber(vertex), other.fiber(vertex)
        fibers.append((first.even_dim + second.even_dim, first.odd_dim + second.odd_dim))
        positions.append(_sum_positions(first, second))

    operators = {}
    simplices = set(simplex for simplex, _ in rep.operators()) | set(simplex for simplex, _ in other.operators())
    for simplex in simplices:
        rows_vertex, cols_vertex = simplex[0], simplex[-1]
        size = (sum(fibers[rows_vertex]), sum(fibers[cols_vertex]))
        data = [[ZERO] * size[1] for _ in range(size[0])]
        for which, summand in enumerate((rep, other)):
            matrix = summand.operator(simplex)
            row_positions = positions[rows_vertex][which]
            col_positions = positions[cols_vertex][which]
            for row in range(matrix.rows):
                for col in range(matrix.cols):
                    data[row_positions[row]][col_positions[col]] = matrix[row, col]
        operators[simplex] = Matrix.from_rows(data, size[1])

    return RepUH(complex_, fibers, operators)


def morphism_residual(phi, simplex):
    """
    Value on a simplex of the obstruction to phi being a chain map.
    """
    source, target = phi.source, phi.target
    simplex = tuple(simplex)
    k = len(simplex) - 1
    residual = Matrix.zeros(target.fiber(simplex[0]).dim, source.fiber(simplex[-1]).dim)
    for i in range(1, k):
        residual = residual + phi.component(face(simplex, i)).scale((-1) ** i)
    for a in range(k + 1):
        back, front = back_front(simplex, a)
        residual = residual + (target.operator(back) * phi.component(front)).scale((-1) ** (((a + 1) % 2) * (k - a)))
        residual = residual - (phi.component(back) * source.operator(front)).scale((-1) ** ((a % 2) * (k - a)))
    return residual


def apply_morphism(phi, source_complex=None, target_complex=None):
    """
    Chain map between twisted cochain complexes induced by a morphism.
    :raises NotChainMap: with the first simplex where the morphism fails to commute with the differentials.
    :return: Matrix from the source cochain coordinates to the target cochain coordinates
    """
    source_complex = source_complex or cochain_complex(phi.source)
    target_complex = target_complex or cochain_complex(phi.target)
    source_layout = source_complex.layout
    target_layout = target_complex.layout

    data = [[ZERO] * source_layout.size for _ in range(target_layout.size)]
    for simplex in phi.source.complex.simplices():
        k = len(simplex) - 1
        for j in range(k + 1):
            back, front = back_front(simplex, j)
            component = phi.component(back)
            if component.is_zero():
                continue
            sign = (-1) ** ((j % 2) * (k - j))
            for a in range(component.rows):
                row = target_layout.position(simplex, a)
                for b in range(component.cols):
                    if component[a, b]:
                        data[row][source_layout.position(front, b)] += sign * component[a, b]
    matrix = Matrix.from_rows(data, source_layout.size)

    if target_complex.matrix * matrix != matrix * source_complex.matrix:
        for simplex in phi.source.complex.simplices():
            residual = morphism_residual(phi, simplex)
            if not residual.is_zero():
                raise NotChainMap('Morphism does not commute with the differentials on %s' % (simplex,),
                                  simplex=simplex, residual=residual)
        raise NotChainMap('Morphism does not commute with the differentials')
    return matrix


def is_quasi_iso(phi):
    """
    Whether the vertex components induce isomorphisms of fibre cohomology.
    :raises NotChainMap: if phi is not a chain map.
    """
    apply_morphism(phi)
    for vertex in range(phi.source.complex.vertex_count):
        if phi.source.fiber_cohomology(vertex).dims != phi.target.fiber_cohomology(vertex).dims:
            return False
        induced = induced_fiber_map(phi.source, phi.target, phi.component((vertex,)), vertex, vertex)
        if not linalg.det(induced):
            return False
    return True


def induced_cohomology_map(phi, basis, source_complex=None, target_complex=None):
    """
    Images of cocycle representatives under the chain map of phi.
    :param basis: dictionary parity -> cocycles in the coordinates of that parity
    """
    source_complex = source_complex or cochain_complex(phi.source)
    target_complex = target_complex or cochain_complex(phi.target)
    matrix = apply_morphism(phi, source_complex, target_complex)
    result = {}
    for parity in (0, 1):
        result[parity] = [target_complex.restrict(parity, matrix.apply(source_complex.embed(parity, vector)))
                          for vector in basis[parity]]
    return result


def gauge_transform(rep, gauge):
    """
    Conjugate every operator by invertible even fibre maps.
    :param gauge: dictionary vertex -> Matrix; missing vertices keep the identity
    :return: (transformed representation, isomorphism from rep to it)
    """
    maps = {}
    inverses = {}
    for vertex in range(rep.complex.vertex_count):
        matrix = _as_matrix(gauge.get(vertex, Matrix.identity(rep.fiber(vertex).dim)))
        maps[vertex] = matrix
        inverses[vertex] = linalg.inverse(matrix)
    operators = dict((simplex, maps[simplex[0]] * matrix * inverses[simplex[-1]])
                     for simplex, matrix in rep.operators())
    cls = LocalSystem if isinstance(rep, LocalSystem) else RepUH
    transformed = cls(rep.complex, rep.fibers, operators)
    return transformed, RepMorphism(rep, transformed, dict(((vertex,), maps[vertex]) for vertex in maps))


def subdivide_local_system(system, subdivision=None):
    """
    Pull a local system back to the barycentric subdivision along the least-vertex map.
    :param subdivision: a subdivision of the complex of the system, computed when omitted
    :return: (Subdivision, LocalSystem on the subdivided complex)
    """
    if not isinstance(system, LocalSystem):
        system = LocalSystem.from_rep(system)
    if subdivision is None:
        subdivision = barycentric_subdivision(system.complex)
    elif subdivision.base != system.complex:
        raise BaseMismatch('Subdivision of a different complex')
    refined = subdivision.complex
    fibers = [system.fiber(subdivision.anchor(vertex)).dims for vertex in range(refined.vertex_count)]
    operators = {}
    for first, second in refined.simplices(1):
        operators[(first, second)] = system.holonomy(subdivision.anchor(first), subdivision.anchor(second))
    return subdivision, LocalSystem(refined, fibers, operators)


def _subdivision_entries(subdivision, system, source_layout, target_layout):
    for simplex in subdivision.complex.simplices():
        anchors = [subdivision.anchor(vertex) for vertex in simplex]
        if any(later >= earlier for earlier, later in zip(anchors, anchors[1:])):
            continue
        p = len(simplex) - 1
        image = tuple(reversed(anchors))
        sign = (-1) ** (p * (p + 1) // 2)
        transport = system.holonomy(anchors[0], anchors[-1])
        for a in range(transport.rows):
            row = target_layout.position(simplex, a)
            for b in range(transport.cols):
                if transport[a, b]:
                    yield row, source_layout.position(image, b), sign * transport[a, b]


def subdivision_cochain_map(subdivision, system, refined_system, source_complex=None, target_complex=None):
    """
    Cochain map from the twisted cochains of a local system to those of its pull back on the subdivision.
    """
    source_complex = source_complex or cochain_complex(system)
    target_complex = target_complex or cochain_complex(refined_system)
    source_layout = source_complex.layout
    target_layout = target_complex.layout

    data = [[ZERO] * source_layout.size for _ in range(target_layout.size)]
    for row, col, value in _subdivision_entries(subdivision, system, source_layout, target_layout):
        data[row][col] += value
    return Matrix.from_rows(data, source_layout.size)


def subdivide_cochains(subdivision, system, source_layout, target_layout, vectors):
    """
    Images of full cochain vectors under the subdivision cochain map, without assembling its matrix.
    """
    entries = list(_subdivision_entries(subdivision, system, source_layout, target_layout))
    images = []
    for vector in vectors:
        image = [ZERO] * target_layout.size
        for row, col, value in entries:
            if vector[col]:
                image[row] += value * vector[col]
        images.append(image)
    return images


def cup_pairing_matrix(cycle, dual_rep, rep, dual_complex, complex_, sign=cup_sign):
    """
    Cup pairing of twisted cochains as a matrix, rows indexed by the dual cochains.  Only the edge
    operators of rep enter, so for a general representation this is the pairing of leading terms.
    """
    dual_layout = dual_complex.layout
    layout = complex_.layout
    data = [[ZERO] * layout.size for _ in range(dual_layout.size)]
    for row, col, value in _cup_entries(cycle, rep, dual_layout, layout, sign):
        data[row][col] += value
    return Matrix.from_rows(data, layout.size)


def cup_pairing_values(cycle, rep, dual_layout, layout, dual_vectors, vectors, sign=cup_sign):
    """
    Cup pairing of full dual cochain vectors against full cochain vectors, rows indexed by the dual
    vectors, without assembling the pairing matrix.
    """
    entries = list(_cup_entries(cycle, rep, dual_layout, layout, sign))
    return Matrix.from_rows([[sum((value * left[row] * right[col] for row, col, value in entries
                                   if left[row] and right[col]), ZERO)
                              for right in vectors] for left in dual_vectors], len(vectors))


def _cup_entries(cycle, rep, dual_layout, layout, sign):
    n = cycle.dimension
    for simplex, orientation in cycle.items():
        parities = rep.fiber(simplex[0]).parities()
        for p in range(n + 1):
            back, front = back_front(simplex, p)
            if p:
                transport = rep.operator((simplex[0], simplex[p]))
            else:
                transport = Matrix.identity(len(parities))
            for i in range(transport.rows):
                row = dual_layout.position(back, i)
                weight = orientation * sign(p, parities[i])
                for j in range(transport.cols):
                    if transport[i, j]:
                        yield row, layout.position(front, j), weight * transport[i, j]


def fiber_cocycle_coordinates(rep, cochains):
    """
    Project the fibre values of a leading component to fibre cohomology coordinates.
    :raises NoSolution: if some value is not a fibre cocycle.
    """
    result = {}
    for simplex, values in cochains.items():
        try:
            result[simplex] = project_to_fiber_cohomology(rep, simplex[0], values)
        except NoSolution:
            raise NoSolution('Leading value on %s is not a fibre cocycle' % (simplex,), simplex=simplex)
    return result


def local_cohomology_dims(system):
    """
    Dimensions of the cohomology of a local system split by simplex degree and fibre parity.
    :return: dictionary (p, q) -> dimension, for every degree of the complex and both parities
    """
    complex_ = cochain_complex(system)
    groups = {}
    for position, (simplex, index) in enumerate(complex_.layout.entries):
        key = (len(simplex) - 1, system.fiber(simplex[0]).parities()[index])
        groups.setdefault(key, []).append(position)

    def rank_between(source, target):
        if not groups.get(source) or not groups.get(target):
            return 0
        return linalg.rank(complex_.matrix.submatrix(groups[target], groups[source]))

    result = {}
    for p in range(system.complex.dimension + 1):
        for q in (0, 1):
            size = len(groups.get((p, q), []))
            result[(p, q)] = size - rank_between((p, q), (p + 1, q)) - rank_between((p - 1, q), (p, q))
    return result
