"""
Ordered simplicial complexes, orientation data and the cup pairing of twisted cochains.

Simplices are sorted tuples of vertex indices.  The i-th face drops the i-th vertex; the back
i-face keeps the first i+1 vertices and the front i-face keeps the last i+1 vertices.
"""
import itertools
import logging

from supertorsion.components.errors import (IndexOutOfRange, NotClosed, NotOrientable, DegreeMismatch)
from supertorsion.components.linalg import Matrix, ZERO

logger = logging.getLogger(__name__)


def face(simplex, index):
    """
    :raises IndexOutOfRange: unless ``0 <= index <= dim simplex``.
    """
    if index < 0 or index >= len(simplex):
        raise IndexOutOfRange('Face %s of %s' % (index, simplex), simplex=simplex, index=index)
    return simplex[:index] + simplex[index + 1:]


def back_front(simplex, index):
    """
    :return: (back index-face, front (dim - index)-face) sharing the vertex at position index.
    """
    if index < 0 or index >= len(simplex):
        raise IndexOutOfRange('Split %s of %s' % (index, simplex), simplex=simplex, index=index)
    return simplex[:index + 1], simplex[index:]


def dimension_of(simplex):
    return len(simplex) - 1


class OrderedComplex:
    """
    Finite simplicial complex on the vertices ``0 .. vertex_count - 1`` given by its maximal simplices.
    """

    def __init__(self, maximal_simplices, vertex_count=None):
        maximal = []
        for simplex in maximal_simplices:
            simplex = tuple(int(vertex) for vertex in simplex)
            if not simplex:
                raise ValueError('Empty simplex in complex')
            if any(a >= b for a, b in zip(simplex, simplex[1:])):
                raise ValueError('Simplex %s is not strictly increasing' % (simplex,))
            if simplex[0] < 0:
                raise ValueError('Negative vertex in %s' % (simplex,))
            maximal.append(simplex)

        highest = max([simplex[-1] for simplex in maximal] or [-1])
        if vertex_count is None:
            vertex_count = highest + 1
        elif highest >= vertex_count:
            raise ValueError('Vertex %s is out of range for %s vertices' % (highest, vertex_count))

        closure = set((vertex,) for vertex in range(vertex_count))
        for simplex in maximal:
            for size in range(1, len(simplex) + 1):
                closure.update(itertools.combinations(simplex, size))

        self._vertex_count = vertex_count
        self._simplices = sorted(closure, key=lambda simplex: (len(simplex), simplex))
        self._index = dict((simplex, position) for position, simplex in enumerate(self._simplices))
        self._by_dimension = {}
        for simplex in self._simplices:
            self._by_dimension.setdefault(len(simplex) - 1, []).append(simplex)
        self._maximal = sorted(set(simplex for simplex in maximal if not self._is_proper_face(simplex, maximal)),
                               key=lambda simplex: (len(simplex), simplex))

    @staticmethod
    def _is_proper_face(simplex, candidates):
        vertices = set(simplex)
        return any(len(other) > len(simplex) and vertices.issubset(other) for other in candidates)

    @property
    def vertex_count(self):
        return self._vertex_count

    @property
    def dimension(self):
        return max(self._by_dimension) if self._by_dimension else -1

    @property
    def maximal_simplices(self):
        return list(self._maximal)

    def simplices(self, dim=None):
        if dim is None:
            return list(self._simplices)
        return list(self._by_dimension.get(dim, []))

    def f_vector(self):
        return [len(self._by_dimension.get(dim, [])) for dim in range(self.dimension + 1)]

    def index(self, simplex):
        return self._index[tuple(simplex)]

    def __contains__(self, simplex):
        return tuple(simplex) in self._index

    def __len__(self):
        return len(self._simplices)

    def __eq__(self, other):
        if not isinstance(other, OrderedComplex):
            return NotImplemented
        return self._vertex_count == other._vertex_count and self._simplices == other._simplices

    def __hash__(self):
        return hash((self._vertex_count, tuple(self._simplices)))

    def __repr__(self):
        return 'OrderedComplex(%s)' % (self.f_vector(),)

    def boundary_matrix(self, dim):
        """
        Matrix of the simplicial boundary from dim-chains to (dim - 1)-chains.
        """
        rows = self.simplices(dim - 1)
        cols = self.simplices(dim)
        position = dict((simplex, index) for index, simplex in enumerate(rows))
        data = [[ZERO] * len(cols) for _ in rows]
        for col, simplex in enumerate(cols):
            for i in range(len(simplex)):
                data[position[face(simplex, i)]][col] += (-1) ** i
        return Matrix.from_rows(data, len(cols))


def euler_characteristic(k):
    return sum((-1) ** dim * count for dim, count in enumerate(k.f_vector()))


class FundamentalCycle:
    """
    Signs on the top simplices whose signed sum is a cycle.
    """

    def __init__(self, dimension, signs):
        self._dimension = dimension
        self._signs = dict(signs)

    @property
    def dimension(self):
        return self._dimension

    def sign(self, simplex):
        return self._signs[tuple(simplex)]

    def items(self):
        return sorted(self._signs.items())

    def negated(self):
        return FundamentalCycle(self._dimension, dict((simplex, -sign) for simplex, sign in self._signs.items()))


def validate_closed_oriented(k):
    """
    Check that k triangulates a closed pseudo-manifold and orient it.
    :raises NotClosed: if some codimension one simplex does not lie on exactly two top simplices.
    :raises NotOrientable: if the orientation signs cannot be made consistent.
    :return: FundamentalCycle
    """
    n = k.dimension
    if n < 0:
        raise NotClosed('Empty complex')
    for simplex in k.maximal_simplices:
        if len(simplex) - 1 != n:
            raise NotClosed('Maximal simplex %s has dimension below %s' % (simplex, n), simplex=simplex)

    tops = k.simplices(n)
    if n == 0:
        return FundamentalCycle(0, dict((simplex, 1) for simplex in tops))

    cofaces = {}
    for simplex in tops:
        for i in range(n + 1):
            cofaces.setdefault(face(simplex, i), []).append((simplex, (-1) ** i))
    for ridge in k.simplices(n - 1):
        count = len(cofaces.get(ridge, []))
        if count != 2:
            raise NotClosed('Simplex %s lies on %s top simplices' % (ridge, count), simplex=ridge)

    signs = {}
    for start in tops:
        if start in signs:
            continue
        signs[start] = 1
        pending = [start]
        while pending:
            current = pending.pop()
            for i in range(n + 1):
                ridge = face(current, i)
                incidence = (-1) ** i
                for neighbour, other_incidence in cofaces[ridge]:
                    if neighbour == current:
                        continue
                    wanted = -signs[current] * incidence * other_incidence
                    if neighbour not in signs:
                        signs[neighbour] = wanted
                        pending.append(neighbour)
                    elif signs[neighbour] != wanted:
                        raise NotOrientable('Orientation conflict across %s' % (ridge,), simplex=ridge)

    logger.debug('Oriented %s top simplices', len(signs))
    return FundamentalCycle(n, signs)


class Subdivision:
    """
    Barycentric subdivision with the carrier of each new vertex.
    """

    def __init__(self, base, complex_, carriers):
        self._base = base
        self._complex = complex_
        self._carriers = carriers

    @property
    def base(self):
        return self._base

    @property
    def complex(self):
        return self._complex

    def carrier(self, vertex):
        return self._carriers[vertex]

    def anchor(self, vertex):
        """
        The least vertex of the carrier.
        """
        return self._carriers[vertex][0]


def _maximal_flags(simplex):
    if len(simplex) == 1:
        return [[simplex]]
    flags = []
    for i in range(len(simplex)):
        for flag in _maximal_flags(face(simplex, i)):
            flags.append(flag + [simplex])
    return flags


def barycentric_subdivision(k):
    """
    New vertices are the simplices of k in (dimension, lexicographic) order; new simplices are
    strictly increasing chains of simplices.
    """
    carriers = k.simplices()
    position = dict((simplex, index) for index, simplex in enumerate(carriers))
    maximal = []
    for simplex in k.maximal_simplices:
        for flag in _maximal_flags(simplex):
            maximal.append(tuple(sorted(position[member] for member in flag)))
    subdivided = OrderedComplex(maximal, vertex_count=len(carriers))
    logger.debug('Subdivided %s into %s', k.f_vector(), subdivided.f_vector())
    return Subdivision(k, subdivided, carriers)


def cup_sign(p, fiber_parity):
    """
    Koszul sign attached to a cup product term with a back face of dimension p.
    """
    return -1 if (p * fiber_parity) % 2 else 1


class Cochain:
    """
    Twisted cochain of a fixed degree: a fibre vector for each simplex of that dimension.
    """

    def __init__(self, degree, values=None):
        self._degree = degree
        self._values = {}
        for simplex, vector in (values or {}).items():
            simplex = tuple(simplex)
            if len(simplex) - 1 != degree:
                raise DegreeMismatch('Simplex %s in a cochain of degree %s' % (simplex, degree), simplex=simplex)
            self._values[simplex] = list(vector)

    @property
    def degree(self):
        return self._degree

    def value(self, simplex, size):
        return self._values.get(tuple(simplex), [ZERO] * size)

    def items(self):
        return sorted(self._values.items())


def cup_pairing(k, cycle, system, alpha, beta, sign=cup_sign):
    """
    Evaluate the cup pairing of a cochain with values in the dual system and a cochain with values
    in the system on the fundamental cycle.

    :param system: anything providing ``fiber(vertex)``, a graded space, and ``operator(simplex)``
        for the transport along an edge.
    :param alpha: Cochain with values in the dual fibres
    :param beta: Cochain with values in the fibres
    :raises DegreeMismatch: unless the degrees add up to the dimension of k.
    """
    n = cycle.dimension
    if alpha.degree + beta.degree != n:
        raise DegreeMismatch('Degrees %s and %s do not add up to %s' % (alpha.degree, beta.degree, n))

    p = alpha.degree
    total = ZERO
    for simplex, orientation in cycle.items():
        back, front = back_front(simplex, p)
        fiber = system.fiber(simplex[0])
        first = alpha.value(back, fiber.dim)
        second = beta.value(front, system.fiber(simplex[p]).dim)
        if p:
            second = system.operator((simplex[0], simplex[p])).apply(second)
        parities = fiber.parities()
        term = sum((sign(p, parities[i]) * first[i] * second[i] for i in range(fiber.dim)), ZERO)
        total += orientation * term
    return total
