"""
Complexes and representations shared by the unit tests.
"""
import itertools
import os

from supertorsion.components.representation import RepUH, LocalSystem
from supertorsion.components.simplicial import OrderedComplex

CIRCLE = [[0, 1], [1, 2], [0, 2]]
SPHERE = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
S3 = [list(simplex) for simplex in itertools.combinations(range(5), 4)]

SLOW_TESTS = bool(os.environ.get('SUPERTORSION_SLOW_TESTS'))


def identity(size):
    return [[1 if row == col else 0 for col in range(size)] for row in range(size)]


def circle():
    return OrderedComplex(CIRCLE)


def sphere():
    return OrderedComplex(SPHERE)


def s3():
    return OrderedComplex(S3)


def trivial_system(complex_, even=1, odd=0):
    size = even + odd
    operators = dict((edge, identity(size)) for edge in complex_.simplices(1))
    return LocalSystem(complex_, [(even, odd)] * complex_.vertex_count, operators)


def twisted_circle(holonomy, edge=(0, 2)):
    """
    Rank one local system on the three vertex circle with the holonomy placed on one edge.
    """
    complex_ = circle()
    operators = dict((simplex, [[1]]) for simplex in complex_.simplices(1))
    operators[edge] = [[holonomy]]
    return LocalSystem(complex_, [(1, 0)] * 3, operators)


def acyclic_s3():
    """
    Fibres R^{1|1} on the boundary of the 4-simplex whose differential maps the even line onto the odd line.
    """
    complex_ = s3()
    operators = dict(((vertex,), [[0, 0], [1, 0]]) for vertex in range(5))
    operators.update((edge, identity(2)) for edge in complex_.simplices(1))
    return RepUH(complex_, [(1, 1)] * 5, operators)


def edge_scalar(a, b):
    return a + b + 1


def nonassociative_s3():
    """
    Acyclic fibres with scalar edge transports that do not compose, corrected by operators on the triangles.
    :return: (representation, a compatible dual)
    """
    complex_ = s3()
    operators = dict(((vertex,), [[0, 0], [1, 0]]) for vertex in range(5))
    for a, b in complex_.simplices(1):
        c = edge_scalar(a, b)
        operators[(a, b)] = [[c, 0], [0, c]]
    for a, b, c in complex_.simplices(2):
        operators[(a, b, c)] = [[0, edge_scalar(a, c) - edge_scalar(a, b) * edge_scalar(b, c)], [0, 0]]
    rep = RepUH(complex_, [(1, 1)] * 5, operators)

    dual_operators = dict(((vertex,), [[0, 1], [0, 0]]) for vertex in range(5))
    dual_operators.update((edge, identity(2)) for edge in complex_.simplices(1))
    return rep, RepUH(complex_, [(1, 1)] * 5, dual_operators)


def homotopy_s3():
    """
    Zero differential, trivial transports and a homotopy on the triangles [0, 1, c].
    :return: (representation, the trivial system as its dual)
    """
    complex_ = s3()
    operators = dict((edge, identity(2)) for edge in complex_.simplices(1))
    for c in (2, 3, 4):
        operators[(0, 1, c)] = [[0, 1], [0, 0]]
    return RepUH(complex_, [(1, 1)] * 5, operators), trivial_system(complex_, 1, 1)


def cone_circle(holonomy=3):
    """
    A twisted line plus the cone of the identity of the trivial line.
    """
    complex_ = circle()
    operators = dict(((vertex,), [[0, 0, 0], [0, 0, 0], [0, 1, 0]]) for vertex in range(3))
    for edge in complex_.simplices(1):
        operators[edge] = identity(3)
    operators[(0, 2)] = [[holonomy, 0, 0], [0, 1, 0], [0, 0, 1]]
    return RepUH(complex_, [(2, 1)] * 3, operators)


def data_path(*parts):
    return os.path.join(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))), 'data', *parts)
