"""
Exceptions raised by the library.  Every exception carries a stable machine readable code from
:class:`supertorsion.components.enums.ErrorCodes` together with the context needed to locate the
problem.
"""
from fractions import Fraction

from supertorsion.components.enums import ErrorCodes


def _plain(value):
    """
    Convert context values into JSON compatible structures.
    """
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return '%d/%d' % (value.numerator, value.denominator)
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    if isinstance(value, dict):
        return dict((str(key), _plain(item)) for key, item in value.items())
    if hasattr(value, 'row_list'):
        return [[_plain(entry) for entry in row] for row in value.row_list()]
    return str(value)


class SupertorsionError(Exception):
    """
    Base class of every error raised by the library.
    """

    code = ErrorCodes.INTERNAL

    def __init__(self, message=None, **context):
        super(SupertorsionError, self).__init__(message or self.code.value)
        self.message = message or self.code.value
        self.context = context

    def __getattr__(self, item):
        context = self.__dict__.get('context', {})
        if item in context:
            return context[item]
        raise AttributeError(item)

    def to_dict(self):
        """
        Machine readable form used by the command line diagnostics.
        :return: dictionary
        """
        result = {'code': self.code.value, 'message': self.message}
        for key, value in sorted(self.context.items()):
            result[key] = _plain(value)
        return result


class NoSolution(SupertorsionError):
    code = ErrorCodes.NO_SOLUTION


class NonSquare(SupertorsionError):
    code = ErrorCodes.NON_SQUARE


class DegenerateWedge(SupertorsionError):
    code = ErrorCodes.DEGENERATE_WEDGE


class NotExact(SupertorsionError):
    code = ErrorCodes.NOT_EXACT


class NotAComplex(SupertorsionError):
    code = ErrorCodes.NOT_A_COMPLEX


class NotSkewAdjoint(SupertorsionError):
    code = ErrorCodes.NOT_SKEW_ADJOINT


class IndexOutOfRange(SupertorsionError):
    code = ErrorCodes.INDEX_OUT_OF_RANGE


class NotClosed(SupertorsionError):
    code = ErrorCodes.NOT_CLOSED


class NotOrientable(SupertorsionError):
    code = ErrorCodes.NOT_ORIENTABLE


class DegreeMismatch(SupertorsionError):
    code = ErrorCodes.DEGREE_MISMATCH


class Violation(SupertorsionError):
    code = ErrorCodes.MC_VIOLATION


class NotLocalSystem(SupertorsionError):
    code = ErrorCodes.NOT_LOCAL_SYSTEM


class InducedMapNotInvertible(SupertorsionError):
    code = ErrorCodes.INDUCED_MAP_NOT_INVERTIBLE


class DualDataRequired(SupertorsionError):
    code = ErrorCodes.DUAL_DATA_REQUIRED


class DualIncompatible(SupertorsionError):
    code = ErrorCodes.DUAL_INCOMPATIBLE


class BaseMismatch(SupertorsionError):
    code = ErrorCodes.BASE_MISMATCH


class NotChainMap(SupertorsionError):
    code = ErrorCodes.NOT_CHAIN_MAP


class DegeneratePairing(SupertorsionError):
    code = ErrorCodes.DEGENERATE_PAIRING


class RouteMismatch(SupertorsionError):
    code = ErrorCodes.ROUTE_MISMATCH


class OddDimensionRequired(SupertorsionError):
    code = ErrorCodes.ODD_DIMENSION_REQUIRED


class ParseError(SupertorsionError):
    code = ErrorCodes.PARSE_ERROR
