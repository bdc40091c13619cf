"""
Enumerated values shared by the library and the command line front end.
"""
from enum import Enum, unique


class Flag:
    """
    Mixin that will provide a means to retrieve the values of a job option from the data type.
    """

    def __init__(self, *args):

        if len(args) != 3:
            raise AttributeError('Flag Enumeration must be provided with 3 argument values.')

        self._var = args[0]
        self._field_type = args[1]
        self._default = args[2]

    @property
    def var(self):
        return self._var

    @property
    def field_type(self):
        return self._field_type

    @property
    def default(self):
        return self._default

    def fetch_from(self, dictionary):
        """
        Retrieve the value of this flag from a dictionary keyed either by the flag or by its variable name.
        :param dictionary: options dictionary.
        :return: the converted value, or the default when the option is absent.
        """
        result = self._default

        if self in dictionary:
            result = dictionary[self]
        elif self.var in dictionary:
            result = dictionary[self.var]

        if result is None:
            return result

        if self.field_type == 'boolean':
            if isinstance(result, str):
                result = result.lower() in ('1', 'true', 'yes', 'on')
            else:
                result = bool(result)
        elif self.field_type == 'integer':
            result = int(result)
        elif self.field_type == 'list':
            if isinstance(result, str):
                result = [item.strip() for item in result.split(',') if item.strip()]
            else:
                result = list(result)

        return result


@unique
class Checks(Enum):
    SUBDIVISION = 'subdivision'
    DUALITY = 'duality'
    MU = 'mu'
    QUASI_ISO = 'quasi-iso'


@unique
class ErrorCodes(Enum):
    INTERNAL = 'internal'
    NO_SOLUTION = 'no_solution'
    NON_SQUARE = 'non_square'
    DEGENERATE_WEDGE = 'degenerate_wedge'
    NOT_EXACT = 'not_exact'
    NOT_A_COMPLEX = 'not_a_complex'
    NOT_SKEW_ADJOINT = 'not_skew_adjoint'
    INDEX_OUT_OF_RANGE = 'index_out_of_range'
    NOT_CLOSED = 'not_closed'
    NOT_ORIENTABLE = 'not_orientable'
    DEGREE_MISMATCH = 'degree_mismatch'
    MC_VIOLATION = 'mc_violation'
    NOT_LOCAL_SYSTEM = 'not_local_system'
    INDUCED_MAP_NOT_INVERTIBLE = 'induced_map_not_invertible'
    DUAL_DATA_REQUIRED = 'dual_data_required'
    DUAL_INCOMPATIBLE = 'dual_incompatible'
    BASE_MISMATCH = 'base_mismatch'
    NOT_CHAIN_MAP = 'not_chain_map'
    DEGENERATE_PAIRING = 'degenerate_pairing'
    ROUTE_MISMATCH = 'route_mismatch'
    ODD_DIMENSION_REQUIRED = 'odd_dimension_required'
    PARSE_ERROR = 'parse_error'


@unique
class JobOptions(Flag, Enum):
    # Comma separated list (or JSON array) of invariance checks to run after the torsion computation.
    CHECKS = ('checks', 'list', None)

    # Number of barycentric subdivisions used by the subdivision check.
    SUBDIVIDE = ('subdivide', 'integer', 1)

    # Significant digits used when displaying floating values.
    PRECISION = ('precision', 'integer', None)

    # Constant rescaling of the canonical flat density; rational given as a string.
    MU = ('mu', 'text-single', None)
