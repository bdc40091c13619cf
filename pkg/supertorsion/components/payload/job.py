"""
Job file payload.  A job is a JSON document naming a complex, a representation on it and the
options of a computation; every matrix entry is an exact rational written as an integer or a
``"p/q"`` string.
"""
import json
import logging

from supertorsion.components.enums import JobOptions
from supertorsion.components.errors import ParseError
from supertorsion.components.linalg import to_rational
from supertorsion.components.representation import RepUH, RepMorphism
from supertorsion.components.simplicial import OrderedComplex
from supertorsion.components.torsion import TorsionConfig

logger = logging.getLogger(__name__)


def _reject_float(literal):
    raise ParseError('Floating point literal %s is not an exact rational' % literal, literal=literal)


def _require(container, key, kind, field):
    if key not in container:
        raise ParseError('Missing field %s' % field, field=field)
    value = container[key]
    if not isinstance(value, kind):
        raise ParseError('Field %s has the wrong type' % field, field=field)
    return value


def _matrix_literal(value, field):
    if not isinstance(value, list) or any(not isinstance(row, list) for row in value):
        raise ParseError('Field %s must be a list of rows' % field, field=field)
    try:
        return [[to_rational(entry) for entry in row] for row in value]
    except (ValueError, ZeroDivisionError):
        raise ParseError('Field %s contains an entry that is not an exact rational' % field, field=field)


def _simplex_literal(value, field):
    if not isinstance(value, list) or any(isinstance(vertex, bool) or not isinstance(vertex, int) for vertex in value):
        raise ParseError('Field %s must be a list of vertex indices' % field, field=field)
    return tuple(value)


def _unpack_assignments(items, field):
    """
    Unpack a list of ``{"simplex": [...], "matrix": [[...]]}`` objects into a dictionary.
    """
    if not isinstance(items, list):
        raise ParseError('Field %s must be a list' % field, field=field)
    result = {}
    for position, item in enumerate(items):
        where = '%s[%s]' % (field, position)
        if not isinstance(item, dict):
            raise ParseError('Field %s must be an object' % where, field=where)
        simplex = _simplex_literal(_require(item, 'simplex', list, where + '.simplex'), where + '.simplex')
        if simplex in result:
            raise ParseError('Simplex %s given twice in %s' % (list(simplex), field), field=where)
        result[simplex] = _matrix_literal(_require(item, 'matrix', list, where + '.matrix'), where + '.matrix')
    return result


def _pack_assignments(assignments):
    return [{'simplex': list(simplex), 'matrix': [[_rational_text(entry) for entry in row] for row in matrix]}
            for simplex, matrix in sorted(assignments.items(), key=lambda item: (len(item[0]), item[0]))]


def _rational_text(value):
    if value.denominator == 1:
        return str(value.numerator)
    return '%d/%d' % (value.numerator, value.denominator)


class RepresentationPayload:
    """
    Fibre dimensions and structure operators of a representation, before they are bound to a complex.
    """

    def __init__(self, fibers=None, operators=None, _container=None, field='representation'):
        self.fibers = list(fibers or [])
        self.operators = dict(operators or {})
        self._field = field

        if _container is not None:
            self._unpack_payload(_container)

    def _unpack_payload(self, container):
        if not isinstance(container, dict):
            raise ParseError('Field %s must be an object' % self._field, field=self._field)

        fibers = _require(container, 'fibers', list, self._field + '.fibers')
        self.fibers = []
        for position, dims in enumerate(fibers):
            if (not isinstance(dims, list) or len(dims) != 2
                    or any(isinstance(dim, bool) or not isinstance(dim, int) or dim < 0 for dim in dims)):
                where = '%s.fibers[%s]' % (self._field, position)
                raise ParseError('Field %s must be a pair of non-negative integers' % where, field=where)
            self.fibers.append((dims[0], dims[1]))

        self.operators = _unpack_assignments(container.get('operators', []), self._field + '.operators')

    def populate_payload(self):
        return {
            'fibers': [list(dims) for dims in self.fibers],
            'operators': _pack_assignments(self.operators),
        }

    def build(self, complex_):
        """
        Bind the data to a complex.
        :raises ParseError: if the fibres or operators do not fit the complex.
        """
        try:
            return RepUH(complex_, self.fibers, self.operators)
        except ValueError as e:
            raise ParseError(str(e), field=self._field)


class MorphismPayload:
    """
    Morphism from the job representation to another representation, with optional dual data for the target.
    """

    def __init__(self, _container=None, field='morphisms'):
        self.name = None
        self.target = None
        self.target_dual = None
        self.components = {}
        self._field = field

        if _container is not None:
            self._unpack_payload(_container)

    def _unpack_payload(self, container):
        if not isinstance(container, dict):
            raise ParseError('Field %s must be an object' % self._field, field=self._field)
        self.name = container.get('name')
        self.target = RepresentationPayload(_container=_require(container, 'target', dict, self._field + '.target'),
                                            field=self._field + '.target')
        if container.get('target_dual') is not None:
            self.target_dual = RepresentationPayload(_container=container['target_dual'],
                                                     field=self._field + '.target_dual')
        self.components = _unpack_assignments(_require(container, 'components', list, self._field + '.components'),
                                               self._field + '.components')

    def populate_payload(self):
        result = {
            'name': self.name,
            'target': self.target.populate_payload(),
            'components': _pack_assignments(self.components),
        }
        if self.target_dual is not None:
            result['target_dual'] = self.target_dual.populate_payload()
        return result

    def build(self, source):
        """
        :return: (RepMorphism, dual of the target or None)
        """
        target = self.target.build(source.complex)
        target_dual = self.target_dual.build(source.complex) if self.target_dual is not None else None
        try:
            return RepMorphism(source, target, self.components, self.name), target_dual
        except ValueError as e:
            raise ParseError(str(e), field=self._field)


class JobPayload:
    """
    Parsed job file.
    """

    def __init__(self, _container=None, source=None):
        self.name = None
        self.description = None
        self.source = source
        self._maximal = []
        self._vertex_count = None
        self._representation = None
        self._dual = None
        self._morphisms = []
        self._options = {}
        self._expected = {}

        self._complex = None
        self._rep = None

        if _container is not None:
            self._unpack_payload(_container)

    @classmethod
    def from_text(cls, text, source=None):
        """
        Parse a job from its JSON text.
        :raises ParseError: on malformed JSON, floating point literals or schema violations.
        """
        try:
            container = json.loads(text, parse_float=_reject_float)
        except json.JSONDecodeError as e:
            raise ParseError('Malformed job file: %s' % e.msg, line=e.lineno, column=e.colno, source=source)
        return cls(container, source=source)

    @classmethod
    def from_file(cls, filename):
        logger.debug('Reading job: %s', filename)
        try:
            with open(filename) as handle:
                text = handle.read()
        except OSError as e:
            raise ParseError('Cannot read job file %s: %s' % (filename, e.strerror), source=filename)
        return cls.from_text(text, source=filename)

    def _unpack_payload(self, container):
        """
        Unpack the container into the internal data structures.
        """
        if not isinstance(container, dict):
            raise ParseError('Job file must contain a JSON object')

        self.name = container.get('name')
        self.description = container.get('description')

        maximal = _require(container, 'complex', list, 'complex')
        self._maximal = [_simplex_literal(simplex, 'complex[%s]' % position) for position, simplex in enumerate(maximal)]
        self._vertex_count = container.get('vertex_count')
        if self._vertex_count is not None and (isinstance(self._vertex_count, bool)
                                               or not isinstance(self._vertex_count, int)):
            raise ParseError('Field vertex_count must be an integer', field='vertex_count')

        self._representation = RepresentationPayload(_container=_require(container, 'representation', dict,
                                                                         'representation'))
        if container.get('dual') is not None:
            self._dual = RepresentationPayload(_container=container['dual'], field='dual')

        morphisms = container.get('morphisms', [])
        if not isinstance(morphisms, list):
            raise ParseError('Field morphisms must be a list', field='morphisms')
        self._morphisms = [MorphismPayload(_container=item, field='morphisms[%s]' % position)
                           for position, item in enumerate(morphisms)]

        self._options = container.get('options', {})
        if not isinstance(self._options, dict):
            raise ParseError('Field options must be an object', field='options')
        self._expected = container.get('expected', {})
        if not isinstance(self._expected, dict):
            raise ParseError('Field expected must be an object', field='expected')

    def populate_payload(self):
        """
        Translate the contents of this object back into a JSON compatible dictionary.
        """
        result = {
            'complex': [list(simplex) for simplex in self._maximal],
            'representation': self._representation.populate_payload(),
        }
        if self.name is not None:
            result['name'] = self.name
        if self.description is not None:
            result['description'] = self.description
        if self._vertex_count is not None:
            result['vertex_count'] = self._vertex_count
        if self._dual is not None:
            result['dual'] = self._dual.populate_payload()
        if self._morphisms:
            result['morphisms'] = [morphism.populate_payload() for morphism in self._morphisms]
        if self._options:
            result['options'] = dict(self._options)
        if self._expected:
            result['expected'] = dict(self._expected)
        return result

    @property
    def complex(self):
        if self._complex is None:
            try:
                self._complex = OrderedComplex(self._maximal, self._vertex_count)
            except ValueError as e:
                raise ParseError(str(e), field='complex')
        return self._complex

    @property
    def representation(self):
        if self._rep is None:
            self._rep = self._representation.build(self.complex)
        return self._rep

    @property
    def dual(self):
        if self._dual is None:
            return None
        return self._dual.build(self.complex)

    @property
    def morphisms(self):
        return [morphism.build(self.representation) for morphism in self._morphisms]

    @property
    def options(self):
        return dict(self._options)

    @property
    def expected(self):
        return dict(self._expected)

    def option(self, flag):
        """
        Value of a job option, converted according to its field type.
        :param flag: JobOptions member
        """
        return flag.fetch_from(self._options)

    def torsion_config(self, mu=None):
        """
        Configuration of a torsion computation; the density weight falls back to the job option.
        """
        if mu is None:
            mu = self.option(JobOptions.MU)
        if mu is not None:
            try:
                mu = to_rational(mu)
            except (ValueError, ZeroDivisionError):
                raise ParseError('Density weight %s is not an exact rational' % mu, field='options.mu')
            if not mu:
                raise ParseError('Density weight must be non-zero', field='options.mu')
        return TorsionConfig(self.representation, self.dual, mu, self.morphisms)
