"""
Exact linear algebra over the rationals.

Matrices hold :class:`fractions.Fraction` entries in row-major order.  Vectors are plain lists of
fractions.  Large sparse matrices are passed around as lists of columns, each a dictionary
``{row: value}`` holding the non-zero entries only.  Nothing in this module uses floating point arithmetic.
"""
import logging
from fractions import Fraction
from math import gcd

from supertorsion.components.errors import NoSolution, NonSquare

logger = logging.getLogger(__name__)

QQ = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)


def to_rational(value):
    """
    Convert an integer, a fraction or a string of the form ``p/q`` into a fraction.
    :param value: value to convert
    :return: Fraction
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError('Cannot interpret %r as an exact rational' % (value,))
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise ValueError('Cannot interpret %r as an exact rational' % (value,))


class Matrix:
    """
    Immutable rectangular matrix of fractions.
    """

    __hash__ = None

    def __init__(self, rows, cols, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError('Matrix shape must be non-negative')

        self._rows = rows
        self._cols = cols

        if entries is None:
            self._data = [[ZERO] * cols for _ in range(rows)]
        else:
            entries = list(entries)
            if len(entries) != rows * cols:
                raise ValueError('Expected %s entries, received %s' % (rows * cols, len(entries)))
            self._data = [[to_rational(entries[r * cols + c]) for c in range(cols)] for r in range(rows)]

    @classmethod
    def _wrap(cls, rows, cols, data):
        result = cls.__new__(cls)
        result._rows = rows
        result._cols = cols
        result._data = data
        return result

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = [list(row) for row in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != cols:
                raise ValueError('Ragged rows in matrix literal')
        return cls._wrap(len(rows), cols, [[to_rational(entry) for entry in row] for row in rows])

    @classmethod
    def from_columns(cls, columns, rows):
        """
        Build a matrix whose columns are the given vectors.
        :param columns: list of vectors
        :param rows: length of each vector, required so that empty inputs have a shape
        """
        columns = list(columns)
        for column in columns:
            if len(column) != rows:
                raise ValueError('Column of length %s does not fit %s rows' % (len(column), rows))
        data = [[to_rational(column[r]) for column in columns] for r in range(rows)]
        return cls._wrap(rows, len(columns), data)

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols)

    @classmethod
    def identity(cls, size):
        data = [[ONE if r == c else ZERO for c in range(size)] for r in range(size)]
        return cls._wrap(size, size, data)

    @classmethod
    def diagonal(cls, values):
        values = [to_rational(value) for value in values]
        size = len(values)
        data = [[values[r] if r == c else ZERO for c in range(size)] for r in range(size)]
        return cls._wrap(size, size, data)

    @classmethod
    def block_diagonal(cls, *blocks):
        rows = sum(block.rows for block in blocks)
        cols = sum(block.cols for block in blocks)
        data = [[ZERO] * cols for _ in range(rows)]
        row_offset = col_offset = 0
        for block in blocks:
            for r in range(block.rows):
                data[row_offset + r][col_offset:col_offset + block.cols] = block._data[r]
            row_offset += block.rows
            col_offset += block.cols
        return cls._wrap(rows, cols, data)

    @property
    def rows(self):
        return self._rows

    @property
    def cols(self):
        return self._cols

    @property
    def shape(self):
        return self._rows, self._cols

    @property
    def entries(self):
        return [entry for row in self._data for entry in row]

    def is_square(self):
        return self._rows == self._cols

    def is_zero(self):
        return all(not entry for row in self._data for entry in row)

    def row(self, index):
        return list(self._data[index])

    def column(self, index):
        return [row[index] for row in self._data]

    def columns(self):
        return [self.column(index) for index in range(self._cols)]

    def row_list(self):
        return [list(row) for row in self._data]

    def __getitem__(self, key):
        row, col = key
        return self._data[row][col]

    def transpose(self):
        return Matrix._wrap(self._cols, self._rows, [list(column) for column in zip(*self._data)]
                            if self._rows else [[] for _ in range(self._cols)])

    @property
    def T(self):
        return self.transpose()

    def submatrix(self, row_indices, col_indices):
        row_indices = list(row_indices)
        col_indices = list(col_indices)
        data = [[self._data[r][c] for c in col_indices] for r in row_indices]
        return Matrix._wrap(len(row_indices), len(col_indices), data)

    def hstack(self, other):
        if self._rows != other.rows:
            raise ValueError('Cannot place %s beside %s' % (self.shape, other.shape))
        return Matrix._wrap(self._rows, self._cols + other.cols,
                            [left + right for left, right in zip(self._data, other._data)])

    def vstack(self, other):
        if self._cols != other.cols:
            raise ValueError('Cannot place %s above %s' % (self.shape, other.shape))
        return Matrix._wrap(self._rows + other.rows, self._cols, self.row_list() + other.row_list())

    def apply(self, vector):
        """
        Multiply the matrix by a column vector.
        :param vector: list of length cols
        :return: list of length rows
        """
        if len(vector) != self._cols:
            raise ValueError('Vector of length %s does not fit %s' % (len(vector), self.shape))
        support = [(index, value) for index, value in enumerate(vector) if value]
        return [sum((row[index] * value for index, value in support), ZERO) for row in self._data]

    def scale(self, scalar):
        scalar = to_rational(scalar)
        return Matrix._wrap(self._rows, self._cols, [[scalar * entry for entry in row] for row in self._data])

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return self.scale(other)
        if self._cols != other.rows:
            raise ValueError('Cannot multiply %s by %s' % (self.shape, other.shape))
        columns = other.transpose()._data
        data = []
        for row in self._data:
            support = [(index, value) for index, value in enumerate(row) if value]
            data.append([sum((value * column[index] for index, value in support), ZERO) for column in columns])
        return Matrix._wrap(self._rows, other.cols, data)

    def __rmul__(self, other):
        return self.scale(other)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError('Cannot add %s and %s' % (self.shape, other.shape))
        return Matrix._wrap(self._rows, self._cols,
                            [[a + b for a, b in zip(left, right)] for left, right in zip(self._data, other._data)])

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.scale(-1)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __repr__(self):
        return 'Matrix(%s, %s, %s)' % (self._rows, self._cols, [str(entry) for entry in self.entries])


def _reduce(data, cols, limit=None):
    """
    Gauss-Jordan elimination in place.
    :param data: list of rows, modified in place
    :param cols: number of columns
    :param limit: only columns below limit are used as pivots
    :return: (pivot columns, determinant of the accumulated row operations)
    """
    limit = cols if limit is None else limit
    pivots = []
    transform_det = ONE
    current = 0
    row_count = len(data)

    for column in range(limit):
        if current >= row_count:
            break

        pivot_row = None
        for r in range(current, row_count):
            if data[r][column]:
                pivot_row = r
                break
        if pivot_row is None:
            continue

        if pivot_row != current:
            data[current], data[pivot_row] = data[pivot_row], data[current]
            transform_det = -transform_det

        pivot = data[current][column]
        row = data[current]
        if pivot != ONE:
            inverse = ONE / pivot
            for c in range(column, cols):
                if row[c]:
                    row[c] *= inverse
            transform_det *= inverse

        support = [c for c in range(column, cols) if row[c]]
        for r in range(row_count):
            if r == current:
                continue
            factor = data[r][column]
            if factor:
                target = data[r]
                for c in support:
                    target[c] -= factor * row[c]

        pivots.append(column)
        current += 1

    return pivots, transform_det


def rref(matrix):
    """
    Reduced row echelon form.
    :param matrix: Matrix
    :return: (reduced Matrix, list of pivot columns, determinant of the row operation matrix T with T * matrix = reduced)
    """
    data = matrix.row_list()
    pivots, transform_det = _reduce(data, matrix.cols)
    return Matrix._wrap(matrix.rows, matrix.cols, data), pivots, transform_det


def rank(matrix):
    return len(rref(matrix)[1])


def kernel_basis(matrix):
    """
    Basis of the null space, one vector for each free column of the reduced form.
    """
    reduced, pivots, _ = rref(matrix)
    pivot_set = set(pivots)
    basis = []
    for free in range(matrix.cols):
        if free in pivot_set:
            continue
        vector = [ZERO] * matrix.cols
        vector[free] = ONE
        for row_index, pivot in enumerate(pivots):
            vector[pivot] = -reduced[row_index, free]
        basis.append(vector)
    return basis


def image_basis(matrix):
    """
    Basis of the column space made of the original pivot columns.
    """
    _, pivots, _ = rref(matrix)
    return [matrix.column(pivot) for pivot in pivots]


def solve_many(matrix, vectors):
    """
    Solve ``matrix * x = b`` for every b in vectors with one elimination.
    :raises NoSolution: when some b lies outside the column space.
    :return: list of solutions, free variables set to zero.
    """
    vectors = list(vectors)
    for vector in vectors:
        if len(vector) != matrix.rows:
            raise ValueError('Right hand side of length %s does not fit %s' % (len(vector), matrix.shape))

    cols = matrix.cols + len(vectors)
    data = [matrix.row(r) + [to_rational(vector[r]) for vector in vectors] for r in range(matrix.rows)]
    pivots, _ = _reduce(data, cols, limit=matrix.cols)

    for r in range(len(pivots), matrix.rows):
        for index in range(len(vectors)):
            if data[r][matrix.cols + index]:
                raise NoSolution('Right hand side %s is not in the column space' % index, index=index)

    solutions = []
    for index in range(len(vectors)):
        solution = [ZERO] * matrix.cols
        for row_index, pivot in enumerate(pivots):
            solution[pivot] = data[row_index][matrix.cols + index]
        solutions.append(solution)
    return solutions


def solve(matrix, vector):
    return solve_many(matrix, [vector])[0]


def _lcm(a, b):
    return a * b // gcd(a, b)


def det(matrix):
    """
    Determinant computed with fraction-free Bareiss elimination on the row-scaled integer matrix.
    :raises NonSquare: for rectangular input.
    """
    if not matrix.is_square():
        raise NonSquare('Determinant of a %sx%s matrix' % matrix.shape, shape=matrix.shape)

    size = matrix.rows
    if size == 0:
        return ONE

    scale = ONE
    data = []
    for row in matrix.row_list():
        common = 1
        for entry in row:
            common = _lcm(common, entry.denominator)
        scale *= common
        data.append([int(entry * common) for entry in row])

    sign = 1
    previous = 1
    for k in range(size - 1):
        if data[k][k] == 0:
            swap = None
            for r in range(k + 1, size):
                if data[r][k] != 0:
                    swap = r
                    break
            if swap is None:
                return ZERO
            data[k], data[swap] = data[swap], data[k]
            sign = -sign
        pivot = data[k][k]
        for r in range(k + 1, size):
            row = data[r]
            lead = row[k]
            for c in range(k + 1, size):
                row[c] = (pivot * row[c] - lead * data[k][c]) // previous
            row[k] = 0
        previous = pivot

    return Fraction(sign * data[size - 1][size - 1]) / scale


def inverse(matrix):
    """
    :raises NonSquare: for rectangular input.
    :raises NoSolution: for singular input.
    """
    if not matrix.is_square():
        raise NonSquare('Inverse of a %sx%s matrix' % matrix.shape, shape=matrix.shape)
    size = matrix.rows
    data = [matrix.row(r) + [ONE if r == c else ZERO for c in range(size)] for r in range(size)]
    pivots, _ = _reduce(data, 2 * size, limit=size)
    if len(pivots) < size:
        raise NoSolution('Matrix is singular')
    return Matrix._wrap(size, size, [row[size:] for row in data])


def complement_basis(base, candidates, length):
    """
    Select the candidates that are independent modulo the span of base.
    :param base: list of vectors
    :param candidates: list of vectors
    :param length: common length of all vectors
    :return: the selected candidates, in their original order
    """
    base = list(base)
    candidates = list(candidates)
    combined = Matrix.from_columns(base + candidates, length)
    _, pivots, _ = rref(combined)
    offset = len(base)
    return [candidates[pivot - offset] for pivot in pivots if pivot >= offset]


def coordinates(basis, vectors, length):
    """
    Coordinates of each vector with respect to an independent family.
    :raises NoSolution: when a vector leaves the span.
    """
    return solve_many(Matrix.from_columns(basis, length), vectors)


def unit_vector(length, index):
    vector = [ZERO] * length
    vector[index] = ONE
    return vector


def is_zero_vector(vector):
    return all(not entry for entry in vector)


def dot(left, right):
    return sum((a * b for a, b in zip(left, right) if a and b), ZERO)


def add_vectors(left, right):
    return [a + b for a, b in zip(left, right)]


def scale_vector(scalar, vector):
    return [scalar * entry for entry in vector]


def _column_reduce(columns):
    """
    Reduce every sparse column against the earlier ones by clearing its lowest entry, until the lowest
    entry is new or the column vanishes.  The reduced columns differ from the originals by a unit upper
    triangular change of columns.
    :param columns: list of dictionaries ``{row: value}``
    :return: (lowest row of each reduced column or None when it vanished, product of the lowest entries)
    """
    reduced = {}
    lows = []
    product = ONE
    for column in columns:
        current = dict((row, to_rational(value)) for row, value in column.items() if value)
        while current:
            low = max(current)
            pivot = reduced.get(low)
            if pivot is None:
                break
            factor = current[low] / pivot[low]
            for row, value in pivot.items():
                updated = current.get(row, ZERO) - factor * value
                if updated:
                    current[row] = updated
                else:
                    current.pop(row, None)
        if current:
            low = max(current)
            reduced[low] = current
            lows.append(low)
            product *= current[low]
        else:
            lows.append(None)
    logger.debug('Reduced %s sparse columns to %s pivots', len(columns), len(reduced))
    return lows, product


def independent_columns(columns):
    """
    Indices of the sparse columns that are independent of the columns before them.
    """
    lows, _ = _column_reduce(columns)
    return [index for index, low in enumerate(lows) if low is not None]


def _permutation_sign(values):
    sign = 1
    seen = set()
    for start in range(len(values)):
        if start in seen:
            continue
        length = 0
        current = start
        while current not in seen:
            seen.add(current)
            current = values[current]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def sparse_det(columns, size):
    """
    Determinant of a square matrix given by sparse columns with rows in ``range(size)``.
    :raises NonSquare: unless there are exactly size columns.
    """
    if len(columns) != size:
        raise NonSquare('Determinant of %s sparse columns of length %s' % (len(columns), size),
                        shape=(size, len(columns)))
    lows, product = _column_reduce(columns)
    if any(low is None for low in lows):
        return ZERO
    return _permutation_sign(lows) * product


def sparse_columns(matrix):
    return [dict((row, matrix[row, col]) for row in range(matrix.rows) if matrix[row, col])
            for col in range(matrix.cols)]
