"""Scalars, exact linear algebra and univariate polynomial roots

Exact scalars are Gaussian rationals backed by :class:`fractions.Fraction`; any
value that has touched a float is approximate, and stays approximate.
"""
import logging
import math
from fractions import Fraction
from functools import cmp_to_key
from typing import Any, List, Optional, Sequence, Tuple, Union

import numpy as np
import sympy

from .exc import Invalid, NotExact

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9
SNAP_MAX_DENOMINATOR = 64

_NEWTON_STEPS = 50
_POLISH_TOL = 1e-15

_T = sympy.Symbol('t')


class Scalar(object):
    """A complex number, either exact (Gaussian rational) or approximate (two floats)
    """
    __slots__ = ('re', 'im', 'exact')

    def __init__(self, re=0, im=0):
        if isinstance(re, float) or isinstance(im, float):
            self.re = float(re)
            self.im = float(im)
            self.exact = False
        else:
            self.re = Fraction(re)
            self.im = Fraction(im)
            self.exact = True

    @classmethod
    def of(cls, value):
        # type: (Any) -> Scalar
        """Coerce ints, Fractions, floats, complex numbers and strings to a Scalar

        Strings are parsed as exact rationals (``"3/4"``, ``"-2"``, ``"1.5"``).
        """
        if isinstance(value, Scalar):
            return value
        if isinstance(value, complex):
            return _make(value.real, value.imag, False)
        if isinstance(value, str):
            try:
                return _make(Fraction(value.strip()), Fraction(0), True)
            except (ValueError, ZeroDivisionError):
                raise Invalid("Cannot read '{}' as an exact rational.".format(value))
        if isinstance(value, np.complexfloating):
            return _make(float(value.real), float(value.imag), False)
        if isinstance(value, _Infinity):
            raise Invalid("Infinity is not a finite scalar.")
        return cls(value)

    @property
    def is_zero(self):
        # type: () -> bool
        return not self.re and not self.im

    def __bool__(self):
        return not self.is_zero

    __nonzero__ = __bool__

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.exact and other.exact:
            return _make(self.re + other.re, self.im + other.im, True)
        return _make(float(self.re) + float(other.re), float(self.im) + float(other.im), False)

    __radd__ = __add__

    def __neg__(self):
        return _make(-self.re, -self.im, self.exact)

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if self.exact and other.exact:
            if not b and not d:
                return _make(a * c, b, True)
            return _make(a * c - b * d, a * d + b * c, True)
        a, b, c, d = float(a), float(b), float(c), float(d)
        return _make(a * c - b * d, a * d + b * c, False)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("Division of {} by zero".format(self))
        a, b, c, d = self.re, self.im, other.re, other.im
        if self.exact and other.exact:
            if not d:
                return _make(a / c, b / c, True)
            norm = c * c + d * d
            return _make((a * c + b * d) / norm, (b * c - a * d) / norm, True)
        return Scalar.of(complex(self) / complex(other))

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    __div__ = __truediv__
    __rdiv__ = __rtruediv__

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return False
        return self.re == other.re and self.im == other.im

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.re, self.im))

    def __abs__(self):
        return math.hypot(float(self.re), float(self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def approx(self):
        # type: () -> Scalar
        """Get the approximate variant of this value
        """
        return _make(float(self.re), float(self.im), False)

    def __repr__(self):
        return 'Scalar({!r}, {!r})'.format(str(self.re), str(self.im)) if self.exact \
            else 'Scalar({!r}, {!r})'.format(self.re, self.im)

    def __str__(self):
        return format_scalar(self)


class _Infinity(object):
    """The point at infinity of the extended complex plane
    """
    __slots__ = ()
    exact = True
    is_zero = False

    def __eq__(self, other):
        return other is self

    def __ne__(self, other):
        return other is not self

    def __hash__(self):
        return hash('inf')

    def __repr__(self):
        return 'INF'

    def __str__(self):
        return 'inf'


INF = _Infinity()

ExtScalar = Union[Scalar, _Infinity]
Matrix = Tuple[Tuple[Scalar, ...], ...]

ZERO = Scalar(0)
ONE = Scalar(1)


def _make(re, im, exact):
    value = object.__new__(Scalar)
    value.re = re
    value.im = im
    value.exact = exact
    return value


def _coerce(value):
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction, float, complex, np.number)):
        return Scalar.of(value)
    return None


def format_scalar(z):
    # type: (ExtScalar) -> str
    """Format a value as ``1/2``, ``-3i``, ``1/2+3i`` or ``0.25-1.5i``
    """
    if z is INF:
        return 'inf'
    if z.exact:
        re, im = str(z.re), str(abs(z.im))
    else:
        re, im = '{:.12g}'.format(z.re), '{:.12g}'.format(abs(z.im))
    if not z.im:
        return re
    if im == '1':
        im = ''
    sign = '-' if z.im < 0 else '+'
    if not z.re:
        return '{}{}i'.format('-' if sign == '-' else '', im)
    return '{}{}{}i'.format(re, sign, im)


def order_key(z):
    # type: (ExtScalar) -> Tuple
    """Sort key for the fixed total order on the extended plane

    Finite values compare by (real part, imaginary part); infinity is greatest.
    """
    if z is INF:
        return (1,)
    return (0, z.re, z.im)


def compare(a, b, tol=0.0):
    # type: (ExtScalar, ExtScalar, float) -> int
    """Three-way comparison in the fixed order, tolerant when either value is approximate
    """
    if a is INF:
        return 0 if b is INF else 1
    if b is INF:
        return -1
    if a.exact and b.exact:
        tol = 0.0
    scale = max(1.0, abs(a), abs(b))
    if abs(a.re - b.re) > tol * scale:
        return -1 if a.re < b.re else 1
    if abs(a.im - b.im) > tol * scale:
        return -1 if a.im < b.im else 1
    return 0


def sort_values(values, tol=DEFAULT_TOL):
    # type: (Sequence[ExtScalar], float) -> List[ExtScalar]
    return sorted(values, key=cmp_to_key(lambda a, b: compare(a, b, tol)))


def approx_eq(a, b, tol=DEFAULT_TOL):
    # type: (ExtScalar, ExtScalar, float) -> bool
    """Check ``|a - b| <= tol * max(1, |a|, |b|)``; infinity only equals infinity
    """
    if a is INF or b is INF:
        return a is b
    if a.exact and b.exact and a == b:
        return True
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def snap(z, tol=DEFAULT_TOL, max_denominator=SNAP_MAX_DENOMINATOR):
    # type: (ExtScalar, float, int) -> Tuple[ExtScalar, bool]
    """Replace an approximate value by a nearby small-denominator Gaussian rational

    Returns the (possibly unchanged) value and whether it was replaced.
    """
    if z is INF or z.exact:
        return z, False
    if not (math.isfinite(z.re) and math.isfinite(z.im)):
        return z, False
    candidate = Scalar(Fraction(z.re).limit_denominator(max_denominator),
                       Fraction(z.im).limit_denominator(max_denominator))
    if abs(z - candidate) <= tol * max(1.0, abs(z)):
        return candidate, True
    return z, False


def scalar_to_json(z):
    # type: (ExtScalar) -> Any
    if z is INF:
        return 'inf'
    if z.exact:
        return {'re': str(z.re), 'im': str(z.im)}
    return {'re': z.re, 'im': z.im}


def scalar_from_json(doc):
    # type: (Any) -> ExtScalar
    if doc == 'inf':
        return INF
    if not isinstance(doc, dict):
        raise Invalid("Scalar must be an object with re and im fields or the string 'inf'.")
    return scalar_from_parts(doc.get('re', 0), doc.get('im', 0))


def scalar_from_parts(re, im):
    # type: (Any, Any) -> Scalar
    """Build a Scalar from the JSON encodings of its two components
    """
    parts = []
    for part in (re, im):
        if isinstance(part, bool) or not isinstance(part, (int, float, str)):
            raise Invalid("Scalar component {!r} is not a number or a rational string.".format(part))
        parts.append(Scalar.of(part).re if isinstance(part, str) else part)
    return Scalar(parts[0], parts[1])


# Matrices are tuples of row tuples of Scalars

def matrix(rows):
    # type: (Sequence[Sequence[Any]]) -> Matrix
    rows = tuple(tuple(Scalar.of(x) for x in row) for row in rows)
    if rows and len(set(len(row) for row in rows)) != 1:
        raise Invalid("Matrix rows have different lengths.")
    return rows


def zeros(m, n):
    # type: (int, int) -> Matrix
    return tuple(tuple(ZERO for _ in range(n)) for _ in range(m))


def identity(n):
    # type: (int) -> Matrix
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def transpose(M):
    # type: (Matrix) -> Matrix
    return tuple(zip(*M))


def matmul(A, B):
    # type: (Matrix, Matrix) -> Matrix
    columns = transpose(B)
    return tuple(tuple(_dot(row, col) for col in columns) for row in A)


def _dot(u, v):
    total = ZERO
    for a, b in zip(u, v):
        if not a.is_zero and not b.is_zero:
            total = total + a * b
    return total


def matrix_is_exact(M):
    # type: (Matrix) -> bool
    return all(x.exact for row in M for x in row)


def to_complex_array(M, n_cols=None):
    # type: (Matrix, Optional[int]) -> np.ndarray
    if not M:
        return np.zeros((0, n_cols or 0), dtype=complex)
    return np.array([[complex(x) for x in row] for row in M], dtype=complex)


def _echelon(M, reduced):
    """Row-reduce an exact matrix, returning the nonzero rows and pivot columns
    """
    rows = [list(row) for row in M]
    pivots = []
    if not rows:
        return rows, pivots
    r = 0
    for c in range(len(rows[0])):
        pivot = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inverse = ONE / rows[r][c]
        rows[r] = [x * inverse if not x.is_zero else x for x in rows[r]]
        targets = range(len(rows)) if reduced else range(r + 1, len(rows))
        for i in targets:
            factor = rows[i][c]
            if i == r or factor.is_zero:
                continue
            rows[i] = [a if b.is_zero else a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _require_exact(M):
    if not matrix_is_exact(M):
        raise NotExact("Exact linear algebra was given a matrix with approximate entries.")


def rank_exact(M):
    # type: (Matrix) -> int
    """Rank over the Gaussian rationals
    """
    _require_exact(M)
    return len(_echelon(M, reduced=False)[1])


def right_nullspace_exact(M):
    # type: (Matrix) -> List[Tuple[Scalar, ...]]
    """Basis of ``{v : M v = 0}``, one vector per free column, in column order
    """
    _require_exact(M)
    if not M:
        return []
    n = len(M[0])
    rows, pivots = _echelon(M, reduced=True)
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        v = [ZERO] * n
        v[free] = ONE
        for row, p in zip(rows, pivots):
            v[p] = -row[free]
        basis.append(tuple(v))
    return basis


def rank_numeric(M, tol=DEFAULT_TOL, n_cols=None):
    # type: (Matrix, float, Optional[int]) -> int
    """Rank by singular value thresholding at ``tol`` times the largest singular value
    """
    arr = to_complex_array(M, n_cols)
    if arr.size == 0:
        return 0
    s = np.linalg.svd(arr, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.count_nonzero(s > tol * s[0]))


def rank(M, tol=DEFAULT_TOL):
    # type: (Matrix, float) -> int
    """Exact rank when every entry is exact, thresholded numeric rank otherwise
    """
    if matrix_is_exact(M):
        return rank_exact(M)
    return rank_numeric(M, tol)


class UniPoly(object):
    """Univariate polynomial with Scalar coefficients in ascending degree
    """
    __slots__ = ('coeffs',)

    def __init__(self, coeffs=()):
        cs = [Scalar.of(c) for c in coeffs]
        while cs and cs[-1].is_zero:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def linear_factor(cls, root):
        # type: (Scalar) -> UniPoly
        """The monic polynomial ``t - root``
        """
        return cls((-root, ONE))

    @property
    def degree(self):
        # type: () -> int
        """Degree, with -1 for the zero polynomial
        """
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def lead(self):
        # type: () -> Scalar
        return self.coeffs[-1] if self.coeffs else ZERO

    @property
    def exact(self):
        # type: () -> bool
        return all(c.exact for c in self.coeffs)

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, _as_poly(other).coeffs
        if len(a) < len(b):
            a, b = b, a
        return UniPoly(tuple(x + y for x, y in zip(a, b)) + a[len(b):])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero or other.is_zero:
            return UniPoly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero:
                    out[i + j] = out[i + j] + a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = _as_poly(other)
        if other.is_zero:
            raise ZeroDivisionError("Polynomial division by zero")
        remainder = list(self.coeffs)
        d = other.degree
        if self.degree < d:
            return UniPoly(), self
        quotient = [ZERO] * (self.degree - d + 1)
        inverse_lead = ONE / other.lead
        for k in range(self.degree - d, -1, -1):
            coeff = remainder[k + d] * inverse_lead
            quotient[k] = coeff
            if coeff.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                remainder[k + j] = remainder[k + j] - coeff * b
            remainder[k + d] = ZERO
        return UniPoly(quotient), UniPoly(remainder[:d])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, z):
        # type: (Any) -> Scalar
        z = Scalar.of(z)
        total = ZERO
        for c in reversed(self.coeffs):
            total = total * z + c
        return total

    def derivative(self):
        # type: () -> UniPoly
        return UniPoly(tuple(c * k for k, c in enumerate(self.coeffs) if k))

    def monic(self):
        # type: () -> UniPoly
        if self.is_zero:
            return self
        inverse = ONE / self.lead
        return UniPoly(tuple(c * inverse for c in self.coeffs))

    def root_order_at_zero(self):
        # type: () -> int
        """Multiplicity of the root 0
        """
        for k, c in enumerate(self.coeffs):
            if not c.is_zero:
                return k
        raise Invalid("The zero polynomial has no root multiplicities.")

    def multiplicity(self, root):
        # type: (Scalar) -> int
        """Multiplicity of an exact root, by repeated exact division
        """
        count, rest = 0, self
        factor = UniPoly.linear_factor(root)
        while not rest.is_zero:
            quotient, remainder = divmod(rest, factor)
            if not remainder.is_zero:
                break
            count, rest = count + 1, quotient
        return count

    def squarefree_decomposition(self):
        # type: () -> List[Tuple[UniPoly, int]]
        """Yun's square-free factorization: pairwise coprime monic factors with multiplicities
        """
        f = self.monic()
        df = f.derivative()
        common = poly_gcd(f, df)
        b = f // common
        d = df // common - b.derivative()
        out = []
        i = 1
        while b.degree > 0:
            a = poly_gcd(b, d)
            if a.degree > 0:
                out.append((a, i))
            b = b // a
            d = d // a - b.derivative()
            i += 1
        return out

    def __repr__(self):
        return 'UniPoly([{}])'.format(', '.join(str(c) for c in self.coeffs))


def _as_poly(value):
    if isinstance(value, UniPoly):
        return value
    return UniPoly((value,))


def poly_gcd(a, b):
    # type: (UniPoly, UniPoly) -> UniPoly
    """Monic greatest common divisor (the zero polynomial for two zeros)
    """
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def poly_roots(p, tol=DEFAULT_TOL):
    # type: (UniPoly, float) -> List[Tuple[ExtScalar, int]]
    """Roots of ``p`` with multiplicities

    For exact polynomials every square-free part is factored over the Gaussian rationals:
    linear factors give exact roots, the remaining irreducible factors are solved
    numerically. Roots closer than ``tol`` are merged. Multiplicities sum to the degree.
    """
    if p.is_zero:
        raise Invalid("The zero polynomial has no well-defined roots.")
    if p.degree == 0:
        return []
    if p.exact:
        found = []
        for factor, multiplicity in p.squarefree_decomposition():
            found.extend((root, multiplicity) for root in _squarefree_roots(factor))
    else:
        found = [(Scalar.of(z), 1) for z in _numeric_roots([complex(c) for c in reversed(p.coeffs)])]
    return _merge_roots(found, tol)


def _squarefree_roots(f):
    if f.degree == 1:
        return [-f.coeffs[0] / f.coeffs[1]]
    roots = []  # type: List[Scalar]
    for factor in gaussian_factors(f):
        coeffs = factor.all_coeffs()
        if len(coeffs) == 2:
            roots.append(_from_sympy(-coeffs[1] / coeffs[0]))
        else:
            log.debug("Solving irreducible degree %d factor numerically", len(coeffs) - 1)
            roots.extend(Scalar.of(z) for z in _numeric_roots([complex(c) for c in coeffs]))
    return roots


def gaussian_factors(f):
    # type: (UniPoly) -> List[sympy.Poly]
    """Irreducible factors of an exact polynomial over the Gaussian rationals
    """
    _require_exact_poly(f)
    expr = sympy.Add(*(_to_sympy(c) * _T ** k for k, c in enumerate(f.coeffs)))
    _, factors = sympy.Poly(expr, _T, extension=sympy.I).factor_list()
    return [factor for factor, _ in factors]


def _require_exact_poly(f):
    if not f.exact:
        raise NotExact("Factorization over the Gaussian rationals needs exact coefficients.")


def _to_sympy(z):
    return sympy.Rational(z.re.numerator, z.re.denominator) + \
        sympy.I * sympy.Rational(z.im.numerator, z.im.denominator)


def _from_sympy(value):
    re, im = sympy.expand_complex(value).as_real_imag()
    return Scalar(_fraction(re), _fraction(im))


def _fraction(value):
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def _numeric_roots(coeffs):
    # type: (Sequence[complex]) -> List[complex]
    """Companion-matrix roots of descending coefficients, polished by Newton steps
    """
    coeffs = np.array(coeffs, dtype=complex)
    derivative = np.polyder(coeffs)
    roots = []
    for z in np.roots(coeffs):
        for _ in range(_NEWTON_STEPS):
            slope = np.polyval(derivative, z)
            if slope == 0:
                break
            step = np.polyval(coeffs, z) / slope
            if not np.isfinite(step):
                break
            z = z - step
            if abs(step) <= _POLISH_TOL * max(1.0, abs(z)):
                break
        roots.append(complex(z))
    return roots


def _merge_roots(found, tol):
    merged = []  # type: List[List[Any]]
    for value, multiplicity in found:
        for entry in merged:
            if (not value.exact or not entry[0].exact) and approx_eq(entry[0], value, tol):
                entry[1] += multiplicity
                break
        else:
            merged.append([value, multiplicity])
    merged.sort(key=lambda entry: order_key(entry[0]))
    return [(value, multiplicity) for value, multiplicity in merged]

