"""Linear fractional transformations of the extended complex plane
"""
import logging
from collections import namedtuple
from typing import Any, Dict, Sequence

from . import arith
from .arith import INF, ONE, ZERO, ExtScalar, Scalar
from .exc import Invalid, SingularOperator

log = logging.getLogger(__name__)


class Lft(namedtuple('Lft', 'a b c d')):
    """The map ``z -> (a z + b) / (c z + d)``, coefficients scaled so the first nonzero one is 1
    """
    __slots__ = ()

    def __call__(self, z):
        # type: (ExtScalar) -> ExtScalar
        return apply(self, z)

    @property
    def determinant(self):
        # type: () -> Scalar
        return self.a * self.d - self.b * self.c

    def __str__(self):
        return 'z -> ({} z + {}) / ({} z + {})'.format(*(arith.format_scalar(x) for x in self))


def make_lft(a, b, c, d):
    # type: (Any, Any, Any, Any) -> Lft
    """Build a canonical Lft, rejecting ``ad - bc = 0``
    """
    coeffs = [Scalar.of(x) for x in (a, b, c, d)]
    if (coeffs[0] * coeffs[3] - coeffs[1] * coeffs[2]).is_zero:
        raise SingularOperator("Linear fractional transformation needs ad - bc != 0.")
    first = next(x for x in coeffs if not x.is_zero)
    return Lft(*(x / first for x in coeffs))


def identity():
    # type: () -> Lft
    return Lft(ONE, ZERO, ZERO, ONE)


def apply(l, z):
    # type: (Lft, ExtScalar) -> ExtScalar
    """Evaluate ``l`` at ``z``; ``inf`` goes to ``a/c`` and the pole ``-d/c`` to ``inf``
    """
    if z is INF:
        return INF if l.c.is_zero else l.a / l.c
    denominator = l.c * z + l.d
    if denominator.is_zero:
        return INF
    return (l.a * z + l.b) / denominator


def compose(l1, l2):
    # type: (Lft, Lft) -> Lft
    """The map ``z -> l1(l2(z))``
    """
    return make_lft(l1.a * l2.a + l1.b * l2.c,
                    l1.a * l2.b + l1.b * l2.d,
                    l1.c * l2.a + l1.d * l2.c,
                    l1.c * l2.b + l1.d * l2.d)


def inverse(l):
    # type: (Lft) -> Lft
    return make_lft(l.d, -l.b, -l.c, l.a)


def _to_zero_one_inf(x1, x2, x3):
    if x1 is INF:
        return make_lft(ZERO, x2 - x3, ONE, -x3)
    if x2 is INF:
        return make_lft(ONE, -x1, ONE, -x3)
    if x3 is INF:
        return make_lft(ONE, -x1, ZERO, x2 - x1)
    return make_lft(x2 - x3, -x1 * (x2 - x3), x2 - x1, -x3 * (x2 - x1))


def _distinct(triple, name):
    if len(triple) != 3:
        raise Invalid("Three points are needed for {}, got {}.".format(name, len(triple)))
    values = [v if v is INF else Scalar.of(v) for v in triple]
    for i in range(3):
        for j in range(i + 1, 3):
            if values[i] == values[j]:
                raise Invalid("Points of {} must be pairwise distinct, {} is repeated.".format(
                    name, arith.format_scalar(values[i])))
    return values


def from_three_points(x, y):
    # type: (Sequence[ExtScalar], Sequence[ExtScalar]) -> Lft
    """The unique Lft sending ``x[i]`` to ``y[i]`` for i = 0, 1, 2
    """
    x = _distinct(x, 'the source triple')
    y = _distinct(y, 'the target triple')
    return compose(inverse(_to_zero_one_inf(*y)), _to_zero_one_inf(*x))


def lft_of_qubit_op(A):
    # type: (Sequence[Sequence[Any]]) -> Lft
    """How the eigenvalue coordinate moves when the qubit factor ``A`` is applied

    With ``R' = a00 R + a01 S`` and ``S' = a10 R + a11 S``, an eigenvalue ``x`` of
    ``(R, S)`` becomes ``(a00 x - a01) / (a11 - a10 x)``.
    """
    A = arith.matrix(A)
    if len(A) != 2 or len(A[0]) != 2:
        raise Invalid("Qubit operator must be a 2x2 matrix.")
    try:
        return make_lft(A[0][0], -A[0][1], -A[1][0], A[1][1])
    except SingularOperator:
        raise SingularOperator("Qubit operator A is not invertible.")


def lft_to_json(l):
    # type: (Lft) -> Dict[str, Any]
    return {name: arith.scalar_to_json(value) for name, value in zip(l._fields, l)}


def lft_from_json(doc):
    # type: (Dict[str, Any]) -> Lft
    try:
        values = [arith.scalar_from_json(doc[name]) for name in Lft._fields]
    except (KeyError, TypeError):
        raise Invalid("Lft document must have a, b, c and d fields.")
    if any(v is INF for v in values):
        raise Invalid("Lft coefficients must be finite.")
    return make_lft(*values)
