"""Tripartite states, their matrix pencils and local operators

A state in 2 x m x n is stored sparsely as sorted ``((i, j, k), amplitude)`` pairs. Its
pencil is the pair of qubit slices: ``R[j][k]`` is the amplitude of ``|0jk>`` and
``S[j][k]`` the amplitude of ``|1jk>``, read as ``mu R + lambda S``.
"""
import logging
import re
from collections import namedtuple
from typing import Any, Dict, Mapping, Optional, Sequence, Tuple

from . import arith
from .arith import ONE, ZERO, Matrix, Scalar
from .exc import Invalid, SingularOperator
from .validators import valid_dims, valid_index, valid_state_doc

log = logging.getLogger(__name__)

Index = Tuple[int, int, int]


class State(namedtuple('State', 'dims amps')):
    """A 2 x m x n pure state; ``amps`` holds only nonzero entries in index order
    """
    __slots__ = ()

    @property
    def m(self):
        # type: () -> int
        return self.dims[1]

    @property
    def n(self):
        # type: () -> int
        return self.dims[2]

    def amplitude(self, i, j, k):
        # type: (int, int, int) -> Scalar
        for index, value in self.amps:
            if index == (i, j, k):
                return value
        return ZERO

    @property
    def is_zero(self):
        # type: () -> bool
        return not self.amps


class Pencil(namedtuple('Pencil', 'R S')):
    """The pencil ``mu R + lambda S``
    """
    __slots__ = ()

    @property
    def shape(self):
        # type: () -> Tuple[int, int]
        m = len(self.R)
        return m, (len(self.R[0]) if m else 0)

    def at(self, t):
        # type: (Any) -> Matrix
        """The constant matrix ``R + t S``
        """
        t = Scalar.of(t)
        return tuple(tuple(r + t * s for r, s in zip(row_r, row_s)) for row_r, row_s in zip(self.R, self.S))

    @property
    def exact(self):
        # type: () -> bool
        return arith.matrix_is_exact(self.R) and arith.matrix_is_exact(self.S)


LocalOps = namedtuple('LocalOps', 'A B C')


def make_state(dims, amps=()):
    # type: (Sequence[int], Any) -> State
    """Build a State from a mapping or an iterable of ``(index, value)`` pairs

    Repeated indices are summed and zero amplitudes dropped.
    """
    dims = valid_dims(tuple(dims))
    items = amps.items() if isinstance(amps, Mapping) else amps
    collected = {}  # type: Dict[Index, Scalar]
    for index, value in items:
        index = valid_index(tuple(index), dims)
        collected[index] = collected.get(index, ZERO) + Scalar.of(value)
    return State(dims, tuple(sorted((i, v) for i, v in collected.items() if not v.is_zero)))


def zero_state(m, n):
    # type: (int, int) -> State
    return make_state((2, m, n))


def make_pencil(R, S):
    # type: (Sequence[Sequence[Any]], Sequence[Sequence[Any]]) -> Pencil
    R, S = arith.matrix(R), arith.matrix(S)
    if len(R) != len(S) or (R and len(R[0]) != len(S[0])):
        raise Invalid("Pencil's R and S must have the same shape.")
    if not R or not R[0]:
        raise Invalid("Pencil must have at least one row and one column.")
    return Pencil(R, S)


def pencil_of_state(s):
    # type: (State) -> Pencil
    R = [[ZERO] * s.n for _ in range(s.m)]
    S = [[ZERO] * s.n for _ in range(s.m)]
    for (i, j, k), value in s.amps:
        (S if i else R)[j][k] = value
    return Pencil(tuple(map(tuple, R)), tuple(map(tuple, S)))


def state_of_pencil(p):
    # type: (Pencil) -> State
    m, n = p.shape
    amps = []
    for i, slice_ in enumerate((p.R, p.S)):
        for j in range(m):
            for k in range(n):
                amps.append(((i, j, k), slice_[j][k]))
    return make_state((2, m, n), amps)


def transpose_pencil(p):
    # type: (Pencil) -> Pencil
    return Pencil(arith.transpose(p.R), arith.transpose(p.S))


def local_ops(A, B, C):
    # type: (Any, Any, Any) -> LocalOps
    return LocalOps(arith.matrix(A), arith.matrix(B), arith.matrix(C))


def identity_ops(m, n):
    # type: (int, int) -> LocalOps
    return LocalOps(arith.identity(2), arith.identity(m), arith.identity(n))


def _check_factor(name, M, size, tol):
    if len(M) != size or any(len(row) != size for row in M):
        raise Invalid("Local operator {} must be {}x{}.".format(name, size, size))
    if arith.rank(M, tol) < size:
        raise SingularOperator("Local operator {} is not invertible.".format(name))


def apply_local_ops(s, ops, tol=arith.DEFAULT_TOL):
    # type: (State, LocalOps, float) -> State
    """Apply ``A (x) B (x) C`` to a state

    On the pencil this is ``(R, S) -> (a00 R' + a01 S', a10 R' + a11 S')`` with
    ``R' = B R C^T`` and ``S' = B S C^T``.
    """
    A, B, C = ops
    _check_factor('A', A, 2, tol)
    _check_factor('B', B, s.m, tol)
    _check_factor('C', C, s.n, tol)
    p = pencil_of_state(s)
    Ct = arith.transpose(C)
    R = arith.matmul(arith.matmul(B, p.R), Ct)
    S = arith.matmul(arith.matmul(B, p.S), Ct)
    return state_of_pencil(Pencil(_combine(A[0][0], R, A[0][1], S), _combine(A[1][0], R, A[1][1], S)))


def _combine(a, X, b, Y):
    return tuple(tuple(a * x + b * y for x, y in zip(row_x, row_y)) for row_x, row_y in zip(X, Y))


def local_ranks(s, tol=arith.DEFAULT_TOL):
    # type: (State, float) -> Tuple[int, int, int]
    """Ranks of the three single-party matricizations
    """
    p = pencil_of_state(s)
    flat_a = (sum(p.R, ()), sum(p.S, ()))
    flat_b = tuple(row_r + row_s for row_r, row_s in zip(p.R, p.S))
    flat_c = tuple(col_r + col_s for col_r, col_s in zip(arith.transpose(p.R), arith.transpose(p.S)))
    return arith.rank(flat_a, tol), arith.rank(flat_b, tol), arith.rank(flat_c, tol)


def pad_state(s, n=None, m=None):
    # type: (State, Optional[int], Optional[int]) -> State
    """Embed a state into a larger space by appending zero rows (party B) or columns (party C)
    """
    m = s.m if m is None else m
    n = s.n if n is None else n
    if m < s.m or n < s.n:
        raise Invalid("Cannot pad a 2x{}x{} state down to 2x{}x{}.".format(s.m, s.n, m, n))
    return State((2, m, n), s.amps)


def snap_state(s, tol=arith.DEFAULT_TOL):
    # type: (State, float) -> Tuple[State, bool]
    """Replace approximate amplitudes by nearby small-denominator Gaussian rationals

    All or nothing: the state comes back unchanged unless every amplitude snaps.
    """
    if all(value.exact for _, value in s.amps):
        return s, False
    amps = []
    for index, value in s.amps:
        value, _ = arith.snap(value, tol)
        if not value.exact:
            return s, False
        amps.append((index, value))
    log.debug("Snapped %d approximate amplitudes to exact values", len(amps))
    return make_state(s.dims, amps), True


def product_state(a, b, c):
    # type: (Sequence[Any], Sequence[Any], Sequence[Any]) -> State
    """The product state ``|a>|b>|c>`` from three amplitude vectors
    """
    if len(a) != 2:
        raise Invalid("First factor of a product state must have 2 amplitudes.")
    a, b, c = ([Scalar.of(x) for x in v] for v in (a, b, c))
    amps = [((i, j, k), x * y * z)
            for i, x in enumerate(a) for j, y in enumerate(b) for k, z in enumerate(c)]
    return make_state((2, len(b), len(c)), amps)


def add_states(*states):
    # type: (State) -> State
    if not states:
        raise Invalid("Cannot add an empty collection of states.")
    dims = states[0].dims
    if any(s.dims != dims for s in states):
        raise Invalid("Only states with equal dims can be added.")
    return make_state(dims, [amp for s in states for amp in s.amps])


def scale_state(s, factor):
    # type: (State, Any) -> State
    factor = Scalar.of(factor)
    return make_state(s.dims, [(index, value * factor) for index, value in s.amps])


def state_to_json(s):
    # type: (State) -> Dict[str, Any]
    amps = []
    for index, value in s.amps:
        doc = {'i': list(index)}
        doc.update(arith.scalar_to_json(value))
        amps.append(doc)
    return {'dims': list(s.dims), 'amps': amps}


def state_from_json(doc):
    # type: (Dict[str, Any]) -> State
    valid_state_doc(doc)
    amps = [(amp['i'], arith.scalar_from_parts(amp.get('re', 0), amp.get('im', 0)))
            for amp in doc.get('amps') or ()]
    return make_state(doc['dims'], amps)


# Ket text

_TERM_RE = re.compile(r'\s*([+-])?\s*(\([^)]*\)|[0-9][0-9./eE]*|[0-9]*\.[0-9]+)?\s*\*?\s*\|([0-9,\s]+)>\s*')


def render_ket(s):
    # type: (State) -> str
    """Render a state as ``|001> + |100> - 2|112> + (1/2+i)|011>``
    """
    if s.is_zero:
        return '0'
    wide = max(s.dims) > 10
    parts = []
    for index, value in s.amps:
        ket = '|{}>'.format(','.join(map(str, index)) if wide else ''.join(map(str, index)))
        sign, coeff = _split_coefficient(value)
        term = coeff + ket
        if not parts:
            parts.append(('-' if sign < 0 else '') + term)
        else:
            parts.append(('- ' if sign < 0 else '+ ') + term)
    return ' '.join(parts)


def _split_coefficient(value):
    if not value.im and value.re < 0:
        sign, value = -1, -value
    else:
        sign = 1
    if value == ONE:
        return sign, ''
    text = arith.format_scalar(value)
    if value.im or not value.exact or value.re.denominator != 1:
        text = '({})'.format(text)
    return sign, text


def parse_ket(text, dims=None):
    # type: (str, Optional[Sequence[int]]) -> State
    """Parse the bra-ket notation written by :func:`render_ket`

    When ``dims`` is not given it is inferred from the largest indices present.
    """
    text = text.strip()
    if text == '0':
        if dims is None:
            raise Invalid("Cannot infer dims of the zero state; pass dims explicitly.")
        return make_state(dims)
    terms = []
    pos = 0
    while pos < len(text):
        match = _TERM_RE.match(text, pos)
        if match is None or match.end() == pos:
            raise Invalid("Cannot parse ket text near {!r}.".format(text[pos:pos + 20]))
        sign, coeff, digits = match.groups()
        if terms and sign is None:
            raise Invalid("Ket terms must be joined by + or -, near {!r}.".format(text[pos:pos + 20]))
        value = _parse_coefficient(coeff) if coeff else ONE
        if sign == '-':
            value = -value
        terms.append((_parse_index(digits), value))
        pos = match.end()
    if not terms:
        raise Invalid("Ket text contains no terms.")
    if dims is None:
        dims = (2, max(t[0][1] for t in terms) + 1, max(t[0][2] for t in terms) + 1)
    return make_state(dims, terms)


def _parse_index(digits):
    digits = digits.replace(' ', '')
    parts = digits.split(',') if ',' in digits else list(digits)
    if len(parts) != 3 or not all(p.isdigit() for p in parts):
        raise Invalid("Ket |{}> does not have three indices.".format(digits))
    return tuple(int(p) for p in parts)


def _parse_coefficient(text):
    # type: (str) -> Scalar
    body = text[1:-1].replace(' ', '') if text.startswith('(') else text
    if not body:
        raise Invalid("Empty ket coefficient.")
    if not body.endswith('i'):
        return _parse_real(body)
    body = body[:-1]
    split = _imaginary_split(body)
    re_part, im_part = body[:split], body[split:]
    if im_part in ('', '+'):
        im_part = '1'
    elif im_part == '-':
        im_part = '-1'
    real = _parse_real(re_part) if re_part else ZERO
    imag = _parse_real(im_part)
    return real + imag * Scalar(0, 1)


def _imaginary_split(body):
    for pos in range(len(body) - 1, 0, -1):
        if body[pos] in '+-' and body[pos - 1] not in 'eE':
            return pos
    return 0


def _parse_real(text):
    # type: (str) -> Scalar
    try:
        if any(c in text for c in '.eE'):
            return Scalar(float(text))
        return Scalar.of(text)
    except ValueError:
        raise Invalid("Cannot read ket coefficient {!r}.".format(text))
