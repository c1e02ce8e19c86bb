"""Kronecker structure of a matrix pencil

The structure of ``mu R + lambda S`` is the zero block ``h x g``, the right minimal
indices ``eps`` (blocks ``L_eps`` of shape eps x (eps+1)), the left minimal indices ``nu``
(blocks ``L_nu^T``) and, for every eigenvalue ``x`` (a root of ``det(R + x S)``, or
``inf``), the sizes of its Jordan blocks.

Exact pencils are handled with exact arithmetic throughout: minimal indices come from
ranks of block Toeplitz matrices and elementary divisors from the Smith form of
``R + t S`` over the Gaussian rationals. Only eigenvalue values may come back approximate
(irrational roots). Pencils with float entries take a best-effort numeric path.
"""
import logging
from collections import namedtuple
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np
import scipy.linalg

from . import arith
from .arith import INF, ONE, ZERO, ExtScalar, Scalar, UniPoly
from .exc import Invalid, SkcfError
from .state import Pencil

log = logging.getLogger(__name__)

SizeSignature = Tuple[int, ...]

_NUMERIC_SEED = 1729
_NUMERIC_EIG_TOL = 1e-6
_MAX_CLUSTER_RADIUS = 1e-2


class EigRecord(namedtuple('EigRecord', 'value sizes')):
    """An eigenvalue and its size signature (non-decreasing Jordan block sizes)
    """
    __slots__ = ()


class KroneckerStructure(namedtuple('KroneckerStructure', 'h g eps nu eigs')):
    """Kronecker invariants of a pencil; build with :func:`make_structure`
    """
    __slots__ = ()

    @property
    def regular_size(self):
        # type: () -> int
        return sum(sum(e.sizes) for e in self.eigs)

    @property
    def shape(self):
        # type: () -> Tuple[int, int]
        return structure_shape(self)


def make_structure(h=0, g=0, eps=(), nu=(), eigs=()):
    # type: (int, int, Sequence[int], Sequence[int], Any) -> KroneckerStructure
    """Validate and normalize Kronecker invariants

    ``eigs`` is a mapping or iterable of ``(value, sizes)``; values must be distinct.
    """
    if h < 0 or g < 0:
        raise Invalid("Zero block dims must be non-negative, got {}x{}.".format(h, g))
    if any(e < 1 for e in eps) or any(v < 1 for v in nu):
        raise Invalid("Minimal indices must be positive; zero indices belong to the zero block.")
    items = eigs.items() if isinstance(eigs, dict) else eigs
    records = []
    for value, sizes in items:
        value = value if value is INF else Scalar.of(value)
        sizes = tuple(sorted(sizes))
        if not sizes or sizes[0] < 1:
            raise Invalid("Size signature of eigenvalue {} must be a nonempty list of positive sizes.".format(
                arith.format_scalar(value)))
        if any(value == r.value for r in records):
            raise Invalid("Eigenvalue {} appears more than once.".format(arith.format_scalar(value)))
        records.append(EigRecord(value, sizes))
    records.sort(key=lambda r: arith.order_key(r.value))
    return KroneckerStructure(h, g, tuple(sorted(eps)), tuple(sorted(nu)), tuple(records))


def structure_shape(ks):
    # type: (KroneckerStructure) -> Tuple[int, int]
    """The (rows, cols) of the pencil a structure describes
    """
    regular = ks.regular_size
    rows = ks.h + sum(ks.eps) + sum(v + 1 for v in ks.nu) + regular
    cols = ks.g + sum(e + 1 for e in ks.eps) + sum(ks.nu) + regular
    return rows, cols


def check_dimensions(ks, m, n):
    # type: (KroneckerStructure, int, int) -> bool
    return structure_shape(ks) == (m, n)


def build_pencil(ks):
    # type: (KroneckerStructure) -> Pencil
    """Direct sum of the canonical blocks, in structure order

    Finite eigenvalue ``x`` of size k gives ``lambda I + mu (H - x I)``, ``inf`` gives
    ``mu I + lambda H``, with ``H`` the superdiagonal shift.
    """
    m, n = structure_shape(ks)
    if m < 1 or n < 1:
        raise Invalid("Structure describes an empty {}x{} pencil.".format(m, n))
    R = [[ZERO] * n for _ in range(m)]
    S = [[ZERO] * n for _ in range(m)]
    row, col = ks.h, ks.g
    for e in ks.eps:
        for i in range(e):
            S[row + i][col + i] = ONE
            R[row + i][col + i + 1] = ONE
        row, col = row + e, col + e + 1
    for v in ks.nu:
        for i in range(v):
            S[row + i][col + i] = ONE
            R[row + i + 1][col + i] = ONE
        row, col = row + v + 1, col + v
    for record in ks.eigs:
        for size in record.sizes:
            for i in range(size):
                if record.value is INF:
                    R[row + i][col + i] = ONE
                    if i + 1 < size:
                        S[row + i][col + i + 1] = ONE
                else:
                    S[row + i][col + i] = ONE
                    R[row + i][col + i] = -record.value
                    if i + 1 < size:
                        R[row + i][col + i + 1] = ONE
            row, col = row + size, col + size
    return Pencil(tuple(map(tuple, R)), tuple(map(tuple, S)))


def kronecker_structure(p, tol=arith.DEFAULT_TOL):
    # type: (Pencil, float) -> KroneckerStructure
    """Compute the Kronecker invariants of ``mu R + lambda S``
    """
    m, n = p.shape
    exact = p.exact
    if not exact:
        log.warning("Pencil has approximate entries; Kronecker structure is best-effort")
    nrank = normal_rank(p, tol)
    log.debug("Pencil %dx%d has normal rank %d", m, n, nrank)
    g, eps = _minimal_indices(p, n - nrank, exact, tol)
    h, nu = _minimal_indices(_transposed(p), m - nrank, exact, tol)
    regular = nrank - sum(eps) - sum(nu)
    log.debug("Minimal indices eps=%s nu=%s, zero block %dx%d, regular size %d", eps, nu, h, g, regular)
    if regular < 0:
        raise SkcfError("Inconsistent pencil ranks: negative regular part.")
    if regular == 0:
        eigs = []  # type: List[Tuple[ExtScalar, SizeSignature]]
    elif exact:
        eigs = _exact_eigenstructure(p, nrank, regular, tol)
    else:
        eigs = _numeric_eigenstructure(p, nrank, regular, tol)
    ks = make_structure(h, g, eps, nu, eigs)
    if not check_dimensions(ks, m, n):
        raise SkcfError("Kronecker structure {} does not fit a {}x{} pencil{}.".format(
            structure_to_json(ks), m, n, '' if exact else '; try another tol'))
    return ks


def _transposed(p):
    return Pencil(arith.transpose(p.R), arith.transpose(p.S))


def _rank(M, exact, tol, n_cols=None):
    if exact:
        return arith.rank_exact(M)
    return arith.rank_numeric(M, tol, n_cols)


def normal_rank(p, tol=arith.DEFAULT_TOL):
    # type: (Pencil, float) -> int
    """Rank of ``R + t S`` for generic ``t``
    """
    m, n = p.shape
    bound = min(m, n)
    if p.exact:
        points = [Scalar(t) for t in range(bound + 1)]
    else:
        rng = np.random.default_rng(_NUMERIC_SEED)
        points = [Scalar.of(complex(*rng.standard_normal(2))) for _ in range(2)]
    best = 0
    for t in points:
        best = max(best, _rank(p.at(t), p.exact, tol))
        if best == bound:
            break
    return best


def _toeplitz(A, B, blocks_out, blocks_in):
    """Block Toeplitz matrix with ``A`` on the block diagonal and ``B`` just below it
    """
    m, n = len(A), len(A[0])
    rows = []
    for j in range(blocks_out):
        for i in range(m):
            row = [ZERO] * (blocks_in * n)
            if j < blocks_in:
                row[j * n:(j + 1) * n] = A[i]
            if 0 < j <= blocks_in:
                row[(j - 1) * n:j * n] = B[i]
            rows.append(tuple(row))
    return tuple(rows)


def _minimal_indices(p, total, exact, tol):
    """Right minimal indices as (count of zero indices, sorted positive indices)

    ``dim ker T_k - dim ker T_(k-1)`` counts the indices ``<= k``, with ``T_k`` the
    Toeplitz matrix of ``(R + t S) v(t) = 0`` for ``deg v <= k``.
    """
    if total == 0:
        return 0, []
    m, n = p.shape
    indices = []  # type: List[int]
    previous_kernel, previous_count = 0, 0
    for k in range(m + 2):
        T = _toeplitz(p.R, p.S, k + 2, k + 1)
        kernel = (k + 1) * n - _rank(T, exact, tol, (k + 1) * n)
        count = kernel - previous_kernel
        indices.extend([k] * (count - previous_count))
        if count >= total:
            break
        previous_kernel, previous_count = kernel, count
    else:
        if exact:
            raise SkcfError("Minimal index computation did not terminate.")
        log.warning("Found %d of %d minimal indices numerically", len(indices), total)
    zeros = indices.count(0)
    return zeros, [e for e in indices if e > 0]


# Exact elementary divisors

def smith_invariant_factors(M):
    # type: (Sequence[Sequence[UniPoly]]) -> List[UniPoly]
    """Monic invariant factors ``f_1 | f_2 | ...`` of a polynomial matrix (nonzero ones only)
    """
    M = [list(row) for row in M]
    factors = []
    while M and M[0]:
        pivot = _min_degree_position(M)
        if pivot is None:
            break
        i, j = pivot
        M[0], M[i] = M[i], M[0]
        for row in M:
            row[0], row[j] = row[j], row[0]
        while _clear_pivot(M):
            pass
        factors.append(M[0][0].monic())
        M = [row[1:] for row in M[1:]]
    return factors


def _min_degree_position(M):
    best = None
    for i, row in enumerate(M):
        for j, entry in enumerate(row):
            if not entry.is_zero and (best is None or entry.degree < M[best[0]][best[1]].degree):
                best = (i, j)
    return best


def _clear_pivot(M):
    """One round of clearing the pivot row and column; True when another round is needed
    """
    pivot = M[0][0]
    for i in range(1, len(M)):
        if M[i][0].is_zero:
            continue
        quotient, remainder = divmod(M[i][0], pivot)
        M[i] = [a - quotient * b for a, b in zip(M[i], M[0])]
        if not remainder.is_zero:
            M[0], M[i] = M[i], M[0]
            return True
    for j in range(1, len(M[0])):
        if M[0][j].is_zero:
            continue
        quotient, remainder = divmod(M[0][j], pivot)
        for row in M:
            row[j] = row[j] - quotient * row[0]
        if not remainder.is_zero:
            for row in M:
                row[0], row[j] = row[j], row[0]
            return True
    for i in range(1, len(M)):
        for entry in M[i][1:]:
            if not (entry % pivot).is_zero:
                M[0] = [a + b for a, b in zip(M[0], M[i])]
                return True
    return False


def _linear_matrix(A, B):
    # A + t B
    return [[UniPoly((a, b)) for a, b in zip(row_a, row_b)] for row_a, row_b in zip(A, B)]


def _exact_eigenstructure(p, nrank, regular, tol):
    factors = smith_invariant_factors(_linear_matrix(p.R, p.S))
    if len(factors) != nrank:
        raise SkcfError("Smith form has {} invariant factors, expected {}.".format(len(factors), nrank))
    log.debug("Invariant factors of degrees %s", [f.degree for f in factors])
    eigs = []  # type: List[Tuple[ExtScalar, SizeSignature]]
    finite = sum(f.degree for f in factors)
    if finite:
        eigs.extend(_finite_divisors(factors, tol))
    if finite < regular:
        reversed_factors = smith_invariant_factors(_linear_matrix(p.S, p.R))
        sizes = [f.root_order_at_zero() for f in reversed_factors]
        eigs.append((INF, tuple(sorted(s for s in sizes if s))))
    return eigs


def _finite_divisors(factors, tol):
    """Split the roots of the largest invariant factor by their multiplicity in every factor
    """
    radical = UniPoly((ONE,))
    for part, _ in factors[-1].squarefree_decomposition():
        radical = radical * part
    classes = [(radical, ())]  # type: List[Tuple[UniPoly, Tuple[int, ...]]]
    for f in factors:
        decomposition = f.squarefree_decomposition() if f.degree > 0 else []
        refined = []
        for piece, profile in classes:
            rest = piece
            for part, multiplicity in decomposition:
                common = arith.poly_gcd(rest, part)
                if common.degree > 0:
                    refined.append((common, profile + (multiplicity,)))
                    rest = rest // common
            if rest.degree > 0:
                refined.append((rest.monic(), profile + (0,)))
        classes = refined
    eigs = []
    for piece, profile in classes:
        sizes = tuple(sorted(s for s in profile if s))
        for value, _ in arith.poly_roots(piece, tol):
            eigs.append((value, sizes))
    return eigs


# Best-effort numeric elementary divisors

def _numeric_eigenstructure(p, nrank, regular, tol):
    m, n = p.shape
    rng = np.random.default_rng(_NUMERIC_SEED)
    left = rng.standard_normal((nrank, m)) + 1j * rng.standard_normal((nrank, m))
    right = rng.standard_normal((n, nrank)) + 1j * rng.standard_normal((n, nrank))
    R = left.dot(arith.to_complex_array(p.R)).dot(right)
    S = left.dot(arith.to_complex_array(p.S)).dot(right)
    values = [complex(v) for v in scipy.linalg.eigvals(R, -S)
              if np.isfinite(v) and abs(v) <= 1 / _NUMERIC_EIG_TOL]
    radius = min(_MAX_CLUSTER_RADIUS, max(_NUMERIC_EIG_TOL, tol ** (1.0 / regular)))
    eigs = []  # type: List[Tuple[ExtScalar, SizeSignature]]
    for cluster in _clusters(values, radius):
        z = Scalar.of(complex(np.mean(cluster)))
        if arith.rank_numeric(p.at(z), _NUMERIC_EIG_TOL) >= nrank:
            continue
        sizes = _numeric_sizes(p.at(z), p.S, n - nrank)
        if sizes:
            eigs.append((z, sizes))
    if arith.rank_numeric(p.S, _NUMERIC_EIG_TOL) < nrank:
        sizes = _numeric_sizes(p.S, p.R, n - nrank)
        if sizes:
            eigs.append((INF, sizes))
    log.debug("Numeric eigenstructure: %d clusters within %.1e", len(eigs), radius)
    return eigs


def _clusters(values, radius):
    """Single-linkage groups of values closer than ``radius`` (relative to their size)
    """
    groups = []  # type: List[List[complex]]
    for z in values:
        near = [g for g in groups if any(abs(z - w) <= radius * max(1.0, abs(w)) for w in g)]
        merged = [z]
        for g in near:
            merged.extend(g)
            groups.remove(g)
        groups.append(merged)
    return groups


def _numeric_sizes(A, B, singular_columns):
    """Jordan block sizes at a point from ranks of the shifted Toeplitz matrices

    ``dim ker W_k - k * singular_columns`` sums ``min(k, size)`` over the blocks.
    """
    n = len(A[0])
    counts = [0]
    k = 0
    while True:
        k += 1
        W = _toeplitz(A, B, k, k)
        kernel = k * n - arith.rank_numeric(W, _NUMERIC_EIG_TOL, k * n) - k * singular_columns
        counts.append(kernel)
        if kernel - counts[-2] <= 0 or k > n:
            break
    at_least = [counts[i] - counts[i - 1] for i in range(1, len(counts))] + [0]
    sizes = []
    for size in range(1, len(at_least)):
        sizes.extend([size] * max(0, at_least[size - 1] - at_least[size]))
    return tuple(sizes)


def structure_to_json(ks):
    # type: (KroneckerStructure) -> Dict[str, Any]
    return {
        'h': ks.h,
        'g': ks.g,
        'eps': list(ks.eps),
        'nu': list(ks.nu),
        'eigs': [{'value': arith.scalar_to_json(r.value), 'sizes': list(r.sizes)} for r in ks.eigs],
    }


def structure_from_json(doc):
    # type: (Dict[str, Any]) -> KroneckerStructure
    try:
        eigs = [(arith.scalar_from_json(e['value']), e['sizes']) for e in doc.get('eigs', ())]
        return make_structure(doc.get('h', 0), doc.get('g', 0), doc.get('eps', ()), doc.get('nu', ()), eigs)
    except (KeyError, TypeError, AttributeError):
        raise Invalid("Kronecker structure document is malformed.")
