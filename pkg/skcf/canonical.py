"""State Kronecker canonical forms and SLOCC equivalence

The canonical form keeps the discrete Kronecker invariants of a state's pencil, groups the
eigenvalues by size signature and moves them by a linear fractional transformation to a
normal position: for up to three eigenvalues that is a prefix of ``(0, 1, inf)``, beyond
that the smallest sequence over all admissible choices of three anchors.
"""
import logging
from collections import namedtuple
from itertools import permutations
from typing import Any, Dict, List, Sequence, Tuple

from . import arith, moebius
from .arith import INF, ONE, ZERO, ExtScalar
from .exc import Invalid
from .kronecker import EigRecord, KroneckerStructure, SizeSignature, kronecker_structure, make_structure
from .state import State, pad_state, pencil_of_state, snap_state

log = logging.getLogger(__name__)

RESTRICTED = 'restricted'
ALL_TRIPLES = 'all-triples'
MODES = (RESTRICTED, ALL_TRIPLES)

ANCHORS = (ZERO, ONE, INF)


class SignatureGroup(namedtuple('SignatureGroup', 'sig count')):
    """``count`` eigenvalues sharing the size signature ``sig``
    """
    __slots__ = ()


class CanonicalForm(namedtuple('CanonicalForm', 'h g eps nu eta xhat meta')):
    """A state Kronecker canonical form

    ``meta`` records how the form was computed and is ignored by equality.
    """
    __slots__ = ()

    @property
    def key(self):
        return self[:6]

    def __eq__(self, other):
        return isinstance(other, CanonicalForm) and self.key == other.key

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.key)

    @property
    def signatures(self):
        # type: () -> List[SizeSignature]
        """Size signature of every position of ``xhat``
        """
        return [group.sig for group in self.eta for _ in range(group.count)]

    @property
    def shape(self):
        # type: () -> Tuple[int, int]
        return structure_of_form(self).shape


def make_form(h=0, g=0, eps=(), nu=(), eta=(), xhat=(), meta=None):
    # type: (int, int, Sequence[int], Sequence[int], Sequence[Any], Sequence[ExtScalar], Dict) -> CanonicalForm
    eta = tuple(SignatureGroup(tuple(sig), count) for sig, count in eta)
    return CanonicalForm(h, g, tuple(eps), tuple(nu), eta, tuple(xhat), meta or {})


def signature_group_key(group):
    # fewer eigenvalues first, then shorter signatures, then lexicographic
    return group.count, len(group.sig), group.sig


def order_signatures(eigs, tol=arith.DEFAULT_TOL):
    # type: (Sequence[EigRecord], float) -> Tuple[Tuple[SignatureGroup, ...], List[ExtScalar]]
    """Group eigenvalues by size signature and order groups and values

    Returns the signature sequence and the eigenvalues arranged group by group, each group
    sorted in the fixed order of the extended plane.
    """
    by_signature = {}  # type: Dict[SizeSignature, List[ExtScalar]]
    for record in eigs:
        by_signature.setdefault(tuple(record.sizes), []).append(record.value)
    groups = sorted((SignatureGroup(sig, len(values)) for sig, values in by_signature.items()),
                    key=signature_group_key)
    x = []  # type: List[ExtScalar]
    for group in groups:
        x.extend(arith.sort_values(by_signature[group.sig], tol))
    return tuple(groups), x


def eta_ordered(y, eta, tol=arith.DEFAULT_TOL):
    # type: (Sequence[ExtScalar], Sequence[SignatureGroup], float) -> List[ExtScalar]
    """Sort ``y`` within each signature group, keeping group boundaries
    """
    if len(y) != sum(group.count for group in eta):
        raise Invalid("Sequence of {} values does not fit signature groups of total size {}.".format(
            len(y), sum(group.count for group in eta)))
    out = []  # type: List[ExtScalar]
    start = 0
    for group in eta:
        out.extend(arith.sort_values(y[start:start + group.count], tol))
        start += group.count
    return out


def _same_value(a, b, tol):
    # exact values are only equal when identical
    if a is not INF and b is not INF and a.exact and b.exact:
        return a == b
    return arith.approx_eq(a, b, tol)


def _signature_of(value, eigs, tol):
    for record in eigs:
        if _same_value(record.value, value, tol):
            return tuple(record.sizes)
    raise Invalid("Value {} is not an eigenvalue of the structure.".format(arith.format_scalar(value)))


def same_type(u, v, eigs, tol=arith.DEFAULT_TOL):
    # type: (Sequence[ExtScalar], Sequence[ExtScalar], Sequence[EigRecord], float) -> bool
    """Whether two eigenvalue triples have the same size signatures position by position
    """
    return [_signature_of(z, eigs, tol) for z in u] == [_signature_of(z, eigs, tol) for z in v]


def compare_sequences(a, b, tol=arith.DEFAULT_TOL):
    # type: (Sequence[ExtScalar], Sequence[ExtScalar], float) -> int
    for x, y in zip(a, b):
        c = arith.compare(x, y, tol)
        if c:
            return c
    return (len(a) > len(b)) - (len(a) < len(b))


def normalize_eigenvalues(x, eta, mode=RESTRICTED, tol=arith.DEFAULT_TOL):
    # type: (Sequence[ExtScalar], Sequence[SignatureGroup], str, float) -> List[ExtScalar]
    """Move an ordered eigenvalue sequence to its normal position
    """
    return _normalized(x, eta, mode, tol)[0]


def _normalized(x, eta, mode, tol):
    if mode not in MODES:
        raise Invalid("Normalization mode must be one of {}, got {!r}.".format(', '.join(MODES), mode))
    r = len(x)
    for i in range(r):
        for j in range(i + 1, r):
            if _same_value(x[i], x[j], tol):
                raise Invalid("Eigenvalue {} is repeated.".format(arith.format_scalar(x[i])))
    if r <= 3:
        return list(ANCHORS[:r]), False
    signatures = [group.sig for group in eta for _ in range(group.count)]
    if len(signatures) != r:
        raise Invalid("Sequence of {} values does not fit signature groups of total size {}.".format(
            r, len(signatures)))
    records = [EigRecord(value, sig) for value, sig in zip(x, signatures)]
    best, best_snapped = None, False
    considered = 0
    for triple in permutations(range(r), 3):
        if mode == RESTRICTED and not same_type([x[i] for i in triple], x[:3], records, tol):
            continue
        considered += 1
        theta = moebius.from_three_points([x[i] for i in triple], ANCHORS)
        y = []
        snapped = False
        for position, value in enumerate(x):
            if position in triple:
                y.append(ANCHORS[triple.index(position)])
                continue
            image, changed = arith.snap(moebius.apply(theta, value), tol)
            snapped = snapped or changed
            y.append(image)
        candidate = eta_ordered(y, eta, tol)
        if best is None or compare_sequences(candidate, best, tol) < 0:
            best, best_snapped = candidate, snapped
    log.debug("Normalized %d eigenvalues over %d anchor triples (%s)", r, considered, mode)
    return best, best_snapped


def canonicalize(s, tol=arith.DEFAULT_TOL, mode=RESTRICTED):
    # type: (State, float, str) -> CanonicalForm
    """Compute the canonical form of a state

    Approximate amplitudes that all lie within ``tol`` of small-denominator rationals are
    snapped first, so such states take the exact path.
    """
    s, snapped = snap_state(s, tol)
    cf = canonicalize_structure(kronecker_structure(pencil_of_state(s), tol), tol, mode)
    if snapped:
        cf.meta['snapped'] = True
    return cf


def canonicalize_structure(ks, tol=arith.DEFAULT_TOL, mode=RESTRICTED):
    # type: (KroneckerStructure, float, str) -> CanonicalForm
    records = []
    snapped = False
    for record in ks.eigs:
        value, changed = arith.snap(record.value, tol)
        snapped = snapped or changed
        records.append(EigRecord(value, record.sizes))
    eta, x = order_signatures(records, tol)
    xhat, moved = _normalized(x, eta, mode, tol)
    meta = {'mode': mode, 'tol': tol, 'snapped': snapped or moved}
    return CanonicalForm(ks.h, ks.g, ks.eps, ks.nu, eta, tuple(xhat), meta)


def structure_of_form(cf):
    # type: (CanonicalForm) -> KroneckerStructure
    """The Kronecker structure with the normalized eigenvalues of a form
    """
    return make_structure(cf.h, cf.g, cf.eps, cf.nu, list(zip(cf.xhat, cf.signatures)))


def pad_form(cf, extra_rows=0, extra_cols=0):
    # type: (CanonicalForm, int, int) -> CanonicalForm
    """The form of the state padded with zero rows on party B and zero columns on party C
    """
    if extra_rows < 0 or extra_cols < 0:
        raise Invalid("Forms can only be padded by a non-negative number of rows and columns.")
    return cf._replace(h=cf.h + extra_rows, g=cf.g + extra_cols)


def forms_match(a, b, tol=arith.DEFAULT_TOL):
    # type: (CanonicalForm, CanonicalForm, float) -> bool
    """Structural fields equal and normalized eigenvalues equal within ``tol``
    """
    if a.key[:5] != b.key[:5] or len(a.xhat) != len(b.xhat):
        return False
    return all(arith.approx_eq(x, y, tol) for x, y in zip(a.xhat, b.xhat))


def equivalent(s1, s2, tol=arith.DEFAULT_TOL, mode=RESTRICTED):
    # type: (State, State, float, str) -> bool
    """Decide SLOCC equivalence by comparing canonical forms

    States with different numbers of columns are compared after padding party C.
    """
    if s1.m != s2.m:
        raise Invalid("States in 2x{}xn and 2x{}xn cannot be compared; party B dims differ.".format(s1.m, s2.m))
    n = max(s1.n, s2.n)
    a = canonicalize(pad_state(s1, n), tol, mode)
    b = canonicalize(pad_state(s2, n), tol, mode)
    return forms_match(a, b, tol)


def form_label(cf):
    # type: (CanonicalForm) -> str
    """Stable structural label such as ``h0g0|e:1|n:|eigs:(1)@0``
    """
    eigs = ';'.join('({}){}'.format(','.join(map(str, sig)), '@' + arith.format_scalar(value))
                    for sig, value in zip(cf.signatures, cf.xhat))
    return 'h{}g{}|e:{}|n:{}|eigs:{}'.format(
        cf.h, cf.g, ','.join(map(str, cf.eps)), ','.join(map(str, cf.nu)), eigs)


def form_to_json(cf):
    # type: (CanonicalForm) -> Dict[str, Any]
    return {
        'h': cf.h,
        'g': cf.g,
        'eps': list(cf.eps),
        'nu': list(cf.nu),
        'eta': [{'sig': list(group.sig), 'count': group.count} for group in cf.eta],
        'xhat': [arith.scalar_to_json(z) for z in cf.xhat],
        'meta': {'mode': cf.meta.get('mode', RESTRICTED),
                 'tol': cf.meta.get('tol', arith.DEFAULT_TOL),
                 'snapped': bool(cf.meta.get('snapped', False))},
    }


def sort_forms(forms):
    # type: (Sequence[CanonicalForm]) -> List[CanonicalForm]
    """Deterministic order for listings: by shape, then structural label
    """
    return sorted(forms, key=lambda cf: (cf.shape, form_label(cf)))
