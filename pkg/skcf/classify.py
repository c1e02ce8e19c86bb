"""Class enumeration, the labelled 2 x 2 x n / 2 x 3 x n table and orbit checks
"""
import logging
import random
from collections import Counter, namedtuple
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from . import arith
from .arith import Matrix, Scalar
from .canonical import (ANCHORS, RESTRICTED, CanonicalForm, SignatureGroup, canonicalize, form_label, forms_match,
                        signature_group_key, structure_of_form)
from .exc import Invalid, SkcfError, UnsupportedDimensions
from .kronecker import SizeSignature, build_pencil
from .state import LocalOps, State, apply_local_ops, parse_ket, render_ket, state_of_pencil

log = logging.getLogger(__name__)

ClassEntry = namedtuple('ClassEntry', 'label dims form ket')
OrbitReport = namedtuple('OrbitReport', 'trials failures seed max_eig_deviation')

MAX_ANCHORED_EIGENVALUES = len(ANCHORS)
RANDOM_ENTRY_RANGE = 9

# label, table dims, printed representative
LABELLED_CLASSES = (
    ('ABC-1', (2, 2, 2), '|011> + |100> + |111>'),
    ('A:BC-1', (2, 2, 2), '|100> + |111>'),
    ('ABC-2', (2, 2, 2), '|001> + |100> + |111>'),
    ('AC:B', (2, 2, 2), '|011> + |110>'),
    ('AB:C', (2, 2, 2), '|011> + |101>'),
    ('A:B:C', (2, 2, 2), '|011>'),
    ('ABC-3', (2, 2, 3), '|001> + |100> + |112>'),
    ('ABC-4', (2, 2, 3), '|001> + |012> + |100> + |111>'),
    ('ABC-5', (2, 2, 4), '|001> + |013> + |100> + |112>'),
    ('ABC-6', (2, 3, 2), '|010> + |100> + |121>'),
    ('ABC-7', (2, 3, 2), '|010> + |021> + |100> + |111>'),
    ('ABC-8', (2, 3, 3), '|011> + |100> + |111> + |022>'),
    ('ABC-9', (2, 3, 3), '|100> + |111> + |022>'),
    ('A:BC-2', (2, 3, 3), '|100> + |111> + |122>'),
    ('ABC-10', (2, 3, 3), '|001> + |100> + |111> + |122>'),
    ('ABC-11', (2, 3, 3), '|001> + |100> + |111> + |022> + |122>'),
    ('ABC-12', (2, 3, 3), '|001> + |012> + |100> + |111> + |122>'),
    ('ABC-13', (2, 3, 3), '|001> + |012> + |100> + |122>'),
    ('ABC-14', (2, 3, 4), '|001> + |100> + |112> + |123>'),
    ('ABC-15', (2, 3, 4), '|001> + |100> + |112> + |023> + |123>'),
    ('ABC-16', (2, 3, 4), '|001> + |013> + |100> + |112> + |123>'),
    ('ABC-17', (2, 3, 4), '|001> + |012> + |100> + |111> + |123>'),
    ('ABC-18', (2, 3, 4), '|001> + |012> + |023> + |100> + |111> + |122>'),
    ('ABC-19', (2, 3, 5), '|001> + |013> + |100> + |112> + |124>'),
    ('ABC-20', (2, 3, 5), '|001> + |013> + |024> + |100> + |112> + |123>'),
    ('ABC-21', (2, 3, 6), '|001> + |013> + |025> + |100> + |112> + |124>'),
)


@lru_cache(maxsize=None)
def registry():
    # type: () -> Tuple[ClassEntry, ...]
    """The labelled classes with their canonical forms, computed from the printed kets
    """
    entries = []
    for label, dims, ket in LABELLED_CLASSES:
        form = canonicalize(parse_ket(ket, dims))
        entries.append(ClassEntry(label, dims, form, ket))
    log.debug("Computed canonical forms of %d labelled classes", len(entries))
    return tuple(entries)


def registry_entry(label):
    # type: (str) -> ClassEntry
    for entry in registry():
        if entry.label == label:
            return entry
    raise Invalid("Unknown class label '{}'.".format(label))


def _reduced_key(cf):
    m, n = cf.shape
    return m - cf.h, n - cf.g, cf.eps, cf.nu, cf.eta


def paper_label(cf, dims=None, tol=arith.DEFAULT_TOL):
    # type: (CanonicalForm, Optional[Sequence[int]], float) -> Optional[str]
    """Label of the labelled class a form belongs to, compared after padding
    """
    if dims is not None and tuple(dims[1:]) != cf.shape:
        raise Invalid("Form describes a 2x{}x{} state, not {}.".format(cf.shape[0], cf.shape[1], list(dims)))
    key = _reduced_key(cf)
    for entry in registry():
        if _reduced_key(entry.form) != key:
            continue
        if all(arith.approx_eq(a, b, tol) for a, b in zip(cf.xhat, entry.form.xhat)):
            return entry.label
    return None


def _table_of(label):
    return next(entry.dims for entry in registry() if entry.label == label)


def representative_state(form):
    # type: (Union[ClassEntry, CanonicalForm]) -> State
    """The canonical pencil of a form, read back as a state
    """
    if isinstance(form, ClassEntry):
        form = form.form
    return state_of_pencil(build_pencil(structure_of_form(form)))


def _nondecreasing(total, smallest=1):
    """Non-decreasing tuples of positive integers with sum at most ``total``
    """
    yield ()
    for first in range(smallest, total + 1):
        for rest in _nondecreasing(total - first, first):
            yield (first,) + rest


def _partitions(k, smallest=1):
    # type: (int, int) -> Iterator[SizeSignature]
    if k == 0:
        yield ()
        return
    for first in range(smallest, k + 1):
        for rest in _partitions(k - first, first):
            yield (first,) + rest


def _signature_multisets(total, floor=None):
    """Multisets of size signatures with sizes summing to ``total``, as sorted tuples
    """
    if total == 0:
        yield ()
        return
    candidates = sorted((sig for k in range(1, total + 1) for sig in _partitions(k)),
                        key=lambda sig: (sum(sig), len(sig), sig))
    for sig in candidates:
        key = (sum(sig), len(sig), sig)
        if floor is not None and key < floor:
            continue
        for rest in _signature_multisets(total - sum(sig), key):
            yield (sig,) + rest


def _form_from_parts(h, g, eps, nu, signatures):
    counts = Counter(signatures)
    eta = tuple(sorted((SignatureGroup(sig, c) for sig, c in counts.items()), key=signature_group_key))
    return CanonicalForm(h, g, tuple(eps), tuple(nu), eta, ANCHORS[:len(signatures)], {})


def _enumerate_forms(m, n, include_degenerate):
    zero_rows = range(m + 1) if include_degenerate else (0,)
    zero_cols = range(n + 1) if include_degenerate else (0,)
    for h in zero_rows:
        for g in zero_cols:
            rows, cols = m - h, n - g
            if rows == 0 and cols == 0:
                continue
            for eps in _nondecreasing(rows):
                for nu in _nondecreasing(rows - sum(eps)):
                    regular = rows - sum(eps) - sum(v + 1 for v in nu)
                    if regular < 0 or sum(e + 1 for e in eps) + sum(nu) + regular != cols:
                        continue
                    for signatures in _signature_multisets(regular):
                        if len(signatures) > MAX_ANCHORED_EIGENVALUES:
                            raise UnsupportedDimensions(
                                "2x{}x{} states form infinitely many classes; enumeration is "
                                "limited to at most {} eigenvalues.".format(m, n, MAX_ANCHORED_EIGENVALUES))
                        yield _form_from_parts(h, g, eps, nu, signatures)


def enumerate_classes(m, n, include_degenerate=True):
    # type: (int, int, bool) -> List[ClassEntry]
    """All SLOCC classes of nonzero 2 x m x n states

    With ``include_degenerate`` false only states of full local rank on parties B and C are
    listed. States of smaller tables appear padded. Labelled classes come first, in table
    order, followed by the rest sorted by structural label.
    """
    if m < 1 or n < 1:
        raise Invalid("Dims must be positive, got 2x{}x{}.".format(m, n))
    labelled, unlabelled = [], []
    order = {label: i for i, (label, _, _) in enumerate(LABELLED_CLASSES)}
    for form in _enumerate_forms(m, n, include_degenerate):
        label = paper_label(form)
        ket = render_ket(representative_state(form))
        if label is None:
            unlabelled.append(ClassEntry(form_label(form), (2, m, n), form, ket))
        else:
            labelled.append(ClassEntry(label, _table_of(label), form, ket))
    labelled.sort(key=lambda entry: order[entry.label])
    unlabelled.sort(key=lambda entry: entry.label)
    log.info("Enumerated %d classes of 2x%dx%d states (%d labelled)", len(labelled) + len(unlabelled), m, n,
             len(labelled))
    return labelled + unlabelled


def table_counts(m, n):
    # type: (int, int) -> Dict[Tuple[int, int, int], int]
    """Number of enumerated classes per labelled table
    """
    labels = {label for label, _, _ in LABELLED_CLASSES}
    counts = Counter()  # type: Counter
    for entry in enumerate_classes(m, n, include_degenerate=True):
        if entry.label in labels:
            counts[entry.dims] += 1
    return dict(counts)


def random_scalar(rng):
    # type: (random.Random) -> Scalar
    bound = RANDOM_ENTRY_RANGE
    return Scalar(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)),
                  Fraction(rng.randint(-bound, bound), rng.randint(1, bound)))


def random_invertible(rng, size):
    # type: (random.Random, int) -> Matrix
    """Random invertible matrix with small Gaussian-rational entries, by rejection
    """
    while True:
        M = tuple(tuple(random_scalar(rng) for _ in range(size)) for _ in range(size))
        if arith.rank_exact(M) == size:
            return M


def random_local_ops(rng, m, n):
    # type: (random.Random, int, int) -> LocalOps
    return LocalOps(random_invertible(rng, 2), random_invertible(rng, m), random_invertible(rng, n))


def orbit_check(s, trials=100, seed=0, tol=arith.DEFAULT_TOL, mode=RESTRICTED):
    # type: (State, int, int, float, str) -> OrbitReport
    """Check that random local operators never change the canonical form of ``s``
    """
    if trials < 1:
        raise Invalid("Orbit check needs at least one trial, got {}.".format(trials))
    rng = random.Random(seed)
    base = canonicalize(s, tol, mode)
    failures = 0
    deviation = 0.0
    for trial in range(trials):
        moved = apply_local_ops(s, random_local_ops(rng, s.m, s.n), tol)
        try:
            form = canonicalize(moved, tol, mode)
        except SkcfError as e:
            log.warning("Trial %d of orbit check failed to canonicalize: %s", trial, e)
            failures += 1
            continue
        if form.key[:5] == base.key[:5]:
            for a, b in zip(form.xhat, base.xhat):
                if a is not arith.INF and b is not arith.INF:
                    deviation = max(deviation, abs(a - b))
        if not forms_match(form, base, tol):
            log.warning("Trial %d of orbit check changed the canonical form: %s -> %s", trial,
                        form_label(base), form_label(form))
            failures += 1
    log.info("Orbit check: %d of %d trials failed (seed %d)", failures, trials, seed)
    return OrbitReport(trials, failures, seed, deviation)
