"""Validators for decoded JSON documents

Each validator raises :class:`skcf.exc.Invalid` on a bad document and returns the
(possibly normalized) value otherwise.
"""
from typing import Any, Dict, List, Tuple

from .exc import Invalid


def valid_dims(value):
    # type: (Any) -> Tuple[int, int, int]
    if not isinstance(value, (list, tuple)) or len(value) != 3:
        raise Invalid("State's dims field must be a list of three integers.")
    if not all(_is_int(d) for d in value):
        raise Invalid("State's dims field must contain only integers.")
    if value[0] != 2:
        raise Invalid("State's first dimension must be 2, got {}.".format(value[0]))
    if value[1] < 1 or value[2] < 1:
        raise Invalid("State's dims must be positive, got {}.".format(list(value)))
    return tuple(value)


def valid_index(value, dims):
    # type: (Any, Tuple[int, int, int]) -> Tuple[int, int, int]
    if not isinstance(value, (list, tuple)) or len(value) != 3 or not all(_is_int(i) for i in value):
        raise Invalid("Amplitude index {!r} must be a list of three integers.".format(value))
    if not all(0 <= i < d for i, d in zip(value, dims)):
        raise Invalid("Amplitude index {} is out of range for dims {}.".format(list(value), list(dims)))
    return tuple(value)


def state_has_dims(doc):
    # type: (Dict[str, Any]) -> None
    if not isinstance(doc, dict):
        raise Invalid("State document must be a JSON object.")
    if 'dims' not in doc:
        raise Invalid("State's dims field cannot be missing.")


def valid_amps(value, dims):
    # type: (Any, Tuple[int, int, int]) -> List[Dict[str, Any]]
    if value is None:
        return []
    if not isinstance(value, list):
        raise Invalid("State's amps field must be a list.")
    seen = set()
    for amp in value:
        if not isinstance(amp, dict) or 'i' not in amp:
            raise Invalid("Each amplitude must be an object with an i field.")
        index = valid_index(amp['i'], dims)
        if index in seen:
            raise Invalid("Amplitude index {} appears more than once.".format(list(index)))
        seen.add(index)
    return value


def valid_state_doc(doc):
    # type: (Any) -> Dict[str, Any]
    """Check a state document before it is turned into a State
    """
    state_has_dims(doc)
    dims = valid_dims(doc['dims'])
    valid_amps(doc.get('amps'), dims)
    return doc


def valid_mode(value):
    # type: (str) -> str
    if value not in ('restricted', 'all-triples', 'all_triples'):
        raise Invalid("Normalization mode must be 'restricted' or 'all-triples', got {!r}.".format(value))
    return value.replace('_', '-')


def valid_tol(value):
    # type: (Any) -> float
    try:
        tol = float(value)
    except (TypeError, ValueError):
        raise Invalid("Tolerance {!r} is not a number.".format(value))
    if not tol > 0:
        raise Invalid("Tolerance must be positive, got {}.".format(value))
    return tol


def _is_int(value):
    return isinstance(value, int) and not isinstance(value, bool)
