from fractions import Fraction

import pytest

from skcf import arith
from skcf.arith import Scalar
from skcf.exc import Invalid, SingularOperator
from skcf.state import (add_states, apply_local_ops, identity_ops, local_ops, local_ranks, make_pencil, make_state,
                        pad_state, parse_ket, pencil_of_state, product_state, render_ket, scale_state, snap_state,
                        state_from_json, state_of_pencil, state_to_json, transpose_pencil, zero_state)

from . import GHZ, W


def test_make_state_sums_repeated_indices_and_drops_zeros():
    s = make_state((2, 2, 2), [((0, 0, 0), 1), ((0, 0, 0), -1), ((1, 1, 1), 2), ((1, 1, 1), 1)])
    assert s.amps == (((1, 1, 1), Scalar(3)),)
    assert s.amplitude(0, 0, 0) == arith.ZERO


def test_make_state_accepts_a_mapping():
    s = make_state([2, 1, 2], {(1, 0, 1): Fraction(1, 2), (0, 0, 0): 1})
    assert s.dims == (2, 1, 2)
    assert [index for index, _ in s.amps] == [(0, 0, 0), (1, 0, 1)]


@pytest.mark.parametrize('dims', [(3, 2, 2), (2, 0, 2), (2, 2), 'abc', (2, 2.0, 2)])
def test_make_state_rejects_bad_dims(dims):
    with pytest.raises(Invalid):
        make_state(dims)


def test_make_state_rejects_out_of_range_index():
    with pytest.raises(Invalid):
        make_state((2, 2, 2), [((0, 2, 0), 1)])


def test_zero_state():
    s = zero_state(2, 3)
    assert s.is_zero
    assert s.dims == (2, 2, 3)


def test_pencil_round_trip():
    s = parse_ket(W)
    p = pencil_of_state(s)
    assert p.R == arith.matrix([[0, 1], [0, 0]])
    assert p.S == arith.matrix([[1, 0], [0, 1]])
    assert state_of_pencil(p) == s


def test_pencil_at():
    p = make_pencil([[0, 1], [0, 0]], [[1, 0], [0, 1]])
    assert p.at(2) == arith.matrix([[2, 1], [0, 2]])
    assert p.exact
    assert p.shape == (2, 2)


def test_make_pencil_rejects_shape_mismatch():
    with pytest.raises(Invalid):
        make_pencil([[1, 0]], [[1], [0]])


def test_transpose_pencil():
    p = transpose_pencil(make_pencil([[0, 1, 0]], [[1, 0, 0]]))
    assert p.shape == (3, 1)
    assert p.R == arith.matrix([[0], [1], [0]])


def test_apply_identity_leaves_state_alone():
    s = parse_ket(GHZ)
    assert apply_local_ops(s, identity_ops(2, 2)) == s


def test_apply_local_ops_on_qubit():
    s = parse_ket('|000> + |111>')
    flipped = apply_local_ops(s, local_ops([[0, 1], [1, 0]], [[1, 0], [0, 1]], [[1, 0], [0, 1]]))
    assert flipped == parse_ket('|011> + |100>')


def test_apply_local_ops_on_parties_b_and_c():
    s = parse_ket('|000>', (2, 2, 2))
    moved = apply_local_ops(s, local_ops([[1, 0], [0, 1]], [[1, 0], [1, 1]], [[2, 0], [0, 1]]))
    assert moved == parse_ket('2|000> + 2|010>', (2, 2, 2))


def test_apply_local_ops_rejects_singular_operator():
    s = parse_ket(GHZ)
    with pytest.raises(SingularOperator):
        apply_local_ops(s, local_ops([[1, 1], [1, 1]], [[1, 0], [0, 1]], [[1, 0], [0, 1]]))


def test_apply_local_ops_rejects_wrong_size():
    s = parse_ket(GHZ)
    with pytest.raises(Invalid):
        apply_local_ops(s, local_ops([[1, 0], [0, 1]], [[1]], [[1, 0], [0, 1]]))


@pytest.mark.parametrize('ket, expected', [
    ('|011> + |101>', (2, 2, 1)),
    (GHZ, (2, 2, 2)),
    ('|000>', (1, 1, 1)),
    ('|001> + |100> + |112>', (2, 2, 3)),
])
def test_local_ranks(ket, expected):
    assert local_ranks(parse_ket(ket)) == expected


def test_pad_state():
    s = pad_state(parse_ket(W), n=4)
    assert s.dims == (2, 2, 4)
    assert s.amps == parse_ket(W).amps
    with pytest.raises(Invalid):
        pad_state(s, n=3)


def test_product_and_sums():
    plus = product_state([1, 1], [1, 0], [0, 1])
    assert plus == parse_ket('|001> + |101>', (2, 2, 2))
    total = add_states(plus, scale_state(plus, -1))
    assert total.is_zero
    with pytest.raises(Invalid):
        add_states(plus, zero_state(2, 3))


def test_state_json():
    s = parse_ket('(1/2)|001> + (-i)|110>')
    doc = state_to_json(s)
    assert doc == {'dims': [2, 2, 2], 'amps': [
        {'i': [0, 0, 1], 're': '1/2', 'im': '0'},
        {'i': [1, 1, 0], 're': '0', 'im': '-1'},
    ]}
    assert state_from_json(doc) == s


def test_state_from_json_defaults():
    s = state_from_json({'dims': [2, 1, 1], 'amps': [{'i': [1, 0, 0], 're': 0.5}]})
    assert s.amplitude(1, 0, 0) == Scalar(0.5)
    assert not s.amps[0][1].exact


@pytest.mark.parametrize('doc', [
    {'amps': []},
    {'dims': [2, 2, 2], 'amps': [{'re': 1}]},
    {'dims': [2, 2, 2], 'amps': [{'i': [0, 0, 0], 're': 1}, {'i': [0, 0, 0], 're': 2}]},
    {'dims': [2, 2, 2], 'amps': [{'i': [0, 0, 0], 're': True}]},
    {'dims': [2, 2, 2], 'amps': {'i': [0, 0, 0]}},
    [2, 2, 2],
])
def test_state_from_json_rejects_malformed_documents(doc):
    with pytest.raises(Invalid):
        state_from_json(doc)


def test_render_ket():
    s = make_state((2, 2, 3), [((0, 0, 1), 1), ((1, 0, 0), -2), ((1, 1, 2), Fraction(1, 2)),
                               ((0, 1, 1), Scalar(1, 1))])
    assert render_ket(s) == '|001> + (1+i)|011> - 2|100> + (1/2)|112>'


def test_render_ket_leading_minus_and_zero():
    assert render_ket(parse_ket('-|000> + |111>')) == '-|000> + |111>'
    assert render_ket(zero_state(1, 1)) == '0'


def test_render_ket_uses_commas_for_wide_states():
    s = make_state((2, 11, 1), [((1, 10, 0), 1)])
    assert render_ket(s) == '|1,10,0>'
    assert parse_ket('|1,10,0>', (2, 11, 1)) == s


def test_parse_ket_coefficients():
    s = parse_ket('3|000> - (2-3i)|001> + 0.5 |010> + (i)|011> + (-i)|100>')
    assert s.amplitude(0, 0, 0) == Scalar(3)
    assert s.amplitude(0, 0, 1) == Scalar(-2, 3)
    assert s.amplitude(0, 1, 0) == Scalar(0.5)
    assert s.amplitude(0, 1, 1) == Scalar(0, 1)
    assert s.amplitude(1, 0, 0) == Scalar(0, -1)


def test_parse_ket_infers_dims():
    assert parse_ket('|001> + |100> + |112>').dims == (2, 2, 3)


@pytest.mark.parametrize('text', ['', '|01>', '|001> |100>', 'hello', '0'])
def test_parse_ket_rejects_bad_text(text):
    with pytest.raises(Invalid):
        parse_ket(text)


def test_render_then_parse_keeps_exact_values():
    s = make_state((2, 2, 2), [((0, 0, 0), Scalar(Fraction(-3, 4), Fraction(5, 2))), ((1, 1, 1), 7)])
    assert parse_ket(render_ket(s), s.dims) == s


def test_snap_state_snaps_every_amplitude():
    s = make_state((2, 2, 2), [((0, 1, 1), 1.0), ((1, 0, 0), 0.5), ((1, 1, 1), 1 / 3)])
    snapped, changed = snap_state(s)
    assert changed
    assert snapped == make_state((2, 2, 2), [((0, 1, 1), 1), ((1, 0, 0), Fraction(1, 2)),
                                             ((1, 1, 1), Fraction(1, 3))])


def test_snap_state_is_all_or_nothing():
    s = make_state((2, 2, 2), [((0, 1, 1), 1.0), ((1, 0, 0), 0.1234567)])
    assert snap_state(s) == (s, False)
    exact = parse_ket(GHZ)
    assert snap_state(exact) == (exact, False)
