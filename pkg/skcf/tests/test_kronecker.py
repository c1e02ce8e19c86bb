import logging
from fractions import Fraction

import mock
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from skcf import arith
from skcf.arith import INF, Scalar, UniPoly
from skcf.exc import Invalid, SkcfError
from skcf.kronecker import (build_pencil, check_dimensions, kronecker_structure, make_structure, normal_rank,
                            smith_invariant_factors, structure_from_json, structure_to_json)
from skcf.state import (apply_local_ops, local_ops, make_pencil, parse_ket, pencil_of_state, state_of_pencil,
                        transpose_pencil)

from . import GHZ, W

ABC_3 = '|001> + |100> + |112>'


def _structure_of(ket, dims=None):
    return kronecker_structure(pencil_of_state(parse_ket(ket, dims)))


def test_make_structure_sorts_invariants():
    ks = make_structure(eps=(2, 1), eigs=[(INF, (1,)), (3, (2, 1)), (Scalar(0, 1), (1,))])
    assert ks.eps == (1, 2)
    assert [r.value for r in ks.eigs] == [Scalar(0, 1), Scalar(3), INF]
    assert ks.eigs[1].sizes == (1, 2)
    assert ks.regular_size == 5


@pytest.mark.parametrize('kwargs', [
    {'eps': (0,)},
    {'nu': (-1,)},
    {'h': -1},
    {'eigs': [(1, ())]},
    {'eigs': [(1, (0,))]},
    {'eigs': [(1, (1,)), (Fraction(2, 2), (2,))]},
])
def test_make_structure_rejects_bad_invariants(kwargs):
    with pytest.raises(Invalid):
        make_structure(**kwargs)


def test_structure_shape():
    ks = make_structure(h=1, g=2, eps=(1,), nu=(2,), eigs=[(0, (1, 2))])
    assert ks.shape == (1 + 1 + 3 + 3, 2 + 2 + 2 + 3)
    assert check_dimensions(ks, 8, 9)
    assert not check_dimensions(ks, 9, 8)


def test_build_pencil_blocks():
    p = build_pencil(make_structure(eps=(1,), eigs=[(0, (1,))]))
    assert state_of_pencil(p) == parse_ket(ABC_3)


def test_build_pencil_jordan_block():
    p = build_pencil(make_structure(eigs=[(0, (2,))]))
    assert state_of_pencil(p) == parse_ket(W)


def test_build_pencil_infinite_and_left_blocks():
    p = build_pencil(make_structure(nu=(1,), eigs=[(INF, (2,))]))
    assert p.R == arith.matrix([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert p.S == arith.matrix([[1, 0, 0], [0, 0, 0], [0, 0, 1], [0, 0, 0]])


def test_build_pencil_rejects_empty_structure():
    with pytest.raises(Invalid):
        build_pencil(make_structure())


def test_smith_invariant_factors():
    t = UniPoly((0, 1))
    factors = smith_invariant_factors([[t, UniPoly()], [UniPoly(), t + 1]])
    assert factors == [UniPoly((1,)), UniPoly((0, 1, 1))]


def test_smith_invariant_factors_of_jordan_block():
    t = UniPoly((0, 1))
    factors = smith_invariant_factors([[t, UniPoly((1,))], [UniPoly(), t]])
    assert factors == [UniPoly((1,)), UniPoly((0, 0, 1))]


def test_normal_rank():
    assert normal_rank(pencil_of_state(parse_ket(GHZ))) == 2
    assert normal_rank(pencil_of_state(parse_ket('|000>', (2, 2, 2)))) == 1
    assert normal_rank(make_pencil([[0, 1, 0], [0, 0, 1]], [[1, 0, 0], [0, 1, 0]])) == 2


def test_structure_of_ghz():
    ks = _structure_of(GHZ)
    assert (ks.h, ks.g, ks.eps, ks.nu) == (0, 0, (), ())
    assert ks.eigs == ((Scalar(-1), (1,)), (Scalar(0), (1,)))


def test_structure_of_w():
    ks = _structure_of(W)
    assert ks.eigs == ((Scalar(0), (2,)),)


def test_structure_with_right_minimal_index():
    ks = _structure_of(ABC_3)
    assert ks.eps == (1,)
    assert ks.nu == ()
    assert ks.eigs == ((Scalar(0), (1,)),)


def test_structure_with_left_minimal_index():
    ks = kronecker_structure(transpose_pencil(pencil_of_state(parse_ket(ABC_3))))
    assert ks.eps == ()
    assert ks.nu == (1,)
    assert ks.eigs == ((Scalar(0), (1,)),)


def test_structure_with_zero_block():
    ks = _structure_of('|011>')
    assert (ks.h, ks.g) == (1, 1)
    assert ks.eigs == ((INF, (1,)),)


def test_structure_of_zero_state():
    ks = _structure_of('0', (2, 2, 3))
    assert (ks.h, ks.g, ks.eps, ks.nu, ks.eigs) == (2, 3, (), (), ())


def test_structure_of_irrational_eigenvalues():
    ks = _structure_of('-2|001> + |010> + |100> + |111>')
    assert len(ks.eigs) == 2
    assert all(not record.value.exact and record.sizes == (1,) for record in ks.eigs)
    values = sorted(record.value.im for record in ks.eigs)
    assert values == pytest.approx([-2 ** 0.5, 2 ** 0.5])


@pytest.mark.parametrize('ks', [
    make_structure(eps=(1, 2)),
    make_structure(nu=(2,), eigs=[(1, (1, 2))]),
    make_structure(eigs=[(0, (1, 1)), (2, (3,))]),
    make_structure(eigs=[(INF, (2,)), (3, (1,))]),
    make_structure(h=1, g=2, eps=(1,), nu=(1,), eigs=[(INF, (1,)), (Scalar(0, 1), (2,))]),
    make_structure(eps=(1,), nu=(1,), eigs=[(Fraction(-1, 3), (1,)), (Fraction(5, 7), (1,)), (4, (1,))]),
])
def test_structure_of_canonical_pencil_is_the_structure(ks):
    assert kronecker_structure(build_pencil(ks)) == ks


def test_structure_survives_local_operators_on_b_and_c():
    ks = make_structure(eps=(1,), eigs=[(2, (1,)), (INF, (1,))])
    s = state_of_pencil(build_pencil(ks))
    B = [[1, 2, 0], [0, 1, 0], [3, 0, 1]]
    C = [[1, 0, 0, 1], [0, 2, 0, 0], [1, 1, 1, 0], [0, 0, 0, 1]]
    ops = local_ops([[1, 0], [0, 1]], B, C)
    assert kronecker_structure(pencil_of_state(apply_local_ops(s, ops))) == ks


def test_qubit_swap_inverts_planted_eigenvalues():
    s = state_of_pencil(build_pencil(make_structure(eigs=[(2, (1,)), (5, (1,))])))
    swapped = apply_local_ops(s, local_ops([[0, 1], [1, 0]], [[1, 0], [0, 1]], [[1, 0], [0, 1]]))
    ks = kronecker_structure(pencil_of_state(swapped))
    assert [r.value for r in ks.eigs] == [Scalar(Fraction(1, 5)), Scalar(Fraction(1, 2))]


def test_approximate_pencil_takes_the_numeric_path(caplog):
    p = make_pencil([[0.0, 0.0], [0.0, 1.0]], [[1.0, 0.0], [0.0, 1.0]])
    with caplog.at_level(logging.WARNING, logger='skcf.kronecker'):
        ks = kronecker_structure(p)
    assert 'approximate entries' in caplog.text
    assert [r.sizes for r in ks.eigs] == [(1,), (1,)]
    assert arith.approx_eq(ks.eigs[0].value, Scalar(-1), 1e-6)
    assert arith.approx_eq(ks.eigs[1].value, Scalar(0), 1e-6)


def test_structure_json():
    ks = make_structure(h=1, eps=(2,), eigs=[(Fraction(1, 2), (1, 1)), (INF, (3,))])
    doc = structure_to_json(ks)
    assert doc == {
        'h': 1, 'g': 0, 'eps': [2], 'nu': [],
        'eigs': [{'value': {'re': '1/2', 'im': '0'}, 'sizes': [1, 1]}, {'value': 'inf', 'sizes': [3]}],
    }
    assert structure_from_json(doc) == ks
    with pytest.raises(Invalid):
        structure_from_json({'eigs': [{'sizes': [1]}]})


def test_numeric_jordan_block_is_one_cluster():
    x = 0.1234567
    p = make_pencil([[-x, 1.0, 0.0], [0.0, -x, 1.0], [0.0, 0.0, -x]],
                    [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    ks = kronecker_structure(p)
    assert len(ks.eigs) == 1
    assert ks.eigs[0].sizes == (3,)
    assert arith.approx_eq(ks.eigs[0].value, Scalar.of(x), 1e-9)


def test_structure_that_does_not_fit_the_pencil_is_an_error():
    p = make_pencil([[0.5, 0.0], [0.0, 0.25]], [[1.0, 0.0], [0.0, 1.0]])
    oversized = [(Scalar(0), (1,)), (Scalar(1), (1,)), (Scalar(2), (1,))]
    with mock.patch('skcf.kronecker._numeric_eigenstructure', return_value=oversized):
        with pytest.raises(SkcfError) as e:
            kronecker_structure(p)
    assert 'does not fit a 2x2 pencil' in str(e.value)


def test_clustered_exact_eigenvalues_round_trip():
    values = [Fraction(1, 3) + Fraction(k, 10 ** 6) for k in range(4)]
    ks = make_structure(eps=(1,), eigs=[(v, (1,)) for v in values])
    assert kronecker_structure(build_pencil(ks)) == ks


EIG_VALUES = [0, 1, -1, 2, Fraction(1, 3), Fraction(-5, 2), Scalar(0, 1), Scalar(1, -2), INF]


@st.composite
def structures(draw):
    blocks = st.lists(st.integers(min_value=1, max_value=2), min_size=0, max_size=1)
    signature = st.lists(st.integers(min_value=1, max_value=2), min_size=1, max_size=2)
    picks = draw(st.lists(st.integers(min_value=0, max_value=len(EIG_VALUES) - 1), max_size=2, unique=True))
    values = [EIG_VALUES[i] for i in picks]
    ks = make_structure(h=draw(st.integers(min_value=0, max_value=1)), g=draw(st.integers(min_value=0, max_value=1)),
                        eps=draw(blocks), nu=draw(blocks), eigs=[(v, draw(signature)) for v in values])
    assume(min(ks.shape) >= 1)
    return ks


@settings(max_examples=200, deadline=None)
@given(structures())
def test_structure_of_random_canonical_pencil(ks):
    p = build_pencil(ks)
    assert check_dimensions(ks, *p.shape)
    assert kronecker_structure(p) == ks


@settings(max_examples=100, deadline=None)
@given(structures())
def test_transpose_swaps_minimal_indices(ks):
    dual = kronecker_structure(transpose_pencil(build_pencil(ks)))
    assert (dual.h, dual.g, dual.eps, dual.nu) == (ks.g, ks.h, ks.nu, ks.eps)
    assert dual.eigs == ks.eigs
