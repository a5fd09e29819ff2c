"""Tensor modules: Leibniz action, weights, and the generation oracle."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from virloop.coeff_algebra import CharacterPsi, split_algebra, trivial_algebra
from virloop.intermediate import INDEX_NONZERO, IntModule, IntParams, prime_module
from virloop.scalars import ONE, ZERO, scalar
from virloop.tensor_product import TensorModule
from virloop.verma import DepthExceededError, HighestWeight, VermaModule
from virloop.virasoro import LieElement, c_gen, d_gen

TRIV = trivial_algebra()
PSI1 = CharacterPsi(TRIV, [1])


def make_module(h="1", c="0", alpha="1/2", beta="2", depth=3):
    vm = VermaModule(TRIV, HighestWeight(TRIV, [h], [c]), depth)
    im = IntModule(IntParams(scalar(alpha), scalar(beta), PSI1))
    return TensorModule(vm, im)


def test_seed_and_vector_validation():
    tm = make_module()
    assert tm.seed(3) == {(0, (), 3): ONE}
    with pytest.raises(DepthExceededError):
        tm.vector({(9, (), 0): 1})
    with pytest.raises(ValueError):
        tm.vector({(1, ((5, 0),), 0): 1})


def test_positive_generator_on_seed_moves_intermediate_factor():
    # first Leibniz term dies on the highest weight vector
    tm = make_module(alpha="1/2", beta="2")
    got = tm.act(d_gen(3, TRIV.unit), tm.seed(0))
    coeff = scalar("1/2") + scalar(0) + scalar(3) * scalar(2)
    assert got == {(0, (), 3): coeff}


def test_ladder_identity_up():
    # d_1⊗b.(v_φ⊗v_n) = ψ(b)(α+n+β)(v_φ⊗v_{n+1})
    tm = make_module(alpha="1/2", beta="1/3")
    for n in range(-3, 4):
        got = tm.act(d_gen(1, TRIV.unit), tm.seed(n))
        coeff = scalar("1/2") + scalar(n) + scalar("1/3")
        assert got == {(0, (), n + 1): coeff}


def test_central_generator_scales_by_phi():
    tm = make_module(h="1", c="5/7")
    x = tm.act(d_gen(-2, TRIV.unit), tm.seed(1))
    got = tm.act(c_gen(TRIV.unit), x)
    want = {key: scalar("5/7") * c for key, c in x.items()}
    assert got == want


def test_negative_generator_mixes_both_factors():
    tm = make_module(h="1", c="0", alpha="1/2", beta="2")
    got = tm.act(d_gen(-1, TRIV.unit), tm.seed(0))
    second = scalar("1/2") + scalar(0) + scalar(-1) * scalar(2)
    assert got == {
        (1, ((1, 0),), 0): ONE,
        (0, (), -1): second,
    }


def test_depth_guard_is_hard():
    tm = make_module(depth=1)
    x = tm.act(d_gen(-1, TRIV.unit), tm.seed(0))
    with pytest.raises(DepthExceededError):
        tm.act(d_gen(-1, TRIV.unit), x)
    tm.verma.extend_depth(2)
    assert tm.act(d_gen(-1, TRIV.unit), x)


def test_weight_split_examples():
    tm = make_module()
    assert tm.weight_split(tm.seed(3)) == {3: tm.seed(3)}
    mixed = {(1, ((1, 0),), 3): ONE, (0, (), 2): ONE}
    assert tm.weight_split(mixed) == {2: mixed}
    assert tm.weight_split({}) == {}


def test_weight_bookkeeping_under_d0():
    tm = make_module(h="1/3", alpha="1/2", beta="2")
    d0 = d_gen(0, TRIV.unit)
    for n in (-2, 0, 3):
        x = {(1, ((1, 0),), n + 1): ONE, (0, (), n): scalar(2)}
        got = tm.act(d0, x)
        lam = tm.weight_of_offset(n)
        assert got == {key: lam * c for key, c in x.items()}


def test_action_shifts_weight_by_degree():
    tm = make_module()
    x = tm.seed(2)
    for deg in (-2, -1, 1, 2):
        y = tm.act(d_gen(deg, TRIV.unit), x)
        if y:
            split = tm.weight_split(y)
            assert set(split) == {2 + deg}


def test_weight_space_dim_counts_levels():
    tm = make_module(h="1", c="0", depth=3)
    # generic φ here: no radical through depth 3, so dims are partition counts
    assert tm.weight_space_dim(0, 0) == 1
    assert tm.weight_space_dim(0, 1) == 2
    assert tm.weight_space_dim(0, 2) == 4
    assert tm.weight_space_dim(0, 3) == 7
    # strictly increasing in depth whenever a level is nonzero
    dims = [tm.weight_space_dim(5, d) for d in range(4)]
    assert all(a < b for a, b in zip(dims, dims[1:]))


def test_weight_space_dim_respects_excluded_index():
    vm = VermaModule(TRIV, HighestWeight(TRIV, [1], [0]), 2)
    im = prime_module(0, 0, PSI1)
    tm = TensorModule(vm, im)
    # offset n = -1: index k = n+i = 0 at i = 1 is excluded
    full = sum(vm.vphi_dim(i) for i in range(3))
    assert tm.weight_space_dim(-1, 2) == full - vm.vphi_dim(1)


def test_leibniz_representation_property():
    tm = make_module(h="1/2", c="1/3", alpha="1/3", beta="1/2", depth=3)
    v = tm.act(d_gen(-1, TRIV.unit), tm.seed(1))
    for m_deg, n_deg in [(1, -1), (2, -2), (-1, 2), (1, 1), (0, -2)]:
        x = LieElement.d(TRIV, m_deg)
        y = LieElement.d(TRIV, n_deg)
        lhs = tm.act_lie(x, tm.act_lie(y, v))
        rhs_sub = tm.act_lie(y, tm.act_lie(x, v))
        diff = dict(lhs)
        for key, c in rhs_sub.items():
            s = diff.get(key, ZERO) - c
            if s:
                diff[key] = s
            else:
                diff.pop(key, None)
        want = tm.act_lie(x.bracket(y), v)
        assert diff == want, (m_deg, n_deg)


def test_leibniz_property_with_nontrivial_b():
    B = split_algebra(2)
    psi = CharacterPsi(B, [1, 0])
    vm = VermaModule(B, HighestWeight(B, ["1", "0"], ["0", "0"]), 2)
    im = IntModule(IntParams(scalar("1/2"), scalar("1/3"), psi))
    tm = TensorModule(vm, im)
    v = tm.seed(0)
    pairs = [
        (LieElement.d(B, 1, 0), LieElement.d(B, -1, 1)),
        (LieElement.d(B, -1, 0), LieElement.d(B, 2, 1)),
        (LieElement.d(B, 0, 1), LieElement.d(B, -2, 0)),
    ]
    for x, y in pairs:
        lhs = tm.act_lie(x, tm.act_lie(y, v))
        rhs_sub = tm.act_lie(y, tm.act_lie(x, v))
        diff = dict(lhs)
        for key, c in rhs_sub.items():
            s = diff.get(key, ZERO) - c
            if s:
                diff[key] = s
            else:
                diff.pop(key, None)
        want = tm.act_lie(x.bracket(y), v)
        assert diff == want


def test_generation_check_generic():
    tm = make_module(h="1/2", c="0", alpha="1/2", beta="2", depth=2)
    assert tm.generation_check(2, -4, 4)


def test_generation_check_depth_zero():
    tm = make_module(depth=0)
    assert tm.generation_check(0, -3, 3)


def test_generation_check_degenerate_pair():
    # (α,β) = (0,0): seeds run over nonzero indices only, and still generate
    vm = VermaModule(TRIV, HighestWeight(TRIV, ["1/2"], ["0"]), 2)
    im = prime_module(0, 0, PSI1)
    tm = TensorModule(vm, im)
    assert im.index_set == INDEX_NONZERO
    assert tm.generation_check(2, -3, 3)


def test_act_words_linear_combination():
    tm = make_module()
    from virloop.virasoro import WordSum

    ws = WordSum(TRIV)
    ws.add_word((d_gen(1, TRIV.unit),), scalar(2))
    ws.add_word((d_gen(-1, TRIV.unit), d_gen(1, TRIV.unit)), scalar(-1))
    v = tm.seed(1)
    got = tm.act_words(ws, v)
    a = tm.act(d_gen(1, TRIV.unit), v)
    b = tm.act(d_gen(-1, TRIV.unit), a)
    want = {}
    for key, c in a.items():
        want[key] = scalar(2) * c
    for key, c in b.items():
        s = want.get(key, ZERO) - c
        if s:
            want[key] = s
        else:
            want.pop(key, None)
    assert got == want
