import pytest
from gmpy2 import mpq

from phylon.errors import InvariantMismatch, PhylonError
from phylon.random_instances import make_rng, rational
from phylon.tensors import (KTensor, SymTensor, complete_trace, embed_trace_free, full_symmetrization,
                            in_k, inner, k_lift, solve_t, sorted_tuples, t_contract, trace,
                            trace_decompose, trace_free_components, trace_free_part)


def random_sym(rng, d, k):
    return SymTensor(d, k, {idx: rational(rng) for idx in sorted_tuples(d, k)})


def random_k_tensor(rng, d, k):
    """Element of K: a random ``Y`` minus its full symmetrisation."""
    y = KTensor(d, k + 2, {(i, idx): rational(rng) for i in range(1, d + 1)
                           for idx in sorted_tuples(d, k + 1)})
    s = full_symmetrization(y)
    return KTensor(d, k + 2, {(i, idx): y[(i, idx)] - s[(i,) + idx]
                              for i in range(1, d + 1) for idx in sorted_tuples(d, k + 1)})


def test_complete_trace_examples():
    assert complete_trace(SymTensor(2, 2, {(1, 1): 2, (2, 2): 2})) == 4
    assert complete_trace(SymTensor(2, 3, {(1, 1, 1): 5})) == 0
    assert complete_trace(SymTensor(1, 4, {(1, 1, 1, 1): 24})) == 24


def test_t_contract_examples():
    assert t_contract(KTensor.zero(2, 3)).is_zero()
    x = k_lift(SymTensor(2, 1, {(1,): 1}), 1)
    assert t_contract(x) == SymTensor(2, 1, {(1,): mpq(1, 2)})


@pytest.mark.parametrize("seed", range(10))
def test_ctr_of_t_vanishes_on_k(seed):
    rng = make_rng(seed)
    d, k = 2 + seed % 3, 2 * (1 + seed % 3)
    x = random_k_tensor(rng, d, k)
    assert in_k(x)
    assert complete_trace(t_contract(x)) == 0


@pytest.mark.parametrize("d", [2, 3, 4])
@pytest.mark.parametrize("k", range(1, 7))
def test_lift_identity(d, k):
    rng = make_rng(10 * d + k)
    for q in range(k, 0, -2):
        w = trace_free_part(random_sym(rng, d, q))
        x = k_lift(w, k)
        assert in_k(x)
        assert t_contract(x) == embed_trace_free(w, k) * (mpq(d + q - 2, k + 1))


def test_trace_decompose_examples():
    w = trace_free_part(random_sym(make_rng(1), 3, 3))
    comps = trace_decompose(w)
    assert comps[0][1] == w and all(c.is_zero() for _, c in comps[1:])
    delta = SymTensor.delta(2)
    comps = dict(trace_decompose(delta))
    assert comps[2].is_zero() and comps[0] == delta


@pytest.mark.parametrize("seed", range(5))
def test_trace_decompose_reconstructs_and_is_orthogonal(seed):
    rng = make_rng(50 + seed)
    b = random_sym(rng, 3, 4)
    comps = trace_decompose(b)
    total = SymTensor.zero(3, 4)
    for _, c in comps:
        total = total + c
    assert total == b
    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            assert inner(comps[i][1], comps[j][1]) == 0
    for q, w in trace_free_components(b):
        if q >= 2:
            assert trace(w).is_zero()


@pytest.mark.parametrize("seed", range(5))
def test_complete_trace_detects_scalar_component(seed):
    rng = make_rng(60 + seed)
    b = random_sym(rng, 2 + seed % 2, 4)
    scalar = dict(trace_decompose(b))[0]
    assert (complete_trace(b) == 0) == scalar.is_zero()
    free = b - scalar
    assert complete_trace(free) == 0


def test_solve_t_examples():
    assert not solve_t(SymTensor.zero(2, 3)).entries
    z = SymTensor(2, 1, {(1,): 1})
    x = solve_t(z)
    assert t_contract(x) == z and in_k(x)
    with pytest.raises(InvariantMismatch):
        solve_t(SymTensor.delta(2) * 3)
    with pytest.raises(PhylonError):
        solve_t(SymTensor(1, 1, {(1,): 1}))


@pytest.mark.parametrize("seed", range(8))
def test_solve_t_random(seed):
    rng = make_rng(70 + seed)
    d, k = 2 + seed % 3, 1 + seed % 5
    z = random_sym(rng, d, k)
    z = z - dict(trace_decompose(z)).get(0, SymTensor.zero(d, k))
    x = solve_t(z)
    assert in_k(x)
    assert t_contract(x) == z


def test_symmetric_lookup_sorts():
    t = SymTensor(2, 3, {(2, 1, 1): 5})
    assert t[(1, 2, 1)] == 5 and t[(1, 1, 2)] == 5
