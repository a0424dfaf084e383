import pytest
from gmpy2 import mpq

from phylon.errors import DimensionMismatch, TruncationError
from phylon.random_instances import make_rng, random_series
from phylon.series import (TruncatedSeries, compose, exp_series, homogeneous_part, jet, mul,
                           tensor_coeff)

from conftest import series


def test_mul_examples():
    assert mul(series(1, 2, {0: 1, 1: 1}), series(1, 2, {0: 1, 1: -1})) == series(1, 2, {0: 1, 2: -1})
    a = series(2, 3, {(1, 0): 2, (1, 2): 5})
    assert mul(a, TruncatedSeries.constant(2, 3, 1)) == a
    assert mul(series(1, 7, {3: 1}), series(1, 7, {3: 1})) == series(1, 7, {6: 1})


def test_mul_truncation_is_minimum():
    out = mul(series(1, 5, {1: 1}), series(1, 3, {1: 1}))
    assert out.trunc == 3


def test_mul_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        mul(series(1, 2, {0: 1}), series(2, 2, {(0, 0): 1}))


@pytest.mark.parametrize("seed", range(5))
def test_ring_axioms(seed):
    rng = make_rng(seed)
    d = 1 + seed % 3
    a, b, c = (random_series(rng, d, 5, 0, 5) for _ in range(3))
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert jet(a * b, 3) == jet(jet(a, 3) * jet(b, 3), 3)


def test_compose_examples():
    x = series(1, 4, {1: 1})
    assert compose(series(1, 4, {2: 1}), [series(1, 4, {1: 1, 2: 1})]) == series(1, 4, {2: 1, 3: 2, 4: 1})
    a = series(1, 4, {0: 3, 2: 1, 4: -2})
    assert compose(a, [x]) == a
    psi = series(1, 4, {1: 2, 3: 1})
    assert compose(x, [psi]) == psi


def test_compose_rejects_constant_term():
    with pytest.raises(ValueError):
        compose(series(1, 2, {1: 1}), [series(1, 2, {0: 1, 1: 1})])


def test_compose_valuation_extends_exactness():
    # outer starts at degree 2, inner known to 3: composite exact to 4
    out = compose(series(1, 6, {2: 1}), [series(1, 3, {1: 1, 2: 1})])
    assert out.trunc == 4
    assert out == series(1, 4, {2: 1, 3: 2, 4: 1})


@pytest.mark.parametrize("seed", range(4))
def test_compose_associative(seed):
    rng = make_rng(100 + seed)
    d = 2
    a = random_series(rng, d, 4, 0, 4)
    psi = [random_series(rng, d, 4, 1, 4) for _ in range(d)]
    phi = [random_series(rng, d, 4, 1, 4) for _ in range(d)]
    left = compose(compose(a, psi), phi)
    inner = [compose(p, phi) for p in psi]
    assert left == compose(a, inner)


def test_jet_examples():
    s = series(1, 2, {0: 1, 1: 1, 2: 1})
    assert jet(s, 1) == series(1, 1, {0: 1, 1: 1})
    assert jet(s, 0).trunc == 0 and jet(s, 0).constant_term() == 1
    assert jet(s, 2) == s
    with pytest.raises(TruncationError):
        jet(s, 3)


def test_tensor_coeff_examples():
    assert tensor_coeff(series(2, 2, {(2, 0): 1}), (1, 1)) == 2
    assert tensor_coeff(series(2, 2, {(1, 1): 1}), (1, 2)) == 1
    assert tensor_coeff(series(2, 2, {(1, 1): 1}), (2, 1)) == 1
    assert tensor_coeff(series(1, 3, {3: "1/6"}), (1, 1, 1)) == 1
    with pytest.raises(TruncationError):
        tensor_coeff(series(1, 2, {2: 1}), (1, 1, 1))


@pytest.mark.parametrize("seed", range(3))
def test_tensor_coeff_reconstructs_homogeneous_part(seed):
    from itertools import product
    from math import factorial

    rng = make_rng(200 + seed)
    d, r = 3, 3
    a = random_series(rng, d, 4, 0, 4)
    total = {}
    for idx in product(range(1, d + 1), repeat=r):
        alpha = tuple(idx.count(v) for v in range(1, d + 1))
        total[alpha] = total.get(alpha, 0) + tensor_coeff(a, idx) / factorial(r)
    assert TruncatedSeries(d, r, total) == homogeneous_part(a, r).padded(r)


def test_homogeneous_part_examples():
    s = series(1, 2, {0: 1, 1: 1, 2: 1})
    assert homogeneous_part(s, 1) == series(1, 2, {1: 1})
    assert homogeneous_part(series(1, 3, {0: 1, 3: 1}), 2).is_zero()
    assert homogeneous_part(TruncatedSeries.quadratic_form(2, 3), 2) == series(2, 3, {(2, 0): 1, (0, 2): 1})


def test_exp_series():
    e = exp_series(series(1, 5, {1: 1}))
    from math import factorial
    assert all(e[(k,)] == mpq(1, factorial(k)) for k in range(6))


def test_equality_at_common_order():
    assert series(1, 2, {1: 1}) == series(1, 4, {1: 1, 3: 7})
    assert series(1, 3, {1: 1}) != series(1, 4, {1: 1, 3: 7})
