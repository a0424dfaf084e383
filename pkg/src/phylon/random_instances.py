"""Seeded generators of rational pairs and phylon maps.

Hessians are produced as ``2 L L^T`` with rational lower-triangular ``L``,
so their ``L D L^T`` pivots are rational squares and exact Morse
normalisation applies.  :func:`square_pivot_map` picks linear parts that
keep this property after transport.
"""
import random

from gmpy2 import mpq

from . import linalg
from ._numbers import rational_sqrt
from ._basis import basis
from .group import PairInstance, PhylonMap
from .series import TruncatedSeries


def rational(rng, num=5, den=4, nonzero=False):
    while True:
        x = mpq(rng.randint(-num, num), rng.randint(1, den))
        if x or not nonzero:
            return x


def lower_triangular(rng, d):
    return [[rational(rng, 3, 3, nonzero=(i == j)) if j <= i else mpq(0) for j in range(d)]
            for i in range(d)]


def cayley_orthogonal(rng, d):
    """Rational orthogonal matrix ``(I - S)(I + S)^{-1}`` for skew ``S``."""
    s = [[mpq(0)] * d for _ in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            s[i][j] = rational(rng, 2, 3)
            s[j][i] = -s[i][j]
    eye = linalg.identity(d)
    minus = [[eye[i][j] - s[i][j] for j in range(d)] for i in range(d)]
    plus = [[eye[i][j] + s[i][j] for j in range(d)] for i in range(d)]
    return linalg.matmul(minus, linalg.inverse(plus))


def random_series(rng, d, trunc, lo, hi, density=0.6, num=5, den=4):
    bas = basis(d)
    bas.ensure(trunc)
    terms = {}
    for alpha in bas.alphas[: bas.count(min(hi, trunc))]:
        if sum(alpha) >= lo and rng.random() < density:
            terms[alpha] = rational(rng, num, den)
    return TruncatedSeries(d, trunc, terms)


def quadratic_from_lower(lower, trunc):
    """Series ``x^T L L^T x`` (Hessian ``2 L L^T``)."""
    d = len(lower)
    a = linalg.matmul(lower, linalg.transpose(lower))
    terms = {}
    for i in range(d):
        for j in range(i, d):
            alpha = tuple(int(w == i) + int(w == j) for w in range(d))
            terms[alpha] = a[i][j] * (1 if i == j else 2)
    return TruncatedSeries(d, trunc, terms)


def random_pair(rng, d, nf, nb, lower=None, density=0.6):
    """Random pair with Hessian ``2 L L^T`` and ``b(0) != 0``."""
    lower = lower_triangular(rng, d) if lower is None else lower
    f = quadratic_from_lower(lower, nf) + random_series(rng, d, nf, 3, nf, density)
    b = random_series(rng, d, nb, 1, nb, density) + TruncatedSeries.constant(
        d, nb, rational(rng, 4, 3, nonzero=True))
    return PairInstance(f, b)


def random_map(rng, d, trunc, linear=None, density=0.5, num=3, den=4):
    """Random phylon map; the linear part defaults to a random invertible matrix."""
    if linear is None:
        while True:
            linear = [[rational(rng, 3, 2) for _ in range(d)] for _ in range(d)]
            if linalg.det(linear):
                break
    lin = PhylonMap.linear(linear, trunc)
    comps = [c + random_series(rng, d, trunc, 2, trunc, density, num, den)
             for c in lin.components]
    return PhylonMap(comps)


def square_pivot_map(rng, pair, trunc, density=0.5):
    """Random map whose transport of ``pair`` keeps square ``L D L^T`` pivots.

    With ``f_ij / 2 = L L^T`` the linear part ``R`` is chosen so that
    ``R^{-T} = L' O L^{-1}`` for a fresh triangular ``L'`` and orthogonal ``O``;
    the transported Hessian is then ``2 L' L'^T``.
    """
    d = pair.dim
    a = [[x / 2 for x in row] for row in pair.hessian()]
    low, diag = linalg.ldl(a)
    roots = [rational_sqrt(p) for p in diag]
    if any(r is None for r in roots):
        raise ValueError("pair does not have square pivots")
    lower = [[low[i][j] * roots[j] for j in range(d)] for i in range(d)]
    new = lower_triangular(rng, d)
    rit = linalg.matmul(linalg.matmul(new, cayley_orthogonal(rng, d)), linalg.inverse(lower))
    linear = linalg.transpose(linalg.inverse(rit))
    return random_map(rng, d, trunc, linear, density)


def make_rng(seed):
    return random.Random(seed)
