"""One variable: the Morse map ``psi`` with ``psi^2 = f``, the invariants
``lambda_i`` and equivalence under orientation-preserving maps.

Coefficients of ``psi`` live in ``Q(sqrt(s))`` with ``s`` the coefficient of
``x^2`` in ``f``.  ``lambda_i`` is ``i!`` times the coefficient of ``x^i``
in ``act_on_b(psi, b)``, i.e. its ``i``-th derivative at 0.
"""
from dataclasses import dataclass
from math import factorial

from gmpy2 import mpq

from ._numbers import coerce, qstr, rational_sqrt
from .errors import DimensionMismatch, NotPositiveDefinite, PhylonError, TruncationError
from .group import PairInstance, PhylonMap, act_on_b, act_on_pair, compose_phylon, invert_phylon
from .normalization import EquivalenceVerdict, EquivalenceWitness
from .qext import QuadExtScalar, promote
from .series import TruncatedSeries, jet


def _require_1d(*series):
    for s in series:
        if s.dim != 1:
            raise DimensionMismatch(f"expected one variable, got {s.dim}")


def radicand(f):
    """``s = f_2 / 2``, the coefficient of ``x^2``."""
    return coerce(f[(2,)])


def sqrt_series(f):
    """The unique ``psi`` with positive slope and ``psi(x)^2 = f(x)``.

    ``f`` known to order ``N`` gives ``psi`` to order ``N - 1``.  With
    ``psi = sum p_n x^n`` the coefficient of ``x^{n+1}`` in ``psi^2`` is
    ``2 p_1 p_n + sum_{j=2}^{n-1} p_j p_{n+1-j}``, which fixes ``p_n``.
    """
    _require_1d(f)
    if f.trunc < 2:
        raise TruncationError("f must be known at least to order 2")
    if f.coeffs[0] or (len(f.coeffs) > 1 and f.coeffs[1]):
        raise PhylonError("f must have zero constant and linear terms")
    s = radicand(f)
    if not s > 0:
        raise NotPositiveDefinite(f"f_2 / 2 = {s} is not positive")
    n = f.trunc
    a = list(f.coeffs) + [0] * (n + 1 - len(f.coeffs))
    p = [QuadExtScalar(0, 0, s), QuadExtScalar.sqrt(s)]
    inv2p1 = (p[1] * 2).inverse()
    for m in range(2, n):
        acc = promote(a[m + 1], s)
        for j in range(2, m):
            acc = acc - p[j] * p[m + 1 - j]
        p.append(acc * inv2p1)
    return PhylonMap([TruncatedSeries(1, n - 1, {(m,): p[m] for m in range(1, n)})])


def even_odd_split(g):
    """``(g+, g-)`` with ``g+(x) = (g(x) + g(-x))/2`` and ``g-(x) = (g(x) - g(-x))/2``."""
    _require_1d(g)
    even = {a: c for a, c in g.terms() if a[0] % 2 == 0}
    odd = {a: c for a, c in g.terms() if a[0] % 2}
    return TruncatedSeries(1, g.trunc, even), TruncatedSeries(1, g.trunc, odd)


@dataclass(frozen=True)
class LambdaSequence:
    radicand: object
    values: tuple

    def __post_init__(self):
        if not self.values or not self.values[0]:
            raise ValueError("lambda_0 must be non-zero")

    @property
    def max_order(self):
        return len(self.values) - 1

    def first_difference(self, other):
        for i, (x, y) in enumerate(zip(self.values, other.values)):
            if x != y:
                return i
        return None

    def equal(self, other):
        return (self.max_order == other.max_order
                and self.first_difference(other) is None)

    def to_json(self):
        return {"radicand": qstr(self.radicand),
                "values": [promote(v, self.radicand).to_json() for v in self.values]}


def lambda_1d(pair, max_order):
    """``lambda_0 .. lambda_max_order`` of a one-variable pair."""
    _require_1d(pair.f)
    if pair.f.trunc < max_order + 2 or pair.b.trunc < max_order:
        raise TruncationError(
            f"order {max_order} needs f to order {max_order + 2} and b to order {max_order}")
    psi = sqrt_series(jet(pair.f, max_order + 2))
    moved = act_on_b(psi, jet(pair.b, max_order))
    s = radicand(pair.f)
    vals = tuple(promote(moved.coeffs[i] if i < len(moved.coeffs) else 0, s) * factorial(i)
                 for i in range(max_order + 1))
    return LambdaSequence(s, vals)


def _rebased(psi, s):
    return psi.map_coeffs(lambda c: promote(c, s))


def _to_rational(psi):
    def conv(c):
        if isinstance(c, QuadExtScalar):
            return c.to_rational()
        return c
    return psi.map_coeffs(conv)


def decide_equivalence_1d(a, c, degree):
    """Is there ``psi`` with positive slope and ``psi a = c`` through ``degree``?

    Decided by comparing ``lambda_0 .. lambda_degree``; a positive answer
    comes with the witness ``psi_c^{-1} o psi_a`` checked by application.
    """
    _require_1d(a.f, c.f)
    if degree < 0:
        raise ValueError("degree must be non-negative")
    la = lambda_1d(a, degree)
    lc = lambda_1d(c, degree)
    diff = la.first_difference(lc)
    if diff is not None:
        return EquivalenceVerdict(False, failure_order=diff)
    a = a.jet(degree + 2, degree)
    c = c.jet(degree + 2, degree)
    s = la.radicand
    # equal lambda_0 makes s_a s_c a rational square, so both maps share Q(sqrt(s_a))
    if rational_sqrt(s * lc.radicand) is None:
        raise PhylonError("equal lambda_0 but incompatible radicands")
    psi_a = sqrt_series(a.f)
    psi_c = _rebased(sqrt_series(c.f), s)
    psi = compose_phylon(invert_phylon(psi_c), psi_a)
    try:
        psi = _to_rational(psi)
    except ValueError:
        pass
    moved = act_on_pair(psi, a)
    if not (jet(moved.f, degree + 2) == jet(c.f, degree + 2)
            and jet(moved.b, degree) == jet(c.b, degree)):
        raise PhylonError("constructed witness failed verification")
    return EquivalenceVerdict(True, witness=EquivalenceWitness(psi, degree))


def reduced_from_lambda(lam, i):
    """``P_i`` of ``(q, b)`` from ``lambda_i``, for ``f = q`` instances: ``ctr_i``
    in one variable is the ``i``-th derivative of ``b``."""
    if i % 2:
        return mpq(0)
    return lam.values[i].to_rational() / (factorial(i // 2) * 2 ** i)


__all__ = ["sqrt_series", "even_odd_split", "lambda_1d", "LambdaSequence",
           "decide_equivalence_1d", "radicand", "PairInstance"]
