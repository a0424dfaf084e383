"""Coefficients of the Laplace expansion as exact invariants of ``(f, b)``.

For ``I(n) = int exp(-n f(x)) b(x) dx`` the expansion is
``n^{-d/2} (L_0 + L_1 n^{-1/2} + L_2 n^{-1} + ...)`` with

    L_i = (2 pi)^{d/2} det(f_ij)^{-1/2} P_i,
    P_i = sum_{l>=0} (-1)^l / l! * E[ deg-(i+2l) part of (f~^l b) ],

where ``f~`` is ``f`` minus its quadratic part and ``E`` is the expectation
under the centred Gaussian with covariance ``(f^{ij}) = (f_ij)^{-1}``.  Only
the rational number ``P_i`` and ``det(f_ij)`` are stored.

Two independent routes compute ``P_i``:

* :func:`invariant_sequence` (the default) forms ``f~^l b`` with the series
  kernels and takes expectations with the heat operator
  ``exp(1/2 f^{jk} d_j d_k)`` evaluated at 0;
* :func:`lambda_by_pairings` expands the same sum monomial by monomial and
  takes each Gaussian moment by enumerating pair partitions.
"""
import math
from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from gmpy2 import mpq

from . import kernels, linalg
from ._basis import basis
from ._numbers import coerce, qstr
from .errors import DimensionMismatch, TruncationError
from .group import PairInstance
from .tensors import SymTensor, complete_trace


# Gaussian moments --------------------------------------------------------
@dataclass(frozen=True)
class MomentSpec:
    """Centred Gaussian on ``R^dim`` with covariance ``(Sigma^{ij})``."""

    dim: int
    covariance: tuple

    def __post_init__(self):
        cov = tuple(tuple(coerce(x) for x in row) for row in self.covariance)
        if len(cov) != self.dim or any(len(r) != self.dim for r in cov):
            raise DimensionMismatch("covariance must be dim x dim")
        linalg.check_positive_definite([list(r) for r in cov], "covariance")
        object.__setattr__(self, "covariance", cov)

    @property
    def precision(self):
        return linalg.inverse([list(r) for r in self.covariance])


def pair_partitions(items):
    """Yield every partition of ``items`` into unordered pairs."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for i, other in enumerate(rest):
        for tail in pair_partitions(rest[:i] + rest[i + 1:]):
            yield [(first, other)] + tail


def gaussian_moment(spec, indices):
    """``E[x^{i1} ... x^{im}]`` as a literal sum over pair partitions.

    ``indices`` are 1-based labels.  Zero for odd ``m``.
    """
    if len(indices) % 2:
        return mpq(0)
    cov = spec.covariance
    total = mpq(0)
    for pairing in pair_partitions(indices):
        term = mpq(1)
        for a, b in pairing:
            term *= cov[a - 1][b - 1]
        total += term
    return total


def moment_by_pairing(cov, alpha, _memo=None):
    """``E[x^alpha]`` by pairing the first factor with each remaining one.

    This is the pair-partition sum with partners that carry the same label
    grouped together, so it stays usable at degree 18.
    """
    memo = {} if _memo is None else _memo
    alpha = tuple(alpha)

    def rec(a):
        n = sum(a)
        if n % 2:
            return 0
        if n == 0:
            return 1
        got = memo.get(a)
        if got is not None:
            return got
        v = next(i for i, e in enumerate(a) if e)
        rest = a[:v] + (a[v] - 1,) + a[v + 1:]
        total = 0
        for u, e in enumerate(rest):
            if e and cov[v][u]:
                total += e * cov[v][u] * rec(rest[:u] + (e - 1,) + rest[u + 1:])
        memo[a] = total
        return total

    return coerce(rec(alpha))


# invariant values ----------------------------------------------------------
@dataclass(frozen=True)
class ScaledInvariant:
    """``(2 pi)^{dim/2} det_f^{-1/2} rational_part``."""

    dim: int
    order: int
    det_f: object
    rational_part: object

    def __post_init__(self):
        object.__setattr__(self, "det_f", coerce(self.det_f))
        object.__setattr__(self, "rational_part", coerce(self.rational_part))
        if not self.det_f > 0:
            raise ValueError("det_f must be positive")
        if self.order % 2 and self.rational_part:
            raise ValueError("odd-order invariants vanish")

    def value(self):
        return ((2 * math.pi) ** (self.dim / 2) / math.sqrt(float(self.det_f))
                * float(self.rational_part))

    def same_value(self, other):
        p, q = self.rational_part, other.rational_part
        sign = lambda x: (x > 0) - (x < 0)
        return (self.dim == other.dim and sign(p) == sign(q)
                and p * p * other.det_f == q * q * self.det_f)

    def to_json(self):
        return {
            "order": self.order,
            "prefactor": {"two_pi_exp": qstr(mpq(self.dim, 2)), "det_f": qstr(self.det_f)},
            "rational_part": qstr(self.rational_part),
        }

    @classmethod
    def from_json(cls, dim, obj):
        return cls(dim, int(obj["order"]), mpq(obj["prefactor"]["det_f"]),
                   mpq(obj["rational_part"]))


@dataclass(frozen=True)
class InvariantSequence:
    dim: int
    values: tuple

    @property
    def max_order(self):
        return len(self.values) - 1

    def __getitem__(self, i):
        return self.values[i]

    def to_json(self):
        return [v.to_json() for v in self.values]


def _check_jets(pair, max_order):
    if pair.f.trunc < max_order + 2:
        raise TruncationError(
            f"order {max_order} needs f to jet order {max_order + 2}, have {pair.f.trunc}")
    if pair.b.trunc < max_order:
        raise TruncationError(
            f"order {max_order} needs b to jet order {max_order}, have {pair.b.trunc}")


@lru_cache(maxsize=None)
def _second_derivative_table(dim, degree):
    """For each monomial of ``degree``: ``(source, target, weight, a, b)``
    with ``d_a d_b x^alpha = weight * x^target`` (``a <= b``; the off-diagonal
    weight already counts both orders)."""
    bas = basis(dim)
    bas.ensure(degree)
    out = []
    sl = bas.degree_slice(degree)
    for src in range(sl.start, sl.stop):
        al = bas.alphas[src]
        for a in range(dim):
            for b in range(a, dim):
                if a == b:
                    if al[a] >= 2:
                        t = al[:a] + (al[a] - 2,) + al[a + 1:]
                        out.append((src, bas.index[t], al[a] * (al[a] - 1), a, b))
                elif al[a] and al[b]:
                    t = list(al)
                    t[a] -= 1
                    t[b] -= 1
                    out.append((src, bas.index[tuple(t)], 2 * al[a] * al[b], a, b))
    return tuple(out)


def _apply_metric_laplacian(vec, dim, degree, cov):
    """``f^{ab} d_a d_b`` on a dense vector supported in one degree."""
    out = {}
    for src, tgt, w, a, b in _second_derivative_table(dim, degree):
        c = vec.get(src)
        if c and cov[a][b]:
            out[tgt] = out.get(tgt, 0) + w * cov[a][b] * c
    return out


def _gaussian_expectation(parts, dim, cov):
    """``sum_m D^m g_m / (m! 2^m)`` for ``parts = {2m: {index: coeff}}``,
    evaluated by a Horner scheme from the top degree down."""
    if not parts:
        return mpq(0)
    top = max(parts) // 2
    acc = dict(parts.get(2 * top, {}))
    for m in range(top, 0, -1):
        lap = _apply_metric_laplacian(acc, dim, 2 * m, cov)
        acc = dict(parts.get(2 * m - 2, {}))
        inv = mpq(1, 2 * m)
        for k, v in lap.items():
            acc[k] = acc.get(k, 0) + v * inv
    return coerce(acc.get(0, 0))


def invariant_sequence(pair, max_order):
    """``L_0 ... L_max_order`` of the pair, via the heat-operator route."""
    _check_jets(pair, max_order)
    d = pair.dim
    hess = pair.hessian()
    det_f = linalg.det(hess)
    cov = linalg.inverse(hess)
    bas = basis(d)
    top = 3 * max_order if max_order else 0
    deg, ncum, rowptr, kidx = bas.table(max(top, 2))
    mul = kernels.mul_range

    nf = bas.count(max_order + 2)
    ftilde = [0] * bas.count(2) + list(pair.f.coeffs[bas.count(2):nf])
    bj = list(pair.b.coeffs[: bas.count(max_order)])

    powers = [[mpq(1)]]
    for l in range(1, max_order + 1):
        powers.append(mul(powers[-1], ftilde, 3 * l, max_order + 2 * l,
                          deg, ncum, rowptr, kidx))

    values = []
    for i in range(max_order + 1):
        if i % 2:
            values.append(ScaledInvariant(d, i, det_f, 0))
            continue
        parts = {}
        for l in range(0, i + 1):
            m = i + 2 * l
            prod_ = mul(powers[l], bj, m, m, deg, ncum, rowptr, kidx)
            sign = mpq((-1) ** l, factorial(l))
            sl = bas.degree_slice(m)
            part = {}
            for idx in range(sl.start, min(sl.stop, len(prod_))):
                c = prod_[idx]
                if c:
                    part[idx] = sign * c
            if part:
                parts[m] = part
        values.append(ScaledInvariant(d, i, det_f, _gaussian_expectation(parts, d, cov)))
    return InvariantSequence(d, tuple(values))


def lambda_general(pair, i):
    """``L_i(f, b)`` as a :class:`ScaledInvariant`."""
    return invariant_sequence(pair, i)[i]


def lambda_reduced(b, i):
    """``L_i(q, b)`` from the complete trace of the degree-``i`` part of ``b``."""
    if b.trunc < i:
        raise TruncationError(f"order {i} needs b to jet order {i}, have {b.trunc}")
    d = b.dim
    det_f = mpq(2) ** d
    if i % 2:
        return ScaledInvariant(d, i, det_f, 0)
    # derivative tensor b_{j1..ji} is i! times the polynomial-convention tensor
    ctr = complete_trace(SymTensor.from_series(b, i)) * factorial(i)
    return ScaledInvariant(d, i, det_f, ctr / (factorial(i // 2) * 2 ** i))


def reduced_sequence(b, max_order):
    return InvariantSequence(b.dim, tuple(lambda_reduced(b, i) for i in range(max_order + 1)))


def invariant_equal(a, c):
    """Exact equality of two invariant sequences (same dim and length)."""
    if a.dim != c.dim:
        raise DimensionMismatch(f"dimensions {a.dim} and {c.dim} differ")
    if a.max_order != c.max_order:
        raise ValueError(f"max orders {a.max_order} and {c.max_order} differ")
    return all(x.same_value(y) for x, y in zip(a.values, c.values))


def first_difference(a, c):
    """Lowest order at which two sequences differ, or ``None``."""
    for x, y in zip(a.values, c.values):
        if not x.same_value(y):
            return x.order
    return None


# independent route ---------------------------------------------------------
def _naive_mul(p, q, top):
    out = {}
    for a, x in p.items():
        da = sum(a)
        for b, y in q.items():
            if da + sum(b) <= top:
                k = tuple(u + v for u, v in zip(a, b))
                out[k] = out.get(k, 0) + x * y
    return {k: v for k, v in out.items() if v}


def lambda_by_pairings(pair, i):
    """``P_i`` summed term by term over ``(l, r, s)`` with ``r + s - 2l = i``,
    each Gaussian moment taken by pair-partition enumeration.

    Shares nothing with :func:`invariant_sequence` beyond the inputs.
    """
    _check_jets(pair, i)
    d = pair.dim
    hess = pair.hessian()
    cov = linalg.inverse(hess)
    det_f = linalg.det(hess)
    if i % 2:
        total = 0
    else:
        ft = {a: c for a, c in pair.f.terms() if 3 <= sum(a) <= i + 2}
        bs = {a: c for a, c in pair.b.terms() if sum(a) <= i}
        memo = {}
        total = 0
        power = {(0,) * d: 1}
        for l in range(0, i + 1):
            if l:
                power = _naive_mul(power, ft, i + 2 * l)
            for a, x in power.items():
                r = sum(a)
                for b, y in bs.items():
                    if r + sum(b) - 2 * l != i:
                        continue
                    gamma = tuple(u + v for u, v in zip(a, b))
                    mom = moment_by_pairing(cov, gamma, memo)
                    if mom:
                        total += mpq((-1) ** l, factorial(l)) * x * y * mom
    return ScaledInvariant(d, i, det_f, total)
