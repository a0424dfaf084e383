"""The phylon group: formal diffeomorphism jets fixing the origin.

A :class:`PhylonMap` is a tuple of ``d`` truncated series with zero constant
term and invertible linear part.  The group product is composition
(``compose_phylon(a, c)`` is ``a o c``), and the group acts on functions
and densities by push-forward::

    (psi f)(x) = f(psi^{-1}(x))
    (psi b)(x) = b(psi^{-1}(x)) * |det D(psi^{-1})(x)|
"""
from dataclasses import dataclass

from . import linalg
from ._basis import basis
from ._numbers import coerce
from .errors import DimensionMismatch, NotInvertible, NotPositiveDefinite, PhylonError, TruncationError
from .series import TruncatedSeries, compose, compose_many, jet, tensor_coeff


class PhylonMap:
    __slots__ = ("dim", "trunc", "components")

    def __init__(self, components):
        components = list(components)
        if not components:
            raise DimensionMismatch("a phylon map needs at least one component")
        d = len(components)
        for s in components:
            if s.dim != d:
                raise DimensionMismatch(
                    f"component in {s.dim} variables for a map of R^{d}")
            if s.coeffs[0]:
                raise PhylonError("phylon map components must have zero constant term")
        n = min(s.trunc for s in components)
        if n < 1:
            raise TruncationError("a phylon map must be known at least to its linear part")
        self.dim = d
        self.trunc = n
        self.components = tuple(s if s.trunc == n else jet(s, n) for s in components)
        if not linalg.det(self.linear_part()):
            raise NotInvertible("linear part of a phylon map must be invertible")

    @classmethod
    def identity(cls, dim, trunc):
        return cls([TruncatedSeries.coordinate(dim, i + 1, trunc) for i in range(dim)])

    @classmethod
    def linear(cls, matrix, trunc=1):
        d = len(matrix)
        comps = []
        for i in range(d):
            terms = {tuple(1 if w == j else 0 for w in range(d)): matrix[i][j]
                     for j in range(d) if matrix[i][j]}
            comps.append(TruncatedSeries(d, trunc, terms))
        return cls(comps)

    def linear_part(self):
        """Matrix ``(psi^i_j)``: row ``i`` holds the linear coefficients of ``psi^i``."""
        d = self.dim
        return [[s.coeffs[1 + j] for j in range(d)] for s in self.components]

    def jet(self, k):
        return PhylonMap([jet(s, k) for s in self.components])

    def __eq__(self, other):
        if not isinstance(other, PhylonMap):
            return NotImplemented
        return self.dim == other.dim and all(
            a == b for a, b in zip(self.components, other.components))

    __hash__ = None

    def __repr__(self):
        return f"PhylonMap(dim={self.dim}, trunc={self.trunc}, components={list(self.components)!r})"

    def __matmul__(self, other):
        return compose_phylon(self, other)

    def map_coeffs(self, fn):
        return PhylonMap([s.map_coeffs(fn) for s in self.components])


def compose_phylon(a, c):
    """Group product ``a o c``; exact to the common jet order."""
    if a.dim != c.dim:
        raise DimensionMismatch(f"dimensions {a.dim} and {c.dim} differ")
    return PhylonMap(compose_many(a.components, c.components))


def invert_phylon(a):
    """Inverse map, built one degree at a time.

    With ``a(x) = Lx + h(x)``, the inverse satisfies
    ``phi = L^{-1}(y - h(phi))``; each pass fixes one more degree, and the
    pass for degree ``t`` only needs ``h`` and ``phi`` to order ``t``.
    """
    d, n = a.dim, a.trunc
    linv = linalg.inverse(a.linear_part())
    lin = PhylonMap.linear(linv, n)
    bas = basis(d)
    n1 = bas.count(1)
    h = [TruncatedSeries._raw(d, n, [0] * n1 + list(s.coeffs[n1:])) for s in a.components]
    if all(s.is_zero() for s in h):
        return lin
    ident = [TruncatedSeries.coordinate(d, i + 1, n) for i in range(d)]
    phi = [jet(s, 1) for s in lin.components]
    for t in range(2, n + 1):
        hp = compose_many([jet(s, t) for s in h], phi)
        rhs = [jet(ident[i], t) - hp[i] for i in range(d)]
        phi = [_lincomb(linv[i], rhs) for i in range(d)]
    return PhylonMap(phi)


def _lincomb(row, series):
    out = None
    for c, s in zip(row, series):
        if c:
            term = s.scale(c)
            out = term if out is None else out + term
    if out is None:
        out = TruncatedSeries.zero(series[0].dim, series[0].trunc)
    return out


def series_det(m):
    """Determinant of a square matrix of series by cofactor expansion."""
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    out = None
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * series_det(minor)
        if j % 2:
            term = -term
        out = term if out is None else out + term
    if out is None:
        out = TruncatedSeries.zero(m[0][0].dim, min(s.trunc for row in m for s in row))
    return out


def jacobian_determinant(phi):
    """``det(d phi^i / d x^j)``, exact to ``phi.trunc - 1``."""
    return series_det([[s.diff(j) for j in range(phi.dim)] for s in phi.components])


def modulus(a):
    """Formal absolute value: negate iff the constant term is negative."""
    c = a.constant_term()
    if not c:
        raise PhylonError("modulus of a series with zero constant term is undefined")
    return -a if c < 0 else a


def _check(psi, s):
    if psi.dim != s.dim:
        raise DimensionMismatch(f"map on R^{psi.dim} applied to a series in {s.dim} variables")


def act_on_f(psi, f):
    """``(psi f)(x) = f(psi^{-1}(x))``."""
    _check(psi, f)
    return compose(f, invert_phylon(psi).components)


def act_on_b(psi, b):
    """``(psi b)(x) = b(psi^{-1}(x)) |det D psi^{-1}(x)|``."""
    _check(psi, b)
    phi = invert_phylon(psi)
    return _push_density(phi, compose(b, phi.components))


def _push_density(phi, b_composed):
    return b_composed * modulus(jacobian_determinant(phi))


def act_on_pair(psi, pair):
    """Transport a :class:`PairInstance`, inverting ``psi`` only once."""
    _check(psi, pair.f)
    phi = invert_phylon(psi)
    fc, bc = compose_many([pair.f, pair.b], phi.components)
    return PairInstance(fc, _push_density(phi, bc))


def pull_back_b(chi, b):
    """``act_on_b(chi^{-1}, b) = b(chi(x)) |det D chi(x)|``, with no inversion."""
    _check(chi, b)
    return _push_density(chi, compose(b, chi.components))


def pull_back_pair(chi, pair):
    """``act_on_pair(chi^{-1}, pair)``, with no inversion."""
    _check(chi, pair.f)
    fc, bc = compose_many([pair.f, pair.b], chi.components)
    return PairInstance(fc, _push_density(chi, bc))


def kernel_level(psi):
    """Largest ``k <= trunc - 1`` with ``jet_k(psi)`` the identity; 0 if the
    linear part is not the identity."""
    d = psi.dim
    lin = psi.linear_part()
    if any(lin[i][j] != (1 if i == j else 0) for i in range(d) for j in range(d)):
        return 0
    n1 = basis(d).count(1)
    deg = basis(d).deg
    first = psi.trunc + 1
    for s in psi.components:
        for i in range(n1, len(s.coeffs)):
            if s.coeffs[i]:
                first = min(first, deg[i])
                break
    return min(psi.trunc - 1, first - 1)


@dataclass(frozen=True)
class PairInstance:
    """A Laplace pair ``(f, b)``: ``f`` has a non-degenerate minimum at 0 and
    ``b(0) != 0``.  Membership is checked exactly on construction."""

    f: TruncatedSeries
    b: TruncatedSeries

    def __post_init__(self):
        f, b = self.f, self.b
        if f.dim != b.dim:
            raise DimensionMismatch(f"f has {f.dim} variables, b has {b.dim}")
        if f.trunc < 2:
            raise TruncationError("f must be known at least to its quadratic part")
        n1 = basis(f.dim).count(1)
        if any(f.coeffs[:n1]):
            raise PhylonError("f must have zero constant and linear terms")
        linalg.check_positive_definite(self.hessian(), "Hessian of f")
        if not b.constant_term():
            raise PhylonError("b(0) must be non-zero")

    @property
    def dim(self):
        return self.f.dim

    def hessian(self):
        """``(f_ij)``, the matrix of second derivatives at 0."""
        d = self.f.dim
        return [[tensor_coeff(self.f, (i + 1, j + 1)) for j in range(d)] for i in range(d)]

    def jet(self, nf, nb):
        return PairInstance(jet(self.f, nf), jet(self.b, nb))

    def __eq__(self, other):
        if not isinstance(other, PairInstance):
            return NotImplemented
        return self.f == other.f and self.b == other.b

    __hash__ = None


def hessian_of(f):
    d = f.dim
    return [[tensor_coeff(f, (i + 1, j + 1)) for j in range(d)] for i in range(d)]


__all__ = [
    "PhylonMap", "PairInstance", "compose_phylon", "invert_phylon", "act_on_f",
    "act_on_b", "act_on_pair", "kernel_level", "jacobian_determinant", "modulus",
    "series_det", "hessian_of", "pull_back_b", "pull_back_pair", "NotPositiveDefinite",
]
