"""Truncated multivariate formal power series over an exact field.

A :class:`TruncatedSeries` is a jet: the coefficients of every monomial of
degree at most ``trunc`` are known exactly, nothing is known above.  Results
of arithmetic are only ever claimed to the order their inputs support.

Coefficients are stored densely in the graded monomial order of
:mod:`phylon._basis`.  Exact inputs (``int``, ``Fraction``, ``"p/q"``
strings) are converted to ``gmpy2.mpq``; any other field element type that
supports ``+``, ``*`` and truth testing (e.g. :class:`~phylon.qext.QuadExtScalar`)
is stored as is.

Multi-indices are tuples of exponents, one per variable (0-based positions).
Tensor-style index tuples, as taken by :func:`tensor_coeff`, use 1-based
variable labels ``1..d`` in the way one writes ``x^1, ..., x^d``.
"""
from math import factorial, prod

from . import kernels
from ._basis import basis
from ._numbers import coerce
from .errors import DimensionMismatch, TruncationError


class TruncatedSeries:
    __slots__ = ("dim", "trunc", "coeffs")

    def __init__(self, dim, trunc, coeffs=()):
        if dim < 1:
            raise ValueError("dimension must be positive")
        if trunc < 0:
            raise ValueError("truncation order must be non-negative")
        bas = basis(dim)
        n = bas.count(trunc)
        if isinstance(coeffs, dict):
            data = [0] * n
            for alpha, c in coeffs.items():
                alpha = tuple(alpha)
                if len(alpha) != dim or min(alpha) < 0:
                    raise ValueError(f"bad multi-index {alpha} for dimension {dim}")
                if sum(alpha) > trunc:
                    raise ValueError(f"term {alpha} exceeds truncation order {trunc}")
                data[bas.index[alpha]] = coerce(c)
        else:
            data = [coerce(c) for c in coeffs]
            if len(data) > n:
                raise ValueError("more coefficients than monomials of degree <= trunc")
            data.extend([0] * (n - len(data)))
        self.dim = dim
        self.trunc = trunc
        self.coeffs = tuple(data)

    @classmethod
    def _raw(cls, dim, trunc, data):
        """Wrap an already-normalised list (length checked, no coercion)."""
        obj = object.__new__(cls)
        n = basis(dim).count(trunc)
        if len(data) < n:
            data = list(data) + [0] * (n - len(data))
        elif len(data) > n:
            data = data[:n]
        obj.dim = dim
        obj.trunc = trunc
        obj.coeffs = tuple(data)
        return obj

    # constructors ------------------------------------------------------
    @classmethod
    def zero(cls, dim, trunc):
        return cls._raw(dim, trunc, [])

    @classmethod
    def constant(cls, dim, trunc, value):
        return cls._raw(dim, trunc, [coerce(value)])

    @classmethod
    def coordinate(cls, dim, label, trunc):
        """The coordinate function ``x^label`` (1-based label)."""
        if not 1 <= label <= dim:
            raise ValueError(f"variable label {label} out of range 1..{dim}")
        if trunc < 1:
            return cls.zero(dim, trunc)
        alpha = tuple(1 if v == label - 1 else 0 for v in range(dim))
        return cls(dim, trunc, {alpha: 1})

    @classmethod
    def quadratic_form(cls, dim, trunc):
        """``q(x) = |x|^2``."""
        terms = {}
        if trunc >= 2:
            for v in range(dim):
                terms[tuple(2 if w == v else 0 for w in range(dim))] = 1
        return cls(dim, trunc, terms)

    # access ------------------------------------------------------------
    def __getitem__(self, alpha):
        alpha = tuple(alpha)
        if sum(alpha) > self.trunc:
            raise TruncationError(f"degree {sum(alpha)} exceeds jet order {self.trunc}")
        return self.coeffs[basis(self.dim).index[alpha]]

    def terms(self):
        """Non-zero ``(alpha, coefficient)`` pairs in graded order."""
        alphas = basis(self.dim).alphas
        return [(alphas[i], c) for i, c in enumerate(self.coeffs) if c]

    def constant_term(self):
        return self.coeffs[0]

    def valuation(self):
        """Lowest degree with a non-zero coefficient (``trunc + 1`` if none)."""
        deg = basis(self.dim).deg
        for i, c in enumerate(self.coeffs):
            if c:
                return deg[i]
        return self.trunc + 1

    def nonconstant_valuation(self):
        deg = basis(self.dim).deg
        for i in range(1, len(self.coeffs)):
            if self.coeffs[i]:
                return deg[i]
        return self.trunc + 1

    def is_zero(self):
        return not any(self.coeffs)

    def __repr__(self):
        shown = ", ".join(f"{a}: {c}" for a, c in self.terms()[:8])
        more = "" if len(self.terms()) <= 8 else ", ..."
        return f"TruncatedSeries(dim={self.dim}, trunc={self.trunc}, {{{shown}{more}}})"

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if self.dim != other.dim:
            return False
        n = basis(self.dim).count(min(self.trunc, other.trunc))
        return all(x == y for x, y in zip(self.coeffs[:n], other.coeffs[:n]))

    __hash__ = None

    # truncation --------------------------------------------------------
    def jet(self, k):
        return jet(self, k)

    def homogeneous_part(self, m):
        return homogeneous_part(self, m)

    def padded(self, n):
        """The jet read as a polynomial and re-declared exact to order ``n``.

        Only sound where the caller knows the unknown coefficients cannot
        reach the degrees it will read.
        """
        return TruncatedSeries._raw(self.dim, n, list(self.coeffs[: basis(self.dim).count(n)]))

    # arithmetic --------------------------------------------------------
    def _check(self, other):
        if self.dim != other.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {other.dim} differ")

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            self._check(other)
            n = min(self.trunc, other.trunc)
            k = basis(self.dim).count(n)
            return TruncatedSeries._raw(self.dim, n,
                                        [x + y for x, y in zip(self.coeffs[:k], other.coeffs[:k])])
        other = coerce(other)
        data = list(self.coeffs)
        data[0] = data[0] + other
        return TruncatedSeries._raw(self.dim, self.trunc, data)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries._raw(self.dim, self.trunc, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        c = coerce(c)
        return TruncatedSeries._raw(self.dim, self.trunc, [c * x if x else x for x in self.coeffs])

    def __truediv__(self, c):
        c = coerce(c)
        return self.scale(1 / c)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = TruncatedSeries.constant(self.dim, self.trunc, 1)
        for _ in range(n):
            out = out * self
        return out

    def diff(self, var):
        """Partial derivative in the 0-based variable ``var``; exact to ``trunc - 1``."""
        if not 0 <= var < self.dim:
            raise ValueError("variable index out of range")
        if self.trunc == 0:
            raise TruncationError("cannot differentiate a 0-jet")
        bas = basis(self.dim)
        n = self.trunc - 1
        out = [0] * bas.count(n)
        for i, c in enumerate(self.coeffs):
            if c:
                alpha = bas.alphas[i]
                e = alpha[var]
                if e:
                    beta = alpha[:var] + (e - 1,) + alpha[var + 1:]
                    out[bas.index[beta]] = e * c
        return TruncatedSeries._raw(self.dim, n, out)

    def map_coeffs(self, fn):
        return TruncatedSeries._raw(self.dim, self.trunc, [fn(c) for c in self.coeffs])


def _check_dims(a, b):
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions {a.dim} and {b.dim} differ")


def _mul_raw(dim, a, b, lo, hi):
    bas = basis(dim)
    deg, ncum, rowptr, kidx = bas.table(hi)
    return kernels.mul_range(list(a), list(b), lo, hi, deg, ncum, rowptr, kidx)


def mul(a, b):
    """Product, exact to ``min(a.trunc, b.trunc)``."""
    _check_dims(a, b)
    n = min(a.trunc, b.trunc)
    return TruncatedSeries._raw(a.dim, n, _mul_raw(a.dim, a.coeffs, b.coeffs, 0, n))


def mul_homogeneous(a, b, m):
    """Degree-``m`` homogeneous part of ``a*b``, both read as polynomials.

    The result is declared exact to order ``m``.
    """
    _check_dims(a, b)
    bas = basis(a.dim)
    data = _mul_raw(a.dim, a.coeffs, b.coeffs, m, m)
    return TruncatedSeries._raw(a.dim, m, data)


def jet(a, k):
    if k > a.trunc:
        raise TruncationError(f"jet order {k} exceeds known order {a.trunc}")
    if k < 0:
        raise ValueError("jet order must be non-negative")
    return TruncatedSeries._raw(a.dim, k, list(a.coeffs[: basis(a.dim).count(k)]))


def homogeneous_part(a, m):
    if m > a.trunc:
        raise TruncationError(f"degree {m} exceeds known order {a.trunc}")
    bas = basis(a.dim)
    data = [0] * len(a.coeffs)
    sl = bas.degree_slice(m)
    data[sl] = a.coeffs[sl]
    return TruncatedSeries._raw(a.dim, a.trunc, data)


def labels_to_alpha(dim, indices):
    alpha = [0] * dim
    for lab in indices:
        if not 1 <= lab <= dim:
            raise ValueError(f"variable label {lab} out of range 1..{dim}")
        alpha[lab - 1] += 1
    return tuple(alpha)


def alpha_to_labels(alpha):
    return tuple(v + 1 for v, e in enumerate(alpha) for _ in range(e))


def multinomial_weight(alpha):
    """``alpha!`` = product of the factorials of the exponents."""
    return prod(factorial(e) for e in alpha)


def tensor_coeff(a, indices):
    """Symmetric-tensor coefficient ``a_{i1...ir} = alpha! * c_alpha``.

    ``indices`` are 1-based variable labels; the value is symmetric in them.
    """
    r = len(indices)
    if r > a.trunc:
        raise TruncationError(f"tensor order {r} exceeds jet order {a.trunc}")
    alpha = labels_to_alpha(a.dim, indices)
    return multinomial_weight(alpha) * a[alpha]


def compose(outer, inner):
    """``outer(inner^1, ..., inner^d)``.

    Every inner series must have zero constant term.  The result is exact to
    ``min(outer.trunc, N + v - 1)``, where ``N`` is the smallest inner
    truncation and ``v`` the lowest degree >= 1 at which ``outer`` has a
    non-zero coefficient: an unknown inner term of degree ``N+1`` can only
    reach degree ``N + v`` of the composite.
    """
    return compose_many([outer], inner)[0]


def compose_many(outers, inner):
    """Compose several outer series with the same inner tuple, sharing powers."""
    inner = list(inner)
    if not inner:
        raise DimensionMismatch("empty inner tuple")
    e = inner[0].dim
    for s in inner:
        if s.dim != e:
            raise DimensionMismatch("inner series have different dimensions")
        if s.trunc >= 0 and s.coeffs[0]:
            raise ValueError("inner series must have zero constant term")
    for o in outers:
        if o.dim != len(inner):
            raise DimensionMismatch(
                f"outer series in {o.dim} variables, {len(inner)} inner series given")
    n_in = min(s.trunc for s in inner)
    targets = []
    for o in outers:
        v = o.nonconstant_valuation()
        targets.append(min(o.trunc, n_in + v - 1) if v <= o.trunc else o.trunc)
    top = max(targets)
    bas_in = basis(e)
    ncoef = bas_in.count(top)
    inner_c = [list(s.coeffs[:ncoef]) for s in inner]
    d = len(inner)
    bas_out = basis(d)
    powers = {(0,) * d: [coerce(1)]}

    def power(alpha, m):
        p = powers.get(alpha)
        if p is not None:
            return p
        v = next(i for i, x in enumerate(alpha) if x)
        parent = alpha[:v] + (alpha[v] - 1,) + alpha[v + 1:]
        p = _mul_raw(e, power(parent, m), inner_c[v], sum(alpha), m)
        powers[alpha] = p
        return p

    results = []
    for o, m in zip(outers, targets):
        acc = [0] * bas_in.count(m)
        for i, c in enumerate(o.coeffs):
            if not c:
                continue
            alpha = bas_out.alphas[i]
            if sum(alpha) > m:
                break
            kernels.axpy(acc, c, power(alpha, top), len(acc))
        results.append(TruncatedSeries._raw(e, m, acc))
    return results


def exp_series(g):
    """``exp(g)`` for ``g`` with zero constant term."""
    if g.coeffs[0]:
        raise ValueError("exp_series needs a zero constant term")
    out = TruncatedSeries.constant(g.dim, g.trunc, 1)
    term = out
    for k in range(1, g.trunc + 1):
        term = (term * g) / k
        if term.is_zero():
            break
        out = out + term
    return out
