"""Exact symmetric tensors, complete traces and the trace decomposition.

Index tuples use 1-based labels.  A totally symmetric tensor ``S`` of order
``k`` is stored once per sorted index tuple and corresponds to the
homogeneous polynomial ``p(x) = S_{j1...jk} x^{j1}...x^{jk}``; under that
correspondence the symmetrised product with the metric is multiplication by
``|x|^2`` and a single trace is ``Laplacian(p) / (k (k-1))``.  Round-bracket
symmetrisation always averages over permutations.

Literal index computations (``complete_trace``, ``t_contract``,
``full_symmetrization``) deliberately do not go through the polynomial
picture, so the two can check each other.
"""
from collections import defaultdict
from itertools import combinations_with_replacement, product
from math import factorial

from ._numbers import coerce
from .errors import InvariantMismatch, PhylonError
from .series import alpha_to_labels, labels_to_alpha, multinomial_weight


# homogeneous polynomials as {alpha: coeff} ----------------------------------
def _clean(p):
    return {a: c for a, c in p.items() if c}


def _padd(p, q, c=1):
    out = dict(p)
    for a, v in q.items():
        out[a] = out.get(a, 0) + c * v
    return _clean(out)


def _pscale(p, c):
    return _clean({a: c * v for a, v in p.items()})


def _pdiff(p, var):
    out = {}
    for a, c in p.items():
        e = a[var]
        if e:
            b = a[:var] + (e - 1,) + a[var + 1:]
            out[b] = out.get(b, 0) + e * c
    return _clean(out)


def _pmul_var(p, var):
    out = {}
    for a, c in p.items():
        b = a[:var] + (a[var] + 1,) + a[var + 1:]
        out[b] = c
    return out


def _pmul_r2(p, dim):
    out = defaultdict(int)
    for a, c in p.items():
        for v in range(dim):
            out[a[:v] + (a[v] + 2,) + a[v + 1:]] += c
    return _clean(out)


def _plaplacian(p, dim):
    out = defaultdict(int)
    for a, c in p.items():
        for v in range(dim):
            e = a[v]
            if e >= 2:
                out[a[:v] + (e - 2,) + a[v + 1:]] += e * (e - 1) * c
    return _clean(out)


def _pmul_r2_pow(p, dim, m):
    for _ in range(m):
        p = _pmul_r2(p, dim)
    return p


class SymTensor:
    """Totally symmetric tensor of order ``order`` on ``R^dim``."""

    __slots__ = ("dim", "order", "entries")

    def __init__(self, dim, order, entries=None):
        self.dim = dim
        self.order = order
        clean = {}
        for idx, v in (entries or {}).items():
            idx = tuple(sorted(idx))
            if len(idx) != order or (idx and not 1 <= idx[0] <= idx[-1] <= dim):
                raise ValueError(f"bad index tuple {idx} for order {order}, dim {dim}")
            v = coerce(v)
            if v:
                clean[idx] = v
        self.entries = clean

    @classmethod
    def _raw(cls, dim, order, entries):
        obj = object.__new__(cls)
        obj.dim, obj.order, obj.entries = dim, order, entries
        return obj

    @classmethod
    def zero(cls, dim, order):
        return cls._raw(dim, order, {})

    @classmethod
    def delta(cls, dim):
        return cls(dim, 2, {(i, i): 1 for i in range(1, dim + 1)})

    @classmethod
    def from_polynomial(cls, dim, order, poly):
        """Tensor of a homogeneous polynomial ``{alpha: c}`` of degree ``order``."""
        kf = factorial(order)
        out = {}
        for a, c in poly.items():
            if sum(a) != order:
                raise ValueError("polynomial is not homogeneous of the given degree")
            if c:
                out[alpha_to_labels(a)] = coerce(c) * multinomial_weight(a) / kf
        return cls._raw(dim, order, out)

    @classmethod
    def from_series(cls, series, order):
        """Tensor of the degree-``order`` part of a truncated series."""
        poly = {a: c for a, c in series.terms() if sum(a) == order}
        return cls.from_polynomial(series.dim, order, poly)

    def to_polynomial(self):
        kf = factorial(self.order)
        out = {}
        for idx, v in self.entries.items():
            a = labels_to_alpha(self.dim, idx)
            out[a] = v * kf / multinomial_weight(a)
        return out

    def __getitem__(self, idx):
        return self.entries.get(tuple(sorted(idx)), 0)

    def __eq__(self, other):
        if not isinstance(other, SymTensor):
            return NotImplemented
        return (self.dim, self.order) == (other.dim, other.order) and self.entries == other.entries

    __hash__ = None

    def is_zero(self):
        return not self.entries

    def _same(self, other):
        if (self.dim, self.order) != (other.dim, other.order):
            raise ValueError("tensor shapes differ")

    def __add__(self, other):
        self._same(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) + v
        return SymTensor._raw(self.dim, self.order, {k: v for k, v in out.items() if v})

    def __neg__(self):
        return SymTensor._raw(self.dim, self.order, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = coerce(c)
        return SymTensor._raw(self.dim, self.order,
                              {k: c * v for k, v in self.entries.items() if c * v})

    __rmul__ = __mul__

    def __repr__(self):
        return f"SymTensor(dim={self.dim}, order={self.order}, entries={self.entries!r})"


def sorted_tuples(dim, order):
    return combinations_with_replacement(range(1, dim + 1), order)


def inner(a, b):
    """Full contraction ``a_{J} b_{J}`` summed over all (unsorted) index tuples."""
    a._same(b)
    kf = factorial(a.order)
    total = 0
    for idx, v in a.entries.items():
        w = b.entries.get(idx)
        if w:
            total += v * w * kf / multinomial_weight(labels_to_alpha(a.dim, idx))
    return coerce(total)


def complete_trace(b):
    """Sum of ``b_{k1 k1 ... kj kj}`` over all ``k``; zero for odd order."""
    if b.order % 2:
        return coerce(0)
    j = b.order // 2
    total = 0
    for ks in product(range(1, b.dim + 1), repeat=j):
        total += b[tuple(k for k in ks for _ in range(2))]
    return coerce(total)


def trace(b):
    """Single metric contraction, an order ``k - 2`` tensor."""
    if b.order < 2:
        raise ValueError("need order >= 2 to take a trace")
    out = {}
    for idx in sorted_tuples(b.dim, b.order - 2):
        v = sum(b[(i, i) + idx] for i in range(1, b.dim + 1))
        if v:
            out[idx] = v
    return SymTensor._raw(b.dim, b.order - 2, out)


def _harmonic_layers(poly, order, dim):
    """Split a homogeneous polynomial as ``sum_m |x|^{2m} h_{order-2m}``
    with every ``h`` harmonic.  Returns ``{m: h}``.

    Uses ``Laplacian^m (|x|^{2m} h_q) = prod_{t<=m} 2t(2t + 2q + d - 2) * h_q``
    for harmonic ``h_q``, peeling the deepest layer first.
    """
    layers = {}
    rest = dict(poly)
    for m in range(order // 2, -1, -1):
        q = order - 2 * m
        lap = rest
        for _ in range(m):
            lap = _plaplacian(lap, dim)
        factor = 1
        for t in range(1, m + 1):
            factor *= 2 * t * (2 * t + 2 * q + dim - 2)
        h = _pscale(lap, coerce(1) / factor)
        layers[m] = h
        if h:
            rest = _padd(rest, _pmul_r2_pow(h, dim, m), -1)
    if rest:
        raise AssertionError("harmonic decomposition did not exhaust the tensor")
    return layers


def trace_free_part(b):
    """Projection of ``b`` onto the trace-free tensors of the same order."""
    layers = _harmonic_layers(b.to_polynomial(), b.order, b.dim)
    return SymTensor.from_polynomial(b.dim, b.order, layers[0])


def trace_decompose(b):
    """Components of ``b`` in the trace decomposition, as ``[(q, Z_q)]`` for
    ``q = k, k-2, ...``.  ``Z_q`` is the metric power symmetrised with a
    trace-free order-``q`` tensor; the components sum to ``b``."""
    layers = _harmonic_layers(b.to_polynomial(), b.order, b.dim)
    out = []
    for m in range(0, b.order // 2 + 1):
        comp = _pmul_r2_pow(layers[m], b.dim, m)
        out.append((b.order - 2 * m, SymTensor.from_polynomial(b.dim, b.order, comp)))
    return out


def trace_free_components(b):
    """``[(q, W_q)]``: the trace-free tensors behind each decomposition component."""
    layers = _harmonic_layers(b.to_polynomial(), b.order, b.dim)
    return [(b.order - 2 * m, SymTensor.from_polynomial(b.dim, b.order - 2 * m, layers[m]))
            for m in range(0, b.order // 2 + 1)]


def embed_trace_free(w, order):
    """``delta_(j1 j2 ... delta W_...)`` of the given order (``order - w.order`` even)."""
    m2 = order - w.order
    if m2 < 0 or m2 % 2:
        raise ValueError("order - w.order must be a non-negative even number")
    return SymTensor.from_polynomial(w.dim, order,
                                     _pmul_r2_pow(w.to_polynomial(), w.dim, m2 // 2))


class KTensor:
    """Tensor ``X_{i j1 ... j_{k+1}}`` symmetric in its last ``k+1`` slots.

    Stored by ``(i, sorted tuple)``; ``order`` counts all ``k+2`` slots.
    Elements of the space K are those whose full symmetrisation vanishes.
    """

    __slots__ = ("dim", "order", "entries")

    def __init__(self, dim, order, entries=None):
        if order < 2:
            raise ValueError("KTensor order must be at least 2")
        self.dim = dim
        self.order = order
        clean = {}
        for (i, idx), v in (entries or {}).items():
            idx = tuple(sorted(idx))
            if len(idx) != order - 1 or not 1 <= i <= dim:
                raise ValueError(f"bad index ({i}, {idx})")
            v = coerce(v)
            if v:
                clean[(i, idx)] = v
        self.entries = clean

    @classmethod
    def _raw(cls, dim, order, entries):
        obj = object.__new__(cls)
        obj.dim, obj.order, obj.entries = dim, order, entries
        return obj

    @classmethod
    def from_polynomials(cls, dim, polys):
        """From ``X_i(x) = X_{i J} x^J`` (all homogeneous of one degree)."""
        deg = None
        out = {}
        for i, p in enumerate(polys, 1):
            for a, c in p.items():
                deg = sum(a) if deg is None else deg
                if c:
                    kf = factorial(sum(a))
                    out[(i, alpha_to_labels(a))] = coerce(c) * multinomial_weight(a) / kf
        if deg is None:
            raise ValueError("cannot infer order from zero polynomials; use KTensor.zero")
        return cls._raw(dim, deg + 1, out)

    @classmethod
    def zero(cls, dim, order):
        return cls._raw(dim, order, {})

    def __getitem__(self, key):
        i, idx = key
        return self.entries.get((i, tuple(sorted(idx))), 0)

    def __eq__(self, other):
        if not isinstance(other, KTensor):
            return NotImplemented
        return (self.dim, self.order) == (other.dim, other.order) and self.entries == other.entries

    __hash__ = None

    def __add__(self, other):
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) + v
        return KTensor._raw(self.dim, self.order, {k: v for k, v in out.items() if v})

    def __mul__(self, c):
        c = coerce(c)
        return KTensor._raw(self.dim, self.order,
                            {k: c * v for k, v in self.entries.items() if c * v})

    __rmul__ = __mul__

    def __repr__(self):
        return f"KTensor(dim={self.dim}, order={self.order}, entries={self.entries!r})"


def full_symmetrization(x):
    """Average of ``X`` over all permutations of its ``k+2`` slots."""
    n = x.order
    out = {}
    for u in sorted_tuples(x.dim, n):
        total = 0
        for p in range(n):
            total += x[(u[p], u[:p] + u[p + 1:])]
        if total:
            out[u] = coerce(total) / n
    return SymTensor._raw(x.dim, n, out)


def in_k(x):
    return full_symmetrization(x).is_zero()


def t_contract(x):
    """``T(X)_{j1...jk} = X_{i i j1 ... jk}`` (summed over ``i``)."""
    k = x.order - 2
    out = {}
    for idx in sorted_tuples(x.dim, k):
        v = sum(x[(i, (i,) + idx)] for i in range(1, x.dim + 1))
        if v:
            out[idx] = coerce(v)
    return SymTensor._raw(x.dim, k, out)


def k_lift(w, order):
    """Unscaled K-tensor built from a trace-free ``W`` of order ``q > 0``:

        X_{i i1..i_{k+1}} = delta_{i(i1} delta.. W_{..)} - delta_(i1 i2 .. W_{..)i}

    In polynomial form ``X_i = x_i r^{2m} p_W - r^{2m+2} d_i p_W / q`` with
    ``k - q = 2m``.  ``T`` maps it to ``(d + q - 2)/(k + 1)`` times the
    embedding of ``W`` in order ``k``.
    """
    q, d = w.order, w.dim
    if q < 1:
        raise ValueError("k_lift needs a trace-free tensor of order >= 1")
    m2 = order - q
    if m2 < 0 or m2 % 2:
        raise ValueError("order - w.order must be a non-negative even number")
    m = m2 // 2
    pw = w.to_polynomial()
    pz = _pmul_r2_pow(pw, d, m)
    polys = []
    for i in range(d):
        first = _pmul_var(pz, i)
        second = _pmul_r2_pow(_pdiff(pw, i), d, m + 1)
        polys.append(_padd(first, second, -coerce(1) / q))
    if not any(polys):
        return KTensor.zero(d, order + 2)
    return KTensor.from_polynomials(d, polys)


def solve_t(z):
    """Some ``X`` in K with ``T(X) = z``; needs ``dim > 1`` and zero complete trace."""
    d, k = z.dim, z.order
    if d < 2:
        raise PhylonError("T is not onto the trace-free part when dim = 1")
    if complete_trace(z):
        raise InvariantMismatch(k, f"complete trace of order-{k} tensor is non-zero")
    out = KTensor.zero(d, k + 2)
    for q, w in trace_free_components(z):
        if q == 0 or w.is_zero():
            continue
        out = out + k_lift(w, k) * (coerce(k + 1) / (d + q - 2))
    return out
