"""Graded monomial bases and the multiplication tables used by the kernels.

Monomials in ``d`` variables are numbered in graded order: all monomials of
degree 0, then degree 1, and so on, lexicographic inside a degree.  The index
of a monomial never depends on the truncation, so the coefficients of a jet
of order ``k`` are always a prefix of the coefficients of any longer jet.
"""
from array import array
from itertools import combinations_with_replacement

_BASES = {}


class MonomialBasis:
    """Monomial numbering for one dimension, grown on demand."""

    def __init__(self, dim):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.dim = dim
        self.alphas = []
        self.deg = []
        self.index = {}
        self.ncum = []
        self.top = -1
        self._table_n = -1
        self._rowptr = None
        self._kidx = None
        self._deg_arr = None
        self._ncum_arr = None

    def ensure(self, n):
        d = self.dim
        while self.top < n:
            m = self.top + 1
            for combo in combinations_with_replacement(range(d), m):
                alpha = [0] * d
                for v in combo:
                    alpha[v] += 1
                alpha = tuple(alpha)
                self.index[alpha] = len(self.alphas)
                self.alphas.append(alpha)
                self.deg.append(m)
            self.ncum.append(len(self.alphas))
            self.top = m
        return self

    def count(self, m):
        """Number of monomials of degree at most ``m``."""
        if m < 0:
            return 0
        self.ensure(m)
        return self.ncum[m]

    def degree_slice(self, m):
        return slice(self.count(m - 1), self.count(m))

    def table(self, n):
        """CSR multiplication table valid for products truncated at degree ``n``.

        Row ``i`` lists, for every monomial ``j`` with ``deg i + deg j <= n``
        (a prefix of the basis), the index of the product monomial.
        """
        if n > self._table_n:
            self.ensure(n)
            rowptr = array("q", [0])
            kidx = array("q")
            index = self.index
            alphas = self.alphas
            for i in range(self.ncum[n]):
                a = alphas[i]
                for j in range(self.ncum[n - self.deg[i]]):
                    b = alphas[j]
                    kidx.append(index[tuple(x + y for x, y in zip(a, b))])
                rowptr.append(len(kidx))
            self._rowptr = rowptr
            self._kidx = kidx
            self._deg_arr = array("q", self.deg[: self.ncum[n]])
            self._ncum_arr = array("q", self.ncum[: n + 1])
            self._table_n = n
        return self._deg_arr, self._ncum_arr, self._rowptr, self._kidx


def basis(dim):
    b = _BASES.get(dim)
    if b is None:
        b = _BASES[dim] = MonomialBasis(dim)
    return b
