"""Small dense matrices over an exact field (lists of rows)."""
from ._numbers import coerce
from .errors import NotInvertible, NotPositiveDefinite


def identity(n, one=1):
    return [[one if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]


def transpose(a):
    return [list(r) for r in zip(*a)]


def det(a):
    """Determinant by fraction-valued Gaussian elimination."""
    m = [[coerce(x) for x in r] for r in a]
    n = len(m)
    result = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return 0 * result
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = -result
        p = m[c][c]
        result = result * p
        inv = 1 / p
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return result


def inverse(a):
    n = len(a)
    m = [[coerce(x) for x in r] + [coerce(1 if i == j else 0) for j in range(n)]
         for i, r in enumerate(a)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            raise NotInvertible("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [r[n:] for r in m]


def leading_minors(a):
    return [det([row[:k] for row in a[:k]]) for k in range(1, len(a) + 1)]


def is_symmetric(a):
    n = len(a)
    return all(a[i][j] == a[j][i] for i in range(n) for j in range(i))


def check_positive_definite(a, what="matrix"):
    if not is_symmetric(a):
        raise NotPositiveDefinite(f"{what} is not symmetric")
    for k, m in enumerate(leading_minors(a), 1):
        if not m > 0:
            raise NotPositiveDefinite(
                f"{what} is not positive-definite (leading minor {k} is {m})")


def ldl(a):
    """``a = L D L^T`` with unit lower-triangular ``L``; returns ``(L, D)``."""
    a = [[coerce(x) for x in r] for r in a]
    n = len(a)
    L = identity(n)
    D = [0] * n
    for j in range(n):
        D[j] = a[j][j] - sum(L[j][k] * L[j][k] * D[k] for k in range(j))
        if not D[j]:
            raise NotPositiveDefinite("zero pivot in LDL^T factorisation")
        for i in range(j + 1, n):
            L[i][j] = (a[i][j] - sum(L[i][k] * L[j][k] * D[k] for k in range(j))) / D[j]
    return L, D
