"""Exact arithmetic in a real quadratic field Q(sqrt(s))."""
import math

from gmpy2 import mpq

from ._numbers import coerce, is_rational, qstr, rational_sqrt


class QuadExtScalar:
    """The number ``a + b*sqrt(s)`` with rational ``a``, ``b`` and ``s > 0``.

    When ``s`` is a rational square the irrational part is folded into ``a``
    so that ``b != 0`` always means a genuinely irrational number.  Values
    with ``b == 0`` mix freely with any radicand; two irrational values mix
    only when their radicands differ by a rational square factor.
    """

    __slots__ = ("a", "b", "s")

    def __init__(self, a=0, b=0, s=1):
        a, b, s = mpq(a), mpq(b), mpq(s)
        if s <= 0:
            raise ValueError("radicand must be positive")
        if b:
            r = rational_sqrt(s)
            if r is not None:
                a, b = a + b * r, mpq(0)
        self.a, self.b, self.s = a, b, s

    @classmethod
    def sqrt(cls, s):
        return cls(0, 1, s)

    def rebase(self, s):
        """Same number written over the radicand ``s``."""
        s = mpq(s)
        if not self.b or s == self.s:
            return QuadExtScalar(self.a, self.b, s)
        r = rational_sqrt(self.s / s)
        if r is None:
            raise ValueError(f"sqrt({self.s}) is not a rational multiple of sqrt({s})")
        return QuadExtScalar(self.a, self.b * r, s)

    def is_rational(self):
        return not self.b

    def to_rational(self):
        if self.b:
            raise ValueError(f"{self} is irrational")
        return self.a

    # alignment ---------------------------------------------------------
    def _pair(self, other):
        if isinstance(other, QuadExtScalar):
            if not other.b:
                return self.a, self.b, other.a, mpq(0), self.s
            if not self.b:
                return self.a, mpq(0), other.a, other.b, other.s
            if other.s != self.s:
                other = other.rebase(self.s)
            return self.a, self.b, other.a, other.b, self.s
        if is_rational(other):
            return self.a, self.b, mpq(other), mpq(0), self.s
        return None

    def __add__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b, c, e, s = p
        return QuadExtScalar(a + c, b + e, s)

    __radd__ = __add__

    def __neg__(self):
        return QuadExtScalar(-self.a, -self.b, self.s)

    def __sub__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b, c, e, s = p
        return QuadExtScalar(a - c, b - e, s)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b, c, e, s = p
        return QuadExtScalar(a * c + b * e * s, a * e + b * c, s)

    __rmul__ = __mul__

    def inverse(self):
        n = self.a * self.a - self.b * self.b * self.s
        if not n:
            raise ZeroDivisionError("division by zero in Q(sqrt(s))")
        return QuadExtScalar(self.a / n, -self.b / n, self.s)

    def __truediv__(self, other):
        if isinstance(other, QuadExtScalar):
            return self * other.inverse()
        if is_rational(other):
            return QuadExtScalar(self.a / mpq(other), self.b / mpq(other), self.s)
        return NotImplemented

    def __rtruediv__(self, other):
        if is_rational(other):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = QuadExtScalar(1, 0, self.s)
        for _ in range(n):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def sign(self):
        a, b = self.a, self.b
        if not b:
            return (a > 0) - (a < 0)
        if not a or (a > 0) == (b > 0):
            return 1 if b > 0 else -1
        # opposite signs: the larger magnitude wins
        if a * a > b * b * self.s:
            return 1 if a > 0 else -1
        return 1 if b > 0 else -1

    def __eq__(self, other):
        if isinstance(other, QuadExtScalar):
            if not self.b and not other.b:
                return self.a == other.a
            if self.s == other.s:
                return self.a == other.a and self.b == other.b
            if self.b and other.b and rational_sqrt(self.s * other.s) is not None:
                o = other.rebase(self.s)
                return self.a == o.a and self.b == o.b
            # 1, sqrt(s1), sqrt(s2) are independent over Q here
            return False
        if is_rational(other):
            return not self.b and self.a == other
        return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    __hash__ = None

    def _cmp(self, other):
        if isinstance(other, QuadExtScalar) or is_rational(other):
            return (self - other).sign()
        return NotImplemented

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(float(self.s))

    def __repr__(self):
        if not self.b:
            return f"QuadExtScalar({qstr(self.a)})"
        return f"QuadExtScalar({qstr(self.a)} + {qstr(self.b)}*sqrt({qstr(self.s)}))"

    def to_json(self):
        return {"a": qstr(self.a), "b": qstr(self.b)}


def promote(x, s):
    """Embed a rational (or an element of a compatible field) into Q(sqrt(s))."""
    if isinstance(x, QuadExtScalar):
        return x.rebase(s)
    return QuadExtScalar(coerce(x), 0, s)
