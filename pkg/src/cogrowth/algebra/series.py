"""Truncated power series a_0 + a_1 t + ... + a_N t^N with exact coefficients."""
from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

from ..errors import DomainError
from .poly import UniPoly, _canon, as_rational


def _sqrt_rational(q) -> int | Fraction:
    q = Fraction(q)
    if q < 0:
        raise DomainError(f"no rational square root of {q}")
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    if n * n != q.numerator or d * d != q.denominator:
        raise DomainError(f"constant term {q} is not the square of a rational")
    return _canon(Fraction(n, d))


class TruncatedSeries:
    """Power series known modulo t^(order+1).

    Binary operations truncate to the smaller of the two orders.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable, order: int | None = None):
        c = [as_rational(x) for x in coeffs]
        if order is None:
            order = len(c) - 1
        if order < 0:
            raise DomainError("series order must be non-negative")
        c = c[: order + 1] + [0] * (order + 1 - len(c))
        self.coeffs = tuple(c)
        self.order = order

    @classmethod
    def _raw(cls, coeffs: list, order: int) -> "TruncatedSeries":
        s = cls.__new__(cls)
        s.coeffs = tuple(_canon(x) for x in coeffs)
        s.order = order
        return s

    @classmethod
    def constant(cls, c, order: int) -> "TruncatedSeries":
        return cls([c], order)

    @classmethod
    def gen(cls, order: int) -> "TruncatedSeries":
        """The series t."""
        return cls([0, 1], order)

    @classmethod
    def from_poly(cls, p: UniPoly, order: int) -> "TruncatedSeries":
        return cls(p.coeffs[: order + 1], order)

    @classmethod
    def from_rational(cls, num: UniPoly, den: UniPoly, order: int) -> "TruncatedSeries":
        return cls.from_poly(num, order) / cls.from_poly(den, order)

    # -- queries -------------------------------------------------------
    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self) -> int:
        return self.order + 1

    def __iter__(self):
        return iter(self.coeffs)

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, None if all vanish."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, TruncatedSeries):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def agrees_with(self, other: "TruncatedSeries | Sequence") -> bool:
        """Coefficientwise equality up to the shared order."""
        o = other.coeffs if isinstance(other, TruncatedSeries) else tuple(other)
        n = min(len(self.coeffs), len(o))
        return list(self.coeffs[:n]) == [as_rational(x) for x in o[:n]]

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise DomainError(f"cannot extend a series known to order {self.order} to {order}")
        return TruncatedSeries._raw(list(self.coeffs[: order + 1]), order)

    def to_poly(self, var: str = "t") -> UniPoly:
        return UniPoly(self.coeffs, var)

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, UniPoly):
            return TruncatedSeries.from_poly(other, self.order)
        return TruncatedSeries([as_rational(other)], self.order)

    def __add__(self, other):
        if not isinstance(other, (TruncatedSeries, UniPoly, int, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        n = min(self.order, o.order)
        a, b = self.coeffs, o.coeffs
        return TruncatedSeries._raw([a[i] + b[i] for i in range(n + 1)], n)

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries._raw([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        if not isinstance(other, (TruncatedSeries, UniPoly, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = as_rational(other)
            return TruncatedSeries._raw([x * c for x in self.coeffs], self.order)
        if not isinstance(other, (TruncatedSeries, UniPoly)):
            return NotImplemented
        o = self._coerce(other)
        n = min(self.order, o.order)
        a, b = self.coeffs, o.coeffs
        out = [0] * (n + 1)
        # skip leading zeros of the sparser factor
        va = next((i for i in range(n + 1) if a[i]), n + 1)
        vb = next((i for i in range(n + 1) if b[i]), n + 1)
        for i in range(va, n + 1):
            ai = a[i]
            if ai:
                for j in range(vb, n + 1 - i):
                    out[i + j] += ai * b[j]
        return TruncatedSeries._raw(out, n)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "TruncatedSeries":
        if k < 0:
            return self.inverse() ** (-k)
        result = TruncatedSeries([1], self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; requires an invertible constant term."""
        a = self.coeffs
        if not a[0]:
            raise DomainError("series with zero constant term is not invertible")
        n = self.order
        inv0 = Fraction(1) / a[0] if a[0] not in (1, -1) else a[0]
        b = [_canon(inv0)] + [0] * n
        for k in range(1, n + 1):
            s = 0
            for i in range(1, k + 1):
                if a[i]:
                    s += a[i] * b[k - i]
            b[k] = _canon(-s * inv0)
        return TruncatedSeries._raw(b, n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / as_rational(other))
        if not isinstance(other, (TruncatedSeries, UniPoly)):
            return NotImplemented
        o = self._coerce(other)
        n = min(self.order, o.order)
        return self.truncate(n) * o.truncate(n).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def sqrt(self) -> "TruncatedSeries":
        """Square root with the positive rational square root of the constant term."""
        a = self.coeffs
        if not a[0]:
            raise DomainError("square root of a series with zero constant term is not supported")
        n = self.order
        b0 = _sqrt_rational(a[0])
        b = [b0] + [0] * n
        inv2b0 = Fraction(1, 2) / b0
        for k in range(1, n + 1):
            s = a[k]
            for i in range(1, k):
                s -= b[i] * b[k - i]
            b[k] = _canon(s * inv2b0)
        return TruncatedSeries._raw(b, n)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by t^k (k >= 0), keeping the order."""
        if k < 0:
            raise DomainError("negative shift")
        return TruncatedSeries._raw(([0] * k + list(self.coeffs))[: self.order + 1], self.order)

    def scale_arg(self, c) -> "TruncatedSeries":
        """f(c*t)."""
        c = as_rational(c)
        out, pw = [], 1
        for x in self.coeffs:
            out.append(x * pw)
            pw *= c
        return TruncatedSeries._raw(out, self.order)

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """f(inner(t)) for inner with zero constant term."""
        if inner.coeffs[0]:
            raise DomainError("composition requires an inner series without constant term")
        n = min(self.order, inner.order)
        acc = TruncatedSeries([0], n)
        inner = inner.truncate(n)
        for c in reversed(self.coeffs[: n + 1]):
            acc = acc * inner + c
        return acc

    def deriv(self) -> "TruncatedSeries":
        if self.order == 0:
            return TruncatedSeries([0], 0)
        return TruncatedSeries._raw([i * c for i, c in enumerate(self.coeffs)][1:], self.order - 1)

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coeffs[:12])
        more = ", ..." if self.order >= 12 else ""
        return f"TruncatedSeries([{head}{more}], order={self.order})"
