"""Rational functions in one variable and matrices over them."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..errors import DomainError
from .poly import UniPoly, as_rational


class RatFunc:
    """Reduced fraction num/den of polynomials with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, var: str | None = None):
        if not isinstance(num, UniPoly):
            num = UniPoly((as_rational(num),), var or "t")
        var = num.var if var is None else var
        if den is None:
            den = UniPoly((1,), var)
        elif not isinstance(den, UniPoly):
            den = UniPoly((as_rational(den),), var)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = UniPoly((), var), UniPoly((1,), var)
        elif den.degree() > 0:
            g = num.gcd(den)
            if g.degree() > 0:
                num, den = num.exact_div(g), den.exact_div(g)
        c = den.lc()
        if c != 1:
            inv = Fraction(1) / c
            num, den = num * inv, den * inv
        self.num = num.with_var(var)
        self.den = den.with_var(var)

    @classmethod
    def _raw(cls, num: UniPoly, den: UniPoly) -> "RatFunc":
        r = cls.__new__(cls)
        r.num, r.den = num, den
        return r

    @property
    def var(self) -> str:
        return self.num.var

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.degree() == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (UniPoly, int, Fraction)):
            return self == RatFunc(other, var=self.var)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, UniPoly):
            return RatFunc._raw(other.with_var(self.var), UniPoly((1,), self.var))
        return RatFunc._raw(UniPoly((as_rational(other),), self.var), UniPoly((1,), self.var))

    def __add__(self, other):
        if not isinstance(other, (RatFunc, UniPoly, int, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, (RatFunc, UniPoly, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, (RatFunc, UniPoly, int, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        if not isinstance(other, (RatFunc, UniPoly, int, Fraction)):
            return NotImplemented
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc._raw(self.num ** n, self.den ** n)

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def __repr__(self) -> str:
        return f"RatFunc({self})"

    def __str__(self) -> str:
        if self.is_poly():
            return str(self.num)
        return f"({self.num})/({self.den})"


class RatFuncMatrix:
    """Square matrix with :class:`RatFunc` entries."""

    def __init__(self, rows: Sequence[Sequence], var: str = "t"):
        n = len(rows)
        if n < 1:
            raise DomainError("matrix dimension must be at least 1")
        if any(len(r) != n for r in rows):
            raise DomainError("matrix is not square")
        self.var = var
        self.rows = tuple(tuple(e if isinstance(e, RatFunc) else RatFunc(e, var=var) for e in r) for r in rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: "RatFuncMatrix") -> "RatFuncMatrix":
        n = self.dim
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = RatFunc(0, var=self.var)
                for k in range(n):
                    a, b = self.rows[i][k], other.rows[k][j]
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return RatFuncMatrix(out, self.var)

    def __add__(self, other: "RatFuncMatrix") -> "RatFuncMatrix":
        return RatFuncMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.var)

    def scale(self, c) -> "RatFuncMatrix":
        return RatFuncMatrix([[a * c for a in r] for r in self.rows], self.var)

    @classmethod
    def identity(cls, n: int, var: str = "t") -> "RatFuncMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], var)

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self.rows for e in r)

    def common_denominator(self) -> UniPoly:
        d = UniPoly((1,), self.var)
        for r in self.rows:
            for e in r:
                if e.den.degree() > 0:
                    d = d * e.den.exact_div(d.gcd(e.den))
        return d

    def eval_poly(self, coeffs: Sequence[RatFunc]) -> "RatFuncMatrix":
        """Evaluate sum coeffs[k] * M^k (Horner)."""
        n = self.dim
        acc = RatFuncMatrix.identity(n, self.var).scale(coeffs[-1])
        for c in reversed(coeffs[:-1]):
            acc = (acc @ self) + RatFuncMatrix.identity(n, self.var).scale(c)
        return acc


def berkowitz(a: Sequence[Sequence]) -> list:
    """Division-free characteristic polynomial det(x I - a), lowest degree first.

    Entries may be any commutative ring elements supporting +, -, * with ints
    (ints, polynomials). Runs in O(n^4) ring operations.
    """
    n = len(a)
    if n == 0:
        return [1]
    zero = a[0][0] - a[0][0]
    one = zero + 1
    # highest degree first during the sweep
    p = [one, -a[0][0]]
    for r in range(1, n):
        col = [a[i][r] for i in range(r)]
        row = a[r][:r]
        toep = [one, -a[r][r]]
        v = col
        for _ in range(r):
            s = zero
            for x, y in zip(row, v):
                if x and y:
                    s = s + x * y
            toep.append(-s)
            v = [_dot(a[i][:r], v, zero) for i in range(r)]
        newp = []
        for i in range(r + 2):
            s = zero
            for j in range(max(0, i - r - 1), min(i, r) + 1):
                tj = toep[i - j]
                if tj and p[j]:
                    s = s + tj * p[j]
            newp.append(s)
        p = newp
    return p[::-1]


def _dot(xs, ys, zero):
    s = zero
    for x, y in zip(xs, ys):
        if x and y:
            s = s + x * y
    return s


def charpoly(m: RatFuncMatrix) -> list[RatFunc]:
    """Coefficients (lowest first) of the monic det(x I - m) over Q(var).

    Denominators are cleared to D(var), Berkowitz runs on the polynomial
    matrix D*m, and the k-th coefficient is divided back by D^(n-k).
    """
    n = m.dim
    d = m.common_denominator()
    poly_rows = [[(e.num * d.exact_div(e.den)) for e in r] for r in m.rows]
    cs = berkowitz(poly_rows)
    out = []
    dpow = UniPoly((1,), m.var)
    scaled = [None] * (n + 1)
    for k in range(n, -1, -1):
        c = cs[k] if isinstance(cs[k], UniPoly) else UniPoly((cs[k],), m.var)
        scaled[k] = RatFunc(c, dpow)
        dpow = dpow * d
    out = scaled
    return out
