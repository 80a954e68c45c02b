"""Dense univariate and bivariate polynomials with exact rational coefficients.

Coefficients are stored as ``int`` whenever they are integral and as
:class:`fractions.Fraction` otherwise; mixing the two keeps the common
integer case fast while staying exact.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from numbers import Rational as _RationalABC
from typing import Iterable, Iterator, Mapping

from ..errors import DomainError

Rational = Fraction
Number = "int | Fraction"


def as_rational(x):
    """Return the canonical exact value of ``x`` (int if integral, else Fraction)."""
    if type(x) is int:
        return x
    if type(x) is Fraction:
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return int(x)
    if isinstance(x, str):
        return as_rational(Fraction(x))
    if isinstance(x, _RationalABC):
        return as_rational(Fraction(x.numerator, x.denominator))
    raise TypeError(f"inexact or unsupported coefficient {x!r}")


def _canon(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _trim(c: list) -> tuple:
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(_canon(x) for x in c[:n])


def _mul_lists(a: tuple, b: tuple) -> list:
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for j, bj in enumerate(b):
        if bj:
            for i, ai in enumerate(a):
                out[i + j] += ai * bj
    return out


class UniPoly:
    """Immutable polynomial in one variable, lowest degree first."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "t"):
        self.coeffs = _trim([as_rational(x) for x in coeffs])
        self.var = var

    @classmethod
    def _raw(cls, coeffs: list, var: str) -> "UniPoly":
        p = cls.__new__(cls)
        p.coeffs = _trim(coeffs)
        p.var = var
        return p

    @classmethod
    def constant(cls, c, var: str = "t") -> "UniPoly":
        return cls((c,), var)

    @classmethod
    def monomial(cls, k: int, c=1, var: str = "t") -> "UniPoly":
        return cls([0] * k + [c], var)

    @classmethod
    def gen(cls, var: str = "t") -> "UniPoly":
        return cls((0, 1), var)

    # -- basic queries -------------------------------------------------
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def valuation(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return -1

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs and (self.var == other.var or len(self.coeffs) <= 1)
        try:
            c = as_rational(other)
        except TypeError:
            return NotImplemented
        return self.coeffs == ((c,) if c else ())

    def __hash__(self) -> int:
        if len(self.coeffs) <= 1:
            return hash(self.coeffs)
        return hash((self.var, self.coeffs))

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            if other.var != self.var and other.degree() > 0 and self.degree() > 0:
                raise DomainError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        return UniPoly((as_rational(other),), self.var)

    def _var_with(self, other: "UniPoly") -> str:
        return self.var if self.degree() > 0 or other.degree() <= 0 else other.var

    def __add__(self, other):
        if not isinstance(other, (UniPoly, int, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly._raw(out, self._var_with(o))

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly._raw([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        if not isinstance(other, (UniPoly, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, UniPoly):
            o = self._coerce(other)
            return UniPoly._raw(_mul_lists(self.coeffs, o.coeffs), self._var_with(o))
        if isinstance(other, (int, Fraction)):
            c = as_rational(other)
            if not c:
                return UniPoly((), self.var)
            return UniPoly._raw([x * c for x in self.coeffs], self.var)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        if n < 0:
            raise DomainError("negative power of a polynomial")
        result = UniPoly((1,), self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __divmod__(self, other) -> tuple["UniPoly", "UniPoly"]:
        """Euclidean division over the rationals."""
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = o.degree()
        inv = Fraction(1) / o.lc() if o.lc() not in (1, -1) else o.lc()
        q = [0] * max(len(r) - db, 0)
        b = o.coeffs
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db]
            if c:
                c = _canon(c * inv)
                q[k] = c
                for i in range(db + 1):
                    r[k + i] -= c * b[i]
        return UniPoly._raw(q, self.var), UniPoly._raw(r[:db] if db > 0 else [], self.var)

    def __floordiv__(self, other) -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "UniPoly":
        return divmod(self, other)[1]

    def exact_div(self, other) -> "UniPoly":
        q, r = divmod(self, other)
        if r:
            raise DomainError(f"inexact polynomial division: {self} / {other}")
        return q

    # -- calculus and transforms ----------------------------------------
    def deriv(self) -> "UniPoly":
        return UniPoly._raw([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def __call__(self, x):
        """Horner evaluation; ``x`` may be a number, polynomial or series."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_float(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def compose(self, inner: "UniPoly") -> "UniPoly":
        acc = UniPoly((), inner.var)
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def reverse(self, n: int | None = None) -> "UniPoly":
        """x^n p(1/x); ``n`` defaults to the degree."""
        if n is None:
            n = self.degree()
        if n < self.degree():
            raise DomainError("reversal degree below polynomial degree")
        c = list(self.coeffs) + [0] * (n + 1 - len(self.coeffs))
        return UniPoly._raw(c[::-1], self.var)

    def scale_arg(self, a) -> "UniPoly":
        """p(a*x)."""
        a = as_rational(a)
        out, pw = [], 1
        for c in self.coeffs:
            out.append(c * pw)
            pw *= a
        return UniPoly._raw(out, self.var)

    def taylor_shift(self, a) -> "UniPoly":
        """p(x + a), by repeated synthetic division."""
        c = list(self.coeffs)
        n = len(c)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                c[j] += a * c[j + 1]
        return UniPoly._raw(c, self.var)

    def with_var(self, var: str) -> "UniPoly":
        return UniPoly._raw(list(self.coeffs), var)

    def truncate(self, n: int) -> "UniPoly":
        """Drop terms of degree >= n."""
        return UniPoly._raw(list(self.coeffs[:n]), self.var)

    # -- normalizations ------------------------------------------------
    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self * (Fraction(1) / self.lc())

    def denominator_lcm(self) -> int:
        d = 1
        for c in self.coeffs:
            if type(c) is Fraction:
                d = lcm(d, c.denominator)
        return d

    def content(self) -> Fraction:
        """Positive rational c with self/c a primitive integer polynomial."""
        if self.is_zero():
            return Fraction(0)
        if self.is_integral():
            g = 0
            for c in self.coeffs:
                g = gcd(g, c)
                if g == 1:
                    break
            return Fraction(g)
        d = self.denominator_lcm()
        g = 0
        for c in self.coeffs:
            g = gcd(g, int(c * d))
        return Fraction(g, d)

    def primitive(self) -> "UniPoly":
        """Integer polynomial with unit content and positive leading coefficient."""
        if self.is_zero():
            return self
        c = self.content()
        if self.lc() < 0:
            c = -c
        if c.denominator == 1 and self.is_integral():
            k = c.numerator
            if k == 1:
                return self
            return UniPoly._raw([x // k for x in self.coeffs], self.var)
        return UniPoly._raw([x / c for x in self.coeffs], self.var)

    def is_integral(self) -> bool:
        return all(type(c) is int for c in self.coeffs)

    def gcd(self, other: "UniPoly") -> "UniPoly":
        """Monic gcd over the rationals (zero if both are zero)."""
        a, b = self, self._coerce(other)
        if a.degree() < b.degree():
            a, b = b, a
        if b.is_zero():
            return a.monic()
        # primitive remainders keep integer sizes in check
        a, b = a.primitive(), b.primitive()
        while b:
            r = _prem(a, b)
            a, b = b, (r.primitive() if r else r)
        return a.monic()

    def squarefree(self) -> "UniPoly":
        """Squarefree part (product of distinct irreducible factors), primitive."""
        if self.degree() <= 0:
            return self.primitive() if self else self
        g = self.gcd(self.deriv())
        return self.exact_div(g).primitive()

    # -- printing ------------------------------------------------------
    def __repr__(self) -> str:
        return f"UniPoly({str(self)!r}, var={self.var!r})"

    def __str__(self) -> str:
        return format_terms(((c, ((self.var, i),)) for i, c in enumerate(self.coeffs)), reverse=True)


_MODP = (1 << 61) - 1


def _reduce_modp(a: UniPoly) -> list | None:
    """Coefficients mod p (lowest first); None if a denominator or the leading coefficient vanishes."""
    out = []
    for c in a.coeffs:
        if type(c) is Fraction:
            d = c.denominator % _MODP
            if not d:
                return None
            out.append(c.numerator * pow(d, _MODP - 2, _MODP) % _MODP)
        else:
            out.append(c % _MODP)
    if not out or not out[-1]:
        return None
    return out


def _gcd_modp(a: list, b: list) -> list:
    p = _MODP
    while b:
        inv = pow(b[-1], p - 2, p)
        a = list(a)
        db = len(b) - 1
        while len(a) - 1 >= db and a:
            f = a[-1] * inv % p
            k = len(a) - 1 - db
            for i in range(db):
                a[k + i] = (a[k + i] - f * b[i]) % p
            a.pop()
            while a and not a[-1]:
                a.pop()
        a, b = b, a
    return a


def _coprime_modp(polys: list) -> bool:
    """True when the polynomials are certainly coprime over Q (a sufficient test mod a large prime).

    Reduction keeps leading coefficients, so the gcd mod p has degree at
    least that of the rational gcd.
    """
    if len(polys) < 2:
        return bool(polys) and polys[0].degree() == 0
    polys = sorted(polys, key=lambda q: q.degree())
    if polys[0].degree() == 0:
        return True
    g = None
    for q in polys:
        r = _reduce_modp(q)
        if r is None:
            return False
        g = r if g is None else _gcd_modp(g, r)
        if len(g) == 1:
            return True
    return False


def _prem(a: UniPoly, b: UniPoly) -> UniPoly:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b, division free."""
    r = list(a.coeffs)
    db = b.degree()
    lb = b.lc()
    bc = b.coeffs
    delta = len(r) - 1 - db
    if delta < 0:
        return a
    e = delta + 1
    while len(r) - 1 >= db and r:
        c = r[-1]
        k = len(r) - 1 - db
        r = [x * lb for x in r]
        for i in range(db + 1):
            r[k + i] -= c * bc[i]
        r.pop()
        while r and not r[-1]:
            r.pop()
        e -= 1
    if e:
        f = lb ** e
        r = [x * f for x in r]
    return UniPoly._raw(r, a.var)


def format_terms(terms, reverse: bool = False) -> str:
    """Render ((coeff, ((var, exp), ...)), ...) as a polynomial string."""
    items = [(c, mon) for c, mon in terms if c]
    if reverse:
        items = items[::-1]
    if not items:
        return "0"
    parts = []
    for c, mon in items:
        factors = [v if e == 1 else f"{v}^{e}" for v, e in mon if e]
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if factors:
            body = "*".join(factors)
            if a != 1:
                body = f"{_fmt_num(a)}*{body}"
        else:
            body = _fmt_num(a)
        parts.append((sign, body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def _fmt_num(a) -> str:
    if type(a) is Fraction:
        return f"({a.numerator}/{a.denominator})"
    return str(a)


class BivariatePoly:
    """Immutable polynomial in (t, z) stored as a polynomial in z over Q[t].

    ``zcoeffs[j]`` is the coefficient of z^j, a :class:`UniPoly` in t.
    """

    __slots__ = ("zcoeffs", "tvar", "zvar")

    def __init__(self, zcoeffs: Iterable = (), tvar: str = "t", zvar: str = "z"):
        cs = [c.with_var(tvar) if isinstance(c, UniPoly) else UniPoly((c,), tvar) for c in zcoeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.zcoeffs = tuple(cs)
        self.tvar = tvar
        self.zvar = zvar

    @classmethod
    def _raw(cls, cs: list, tvar: str = "t", zvar: str = "z") -> "BivariatePoly":
        p = cls.__new__(cls)
        while cs and cs[-1].is_zero():
            cs.pop()
        p.zcoeffs = tuple(cs)
        p.tvar = tvar
        p.zvar = zvar
        return p

    @classmethod
    def from_dict(cls, terms: Mapping[tuple[int, int], object], tvar: str = "t", zvar: str = "z") -> "BivariatePoly":
        """Build from {(i, j): c} meaning c * t^i * z^j."""
        if not terms:
            return cls((), tvar, zvar)
        dz = max(j for (_, j) in terms)
        dt = max(i for (i, _) in terms)
        grid = [[0] * (dt + 1) for _ in range(dz + 1)]
        for (i, j), c in terms.items():
            if i < 0 or j < 0:
                raise DomainError("negative exponent in polynomial term")
            grid[j][i] += as_rational(c)
        return cls._raw([UniPoly(row, tvar) for row in grid], tvar, zvar)

    @classmethod
    def from_z_poly(cls, p: UniPoly, tvar: str = "t", zvar: str = "z") -> "BivariatePoly":
        """Constant-in-t polynomial from a univariate polynomial in z."""
        return cls._raw([UniPoly((c,), tvar) for c in p.coeffs], tvar, zvar)

    @classmethod
    def from_t_poly(cls, p: UniPoly, tvar: str = "t", zvar: str = "z") -> "BivariatePoly":
        return cls._raw([p.with_var(tvar)], tvar, zvar)

    @classmethod
    def t(cls) -> "BivariatePoly":
        return cls._raw([UniPoly((0, 1))])

    @classmethod
    def z(cls) -> "BivariatePoly":
        return cls._raw([UniPoly(()), UniPoly((1,))])

    @classmethod
    def constant(cls, c) -> "BivariatePoly":
        return cls._raw([UniPoly((c,))])

    # -- queries -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.zcoeffs

    def __bool__(self) -> bool:
        return bool(self.zcoeffs)

    def deg_z(self) -> int:
        return len(self.zcoeffs) - 1

    def deg_t(self) -> int:
        return max((c.degree() for c in self.zcoeffs), default=-1)

    def coeff(self, i: int, j: int):
        if 0 <= j < len(self.zcoeffs):
            return self.zcoeffs[j][i]
        return 0

    def zcoeff(self, j: int) -> UniPoly:
        if 0 <= j < len(self.zcoeffs):
            return self.zcoeffs[j]
        return UniPoly((), self.tvar)

    def lc_z(self) -> UniPoly:
        return self.zcoeffs[-1] if self.zcoeffs else UniPoly((), self.tvar)

    def terms(self) -> dict[tuple[int, int], object]:
        return {(i, j): c for j, p in enumerate(self.zcoeffs) for i, c in enumerate(p.coeffs) if c}

    def __iter__(self) -> Iterator[tuple[int, int, object]]:
        for (i, j), c in sorted(self.terms().items()):
            yield i, j, c

    def __eq__(self, other) -> bool:
        if isinstance(other, BivariatePoly):
            return [c.coeffs for c in self.zcoeffs] == [c.coeffs for c in other.zcoeffs]
        try:
            return self == BivariatePoly.constant(as_rational(other))
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(c.coeffs for c in self.zcoeffs))

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other) -> "BivariatePoly":
        if isinstance(other, BivariatePoly):
            return other
        if isinstance(other, UniPoly):
            if other.var == self.zvar and other.degree() > 0:
                return BivariatePoly.from_z_poly(other, self.tvar, self.zvar)
            return BivariatePoly._raw([other.with_var(self.tvar)], self.tvar, self.zvar)
        return BivariatePoly._raw([UniPoly((as_rational(other),), self.tvar)], self.tvar, self.zvar)

    def __add__(self, other):
        if not isinstance(other, (BivariatePoly, UniPoly, int, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        a, b = self.zcoeffs, o.zcoeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for j, c in enumerate(b):
            out[j] = out[j] + c
        return BivariatePoly._raw(out, self.tvar, self.zvar)

    __radd__ = __add__

    def __neg__(self) -> "BivariatePoly":
        return BivariatePoly._raw([-c for c in self.zcoeffs], self.tvar, self.zvar)

    def __sub__(self, other):
        if not isinstance(other, (BivariatePoly, UniPoly, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = as_rational(other)
            return BivariatePoly._raw([p * c for p in self.zcoeffs] if c else [], self.tvar, self.zvar)
        if not isinstance(other, (BivariatePoly, UniPoly)):
            return NotImplemented
        o = self._coerce(other)
        a, b = self.zcoeffs, o.zcoeffs
        if not a or not b:
            return BivariatePoly._raw([], self.tvar, self.zvar)
        out = [UniPoly((), self.tvar)] * (len(a) + len(b) - 1)
        for j, bj in enumerate(b):
            if bj:
                for i, ai in enumerate(a):
                    if ai:
                        out[i + j] = out[i + j] + ai * bj
        return BivariatePoly._raw(out, self.tvar, self.zvar)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BivariatePoly":
        if n < 0:
            raise DomainError("negative power of a polynomial")
        result = BivariatePoly._raw([UniPoly((1,), self.tvar)], self.tvar, self.zvar)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale_t_coeffs(self, f: UniPoly) -> "BivariatePoly":
        return BivariatePoly._raw([c * f for c in self.zcoeffs], self.tvar, self.zvar)

    def div_t_coeffs(self, f) -> "BivariatePoly":
        """Exact division of every z-coefficient by a polynomial (or number) in t."""
        if isinstance(f, UniPoly):
            return BivariatePoly._raw([c.exact_div(f) for c in self.zcoeffs], self.tvar, self.zvar)
        inv = Fraction(1) / as_rational(f)
        return BivariatePoly._raw([c * inv for c in self.zcoeffs], self.tvar, self.zvar)

    # -- calculus and substitution --------------------------------------
    def diff_z(self) -> "BivariatePoly":
        return BivariatePoly._raw([c * j for j, c in enumerate(self.zcoeffs)][1:], self.tvar, self.zvar)

    def diff_t(self) -> "BivariatePoly":
        return BivariatePoly._raw([c.deriv() for c in self.zcoeffs], self.tvar, self.zvar)

    def eval_t(self, t0) -> UniPoly:
        """Specialize t := t0 and return a polynomial in z."""
        return UniPoly([c(t0) for c in self.zcoeffs], self.zvar)

    def eval_z(self, z0) -> UniPoly:
        """Specialize z := z0 (a number) and return a polynomial in t."""
        acc = UniPoly((), self.tvar)
        for c in reversed(self.zcoeffs):
            acc = acc * z0 + c
        return acc

    def __call__(self, t0, z0):
        """Evaluate at a point; the arguments may be numbers or floats."""
        acc = 0
        for c in reversed(self.zcoeffs):
            acc = acc * z0 + c(t0)
        return acc

    def eval_float(self, t0: float, z0: complex) -> complex:
        acc = 0.0
        for c in reversed(self.zcoeffs):
            acc = acc * z0 + c.eval_float(t0)
        return acc

    def subs_z(self, value: "BivariatePoly") -> "BivariatePoly":
        """Substitute z := value (a bivariate polynomial)."""
        acc = BivariatePoly._raw([], self.tvar, self.zvar)
        for c in reversed(self.zcoeffs):
            acc = acc * value + BivariatePoly._raw([c], self.tvar, self.zvar)
        return acc

    def swap(self) -> "BivariatePoly":
        """Exchange the roles of t and z."""
        return BivariatePoly.from_dict({(j, i): c for (i, j), c in self.terms().items()}, self.zvar, self.tvar)

    def renamed(self, tvar: str = "t", zvar: str = "z") -> "BivariatePoly":
        return BivariatePoly._raw([c.with_var(tvar) for c in self.zcoeffs], tvar, zvar)

    # -- normalization ---------------------------------------------------
    def denominator_lcm(self) -> int:
        d = 1
        for c in self.zcoeffs:
            d = lcm(d, c.denominator_lcm())
        return d

    def leading_term_lex(self) -> tuple[int, int, object]:
        """Leading term in lexicographic order with t before z."""
        best = None
        for (i, j), c in self.terms().items():
            if best is None or (i, j) > best[:2]:
                best = (i, j, c)
        if best is None:
            raise DomainError("zero polynomial has no leading term")
        return best

    def normalize(self) -> "BivariatePoly":
        """Content-free integer form with positive lex-leading coefficient."""
        if self.is_zero():
            return self
        d = self.denominator_lcm()
        g = 0
        for c in self.zcoeffs:
            for x in c.coeffs:
                g = gcd(g, int(x * d))
        scale = Fraction(d, g)
        if self.leading_term_lex()[2] < 0:
            scale = -scale
        return self * scale

    def content_t(self) -> UniPoly:
        """Monic gcd in Q[t] of all z-coefficients."""
        if _coprime_modp([c for c in self.zcoeffs if c]):
            return UniPoly((1,), self.tvar)
        g = UniPoly((), self.tvar)
        for c in self.zcoeffs:
            g = g.gcd(c) if g else c.monic()
            if g.degree() == 0:
                break
        return g

    def primitive_z(self) -> "BivariatePoly":
        """Remove the t-content (factors free of z), then normalize."""
        if self.is_zero():
            return self
        g = self.content_t()
        p = self if g.degree() <= 0 else self.div_t_coeffs(g)
        return p.normalize()

    def is_integral(self) -> bool:
        return all(c.is_integral() for c in self.zcoeffs)

    def to_json(self) -> dict:
        """Terms as [i, j, "c"] for c t^i z^j, with exact rational coefficients as strings."""
        terms = [[i, j, str(c)] for (i, j), c in sorted(self.terms().items())]
        return {"tvar": self.tvar, "zvar": self.zvar, "terms": terms}

    @classmethod
    def from_json(cls, obj: dict) -> "BivariatePoly":
        try:
            terms = {(int(i), int(j)): Fraction(c) for i, j, c in obj["terms"]}
        except (KeyError, TypeError, ValueError) as e:
            raise DomainError(f"malformed polynomial JSON ({e})") from None
        return cls.from_dict(terms, obj.get("tvar", "t"), obj.get("zvar", "z"))

    def __repr__(self) -> str:
        return f"BivariatePoly({str(self)!r})"

    def __str__(self) -> str:
        items = sorted(self.terms().items(), key=lambda kv: (kv[0][1], kv[0][0]), reverse=True)
        return format_terms((c, ((self.tvar, i), (self.zvar, j))) for (i, j), c in items)
