"""Resultants, discriminants and gcds via pseudo-remainder sequences.

Polynomials in the main variable are handled as coefficient lists (lowest
degree first) over an integral domain: plain numbers, or :class:`UniPoly`
for bivariate input.
"""
from __future__ import annotations

from fractions import Fraction

from ..errors import DomainError
from .poly import BivariatePoly, UniPoly, _canon


def _exdiv(a, b):
    if isinstance(a, UniPoly):
        return a.exact_div(b)
    if isinstance(b, UniPoly):
        return UniPoly((a,), b.var).exact_div(b)
    return _canon(Fraction(a) / b)


def _pow(a, n: int):
    return a ** n


def _strip(c: list) -> list:
    while c and not c[-1]:
        c.pop()
    return c


def pdivmod_list(a: list, b: list) -> tuple[list, list, int]:
    """Pseudo-division: lc(b)^e * a = q*b + r with e = deg a - deg b + 1."""
    r = _strip(list(a))
    db = len(b) - 1
    if db < 0:
        raise ZeroDivisionError("pseudo-division by zero polynomial")
    lb = b[-1]
    e = len(r) - db
    if e <= 0:
        return [], r, 0
    q = [0] * e
    steps = e
    while r and len(r) - 1 >= db:
        k = len(r) - 1 - db
        c = r[-1]
        r = [x * lb for x in r]
        q = [x * lb for x in q]
        q[k] = q[k] + c
        for i in range(db + 1):
            r[k + i] = r[k + i] - c * b[i]
        r.pop()
        _strip(r)
        steps -= 1
    if steps:
        f = lb ** steps
        r = [x * f for x in r]
        q = [x * f for x in q]
    return _strip(q), r, e


def prem_list(a: list, b: list) -> list:
    return pdivmod_list(a, b)[1]


def resultant_list(a: list, b: list):
    """Resultant of two polynomials given as coefficient lists.

    Subresultant PRS (Collins/Brown); all divisions are exact in the
    coefficient domain.
    """
    a, b = _strip(list(a)), _strip(list(b))
    if not a or not b:
        raise DomainError("resultant of a zero polynomial")
    s = 1
    if len(a) < len(b):
        a, b = b, a
        if (len(a) - 1) % 2 and (len(b) - 1) % 2:
            s = -s
    if len(b) == 1:
        return s * _pow(b[0], len(a) - 1)
    g = h = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        r = prem_list(a, b)
        a = b
        if not r:
            return 0 * b[0]
        div = g * _pow(h, delta)
        b = [_exdiv(x, div) for x in r]
        g = a[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = _exdiv(_pow(g, delta), _pow(h, delta - 1))
        if len(b) == 1:
            break
    da = len(a) - 1
    h = _exdiv(_pow(b[0], da), _pow(h, da - 1)) if da > 1 else _pow(b[0], da)
    return s * h


def resultant(p: BivariatePoly, q: BivariatePoly, eliminate: str = "z") -> UniPoly:
    """Res of p and q with respect to ``eliminate`` ("z" or "t"), a polynomial in the other variable."""
    if p.is_zero() or q.is_zero():
        raise DomainError("resultant of a zero polynomial")
    if eliminate == p.tvar or eliminate == "t":
        p, q = p.swap(), q.swap()
    elif eliminate not in (p.zvar, "z"):
        raise DomainError(f"unknown variable {eliminate!r}")
    r = resultant_list(list(p.zcoeffs), list(q.zcoeffs))
    if not isinstance(r, UniPoly):
        r = UniPoly((r,), p.tvar)
    return r.with_var(p.tvar)


def resultant_uni(a: UniPoly, b: UniPoly):
    """Resultant of two univariate polynomials (a rational number)."""
    return resultant_list(list(a.coeffs), list(b.coeffs))


def discriminant(p: BivariatePoly) -> UniPoly:
    """z-discriminant (-1)^(n(n-1)/2) Res_z(p, dp/dz) / lc_z(p)."""
    n = p.deg_z()
    if n < 1:
        raise DomainError("discriminant needs positive z-degree")
    if n == 1:
        return UniPoly((1,), p.tvar)
    r = resultant(p, p.diff_z())
    d = r.exact_div(p.lc_z())
    return -d if (n * (n - 1) // 2) % 2 else d


def discriminant_uni(a: UniPoly):
    n = a.degree()
    if n < 1:
        raise DomainError("discriminant needs positive degree")
    r = _exdiv(resultant_uni(a, a.deriv()), a.lc())
    return -r if (n * (n - 1) // 2) % 2 else r


# -- arithmetic in Q(t)[z] ------------------------------------------------

def _bi(cs: list, like: BivariatePoly) -> BivariatePoly:
    return BivariatePoly._raw(list(cs), like.tvar, like.zvar)


def prem_z(a: BivariatePoly, b: BivariatePoly) -> BivariatePoly:
    return _bi(prem_list(list(a.zcoeffs), list(b.zcoeffs)), a)


def pquo_z(a: BivariatePoly, b: BivariatePoly) -> BivariatePoly:
    q, r, _ = pdivmod_list(list(a.zcoeffs), list(b.zcoeffs))
    if r:
        raise DomainError("polynomial does not divide in Q(t)[z]")
    return _bi(q, a)


def divides_z(g: BivariatePoly, p: BivariatePoly) -> bool:
    """True iff g divides p in Q(t)[z]."""
    if g.is_zero():
        return p.is_zero()
    if g.deg_z() == 0:
        return True
    return prem_z(p, g).is_zero()


def gcd_z(a: BivariatePoly, b: BivariatePoly) -> BivariatePoly:
    """Primitive gcd in Q(t)[z] (factors free of z are discarded)."""
    if a.is_zero():
        return b.primitive_z()
    if b.is_zero():
        return a.primitive_z()
    a, b = a.primitive_z(), b.primitive_z()
    if a.deg_z() < b.deg_z():
        a, b = b, a
    while b and b.deg_z() > 0:
        r = prem_z(a, b)
        a, b = b, (r.primitive_z() if r else r)
    if b.is_zero():
        return a.primitive_z()
    return BivariatePoly.constant(1).renamed(a.tvar, a.zvar)


def squarefree_z(p: BivariatePoly) -> BivariatePoly:
    """Product of the distinct irreducible factors of p that involve z."""
    if p.deg_z() < 1:
        raise DomainError("squarefree part needs positive z-degree")
    g = gcd_z(p, p.diff_z())
    if g.deg_z() == 0:
        return p.primitive_z()
    return pquo_z(p, g).primitive_z()
