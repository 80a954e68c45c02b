"""Power-series roots of bivariate polynomials and algebraic guessing from series data."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

import numpy as np

from .algebra.poly import BivariatePoly, UniPoly
from .algebra.resultant import divides_z
from .algebra.series import TruncatedSeries
from .errors import AmbiguityError, DomainError, InconsistencyError, PreconditionError

GUESS_MARGIN = 10


# -- evaluation --------------------------------------------------------------

def eval_at_series(p: BivariatePoly, y: TruncatedSeries, order: int | None = None) -> TruncatedSeries:
    """p(t, y(t)) truncated to ``order`` (default: y's order)."""
    n = y.order if order is None else order
    if n > y.order:
        y = TruncatedSeries(list(y.coeffs) + [0] * (n - y.order), n)
    y = y.truncate(n)
    acc = TruncatedSeries([0], n)
    for j in range(p.deg_z(), -1, -1):
        acc = acc * y + TruncatedSeries.from_poly(p.zcoeff(j), n)
    return acc


def _pad(y: TruncatedSeries, n: int) -> TruncatedSeries:
    if n <= y.order:
        return y.truncate(n)
    return TruncatedSeries(list(y.coeffs) + [0] * (n - y.order), n)


# -- Hensel lifting --------------------------------------------------------------

def series_root(p: BivariatePoly, prefix: TruncatedSeries | list, N: int) -> TruncatedSeries:
    """The unique root of p extending ``prefix``, modulo t^(N+1).

    With v the valuation of dp/dz at the prefix, the prefix must be longer
    than v and satisfy p = 0 mod t^(len+v).  Newton steps then double the
    number of known coefficients (minus v) each round.
    """
    if p.is_zero() or p.deg_z() < 1:
        raise DomainError("need a polynomial of positive z-degree")
    if not isinstance(prefix, TruncatedSeries):
        prefix = TruncatedSeries(prefix)
    k = prefix.order + 1  # known coefficients
    if N < k - 1:
        return prefix.truncate(N)
    dp = p.diff_z()
    q = eval_at_series(dp, prefix)
    v = q.valuation()
    if v is None:
        raise AmbiguityError(f"dz-derivative vanishes at the prefix through order {prefix.order}; extend the prefix", k)
    r = eval_at_series(p, prefix, k - 1 + v)
    bad = next((i for i, c in enumerate(r.coeffs) if c), None)
    if bad is not None:
        raise InconsistencyError(f"no root extends the prefix: residual at order {bad}")
    y = prefix
    while k < N + 1:
        k2 = min(2 * k - v, N + 1)
        prec = k2 + v - 1
        yy = _pad(y, prec)
        res = eval_at_series(p, yy)
        der = eval_at_series(dp, yy)
        num = TruncatedSeries(res.coeffs[v:], prec - v)
        den = TruncatedSeries(der.coeffs[v:], prec - v)
        corr = (num.truncate(k2 - 1)) / den.truncate(k2 - 1)
        y = _pad(y, k2 - 1) - corr
        k = k2
    return y.truncate(N)


# -- guessing --------------------------------------------------------------

@dataclass
class GuessResult:
    candidate: BivariatePoly | None
    deg_t: int | None
    deg_z: int | None
    order: int
    message: str = ""

    @property
    def found(self) -> bool:
        return self.candidate is not None


def _powers(series: TruncatedSeries, dz: int) -> list:
    n = series.order
    out = [TruncatedSeries([1], n)]
    for _ in range(dz):
        out.append(out[-1] * series)
    return out


def _column(pw: TruncatedSeries, i: int, n: int) -> list:
    c = [0] * i + list(pw.coeffs)
    return c[: n + 1]


def _primes(count: int, below: int = 1 << 31) -> list:
    """The ``count`` largest primes below ``below`` (trial division; they are ~2^31)."""
    out = []
    n = below - 1
    while len(out) < count:
        if n % 2 and all(n % q for q in range(3, isqrt(n) + 1, 2)):
            out.append(n)
        n -= 1
    return out


_PRIMES = _primes(24)


def _matrix_modp(cols: list, p: int):
    """Rows x columns int64 array of the column data reduced mod p; None if a denominator vanishes."""
    m = np.empty((len(cols[0]), len(cols)), dtype=np.int64)
    for j, c in enumerate(cols):
        for r, x in enumerate(c):
            if type(x) is int:
                m[r, j] = x % p
            else:
                x = Fraction(x)
                d = x.denominator % p
                if not d:
                    return None
                m[r, j] = x.numerator % p * pow(d, p - 2, p) % p
    return m


def _rref_modp(m, p: int) -> tuple:
    """Reduced row echelon form mod p (in place) and the pivot columns."""
    rows, ncol = m.shape
    pivots = []
    rank = 0
    for c in range(ncol):
        if rank == rows:
            break
        nz = np.nonzero(m[rank:, c])[0]
        if not len(nz):
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            m[[rank, piv]] = m[[piv, rank]]
        inv = pow(int(m[rank, c]), p - 2, p)
        m[rank] = m[rank] * inv % p
        col = m[:, c].copy()
        col[rank] = 0
        m -= np.outer(col, m[rank]) % p
        m %= p
        pivots.append(c)
        rank += 1
    return m, pivots


def _kernel_modp(cols: list, p: int) -> tuple | None:
    """(kernel basis mod p, free columns), or None for a bad prime."""
    m = _matrix_modp(cols, p)
    if m is None:
        return None
    m, pivots = _rref_modp(m, p)
    free = [c for c in range(len(cols)) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [0] * len(cols)
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = int(-m[r, fc]) % p
        basis.append(v)
    return basis, free


def _rational_reconstruct(a: int, m: int) -> Fraction | None:
    """r/s = a mod m with |r|, s <= sqrt(m/2), if one exists."""
    bound = isqrt(m // 2)
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def _rank_deficient(cols: list) -> bool:
    """True unless the columns are certainly independent over Q.

    Rank mod p never exceeds the rational rank, so full rank mod one good
    prime proves a trivial kernel.
    """
    for p in _PRIMES[:3]:
        got = _kernel_modp(cols, p)
        if got is not None:
            return bool(got[0])
    return True


def _kernel_exact(cols: list) -> list:
    """Basis of the rational nullspace (reduced row echelon form, one vector per free column)."""
    rows = len(cols[0])
    ncol = len(cols)
    m = [[Fraction(cols[c][r]) for c in range(ncol)] for r in range(rows)]
    pivots = []
    rank = 0
    for c in range(ncol):
        piv = next((r for r in range(rank, rows) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][c]
        m[rank] = [x * inv for x in m[rank]]
        pr = m[rank]
        for r in range(rows):
            if r != rank and m[r][c]:
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], pr)]
        pivots.append(c)
        rank += 1
        if rank == rows:
            break
    free = [c for c in range(ncol) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncol
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][fc]
        basis.append(v)
    return basis


def _kernel_line(cols: list, check) -> list | None:
    """The rational kernel vector when the kernel is a line, else None.

    A prime with kernel dimension 1 bounds the rational kernel to at most
    a line; the vector is rebuilt by Chinese remaindering and rational
    reconstruction and accepted only when ``check`` confirms it exactly.
    """
    residues, modulus, free, last = None, 1, None, None
    for p in _PRIMES:
        got = _kernel_modp(cols, p)
        if got is None or len(got[0]) != 1:
            continue
        (vec,), fr = got
        if free is None:
            free, residues = fr, list(vec)
            modulus = p
        elif fr == free:
            residues = [x + modulus * ((y - x) * pow(modulus, -1, p) % p) for x, y in zip(residues, vec)]
            modulus *= p
        else:
            continue
        cand = [_rational_reconstruct(x, modulus) for x in residues]
        if any(c is None for c in cand):
            continue
        if cand == last and check(cand):
            return cand
        last = cand
    return None


def _system(pows: list, dt: int, dz: int, n: int) -> list:
    return [_column(pows[j], i, n) for j in range(dz + 1) for i in range(dt + 1)]


def _to_poly(vec: list, dt: int, dz: int) -> BivariatePoly:
    terms = {}
    k = 0
    for j in range(dz + 1):
        for i in range(dt + 1):
            if vec[k]:
                terms[(i, j)] = vec[k]
            k += 1
    return BivariatePoly.from_dict(terms).normalize()


def _minimal_kernel(pows: list, series: TruncatedSeries, dt: int, dz: int, n: int) -> BivariatePoly | None:
    cols = _system(pows, dt, dz, n)

    def check(vec):
        p = _to_poly(vec, dt, dz)
        return p.deg_z() >= 1 and eval_at_series(p, series).is_zero()

    vec = _kernel_line(cols, check)
    if vec is not None:
        return _to_poly(vec, dt, dz)
    basis = _kernel_exact(cols)
    cands = sorted((_to_poly(v, dt, dz) for v in basis), key=_sort_key)
    return next((c for c in cands if c.deg_z() >= 1), None)


def series_period(series: TruncatedSeries) -> int:
    """gcd of the indices n >= 1 with a nonzero coefficient (1 if there are none)."""
    g = 0
    for n, a in enumerate(series.coeffs):
        if n and a:
            g = gcd(g, n)
    return g or 1


def terms_needed(deg_t: int, deg_z: int, period: int = 1, margin: int = GUESS_MARGIN) -> int:
    """Coefficients needed so every residue class mod ``period`` is overdetermined by ``margin``.

    When the series only involves powers of t^period, the linear system
    splits into one block per residue class of the t-exponent.
    """
    need = 0
    for r in range(period):
        width = len(range(r, deg_t + 1, period)) * (deg_z + 1)
        if width:
            rows = width + margin
            need = max(need, r + (rows - 1) * period + 1)
    return need


def guess_algebraic(series: TruncatedSeries, deg_t_max: int, deg_z_max: int, margin: int = GUESS_MARGIN) -> GuessResult:
    """Smallest (deg_z, then deg_t) integer polynomial p with p(t, series) = 0 mod t^(N+1).

    A trivial kernel within the bounds is a normal outcome, reported with
    ``candidate = None``.
    """
    if deg_t_max < 0 or deg_z_max < 1:
        raise DomainError("need deg_t_max >= 0 and deg_z_max >= 1")
    n = series.order
    need = terms_needed(deg_t_max, deg_z_max, series_period(series), margin)
    if n + 1 < need:
        raise PreconditionError(f"{n + 1} terms given, at least {need} needed for bounds ({deg_t_max}, {deg_z_max})")
    pows = _powers(series, deg_z_max)
    for dz in range(1, deg_z_max + 1):
        if not _rank_deficient(_system(pows, deg_t_max, dz, n)):
            continue
        for dt in range(0, deg_t_max + 1):
            if dt == deg_t_max or _rank_deficient(_system(pows, dt, dz, n)):
                cand = _minimal_kernel(pows, series, dt, dz, n)
                if cand is not None:
                    return GuessResult(cand, cand.deg_t(), cand.deg_z(), n)
    return GuessResult(None, None, None, n, "no algebraic relation within bounds")


def _sort_key(p: BivariatePoly):
    return (p.deg_z(), p.deg_t(), sorted(p.terms().items()))


# -- minimal polynomial from an annihilator ------------------------------------------

@dataclass
class MinimalPolyResult:
    minimal: BivariatePoly
    annihilator: BivariatePoly
    series: TruncatedSeries
    divides: bool


def simple_root_derivative(p: BivariatePoly, series: TruncatedSeries) -> tuple[BivariatePoly, int]:
    """(d^k p/dz^k, k) with k the multiplicity of ``series`` as a root of p, judged on the given terms.

    The series is a simple root of the returned polynomial, so it can be
    lifted without splitting off repeated factors first.
    """
    q, k = p, 0
    if not eval_at_series(q, series).is_zero():
        raise InconsistencyError("the series is not a root of the polynomial")
    while True:
        d = q.diff_z()
        if d.is_zero():
            raise InconsistencyError("the series is not a root of the polynomial")
        if not eval_at_series(d, series).is_zero():
            return q, k
        q, k = d, k + 1


def minimal_polynomial(annihilator: BivariatePoly, series: TruncatedSeries, margin: int = GUESS_MARGIN) -> MinimalPolyResult:
    """Irreducible factor of ``annihilator`` vanishing at ``series``, found by guessing.

    The series is lengthened by lifting on the derivative of the annihilator
    that has it as a simple root; the guess is certified by divisibility in
    Q(t)[z].
    """
    if annihilator.deg_z() < 1:
        raise DomainError("the annihilator must involve z")
    lift, k = simple_root_derivative(annihilator, series)
    dt_max = annihilator.deg_t()
    dz_max = annihilator.deg_z() // (k + 1)
    long = series
    period = series_period(series)
    for dz in range(1, dz_max + 1):
        need = terms_needed(dt_max, dz, period, margin)
        if long.order + 1 < need:
            long = series_root(lift, long, need - 1)
        res = guess_algebraic(long, dt_max, dz, margin)
        if res.found:
            if not divides_z(res.candidate, annihilator):
                raise InconsistencyError("guessed polynomial does not divide the annihilator")
            return MinimalPolyResult(res.candidate, annihilator, long, True)
    raise InconsistencyError("no factor of the annihilator matches the series")
