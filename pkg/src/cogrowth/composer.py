"""Annihilating polynomials for free products of finite groups via free additive convolution.

Each factor contributes the rational moment series P/Q of the sum of its
generators.  The inverse Cauchy transform K of that element is a root of a
polynomial monic in the unknown, with coefficients linear in u = 1/c.  The
free sum adds the K's (with a -(sum m_i - 1)/c correction), so it is an
eigenvalue of a sum of companion matrices on a tensor product space; its
characteristic polynomial, rewritten in t and z = F(t), annihilates the
cogrowth series.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import floor, prod

from .algebra.poly import BivariatePoly, UniPoly
from .algebra.ratfunc import RatFuncMatrix, charpoly
from .algebra.series import TruncatedSeries
from .errors import DomainError, InconsistencyError
from .groups import FactorSpec, FiniteGroupTable, FreeProductSpec, GeneratingSet, z_to_z2z2
from .oracle import cogrowth_sequence, finite_group_moments

DEFAULT_VERIFY_ORDER = 14


@dataclass(frozen=True)
class FactorRational:
    """Moment series P/Q of one finite factor, Q(0) = 1, in lowest terms."""

    P: UniPoly
    Q: UniPoly
    gens: GeneratingSet | None = field(default=None, compare=False)

    @property
    def delta(self) -> int:
        return max(self.P.degree() + 1, self.Q.degree())

    def series(self, order: int) -> TruncatedSeries:
        return TruncatedSeries.from_rational(self.P, self.Q, order)


def berlekamp_massey(seq) -> list:
    """Connection polynomial C (lowest first, C[0] = 1) of the shortest linear recurrence."""
    s = [Fraction(x) for x in seq]
    C, B = [Fraction(1)], [Fraction(1)]
    L, m, b = 0, 1, Fraction(1)
    for n in range(len(s)):
        d = s[n]
        for i in range(1, L + 1):
            if i < len(C):
                d += C[i] * s[n - i]
        if d == 0:
            m += 1
            continue
        coef = d / b
        newC = C + [Fraction(0)] * max(0, len(B) + m - len(C))
        for i, x in enumerate(B):
            newC[i + m] -= coef * x
        if 2 * L <= n:
            B, L, b, m = C, n + 1 - L, d, 1
        else:
            m += 1
        C = newC
    C = C[: L + 1] + [Fraction(0)] * (L + 1 - len(C))
    return C


def rational_from_moments(moments, fit_terms: int) -> tuple[UniPoly, UniPoly]:
    """P/Q with Q(0) = 1 fitted on the first fit_terms moments."""
    C = berlekamp_massey(moments[:fit_terms])
    L = len(C) - 1
    Q = UniPoly(C)
    P = (UniPoly(moments[:L]) * Q).truncate(L) if L else UniPoly([moments[0]])
    if L == 0:
        return UniPoly([moments[0]]), UniPoly([1])
    g = P.gcd(Q)
    if g.degree() > 0:
        P, Q = P.exact_div(g), Q.exact_div(g)
        c = Q[0]
        P, Q = P * (Fraction(1) / c), Q * (Fraction(1) / c)
    return P, Q


def factor_rational(group: FiniteGroupTable, gens: GeneratingSet) -> FactorRational:
    """Exact P/Q for the moments of the generator sum, checked on 3|G| further moments."""
    n = group.order
    moments = finite_group_moments(group, gens, 5 * n)
    P, Q = rational_from_moments(moments, 2 * n)
    if not (P.is_integral() and Q.is_integral()):
        raise InconsistencyError("moment recurrence has non-integral coefficients")
    if list(TruncatedSeries.from_rational(P, Q, 5 * n).coeffs) != moments:
        raise InconsistencyError("fitted rational function disagrees with the group moments")
    return FactorRational(P, Q, gens)


def lambda_poly(f: FactorRational) -> BivariatePoly:
    """Q(z) - t z P(z)."""
    z = BivariatePoly.z()
    t = BivariatePoly.t()
    return BivariatePoly.from_z_poly(f.Q) - t * z * BivariatePoly.from_z_poly(f.P)


def _companion(f: FactorRational) -> list:
    """Companion matrix (entries polynomial in u) of x^D Q(1/x) - u x^(D-1) P(1/x)."""
    D = f.delta
    u = UniPoly.gen("u")
    # coefficient of x^k: Q[D-k] - u P[D-1-k]
    c = [UniPoly((f.Q[D - k],), "u") - u * f.P[D - 1 - k] for k in range(D + 1)]
    if c[D] != UniPoly((1,), "u"):
        raise InconsistencyError("inverse-transform polynomial is not monic")
    zero = UniPoly((), "u")
    one = UniPoly((1,), "u")
    M = [[zero] * D for _ in range(D)]
    for k in range(1, D):
        M[k][k - 1] = one
    for k in range(D):
        M[k][D - 1] = -c[k]
    return M


@dataclass
class ComposerResult:
    Lambda: BivariatePoly
    delta: int
    bound: int
    factors: list
    verified_order: int | None = None


def degree_bound(factors) -> int:
    """floor(prod D_i * (1 + sum 1/D_i)) over (D_i, m_i) pairs."""
    ds = [d for d, *_ in factors]
    if any(d < 1 for d in ds):
        raise DomainError("factor degrees must be positive")
    p = prod(ds)
    return floor(p * (1 + sum(Fraction(1, d) for d in ds)))


def _merge(factors) -> list:
    out: dict = {}
    keep: dict = {}
    for f, m in factors:
        if m < 1:
            raise DomainError("multiplicities must be positive")
        k = (f.P, f.Q)
        out[k] = out.get(k, 0) + m
        keep.setdefault(k, f)
    return [(keep[k], m) for k, m in out.items()]


def annihilator(factors) -> tuple[BivariatePoly, int]:
    """Unverified annihilating polynomial and the tensor dimension."""
    factors = _merge(factors)
    if not factors:
        raise DomainError("need at least one factor")
    comps = [_companion(f) for f, _ in factors]
    dims = [len(c) for c in comps]
    D = prod(dims)
    idx = list(product(*[range(d) for d in dims]))
    zero = UniPoly((), "u")
    Y = [[zero] * D for _ in range(D)]
    for a, ja in enumerate(idx):
        for r, (comp, (_, m)) in enumerate(zip(comps, factors)):
            row = comp[ja[r]]
            for v in range(dims[r]):
                e = row[v]
                if e:
                    jb = ja[:r] + (v,) + ja[r + 1:]
                    b = _flat(jb, dims)
                    Y[a][b] = Y[a][b] + e * m
    cp = charpoly(RatFuncMatrix(Y, var="u"))
    coeffs = [c.num for c in cp]  # polynomials in u, lowest x-degree first
    s = sum(m for _, m in factors) - 1
    E = max(l + c.degree() for l, c in enumerate(coeffs) if not c.is_zero())
    t, z = BivariatePoly.t(), BivariatePoly.z()
    zs = z + s
    tz = t * z
    out = BivariatePoly()
    zs_pow = BivariatePoly.constant(1)
    tz_pows = [BivariatePoly.constant(1)]
    for _ in range(E):
        tz_pows.append(tz_pows[-1] * tz)
    for l, c in enumerate(coeffs):
        for j, b in enumerate(c.coeffs):
            if b:
                out = out + zs_pow * tz_pows[E - j - l] * b
        zs_pow = zs_pow * zs
    return out.normalize(), D


def _flat(j: tuple, dims: list) -> int:
    k = 0
    for x, d in zip(j, dims):
        k = k * d + x
    return k


def annihilates(p: BivariatePoly, series: TruncatedSeries, order: int) -> bool:
    """p(t, series) == 0 mod t^(order+1)."""
    f = series.truncate(order)
    acc = TruncatedSeries([0], order)
    for j in range(p.deg_z(), -1, -1):
        acc = acc * f + TruncatedSeries.from_poly(p.zcoeff(j), order)
    return acc.is_zero()


def compose(factors, N: int = DEFAULT_VERIFY_ORDER, series: TruncatedSeries | None = None) -> ComposerResult:
    """Annihilating polynomial for the free product of the given (FactorRational, m) pairs.

    The result is checked against ``series`` or, when every factor carries
    its generating set, against the walk-counting oracle, to order N.
    """
    merged = _merge(factors)
    Lam, D = annihilator(merged)
    bound = degree_bound([(f.delta, m) for f, m in merged])
    if series is None:
        if any(f.gens is None for f, _ in merged):
            raise DomainError("verification needs either a series or generating sets for all factors")
        spec = FreeProductSpec(tuple(FactorSpec(f.gens, m) for f, m in merged))
        series = cogrowth_sequence(spec, N).as_series()
    if not annihilates(Lam, series, N):
        raise InconsistencyError("composed polynomial does not annihilate the cogrowth series")
    if Lam.deg_t() > bound or Lam.deg_z() > bound:
        raise InconsistencyError(f"composed polynomial exceeds the degree bound {bound}")
    return ComposerResult(Lam, D, bound, merged, N)


def spec_factor_rationals(spec: FreeProductSpec) -> list:
    spec = z_to_z2z2(spec)
    return [(factor_rational(f.group, f.gens), f.multiplicity) for f in spec.factors]


def compose_spec(spec: FreeProductSpec, N: int = DEFAULT_VERIFY_ORDER) -> ComposerResult:
    """compose() for a spec; Z factors are replaced by pairs of Z/2 factors first."""
    if not spec.factors:
        raise DomainError("need at least one factor")
    series = cogrowth_sequence(spec, N).as_series()
    return compose(spec_factor_rationals(spec), N, series)


# -- closed forms ---------------------------------------------------------------

def cyclic_equation(d: int, m: int) -> BivariatePoly:
    """m^d t^d z^d - (z-1)(z+m-1)^(d-1)."""
    if d < 2 or m < 2:
        raise DomainError("need d, m >= 2")
    t, z = BivariatePoly.t(), BivariatePoly.z()
    return (t * z) ** d * (m ** d) - (z - 1) * (z + (m - 1)) ** (d - 1)


def z2_free_equation(m: int, s: int) -> BivariatePoly:
    """(m+2s)^2 t^2 z^2 - (z-1)(z+m+2s-1) for (Z/2)^{*m} * Z^{*s}."""
    if m < 0 or s < 0 or m + 2 * s < 2:
        raise DomainError("need m, s >= 0 with m + 2s >= 2")
    return cyclic_equation(2, m + 2 * s)


@dataclass(frozen=True)
class Z2ZnSystem:
    """Auxiliary series D for Z/2 * Z/n with S = {x, y}, and F as a function of D."""

    n: int
    d_equation: BivariatePoly
    prefix: TruncatedSeries

    def f_from_d(self, D: TruncatedSeries) -> TruncatedSeries:
        t = TruncatedSeries.gen(D.order)
        a = 1 - t * D
        return a / (a * a - t * t)

    def f_equation_for_d(self) -> BivariatePoly:
        return self.d_equation


def z2_zn_system(n: int) -> Z2ZnSystem:
    """t^(n-1)(1-tD)^(n-1) - (1-tD-t^2)^(n-1) D, with D = t^(n-1) + O(t^n)."""
    if n < 2:
        raise DomainError("need n >= 2")
    t = BivariatePoly.t().renamed("t", "D")
    D = BivariatePoly.z().renamed("t", "D")
    one = BivariatePoly.constant(1).renamed("t", "D")
    eq = t ** (n - 1) * (one - t * D) ** (n - 1) - (one - t * D - t * t) ** (n - 1) * D
    prefix = TruncatedSeries([0] * (n - 1) + [1])
    return Z2ZnSystem(n, eq, prefix)
