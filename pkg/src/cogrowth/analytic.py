"""Singularity analysis of algebraic cogrowth series.

Positive singularities of an algebraic series lie among the positive roots
of the z-leading coefficient and of the z-discriminant of its polynomial.
Those roots are isolated exactly (Descartes' rule of signs on dyadic
subintervals) and the radius is chosen as the candidate closest to the
growth rate read off the coefficients.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .algebra.poly import BivariatePoly, UniPoly
from .algebra.resultant import discriminant, squarefree_z
from .algebra.series import TruncatedSeries
from .errors import DomainError, PreconditionError
from .solver import minimal_polynomial, series_root, simple_root_derivative

ROOT_WIDTH = Fraction(1, 10 ** 12)
GAP_TOLERANCE = Fraction(1, 10 ** 9)
LONG_SERIES = 300
MIN_TERMS = 16


# -- intervals -------------------------------------------------------------------

@dataclass(frozen=True)
class Interval:
    """Closed interval with rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise DomainError("empty interval")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self) -> float:
        return float(self.mid)

    def contains(self, x) -> bool:
        return self.lo <= Fraction(x) <= self.hi

    def reciprocal(self) -> "Interval":
        if self.lo <= 0:
            raise DomainError("reciprocal of an interval containing 0")
        return Interval(1 / self.hi, 1 / self.lo)

    def to_json(self) -> dict:
        return {"lo": str(self.lo), "hi": str(self.hi), "value": float(self)}

    @classmethod
    def from_json(cls, obj: dict) -> "Interval":
        return cls(Fraction(obj["lo"]), Fraction(obj["hi"]))


# -- real root isolation ----------------------------------------------------------

def _integer_coeffs(p: UniPoly) -> list:
    q = p.primitive()
    return [int(c) for c in q.coeffs]


def _variations(c: list) -> int:
    signs = [x > 0 for x in c if x]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _shift1(c: list) -> list:
    """Coefficients of p(x + 1)."""
    c = list(c)
    n = len(c) - 1
    for i in range(n):
        for j in range(n - 1, i - 1, -1):
            c[j] += c[j + 1]
    return c


def _eval_sign(c: list, x: Fraction) -> int:
    """Sign of the integer polynomial c at the rational x, computed exactly."""
    num, den = x.numerator, x.denominator
    acc = 0
    dp = 1
    for a in reversed(c):
        acc = acc * num + a * dp
        dp *= den
    # acc = den^(deg) * p(x) up to a positive factor
    return (acc > 0) - (acc < 0)


def _positive_bound(c: list) -> int:
    """A power of two exceeding every positive root (Cauchy's bound)."""
    lead = abs(c[-1])
    m = max(abs(x) for x in c[:-1]) if len(c) > 1 else 0
    b = 1 + Fraction(m, lead)
    k = 0
    while (1 << k) <= b:
        k += 1
    return 1 << k


def isolate_positive_roots(p: UniPoly, width: Fraction = ROOT_WIDTH) -> list:
    """Intervals of width <= ``width``, one around each positive real root of p."""
    if p.is_zero():
        raise DomainError("the zero polynomial has no isolated roots")
    p = p.squarefree() if p.degree() > 0 else p
    c = _integer_coeffs(p)
    while c and c[0] == 0:
        c = c[1:]
    if len(c) <= 1:
        return []
    B = _positive_bound(c)
    # q(x) = p(Bx) on (0, 1)
    q = [a * B ** i for i, a in enumerate(c)]
    found = []
    stack = [(q, 0, 1)]  # polynomial on (0,1) standing for (a/2^k, (a+1)/2^k)
    while stack:
        q, a, den = stack.pop()
        while q[0] == 0:  # root at the left end, already recorded
            q = q[1:]
        test = _shift1(list(reversed(q)))
        v = _variations(test)
        if v == 0:
            continue
        lo, hi = Fraction(B * a, den), Fraction(B * (a + 1), den)
        if v == 1:
            found.append((lo, hi))
            continue
        deg = len(q) - 1
        left = [x * (1 << (deg - i)) for i, x in enumerate(q)]
        right = _shift1(left)
        if right[0] == 0:
            m = Fraction(B * (2 * a + 1), 2 * den)
            found.append((m, m))
        stack.append((right, 2 * a + 1, 2 * den))
        stack.append((left, 2 * a, 2 * den))
    out = [_refine(c, lo, hi, width) for lo, hi in found]
    return sorted(out, key=lambda iv: iv.lo)


def _refine(c: list, lo: Fraction, hi: Fraction, width: Fraction) -> Interval:
    if lo == hi:
        return Interval(lo, hi)
    # an endpoint may be a rational root found earlier; divide it out
    for e in (lo, hi):
        if _eval_sign(c, e) == 0:
            q = UniPoly(c).exact_div(UniPoly([-e.numerator, e.denominator]))
            c = [int(x) for x in q.coeffs]
    slo = _eval_sign(c, lo)
    while hi - lo > width:
        m = (lo + hi) / 2
        s = _eval_sign(c, m)
        if s == 0:
            return Interval(m, m)
        if s == slo:
            lo = m
        else:
            hi = m
    return Interval(lo, hi)


# -- candidates and radius ----------------------------------------------------------

@dataclass(frozen=True)
class Candidate:
    interval: Interval
    sources: tuple  # subset of ("lc", "disc")

    def to_json(self) -> dict:
        return {"interval": self.interval.to_json(), "sources": list(self.sources)}

    @classmethod
    def from_json(cls, obj: dict) -> "Candidate":
        return cls(Interval.from_json(obj["interval"]), tuple(obj["sources"]))


@dataclass
class SingularityReport:
    polynomial: BivariatePoly
    candidates: list
    selected: Interval | None = None
    estimate: float | None = None
    method: str = "candidates only"
    relative_gap: float | None = None
    notes: list = field(default_factory=list)

    @property
    def rho(self) -> float | None:
        return None if self.selected is None else float(self.selected)

    def to_json(self) -> dict:
        return {
            "polynomial": self.polynomial.to_json(),
            "candidates": [c.to_json() for c in self.candidates],
            "selected": None if self.selected is None else self.selected.to_json(),
            "estimate": self.estimate,
            "method": self.method,
            "relative_gap": self.relative_gap,
            "notes": list(self.notes),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SingularityReport":
        sel = obj.get("selected")
        return cls(
            BivariatePoly.from_json(obj["polynomial"]),
            [Candidate.from_json(c) for c in obj["candidates"]],
            None if sel is None else Interval.from_json(sel),
            obj.get("estimate"),
            obj.get("method", "candidates only"),
            obj.get("relative_gap"),
            list(obj.get("notes", [])),
        )


def _sign_change(c: list, iv: Interval) -> bool:
    if iv.lo == iv.hi:
        return _eval_sign(c, iv.lo) == 0
    return _eval_sign(c, iv.lo) * _eval_sign(c, iv.hi) < 0


def singularity_candidates(p: BivariatePoly, width: Fraction = ROOT_WIDTH) -> SingularityReport:
    """Positive roots of the z-leading coefficient and z-discriminant of p, isolated exactly.

    A polynomial with repeated factors has a vanishing discriminant, so its
    squarefree part is used in that case.
    """
    if p.is_zero() or p.deg_z() < 1:
        raise DomainError("need a nonzero polynomial of positive z-degree")
    notes = []
    disc = discriminant(p)
    if disc.is_zero():
        p = squarefree_z(p)
        disc = discriminant(p)
        notes.append("repeated factors removed before taking the discriminant")
    lc = p.lc_z()
    parts = []
    for tag, q in (("lc", lc), ("disc", disc)):
        if q.degree() > 0:
            parts.append((tag, q.squarefree()))
    if not parts:
        return SingularityReport(p, [], notes=notes)
    union = parts[0][1]
    for _, q in parts[1:]:
        g = union.gcd(q)
        union = (union * q).exact_div(g)
    ivs = isolate_positive_roots(union, width)
    ints = {tag: _integer_coeffs(q) for tag, q in parts}
    cands = []
    for iv in ivs:
        src = tuple(tag for tag, _ in parts if _sign_change(ints[tag], iv))
        cands.append(Candidate(iv, src))
    return SingularityReport(p, cands, notes=notes)


def _period(coeffs: list) -> int:
    g = 0
    for n, a in enumerate(coeffs):
        if n and a:
            g = gcd(g, n)
    return g


def _log(a) -> float:
    a = Fraction(a)
    return math.log(a.numerator) - math.log(a.denominator)


def _last_nonzero(c: list, p: int, upto: int | None = None) -> int:
    top = len(c) - 1 if upto is None else upto
    return max(n for n, a in enumerate(c[: top + 1]) if a and n % p == 0)


def growth_estimate(coeffs, gaps: int = 4) -> float:
    """Estimate of limsup a_n^(1/n): the largest (a_N / a_(N-g))^(1/g).

    N is the last nonzero index and g runs over the first ``gaps``
    multiples of the sequence's period (the gcd of the nonzero indices).
    """
    c = list(coeffs)
    p = _period(c)
    if p == 0:
        raise PreconditionError("sequence has no nonzero terms past a_0")
    N = _last_nonzero(c, p)
    best = None
    for k in range(1, gaps + 1):
        g = p * k
        if N - g < 0 or not c[N - g]:
            continue
        est = math.exp((_log(c[N]) - _log(c[N - g])) / g)
        best = est if best is None else max(best, est)
    if best is None:
        raise PreconditionError("too few nonzero terms for a growth estimate")
    return best


def ratio_fit_growth(coeffs) -> float:
    """Growth from a straight-line fit of successive ratios against 1/n.

    With period p, r_n = a_n / a_(n-p) behaves like g^p (1 - c/n) near a
    square-root or n^(-3/2) singularity; two consecutive ratios cancel the
    c/n term.  Only meaningful when the coefficients grow regularly.
    """
    c = list(coeffs)
    p = _period(c)
    if p == 0:
        raise PreconditionError("sequence has no nonzero terms past a_0")
    n = _last_nonzero(c, p)
    if n - 2 * p < 0 or not c[n - p] or not c[n - 2 * p]:
        raise PreconditionError("too few nonzero terms for a ratio fit")
    r1 = Fraction(c[n], c[n - p])
    r0 = Fraction(c[n - p], c[n - 2 * p])
    A = (n * r1 - (n - p) * r0) / p
    if A <= 0:
        raise PreconditionError("ratio fit is not positive; coefficients are irregular")
    return float(A) ** (1 / p)


def extrapolated_growth(coeffs) -> float:
    """Growth estimate over a half-length window, corrected for its 1/N bias.

    E(N) = (a_N / a_(N/2))^(2/N) behaves like g (1 + c/N); combining E(N) and
    E(N/2) removes the c/N term.  Windows are multiples of the period, which
    averages out oscillation from other singularities on or near the circle.
    """
    c = list(coeffs)
    p = _period(c)
    if p == 0:
        raise PreconditionError("sequence has no nonzero terms past a_0")

    def window(N):
        N = _last_nonzero(c, p, N)
        g = p * max(1, N // (2 * p))
        if N - g < 0 or not c[N - g]:
            raise PreconditionError("too few nonzero terms for a growth estimate")
        return math.exp((_log(c[N]) - _log(c[N - g])) / g)

    N = len(c) - 1
    e1, e2 = window(N), window(N // 2)
    est = 2 * e1 - e2
    return est if est > 0 else e1


def _check_series(series: TruncatedSeries) -> None:
    if series.order + 1 < MIN_TERMS:
        raise PreconditionError(f"need at least {MIN_TERMS} terms, got {series.order + 1}")
    if any(Fraction(a) < 0 for a in series.coeffs):
        raise PreconditionError("series coefficients must be nonnegative")


def radius(p: BivariatePoly, series: TruncatedSeries, terms: int = LONG_SERIES) -> SingularityReport:
    """Radius of convergence of ``series``, a root of p.

    The candidates come from the minimal polynomial of the series (a factor
    of p).  The series is lengthened to ``terms`` coefficients by lifting and
    the candidate closest to the reciprocal of the extrapolated growth
    estimate is selected.
    """
    _check_series(series)
    mp = minimal_polynomial(p, series)
    lift, _ = simple_root_derivative(mp.minimal, series)
    long = series_root(lift, mp.series if mp.series.order >= series.order else series, max(terms - 1, series.order))
    rep = singularity_candidates(mp.minimal)
    if not rep.candidates:
        raise DomainError("no positive singularity candidates")
    g = extrapolated_growth(long.coeffs)
    target = 1 / g
    best = min(rep.candidates, key=lambda c: abs(float(c.interval) - target))
    rep.selected = best.interval
    rep.estimate = g
    rep.method = "closest to extrapolated coefficient growth"
    rep.relative_gap = abs(float(best.interval) * g - 1)
    if mp.minimal != p.normalize():
        rep.notes.append("candidates taken from the minimal polynomial")
    return rep


# -- cyclic family -------------------------------------------------------------------

def _iroot(n: int, k: int) -> int:
    """floor(n^(1/k)) for n >= 0."""
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def kth_root_interval(q: Fraction, k: int, bits: int = 80) -> Interval:
    """Dyadic interval of width 2^-bits containing q^(1/k)."""
    scaled = q * (1 << (bits * k))
    r = _iroot(scaled.numerator // scaled.denominator, k)
    return Interval(Fraction(r, 1 << bits), Fraction(r + 1, 1 << bits))


def _rounded(q: Fraction, k: int) -> tuple[float, Interval]:
    bits = 80
    while True:
        iv = kth_root_interval(q, k, bits)
        if float(iv.lo) == float(iv.hi) or iv.lo ** k == q:
            return float(iv.lo), iv
        bits *= 2


@dataclass(frozen=True)
class CyclicRadius:
    """rho = power^(1/d) for (Z/d)^{*m} with one generator per copy."""

    d: int
    m: int
    power: Fraction  # rho^d
    value: float
    interval: Interval

    @property
    def expression(self) -> str:
        d, m = self.d, self.m
        return f"({d - 1})^({d - 1}/{d}) / ({d}*({m - 1})^(1/{d}))"


def cyclic_radius(d: int, m: int) -> CyclicRadius:
    if d < 2 or m < 2:
        raise DomainError("need d, m >= 2")
    power = Fraction((d - 1) ** (d - 1), (m - 1) * d ** d)
    value, iv = _rounded(power, d)
    return CyclicRadius(d, m, power, value, iv)


@dataclass(frozen=True)
class RepeatedRoot:
    d: int
    m: int
    beta_power: Fraction  # beta^d
    z0: Fraction | None
    z0_defined: bool


def repeated_root_locus(d: int, m: int) -> RepeatedRoot:
    """The t^d value at which m^d t^d z^d - (z-1)(z+m-1)^(d-1) has a double root, and that root."""
    if d < 2 or m < 2:
        raise DomainError("need d, m >= 2")
    bp = Fraction((d - 1) ** (d - 1), (m - 1) * d ** d)
    den = d * m - d - m
    if den == 0:
        return RepeatedRoot(d, m, bp, None, False)
    z0 = Fraction((m - 1) * d, den)
    P = UniPoly([-1, 1], "z") * UniPoly([m - 1, 1], "z") ** (d - 1)
    P = UniPoly([0] * d + [m ** d * bp], "z") - P
    if P(z0) != 0 or P.deriv()(z0) != 0:
        raise DomainError(f"no double root at z0 = {z0}")
    return RepeatedRoot(d, m, bp, z0, True)


# -- gap check -------------------------------------------------------------------

IN_ONE = "in {1}"
IN_TWO = "in {2}"
ABOVE = "in [2*sqrt(2), oo)"
VIOLATION = "VIOLATION"
NOT_APPLICABLE = "not applicable (generating set not symmetric)"


@dataclass(frozen=True)
class GapVerdict:
    value: Interval
    verdict: str
    slack: float

    @property
    def ok(self) -> bool:
        return self.verdict != VIOLATION

    def to_json(self) -> dict:
        return {"value": self.value.to_json(), "verdict": self.verdict, "slack": self.slack}


def _dist_to_ray(x: Fraction) -> float:
    # distance from x to [2 sqrt 2, oo); 0 inside
    if x >= 0 and x * x >= 8:
        return 0.0
    return 2 * math.sqrt(2) - float(x)


def gap_check(one_over_rho, tolerance: Fraction = GAP_TOLERANCE, symmetric: bool = True) -> GapVerdict:
    """Classify 1/rho against {1} u {2} u [2 sqrt 2, oo).

    ``one_over_rho`` is an Interval (width at most the tolerance) or a
    number.  The classification is only meaningful for symmetric generating
    sets; otherwise the verdict says so.
    """
    iv = one_over_rho if isinstance(one_over_rho, Interval) else Interval(Fraction(one_over_rho), Fraction(one_over_rho))
    if iv.width > tolerance:
        raise PreconditionError(f"interval width {float(iv.width):.3g} exceeds the tolerance")
    slack = min(
        max(abs(float(iv.lo - 1)), abs(float(iv.hi - 1))),
        max(abs(float(iv.lo - 2)), abs(float(iv.hi - 2))),
        _dist_to_ray(iv.lo),
    )
    if not symmetric:
        return GapVerdict(iv, NOT_APPLICABLE, slack)
    if iv.lo >= 1 - tolerance and iv.hi <= 1 + tolerance:
        return GapVerdict(iv, IN_ONE, slack)
    if iv.lo >= 2 - tolerance and iv.hi <= 2 + tolerance:
        return GapVerdict(iv, IN_TWO, slack)
    x = iv.lo + tolerance
    if x >= 0 and x * x >= 8:
        return GapVerdict(iv, ABOVE, slack)
    return GapVerdict(iv, VIOLATION, slack)
