"""Cross-checks between the independent routes, grouped into named fixture sets."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .algebra.poly import BivariatePoly
from .algebra.resultant import divides_z
from .algebra.series import TruncatedSeries
from .analytic import SingularityReport, cyclic_radius, gap_check, radius
from .composer import (
    annihilates, compose, compose_spec, cyclic_equation, spec_factor_rationals, z2_free_equation,
    z2_zn_system,
)
from .errors import DomainError
from .fixtures import TABLE1, n5_with_linear_coefficient, printed_minimal_polynomial
from .grammar import build_system, solve_system_series
from .groups import (
    FreeProductSpec, cyclic_factor, cyclic_family, table_factor, z2_free, z2_zn, z_factor, z_to_z2z2,
)
from .oracle import cogrowth_sequence
from .solver import minimal_polynomial, series_root

CHECK_ORDER = 14
RADIUS_TERMS = 20
RADIUS_TOL = 1e-9
THM12_GRID = [(d, m) for d in (2, 3, 4) for m in (2, 3, 4)]
THM12_MIXED = [(0, 1), (1, 1), (0, 2), (2, 1)]


@dataclass
class CheckRecord:
    name: str
    source: str
    computed: str
    status: str  # "pass" or "fail"

    def to_json(self) -> dict:
        return {"name": self.name, "source": self.source, "computed": self.computed, "status": self.status}

    @classmethod
    def from_json(cls, obj: dict) -> "CheckRecord":
        return cls(obj["name"], obj["source"], obj["computed"], obj["status"])


@dataclass
class VerificationReport:
    name: str
    records: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.status == "pass" for r in self.records)

    def add(self, name: str, source: str, computed, ok: bool) -> CheckRecord:
        rec = CheckRecord(name, source, str(computed), "pass" if ok else "fail")
        self.records.append(rec)
        return rec

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "records": [r.to_json() for r in self.records]}

    @classmethod
    def from_json(cls, obj: dict) -> "VerificationReport":
        return cls(obj["name"], [CheckRecord.from_json(r) for r in obj["records"]])

    def render(self) -> str:
        lines = [f"{r.status.upper():4}  {r.name}  [{r.source}]  {r.computed}" for r in self.records]
        n_ok = sum(r.status == "pass" for r in self.records)
        lines.append(f"{self.name}: {n_ok}/{len(self.records)} checks passed")
        return "\n".join(lines)


# -- pipelines -------------------------------------------------------------------

def hensel_series(p: BivariatePoly, N: int, prefix=(1,)) -> TruncatedSeries:
    return series_root(p, TruncatedSeries(list(prefix)), N)


def z2_zn_series(n: int, N: int) -> TruncatedSeries:
    """F for Z/2 * Z/n with S = {x, y}, through the auxiliary series D."""
    system = z2_zn_system(n)
    D = series_root(system.d_equation, system.prefix, N)
    return system.f_from_d(D)


def spec_radius(spec: FreeProductSpec, terms: int = RADIUS_TERMS) -> SingularityReport:
    """Radius of the cogrowth series, with candidates from the composed annihilator."""
    series = cogrowth_sequence(spec, terms).as_series()
    res = compose(spec_factor_rationals(spec), CHECK_ORDER, series.truncate(CHECK_ORDER))
    return radius(res.Lambda, series)


def spec_minimal_polynomial(spec: FreeProductSpec, N: int = CHECK_ORDER):
    res = compose_spec(spec, N)
    mp = minimal_polynomial(res.Lambda, cogrowth_sequence(spec, N).as_series())
    return res, mp


# -- fixture sets ----------------------------------------------------------------

def verify_table1() -> VerificationReport:
    rep = VerificationReport("table1")
    for row in TABLE1:
        seq = cogrowth_sequence(row.spec, row.n_max).values
        got = tuple(seq[:: row.stride])
        rep.add(f"{row.name} terms", "published terms", ", ".join(map(str, got[:8])) + ", ...", got == row.terms)
        res, mp = spec_minimal_polynomial(row.spec)
        series = cogrowth_sequence(row.spec, CHECK_ORDER).as_series()
        ok = annihilates(res.Lambda, series, CHECK_ORDER) and max(res.Lambda.deg_t(), res.Lambda.deg_z()) <= res.bound
        rep.add(f"{row.name} annihilator", "composer vs walk count",
                f"deg ({res.Lambda.deg_t()}, {res.Lambda.deg_z()}) <= {res.bound}", ok)
        rep.add(f"{row.name} minimal polynomial divides", "guess vs composer",
                f"deg ({mp.minimal.deg_t()}, {mp.minimal.deg_z()})", divides_z(mp.minimal, res.Lambda))
        r = radius(res.Lambda, cogrowth_sequence(row.spec, RADIUS_TERMS).as_series())
        rep.add(f"{row.name} radius", f"published {row.rho_text}", f"{r.rho:.12f}", abs(r.rho - row.rho) <= RADIUS_TOL)
    return rep


def verify_thm12(N: int = CHECK_ORDER) -> VerificationReport:
    rep = VerificationReport("thm12")
    for d, m in THM12_GRID:
        want = cogrowth_sequence(cyclic_family(d, m), N).values
        got = hensel_series(cyclic_equation(d, m), N).coeffs
        rep.add(f"cyclic d={d} m={m}", "walk count", f"through t^{N}", tuple(got) == want)
    for m, s in THM12_MIXED:
        spec = z2_free(m, s)
        got = tuple(hensel_series(z2_free_equation(m, s), N).coeffs)
        a = cogrowth_sequence(spec, N).values
        b = cogrowth_sequence(z_to_z2z2(spec), N).values
        rep.add(f"mixed m={m} s={s}", "walk count of both presentations", f"through t^{N}", got == a == b)
    for n in (3, 4, 5):
        got = tuple(z2_zn_series(n, N).coeffs)
        rep.add(f"Z2*Z{n} auxiliary series", "walk count", f"through t^{N}", got == cogrowth_sequence(z2_zn(n), N).values)
        _, mp = spec_minimal_polynomial(z2_zn(n), N)
        if n == 5:
            rep.add("Z2*Z5 minimal polynomial", "published display with D on the linear term",
                    mp.minimal, mp.minimal == n5_with_linear_coefficient().normalize())
        else:
            rep.add(f"Z2*Z{n} minimal polynomial", "published display",
                    mp.minimal, mp.minimal == printed_minimal_polynomial(n).normalize())
    return rep


def gap_fixtures() -> list:
    """(name, spec) pairs covered by the gap check."""
    out = [(f"(Z{d})^*{m}", cyclic_family(d, m)) for d in (2, 3, 4) for m in (2, 3)]
    out += [(f"(Z2)^*{m} * Z^*{s}", z2_free(m, s)) for m, s in THM12_MIXED]
    out += [(f"Z2*Z{n}", z2_zn(n)) for n in range(3, 8)]
    out += [(f"Z2*Z{n} symmetric", z2_zn(n, symmetric=True)) for n in (3, 4, 5)]
    out += [
        ("Z", FreeProductSpec((z_factor(),))),
        ("Z2", FreeProductSpec((cyclic_factor(2),))),
        ("Z3 symmetric", FreeProductSpec((cyclic_factor(3, (1, 2)),))),
    ]
    return out


def gap_verdict(spec: FreeProductSpec):
    r = spec_radius(spec)
    return r, gap_check(r.selected.reciprocal(), symmetric=spec.symmetric)


def verify_gap(fixtures=None) -> VerificationReport:
    rep = VerificationReport("gap")
    for name, spec in fixtures or gap_fixtures():
        r, v = gap_verdict(spec)
        rep.add(f"{name}: 1/rho = {1 / r.rho:.10f}", "gap classification", v.verdict, v.ok)
    return rep


def verify_cyclic_radii() -> VerificationReport:
    rep = VerificationReport("cyclic radii")
    for d in (2, 3, 4, 5):
        for m in (2, 3, 4):
            r = radius(cyclic_equation(d, m), cogrowth_sequence(cyclic_family(d, m), RADIUS_TERMS).as_series())
            c = cyclic_radius(d, m)
            rep.add(f"d={d} m={m}", c.expression, f"{r.rho:.12f}", abs(r.rho - c.value) <= RADIUS_TOL)
    return rep


FIXTURE_SETS = {
    "table1": verify_table1,
    "thm12": verify_thm12,
    "gap": verify_gap,
}


def run_fixture_set(name: str) -> VerificationReport:
    if name not in FIXTURE_SETS:
        raise DomainError(f"unknown fixture set {name!r}; choose from {', '.join(FIXTURE_SETS)}")
    return FIXTURE_SETS[name]()


# -- random symmetric products ------------------------------------------------------

def _random_group(rng: random.Random, max_order: int):
    """A random group of order <= max_order as a multiplication table (cyclic or Klein four)."""
    kinds = [("cyclic", d) for d in range(2, max_order + 1)]
    if max_order >= 4:
        kinds.append(("klein", 4))
    kind, d = rng.choice(kinds)
    if kind == "cyclic":
        mul = [[(a + b) % d for b in range(d)] for a in range(d)]
    else:
        mul = [[a ^ b for b in range(4)] for a in range(4)]
    return mul


def _symmetric_gens(rng: random.Random, mul: list) -> list:
    n = len(mul)
    inv = [next(b for b in range(n) if mul[a][b] == 0) for a in range(n)]
    while True:
        picks = set()
        for a in range(1, n):
            if rng.random() < 0.5:
                picks.update({a, inv[a]})
        if not picks:
            continue
        # must generate
        seen, frontier = {0}, [0]
        while frontier:
            x = frontier.pop()
            for s in picks:
                y = mul[x][s]
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        if len(seen) == n:
            return sorted(picks)


def random_symmetric_product(rng: random.Random, max_order: int = 5, max_gens: int = 6, max_factors: int = 3) -> FreeProductSpec:
    """A free product of small finite groups with a symmetric generating set of size <= max_gens."""
    while True:
        k = rng.randint(2, max_factors)
        factors = []
        for _ in range(k):
            mul = _random_group(rng, max_order)
            factors.append(table_factor(mul, _symmetric_gens(rng, mul)))
        spec = FreeProductSpec(tuple(factors))
        if len(spec.alphabet) <= max_gens:
            return spec
