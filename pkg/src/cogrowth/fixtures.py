"""Vendored reference data: published cogrowth terms, radii and minimal polynomials."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .algebra.poly import BivariatePoly, UniPoly
from .groups import FreeProductSpec, cyclic_family, z2_free, z2_zn


@dataclass(frozen=True)
class TableRow:
    """Published initial terms; term k of ``terms`` is a_(k * stride)."""

    name: str
    build: Callable[[], FreeProductSpec]
    terms: tuple
    rho_text: str
    rho: float
    oeis: str | None = None
    stride: int = 1

    @property
    def spec(self) -> FreeProductSpec:
        return self.build()

    @property
    def n_max(self) -> int:
        return (len(self.terms) - 1) * self.stride

    @property
    def finite(self) -> bool:
        return not self.spec.has_infinite


TABLE1 = (
    TableRow("Z2*Z2", lambda: cyclic_family(2, 2),
             (1, 0, 2, 0, 6, 0, 20, 0, 70, 0, 252, 0, 924, 0, 3432, 0, 12870, 0, 48620, 0, 184756),
             "1/2", 0.5, "A126869"),
    TableRow("Z3*Z3", lambda: cyclic_family(3, 2),
             (1, 0, 0, 2, 0, 0, 8, 0, 0, 38, 0, 0, 196, 0, 0, 1062, 0, 0, 5948, 0, 0, 34120),
             "2^(2/3)/3", 2 ** (2 / 3) / 3, "A047098"),
    TableRow("Z4*Z4", lambda: cyclic_family(4, 2),
             (1, 0, 0, 0, 2, 0, 0, 0, 10, 0, 0, 0, 62, 0, 0, 0, 426, 0, 0, 0, 3112, 0, 0, 0, 23686),
             "3^(3/4)/4", 3 ** (3 / 4) / 4, "A107026"),
    TableRow("Z5*Z5", lambda: cyclic_family(5, 2),
             (1, 0, 0, 0, 0, 2, 0, 0, 0, 0, 12, 0, 0, 0, 0, 92, 0, 0, 0, 0, 792, 0, 0, 0, 0, 7302),
             "4^(4/5)/5", 4 ** (4 / 5) / 5, "A304979"),
    TableRow("Z2*Z3", lambda: z2_zn(3),
             (1, 0, 1, 1, 1, 5, 2, 14, 13, 31, 66, 77, 240, 286, 722, 1226, 2141, 4760, 7268, 16473),
             ".5072330945", 0.5072330945, "A265434"),
    TableRow("Z2*Z4", lambda: z2_zn(4),
             (1, 0, 1, 0, 2, 0, 7, 0, 22, 0, 66, 0, 209, 0, 687, 0, 2278, 0, 7612, 0),
             ".5171996045", 0.5171996045),
    TableRow("Z2*Z5", lambda: z2_zn(5),
             (1, 0, 1, 0, 1, 1, 1, 7, 1, 27, 2, 77, 19, 182, 148, 379, 793, 748, 3268, 1729),
             ".5259851993", 0.5259851993),
    TableRow("Z2*Z6", lambda: z2_zn(6),
             (1, 0, 1, 0, 1, 0, 2, 0, 9, 0, 36, 0, 114, 0, 316, 0, 873, 0, 2636, 0),
             ".5333879707", 0.5333879707),
    TableRow("Z2*Z7", lambda: z2_zn(7),
             (1, 0, 1, 0, 1, 0, 1, 1, 1, 9, 1, 44, 1, 156, 2, 450, 25, 1122, 262, 2508, 1851, 5149),
             ".5396278153", 0.5396278153),
    TableRow("Z2*Z", lambda: z2_free(1, 1),
             (1, 3, 15, 87, 543, 3543, 23823, 163719, 1143999, 8099511, 57959535, 418441191),
             "1/(2*sqrt(2))", 1 / (2 * 2 ** 0.5), "A089022", stride=2),
)


def table_row(name: str) -> TableRow:
    for row in TABLE1:
        if row.name == name:
            return row
    raise KeyError(name)


# a_(k d) for (Z/d)^{*m} as polynomials in m, k = 0, 1, ...
FAMILY_TERMS = {
    2: (UniPoly([1], "m"), UniPoly([0, 1], "m"), UniPoly([0, -1, 2], "m"),
        UniPoly([0, 2, -6, 5], "m"), UniPoly([0, -5, 20, -28, 14], "m")),
    3: (UniPoly([1], "m"), UniPoly([0, 1], "m"), UniPoly([0, -2, 3], "m"), UniPoly([0, 7, -18, 12], "m")),
    4: (UniPoly([1], "m"), UniPoly([0, 1], "m"), UniPoly([0, -3, 4], "m"), UniPoly([0, 15, -36, 22], "m")),
    5: (UniPoly([1], "m"), UniPoly([0, 1], "m"), UniPoly([0, -4, 5], "m"), UniPoly([0, 26, -60, 35], "m")),
}


# -- published minimal polynomials for Z/2 * Z/n with S = {x, y} --------------------

def _tz():
    return BivariatePoly.t(), BivariatePoly.z()


def printed_minimal_polynomial(n: int) -> BivariatePoly:
    """The displayed polynomial for n = 3, 4, 5, transcribed term by term."""
    t, Z = _tz()
    one = BivariatePoly.constant(1)
    if n == 3:
        return (((t - 1) ** 3 + t ** 3) * ((t + 1) ** 3 - t ** 3) * Z ** 3
                + (t ** 5 - t ** 4 + t ** 3 + 2 * t ** 2 - 1) * Z ** 2
                + (t ** 3 - t ** 2 + 1) * Z + one)
    if n == 4:
        return ((t ** 4 - (t - 1) ** 4) * ((t + 1) ** 4 - t ** 4) * Z ** 4
                + 2 * (4 * t ** 6 - 2 * t ** 4 + 3 * t ** 2 - 1) * Z ** 3
                + t ** 4 * (t ** 2 + 3) * Z ** 2
                + (t ** 4 - 2 * t ** 2 + 2) * Z + one)
    if n == 5:
        A, B, C, _ = _n5_coefficients()
        return (((t - 1) ** 5 + t ** 5) * ((t + 1) ** 5 - t ** 5) * Z ** 5
                + A * Z ** 4 + B * Z ** 3 + C * Z ** 2 + Z + one)
    raise KeyError(n)


def _n5_coefficients():
    t, _ = _tz()
    A = 3 * (t ** 9 - t ** 8 + 6 * t ** 7 + 4 * t ** 6 + t ** 5 - 6 * t ** 4 + 4 * t ** 2 - 1)
    B = 2 * (4 * t ** 7 + t ** 6 + 3 * t ** 5 - 3 * t ** 4 + 3 * t ** 2 - 1)
    C = t ** 7 + 4 * t ** 5 + 2 * t ** 4 - 4 * t ** 2 + 2
    D = t ** 5 - 3 * t ** 2 + 3
    return A, B, C, D


def n5_with_linear_coefficient() -> BivariatePoly:
    """The n = 5 display with its defined-but-unused D placed on the linear term."""
    t, Z = _tz()
    A, B, C, D = _n5_coefficients()
    return (((t - 1) ** 5 + t ** 5) * ((t + 1) ** 5 - t ** 5) * Z ** 5
            + A * Z ** 4 + B * Z ** 3 + C * Z ** 2 + D * Z + BivariatePoly.constant(1))


# Discriminant of the n = 3 polynomial as displayed (times t^3).
PRINTED_DISCRIMINANT_Z2Z3 = UniPoly(
    [0, 0, 0, 64, 0, -64, -160, -128, -512, 260, -752, 404, -392, 164, -4, -8, 1])
