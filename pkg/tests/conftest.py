from __future__ import annotations

from hypothesis import HealthCheck, settings

from cogrowth.fixtures import TABLE1
from cogrowth.groups import (
    FreeProductSpec, cyclic_factor, cyclic_family, table_factor, z2_free, z2_zn, z_factor,
)

settings.register_profile("suite", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("suite")

KLEIN = [[a ^ b for b in range(4)] for a in range(4)]


def fixture_specs() -> list:
    """(name, spec) for every group the suite exercises end to end."""
    out = [(row.name, row.spec) for row in TABLE1]
    out += [(f"(Z{d})^*{m}", cyclic_family(d, m)) for d in (2, 3, 4) for m in (2, 3)]
    out += [(f"(Z2)^*{m} * Z^*{s}", z2_free(m, s)) for m, s in [(0, 1), (0, 2), (2, 1)]]
    out += [(f"Z2*Z{n} symmetric", z2_zn(n, symmetric=True)) for n in (3, 4)]
    out += [
        ("Z4{x,x^3}^*2 * Z", FreeProductSpec((cyclic_factor(4, (1, 3), 2), z_factor()))),
        ("Klein{a,b} * Z3", FreeProductSpec((table_factor(KLEIN, [1, 2]), cyclic_factor(3)))),
        ("Z5{x,x^2} * Z3{x}", FreeProductSpec((cyclic_factor(5, (1, 2)), cyclic_factor(3)))),
    ]
    return out


FIXTURES = fixture_specs()
FINITE_FIXTURES = [(n, s) for n, s in FIXTURES if not s.has_infinite]
