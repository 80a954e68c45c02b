from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest

from cogrowth.algebra.poly import BivariatePoly, UniPoly
from cogrowth.algebra.resultant import divides_z
from cogrowth.composer import (
    FactorRational, annihilates, compose, compose_spec, cyclic_equation, degree_bound, factor_rational,
    lambda_poly, spec_factor_rationals, z2_zn_system,
)
from cogrowth.errors import DomainError, InconsistencyError
from cogrowth.groups import (
    FiniteGroupTable, FreeProductSpec, GeneratingSet, cyclic_factor, cyclic_family, z2_free, z2_zn,
)
from cogrowth.oracle import cogrowth_sequence, finite_group_moments
from cogrowth.solver import series_root
from cogrowth.verify import spec_minimal_polynomial

from conftest import FIXTURES

t, z = BivariatePoly.t(), BivariatePoly.z()


def _factor(d, gens):
    g = FiniteGroupTable.cyclic(d)
    return g, GeneratingSet(g, gens)


@pytest.mark.parametrize("d,gens,P,Q", [
    (2, (1,), [1], [1, 0, -1]),
    (3, (1,), [1], [1, 0, 0, -1]),
    (3, (1, 2), [1, -1], [1, -1, -2]),
])
def test_factor_rational(d, gens, P, Q):
    f = factor_rational(*_factor(d, gens))
    assert (f.P, f.Q) == (UniPoly(P), UniPoly(Q))


def test_lambda_poly_examples():
    assert lambda_poly(FactorRational(UniPoly([1]), UniPoly([1, 0, -1]))) == 1 - z ** 2 - t * z
    assert lambda_poly(FactorRational(UniPoly([1]), UniPoly([1, 0, 0, -1]))) == 1 - z ** 3 - t * z
    want = (1 - z - 2 * z ** 2) - t * z * (1 - z)
    assert lambda_poly(FactorRational(UniPoly([1, -1]), UniPoly([1, -1, -2]))) == want


@pytest.mark.parametrize("d,gens", [(2, (1,)), (3, (1,)), (3, (1, 2))])
def test_lambda_root_matches_moment_series(d, gens):
    # lambda(t, z) = 0 means t z M(z) = 1 for the moment series M
    g, s = _factor(d, gens)
    f = factor_rational(g, s)
    lam = lambda_poly(f)
    t0 = 0.1
    p = [complex(c) for c in reversed(lam.eval_t(Fraction(1, 10)).coeffs)]
    roots = [r.real for r in np.roots(p) if abs(r.imag) < 1e-12 and r.real > 0]
    z0 = min(roots)
    m = finite_group_moments(g, s, 4000)
    M = sum(math.exp(math.log(a) + k * math.log(z0)) for k, a in enumerate(m) if a)
    assert abs(t0 * z0 * M - 1) < 1e-10


def test_degree_bound_examples():
    assert degree_bound([(2, 5)]) == 3
    assert degree_bound([(3, 1)]) == 4
    assert degree_bound([(2, 1), (3, 1)]) == 11
    with pytest.raises(DomainError):
        degree_bound([(0, 1)])


def _z2():
    return factor_rational(*_factor(2, (1,)))


def test_compose_examples():
    z2 = _z2()
    assert divides_z(cyclic_equation(2, 3), compose([(z2, 3)]).Lambda)
    assert compose([(z2, 2)]).Lambda == (4 * t ** 2 * z ** 2 - z ** 2 + 1).normalize()
    z3 = factor_rational(*_factor(3, (1,)))
    assert divides_z(8 * t ** 3 * z ** 3 - (z - 1) * (z + 1) ** 2, compose([(z3, 2)]).Lambda)


def test_cyclic_equation_examples():
    assert cyclic_equation(2, 2) == 4 * t ** 2 * z ** 2 - z ** 2 + 1
    assert cyclic_equation(2, 3) == 9 * t ** 2 * z ** 2 - z ** 2 - z + 2
    assert cyclic_equation(3, 2) == 8 * t ** 3 * z ** 3 - (z - 1) * (z + 1) ** 2
    with pytest.raises(DomainError):
        cyclic_equation(1, 2)


@pytest.mark.parametrize("d,m", [(d, m) for d in (2, 3, 4) for m in (2, 3, 4)])
def test_cyclic_equation_divides_composed(d, m):
    f = factor_rational(*_factor(d, (1,)))
    assert divides_z(cyclic_equation(d, m), compose([(f, m)]).Lambda)


@pytest.mark.parametrize("name,spec", FIXTURES, ids=[n for n, _ in FIXTURES])
def test_annihilates_walk_count_within_bounds(name, spec):
    res = compose_spec(spec, 14)
    series = cogrowth_sequence(spec, 14).as_series()
    assert annihilates(res.Lambda, series, 14)
    assert res.Lambda.deg_t() <= res.bound and res.Lambda.deg_z() <= res.bound


@pytest.mark.parametrize("d,gens", [(2, (1,)), (3, (1,)), (3, (1, 2)), (4, (1, 3)), (5, (1, 2))])
def test_single_factor_annihilates_its_own_series(d, gens):
    f = factor_rational(*_factor(d, gens))
    res = compose([(f, 1)], 20, f.series(20))
    # clear denominators: sum_j c_j(t) P^j Q^(D-j) must vanish identically
    L = res.Lambda
    D = L.deg_z()
    P = BivariatePoly.from_t_poly(f.P)
    Q = BivariatePoly.from_t_poly(f.Q)
    total = BivariatePoly()
    for j in range(D + 1):
        total = total + BivariatePoly.from_t_poly(L.zcoeff(j)) * P ** j * Q ** (D - j)
    assert total.is_zero()


def test_compose_is_order_independent():
    a = factor_rational(*_factor(2, (1,)))
    b = factor_rational(*_factor(3, (1, 2)))
    c = factor_rational(*_factor(4, (1,)))
    L1 = compose([(a, 1), (b, 1), (c, 1)], 10, cogrowth_sequence(_spec3(), 10).as_series()).Lambda
    L2 = compose([(c, 1), (a, 1), (b, 1)], 10, cogrowth_sequence(_spec3(), 10).as_series()).Lambda
    assert L1.normalize() == L2.normalize()


def _spec3():
    return FreeProductSpec((cyclic_factor(2), cyclic_factor(3, (1, 2)), cyclic_factor(4)))


def test_compose_rejects_wrong_series():
    z2 = _z2()
    wrong = cogrowth_sequence(cyclic_family(2, 3), 14).as_series()
    with pytest.raises(InconsistencyError):
        compose([(z2, 2)], 14, wrong)


@pytest.mark.parametrize("n,terms", [
    (3, [1, 0, 1, 1, 1, 5, 2, 14]),
    (4, [1, 0, 1, 0, 2, 0, 7, 0, 22]),
    (2, [1, 0, 2, 0, 6]),
])
def test_z2_zn_auxiliary_series(n, terms):
    sys_ = z2_zn_system(n)
    D = series_root(sys_.d_equation, sys_.prefix, len(terms) - 1)
    assert list(sys_.f_from_d(D).coeffs) == terms


@pytest.mark.parametrize("n", [3, 4, 5])
def test_minimal_leading_coefficient(n):
    _, mp = spec_minimal_polynomial(z2_zn(n))
    T = UniPoly([0, 1])
    want = -(((T + 1) ** n - T ** n) * ((1 - T) ** n - T ** n))
    lc = mp.minimal.lc_z()
    assert lc * want.lc() == want * lc.lc()


def test_spec_factor_rationals_converts_z():
    rats = spec_factor_rationals(z2_free(1, 1))
    assert sum(m for _, m in rats) == 3
    assert all(f.Q == UniPoly([1, 0, -1]) for f, _ in rats)
