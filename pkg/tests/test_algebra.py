from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cogrowth.algebra.poly import BivariatePoly, UniPoly
from cogrowth.algebra.ratfunc import RatFunc, RatFuncMatrix, charpoly
from cogrowth.algebra.resultant import (
    discriminant, divides_z, gcd_z, resultant, squarefree_z,
)
from cogrowth.algebra.series import TruncatedSeries
from cogrowth.errors import DomainError
from cogrowth.fixtures import PRINTED_DISCRIMINANT_Z2Z3, printed_minimal_polynomial

t, z = BivariatePoly.t(), BivariatePoly.z()

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)
unipolys = st.lists(small, max_size=9).map(UniPoly)
nonzero_unipolys = unipolys.filter(lambda p: not p.is_zero())
bipolys = st.lists(st.lists(small, max_size=4), max_size=4).map(lambda rows: BivariatePoly([UniPoly(r) for r in rows]))


# -- polynomials ------------------------------------------------------------------

@given(unipolys, unipolys, unipolys)
def test_unipoly_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a - a == UniPoly(())


@given(bipolys, bipolys, bipolys)
def test_bivariate_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(unipolys, nonzero_unipolys)
def test_divmod_reconstructs(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.degree() < b.degree()


@given(nonzero_unipolys, nonzero_unipolys, nonzero_unipolys)
def test_gcd_divides_and_contains_common_factor(a, b, c):
    g = (a * c).gcd(b * c)
    assert (a * c % g).is_zero() and (b * c % g).is_zero()
    assert (g % c.monic()).is_zero()


def test_unipoly_basics():
    p = UniPoly([1, -3, 0, 2])
    assert p.degree() == 3 and p.lc() == 2
    assert p(2) == 11
    assert p.deriv() == UniPoly([-3, 0, 6])
    assert UniPoly([0, 0]).is_zero()
    assert UniPoly([2, 4]).primitive() == UniPoly([1, 2])
    assert str(UniPoly([1, 0, -1])) in ("-t^2 + 1", "1 - t^2")


def test_squarefree_part():
    p = UniPoly([-1, 1]) ** 3 * UniPoly([1, 1])
    assert p.squarefree().monic() == (UniPoly([-1, 1]) * UniPoly([1, 1])).monic()


def test_bivariate_json_round_trip():
    p = printed_minimal_polynomial(3) * Fraction(3, 7)
    assert BivariatePoly.from_json(p.to_json()) == p
    with pytest.raises(DomainError):
        BivariatePoly.from_json({"terms": [[0, "x", "1"]]})


# -- resultants -------------------------------------------------------------------

def test_resultant_of_z2_minus_t_and_2z():
    r = resultant(z ** 2 - t, 2 * z)
    assert r in (UniPoly([0, 4]), UniPoly([0, -4]))


def test_discriminant_of_quadratic_has_factor_8t2_minus_1():
    p = (9 * t ** 2 - 1) * z ** 2 - z + 2
    d = discriminant(p)
    assert d == UniPoly([9, 0, -72])
    assert (d % UniPoly([-1, 0, 8])).is_zero()
    # resultant with the derivative differs from the discriminant by the leading coefficient
    r = resultant(p, p.diff_z())
    assert r == d * p.lc_z() or r == -(d * p.lc_z())


def test_discriminant_of_printed_cubic():
    d = discriminant(printed_minimal_polynomial(3))
    ratio = Fraction(d.lc()) / PRINTED_DISCRIMINANT_Z2Z3.lc()
    assert d == PRINTED_DISCRIMINANT_Z2Z3 * ratio
    assert PRINTED_DISCRIMINANT_Z2Z3.valuation() == 3
    assert PRINTED_DISCRIMINANT_Z2Z3.degree() - 3 == 13


@given(nonzero_unipolys, nonzero_unipolys, nonzero_unipolys)
def test_quadratic_discriminant_matches_direct_formula(a, b, c):
    p = BivariatePoly([c, b, a])
    assert discriminant(p) == b * b - a * c * 4


def test_divides_and_gcd_in_z():
    f = (9 * t ** 2 - 1) * z ** 2 - z + 2
    g = z - t
    assert divides_z(f, f * g)
    assert not divides_z(g, f)
    assert divides_z(gcd_z(f * g, f * (z + 1)), f)
    assert divides_z(f, gcd_z(f * g, f * (z + 1)))
    assert squarefree_z(f * f * g).deg_z() == 3


# -- rational functions and characteristic polynomials -------------------------

def test_charpoly_examples():
    f = RatFunc(UniPoly([1, 2]), UniPoly([1, -1]))
    assert charpoly(RatFuncMatrix([[f]])) == [-f, RatFunc(1)]
    assert charpoly(RatFuncMatrix.identity(2)) == [RatFunc(1), RatFunc(-2), RatFunc(1)]
    # companion matrix of x^2 - x + 2
    assert charpoly(RatFuncMatrix([[0, -2], [1, 1]])) == [RatFunc(2), RatFunc(-1), RatFunc(1)]


ratfuncs = st.tuples(st.lists(small, max_size=3), st.lists(small, min_size=1, max_size=3)).filter(
    lambda nd: any(nd[1])).map(lambda nd: RatFunc(UniPoly(nd[0]), UniPoly(nd[1])))


@given(ratfuncs.filter(lambda r: not r.is_zero()), ratfuncs.filter(lambda r: not r.is_zero()))
def test_ratfunc_reciprocal(a, b):
    assert (a / b) * (b / a) == RatFunc(1)


@given(st.integers(2, 3).flatmap(lambda n: st.lists(st.lists(ratfuncs, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_cayley_hamilton(rows):
    M = RatFuncMatrix(rows)
    cp = charpoly(M)
    assert cp[-1] == RatFunc(1)
    assert M.eval_poly(cp).is_zero()


# -- series -----------------------------------------------------------------------

def test_series_examples():
    T = TruncatedSeries.gen(6)
    f = 4 / (1 + 3 * (1 - 8 * T * T).sqrt())
    assert list(f.coeffs) == [1, 0, 3, 0, 15, 0, 87]
    assert list((1 / (1 - TruncatedSeries.gen(3))).coeffs) == [1, 1, 1, 1]
    T4 = TruncatedSeries.gen(4)
    assert list((1 - 4 * T4 * T4).sqrt().coeffs) == [1, 0, -2, 0, -2]


def test_sqrt_against_binomial_series():
    N = 12
    s = (1 - 4 * TruncatedSeries.gen(N)).sqrt()
    want = [Fraction(math.comb(2 * k, k), 1 - 2 * k) for k in range(N + 1)]
    assert list(s.coeffs) == want


@given(st.lists(small, min_size=1, max_size=12))
def test_series_inverse_round_trip(cs):
    f = TruncatedSeries([1] + cs)
    one = f * f.inverse()
    assert list(one.coeffs) == [1] + [0] * f.order


def test_series_compose_and_shift():
    T = TruncatedSeries.gen(6)
    g = 1 / (1 - T)
    h = g.compose(T * T)
    assert list(h.coeffs) == [1, 0, 1, 0, 1, 0, 1]
    with pytest.raises(DomainError):
        TruncatedSeries([0, 1]).inverse()
