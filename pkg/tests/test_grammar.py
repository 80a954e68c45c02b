from __future__ import annotations

import json

import pytest

from cogrowth.algebra.series import TruncatedSeries
from cogrowth.errors import DomainError
from cogrowth.grammar import (
    RULES, build_system, export_system, series_from_json_system, solve_all, solve_system_series,
)
from cogrowth.groups import FreeProductSpec, cyclic_factor, cyclic_family, table_factor, z2_free
from cogrowth.oracle import cogrowth_sequence

from conftest import FIXTURES, KLEIN

GRAMMAR_FIXTURES = FIXTURES


@pytest.mark.parametrize("name,spec", GRAMMAR_FIXTURES, ids=[n for n, _ in GRAMMAR_FIXTURES])
@pytest.mark.parametrize("symmetry,shortcut", [(False, False), (True, True)])
def test_series_equals_walk_count(name, spec, symmetry, shortcut):
    sys_ = build_system(spec, symmetry=symmetry, shortcut=shortcut)
    assert tuple(solve_system_series(sys_, 14).coeffs) == cogrowth_sequence(spec, 14).values


def test_z2_times_z_system():
    sys_ = build_system(z2_free(1, 1), symmetry=True)
    assert len(sys_) == 10
    assert list(solve_system_series(sys_, 6).coeffs) == [1, 0, 3, 0, 15, 0, 87]
    assert len(export_system(sys_).splitlines()) == 10


def test_single_z2_is_geometric():
    sys_ = build_system(FreeProductSpec((cyclic_factor(2),)))
    N = 10
    want = (1 - TruncatedSeries.gen(N) ** 2).inverse()
    assert solve_system_series(sys_, N).coeffs == want.coeffs


@pytest.mark.parametrize("d,m", [(2, 3), (3, 2), (3, 3), (4, 2)])
def test_cyclic_family_relations(d, m):
    sys_ = build_system(cyclic_family(d, m), symmetry=True, shortcut=True)
    names = {sys_.name(k): k for k in sys_.unknowns}
    N = 16
    vals = solve_all(sys_, N)
    x = "x1" if m > 1 else "x"
    A = vals[names[f"F[1,{{{x}}}]"]]
    B = vals[names[f"F[1,{{1,{x}}}]"]]
    inv = f"{x}^{d - 1}" if d > 2 else x
    C = vals[names[f"F[{inv},{{{inv}}}]"]]
    T = TruncatedSeries.gen(N)
    assert (A * (2 - B)).coeffs == TruncatedSeries([1], N).coeffs
    assert B.coeffs == (1 + (m - 1) * T * C).coeffs
    assert C.coeffs == (T ** (d - 1) * A ** (d - 1)).coeffs


def _eval_term(term, vals, N):
    acc = TruncatedSeries([0] * term.tpow + [term.coeff], N)
    for k in term.keys:
        acc = acc * vals[k]
    return acc


@pytest.mark.parametrize("name,spec", GRAMMAR_FIXTURES[:8], ids=[n for n, _ in GRAMMAR_FIXTURES[:8]])
def test_solution_satisfies_every_equation(name, spec):
    N = 10
    sys_ = build_system(spec)
    vals = solve_all(sys_, N)
    for e in sys_.equations:
        rhs = TruncatedSeries([0], N)
        for term in e.terms:
            rhs = rhs + _eval_term(term, vals, N)
        assert rhs.coeffs == vals[e.lhs].coeffs, sys_.name(e.lhs)


def _expected_rule(sys_, key):
    if key.tag is None:
        return RULES[3] if key.X else RULES[2]
    f = sys_.spec.factors[key.tag[0]]
    one = 0 if f.is_infinite else f.group.identity
    g_one = key.g == one
    one_in = one in key.X
    return {(False, True): RULES[0], (False, False): RULES[1], (True, False): RULES[2], (True, True): RULES[3]}[(g_one, one_in)]


@pytest.mark.parametrize("name,spec", GRAMMAR_FIXTURES, ids=[n for n, _ in GRAMMAR_FIXTURES])
def test_each_unknown_gets_exactly_one_rule(name, spec):
    sys_ = build_system(spec)
    lhs = [e.lhs for e in sys_.equations]
    assert len(lhs) == len(set(lhs))
    for e in sys_.equations:
        assert e.rule == _expected_rule(sys_, e.lhs)


def test_factor_order_does_not_matter():
    a = FreeProductSpec((table_factor(KLEIN, [1, 2]), cyclic_factor(3, (1, 2), 2)))
    b = FreeProductSpec((cyclic_factor(3, (1, 2), 2), table_factor(KLEIN, [1, 2])))
    sa = solve_system_series(build_system(a), 12)
    sb = solve_system_series(build_system(b), 12)
    assert sa.coeffs == sb.coeffs


def test_export_formats():
    sys_ = build_system(FreeProductSpec((cyclic_factor(1, ()),)))
    assert export_system(sys_) == "F[1,{}] = 1\n"
    z3 = build_system(cyclic_family(3, 2))
    obj = json.loads(export_system(z3, "json"))
    assert len(obj["unknowns"]) <= 3 * 2 ** 3 * 2
    assert series_from_json_system(obj, 12).coeffs == solve_system_series(z3, 12).coeffs
    with pytest.raises(DomainError):
        export_system(z3, "xml")


def test_identity_letters_are_rejected():
    with pytest.raises(DomainError):
        build_system(FreeProductSpec((cyclic_factor(3, (0, 1), 1, True),)))
