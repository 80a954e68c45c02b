from __future__ import annotations

import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cogrowth.errors import DomainError
from cogrowth.groups import (
    FiniteGroupTable, FreeProductSpec, cyclic_factor, cyclic_family, evaluate_word, inverse_letter,
    min_return_length, nf_multiply, nf_product, spec_from_json, spec_to_json, table_factor, z2_free,
    z2_zn, z_factor, z_to_z2z2,
)
from cogrowth.oracle import cogrowth_sequence

from conftest import FIXTURES, KLEIN


def test_nf_multiply_examples():
    s = cyclic_family(2, 2)
    x1 = s.alphabet[0]
    e = nf_multiply(s, (), x1)
    assert e == (((0, 0), 1),)
    assert nf_multiply(s, e, x1) == ()
    s3 = cyclic_family(3, 2)
    x = s3.alphabet[0]
    e = nf_multiply(s3, nf_multiply(s3, (), x), x)
    assert e == (((0, 0), 2),)
    assert nf_multiply(s3, e, x) == ()


def test_min_return_length_examples():
    assert min_return_length(cyclic_family(2, 2), ()) == 0
    assert min_return_length(cyclic_family(2, 2), (((0, 0), 1),)) == 1
    z5 = FreeProductSpec((cyclic_factor(5),))
    assert min_return_length(z5, (((0, 0), 1),)) == 4


def test_z_to_z2z2_examples():
    z = FreeProductSpec((z_factor(),))
    assert z_to_z2z2(z) == cyclic_family(2, 2)
    image = z_to_z2z2(z2_free(1, 1))
    assert all(f.group.order == 2 and f.gens.elements == (1,) for f in image.factors)
    assert sum(f.multiplicity for f in image.factors) == 3
    s = cyclic_family(3, 2)
    assert z_to_z2z2(s) == s


def test_group_table_validation():
    with pytest.raises(DomainError):
        FiniteGroupTable([[0, 1], [1, 1]])
    with pytest.raises(DomainError):
        FiniteGroupTable([[0, 1, 2], [1, 2, 0]])
    with pytest.raises(DomainError):
        cyclic_factor(3, (0,))
    assert cyclic_factor(3, (0, 1), allow_identity=True).gens.elements == (0, 1)
    with pytest.raises(DomainError):
        table_factor(KLEIN, [1])  # does not generate


def _specs():
    return st.sampled_from([s for _, s in FIXTURES])


@given(_specs(), st.data())
def test_word_evaluation_is_associative(spec, data):
    word = data.draw(st.lists(st.sampled_from(spec.alphabet), max_size=12))
    cut = data.draw(st.integers(0, len(word)))
    whole = evaluate_word(spec, word)
    assert nf_product(spec, evaluate_word(spec, word[:cut]), evaluate_word(spec, word[cut:])) == whole


@pytest.mark.parametrize("name,spec", FIXTURES, ids=[n for n, _ in FIXTURES])
def test_letter_then_inverse_is_identity(name, spec):
    rng = random.Random(len(name))
    for _ in range(1000):
        state = evaluate_word(spec, rng.choices(spec.alphabet, k=rng.randint(0, 8)))
        s = rng.choice(spec.alphabet)
        inv = inverse_letter(spec, s)
        if inv is None:
            continue
        assert nf_multiply(spec, nf_multiply(spec, state, s), inv) == state


@pytest.mark.parametrize("spec", [z2_free(1, 1), z2_free(0, 2), z2_free(2, 1),
                                  FreeProductSpec((cyclic_factor(4, (1, 3), 2), z_factor()))])
def test_z_substitution_keeps_cogrowth(spec):
    assert cogrowth_sequence(spec, 12).values == cogrowth_sequence(z_to_z2z2(spec), 12).values


def test_spec_json_round_trip():
    for _, spec in FIXTURES:
        obj = spec_to_json(spec)
        assert spec_from_json(json.loads(json.dumps(obj))) == spec
    raw = {"factors": [{"kind": "cyclic", "order": 3, "gens": ["x", "x^-1"], "multiplicity": 2},
                       {"kind": "table", "mul": KLEIN, "gens": [1, 2]},
                       {"kind": "Z", "multiplicity": 1}]}
    spec = spec_from_json(raw)
    assert len(spec.alphabet) == 4 + 2 + 2
    assert spec.symmetric


@pytest.mark.parametrize("bad", [
    {"factors": [{"kind": "cyclic", "order": 0}]},
    {"factors": [{"kind": "dihedral"}]},
    {"factors": [{"kind": "cyclic", "order": 3, "multiplicity": -1}]},
    {"factors": [{"kind": "cyclic", "order": 1, "gens": ["x^0"]}]},
    {"nope": []},
])
def test_spec_json_rejects(bad):
    with pytest.raises(DomainError):
        spec_from_json(bad)


def test_nonsymmetric_sets_are_supported():
    s = z2_zn(3)
    assert not s.symmetric and len(s.alphabet) == 2
    assert z2_zn(3, symmetric=True).symmetric
