"""Finite composition tables: validation, generalized cycles, and the
truncated exports of the big path category."""

import itertools

from pathcat.cat_paths import compose, constant_k, entrance_witness, mce
from pathcat.finite_cat import (
    category_from_json, category_json, common_extensions, example2,
    generalized_cycles, is_generalized_cycle, lambda_truncation,
    trivial_category, validate, with_inverse,
)

ONES = constant_k(1)


def test_example2_validates():
    rep = validate(example2())
    assert rep.ok, rep.violations


def test_example2_cycles_exact():
    cycles = generalized_cycles(example2())
    got = {(c.mu, c.nu) for c in cycles}
    assert got == {("a1", "b1"), ("b1", "a1")}
    assert all(not c.has_entrance for c in cycles)


def test_example2_parallel_length_two_pair_is_no_cycle():
    # [DERIVED] (a1a2, a1b2) share endpoints but their only extensions
    # are themselves, and those never meet
    c = example2()
    assert not is_generalized_cycle(c, "a1a2", "a1b2")
    assert common_extensions(c, "a1a2", "a1b2") == set()


def test_trivial_and_inverse_categories():
    assert validate(trivial_category()).ok
    rep = validate(with_inverse())
    assert not rep.ok
    assert any("inverse" in v for v in rep.violations)


def test_entrance_symmetry():
    # (mu,nu) has an entrance iff (nu,mu) fails the cycle test
    c = example2()
    for cyc in generalized_cycles(c):
        assert cyc.has_entrance == (not is_generalized_cycle(c, cyc.nu,
                                                             cyc.mu))


def test_truncation_has_no_cycles():
    t = lambda_truncation(ONES, 3, 3)
    assert validate(t).ok
    assert generalized_cycles(t) == []


def test_truncation_agrees_with_entrance_witness():
    # cross-check: for every parallel pair in the truncation the big
    # category supplies a witness extension with no common extension
    t = lambda_truncation(ONES, 3, 4)
    lookup = t.path_lookup
    pairs = 0
    for a, b in itertools.permutations(t.elements, 2):
        mu, nu = lookup[a], lookup[b]
        if mu.is_unit or mu.length != nu.length:
            continue
        if mu.range != nu.range or mu.source != nu.source:
            continue
        eta = entrance_witness(mu, nu, ONES)
        assert mce(compose(mu, eta), nu) is None
        pairs += 1
    assert pairs > 0


def test_json_roundtrip():
    c = example2()
    c2 = category_from_json(category_json(c))
    assert validate(c2).ok
    assert c2.compose == c.compose
    assert {(x.mu, x.nu) for x in generalized_cycles(c2)} == \
        {("a1", "b1"), ("b1", "a1")}
