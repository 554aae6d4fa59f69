import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kleinlens import groups
from kleinlens.abelian import AbelianGroup, dehn_filling_H1
from kleinlens.groups import (Presentation, abelianization, build_metacyclic_table,
                              dehn_filling_presentation, format_word, free_reduce,
                              is_freely_reduced, klein_bottle_group, peripheral_image, word)

nonzero_ell = st.integers(-12, 12).filter(bool)


def test_klein_bottle_group():
    g = klein_bottle_group()
    assert str(g) == "<u,v | u v u^-1 v>"
    assert all(is_freely_reduced(r) for r in g.relators)
    assert abelianization(g) == AbelianGroup((2,), 1)


@pytest.mark.parametrize("args, text", [((1, 1), "u^2 v"), ((2, -3), "u^4 v^-3")])
def test_peripheral_image(args, text):
    assert format_word(peripheral_image(*args)) == text


def test_peripheral_image_of_zero_is_empty():
    assert peripheral_image(0, 0) == ()
    assert format_word(()) == "1"


def test_free_reduction():
    assert free_reduce([(0, 2), (1, 1), (1, -1), (0, -2)]) == ()
    assert free_reduce([(0, 1), (0, 1), (1, 0)]) == word((0, 2))


def test_filling_presentation_text():
    assert str(dehn_filling_presentation(1, 1)) == "<u,v | u v u^-1 v, u^2 v>"


def test_abelianization_examples():
    assert abelianization(Presentation(1, (word((0, 5)),))) == AbelianGroup((5,))
    assert abelianization(dehn_filling_presentation(2, 1)) == AbelianGroup((8,))


@given(st.integers(1, 20), st.integers(-11, 11))
def test_presentation_oracle(n, ell):
    if math.gcd(n, ell) != 1:
        return
    h = abelianization(dehn_filling_presentation(n, ell))
    assert h == dehn_filling_H1(n, ell)
    assert h == (AbelianGroup((4 * n,)) if ell % 2 else AbelianGroup((2, 2 * n)))


@pytest.mark.parametrize("n, ell, order, abelian, cyclic, v_order", [
    (1, 1, 4, True, True, 2), (1, 3, 12, False, False, 6), (2, 1, 8, True, True, 2),
    (3, 1, 12, True, True, 2), (1, -1, 4, True, True, 2), (2, 2, 16, False, False, 4),
])
def test_table_examples(n, ell, order, abelian, cyclic, v_order):
    t = build_metacyclic_table(n, ell)
    assert groups.group_order(t) == order
    assert groups.is_abelian(t) is abelian
    assert groups.is_cyclic(t) is cyclic
    assert groups.element_order(t, 0, 1) == v_order


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 12), nonzero_ell)
def test_table_is_a_group_with_normal_cyclic_v(n, ell):
    t = build_metacyclic_table(n, ell)
    ax = groups.check_group_axioms(t.table)
    assert ax["identity"] and ax["latin"] and ax["associative"]
    assert t.order == 4 * n * abs(ell)
    assert groups.is_abelian(t) == (abs(ell) == 1)
    assert groups.element_order(t, 0, 1) == 2 * abs(ell)
    inv = groups._inverses(t.table)
    assert t.table[t.table[t.u, t.v], inv[t.u]] == inv[t.v]
    assert groups.quotient_by_v(t) == (2 * n, True)
    assert all(groups.evaluate_word(t.table, [t.u, t.v], r) == 0
               for r in dehn_filling_presentation(n, ell).relators)
    assert groups.table_abelianization(t) == abelianization(dehn_filling_presentation(n, ell))


@given(st.integers(1, 12), nonzero_ell, st.integers(-50, 50), st.integers(-50, 50))
def test_normal_form_round_trip(n, ell, j, k):
    t = build_metacyclic_table(n, ell)
    idx = t.index(j, k)
    assert t.index(*t.normal_form(idx)) == idx


def test_sampled_associativity_path():
    t = build_metacyclic_table(12, 11)
    ax = groups.check_group_axioms(t.table, exhaustive_limit=200, samples=10_000, seed=7)
    assert ax["associative"] and not ax["associativity_exhaustive"]


def test_axiom_check_catches_a_broken_table():
    t = build_metacyclic_table(1, 3).table.copy()
    t[1, 1], t[1, 2] = t[1, 2], t[1, 1]
    ax = groups.check_group_axioms(t)
    assert not (ax["latin"] and ax["associative"])


def test_table_cap():
    with pytest.raises(groups.TableCapExceeded):
        build_metacyclic_table(50, 50, cap=1000)


def test_table_is_read_only():
    t = build_metacyclic_table(1, 3)
    with pytest.raises(ValueError):
        t.table[0, 0] = 1


@pytest.mark.parametrize("n, ell, element, order, verified", [
    (3, 0, "u", 6, True), (1, 1, "v", 2, True), (1, 3, "v", 6, True), (-1, 3, "v", 6, True),
])
def test_torsion_diagnostic(n, ell, element, order, verified):
    rep = groups.torsion_diagnostic(n, ell)
    assert (rep.element, rep.exact_order, rep.verified) == (element, order, verified)


def test_torsion_diagnostic_without_table():
    # with n = 0 the relator is v^l itself; the 2|l| bound is reported, not certified
    rep = groups.torsion_diagnostic(0, 2)
    assert (rep.element, rep.bound, rep.exact_order, rep.verified) == ("v", 4, None, False)
    assert rep.notes


def test_torsion_diagnostic_rejects_trivial_class():
    with pytest.raises(ValueError):
        groups.torsion_diagnostic(0, 0)


def test_cyclic_detection_matches_abelian_for_small_tables():
    for n in range(1, 4):
        for ell in range(-4, 5):
            if ell:
                t = build_metacyclic_table(n, ell)
                assert groups.is_cyclic(t) == groups.is_abelian(t) == (abs(ell) == 1)
                assert np.array_equal(t.table[0], np.arange(t.order))
