"""
Tests for finite lattices and the five special-element predicates.
"""
import random

import pytest
from hypothesis import given, settings, strategies as st
import numpy as np

from varlattice.core.errors import CycleDetected, InputError, NotALattice
from varlattice.services.lattice_service import (
    adjoin_top,
    are_isomorphic,
    boolean_lattice,
    build_lattice,
    cancellation_witness,
    chain,
    classify_all,
    classify_element,
    complements,
    direct_product,
    from_closure_system,
    from_leq,
    generated_sublattice,
    hasse_graph,
    is_distributive_lattice,
    is_neutral_by_sublattice,
    principal_filter,
    principal_ideal,
    random_lattice,
    verify_neutral_atom_equivalence,
)


def all_flags(flags):
    return all((flags.neutral, flags.distributive, flags.standard, flags.modular, flags.cancellable))


def test_chain_shape():
    lattice = chain(4)
    assert lattice.size == 4
    assert lattice.bottom == 0
    assert lattice.top == 3
    assert lattice.is_chain()
    assert lattice.covers() == [(0, 1), (1, 2), (2, 3)]
    assert lattice.height == (0, 1, 2, 3)


def test_boolean_lattice_labels_and_atoms():
    lattice = boolean_lattice(2)
    assert lattice.labels == ('00', '01', '10', '11')
    assert sorted(lattice.label(a) for a in lattice.atoms()) == ['01', '10']
    assert lattice.height[lattice.top] == 2
    assert boolean_lattice(3).height[boolean_lattice(3).top] == 3


def test_join_and_meet_in_n5(n5):
    a, b, c = (n5.index_of(x) for x in 'abc')
    assert n5.label(n5.join(a, c)) == '1'
    assert n5.label(n5.meet(b, c)) == '0'
    assert n5.join(a, b) == b
    assert n5.meet(a, b) == a


def test_distributive_lattices_carry_every_flag():
    """
    Every element of a distributive lattice is neutral, hence carries all five flags.
    """
    for lattice in (chain(5), boolean_lattice(3), direct_product(chain(3), chain(2))):
        assert is_distributive_lattice(lattice)
        assert all(all_flags(flags) for flags in classify_all(lattice))


def test_n5_side_element_is_neither_modular_nor_cancellable(n5):
    c = n5.index_of('c')
    flags = classify_element(n5, c)
    assert not flags.modular
    assert not flags.cancellable
    assert not flags.neutral
    assert not is_distributive_lattice(n5)


def test_n5_chain_elements_are_cancellable(n5):
    for name in ('a', 'b'):
        assert classify_element(n5, n5.index_of(name)).cancellable
    for name in ('0', '1'):
        assert all_flags(classify_element(n5, n5.index_of(name)))


def test_cancellation_witness_in_n5(n5):
    a, b, c = (n5.index_of(x) for x in 'abc')
    assert cancellation_witness(n5, c) == (a, b)
    assert cancellation_witness(n5, a) is None


def test_m3_atoms_are_modular_but_not_cancellable(m3):
    for name in 'abc':
        flags = classify_element(m3, m3.index_of(name))
        assert flags.modular
        assert not flags.cancellable
        assert not flags.standard


def test_complements_in_m3(m3):
    a = m3.index_of('a')
    assert sorted(m3.label(y) for y in complements(m3, a)) == ['b', 'c']
    assert complements(m3, m3.bottom) == [m3.top]


def test_principal_filter_and_ideal():
    lattice = chain(4)
    assert principal_filter(lattice, 1) == {1, 2, 3}
    assert principal_ideal(lattice, 1) == {0, 1}


def test_generated_sublattice(n5):
    a, c = n5.index_of('a'), n5.index_of('c')
    generated = generated_sublattice(n5, [a, c])
    assert sorted(n5.label(x) for x in generated) == ['0', '1', 'a', 'c']


def test_neutrality_agrees_with_sublattice_test(lattices):
    for lattice in lattices.values():
        for flags in classify_all(lattice):
            assert flags.neutral == is_neutral_by_sublattice(lattice, flags.element)


def test_product_of_chains_is_boolean():
    mapping = are_isomorphic(direct_product(chain(2), chain(2)), boolean_lattice(2))
    assert mapping is not None
    assert sorted(mapping) == [0, 1, 2, 3]


def test_product_labels_and_indices():
    product = direct_product(chain(2), chain(3))
    assert product.size == 6
    assert product.label(1 * 3 + 2) == '(1,2)'


def test_pentagon_and_diamond_are_not_isomorphic(n5, m3):
    assert are_isomorphic(n5, m3) is None
    assert are_isomorphic(chain(3), chain(4)) is None


def test_adjoin_top():
    lattice = adjoin_top(boolean_lattice(1))
    assert lattice.size == 3
    assert lattice.label(lattice.top) == 'TOP'
    assert lattice.is_chain()


def test_hasse_graph_edges(m3):
    graph = hasse_graph(m3)
    assert graph.number_of_nodes() == 5
    assert graph.number_of_edges() == 6


def test_neutral_atom_equivalence_on_fixtures(lattices):
    report = verify_neutral_atom_equivalence(lattices['boolean3'])
    assert report.ok
    assert len(report.atoms) == 3
    assert report.checked == 3 * 8
    assert verify_neutral_atom_equivalence(lattices['n5']).ok


def test_cycle_is_rejected():
    with pytest.raises(CycleDetected):
        build_lattice([('a', 'b'), ('b', 'c'), ('c', 'a')])


def test_missing_join_is_rejected():
    covers = [('0', 'a'), ('0', 'b'), ('a', 'c'), ('a', 'd'), ('b', 'c'), ('b', 'd')]
    with pytest.raises(NotALattice):
        build_lattice(covers)


def test_unknown_cover_element_is_rejected():
    with pytest.raises(InputError):
        build_lattice([('0', 'x')], ['0', '1'])


def test_unknown_label_lookup():
    with pytest.raises(InputError):
        chain(2).index_of('7')


def test_random_lattices_are_closure_systems():
    rng = random.Random(7)
    sizes = set()
    for _ in range(20):
        lattice = random_lattice(rng, 7)
        assert 1 <= lattice.size <= 7
        assert lattice.leq[lattice.bottom].all()
        assert lattice.label(lattice.top) == '{1,2,3,4}'
        sizes.add(lattice.size)
    assert max(sizes) > 2
    assert random_lattice(rng, 1).size == 1
    with pytest.raises(InputError):
        random_lattice(rng, 0)


def test_from_leq_checks_the_order():
    lattice = from_leq(np.triu(np.ones((3, 3), dtype=bool)), ['a', 'b', 'c'])
    assert lattice.labels == ('a', 'b', 'c')
    assert lattice.join(0, 2) == 2
    with pytest.raises(CycleDetected):
        from_leq(np.ones((2, 2), dtype=bool))
    with pytest.raises(InputError):
        from_leq(np.array([[1, 1, 0], [0, 1, 1], [0, 0, 1]], dtype=bool))


Subsets = st.frozensets(st.integers(min_value=1, max_value=4))


def close_under_intersection(sets):
    family = {frozenset({1, 2, 3, 4})} | set(sets)
    grown = True
    while grown:
        grown = False
        for a in list(family):
            for b in list(family):
                if a & b not in family:
                    family.add(a & b)
                    grown = True
    return family


@settings(derandomize=True, deadline=None, max_examples=60)
@given(st.lists(Subsets, max_size=5))
def test_special_element_implications(sets):
    """
    standard implies cancellable, cancellable implies modular, and neutral
    implies distributive and standard, on lattices of closure systems.
    """
    lattice = from_closure_system(close_under_intersection(sets))
    for flags in classify_all(lattice):
        if flags.standard:
            assert flags.cancellable
        if flags.cancellable:
            assert flags.modular
        if flags.neutral:
            assert flags.distributive and flags.standard
