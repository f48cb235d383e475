"""
Tests for permutations, subgroups of S_n and the subgroup lattice.
"""
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from varlattice.core.errors import DegreeMismatch, DegreeTooLarge, InvalidPermutation, NotASubgroup
from varlattice.services.lattice_service import classify_all, complements
from varlattice.services.permgroup_service import (
    Permutation,
    Subgroup,
    all_subgroups,
    alternating_group,
    closure,
    compose,
    cyclic,
    from_cycles,
    generating_set,
    identity,
    inverse,
    klein_four,
    named_subgroups,
    parse_cycles,
    stabilizer,
    subgroup_join,
    subgroup_labels,
    subgroup_lattice,
    subgroup_meet,
    symmetric_group,
    to_cycles,
    trivial_group,
)

Perms4 = st.permutations([1, 2, 3, 4]).map(lambda image: Permutation(tuple(image)))


def test_compose_applies_left_factor_first():
    p = from_cycles(3, (1, 2))
    q = from_cycles(3, (2, 3))
    assert compose(p, q).image == (3, 1, 2)
    assert (p * q) == compose(p, q)
    assert to_cycles(compose(p, q)) == '(132)'


def test_parse_cycles_notations():
    assert parse_cycles('(123)(45)').image == (2, 3, 1, 5, 4)
    assert parse_cycles('(1,2,3)', 4).image == (2, 3, 1, 4)
    assert parse_cycles('(1 2)', 3) == from_cycles(3, (1, 2))
    assert parse_cycles('()', 3) == identity(3)
    assert parse_cycles('e', 2).is_identity()


@pytest.mark.parametrize('text', ['(12', '(1a)', '12)', '(11)'])
def test_parse_cycles_rejects_garbage(text):
    with pytest.raises(InvalidPermutation):
        parse_cycles(text, 3)


def test_parse_cycles_needs_a_degree_for_identity():
    with pytest.raises(InvalidPermutation):
        parse_cycles('()')
    with pytest.raises(InvalidPermutation):
        parse_cycles('(14)', 3)


def test_permutation_validates_image():
    with pytest.raises(InvalidPermutation):
        Permutation((1, 1, 2))


def test_order_and_sign():
    p = from_cycles(5, (1, 2, 3), (4, 5))
    assert p.order() == 6
    assert p.sign() == -1
    assert identity(4).order() == 1


@settings(derandomize=True, deadline=None)
@given(Perms4, Perms4, Perms4)
def test_composition_is_associative(p, q, r):
    assert compose(compose(p, q), r) == compose(p, compose(q, r))


@settings(derandomize=True, deadline=None)
@given(Perms4)
def test_inverse_cancels(p):
    assert compose(p, inverse(p)) == identity(4)
    assert compose(inverse(p), p) == identity(4)


@settings(derandomize=True, deadline=None)
@given(Perms4)
def test_cycle_notation_roundtrip(p):
    assert parse_cycles(to_cycles(p), 4) == p


def test_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        compose(identity(3), identity(4))
    with pytest.raises(DegreeMismatch):
        subgroup_join(trivial_group(3), trivial_group(4))


def test_standard_subgroups_orders():
    assert symmetric_group(4).order == 24
    assert alternating_group(4).order == 12
    assert stabilizer(4, 2).order == 6
    assert cyclic(4, 1, 2, 3, 4).order == 4
    assert klein_four().order == 4
    assert trivial_group(5).order == 1


def test_closure_and_generating_set():
    group = closure([from_cycles(4, (1, 2)), from_cycles(4, (1, 2, 3, 4))])
    assert group == symmetric_group(4)
    gens = generating_set(group)
    assert closure(gens, 4) == group
    assert generating_set(trivial_group(3)) == []


def test_closure_needs_degree_for_empty_set():
    with pytest.raises(InvalidPermutation):
        closure([])


def test_from_members_validates():
    with pytest.raises(NotASubgroup):
        Subgroup.from_members(3, [identity(3), from_cycles(3, (1, 2, 3))])
    with pytest.raises(NotASubgroup):
        Subgroup.from_members(3, [from_cycles(3, (1, 2))])
    group = Subgroup.from_members(3, [identity(3), from_cycles(3, (1, 2))])
    assert group == cyclic(3, 1, 2)


def test_meet_and_join():
    t12, t13 = cyclic(3, 1, 2), cyclic(3, 1, 3)
    assert subgroup_meet(t12, t13) == trivial_group(3)
    assert subgroup_join(t12, t13) == symmetric_group(3)
    assert subgroup_join(klein_four(), cyclic(4, 1, 2, 3)) == alternating_group(4)


def test_named_subgroups_precedence():
    names = named_subgroups(3)
    labels = subgroup_labels(3, [symmetric_group(3), alternating_group(3), stabilizer(3, 3)])
    assert labels == ['S_3', 'C_123', 'T_12']
    assert names['A_3'] == names['C_123']
    assert 'V_4' in named_subgroups(4)
    assert 'A_4' not in named_subgroups(5)


def test_unnamed_subgroups_get_order_labels(sub_s4):
    sub = sub_s4
    unnamed = [label for label in sub.lattice.labels if label.startswith('G')]
    # Double transpositions and the dihedral subgroups have no conventional name
    assert sorted(unnamed) == ['G2_1', 'G2_2', 'G2_3', 'G8_1', 'G8_2', 'G8_3']


def test_subgroup_counts():
    assert len(all_subgroups(3)) == 6
    assert len(all_subgroups(4)) == 30


def test_degree_limit():
    with pytest.raises(DegreeTooLarge):
        all_subgroups(6)


def test_sub_s3_shape(sub_s3):
    sub = sub_s3
    lattice = sub.lattice
    assert lattice.height[lattice.top] == 2
    assert sorted(lattice.label(a) for a in lattice.atoms()) == ['C_123', 'T_12', 'T_13', 'T_23']
    c123 = lattice.index_of('C_123')
    assert sorted(lattice.label(y) for y in complements(lattice, c123)) == ['T_12', 'T_13', 'T_23']
    assert sub.by_label('C_123') == alternating_group(3)


def test_sub_s4_order_profile(sub_s4):
    sub = sub_s4
    profile = Counter(group.order for group in sub.nodes)
    assert profile == {1: 1, 2: 9, 3: 4, 4: 7, 6: 4, 8: 3, 12: 1, 24: 1}
    assert len(sub.lattice.atoms()) == 13


def test_only_bounds_are_cancellable_in_sub_s4(sub_s4):
    lattice = sub_s4.lattice
    cancellable = sorted(lattice.label(f.element) for f in classify_all(lattice) if f.cancellable)
    assert cancellable == ['S_4', 'T']


@pytest.mark.slow
def test_sub_s5_size():
    assert subgroup_lattice(5).lattice.size == 156
