"""
Tests for variety handles, their decision procedures and the X/Y family lattice.
"""
import pytest

from varlattice.core.config import Config
from varlattice.core.errors import (
    DegreeTooLarge,
    InputError,
    InvalidHandle,
    PreconditionFailed,
    TooLarge,
    Undecided,
    UnsupportedKind,
)
from varlattice.services.lattice_service import is_distributive_lattice
from varlattice.services.permgroup_service import cyclic, symmetric_group, trivial_group
from varlattice.services.variety_service import (
    INF,
    TRIVIAL,
    FamilyHandle,
    SubgroupHandle,
    TheoryOfU,
    basis_of,
    bounded_theory,
    family_handles,
    family_join,
    family_lattice,
    family_leq,
    family_meet,
    family_x,
    family_y,
    free_object,
    holds,
    is_zero,
    normal_form,
    parse_handle,
    perm_group,
    perm_transfer_harness,
    render_handle,
    restricted_growth_words,
    satisfies_overcommutative_necessary,
    satisfies_semilattice,
    split_violations,
    subgroup_derived,
    theory_of_u_violations,
)
from varlattice.services.word_service import ZERO, parse_identity, parse_word

C123 = subgroup_derived(cyclic(3, 1, 2, 3))


def test_family_labels():
    assert family_x(2, 2).square_zero
    assert family_x(2, 2) == family_y(2, 2)
    assert family_x(2, 2).label == 'X_{2,2}'
    assert family_y(2, 3).label == 'Y_{2,3}'
    assert family_x(2, INF).label == 'X_{2,inf}'
    assert family_y(3, 4).text == 'Y:3,4'


@pytest.mark.parametrize('m, n', [(3, 2), (1, 3), (2.5, 3), (INF, 4)])
def test_family_parameters_are_validated(m, n):
    with pytest.raises(InvalidHandle):
        FamilyHandle(m, n)


def test_parse_handle():
    assert parse_handle('T') is TRIVIAL
    assert parse_handle('X:2,inf') == family_x(2, INF)
    assert parse_handle('Y: 3,4') == family_y(3, 4)
    handle = parse_handle('D:3:(123)')
    assert isinstance(handle, SubgroupHandle)
    assert handle.group.order == 3
    assert render_handle(handle) == 'D:3:(123)'
    assert parse_handle('B:x y = y x').text == 'B:x y = y x'


@pytest.mark.parametrize('text, error', [('Q', InvalidHandle), ('X:a,3', InvalidHandle),
                                         ('D:7:(12)', DegreeTooLarge), ('B:', InvalidHandle)])
def test_parse_handle_errors(text, error):
    with pytest.raises(error):
        parse_handle(text)


def test_is_zero_in_family():
    assert is_zero(family_x(2, 3), parse_word('x y x'))
    assert not is_zero(family_x(3, 4), parse_word('x x'))
    assert is_zero(family_y(3, 4), parse_word('x x'))
    assert is_zero(family_x(3, 4), parse_word('x x y'))
    assert not is_zero(family_x(3, 4), parse_word('x y z'))
    assert is_zero(family_x(3, INF), parse_word('~(x)'))


def test_is_zero_in_subgroup_derived():
    assert is_zero(C123, parse_word('x1 x1 x2'))
    assert is_zero(C123, parse_word('x1 x2 x3 x4'))
    assert not is_zero(C123, parse_word('x1 x2 x3'))
    assert not is_zero(C123, parse_word('x1 x1'))


@pytest.mark.parametrize('handle, identity, expected', [
    (family_x(2, 3), 'x y = y x', True),
    (family_x(3, 4), 'x y = y x', False),
    (family_x(3, 4), 'x y z = z y x', True),
    (family_x(3, 4), 'x x = 0', False),
    (family_y(3, 4), 'x x = 0', True),
    (family_x(3, 4), 'x y z w = 0', True),
    (family_x(3, 4), 'x x y = x y x', True),
    (family_x(3, 4), 'x y = x y', True),
    (C123, 'x1 x2 x3 = x2 x3 x1', True),
    (C123, 'x1 x2 x3 = x2 x1 x3', False),
    (C123, 'x1 x2 = x2 x1', False),
    (C123, 'x1 x1 x2 = 0', True),
    (TRIVIAL, 'x = y', True),
])
def test_holds(handle, identity, expected):
    assert holds(handle, parse_identity(identity)) is expected


def test_raw_basis_handles_use_deduction():
    commutative = parse_handle('B:x y = y x')
    assert holds(commutative, parse_identity('x y z = z y x'))
    with pytest.raises(Undecided):
        holds(commutative, parse_identity('x x = x'))


def test_normal_form():
    assert normal_form(family_x(2, 4), parse_word('y x z')) == parse_word('x y z')
    assert normal_form(family_x(3, 4), parse_word('y x')) == parse_word('y x')
    assert normal_form(family_x(3, 4), parse_word('x y z w')) is ZERO
    assert normal_form(C123, parse_word('x3 x1 x2')) == parse_word('x1 x2 x3')


def test_basis_of_family():
    basis = [str(identity) for identity in basis_of(family_y(3, 4))]
    assert basis == [
        'x x y = 0', 'x y x = 0', 'y x x = 0', 'x x = 0',
        'x1 x2 x3 x4 = 0',
        'x1 x2 x3 = x2 x1 x3', 'x1 x2 x3 = x1 x3 x2',
    ]
    assert [str(identity) for identity in basis_of(family_x(INF, INF))] == ['x x y = 0', 'x y x = 0', 'y x x = 0']
    assert [str(identity) for identity in basis_of(TRIVIAL)] == ['x = y']


def test_basis_of_subgroup_derived_holds_in_it():
    for identity in basis_of(C123):
        assert holds(C123, identity)


def test_restricted_growth_words():
    assert [str(w) for w in restricted_growth_words(3)] == [
        'x1 x1 x1', 'x1 x1 x2', 'x1 x2 x1', 'x1 x2 x2', 'x1 x2 x3',
    ]


def test_free_object_of_x23():
    free = free_object(family_x(2, 3), 2)
    assert len(free) == 6
    assert len(free.nonzero) == 5
    assert free.elements[0] is ZERO
    assert free.evaluate(parse_word('x1 x2')) == free.evaluate(parse_word('x2 x1'))
    assert free.evaluate(parse_word('x1 x1 x1')) is ZERO
    assert free.table().shape == (6, 6)
    assert free.is_associative()
    with pytest.raises(InputError):
        free.evaluate(parse_word('x3'))


def test_free_object_limits():
    with pytest.raises(TooLarge):
        free_object(family_x(2, 3), 5)
    with pytest.raises(UnsupportedKind):
        free_object(parse_handle('B:x y = y x'), 2)


def test_free_object_of_subgroup_derived():
    free = free_object(C123, 3)
    # 3 + 9 words of length <= 2, and two orbits of linear words of length 3
    assert len(free.nonzero) == 14
    assert free.is_associative()


def test_perm_groups():
    assert perm_group(family_x(3, 5), 3) == symmetric_group(3)
    assert perm_group(family_x(3, 5), 2) == trivial_group(2)
    assert perm_group(family_x(3, 5), 6) == symmetric_group(6)
    assert perm_group(C123, 3) == C123.group


def test_split_property_of_family_members():
    for handle in (family_x(2, 3), family_y(2, 4), family_x(3, 4)):
        for n in range(2, 4):
            assert split_violations(handle, n) == []


def test_semigroup_wide_guards():
    assert satisfies_semilattice(parse_identity('x y = y x x'))
    assert not satisfies_semilattice(parse_identity('x y = x'))
    assert not satisfies_semilattice(parse_identity('x y = 0'))
    assert satisfies_overcommutative_necessary(parse_identity('x y z = z x y'))
    assert not satisfies_overcommutative_necessary(parse_identity('x x = x'))


def test_family_meet_and_join():
    assert family_meet(family_x(2, 4), family_y(3, 3)) == family_y(2, 3)
    assert family_join(family_x(2, 4), family_y(3, 3)) == family_x(3, 4)
    assert family_join(TRIVIAL, family_x(2, 3)) == family_x(2, 3)
    assert family_meet(TRIVIAL, family_x(2, 3)) is TRIVIAL
    assert family_meet(family_x(2, 3), family_x(3, 3)) == family_x(2, 3)


def test_family_order():
    assert family_leq(TRIVIAL, family_x(2, 2))
    assert not family_leq(family_x(2, 2), TRIVIAL)
    assert family_leq(family_y(2, 3), family_x(2, 3))
    assert not family_leq(family_x(2, 3), family_y(2, 3))
    assert family_leq(family_x(2, 3), family_x(2, INF))


def test_family_operations_reject_other_handles():
    with pytest.raises(UnsupportedKind):
        family_meet(C123, family_x(2, 3))


@pytest.mark.parametrize('cap, size', [(2, 6), (3, 12), (4, 20), (5, 30), (6, 42)])
def test_family_lattice_sizes(cap, size):
    lattice = family_lattice(cap)
    assert lattice.size == size
    assert len(family_handles(cap)) == size
    assert is_distributive_lattice(lattice)


@pytest.mark.parametrize('cap', [1, 9])
def test_family_cap_is_bounded(cap):
    with pytest.raises(InputError):
        family_handles(cap)


def test_family_lattice_low_end():
    lattice = family_lattice(3)

    def upper(label):
        return sorted(lattice.label(j) for j in lattice.upper_covers(lattice.index_of(label)))

    assert upper('T') == ['X_{2,2}']
    assert upper('X_{2,2}') == ['Y_{2,3}']
    assert upper('Y_{2,3}') == ['X_{2,3}', 'Y_{2,inf}', 'Y_{3,3}']
    assert upper('X_{2,3}') == ['X_{2,inf}', 'X_{3,3}']
    assert lattice.label(lattice.bottom) == 'T'
    assert lattice.label(lattice.top) == 'X_{inf,inf}'


def test_bounded_theory_classes():
    theory = bounded_theory(family_x(2, 3), 2, 2)
    assert [[str(w) for w in cls] for cls in theory.classes()] == [
        ['x1'], ['x2'], ['x1 x1'], ['x1 x2', 'x2 x1'], ['x2 x2'],
    ]
    assert theory.zero_class is None
    assert theory.holds(parse_word('x1 x2'), parse_word('x2 x1'))
    assert bounded_theory(family_x(2, 3), 3, 2).zero_class is not None


def test_bounded_theory_order_follows_containment():
    small = bounded_theory(family_x(2, 3), 3, 3)
    large = bounded_theory(family_x(2, 4), 3, 3)
    assert large.is_finer_than(small)
    assert not small.is_finer_than(large)


def test_bounded_theory_of_a_join():
    """
    Identities of a join are those holding in both members.
    """
    joined = bounded_theory(family_x(2, 3), 3, 2).meet(bounded_theory(family_y(3, 3), 3, 2))
    assert joined == bounded_theory(family_join(family_x(2, 3), family_y(3, 3)), 3, 2)


def test_bounded_theory_word_limit(monkeypatch):
    monkeypatch.setattr(Config, 'THEORY_WORD_LIMIT', 10)
    with pytest.raises(TooLarge):
        bounded_theory(family_x(2, 3), 3, 2)


def test_perm_transfer_in_degree_three():
    report = perm_transfer_harness(cyclic(3, 1, 2, 3), cyclic(3, 1, 2), cyclic(3, 1, 3))
    assert report.ok, report.to_dict()
    assert report.derivations_checked == 2 * 5
    assert report.to_dict()['group'] == 'D:3:(123)'


def test_perm_transfer_preconditions():
    t = trivial_group(3)
    with pytest.raises(PreconditionFailed):
        perm_transfer_harness(t, t, t)
    with pytest.raises(PreconditionFailed):
        perm_transfer_harness(trivial_group(5), cyclic(5, 1, 2), cyclic(5, 1, 3))
    with pytest.raises(PreconditionFailed):
        # joins differ: C_123 v T_12 = S_3 but T v T_12 = T_12
        perm_transfer_harness(cyclic(3, 1, 2, 3), cyclic(3, 1, 2), t)


@pytest.fixture
def theory_u():
    return TheoryOfU(parse_word('x x y'), parse_word('y x x'), parse_word('x y x'))


def test_theory_of_u_identities(theory_u):
    assert theory_u.in_ideal(parse_word('x x y x'))
    assert theory_u.in_ideal(parse_word('x x x'))
    assert not theory_u.in_ideal(parse_word('x y'))
    assert theory_u.holds(parse_identity('x x y = x y x'))
    assert theory_u.holds(parse_identity('a a b = a b a'))
    assert not theory_u.holds(parse_identity('x x y = y x x'))
    assert theory_u.holds(parse_identity('x y x x = 0'))
    assert not theory_u.holds(parse_identity('x y = 0'))


def test_theory_of_u_basis(theory_u):
    assert [str(identity) for identity in theory_u.basis(3, 2)] == ['x x y = x y x', 'x1 x1 x1 = 0']


def test_theory_of_u_matches_deduction(theory_u):
    assert theory_of_u_violations(theory_u, 3, 2) == []


def test_theory_of_u_needs_incomparable_words():
    with pytest.raises(PreconditionFailed):
        TheoryOfU(parse_word('x y'), parse_word('x x y'), parse_word('y x'))
    with pytest.raises(PreconditionFailed):
        TheoryOfU(parse_word('x x y'), parse_word('y x x'), parse_word('z y x'))
