"""Decidable variety handles and their equational theories.

Handles:

* ``FamilyHandle(m, n, square_zero)``: X_{m,n} (``square_zero`` false) and
  Y_{m,n} (true), nil-varieties with ``2 <= m <= n <= inf``. X_{2,2} and
  Y_{2,2} coincide and are carried with ``square_zero`` set.
* ``SubgroupHandle(group)``: D(G, n) for a subgroup G of S_n. Linear words of
  length n are identified along G, every other word of length n and every
  longer word is zero, shorter words are free.
* ``TrivialHandle``: the trivial variety T.
* ``RawBasisHandle``: a finite basis, decided only by bounded deduction.
"""
from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple, Union
import logging
import math
import re

import numpy as np

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
from varlattice.services.deduction_service import (
    Proved,
    derive,
    replay,
    splice_permutations,
    step_permutations,
    zero_member,
)
from varlattice.services.lattice_service import FiniteLattice, from_leq
from varlattice.services.permgroup_service import (
    Permutation,
    Subgroup,
    closure,
    generating_set,
    parse_cycles,
    subgroup_join,
    subgroup_meet,
    symmetric_group,
    to_cycles,
)
from varlattice.services.word_service import (
    Bar,
    Identity,
    Term,
    Word,
    ZERO,
    all_words,
    content,
    has_bar,
    identity_predicates,
    indexed_letters,
    is_linear,
    is_square_of_letter,
    letter_key,
    letter_renaming,
    parse_identity,
    pattern_leq,
    permutation_between,
    permutational_identity,
    strictly_below_in_preorder,
)

logger = logging.getLogger(__name__)

INF = math.inf
Parameter = Union[int, float]


def _fmt(value: Parameter) -> str:
    return 'inf' if value == INF else str(int(value))


@dataclass(frozen=True, order=True)
class FamilyHandle:
    m: Parameter
    n: Parameter
    square_zero: bool = False

    def __post_init__(self):
        m, n = self.m, self.n
        for value in (m, n):
            if value != INF and (not float(value).is_integer() or value < 2):
                raise InvalidHandle(f"Family parameters must be integers >= 2 or inf, got {_fmt(value)}")
        if m > n:
            raise InvalidHandle(f"Family parameters need m <= n, got m={_fmt(m)}, n={_fmt(n)}")
        if m == 2 and n == 2 and not self.square_zero:
            # X_{2,2} = Y_{2,2}
            object.__setattr__(self, 'square_zero', True)

    @property
    def letter(self) -> str:
        return 'Y' if self.square_zero and (self.m, self.n) != (2, 2) else 'X'

    @property
    def label(self) -> str:
        return f"{self.letter}_{{{_fmt(self.m)},{_fmt(self.n)}}}"

    @property
    def text(self) -> str:
        return f"{self.letter}:{_fmt(self.m)},{_fmt(self.n)}"


@dataclass(frozen=True)
class SubgroupHandle:
    group: Subgroup

    @property
    def n(self) -> int:
        return self.group.n

    @property
    def label(self) -> str:
        return f"D({self.generators_text()},{self.n})"

    def generators_text(self) -> str:
        gens = generating_set(self.group)
        return ';'.join(to_cycles(g) for g in gens) if gens else '()'

    @property
    def text(self) -> str:
        return f"D:{self.n}:{self.generators_text()}"


@dataclass(frozen=True)
class TrivialHandle:
    label: str = 'T'
    text: str = 'T'


@dataclass(frozen=True)
class RawBasisHandle:
    basis: Tuple[Identity, ...]

    @property
    def label(self) -> str:
        return 'var{' + ', '.join(str(identity) for identity in self.basis) + '}'

    @property
    def text(self) -> str:
        return 'B:' + ';'.join(str(identity) for identity in self.basis)


VarietyHandle = Union[FamilyHandle, SubgroupHandle, TrivialHandle, RawBasisHandle]
TRIVIAL = TrivialHandle()


def family_x(m: Parameter, n: Parameter) -> FamilyHandle:
    return FamilyHandle(m, n, False)


def family_y(m: Parameter, n: Parameter) -> FamilyHandle:
    return FamilyHandle(m, n, True)


def subgroup_derived(group: Subgroup) -> SubgroupHandle:
    return SubgroupHandle(group)


# Handle syntax

def _parameter(text: str) -> Parameter:
    text = text.strip().lower()
    if text in ('inf', 'infinity', '∞'):
        return INF
    if not text.isdigit():
        raise InvalidHandle(f"Bad family parameter {text!r}")
    return int(text)


def parse_handle(text: str) -> VarietyHandle:
    """``T``, ``X:m,n``, ``Y:m,n`` (n may be inf), ``D:n:(123);(12)``, or ``B:<id>;<id>``."""
    text = text.strip()
    if text == 'T':
        return TRIVIAL
    match = re.fullmatch(r'([XY])\s*:\s*([^,]+),(.+)', text)
    if match:
        kind, m, n = match.groups()
        return FamilyHandle(_parameter(m), _parameter(n), kind == 'Y')
    match = re.fullmatch(r'D\s*:\s*(\d+)\s*:(.*)', text)
    if match:
        degree, generators = int(match.group(1)), match.group(2)
        if degree > Config.MAX_PERM_DEGREE:
            raise DegreeTooLarge(degree, Config.MAX_PERM_DEGREE)
        gens = [parse_cycles(g, degree) for g in generators.split(';') if g.strip()]
        return SubgroupHandle(closure(gens, degree))
    if text.startswith('B:'):
        identities = [parse_identity(part) for part in text[2:].split(';') if part.strip()]
        if not identities:
            raise InvalidHandle("A basis handle needs at least one identity")
        return RawBasisHandle(tuple(identities))
    raise InvalidHandle(f"Unrecognised variety handle {text!r}")


def render_handle(handle: VarietyHandle) -> str:
    return handle.text


# Decision procedures

def _require_decidable(handle: VarietyHandle):
    if isinstance(handle, RawBasisHandle):
        raise UnsupportedKind("Raw basis handles are decided by bounded deduction only")


def is_zero(handle: VarietyHandle, w: Word) -> bool:
    """Whether ``handle`` satisfies ``w = 0``."""
    _require_decidable(handle)
    if isinstance(handle, TrivialHandle):
        return True
    if has_bar(w):
        return True
    size = len(w.items)
    if isinstance(handle, FamilyHandle):
        if size >= handle.n:
            return True
        if is_linear(w):
            return False
        return handle.square_zero or not is_square_of_letter(w)
    assert isinstance(handle, SubgroupHandle)
    n = handle.n
    return size >= n + 1 or (size == n and len(content(w)) < n)


def holds(handle: VarietyHandle, identity: Identity, depth_bound: Optional[int] = None,
          size_bound: Optional[int] = None) -> bool:
    """Decide whether ``handle`` satisfies ``identity``."""
    if isinstance(handle, RawBasisHandle):
        verdict = derive(handle.basis, identity, depth_bound, size_bound)
        if isinstance(verdict, Proved):
            return True
        raise Undecided(f"Bounded deduction is inconclusive for {identity}", explored=verdict.explored)
    if isinstance(handle, TrivialHandle):
        return True

    u, v = identity.lhs, identity.rhs
    zero_u = is_zero(handle, u)
    if v is ZERO:
        return zero_u
    assert isinstance(v, Word)
    zero_v = is_zero(handle, v)
    if zero_u or zero_v:
        return zero_u and zero_v
    if u == v:
        return True
    if not (is_linear(u) and is_linear(v)) or content(u) != content(v):
        return False
    if isinstance(handle, FamilyHandle):
        return len(u.items) >= handle.m
    pi = permutation_between(u, v)
    return len(u.items) == handle.n and pi is not None and pi in handle.group


def normal_form(handle: VarietyHandle, w: Word) -> Term:
    """Canonical representative of the class of ``w``: ZERO, or a word."""
    if is_zero(handle, w):
        return ZERO
    letters = w.letters()
    if not is_linear(w):
        return w
    if isinstance(handle, FamilyHandle):
        if len(letters) >= handle.m:
            return Word(tuple(sorted(letters, key=letter_key)))
        return w
    assert isinstance(handle, SubgroupHandle)
    if len(letters) == handle.n:
        orbit = (tuple(letters[pi(i) - 1] for i in range(1, handle.n + 1)) for pi in handle.group.members)
        return Word(min(orbit, key=lambda ws: [letter_key(x) for x in ws]))
    return w


def basis_of(handle: VarietyHandle) -> Tuple[Identity, ...]:
    """A finite basis of identities (semigroup part) for the handle."""
    if isinstance(handle, RawBasisHandle):
        return handle.basis
    if isinstance(handle, TrivialHandle):
        return (parse_identity('x = y'),)
    identities: List[Identity] = []
    if isinstance(handle, FamilyHandle):
        identities += [parse_identity(text) for text in ('x x y = 0', 'x y x = 0', 'y x x = 0')]
        if handle.square_zero:
            identities.append(parse_identity('x x = 0'))
        if handle.n != INF:
            identities.append(Identity(Word(indexed_letters(int(handle.n))), ZERO))
        if handle.m != INF:
            m = int(handle.m)
            for i in range(1, m):
                image = list(range(1, m + 1))
                image[i - 1], image[i] = i + 1, i
                identities.append(permutational_identity(Permutation(tuple(image))))
        return tuple(identities)
    assert isinstance(handle, SubgroupHandle)
    n = handle.n
    identities.append(Identity(Word(indexed_letters(n + 1)), ZERO))
    identities += [Identity(w, ZERO) for w in restricted_growth_words(n) if len(content(w)) < n]
    identities += [permutational_identity(pi) for pi in handle.group.members if not pi.is_identity()]
    return tuple(identities)


def restricted_growth_words(length: int) -> List[Word]:
    """Words over x1, x2, ... in which x(k+1) first occurs after x(k): one word per renaming class."""
    results: List[Word] = []

    def extend(prefix: Tuple[str, ...], used: int):
        if len(prefix) == length:
            results.append(Word(prefix))
            return
        for k in range(1, used + 2):
            extend(prefix + (f'x{k}',), max(used, k))

    extend((), 0)
    return results


# Free objects

@dataclass
class FreeObject:
    """Relatively free semigroup of a nil-variety on ``generators``; ZERO is element 0."""

    variety: VarietyHandle
    generators: Tuple[str, ...]
    elements: List[Term] = field(default_factory=list)

    def __post_init__(self):
        self.index: Dict[Term, int] = {t: i for i, t in enumerate(self.elements)}
        self._table: Optional[np.ndarray] = None

    def __len__(self):
        return len(self.elements)

    @property
    def nonzero(self) -> List[Word]:
        return [t for t in self.elements if t is not ZERO]  # type: ignore[misc]

    def product(self, a: Term, b: Term) -> Term:
        if a is ZERO or b is ZERO:
            return ZERO
        return normal_form(self.variety, a * b)  # type: ignore[operator]

    def evaluate(self, w: Word) -> Term:
        """Value of ``w`` with letters read as generators."""
        value: Optional[Term] = None
        for item in w.items:
            if isinstance(item, Bar):
                return ZERO
            if item not in self.generators:
                raise InputError(f"Letter {item} is not a generator", letter=item)
            g = normal_form(self.variety, Word((item,)))
            value = g if value is None else self.product(value, g)
        assert value is not None
        return value

    def table(self) -> np.ndarray:
        if len(self.elements) > Config.FREE_OBJECT_TABLE_LIMIT:
            raise TooLarge("Multiplication table", Config.FREE_OBJECT_TABLE_LIMIT)
        if self._table is None:
            size = len(self.elements)
            table = np.zeros((size, size), dtype=np.int64)
            for i, a in enumerate(self.elements):
                for j, b in enumerate(self.elements):
                    table[i, j] = self.index[self.product(a, b)]
            table.flags.writeable = False
            self._table = table
        return self._table

    def is_associative(self) -> bool:
        return _associative(self.table())


def _associative(t: np.ndarray) -> bool:
    # (ab)c versus a(bc) over all triples
    left = t[t[:, :, None], np.arange(t.shape[0])[None, None, :]]
    right = t[np.arange(t.shape[0])[:, None, None], t[None, :, :]]
    return bool(np.array_equal(left, right))


def free_object(handle: VarietyHandle, k: int) -> FreeObject:
    """Elements are found by closing the generators under right multiplication."""
    _require_decidable(handle)
    if not 1 <= k <= Config.MAX_FREE_GENERATORS:
        raise TooLarge(f"Generator count {k}", Config.MAX_FREE_GENERATORS)
    generators = indexed_letters(k)
    gens = [normal_form(handle, Word((g,))) for g in generators]
    elements: List[Term] = [ZERO]
    seen = {ZERO}
    frontier = [g for g in dict.fromkeys(gens) if g is not ZERO]
    for g in frontier:
        seen.add(g)
        elements.append(g)
    while frontier:
        fresh = []
        for a in frontier:
            for g in gens:
                if g is ZERO:
                    continue
                c = normal_form(handle, a * g)  # type: ignore[operator]
                if c not in seen:
                    seen.add(c)
                    elements.append(c)
                    fresh.append(c)
                    if len(elements) > Config.FREE_OBJECT_LIMIT:
                        raise TooLarge("Free object", Config.FREE_OBJECT_LIMIT)
        frontier = fresh
    logger.info(f"Free object of {handle.text} on {k} generators has {len(elements)} elements")
    return FreeObject(handle, generators, elements)


def perm_group(handle: VarietyHandle, k: int) -> Subgroup:
    """Perm_k(V): the permutations pi with V satisfying p_k[pi]."""
    if k > Config.MAX_PERM_DEGREE:
        raise DegreeTooLarge(k, Config.MAX_PERM_DEGREE)
    members = [pi for pi in symmetric_group(k).members if holds(handle, permutational_identity(pi))]
    return Subgroup.from_members(k, members)


# Semigroup-wide guards

def satisfies_semilattice(identity: Identity) -> bool:
    """Semilattices satisfy u = v iff con(u) = con(v)."""
    if identity.rhs is ZERO:
        return False
    return content(identity.lhs) == content(identity.rhs)  # type: ignore[arg-type]


def satisfies_overcommutative_necessary(identity: Identity) -> bool:
    """Overcommutative varieties only satisfy balanced identities."""
    return identity_predicates(identity).balanced


def split_violations(handle: VarietyHandle, n: int) -> List[str]:
    """Identities x1...xn = v holding in ``handle`` that are neither permutational nor zero on both sides."""
    lhs = Word(indexed_letters(n))
    violations = []
    for v in all_words(indexed_letters(n + 1), n + 1):
        if v == lhs or not holds(handle, Identity(lhs, v)):
            continue
        if identity_predicates(Identity(lhs, v)).permutational is None and not (
                is_zero(handle, lhs) and is_zero(handle, v)):
            violations.append(f"{lhs} = {v}")
    return violations


# Family lattice

FamilyMember = Union[FamilyHandle, TrivialHandle]


def _family_operands(*handles: VarietyHandle):
    for handle in handles:
        if not isinstance(handle, (FamilyHandle, TrivialHandle)):
            raise UnsupportedKind(f"Family operations need X, Y or T handles, got {handle.text}")


def family_meet(first: VarietyHandle, second: VarietyHandle) -> FamilyMember:
    _family_operands(first, second)
    if isinstance(first, TrivialHandle) or isinstance(second, TrivialHandle):
        return TRIVIAL
    assert isinstance(first, FamilyHandle) and isinstance(second, FamilyHandle)
    return FamilyHandle(min(first.m, second.m), min(first.n, second.n), first.square_zero or second.square_zero)


def family_join(first: VarietyHandle, second: VarietyHandle) -> FamilyMember:
    _family_operands(first, second)
    if isinstance(first, TrivialHandle):
        return second  # type: ignore[return-value]
    if isinstance(second, TrivialHandle):
        return first
    assert isinstance(first, FamilyHandle) and isinstance(second, FamilyHandle)
    return FamilyHandle(max(first.m, second.m), max(first.n, second.n), first.square_zero and second.square_zero)


def family_leq(first: VarietyHandle, second: VarietyHandle) -> bool:
    """Containment of family members."""
    _family_operands(first, second)
    if isinstance(first, TrivialHandle):
        return True
    if isinstance(second, TrivialHandle):
        return False
    assert isinstance(first, FamilyHandle) and isinstance(second, FamilyHandle)
    return (first.m <= second.m and first.n <= second.n
            and (first.square_zero or not second.square_zero))


def family_handles(cap: int) -> List[FamilyMember]:
    """T and every X_{m,n}, Y_{m,n} with m <= n drawn from {2..cap, inf}."""
    if not 2 <= cap <= Config.MAX_FAMILY_CAP:
        raise InputError(f"Family cap must lie in 2..{Config.MAX_FAMILY_CAP}, got {cap}", cap=cap)
    values: List[Parameter] = list(range(2, cap + 1)) + [INF]
    handles: List[FamilyMember] = [TRIVIAL]
    for m in values:
        for n in values:
            if m > n:
                continue
            handles.append(family_x(m, n))
            if (m, n) != (2, 2):
                handles.append(family_y(m, n))
    return handles


def family_lattice(cap: int) -> FiniteLattice:
    handles = family_handles(cap)
    leq = np.array([[family_leq(a, b) for b in handles] for a in handles], dtype=bool)
    lattice = from_leq(leq, [h.label for h in handles])
    logger.info(f"Family lattice at cap {cap}: {lattice.size} elements")
    return lattice


# Bounded theories

@dataclass(frozen=True)
class BoundedTheory:
    """Partition of all words of length <= max_len over x1..x_letters into classes of the theory."""

    max_len: int
    letters: int
    words: Tuple[Word, ...]
    class_of: Tuple[int, ...]
    zero_class: Optional[int]

    def classes(self) -> List[List[Word]]:
        grouped: Dict[int, List[Word]] = {}
        for w, c in zip(self.words, self.class_of):
            grouped.setdefault(c, []).append(w)
        return [grouped[c] for c in sorted(grouped)]

    def _check(self, other: 'BoundedTheory'):
        if (self.max_len, self.letters) != (other.max_len, other.letters):
            raise InputError("Bounded theories over different word sets cannot be compared")

    def meet(self, other: 'BoundedTheory') -> 'BoundedTheory':
        """Theory of the variety join: identities holding in both."""
        self._check(other)
        keys = list(zip(self.class_of, other.class_of))
        zero = (self.zero_class, other.zero_class) if self.zero_class is not None else None
        return _partition(self.max_len, self.letters, self.words, keys, zero)

    def is_finer_than(self, other: 'BoundedTheory') -> bool:
        """Every identity of ``self`` holds in ``other``: for theories of V and W, V contains W."""
        self._check(other)
        image: Dict[int, int] = {}
        return all(image.setdefault(a, b) == b for a, b in zip(self.class_of, other.class_of))

    def holds(self, u: Word, v: Word) -> bool:
        index = {w: i for i, w in enumerate(self.words)}
        return self.class_of[index[u]] == self.class_of[index[v]]

    def fingerprint(self) -> Tuple[int, ...]:
        return self.class_of


def _partition(max_len: int, letters: int, words: Sequence[Word], keys: Sequence[Hashable],
               zero_key: Optional[Hashable]) -> BoundedTheory:
    ids: Dict[Hashable, int] = {}
    class_of = tuple(ids.setdefault(key, len(ids)) for key in keys)
    return BoundedTheory(max_len, letters, tuple(words), class_of, ids.get(zero_key) if zero_key is not None else None)


def bounded_words(max_len: int, letters: int) -> List[Word]:
    total = sum(letters ** k for k in range(1, max_len + 1))
    if total > Config.THEORY_WORD_LIMIT:
        raise TooLarge(f"Bounded theory with {total} words", Config.THEORY_WORD_LIMIT)
    return list(all_words(indexed_letters(letters), max_len))


def bounded_theory(handle: VarietyHandle, max_len: int, letters: int,
                   key: Optional[Callable[[Word], Hashable]] = None) -> BoundedTheory:
    """Holds-equivalence classes on the words of length <= max_len over x1..x_letters."""
    if key is None:
        _require_decidable(handle)
        key = lambda w: normal_form(handle, w)  # noqa: E731
    words = bounded_words(max_len, letters)
    return _partition(max_len, letters, words, [key(w) for w in words], ZERO)


# Subgroup-derived transfer

@dataclass
class PermTransferReport:
    n: int
    group: str
    first: str
    second: str
    joins_coincide: bool = False
    meets_coincide: bool = False
    distinct: bool = False
    perm_groups_realised: bool = False
    derivations_checked: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.joins_coincide and self.meets_coincide and self.distinct
                and self.perm_groups_realised and not self.failures)

    def to_dict(self) -> Dict[str, object]:
        return {
            'n': self.n,
            'group': self.group,
            'first': self.first,
            'second': self.second,
            'joins_coincide': self.joins_coincide,
            'meets_coincide': self.meets_coincide,
            'distinct': self.distinct,
            'perm_groups_realised': self.perm_groups_realised,
            'derivations_checked': self.derivations_checked,
            'failures': list(self.failures),
        }


def _certify_meet(group: Subgroup, other: Subgroup, depth_bound: int) -> Tuple[int, List[str]]:
    """Every p_n[pi] with pi in the subgroup join follows from the two bases, and each
    trace's step permutations compose to pi."""
    n = group.n
    basis = basis_of(SubgroupHandle(group)) + basis_of(SubgroupHandle(other))
    failures = []
    joined = subgroup_join(group, other)
    for pi in joined.members:
        if pi.is_identity():
            continue
        verdict = derive(basis, permutational_identity(pi), depth_bound=depth_bound, size_bound=n)
        if not isinstance(verdict, Proved):
            failures.append(f"p_{n}[{to_cycles(pi)}] not derived within depth {depth_bound}")
            continue
        trace = verdict.trace
        perms = step_permutations(trace)
        if not replay(trace) or perms is None or splice_permutations(perms, n) != pi:
            failures.append(f"trace for p_{n}[{to_cycles(pi)}] does not splice to the permutation")
    return len(joined.members) - 1, failures


def perm_transfer_harness(group: Subgroup, first: Subgroup, second: Subgroup,
                          depth_bound: Optional[int] = None) -> PermTransferReport:
    """Witness that ``group`` is not cancellable in Sub(S_n) transfers to the varieties D(G, n).

    Needs group v first = group v second, group ^ first = group ^ second and first != second.
    """
    n = group.n
    if n not in (3, 4):
        raise PreconditionFailed(f"Transfer harness supports n = 3, 4, got {n}", n=n)
    if first.n != n or second.n != n:
        raise PreconditionFailed("All three subgroups must have the same degree")
    if first == second:
        raise PreconditionFailed("The two subgroups must differ")
    if subgroup_join(group, first) != subgroup_join(group, second):
        raise PreconditionFailed("Subgroup joins differ")
    if subgroup_meet(group, first) != subgroup_meet(group, second):
        raise PreconditionFailed("Subgroup meets differ")
    depth_bound = Config.DEFAULT_DEPTH if depth_bound is None else depth_bound

    handles = [SubgroupHandle(g) for g in (group, first, second)]
    report = PermTransferReport(n, handles[0].text, handles[1].text, handles[2].text)
    theories = [bounded_theory(h, n + 1, n + 1) for h in handles]

    report.joins_coincide = theories[0].meet(theories[1]) == theories[0].meet(theories[2])

    meet_first = SubgroupHandle(subgroup_join(group, first))
    meet_second = SubgroupHandle(subgroup_join(group, second))
    structural = (meet_first == meet_second
                  and bounded_theory(meet_first, n + 1, n + 1) == bounded_theory(meet_second, n + 1, n + 1))
    checked = 0
    for other in (first, second):
        count, failures = _certify_meet(group, other, depth_bound)
        checked += count
        report.failures.extend(failures)
    report.derivations_checked = checked
    report.meets_coincide = structural and not report.failures

    report.distinct = theories[1] != theories[2]
    report.perm_groups_realised = all(perm_group(h, n) == h.group for h in handles)
    logger.info(f"Transfer harness for {report.group}: ok={report.ok}")
    return report


# The variety U = N ^ var{u = w}

class TheoryOfU:
    """Decision routine for U = N ^ var{u = w}, where N = var{s = 0 : s in I} and
    I = {s : t < s for some t in {u, v, w}} with < strict in the pattern preorder.

    Nontrivial identities of U are the pairs from I and the renamings of u = w.
    """

    def __init__(self, u: Word, v: Word, w: Word):
        words = (u, v, w)
        for a in words:
            if not a.is_semigroup:
                raise PreconditionFailed(f"{a} is not a semigroup word")
        if not (content(u) == content(v) == content(w)):
            raise PreconditionFailed("u, v and w must have equal content")
        for i, a in enumerate(words):
            for b in words[i + 1:]:
                if pattern_leq(a, b) is not None or pattern_leq(b, a) is not None:
                    raise PreconditionFailed(f"{a} and {b} are comparable")
        self.u, self.v, self.w = u, v, w

    def in_ideal(self, s: Word) -> bool:
        return any(strictly_below_in_preorder(t, s) for t in (self.u, self.v, self.w))

    def class_key(self, s: Word) -> Hashable:
        if self.in_ideal(s):
            return ZERO
        for base in (self.u, self.w):
            phi = letter_renaming(base, s)
            if phi is not None:
                return ('uw',) + tuple(phi[x] for x in sorted(content(self.u), key=letter_key))
        return s

    def holds(self, identity: Identity) -> bool:
        left = self.class_key(identity.lhs)
        right = ZERO if identity.rhs is ZERO else self.class_key(identity.rhs)  # type: ignore[arg-type]
        return left == right

    def basis(self, max_len: int, letters: int) -> Tuple[Identity, ...]:
        """u = w plus s = 0 for the minimal ideal words of length <= max_len, one per renaming class."""
        ideal = [s for s in restricted_words(max_len, letters) if self.in_ideal(s)]
        minimal = [s for s in ideal if not any(t != s and strictly_below_in_preorder(t, s) for t in ideal)]
        return (Identity(self.u, self.w),) + tuple(Identity(s, ZERO) for s in minimal)

    def theory(self, max_len: int, letters: int) -> BoundedTheory:
        return bounded_theory(TRIVIAL, max_len, letters, key=self.class_key)


def restricted_words(max_len: int, letters: int) -> List[Word]:
    """One word per renaming class, of length <= max_len with at most ``letters`` letters."""
    return [w for k in range(1, max_len + 1) for w in restricted_growth_words(k) if len(content(w)) <= letters]


def theory_of_u_violations(theory: TheoryOfU, max_len: int, letters: int,
                           depth_bound: Optional[int] = None) -> List[str]:
    """Check the description of the identities of U on bounded words against bounded deduction."""
    violations = []
    bounded = theory.theory(max_len, letters)
    basis = theory.basis(max_len, letters)
    zero_words = [identity.lhs for identity in basis if identity.rhs is ZERO]

    for cls in bounded.classes():
        for a in cls:
            for b in cls:
                if str(a) >= str(b):
                    continue
                renamed = any(letter_renaming(x, a) is not None and letter_renaming(x, a) == letter_renaming(y, b)
                              for x, y in ((theory.u, theory.w), (theory.w, theory.u)))
                if not ((theory.in_ideal(a) and theory.in_ideal(b)) or renamed):
                    violations.append(f"unexpected identity {a} = {b}")

    for s in bounded.words:
        if theory.in_ideal(s) != (zero_member(zero_words, s) is not None):
            violations.append(f"ideal membership of {s} disagrees with the bounded basis")

    for phi in permutations(indexed_letters(letters), len(content(theory.u))):
        mapping = dict(zip(sorted(content(theory.u), key=letter_key), phi))
        a = Word(tuple(mapping[x] for x in theory.u.letters()))
        b = Word(tuple(mapping[x] for x in theory.w.letters()))
        if len(a.items) > max_len:
            continue
        if not theory.holds(Identity(a, b)):
            violations.append(f"renaming {a} = {b} rejected")
        elif not isinstance(derive(basis, Identity(a, b), depth_bound), Proved):
            violations.append(f"renaming {a} = {b} not derived")
    return violations
