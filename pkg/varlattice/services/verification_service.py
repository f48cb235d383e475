"""Acceptance suites. Each suite returns a ``SuiteReport``; a failed expectation is a
violation in the report, never an exception."""
from collections import Counter
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Union
import json
import logging
import random

import yaml

from varlattice.core.config import Config
from varlattice.core.errors import InputError, PreconditionFailed
from varlattice.services.deduction_service import Proved, derive, replay, splice_permutations, step_permutations
from varlattice.services.epigroup_service import normalize_single_letter_unary
from varlattice.services.lattice_service import (
    FiniteLattice,
    adjoin_top,
    boolean_lattice,
    build_lattice,
    chain,
    classify_all,
    complements,
    direct_product,
    is_distributive_lattice,
    is_neutral_by_sublattice,
    principal_filter,
    random_lattice,
    verify_neutral_atom_equivalence,
)
from varlattice.services.permgroup_service import (
    Subgroup,
    all_subgroups,
    closure,
    named_subgroups,
    parse_cycles,
    subgroup_join,
    subgroup_lattice,
    symmetric_group,
    trivial_group,
)
from varlattice.services.variety_service import (
    INF,
    TRIVIAL,
    FamilyHandle,
    SubgroupHandle,
    TheoryOfU,
    VarietyHandle,
    basis_of,
    bounded_theory,
    bounded_words,
    family_handles,
    family_join,
    family_lattice,
    family_leq,
    family_meet,
    free_object,
    holds,
    is_zero,
    perm_group,
    perm_transfer_harness,
    satisfies_overcommutative_necessary,
    satisfies_semilattice,
    split_violations,
    theory_of_u_violations,
)
from varlattice.services.word_service import (
    Bar,
    Identity,
    Word,
    ZERO,
    canonical_identity,
    content,
    equivalent,
    incomparable,
    indexed_letters,
    parse_identity,
    parse_word,
    pattern_leq,
    permutation_between,
    permutational_identity,
)

logger = logging.getLogger(__name__)

EXPECTATIONS_VERSION = 1


@dataclass
class SuiteReport:
    suite: str
    checks: int = 0
    violations: List[str] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def check(self, condition: bool, message: str) -> bool:
        self.checks += 1
        if not condition:
            self.violations.append(message)
            logger.debug(f"[{self.suite}] violation: {message}")
        return bool(condition)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'suite': self.suite,
            'ok': self.ok,
            'checks': self.checks,
            'violations': list(self.violations),
            'details': self.details,
        }


def load_expectations(name: str, directory: Optional[Path] = None) -> Dict[str, Any]:
    path = Path(directory or Config.EXPECTATIONS_DIR) / f"{name}.yaml"
    if not path.exists():
        raise InputError(f"Expectation file not found: {path}")
    with open(path) as f:
        document = yaml.safe_load(f)
    if not isinstance(document, dict) or document.get('version') != EXPECTATIONS_VERSION:
        raise InputError(f"Unsupported expectation file {path}: version must be {EXPECTATIONS_VERSION}")
    return document


def load_lattice_fixtures(directory: Optional[Path] = None) -> Dict[str, FiniteLattice]:
    folder = Path(directory or Config.EXPECTATIONS_DIR) / 'lattices'
    fixtures = {}
    for path in sorted(folder.glob('*.json')):
        with open(path) as f:
            document = json.load(f)
        fixtures[path.stem] = build_lattice(document['covers'], document['elements'])
    return fixtures


def resolve_subgroup(n: int, ref: Union[str, Sequence[str]]) -> Subgroup:
    """A label, a generator string like ``(12);(13)(24)``, or a list of either (their join)."""
    if isinstance(ref, (list, tuple)):
        return reduce(subgroup_join, (resolve_subgroup(n, part) for part in ref), trivial_group(n))
    ref = str(ref).strip()
    if ref.startswith('('):
        return closure([parse_cycles(g, n) for g in ref.split(';') if g.strip()], n)
    names = named_subgroups(n)
    if ref not in names:
        raise InputError(f"Unknown subgroup name {ref} in S_{n}")
    return names[ref]


def implication_violations(lattice: FiniteLattice) -> List[str]:
    """standard => cancellable => modular; neutral => distributive and standard;
    every element of a distributive lattice carries every flag."""
    violations = []
    distributive = is_distributive_lattice(lattice)
    for flags in classify_all(lattice):
        label = lattice.label(flags.element)
        if flags.standard and not flags.cancellable:
            violations.append(f"{label}: standard but not cancellable")
        if flags.cancellable and not flags.modular:
            violations.append(f"{label}: cancellable but not modular")
        if flags.neutral and not (flags.distributive and flags.standard):
            violations.append(f"{label}: neutral but not distributive and standard")
        if distributive and not all((flags.neutral, flags.distributive, flags.standard,
                                     flags.modular, flags.cancellable)):
            violations.append(f"{label}: distributive lattice element missing a flag")
    return violations


def random_unary_word(rng: random.Random, size: int, letter: str = 'x') -> Word:
    """Random one-letter unary word with at most ``size`` letters and bars, containing a bar."""
    def build(budget: int) -> Word:
        items: List[Union[str, Bar]] = []
        while budget > 0 and (not items or rng.random() < 0.6):
            if budget >= 2 and rng.random() < 0.4:
                inner = rng.randint(1, budget - 1)
                items.append(Bar(build(inner)))
                budget -= inner + 1
            else:
                items.append(letter)
                budget -= 1
        return Word(tuple(items) or (letter,))

    word = build(max(size - 1, 1))
    if word.is_semigroup:
        word = Word((Bar(word),))
    return word


def random_covering_word(rng: random.Random, alphabet: Sequence[str], size: int) -> Word:
    """Random semigroup word of length ``size`` whose content is all of ``alphabet``."""
    letters = list(alphabet) + [rng.choice(alphabet) for _ in range(size - len(alphabet))]
    rng.shuffle(letters)
    return Word(tuple(letters))


def oracle_handles() -> List[VarietyHandle]:
    """T, every X/Y_{m,n} with m <= n drawn from {2, 3, 4, inf}, and D(G, 3) for all G <= S_3."""
    handles: List[VarietyHandle] = [TRIVIAL]
    values = [2, 3, 4, INF]
    for m in values:
        for n in values:
            if m <= n:
                for square_zero in (False, True):
                    handle = FamilyHandle(m, n, square_zero)
                    if handle not in handles:
                        handles.append(handle)
    handles += [SubgroupHandle(g) for g in all_subgroups(3)]
    return handles


class VerificationService:
    def __init__(self, config=Config):
        self.config = config
        self.suites: Dict[str, Callable[..., SuiteReport]] = {
            'subgroups': self.subgroups,
            'special-elements': self.special_elements,
            'family-lattice': self.family_lattice,
            'perm-transfer': self.perm_transfer,
            'zero-reduced': self.zero_reduced,
            'incomparability': self.incomparability,
            'oracles': self.oracles,
            'unary': self.unary,
            'theory-u': self.theory_u,
        }

    def run(self, suite: str, **options) -> SuiteReport:
        if suite not in self.suites:
            raise InputError(f"Unknown suite {suite}; choose from {', '.join(self.suites)}")
        logger.info(f"Running suite {suite}")
        report = self.suites[suite](**options)
        logger.info(f"Suite {suite}: {report.checks} checks, {len(report.violations)} violations")
        return report

    def _expectations(self, name: str) -> Dict[str, Any]:
        return load_expectations(name, self.config.EXPECTATIONS_DIR)

    def _seed(self, seed: Optional[int]) -> int:
        return self.config.DEFAULT_SEED if seed is None else seed

    def subgroups(self, n: int = 4) -> SuiteReport:
        """Sub(S_n) against the stored claims for n = 3, 4, 5."""
        expected = self._expectations(f'sub_s{n}')
        report = SuiteReport('subgroups')
        sub = subgroup_lattice(n)
        lattice = sub.lattice
        node = {label: i for i, label in enumerate(lattice.labels)}

        def index(ref) -> int:
            return sub.node_of(resolve_subgroup(n, ref))

        report.check(lattice.size == expected['nodes'], f"node count {lattice.size} != {expected['nodes']}")
        if 'height' in expected:
            report.check(lattice.height[lattice.top] == expected['height'],
                         f"height {lattice.height[lattice.top]} != {expected['height']}")
        if 'order_profile' in expected:
            profile = Counter(group.order for group in sub.nodes)
            report.check(dict(profile) == {int(k): v for k, v in expected['order_profile'].items()},
                         f"order profile {dict(sorted(profile.items()))}")
        atoms = sorted(lattice.label(a) for a in lattice.atoms())
        if 'atoms' in expected:
            report.check(atoms == sorted(expected['atoms']), f"atoms {atoms}")
        if 'atoms_count' in expected:
            report.check(len(atoms) == expected['atoms_count'], f"atom count {len(atoms)}")
        for lower, upper in expected.get('inclusions', []):
            report.check(bool(lattice.leq[index(lower), index(upper)]), f"{lower} is not below {upper}")

        flags = classify_all(lattice)
        cancellable = sorted(lattice.label(f.element) for f in flags if f.cancellable)
        report.check(cancellable == sorted(expected['cancellable']), f"cancellable elements {cancellable}")
        if 'modular_contain' in expected:
            floor = index(expected['modular_contain'])
            for f in flags:
                if f.modular and f.element not in (lattice.bottom, lattice.top):
                    report.check(bool(lattice.leq[floor, f.element]),
                                 f"modular {lattice.label(f.element)} does not contain {expected['modular_contain']}")
        for ref, claimed in expected.get('complements', {}).items():
            found = {lattice.label(y) for y in complements(lattice, index(ref))}
            missing = sorted(set(claimed) - found)
            report.check(not missing, f"complements of {ref} miss {missing}")
        for ref, size in expected.get('filters', {}).items():
            up = principal_filter(lattice, index(ref))
            report.check(len(up) == size, f"filter of {ref} has {len(up)} elements, expected {size}")
        for message in implication_violations(lattice):
            report.check(False, message)

        report.details = {'n': n, 'nodes': lattice.size, 'cancellable': cancellable,
                          'named': sorted(label for label in node if not label.startswith('G'))}
        return report

    def special_elements(self, seed: Optional[int] = None, count: Optional[int] = None,
                         size: Optional[int] = None) -> SuiteReport:
        """Implication chain, sublattice cross-check and neutral-atom equivalence."""
        report = SuiteReport('special-elements')
        rng = random.Random(self._seed(seed))
        count = self.config.RANDOM_LATTICES if count is None else count
        size = self.config.RANDOM_LATTICE_SIZE if size is None else size

        fixtures = load_lattice_fixtures(self.config.EXPECTATIONS_DIR)
        fixtures['chain4'] = chain(4)
        fixtures['boolean4'] = boolean_lattice(4)
        for name, lattice in fixtures.items():
            for message in implication_violations(lattice):
                report.check(False, f"{name}: {message}")
            if lattice.size <= 12:
                for f in classify_all(lattice):
                    report.check(f.neutral == is_neutral_by_sublattice(lattice, f.element),
                                 f"{name}: neutrality of {lattice.label(f.element)} disagrees with the sublattice test")
            report.check(verify_neutral_atom_equivalence(lattice).ok, f"{name}: neutral atom equivalence fails")

        for k in range(count):
            lattice = random_lattice(rng, size)
            violations = implication_violations(lattice)
            report.check(not violations, f"random lattice #{k}: {violations}")
            report.check(verify_neutral_atom_equivalence(lattice).ok, f"random lattice #{k}: neutral atom equivalence")
        report.details = {'fixtures': sorted(fixtures), 'random_lattices': count, 'seed': self._seed(seed)}
        return report

    def family_lattice(self, caps: Sequence[int] = (3, 4, 5, 6)) -> SuiteReport:
        """Distributivity, low-end covers and cancellability in the doubled lattice."""
        expected = self._expectations('family_lattice')
        report = SuiteReport('family-lattice')

        def upper(lattice: FiniteLattice, label: str) -> List[str]:
            return sorted(lattice.label(j) for j in lattice.upper_covers(lattice.index_of(label)))

        sizes = {}
        for cap in caps:
            lattice = family_lattice(cap)
            handles = family_handles(cap)
            sizes[cap] = lattice.size
            if cap in expected['sizes']:
                report.check(lattice.size == expected['sizes'][cap], f"cap {cap}: {lattice.size} elements")
            report.check(is_distributive_lattice(lattice), f"cap {cap}: not distributive")
            for label, covers in (expected["always"].items() if cap >= 3 else ()):
                report.check(upper(lattice, label) == sorted(covers), f"cap {cap}: upper covers of {label}")
            if expected['low_end']['cap'] == cap:
                for label, covers in expected['low_end']['upper_covers'].items():
                    report.check(upper(lattice, label) == sorted(covers),
                                 f"cap {cap}: upper covers of {label} are {upper(lattice, label)}")
            for h in handles:
                if isinstance(h, FamilyHandle) and h.letter == 'Y':
                    x = FamilyHandle(h.m, h.n, False)
                    report.check(x.label in upper(lattice, h.label), f"cap {cap}: {x.label} does not cover {h.label}")

            for i, a in enumerate(handles):
                for j, b in enumerate(handles):
                    report.check(lattice.label(lattice.join(i, j)) == family_join(a, b).label,
                                 f"cap {cap}: join of {a.label} and {b.label}")
                    report.check(lattice.label(lattice.meet(i, j)) == family_meet(a, b).label,
                                 f"cap {cap}: meet of {a.label} and {b.label}")

            doubled = adjoin_top(direct_product(lattice, chain(2)))
            stuck = [doubled.label(f.element) for f in classify_all(doubled) if not f.cancellable]
            report.check(not stuck, f"cap {cap}: not cancellable in the doubled lattice: {stuck}")

            theories = [bounded_theory(h, cap + 1, 2) for h in handles]
            for i, a in enumerate(handles):
                for j, b in enumerate(handles):
                    if family_leq(a, b):
                        report.check(theories[j].is_finer_than(theories[i]),
                                     f"cap {cap}: theory of {b.label} does not refine that of {a.label}")
        report.details = {'sizes': sizes}
        return report

    def perm_transfer(self, n: Optional[int] = None, depth: Optional[int] = None) -> SuiteReport:
        """Non-cancellable subgroups transfer to non-cancellable subgroup-derived varieties."""
        expected = self._expectations('perm_transfer')
        report = SuiteReport('perm-transfer')
        results = []
        for entry in expected['witnesses']:
            if n is not None and entry['n'] != n:
                continue
            degree = entry['n']
            groups = [resolve_subgroup(degree, entry[key]) for key in ('group', 'first', 'second')]
            result = perm_transfer_harness(*groups, depth_bound=depth)
            results.append(result.to_dict())
            report.check(result.ok, f"witness {entry['group']}, {entry['first']}, {entry['second']}: {result.to_dict()}")
        for entry in expected.get('rejected', []):
            if n is not None and entry['n'] != n:
                continue
            degree = entry['n']
            groups = [resolve_subgroup(degree, entry[key]) for key in ('group', 'first', 'second')]
            try:
                perm_transfer_harness(*groups, depth_bound=depth)
                accepted = True
            except PreconditionFailed:
                accepted = False
            report.check(not accepted, f"precondition accepted for {entry}")
        report.details = {'witnesses': results}
        return report

    def zero_reduced(self, depth: Optional[int] = None) -> SuiteReport:
        """Derivations behind the 0-reduced identities of a nil-variety."""
        expected = self._expectations('zero_reduced')
        report = SuiteReport('zero-reduced')
        proofs = []
        for entry in expected['derivations']:
            basis = [parse_identity(text) for text in entry['basis']]
            literal = bool(entry.get('literal', False))
            for text in entry['goals']:
                goal = parse_identity(text)
                verdict = derive(basis, goal, depth_bound=depth, literal=literal)
                if not report.check(isinstance(verdict, Proved), f"{text} not derived from {entry['basis']}"):
                    continue
                assert isinstance(verdict, Proved)
                report.check(all(replay(trace) for trace in verdict.traces), f"trace for {text} does not replay")
                pi = permutation_between(goal.lhs, goal.rhs) if goal.rhs is not ZERO else None  # type: ignore[arg-type]
                if pi is not None:
                    perms = step_permutations(verdict.trace)
                    report.check(perms is not None and splice_permutations(perms, pi.n) == pi,
                                 f"step permutations of {text} do not splice to the goal")
                proofs.append({'goal': text, 'literal': literal, 'steps': [len(t) for t in verdict.traces]})
        report.details = {'proofs': proofs}
        return report

    def incomparability(self, seed: Optional[int] = None, pairs: Optional[int] = None) -> SuiteReport:
        """Stored incomparable families and non-relations, then random same-length, same-content pairs."""
        expected = self._expectations('zero_reduced')
        report = SuiteReport('incomparability')
        for family in expected['incomparable']:
            words = [parse_word(text) for text in family]
            for u, v in combinations(words, 2):
                report.check(incomparable(u, v), f"{u} and {v} are comparable")
        for lower, upper in expected['not_below']:
            report.check(pattern_leq(parse_word(lower), parse_word(upper)) is None, f"{lower} <= {upper}")

        rng = random.Random(self._seed(seed))
        pairs = self.config.RANDOM_WORD_PAIRS if pairs is None else pairs
        tested = 0
        attempts = 0
        while tested < pairs and attempts < 20 * pairs:
            attempts += 1
            size = rng.randint(2, 7)
            alphabet = indexed_letters(rng.randint(1, min(4, size)))
            letters = [rng.choice(alphabet) for _ in range(size)]
            shuffled = letters[:]
            rng.shuffle(shuffled)
            u, v = Word(tuple(letters)), Word(tuple(shuffled))
            if equivalent(u, v):
                continue
            tested += 1
            report.check(incomparable(u, v), f"{u} and {v} are comparable")

        # Same length and content, different letter multiplicities
        mixed = 0
        attempts = 0
        while mixed < pairs and attempts < 20 * pairs:
            attempts += 1
            alphabet = indexed_letters(rng.randint(2, 4))
            size = rng.randint(len(alphabet) + 1, 7)
            u, v = random_covering_word(rng, alphabet, size), random_covering_word(rng, alphabet, size)
            if sorted(u.letters()) == sorted(v.letters()) or equivalent(u, v):
                continue
            mixed += 1
            report.check(incomparable(u, v), f"{u} and {v} are comparable")
        report.details = {'random_pairs': tested, 'content_pairs': mixed, 'seed': self._seed(seed)}
        return report

    def oracles(self, max_len: int = 4, letters: int = 3, depth: Optional[int] = None,
                seed: Optional[int] = None) -> SuiteReport:
        """Decision procedures against free objects, deduction and the perm-group pattern."""
        report = SuiteReport('oracles')
        rng = random.Random(self._seed(seed))
        words = bounded_words(max_len, letters)
        handles = oracle_handles()
        derived = 0

        for handle in handles:
            free = free_object(handle, letters)
            values = [free.evaluate(w) for w in words]
            rejected: Dict[Any, Identity] = {}
            for i, u in enumerate(words):
                report.check(holds(handle, Identity(u, ZERO)) == (values[i] is ZERO),
                             f"{handle.text}: {u} = 0 disagrees with the free object")
                for j in range(i + 1, len(words)):
                    decision = holds(handle, Identity(u, words[j]))
                    report.check(decision == (values[i] == values[j]),
                                 f"{handle.text}: {u} = {words[j]} disagrees with the free object")
                    if not decision:
                        identity = Identity(u, words[j])
                        rejected.setdefault(canonical_identity(identity), identity)
            if len(free) <= 50:
                report.check(free.is_associative(), f"{handle.text}: free object is not associative")
            basis = basis_of(handle)
            for identity in rejected.values():
                derived += 1
                verdict = derive(basis, identity, depth_bound=depth)
                report.check(not isinstance(verdict, Proved), f"{handle.text}: derived rejected {identity}")
            for text in ('~(x1)', 'x1 ~(x2)', '~(~(x1)) x1'):
                report.check(is_zero(handle, parse_word(text)), f"{handle.text}: {text} is not zero")

        for m in range(2, 6):
            for n in range(m, 6):
                for square_zero in (False, True):
                    handle = FamilyHandle(m, n, square_zero)
                    for k in range(2, 6):
                        group = perm_group(handle, k)
                        target = symmetric_group(k) if k >= m else trivial_group(k)
                        report.check(group == target, f"Perm_{k}({handle.label}) has order {group.order}")
                    if n <= 4:
                        for k in range(2, n + 1):
                            report.check(not split_violations(handle, k), f"{handle.label}: split fails at {k}")
        for n in (3, 4):
            for group in all_subgroups(n):
                report.check(perm_group(SubgroupHandle(group), n) == group,
                             f"Perm_{n}(D(G,{n})) differs from G of order {group.order}")

        for _ in range(200):
            u, v = rng.choice(words), rng.choice(words)
            identity = Identity(u, v)
            report.check(satisfies_semilattice(identity) == (content(u) == content(v)),
                         f"semilattice guard on {identity}")
        report.check(not satisfies_semilattice(Identity(words[0], ZERO)), "semilattice guard accepts a zero identity")
        for pi in symmetric_group(3).members:
            report.check(satisfies_overcommutative_necessary(permutational_identity(pi)),
                         "overcommutative guard rejects a permutational identity")
        report.check(not satisfies_overcommutative_necessary(parse_identity('x x = x')),
                     "overcommutative guard accepts x x = x")

        report.details = {'handles': [h.text for h in handles], 'words': len(words), 'derived': derived}
        return report

    def unary(self, seed: Optional[int] = None, count: Optional[int] = None, size: int = 8) -> SuiteReport:
        """Single-letter unary normal forms: stored examples, idempotence and nil collapse."""
        expected = self._expectations('unary')
        report = SuiteReport('unary')
        for entry in expected['examples']:
            form = normalize_single_letter_unary(parse_word(entry['word']))
            report.check(list(form.pair) == list(entry['pair']), f"{entry['word']} -> {form.pair}")
        rng = random.Random(self._seed(seed))
        count = self.config.RANDOM_UNARY_WORDS if count is None else count
        nil = FamilyHandle(2, 3)
        for _ in range(count):
            w = random_unary_word(rng, size)
            form = normalize_single_letter_unary(w)
            report.check(form.q >= 1, f"{w}: q = {form.q}")
            report.check(normalize_single_letter_unary(form.word()).pair == form.pair, f"{w}: not idempotent")
            report.check(is_zero(nil, w), f"{w} is not zero in {nil.label}")
        report.details = {'random_words': count, 'seed': self._seed(seed)}
        return report

    def theory_u(self, max_len: int = 4, letters: int = 3, depth: Optional[int] = None) -> SuiteReport:
        """Identities of U = N ^ var{x x y = x y x} on short words."""
        report = SuiteReport('theory-u')
        theory = TheoryOfU(parse_word('x x y'), parse_word('y x x'), parse_word('x y x'))
        report.checks += 1
        report.violations.extend(theory_of_u_violations(theory, max_len, letters, depth))
        bounded = theory.theory(max_len, letters)
        report.details = {'classes': len(bounded.classes()),
                          'basis': [str(identity) for identity in theory.basis(max_len, letters)]}
        return report
