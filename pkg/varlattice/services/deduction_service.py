"""Bounded equational deduction for semigroup identities.

A deduction step rewrites ``a . s(src) . b`` into ``a . s(tgt) . b`` for one
basis identity used in either orientation. In the native zero convention a
0-reduced identity ``w = 0`` rewrites any factor matching an instance of
``w`` to ZERO, which absorbs the whole word; ZERO is never expanded. The
literal convention instead expands ``w = 0`` into ``w z = w`` and ``z w = w``
with a fresh letter ``z``.
"""
from dataclasses import dataclass, field
from functools import reduce
from itertools import product
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple, Union
import logging

from varlattice.core.config import Config
from varlattice.core.errors import UnsupportedUnary
from varlattice.services.permgroup_service import Permutation, compose, identity as identity_permutation
from varlattice.services.word_service import (
    Identity,
    Term,
    Witness,
    Word,
    ZERO,
    Zero,
    content,
    iter_matches,
    letter_key,
    pattern_leq,
    permutation_between,
    render_term,
)

logger = logging.getLogger(__name__)

Letters = Tuple[str, ...]
Side = Union[Letters, Zero]
Node = Union[Letters, Zero]

LR = 'lr'
RL = 'rl'


@dataclass(frozen=True)
class Rule:
    lhs: Letters
    rhs: Side
    source: int

    def side(self, orientation: str) -> Tuple[Side, Side]:
        return (self.lhs, self.rhs) if orientation == LR else (self.rhs, self.lhs)

    def __str__(self):
        rhs = '0' if self.rhs is ZERO else ' '.join(self.rhs)  # type: ignore[arg-type]
        return f"{' '.join(self.lhs)} = {rhs}"


@dataclass(frozen=True)
class DeductionStep:
    """One rewrite; ``word`` is the word the step produces."""

    word: Term
    rule_index: int
    orientation: str
    substitution: Dict[str, Letters] = field(hash=False)
    left_context: Letters
    right_context: Letters

    def to_dict(self) -> Dict[str, object]:
        return {
            'word': render_term(self.word),
            'rule_index': self.rule_index,
            'orientation': self.orientation,
            'substitution': {k: ' '.join(v) for k, v in sorted(self.substitution.items(), key=lambda kv: letter_key(kv[0]))},
            'left_context': ' '.join(self.left_context),
            'right_context': ' '.join(self.right_context),
        }


@dataclass(frozen=True)
class DeductionTrace:
    start: Term
    steps: Tuple[DeductionStep, ...]
    rules: Tuple[Rule, ...]

    @property
    def end(self) -> Term:
        return self.steps[-1].word if self.steps else self.start

    def words(self) -> List[Term]:
        return [self.start] + [step.word for step in self.steps]

    def __len__(self):
        return len(self.steps)

    def to_list(self) -> List[Dict[str, object]]:
        first = {
            'word': render_term(self.start),
            'rule_index': None,
            'orientation': None,
            'substitution': {},
            'left_context': '',
            'right_context': '',
        }
        return [first] + [step.to_dict() for step in self.steps]


@dataclass(frozen=True)
class Proved:
    traces: Tuple[DeductionTrace, ...]

    @property
    def trace(self) -> DeductionTrace:
        return self.traces[0]

    @property
    def verdict(self) -> str:
        return 'proved'


@dataclass(frozen=True)
class Unknown:
    explored: int
    reason: str

    @property
    def verdict(self) -> str:
        return 'unknown'


Verdict = Union[Proved, Unknown]


def _letters(term: Term) -> Node:
    if term is ZERO:
        return ZERO
    assert isinstance(term, Word)
    if not term.is_semigroup:
        raise UnsupportedUnary(term)
    return term.letters()


def _term(node: Node) -> Term:
    return ZERO if node is ZERO else Word(node)  # type: ignore[arg-type]


def _fresh(used: Iterable[str], count: int = 1, prefix: str = 't') -> List[str]:
    used = set(used)
    fresh, i = [], 1
    while len(fresh) < count:
        if f'{prefix}{i}' not in used:
            fresh.append(f'{prefix}{i}')
        i += 1
    return fresh


def compile_rules(basis: Sequence[Identity], literal: bool = False) -> Tuple[Rule, ...]:
    """Basis identities as rewrite rules; ``Rule.source`` is the basis index."""
    rules: List[Rule] = []
    for index, identity in enumerate(basis):
        lhs = _letters(identity.lhs)
        rhs = _letters(identity.rhs)
        if rhs is ZERO and literal:
            (z,) = _fresh(lhs, prefix='z')
            rules.append(Rule(lhs + (z,), lhs, index))  # type: ignore[operator]
            rules.append(Rule((z,) + lhs, lhs, index))  # type: ignore[operator]
        else:
            rules.append(Rule(lhs, rhs, index))  # type: ignore[arg-type]
    return tuple(rules)


def _apply(sigma: Dict[str, Letters], side: Letters) -> Letters:
    return tuple(letter for v in side for letter in sigma[v])


def _rewrites(word: Letters, rules: Sequence[Rule], size_bound: int) -> Iterator[Tuple[Node, DeductionStep]]:
    pool = None
    for index, rule in enumerate(rules):
        for orientation in (LR, RL):
            source, target = rule.side(orientation)
            if source is ZERO:
                continue
            assert isinstance(source, tuple)
            free = [] if target is ZERO else sorted(set(target) - set(source), key=letter_key)  # type: ignore[arg-type]
            if free and pool is None:
                pool = sorted(set(word), key=letter_key) + _fresh(word)
            for i in range(len(word)):
                for j in range(i + len(source), len(word) + 1):
                    left, right = word[:i], word[j:]
                    for sigma in iter_matches(source, word[i:j]):
                        for choice in (product(pool, repeat=len(free)) if free else [()]):  # type: ignore[arg-type]
                            full = dict(sigma)
                            full.update({v: (letter,) for v, letter in zip(free, choice)})
                            if target is ZERO:
                                result: Node = ZERO
                            else:
                                result = left + _apply(full, target) + right  # type: ignore[arg-type]
                                if len(result) > size_bound:
                                    continue
                            yield result, DeductionStep(_term(result), index, orientation, full, left, right)


def one_step_rewrites(w: Word, identity: Identity, size_bound: int, literal: bool = False) -> Set[Term]:
    """Every word one rewrite away from ``w`` using ``identity`` in either orientation."""
    rules = compile_rules([identity], literal=literal)
    return {_term(result) for result, _ in _rewrites(_letters(w), rules, size_bound)}  # type: ignore[arg-type]


def _search(start: Node, goal: Node, rules: Sequence[Rule], depth_bound: int,
            size_bound: int) -> Tuple[Optional[List[Tuple[Node, Optional[DeductionStep]]]], int]:
    """Bidirectional breadth-first search; returns the path from start to goal."""
    if start == goal:
        return [(start, None)], 1
    parents: Tuple[Dict, Dict] = ({start: None}, {goal: None})
    frontiers: Tuple[List[Node], List[Node]] = ([start], [goal])
    depths = [0, 0]
    meeting = None
    while meeting is None and depths[0] + depths[1] < depth_bound:
        # ZERO is never expanded
        live = [[node for node in frontier if node is not ZERO] for frontier in frontiers]
        candidates = [s for s in (0, 1) if live[s]]
        if not candidates:
            break
        side = min(candidates, key=lambda s: len(live[s]))
        seen, other = parents[side], parents[1 - side]
        fresh: List[Node] = []
        for node in live[side]:
            for result, step in _rewrites(node, rules, size_bound):  # type: ignore[arg-type]
                if result in seen:
                    continue
                seen[result] = (node, step)
                fresh.append(result)
                if result in other:
                    meeting = result
                    break
            if meeting is not None:
                break
        frontiers = (fresh, frontiers[1]) if side == 0 else (frontiers[0], fresh)
        depths[side] += 1
        logger.debug(f"Deduction search: side {side} depth {depths[side]} frontier {len(fresh)}")
    explored = len(parents[0]) + len(parents[1])
    if meeting is None:
        return None, explored

    forward: List[Tuple[Node, Optional[DeductionStep]]] = []
    node = meeting
    while parents[0][node] is not None:
        previous, step = parents[0][node]
        forward.append((node, step))
        node = previous
    forward.reverse()

    # Steps found from the goal side are replayed backwards with flipped orientation
    backward: List[Tuple[Node, Optional[DeductionStep]]] = []
    node = meeting
    while parents[1][node] is not None:
        previous, step = parents[1][node]
        flipped = DeductionStep(_term(previous), step.rule_index, RL if step.orientation == LR else LR,
                                step.substitution, step.left_context, step.right_context)
        backward.append((previous, flipped))
        node = previous
    return [(start, None)] + forward + backward, explored


def _trace(start: Node, path: List[Tuple[Node, Optional[DeductionStep]]], rules: Sequence[Rule]) -> DeductionTrace:
    steps = tuple(step for _, step in path if step is not None)
    return DeductionTrace(_term(start), steps, tuple(rules))


def derive(basis: Sequence[Identity], goal: Identity, depth_bound: Optional[int] = None,
           size_bound: Optional[int] = None, literal: bool = False) -> Verdict:
    """Bounded search for a deduction of ``goal`` from ``basis``.

    ``Proved`` is sound; ``Unknown`` only means nothing was found within the
    bounds. A literal 0-reduced goal ``w = 0`` is proved as the two identities
    ``w t = w`` and ``t w = w``.
    """
    depth_bound = Config.DEFAULT_DEPTH if depth_bound is None else depth_bound
    lhs = _letters(goal.lhs)
    rhs = _letters(goal.rhs)
    longest = max(len(lhs), 0 if rhs is ZERO else len(rhs))  # type: ignore[arg-type]
    rules = compile_rules(basis, literal=literal)

    if rhs is ZERO and literal:
        (t,) = _fresh(lhs)
        bound = size_bound if size_bound is not None else longest + 1 + Config.DEFAULT_SIZE_SLACK
        traces = []
        explored = 0
        for start in (lhs + (t,), (t,) + lhs):  # type: ignore[operator]
            path, count = _search(start, lhs, rules, depth_bound, bound)
            explored += count
            if path is None:
                reason = f"no deduction of {' '.join(start)} = {' '.join(lhs)} within bounds"  # type: ignore[arg-type]
                return Unknown(explored, reason)
            traces.append(_trace(start, path, rules))
        logger.info(f"Proved {goal} with traces of length {[len(tr) for tr in traces]}")
        return Proved(tuple(traces))

    bound = size_bound if size_bound is not None else longest + Config.DEFAULT_SIZE_SLACK
    path, explored = _search(lhs, rhs, rules, depth_bound, bound)
    if path is None:
        logger.info(f"No deduction of {goal} within depth {depth_bound} and size {bound} ({explored} words)")
        return Unknown(explored, f"no deduction within depth {depth_bound} and size {bound}")
    trace = _trace(lhs, path, rules)
    logger.info(f"Proved {goal} in {len(trace)} steps")
    return Proved((trace,))


def replay(trace: DeductionTrace) -> bool:
    """Re-check every step: previous = a s(src) b and next = a s(tgt) b."""
    previous = _letters(trace.start)
    for step in trace.steps:
        if not 0 <= step.rule_index < len(trace.rules):
            return False
        source, target = trace.rules[step.rule_index].side(step.orientation)
        for side, word in ((source, previous), (target, _letters(step.word))):
            if side is ZERO:
                if word is not ZERO:
                    return False
                continue
            try:
                expected = step.left_context + _apply(step.substitution, side) + step.right_context  # type: ignore[arg-type]
            except KeyError:
                return False
            if word != expected:
                return False
        previous = _letters(step.word)
    return True


def step_permutations(trace: DeductionTrace) -> Optional[List[Permutation]]:
    """Positional step permutations when every word of the trace is linear with the same content."""
    words = trace.words()
    if any(w is ZERO for w in words):
        return None
    perms = []
    for u, v in zip(words, words[1:]):
        pi = permutation_between(u, v)  # type: ignore[arg-type]
        if pi is None:
            return None
        perms.append(pi)
    return perms


def splice_permutations(perms: Sequence[Permutation], n: int) -> Permutation:
    """Total permutation of a chain of steps: the last step's permutation acts first."""
    return reduce(compose, reversed(perms), identity_permutation(n))


def zero_member(zero_words: Iterable[Word], w: Word) -> Optional[Tuple[Word, Witness]]:
    """A basis word b <= w with its witness; exact membership for 0-reduced bases."""
    if not w.is_semigroup:
        raise UnsupportedUnary(w)
    for b in sorted(zero_words, key=lambda u: (len(u.items), [letter_key(x) for x in u.letters()])):
        witness = pattern_leq(b, w)
        if witness is not None:
            return b, witness
    return None


def basis_content(basis: Sequence[Identity]) -> Set[str]:
    letters: Set[str] = set()
    for identity in basis:
        letters |= content(identity.lhs)
        if identity.rhs is not ZERO:
            letters |= content(identity.rhs)  # type: ignore[arg-type]
    return letters
