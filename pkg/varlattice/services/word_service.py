"""Words of the free unary semigroup, identities, and the pattern order on semigroup words.

Grammar::

    word     := factor+
    factor   := atom ('^' digits)?
    atom     := letter | '~(' word ')' | '(' word ')'
    letter   := [A-Za-z][A-Za-z0-9]*
    identity := word '=' (word | '0')

Tokens are separated by whitespace; ``~( ... )`` is the unary pseudoinverse.
"""
from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, FrozenSet, Iterator, List, Mapping, Optional, Sequence, Tuple, Union
import math
import re

from varlattice.core.errors import (
    DegreeMismatch,
    InvalidWord,
    UndefinedLetter,
    UnsupportedUnary,
    WordSyntaxError,
)
from varlattice.services.permgroup_service import Permutation

Length = Union[int, float]


class Zero:
    """The absorbing zero of a nil-semigroup; right-hand side of a 0-reduced identity."""

    _instance: Optional['Zero'] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return 'ZERO'

    def __str__(self):
        return '0'

    def __reduce__(self):
        return (Zero, ())


ZERO = Zero()


@dataclass(frozen=True)
class Bar:
    word: 'Word'


Item = Union[str, Bar]


@dataclass(frozen=True)
class Word:
    """Nonempty flattened sequence of letters and barred subwords."""

    items: Tuple[Item, ...]

    def __post_init__(self):
        if not self.items:
            raise InvalidWord("Words are nonempty")

    @classmethod
    def of(cls, *parts: Union[str, Bar, 'Word', Sequence[Item]]) -> 'Word':
        items: List[Item] = []
        for part in parts:
            if isinstance(part, Word):
                items.extend(part.items)
            elif isinstance(part, (str, Bar)):
                items.append(part)
            else:
                items.extend(part)
        return cls(tuple(items))

    def __mul__(self, other: 'Word') -> 'Word':
        return Word(self.items + other.items)

    def __str__(self):
        return render_word(self)

    def __repr__(self):
        return f"Word({render_word(self)!r})"

    @property
    def is_semigroup(self) -> bool:
        return all(isinstance(item, str) for item in self.items)

    def letters(self) -> Tuple[str, ...]:
        """Letter sequence of a semigroup word."""
        if not self.is_semigroup:
            raise UnsupportedUnary(self)
        return self.items  # type: ignore[return-value]


Term = Union[Word, Zero]


@dataclass(frozen=True)
class Identity:
    """``lhs = rhs``; a 0-reduced identity has ``rhs is ZERO``."""

    lhs: Word
    rhs: Term

    @property
    def is_zero(self) -> bool:
        return self.rhs is ZERO

    def __str__(self):
        return f"{render_word(self.lhs)} = {render_term(self.rhs)}"


@dataclass(frozen=True)
class Witness:
    """v = left . substitution(u) . right"""

    substitution: Dict[str, Tuple[str, ...]] = field(hash=False)
    left: Tuple[str, ...]
    right: Tuple[str, ...]

    def to_dict(self) -> Dict[str, object]:
        return {
            'substitution': {k: ' '.join(v) for k, v in sorted(self.substitution.items(), key=lambda kv: letter_key(kv[0]))},
            'left': ' '.join(self.left),
            'right': ' '.join(self.right),
        }


@dataclass(frozen=True)
class IdentityPredicates:
    permutational: Optional[Permutation]
    substitutive: bool
    balanced: bool
    zero_reduced: bool


_LETTER_KEY = re.compile(r'([A-Za-z]+)(\d*)$')


def letter_key(letter: str) -> Tuple[str, int, str]:
    """Canonical letter order: alphabetic prefix, then numeric suffix, so x2 < x10."""
    match = _LETTER_KEY.match(letter)
    if match is None:
        return (letter, -1, letter)
    prefix, digits = match.groups()
    return (prefix, int(digits) if digits else -1, letter)


def indexed_letters(k: int, prefix: str = 'x') -> Tuple[str, ...]:
    return tuple(f'{prefix}{i}' for i in range(1, k + 1))


# Parsing

_TOKEN = re.compile(r'\s*(?:(?P<letter>[A-Za-z][A-Za-z0-9]*)|(?P<bar>~\()|(?P<open>\()|(?P<close>\))'
                    r'|(?P<power>\^\s*\d+)|(?P<other>\S))')


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: List[Tuple[str, str, int]] = []
        for match in _TOKEN.finditer(text):
            kind = match.lastgroup
            if kind is None:
                continue
            self.tokens.append((kind, match.group(kind), match.start(kind)))
        self.pos = 0

    def error(self, message: str, position: Optional[int] = None):
        if position is None:
            position = self.tokens[self.pos][2] if self.pos < len(self.tokens) else len(self.text)
        raise WordSyntaxError(message, self.text, position)

    def peek(self) -> Optional[str]:
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def word(self) -> Word:
        items: List[Item] = []
        while self.peek() in ('letter', 'bar', 'open'):
            items.extend(self.factor())
        if not items:
            self.error("Expected a letter or a group")
        return Word(tuple(items))

    def factor(self) -> List[Item]:
        kind, value, position = self.tokens[self.pos]
        self.pos += 1
        atom: List[Item]
        if kind == 'letter':
            atom = [value]
        else:
            inner = self.word()
            if self.peek() != 'close':
                self.error("Expected ')'")
            self.pos += 1
            atom = [Bar(inner)] if kind == 'bar' else list(inner.items)
        if self.peek() == 'power':
            _, power, power_position = self.tokens[self.pos]
            self.pos += 1
            exponent = int(power[1:].strip())
            if exponent < 1:
                self.error("Exponent must be positive", power_position)
            atom = atom * exponent
        return atom

    def finish(self):
        if self.pos != len(self.tokens):
            self.error("Unexpected input")


def parse_word(text: str) -> Word:
    parser = _Parser(text)
    word = parser.word()
    parser.finish()
    return word


def parse_identity(text: str) -> Identity:
    if text.count('=') != 1:
        raise WordSyntaxError("Identity must contain exactly one '='", text, text.find('=') if '=' in text else len(text))
    left, right = text.split('=')
    lhs = parse_word(left)
    if right.strip() == '0':
        return Identity(lhs, ZERO)
    try:
        rhs = parse_word(right)
    except WordSyntaxError as e:
        raise WordSyntaxError("Malformed right-hand side", text, len(left) + 1 + e.position)
    return Identity(lhs, rhs)


def render_word(w: Word) -> str:
    parts = []
    for item in w.items:
        parts.append(item if isinstance(item, str) else f"~({render_word(item.word)})")
    return ' '.join(parts)


def render_term(t: Term) -> str:
    return '0' if t is ZERO else render_word(t)  # type: ignore[arg-type]


def word_from_letters(letters: Sequence[str]) -> Word:
    return Word(tuple(letters))


# Structure

def content(w: Word) -> FrozenSet[str]:
    letters = set()
    for item in w.items:
        if isinstance(item, str):
            letters.add(item)
        else:
            letters |= content(item.word)
    return frozenset(letters)


def sorted_content(w: Word) -> List[str]:
    return sorted(content(w), key=letter_key)


def length(w: Word) -> Length:
    return len(w.items) if w.is_semigroup else math.inf


def occurrences(w: Word, letter: str) -> int:
    count = 0
    for item in w.items:
        count += (item == letter) if isinstance(item, str) else occurrences(item.word, letter)
    return count


def occurrence_counts(w: Word) -> Counter:
    counts: Counter = Counter()
    for item in w.items:
        if isinstance(item, str):
            counts[item] += 1
        else:
            counts.update(occurrence_counts(item.word))
    return counts


def is_linear(w: Word) -> bool:
    return w.is_semigroup and len(set(w.items)) == len(w.items)


def has_bar(w: Word) -> bool:
    return not w.is_semigroup


def is_square_of_letter(w: Word) -> bool:
    return w.is_semigroup and len(w.items) == 2 and w.items[0] == w.items[1]


def substitute(w: Word, sigma: Mapping[str, Word]) -> Word:
    """Homomorphic image of ``w``; bars commute with substitution."""
    items: List[Item] = []
    for item in w.items:
        if isinstance(item, str):
            if item not in sigma:
                raise UndefinedLetter(item)
            items.extend(sigma[item].items)
        else:
            items.append(Bar(substitute(item.word, sigma)))
    return Word(tuple(items))


def compose_substitutions(first: Mapping[str, Word], second: Mapping[str, Word]) -> Dict[str, Word]:
    """The substitution ``w -> substitute(substitute(w, first), second)``."""
    return {letter: substitute(image, second) for letter, image in first.items()}


def rename(w: Word, pi: Permutation, alphabet: Optional[Sequence[str]] = None) -> Word:
    """Replace the i-th letter of ``alphabet`` by the (i pi)-th one.

    The alphabet defaults to x1..xn when the word only uses those letters,
    otherwise to the word's content in canonical order.
    """
    if alphabet is None:
        standard = indexed_letters(pi.n)
        alphabet = standard if content(w) <= set(standard) else sorted_content(w)
    if len(alphabet) != pi.n:
        raise DegreeMismatch(len(alphabet), pi.n)
    mapping = {letter: Word((alphabet[pi(i) - 1],)) for i, letter in enumerate(alphabet, 1)}
    for letter in content(w) - set(mapping):
        mapping[letter] = Word((letter,))
    return substitute(w, mapping)


def canonical_form(w: Word) -> Tuple[str, ...]:
    """Rename letters by first occurrence to x1, x2, ...; equal iff equivalent."""
    names: Dict[str, str] = {}
    for letter in w.letters():
        names.setdefault(letter, f'x{len(names) + 1}')
    return tuple(names[letter] for letter in w.letters())


def canonical_identity(identity: Identity) -> Tuple[Tuple[str, ...], Tuple[str, ...]]:
    """Both sides renamed by first occurrence across lhs then rhs; equal iff the identities differ by a renaming."""
    names: Dict[str, str] = {}
    sides = []
    for side in (identity.lhs, identity.rhs):
        if not isinstance(side, Word):
            sides.append(('0',))
            continue
        sides.append(tuple(names.setdefault(letter, f'x{len(names) + 1}') for letter in side.letters()))
    return sides[0], sides[1]


def all_words(alphabet: Sequence[str], max_len: int, min_len: int = 1) -> Iterator[Word]:
    for n in range(min_len, max_len + 1):
        for letters in product(alphabet, repeat=n):
            yield Word(letters)


# Pattern order

def _matches(pattern: Tuple[str, ...], target: Tuple[str, ...],
             binding: Dict[str, Tuple[str, ...]]) -> Iterator[Dict[str, Tuple[str, ...]]]:
    if not pattern:
        if not target:
            yield dict(binding)
        return
    letter, rest = pattern[0], pattern[1:]
    if letter in binding:
        image = binding[letter]
        if target[:len(image)] == image:
            yield from _matches(rest, target[len(image):], binding)
        return
    # Leave at least one target letter for each remaining pattern letter
    for end in range(1, len(target) - len(rest) + 1):
        binding[letter] = target[:end]
        yield from _matches(rest, target[end:], binding)
        del binding[letter]


def iter_matches(pattern: Sequence[str], target: Sequence[str]) -> Iterator[Dict[str, Tuple[str, ...]]]:
    """Every substitution mapping ``pattern`` exactly onto ``target``."""
    return _matches(tuple(pattern), tuple(target), {})


def match_pattern(pattern: Sequence[str], target: Sequence[str]) -> Optional[Dict[str, Tuple[str, ...]]]:
    """Substitution mapping ``pattern`` exactly onto ``target``, if one exists."""
    return next(iter_matches(pattern, target), None)


def factor_matches(pattern: Sequence[str], target: Sequence[str]) -> Iterator[Tuple[int, int, Dict[str, Tuple[str, ...]]]]:
    """All (i, j, substitution) with ``target[i:j]`` an instance of ``pattern``; the first
    substitution found per factor."""
    pattern, target = tuple(pattern), tuple(target)
    for i in range(len(target)):
        for j in range(i + len(pattern), len(target) + 1):
            found = match_pattern(pattern, target[i:j])
            if found is not None:
                yield i, j, found


def pattern_leq(u: Word, v: Word) -> Optional[Witness]:
    """Witness for u <= v, i.e. v = a . xi(u) . b, or None."""
    if not u.is_semigroup:
        raise UnsupportedUnary(u)
    if not v.is_semigroup:
        raise UnsupportedUnary(v)
    if len(u.items) > len(v.items):
        return None
    target = v.letters()
    for i, j, sigma in factor_matches(u.letters(), target):
        return Witness(sigma, target[:i], target[j:])
    return None


def equivalent(u: Word, v: Word) -> bool:
    """v is a letter renaming of u."""
    return canonical_form(u) == canonical_form(v)


def incomparable(u: Word, v: Word) -> bool:
    return pattern_leq(u, v) is None and pattern_leq(v, u) is None


def strictly_less(u: Word, v: Word) -> bool:
    return u != v and pattern_leq(u, v) is not None


def strictly_below_in_preorder(u: Word, v: Word) -> bool:
    """u <= v but not v <= u."""
    return pattern_leq(u, v) is not None and pattern_leq(v, u) is None


# Identities

def permutation_between(u: Word, v: Word) -> Optional[Permutation]:
    """The pi with v[i] = u[i pi], for linear words of equal content."""
    if not (is_linear(u) and is_linear(v)) or content(u) != content(v):
        return None
    position = {letter: i for i, letter in enumerate(u.items, 1)}
    return Permutation(tuple(position[letter] for letter in v.items))  # type: ignore[index]


def letter_renaming(u: Word, v: Word) -> Optional[Dict[str, str]]:
    """Bijection phi on letters with phi(u) = v, if one exists."""
    if not (u.is_semigroup and v.is_semigroup) or len(u.items) != len(v.items):
        return None
    forward: Dict[str, str] = {}
    backward: Dict[str, str] = {}
    for a, b in zip(u.items, v.items):
        if forward.setdefault(a, b) != b or backward.setdefault(b, a) != a:  # type: ignore[arg-type]
            return None
    return forward  # type: ignore[return-value]


def identity_predicates(identity: Identity) -> IdentityPredicates:
    lhs, rhs = identity.lhs, identity.rhs
    if rhs is ZERO:
        return IdentityPredicates(None, False, False, True)
    assert isinstance(rhs, Word)

    pi = permutation_between(lhs, rhs)
    permutational = pi if pi is not None and not pi.is_identity() else None
    substitutive = (lhs.is_semigroup and rhs.is_semigroup and content(lhs) == content(rhs)
                    and letter_renaming(lhs, rhs) is not None)
    balanced = occurrence_counts(lhs) == occurrence_counts(rhs)
    return IdentityPredicates(permutational, substitutive, balanced, False)


def permutational_identity(pi: Permutation) -> Identity:
    """p_n[pi]: x1 ... xn = x(1 pi) ... x(n pi)."""
    letters = indexed_letters(pi.n)
    return Identity(Word(letters), Word(tuple(letters[pi(i) - 1] for i in range(1, pi.n + 1))))
