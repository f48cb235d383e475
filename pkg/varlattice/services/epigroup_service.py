"""Normal form of one-letter unary words in every epigroup.

A one-letter word containing a bar lies in the maximal subgroup of x, where it
equals a power g^d of g = x x^w. Rules applied bottom up:

* ``letter``: x contributes g^1 next to a group element,
* ``bar``: the pseudoinverse of g^k is g^-k,
* ``collect``: adjacent factors multiply, exponents add.

The result is written x^p ~(x)^q with q >= 1: (d+1, 1) when d >= 0, (0, -d) otherwise.
"""
from dataclasses import dataclass
from typing import List, Tuple
import logging

from varlattice.core.errors import MultiLetter, NotUnary
from varlattice.services.word_service import Bar, Word, content, has_bar

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class UnaryNormalForm:
    letter: str
    p: int
    q: int
    trace: Tuple[str, ...] = ()

    @property
    def pair(self) -> Tuple[int, int]:
        return (self.p, self.q)

    @property
    def exponent(self) -> int:
        return self.p - self.q

    def word(self) -> Word:
        x = self.letter
        return Word((x,) * self.p + (Bar(Word((x,))),) * self.q)


def _exponent(w: Word, trace: List[str]) -> int:
    total = 0
    for item in w.items:
        if isinstance(item, Bar):
            inner = _exponent(item.word, trace)
            trace.append(f"bar: ~(g^{inner}) -> g^{-inner}")
            total -= inner
        else:
            trace.append("letter: x -> g^1")
            total += 1
    if len(w.items) > 1:
        trace.append(f"collect: {len(w.items)} factors -> g^{total}")
    return total


def normalize_single_letter_unary(w: Word) -> UnaryNormalForm:
    """(p, q) with q >= 1 such that every epigroup satisfies w = x^p ~(x)^q."""
    letters = content(w)
    if len(letters) != 1:
        raise MultiLetter(f"Expected a one-letter word, got content {sorted(letters)}", word=str(w))
    if not has_bar(w):
        raise NotUnary(f"{w} contains no pseudoinverse", word=str(w))
    (letter,) = letters
    trace: List[str] = []
    d = _exponent(w, trace)
    p, q = (d + 1, 1) if d >= 0 else (0, -d)
    logger.debug(f"Unary normal form of {w}: x^{p} ~(x)^{q}")
    return UnaryNormalForm(letter, p, q, tuple(trace))
