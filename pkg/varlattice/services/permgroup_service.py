"""Permutations of {1..n}, subgroup closure and the subgroup lattices Sub(S_n).

Permutations act on the right: ``compose(p, q)`` applies ``p`` first and
then ``q``, so ``compose(p, q)(i) == q(p(i))``.
"""
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, permutations
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Tuple
import logging
import re

import numpy as np
from sympy.combinatorics import Permutation as SympyPermutation

from varlattice.core.config import Config
from varlattice.core.errors import DegreeMismatch, DegreeTooLarge, InvalidPermutation, NotASubgroup
from varlattice.services.lattice_service import FiniteLattice, from_leq

logger = logging.getLogger(__name__)

Image = Tuple[int, ...]


@dataclass(frozen=True, order=True)
class Permutation:
    """Bijection of {1..n}; ``image[i - 1]`` is the image of ``i``."""

    image: Image

    def __post_init__(self):
        if sorted(self.image) != list(range(1, len(self.image) + 1)):
            raise InvalidPermutation(f"Not a permutation of 1..{len(self.image)}: {list(self.image)}")

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i - 1]

    def __mul__(self, other: 'Permutation') -> 'Permutation':
        return compose(self, other)

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.image, 1))

    def order(self) -> int:
        return int(_sympy(self).order())

    def sign(self) -> int:
        return int(_sympy(self).signature())

    def __str__(self):
        return to_cycles(self)


def _sympy(p: Permutation) -> SympyPermutation:
    return SympyPermutation([v - 1 for v in p.image])


def _compose(p: Image, q: Image) -> Image:
    return tuple(q[v - 1] for v in p)


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply p, then q."""
    if p.n != q.n:
        raise DegreeMismatch(p.n, q.n)
    return Permutation(_compose(p.image, q.image))


def inverse(p: Permutation) -> Permutation:
    image = [0] * p.n
    for i, v in enumerate(p.image, 1):
        image[v - 1] = i
    return Permutation(tuple(image))


def from_cycles(n: int, *cycles: Sequence[int]) -> Permutation:
    """Permutation given by cycles, applied left to right."""
    result = tuple(range(1, n + 1))
    for points in cycles:
        if len(set(points)) != len(points) or any(not 1 <= v <= n for v in points):
            raise InvalidPermutation(f"Bad cycle {tuple(points)} for degree {n}")
        image = list(range(1, n + 1))
        for a, b in zip(points, list(points[1:]) + list(points[:1])):
            image[a - 1] = b
        result = _compose(result, tuple(image))
    return Permutation(result)


_CYCLE = re.compile(r'\(([^()]*)\)')


def parse_cycles(text: str, n: Optional[int] = None) -> Permutation:
    """Parse cycle notation such as ``(123)(45)``, ``(1,2,3)`` or ``(1 2 3)``.

    Digits written without separators are single points, so that form only
    covers degrees below 10. ``()``, ``e`` and ``id`` denote the identity.
    """
    text = text.strip()
    if text in ('', 'e', 'id', '()'):
        if n is None:
            raise InvalidPermutation(f"Cannot infer the degree of {text!r}")
        return identity(n)
    if _CYCLE.sub('', text).strip():
        raise InvalidPermutation(f"Malformed cycle notation: {text!r}")
    cycles: List[List[int]] = []
    for body in _CYCLE.findall(text):
        body = body.strip()
        if not body:
            continue
        if not re.fullmatch(r'[\d\s,]+', body):
            raise InvalidPermutation(f"Malformed cycle {body!r} in {text!r}")
        if re.fullmatch(r'\d+', body):
            points = [int(ch) for ch in body]
        else:
            points = [int(tok) for tok in re.split(r'[\s,]+', body) if tok]
        cycles.append(points)
    degree = max([max(c) for c in cycles if c] + [n or 0])
    if n is not None and degree > n:
        raise InvalidPermutation(f"Cycle notation {text!r} moves points beyond degree {n}")
    return from_cycles(n or degree, *cycles)


def to_cycles(p: Permutation) -> str:
    cycles = _sympy(p).cyclic_form
    if not cycles:
        return '()'
    sep = ',' if p.n >= 10 else ''
    return ''.join('(' + sep.join(str(v + 1) for v in c) + ')' for c in cycles)


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of S_n as its sorted member list."""

    n: int
    members: Tuple[Permutation, ...]

    @classmethod
    def from_members(cls, n: int, members: Iterable[Permutation]) -> 'Subgroup':
        """Validated constructor: members must contain the identity and be closed."""
        elements = set(members)
        for p in elements:
            if p.n != n:
                raise DegreeMismatch(p.n, n)
        if identity(n) not in elements:
            raise NotASubgroup("Member set does not contain the identity")
        images = {p.image for p in elements}
        for p in images:
            for q in images:
                if _compose(p, q) not in images:
                    raise NotASubgroup("Member set is not closed under composition")
        return cls._of(n, images)

    @classmethod
    def _of(cls, n: int, images: Iterable[Image]) -> 'Subgroup':
        return cls(n, tuple(Permutation(image) for image in sorted(images)))

    @property
    def order(self) -> int:
        return len(self.members)

    @cached_property
    def images(self) -> FrozenSet[Image]:
        return frozenset(p.image for p in self.members)

    def __contains__(self, p: Permutation) -> bool:
        return p.image in self.images

    def issubset(self, other: 'Subgroup') -> bool:
        return self.images <= other.images

    def sort_key(self):
        return (self.order, tuple(p.image for p in self.members))

    def __str__(self):
        return '{' + ', '.join(str(p) for p in self.members) + '}'


def _closure_images(n: int, generators: Iterable[Image]) -> FrozenSet[Image]:
    gens = [g for g in set(generators)]
    e = tuple(range(1, n + 1))
    seen = {e}
    frontier = [e]
    while frontier:
        fresh = []
        for g in frontier:
            for s in gens:
                h = _compose(g, s)
                if h not in seen:
                    seen.add(h)
                    fresh.append(h)
        frontier = fresh
    return frozenset(seen)


def closure(generators: Iterable[Permutation], n: Optional[int] = None) -> Subgroup:
    """Smallest subgroup containing ``generators``; ``n`` is needed for an empty set."""
    gens = list(generators)
    degrees = {g.n for g in gens}
    if n is not None:
        degrees.add(n)
    if len(degrees) > 1:
        low, high = sorted(degrees)[:2]
        raise DegreeMismatch(low, high)
    if not degrees:
        raise InvalidPermutation("The degree of an empty generator set must be given")
    degree = degrees.pop()
    return Subgroup._of(degree, _closure_images(degree, (g.image for g in gens)))


def subgroup_meet(first: Subgroup, second: Subgroup) -> Subgroup:
    if first.n != second.n:
        raise DegreeMismatch(first.n, second.n)
    return Subgroup._of(first.n, first.images & second.images)


def subgroup_join(first: Subgroup, second: Subgroup) -> Subgroup:
    if first.n != second.n:
        raise DegreeMismatch(first.n, second.n)
    return Subgroup._of(first.n, _closure_images(first.n, first.images | second.images))


def generating_set(group: Subgroup) -> List[Permutation]:
    """Greedy generating set: scan members in order, keep those not yet generated."""
    gens: List[Permutation] = []
    reached = frozenset({identity(group.n).image})
    for p in group.members:
        if p.image not in reached:
            gens.append(p)
            reached = _closure_images(group.n, (g.image for g in gens))
    return gens


def trivial_group(n: int) -> Subgroup:
    return closure([], n)


def symmetric_group(n: int) -> Subgroup:
    return Subgroup._of(n, permutations(range(1, n + 1)))


def alternating_group(n: int) -> Subgroup:
    return Subgroup._of(n, (p.image for p in symmetric_group(n).members if p.sign() == 1))


def stabilizer(n: int, point: int) -> Subgroup:
    return Subgroup._of(n, (p.image for p in symmetric_group(n).members if p(point) == point))


def cyclic(n: int, *points: int) -> Subgroup:
    return closure([from_cycles(n, points)])


def klein_four(n: int = 4) -> Subgroup:
    return closure([from_cycles(n, (1, 2), (3, 4)), from_cycles(n, (1, 3), (2, 4))])


def _check_degree(n: int):
    limit = Config.MAX_SUBGROUP_DEGREE
    if n > limit:
        raise DegreeTooLarge(n, limit)
    if n < 1:
        raise InvalidPermutation(f"Degree must be positive, got {n}")


def named_subgroups(n: int) -> Dict[str, Subgroup]:
    """Named constructions of S_n in label precedence order. A subgroup keeps the first name it gets."""
    names: Dict[str, Subgroup] = {'T': trivial_group(n), f'S_{n}': symmetric_group(n)}
    points = range(1, n + 1)
    for i, j in combinations(points, 2):
        names[f'T_{i}{j}'] = cyclic(n, i, j)
    for triple in combinations(points, 3):
        names['C_' + ''.join(map(str, triple))] = cyclic(n, *triple)
    for quad in combinations(points, 4):
        first, rest = quad[0], quad[1:]
        for order in permutations(rest):
            cycle = (first,) + order
            backwards = (first,) + tuple(reversed(order))
            if cycle <= backwards:
                names['C_' + ''.join(map(str, cycle))] = cyclic(n, *cycle)
    for (i, j), (k, l) in combinations(combinations(points, 2), 2):
        if len({i, j, k, l}) == 4:
            names[f'P_{i}{j},{k}{l}'] = closure([from_cycles(n, (i, j)), from_cycles(n, (k, l))])
    if n == 4:
        names['V_4'] = klein_four(4)
    if n >= 3:
        for i in points:
            names[f'Stab_{n}({i})'] = stabilizer(n, i)
        names[f'A_{n}'] = alternating_group(n)
    return names


class SubgroupLattice(NamedTuple):
    lattice: FiniteLattice
    nodes: List[Subgroup]

    def node_of(self, group: Subgroup) -> int:
        return self.nodes.index(group)

    def by_label(self, label: str) -> Subgroup:
        return self.nodes[self.lattice.index_of(label)]


@lru_cache(maxsize=None)
def _all_subgroup_images(n: int) -> Tuple[FrozenSet[Image], ...]:
    elements = list(permutations(range(1, n + 1)))
    cyclics: Dict[FrozenSet[Image], Image] = {}
    for g in elements:
        cyclics.setdefault(_closure_images(n, [g]), g)
    logger.info(f"S_{n}: {len(cyclics)} cyclic subgroups")

    # Every subgroup is a join of cyclic subgroups
    found: Dict[FrozenSet[Image], Tuple[Image, ...]] = {c: (g,) for c, g in cyclics.items()}
    queue = list(found)
    while queue:
        group = queue.pop()
        gens = found[group]
        for g in cyclics.values():
            if g in group:
                continue
            joined = _closure_images(n, gens + (g,))
            if joined not in found:
                found[joined] = gens + (g,)
                queue.append(joined)
    logger.info(f"S_{n}: {len(found)} subgroups")
    return tuple(found)


def all_subgroups(n: int) -> List[Subgroup]:
    """Every subgroup of S_n once, ordered by order and then by member list."""
    _check_degree(n)
    groups = [Subgroup._of(n, images) for images in _all_subgroup_images(n)]
    return sorted(groups, key=Subgroup.sort_key)


def subgroup_labels(n: int, nodes: Sequence[Subgroup]) -> List[str]:
    named: Dict[FrozenSet[Image], str] = {}
    for name, group in named_subgroups(n).items():
        named.setdefault(group.images, name)
    labels = []
    position: Dict[int, int] = {}
    for group in nodes:
        name = named.get(group.images)
        if name is None:
            position[group.order] = position.get(group.order, 0) + 1
            name = f'G{group.order}_{position[group.order]}'
        labels.append(name)
    return labels


@lru_cache(maxsize=None)
def subgroup_lattice(n: int) -> SubgroupLattice:
    """Sub(S_n) ordered by inclusion, labelled with the conventional names where they apply."""
    nodes = all_subgroups(n)
    member_sets = [group.images for group in nodes]
    leq = np.array([[a <= b for b in member_sets] for a in member_sets], dtype=bool)
    lattice = from_leq(leq, subgroup_labels(n, nodes))
    logger.info(f"Sub(S_{n}) has {lattice.size} nodes and {len(lattice.covers())} covers")
    return SubgroupLattice(lattice, nodes)
