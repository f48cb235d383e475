"""Finite lattices and their special elements.

A lattice is stored as a read-only boolean matrix ``leq`` with ``leq[i, j]``
true iff ``i <= j``. Join and meet tables are computed once at construction,
so every lattice that exists has already passed the lattice axioms.
"""
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Set, Tuple
import logging
import random

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher
import numpy as np

from varlattice.core.errors import CycleDetected, InputError, NotALattice

logger = logging.getLogger(__name__)


class FiniteLattice:
    """Immutable finite lattice over the elements ``range(size)``."""

    def __init__(self, leq: np.ndarray, labels: Optional[Sequence[str]] = None):
        leq = np.array(leq, dtype=bool)
        size = leq.shape[0] if leq.ndim == 2 else 0
        if size == 0:
            raise InputError("The empty lattice is not supported")
        if leq.shape != (size, size):
            raise InputError(f"Order relation must be square, got shape {leq.shape}")
        if labels is None:
            labels = [str(i) for i in range(size)]
        labels = tuple(str(label) for label in labels)
        if len(labels) != size:
            raise InputError(f"Expected {size} labels, got {len(labels)}")
        if len(set(labels)) != size:
            raise InputError("Element labels must be pairwise distinct")
        if not leq.diagonal().all():
            raise InputError("Order relation is not reflexive")
        off_diagonal = leq & leq.T & ~np.eye(size, dtype=bool)
        if off_diagonal.any():
            i, j = (int(v) for v in np.argwhere(off_diagonal)[0])
            raise CycleDetected([labels[i], labels[j], labels[i]])
        lifted = leq.astype(np.int64)
        if ((lifted @ lifted > 0) & ~leq).any():
            raise InputError("Order relation is not transitive")

        leq.flags.writeable = False
        self.size = size
        self.leq = leq
        self.labels = labels
        self._index = {label: i for i, label in enumerate(labels)}
        self.join_table = self._bound_table(leq, labels, 'least upper bound')
        self.meet_table = self._bound_table(leq.T, labels, 'greatest lower bound')

    @staticmethod
    def _bound_table(leq: np.ndarray, labels: Tuple[str, ...], reason: str) -> np.ndarray:
        # The least upper bound of i and j is the element whose up-set equals the common up-set
        size = leq.shape[0]
        by_row = {row.tobytes(): k for k, row in enumerate(leq)}
        table = np.zeros((size, size), dtype=np.int64)
        for i in range(size):
            common = leq[i] & leq
            for j in range(i, size):
                k = by_row.get(common[j].tobytes())
                if k is None:
                    raise NotALattice((labels[i], labels[j]), reason)
                table[i, j] = table[j, i] = k
        table.flags.writeable = False
        return table

    def __repr__(self):
        return f"FiniteLattice(size={self.size})"

    def __len__(self):
        return self.size

    def index_of(self, label: str) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise InputError(f"Unknown element: {label}", element=label)

    def label(self, i: int) -> str:
        return self.labels[i]

    def join(self, x: int, y: int) -> int:
        return int(self.join_table[x, y])

    def meet(self, x: int, y: int) -> int:
        return int(self.meet_table[x, y])

    @cached_property
    def bottom(self) -> int:
        return int(np.flatnonzero(self.leq.all(axis=1))[0])

    @cached_property
    def top(self) -> int:
        return int(np.flatnonzero(self.leq.all(axis=0))[0])

    @cached_property
    def cover_matrix(self) -> np.ndarray:
        """cover_matrix[i, j] iff j covers i."""
        lt = self.leq.copy()
        lt[np.diag_indices_from(lt)] = False
        between = (lt.astype(np.int64) @ lt.astype(np.int64)) > 0
        covers = lt & ~between
        covers.flags.writeable = False
        return covers

    def covers(self) -> List[Tuple[int, int]]:
        return [(int(i), int(j)) for i, j in np.argwhere(self.cover_matrix)]

    def upper_covers(self, x: int) -> List[int]:
        return [int(j) for j in np.flatnonzero(self.cover_matrix[x])]

    def lower_covers(self, x: int) -> List[int]:
        return [int(i) for i in np.flatnonzero(self.cover_matrix[:, x])]

    @cached_property
    def height(self) -> Tuple[int, ...]:
        """Length of the longest chain from the bottom to each element."""
        graph = hasse_graph(self)
        heights = [0] * self.size
        for node in nx.topological_sort(graph):
            for upper in graph.successors(node):
                heights[upper] = max(heights[upper], heights[node] + 1)
        return tuple(heights)

    def atoms(self) -> List[int]:
        return self.upper_covers(self.bottom)

    def is_chain(self) -> bool:
        return bool((self.leq | self.leq.T).all())


@dataclass(frozen=True)
class ElementClassification:
    element: int
    neutral: bool
    distributive: bool
    standard: bool
    modular: bool
    cancellable: bool


@dataclass
class NeutralAtomReport:
    atoms: List[int] = field(default_factory=list)
    checked: int = 0
    violations: List[Dict[str, object]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def from_leq(leq: np.ndarray, labels: Optional[Sequence[str]] = None) -> FiniteLattice:
    """Lattice from a full order matrix: ``leq[i, j]`` iff element i lies below element j."""
    lattice = FiniteLattice(leq, labels)
    logger.debug(f"Built lattice on {lattice.size} elements from an order matrix")
    return lattice


def build_lattice(covers: Iterable[Tuple[Hashable, Hashable]],
                  labels: Optional[Sequence[Hashable]] = None) -> FiniteLattice:
    """Build a lattice from a cover relation (any acyclic relation works).

    When ``labels`` is omitted the elements are the names mentioned in
    ``covers``, sorted.
    """
    covers = [tuple(pair) for pair in covers]
    for pair in covers:
        if len(pair) != 2:
            raise InputError(f"Cover must be a pair, got {list(pair)}")
    if labels is None:
        names = sorted({name for pair in covers for name in pair}, key=lambda v: (str(type(v)), v))
    else:
        names = list(labels)
    if not names:
        raise InputError("The empty lattice is not supported")
    index = {name: i for i, name in enumerate(names)}
    if len(index) != len(names):
        raise InputError("Element labels must be pairwise distinct")

    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(names)))
    for lower, upper in covers:
        if lower not in index or upper not in index:
            missing = lower if lower not in index else upper
            raise InputError(f"Cover references unknown element {missing}", element=missing)
        graph.add_edge(index[lower], index[upper])

    if not nx.is_directed_acyclic_graph(graph):
        cycle = nx.find_cycle(graph)
        raise CycleDetected([str(names[u]) for u, _ in cycle] + [str(names[cycle[0][0]])])

    closure = nx.transitive_closure_dag(graph)
    leq = np.eye(len(names), dtype=bool)
    for lower, upper in closure.edges():
        leq[lower, upper] = True
    logger.debug(f"Built order relation on {len(names)} elements from {len(covers)} covers")
    return from_leq(leq, [str(name) for name in names])


def chain(length: int) -> FiniteLattice:
    """The chain 0 < 1 < ... < length - 1."""
    return FiniteLattice(np.triu(np.ones((length, length), dtype=bool)))


def boolean_lattice(rank: int) -> FiniteLattice:
    """Subsets of a ``rank``-element set, labelled by bit strings."""
    size = 1 << rank
    members = np.arange(size)
    leq = (members[:, None] & ~members[None, :]) == 0
    return FiniteLattice(leq, [format(i, f'0{rank}b') if rank else '0' for i in range(size)])


def from_closure_system(sets: Iterable[Iterable[int]]) -> FiniteLattice:
    """Lattice of a family of sets closed under intersection, ordered by inclusion."""
    family = sorted({frozenset(s) for s in sets}, key=lambda s: (len(s), sorted(s)))
    if not family:
        raise InputError("The empty lattice is not supported")
    leq = np.array([[a <= b for b in family] for a in family], dtype=bool)
    return FiniteLattice(leq, ['{' + ','.join(map(str, sorted(s))) + '}' for s in family])


def meet(lattice: FiniteLattice, x: int, y: int) -> int:
    return lattice.meet(x, y)


def join(lattice: FiniteLattice, x: int, y: int) -> int:
    return lattice.join(x, y)


def _special_flags(lattice: FiniteLattice, x: int) -> Tuple[bool, bool, bool, bool, bool]:
    J, M, leq = lattice.join_table, lattice.meet_table, lattice.leq
    everything = np.arange(lattice.size)
    y, z = everything[:, None], everything[None, :]
    jx, mx = J[x], M[x]

    # (x v y) ^ (y v z) ^ (z v x) = (x ^ y) v (y ^ z) v (z ^ x)
    neutral = np.array_equal(M[M[jx[y], J], jx[z]], J[J[mx[y], M], mx[z]])
    # x v (y ^ z) = (x v y) ^ (x v z)
    distributive = np.array_equal(jx[M], M[jx[y], jx[z]])
    # y ^ (x v z) = (y ^ x) v (y ^ z)
    standard = np.array_equal(M[y, jx[z]], J[mx[y], M])
    # y <= z implies (x v y) ^ z = (x ^ z) v y
    modular = bool((~leq | (M[jx[y], z] == J[mx[z], y])).all())
    # x v y = x v z and x ^ y = x ^ z imply y = z
    collide = (jx[y] == jx[z]) & (mx[y] == mx[z])
    cancellable = not (collide & (y != z)).any()
    return neutral, distributive, standard, modular, cancellable


def classify_element(lattice: FiniteLattice, x: int) -> ElementClassification:
    """Evaluate the five defining formulas for ``x`` over all pairs (y, z)."""
    return ElementClassification(x, *_special_flags(lattice, x))


def classify_all(lattice: FiniteLattice) -> List[ElementClassification]:
    return [classify_element(lattice, x) for x in range(lattice.size)]


def cancellation_witness(lattice: FiniteLattice, x: int) -> Optional[Tuple[int, int]]:
    """First pair y < z (by index) with equal joins and meets against x, if any."""
    J, M = lattice.join_table, lattice.meet_table
    for y, z in zip(*np.nonzero(np.triu((J[x][:, None] == J[x][None, :]) & (M[x][:, None] == M[x][None, :]), 1))):
        return int(y), int(z)
    return None


def complements(lattice: FiniteLattice, x: int) -> List[int]:
    """All y with x v y = top and x ^ y = bottom."""
    hits = (lattice.join_table[x] == lattice.top) & (lattice.meet_table[x] == lattice.bottom)
    return [int(y) for y in np.flatnonzero(hits)]


def principal_filter(lattice: FiniteLattice, a: int) -> Set[int]:
    return {int(x) for x in np.flatnonzero(lattice.leq[a])}


def principal_ideal(lattice: FiniteLattice, a: int) -> Set[int]:
    return {int(x) for x in np.flatnonzero(lattice.leq[:, a])}


def generated_sublattice(lattice: FiniteLattice, elements: Iterable[int]) -> Set[int]:
    closed = set(elements)
    frontier = list(closed)
    while frontier:
        a = frontier.pop()
        for b in list(closed):
            for c in (lattice.join(a, b), lattice.meet(a, b)):
                if c not in closed:
                    closed.add(c)
                    frontier.append(c)
    return closed


def is_distributive_subset(lattice: FiniteLattice, elements: Iterable[int]) -> bool:
    """Distributive law on a subset closed under join and meet."""
    s = np.array(sorted(set(elements)), dtype=np.int64)
    J, M = lattice.join_table, lattice.meet_table
    a, b, c = s[:, None, None], s[None, :, None], s[None, None, :]
    return bool(np.array_equal(M[a, J[b, c]], J[M[a, b], M[a, c]]))


def is_distributive_lattice(lattice: FiniteLattice) -> bool:
    return is_distributive_subset(lattice, range(lattice.size))


def is_neutral_by_sublattice(lattice: FiniteLattice, x: int) -> bool:
    """x is neutral iff every sublattice generated by {x, y, z} is distributive."""
    seen: Set[frozenset] = set()
    for y, z in product(range(lattice.size), repeat=2):
        generated = frozenset(generated_sublattice(lattice, (x, y, z)))
        if generated in seen:
            continue
        seen.add(generated)
        if not is_distributive_subset(lattice, generated):
            return False
    return True


def direct_product(first: FiniteLattice, second: FiniteLattice) -> FiniteLattice:
    """Componentwise order; element (i, j) has index i * len(second) + j."""
    n1, n2 = first.size, second.size
    leq = (first.leq[:, None, :, None] & second.leq[None, :, None, :]).reshape(n1 * n2, n1 * n2)
    labels = [f"({a},{b})" for a in first.labels for b in second.labels]
    return FiniteLattice(leq, labels)


def adjoin_top(lattice: FiniteLattice, label: str = "TOP") -> FiniteLattice:
    size = lattice.size
    leq = np.zeros((size + 1, size + 1), dtype=bool)
    leq[:size, :size] = lattice.leq
    leq[:, size] = True
    return FiniteLattice(leq, list(lattice.labels) + [label])


def hasse_graph(lattice: FiniteLattice) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(lattice.size))
    graph.add_edges_from(lattice.covers())
    return graph


def are_isomorphic(first: FiniteLattice, second: FiniteLattice) -> Optional[Dict[int, int]]:
    """Exact isomorphism search on the Hasse diagrams, pruned by element height."""
    if first.size != second.size or len(first.covers()) != len(second.covers()):
        return None
    g1, g2 = hasse_graph(first), hasse_graph(second)
    nx.set_node_attributes(g1, dict(enumerate(first.height)), 'height')
    nx.set_node_attributes(g2, dict(enumerate(second.height)), 'height')
    matcher = DiGraphMatcher(g1, g2, node_match=lambda a, b: a['height'] == b['height'])
    if not matcher.is_isomorphic():
        return None
    return {int(k): int(v) for k, v in matcher.mapping.items()}


def verify_neutral_atom_equivalence(lattice: FiniteLattice) -> NeutralAtomReport:
    """For each neutral atom a, check that x cancellable, x v a cancellable, and
    cancellation restricted to the filter [a) agree for every x."""
    report = NeutralAtomReport()
    cancellable = [flags.cancellable for flags in classify_all(lattice)]
    J, M = lattice.join_table, lattice.meet_table
    for a in lattice.atoms():
        if not classify_element(lattice, a).neutral:
            continue
        report.atoms.append(a)
        up = np.array(sorted(principal_filter(lattice, a)), dtype=np.int64)
        for x in range(lattice.size):
            jx, mx = J[x][up], M[x][up]
            collide = (jx[:, None] == jx[None, :]) & (mx[:, None] == mx[None, :])
            restricted = not (collide & ~np.eye(len(up), dtype=bool)).any()
            verdicts = (cancellable[x], cancellable[lattice.join(x, a)], restricted)
            report.checked += 1
            if len(set(verdicts)) > 1:
                report.violations.append({
                    'atom': lattice.label(a),
                    'element': lattice.label(x),
                    'cancellable': verdicts[0],
                    'join_cancellable': verdicts[1],
                    'filter_cancellable': verdicts[2],
                })
    logger.info(f"Neutral atom check: {len(report.atoms)} atoms, {len(report.violations)} violations")
    return report


def random_lattice(rng: random.Random, max_size: int = 9, draws: int = 12) -> FiniteLattice:
    """Random closure system with at most ``max_size`` members, ordered by inclusion.

    The family starts as the full ground set; each draw adds a random subset
    and closes under intersection, and is discarded when the closure would
    outgrow ``max_size``.
    """
    if max_size < 1:
        raise InputError(f"A random lattice needs at least one element, got max_size={max_size}")
    ground = frozenset(range(1, min(max_size - 1, 4) + 1))
    family = {ground}
    for _ in range(draws):
        subset = frozenset(v for v in ground if rng.random() < 0.5)
        # family holds the ground set, so this is already closed under intersection
        grown = family | {subset & s for s in family}
        if len(grown) <= max_size:
            family = grown
    logger.debug(f"Random closure system on {sorted(ground)} with {len(family)} members")
    return from_closure_system(family)
