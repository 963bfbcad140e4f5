"""Closure operator and the (frequent) closed itemset lattice"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import AbstractSet, Iterator

from bitarray import frozenbitarray

from ..constants import LATTICE_SEPARATOR
from ..dataset.dataset import EMPTY, Dataset, ItemSet
from ..logger import bases_logger
from ..utils import lectic_key


@dataclass
class ClosedNode:
    """One closed itemset of the lattice.

    Cover lists hold node indices; `index` is the node's position in lectic
    order, which is also its line number in the lattice export.
    """

    index: int
    itemset: ItemSet
    support: int
    lower_covers: list[int] = field(default_factory=list)
    upper_covers: list[int] = field(default_factory=list)


class ClosureLattice:
    """Closed itemsets of a dataset with support at least `support_floor`.

    Nodes are kept in lectic order, which extends inclusion, so every node's
    proper closed subsets appear before it. Minimal generators are computed on
    first request and memoised.
    """

    def __init__(
        self, dataset: Dataset, nodes: list[tuple[ItemSet, int]], support_floor: int
    ) -> None:
        self.dataset = dataset
        self.support_floor = support_floor
        ordered = sorted(nodes, key=lambda node: lectic_key(node[0]))
        self.nodes: tuple[ClosedNode, ...] = tuple(
            ClosedNode(index, itemset, node_support)
            for index, (itemset, node_support) in enumerate(ordered)
        )
        self._by_itemset: dict[ItemSet, ClosedNode] = {
            node.itemset: node for node in self.nodes
        }
        self._generators: dict[int, list[ItemSet]] = {}
        self._link_covers()

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self) -> Iterator[ClosedNode]:
        return iter(self.nodes)

    def __contains__(self, itemset: object) -> bool:
        return itemset in self._by_itemset

    def node(self, itemset: AbstractSet[int]) -> ClosedNode:
        return self._by_itemset[ItemSet(itemset)]

    def get(self, itemset: AbstractSet[int]) -> ClosedNode | None:
        return self._by_itemset.get(ItemSet(itemset))

    @property
    def itemsets(self) -> list[ItemSet]:
        return [node.itemset for node in self.nodes]

    def lower_covers(self, node: ClosedNode) -> list[ClosedNode]:
        return [self.nodes[index] for index in node.lower_covers]

    def upper_covers(self, node: ClosedNode) -> list[ClosedNode]:
        return [self.nodes[index] for index in node.upper_covers]

    def subsets_of(self, node: ClosedNode) -> Iterator[ClosedNode]:
        """Stored closed sets contained in the node, the node itself included."""
        for candidate in self.nodes[: node.index + 1]:
            if candidate.support >= node.support and candidate.itemset <= node.itemset:
                yield candidate

    def minimal_generators(self, node: ClosedNode) -> list[ItemSet]:
        cached = self._generators.get(node.index)
        if cached is None:
            faces = [
                node.itemset - cover.itemset for cover in self.lower_covers(node)
            ]
            cached = minimal_transversals(faces)
            self._generators[node.index] = cached
        return cached

    def _link_covers(self) -> None:
        for node in self.nodes:
            covers: list[ClosedNode] = []
            # reverse lectic order meets supersets before their subsets
            for candidate in reversed(self.nodes[: node.index]):
                if candidate.support < node.support:
                    continue
                if not candidate.itemset < node.itemset:
                    continue
                if any(candidate.itemset <= cover.itemset for cover in covers):
                    continue
                covers.append(candidate)

            node.lower_covers = sorted(cover.index for cover in covers)
            for cover in covers:
                cover.upper_covers.append(node.index)

        for node in self.nodes:
            node.upper_covers.sort()


def close(d: Dataset, x: AbstractSet[int]) -> ItemSet:
    """Intersection of the transactions containing x; the universe when none does."""
    return d.closure(x)


def enumerate_closures(d: Dataset, support_floor: int = 0) -> ClosureLattice:
    """Closed itemsets with support >= support_floor by canonical extension.

    Each closed set is reached once: a child obtained by adding item j is kept
    only if closing it adds no item smaller than j that its parent lacks.

    Args:
        d (Dataset): The transactions
        support_floor (int, optional): Minimum support. Defaults to 0.

    Returns:
        ClosureLattice: The closed sets, their supports and cover relation
    """
    if support_floor < 0:
        raise ValueError("support floor must be non-negative")

    item_count = len(d.items)
    found: list[tuple[ItemSet, int]] = []
    root_extent = d.extent(EMPTY)

    if root_extent.count() >= support_floor:
        stack: list[tuple[ItemSet, frozenbitarray, int]] = [
            (d.closure_of_extent(root_extent), root_extent, 0)
        ]
        while stack:
            intent, extent, start = stack.pop()
            found.append((intent, extent.count()))

            children = []
            for item in range(start, item_count):
                if item in intent:
                    continue
                child_extent = frozenbitarray(extent & d.tidset(item))
                if child_extent.count() < support_floor:
                    continue
                child = d.closure_of_extent(child_extent)
                if any(new < item for new in child - intent):
                    continue
                children.append((child, child_extent, item + 1))
            stack.extend(reversed(children))

    bases_logger.debug(
        "Enumerated %s closed itemsets at support floor %s", len(found), support_floor
    )
    return ClosureLattice(d, found, support_floor)


def minimal_transversals(edges: list[ItemSet]) -> list[ItemSet]:
    """Inclusion-minimal sets meeting every edge, in lectic order.

    Edges are absorbed one at a time: transversals already meeting the edge
    survive, the others are extended by each of its items, and the result is
    reduced to its minimal members.
    """
    transversals: set[ItemSet] = {EMPTY}
    for edge in sorted(set(edges), key=len):
        extended: set[ItemSet] = set()
        for transversal in transversals:
            if transversal & edge:
                extended.add(transversal)
            else:
                extended.update(transversal | {item} for item in edge)
        transversals = _minimal_members(extended)
    return sorted(transversals, key=lectic_key)


def _minimal_members(family: set[ItemSet]) -> set[ItemSet]:
    ordered = sorted(family, key=len)
    kept: list[ItemSet] = []
    for member in ordered:
        if not any(other <= member for other in kept):
            kept.append(member)
    return set(kept)


def minimal_generators(
    L: ClosureLattice, d: Dataset, node: ClosedNode
) -> list[ItemSet]:
    return L.minimal_generators(node)


def hasse(L: ClosureLattice) -> list[tuple[int, int]]:
    """Covering pairs (parent, child): child is a maximal stored subset of parent."""
    return [
        (node.index, child)
        for node in L.nodes
        for child in node.lower_covers
    ]


def format_lattice(L: ClosureLattice) -> str:
    """Lattice export: node lines "items | support", a blank line, then edges."""
    d = L.dataset
    lines = [
        f"{d.format_itemset(node.itemset)} {LATTICE_SEPARATOR} {node.support}"
        for node in L.nodes
    ]
    lines.append("")
    lines.extend(f"{parent} {child}" for parent, child in hasse(L))
    return "\n".join(lines) + "\n"
