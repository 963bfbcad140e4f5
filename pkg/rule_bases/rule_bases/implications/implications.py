"""Confidence-one machinery: implication closure, iteration-free and GD bases"""

from __future__ import annotations

from dataclasses import dataclass
from typing import AbstractSet, Iterator, Sequence

from ..closure.closure import ClosureLattice
from ..dataset.dataset import EMPTY, Dataset, ItemSet, Rule, sorted_rules
from ..exceptions import InvariantError
from ..logger import bases_logger


@dataclass(frozen=True)
class ImplicationSet:
    """Rules read as X => Y, each expected to hold with confidence 1."""

    rules: tuple[Rule, ...] = ()

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.rules)

    def closure(self, x: AbstractSet[int]) -> ItemSet:
        return logical_closure(self, x)

    def format(self, d: Dataset) -> str:
        return "".join(d.format_implication(rule) + "\n" for rule in self.rules)


NO_IMPLICATIONS = ImplicationSet()


def logical_closure(B: ImplicationSet | Sequence[Rule], x: AbstractSet[int]) -> ItemSet:
    """Least superset of x closed under every implication of B."""
    rules = B.rules if isinstance(B, ImplicationSet) else tuple(B)
    closed = set(x)
    changed = True
    while changed:
        changed = False
        for rule in rules:
            if rule.antecedent <= closed and not rule.consequent <= closed:
                closed |= rule.consequent
                changed = True
    return ItemSet(closed)


def implies(B: ImplicationSet | Sequence[Rule], r: Rule) -> bool:
    return r.consequent <= logical_closure(B, r.antecedent)


def iteration_free_basis(L: ClosureLattice, d: Dataset) -> ImplicationSet:
    """Minimal generator => rest of its closure, for every stored closed set.

    These are exactly the representative rules of confidence 1.

    Args:
        L (ClosureLattice): Closed sets at the working support floor
        d (Dataset): The dataset L was mined from

    Returns:
        ImplicationSet: The iteration-free basis, lectic-sorted
    """
    rules = [
        Rule(generator, node.itemset - generator)
        for node in L.nodes
        for generator in L.minimal_generators(node)
        if generator != node.itemset
    ]
    basis = ImplicationSet(tuple(sorted_rules(rules)))
    verify_holds(basis, d)
    bases_logger.info("Iteration-free basis: %s implications", len(basis))
    return basis


def gd_basis(L: ClosureLattice, d: Dataset) -> ImplicationSet:
    """Guigues-Duquenne basis {P => close(P) - P : P pseudo-closed}.

    Pseudo-closed sets are met in lectic order by the next-closure walk over
    the saturation of the implications found so far. Sets under the lattice's
    support floor are skipped together with every lectic successor sharing
    their prefix, since those are supersets and cannot be frequent either.

    Args:
        L (ClosureLattice): Supplies the working support floor
        d (Dataset): The dataset

    Returns:
        ImplicationSet: The GD basis, lectic-sorted
    """
    floor = L.support_floor
    found: list[tuple[ItemSet, ItemSet]] = []

    current: ItemSet | None = EMPTY
    if d.support(EMPTY) < floor:
        current = None

    while current is not None:
        closed = d.closure(current)
        if closed != current:
            found.append((current, closed))
        current = _next_saturated(d, found, current, floor)

    rules = [Rule(premise, closed - premise) for premise, closed in found]
    basis = ImplicationSet(tuple(sorted_rules(rules)))
    verify_holds(basis, d)
    bases_logger.info("GD basis: %s implications", len(basis))
    return basis


def _next_saturated(
    d: Dataset,
    found: list[tuple[ItemSet, ItemSet]],
    current: ItemSet,
    floor: int,
) -> ItemSet | None:
    for item in reversed(range(len(d.items))):
        if item in current:
            continue
        seed = ItemSet(member for member in current if member < item) | {item}
        candidate = saturate(found, seed)
        if any(new < item for new in candidate - current):
            continue
        if floor and d.support(candidate) < floor:
            continue
        return candidate
    return None


def saturate(found: Sequence[tuple[ItemSet, ItemSet]], x: AbstractSet[int]) -> ItemSet:
    """Closes x under P => close(P) for the pseudo-closed P strictly inside it."""
    result = set(x)
    changed = True
    while changed:
        changed = False
        for premise, closed in found:
            if premise < result and not closed <= result:
                result |= closed
                changed = True
    return ItemSet(result)


def verify_holds(B: ImplicationSet, d: Dataset) -> None:
    for rule in B:
        if d.confidence(rule) != 1:
            bases_logger.error(
                "Implication %s does not hold in the dataset",
                d.format_implication(rule),
            )
            raise InvariantError(
                f"implication {d.format_implication(rule)} does not hold"
            )


def is_pseudo_closed(
    d: Dataset, candidate: AbstractSet[int], pseudo_closed: Sequence[AbstractSet[int]]
) -> bool:
    """Definitional check against the other pseudo-closed sets of the dataset."""
    candidate = ItemSet(candidate)
    if d.closure(candidate) == candidate:
        return False
    return all(
        d.closure(other) <= candidate
        for other in pseudo_closed
        if ItemSet(other) < candidate
    )
