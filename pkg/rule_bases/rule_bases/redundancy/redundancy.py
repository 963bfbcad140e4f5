"""Plain, standard and closure-based redundancy between two rules"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from ..constants import CLOSURE_ORACLE_BOUND, PLAIN_ORACLE_BOUND
from ..dataset.dataset import (
    Dataset,
    ItemSet,
    Rule,
    WeightedShape,
    dataset_from_shapes,
    shape_confidence,
    shape_support,
)
from ..implications.implications import NO_IMPLICATIONS, ImplicationSet, logical_closure


def covers(r1: Rule, r0: Rule) -> bool:
    """X1 is inside X0 and X0Y0 is inside X1Y1."""
    return r1.antecedent <= r0.antecedent and r0.full <= r1.full


def simply_redundant(r1: Rule, r0: Rule) -> bool:
    return r1.antecedent < r0.antecedent and r0.full == r1.full


def strictly_redundant(r1: Rule, r0: Rule) -> bool:
    return r1.antecedent == r0.antecedent and r0.full < r1.full


def plainly_redundant(r1: Rule, r0: Rule) -> bool:
    """Whether c(r0) >= c(r1) on every dataset.

    Trivial rules always have confidence 1; otherwise plain redundancy is
    exactly the cover relation.

    Args:
        r1 (Rule): The premise
        r0 (Rule): The candidate redundant rule

    Returns:
        bool: The verdict
    """
    return r0.is_trivial or covers(r1, r0)


def standardly_redundant(r1: Rule, r0: Rule) -> bool:
    """Whether both confidence and support of r0 dominate those of r1 everywhere."""
    return r0.full <= r1.full and (r0.is_trivial or r1.antecedent <= r0.antecedent)


def closure_redundant(B: ImplicationSet, r1: Rule, r0: Rule) -> bool:
    """Redundancy on every dataset where the implications of B hold.

    Args:
        B (ImplicationSet): Implications assumed to hold with confidence 1
        r1 (Rule): The premise
        r0 (Rule): The candidate redundant rule

    Returns:
        bool: True iff Y0 is in the B-closure of X0, or X1 is in the B-closure
        of X0 and X0Y0 is in the B-closure of X1Y1
    """
    antecedent_closure = logical_closure(B, r0.antecedent)
    if r0.consequent <= antecedent_closure:
        return True
    return r1.antecedent <= antecedent_closure and r0.full <= logical_closure(
        B, r1.full
    )


@dataclass(frozen=True)
class GapWitness:
    gap: Fraction
    dataset: Dataset


def _multiplicities(bound: int) -> list[tuple[int, int]]:
    pairs = [
        (first, second)
        for first in range(bound + 1)
        for second in range(bound + 1)
        if first or second
    ]
    return sorted(pairs, key=lambda pair: (pair[0] + pair[1], pair[0]))


def _two_shape_families(
    first: ItemSet, second: ItemSet, bound: int
) -> Iterator[tuple[WeightedShape, ...]]:
    for first_count, second_count in _multiplicities(bound):
        yield tuple(
            WeightedShape(itemset, count)
            for itemset, count in ((first, first_count), (second, second_count))
            if count
        )


def oracle_names(*rules: Rule) -> list[str]:
    """Names 0..k for the items the rules mention, plus one fresh item."""
    width = max((max(rule.full) + 1 for rule in rules if rule.full), default=0)
    return [str(item_id) for item_id in range(width)] + ["fresh"]


def _violates(
    shapes: Sequence[WeightedShape], r1: Rule, r0: Rule, with_support: bool
) -> bool:
    if shape_confidence(shapes, r0) < shape_confidence(shapes, r1):
        return True
    return with_support and shape_support(shapes, r0.full) < shape_support(
        shapes, r1.full
    )


def plain_counterexample(
    r1: Rule,
    r0: Rule,
    bound: int = PLAIN_ORACLE_BOUND,
    names: Sequence[str] | None = None,
    with_support: bool = False,
) -> Dataset | None:
    """Searches the proof-shaped datasets for c(r0) < c(r1).

    Transactions are copies of X1Y1 and of X0, each at most `bound` times.
    With `with_support`, a support inversion also counts, which turns the
    search into an oracle for standard redundancy.

    Returns:
        Dataset | None: A violating dataset, or None when the family has none
    """
    for shapes in _two_shape_families(r1.full, r0.antecedent, bound):
        if _violates(shapes, r1, r0, with_support):
            return dataset_from_shapes(shapes, names or oracle_names(r1, r0))
    return None


def closure_counterexample(
    B: ImplicationSet,
    r1: Rule,
    r0: Rule,
    bound: int = CLOSURE_ORACLE_BOUND,
    names: Sequence[str] | None = None,
) -> Dataset | None:
    """As `plain_counterexample`, over the B-closed shapes cl(X1Y1) and cl(X0).

    Every transaction is B-closed, so each implication of B holds in the
    returned dataset.
    """
    for shapes in _two_shape_families(
        logical_closure(B, r1.full), logical_closure(B, r0.antecedent), bound
    ):
        if _violates(shapes, r1, r0, with_support=False):
            return dataset_from_shapes(shapes, names or oracle_names(r1, r0, *B))
    return None


def confidence_gap_witness(
    r1: Rule,
    r0: Rule,
    bound: int = PLAIN_ORACLE_BOUND,
    B: ImplicationSet = NO_IMPLICATIONS,
    names: Sequence[str] | None = None,
) -> GapWitness | None:
    """The dataset of the bounded family maximising c(r1) - c(r0).

    For rules that are not redundant the gap approaches 1 as the bound grows.
    Returns None when no member of the family has a positive gap.
    """
    best: tuple[Fraction, tuple[WeightedShape, ...]] | None = None
    for shapes in _two_shape_families(
        logical_closure(B, r1.full), logical_closure(B, r0.antecedent), bound
    ):
        gap = shape_confidence(shapes, r1) - shape_confidence(shapes, r0)
        if gap > 0 and (best is None or gap > best[0]):
            best = (gap, shapes)

    if best is None:
        return None
    names = names or oracle_names(r1, r0, *B)
    return GapWitness(best[0], dataset_from_shapes(best[1], names))
