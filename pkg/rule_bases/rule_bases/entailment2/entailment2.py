"""Entailment of a partial rule from two partial premises"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import AbstractSet, Sequence

import numpy as np
from scipy.optimize import linprog

from ..bases.bases import Basis
from ..constants import ENTAILMENT_CONDITIONS, ENTAILMENT_ORACLE_BOUND
from ..dataset.dataset import (
    Dataset,
    ItemSet,
    Rule,
    WeightedShape,
    dataset_from_shapes,
    shape_confidence,
)
from ..exceptions import InvariantError, SideConditionError, ThresholdError
from ..implications.implications import ImplicationSet, logical_closure
from ..logger import bases_logger
from ..redundancy.calculus import (
    DerivationTrace,
    Scheme,
    SchemeTag,
    failed_two_premise_condition,
    two_premise_step,
)
from ..redundancy.redundancy import closure_redundant, oracle_names
from ..utils import ceil_fraction

HALF = Fraction(1, 2)


class EntailmentReason(str, Enum):
    TRIVIAL = "trivial"
    SINGLE_PREMISE_1 = "single_premise_1"
    SINGLE_PREMISE_2 = "single_premise_2"
    SEVEN_CONDITIONS = "seven_conditions"
    NONE = "none"


@dataclass(frozen=True)
class EntailmentVerdict:
    holds: bool
    reason: EntailmentReason
    failed_conditions: tuple[str, ...] = ()


def _check_gamma(gamma: Fraction) -> None:
    if not 0 < gamma < 1:
        raise ThresholdError(f"confidence threshold {gamma} is outside (0, 1)")


def failed_conditions(
    B: ImplicationSet, r1: Rule, r2: Rule, r0: Rule
) -> tuple[str, ...]:
    """Roman numerals of the conditions (i)-(vii) that do not hold.

    (i) X1 ⊆ cl(X0), (ii) X2 ⊆ cl(X0), (iii) X1 ⊆ cl(X2Y2), (iv) X2 ⊆ cl(X1Y1),
    (v) X0 ⊆ cl(X1Y1X2Y2), (vi) Y0 ⊆ cl(X0Y1), (vii) Y0 ⊆ cl(X0Y2).
    """
    x0, y0 = r0.antecedent, r0.consequent
    x1, x2 = r1.antecedent, r2.antecedent

    def closure(itemset: AbstractSet[int]) -> ItemSet:
        return logical_closure(B, itemset)

    checks = (
        x1 <= closure(x0),
        x2 <= closure(x0),
        x1 <= closure(r2.full),
        x2 <= closure(r1.full),
        x0 <= closure(r1.full | r2.full),
        y0 <= closure(x0 | r1.consequent),
        y0 <= closure(x0 | r2.consequent),
    )
    return tuple(
        numeral for numeral, holds in zip(ENTAILMENT_CONDITIONS, checks) if not holds
    )


def two_premise_entails(
    B: ImplicationSet, r1: Rule, r2: Rule, r0: Rule, gamma: Fraction
) -> EntailmentVerdict:
    """Decides whether B together with r1 and r2 gamma-entails r0.

    The improper reasons come first: r0 trivial under B, or redundant with
    respect to one premise alone. Proper entailment from both premises needs
    gamma >= 1/2 and all seven conditions.

    Args:
        B (ImplicationSet): Implications that hold
        r1 (Rule): First premise
        r2 (Rule): Second premise
        r0 (Rule): The rule in question
        gamma (Fraction): Confidence threshold in (0, 1)

    Raises:
        ThresholdError: gamma outside (0, 1)

    Returns:
        EntailmentVerdict: The verdict, its reason, and the failed conditions
    """
    _check_gamma(gamma)

    if r0.consequent <= logical_closure(B, r0.antecedent):
        return EntailmentVerdict(True, EntailmentReason.TRIVIAL)
    if closure_redundant(B, r1, r0):
        return EntailmentVerdict(True, EntailmentReason.SINGLE_PREMISE_1)
    if closure_redundant(B, r2, r0):
        return EntailmentVerdict(True, EntailmentReason.SINGLE_PREMISE_2)

    failed = failed_conditions(B, r1, r2, r0)
    if gamma >= HALF and not failed:
        return EntailmentVerdict(True, EntailmentReason.SEVEN_CONDITIONS)
    return EntailmentVerdict(False, EntailmentReason.NONE, failed)


def apply_2A(
    B: ImplicationSet,
    r1: Rule,
    r2: Rule,
    z1: AbstractSet[int],
    z2: AbstractSet[int],
) -> Rule:
    """Concludes X1X2Z1 -> Z2 from the two premises.

    Raises:
        SideConditionError: One of the five implications is not given by B
    """
    step = two_premise_step(r1, r2, z1, z2)
    condition = failed_two_premise_condition(B, step)
    if condition is not None:
        raise SideConditionError(condition)
    return step.conclusion


def derive_two_premise(
    B: ImplicationSet, r1: Rule, r2: Rule, r0: Rule
) -> DerivationTrace:
    """(2A) with Z1 = cl(X0) and Z2 = Y0, then (lI) back down to X0.

    Raises:
        SideConditionError: Some of the seven conditions fail
    """
    failed = failed_conditions(B, r1, r2, r0)
    if failed:
        raise SideConditionError(
            failed[0], f"condition ({failed[0]}) of two-premise entailment fails"
        )

    closed_x0 = logical_closure(B, r0.antecedent)
    combined = two_premise_step(r1, r2, closed_x0, r0.consequent)
    steps = [combined]

    lowered = Scheme(
        SchemeTag.LEFT_IMPLICATION,
        (combined.conclusion,),
        (Rule(r0.antecedent, closed_x0),),
        r0,
    )
    if lowered.premises[0] != r0:
        steps.append(lowered)

    return DerivationTrace(tuple(steps), (r1, r2), r0)


def _explicit_constructions(
    B: ImplicationSet, r1: Rule, r2: Rule, r0: Rule, gamma: Fraction
) -> list[list[tuple[ItemSet, int]]]:
    m, n = gamma.numerator, gamma.denominator

    def closure(*itemsets: AbstractSet[int]) -> ItemSet:
        return logical_closure(B, ItemSet().union(*itemsets))

    x0 = closure(r0.antecedent)
    everything = closure(r0.antecedent, r1.full, r2.full)
    both = closure(r1.full, r2.full)
    constructions = []

    if gamma < HALF:
        k = ceil_fraction(gamma / (1 - 2 * gamma))
        constructions.append([(x0, 1), (closure(r1.full), k), (closure(r2.full), k)])

    constructions.append([(x0, 1), (both, n - 1)])
    for first, second in ((r1, r2), (r2, r1)):
        constructions.append(
            [
                (closure(r0.antecedent, first.consequent), 1),
                (closure(second.full), 1),
                (both, m - 1),
                (x0, n - m - 1),
            ]
        )
    for first, second in ((r1, r2), (r2, r1)):
        constructions.append(
            [(x0, 1), (closure(first.full), n), (closure(second.full), n * n)]
        )
    for first, second in ((r1, r2), (r2, r1)):
        constructions.append(
            [(closure(second.full), 1), (everything, m * n - 1), (x0, n * (n - m))]
        )
    constructions.append([(everything, 1), (x0, n)])
    return constructions


def _shapes(pairs: Sequence[tuple[ItemSet, int]]) -> tuple[WeightedShape, ...]:
    merged: dict[ItemSet, int] = {}
    for itemset, count in pairs:
        if count > 0:
            merged[itemset] = merged.get(itemset, 0) + count
    return tuple(WeightedShape(itemset, count) for itemset, count in merged.items())


def _refutes(
    shapes: Sequence[WeightedShape], r1: Rule, r2: Rule, r0: Rule, gamma: Fraction
) -> bool:
    return (
        shape_confidence(shapes, r1) >= gamma
        and shape_confidence(shapes, r2) >= gamma
        and shape_confidence(shapes, r0) < gamma
    )


def _integer_search(
    B: ImplicationSet, r1: Rule, r2: Rule, r0: Rule, gamma: Fraction, bound: int
) -> tuple[WeightedShape, ...] | None:
    x0 = r0.antecedent
    candidates = [
        x0,
        r1.full,
        r2.full,
        x0 | r1.consequent,
        x0 | r2.consequent,
        r1.full | r2.full,
        x0 | r1.full | r2.full,
    ]
    closed = list(dict.fromkeys(logical_closure(B, itemset) for itemset in candidates))

    m, n = gamma.numerator, gamma.denominator

    def balance(rule: Rule) -> list[int]:
        # n * s(XY) - m * s(X), one coefficient per shape
        return [
            n * (rule.full <= itemset) - m * (rule.antecedent <= itemset)
            for itemset in closed
        ]

    A_ub = np.array(
        [
            [-value for value in balance(r1)],
            [-value for value in balance(r2)],
            balance(r0),
        ],
        dtype=float,
    )
    b_ub = np.array([0.0, 0.0, -1.0])

    result = linprog(
        np.ones(len(closed)),
        A_ub=A_ub,
        b_ub=b_ub,
        bounds=[(0, bound)] * len(closed),
        integrality=np.ones(len(closed)),
        method="highs",
    )
    if result.status != 0:
        return None

    counts = np.rint(result.x).astype(int)
    shapes = _shapes(list(zip(closed, counts.tolist())))
    if not _refutes(shapes, r1, r2, r0, gamma):
        bases_logger.warning("Integer program returned a non-refuting solution")
        return None
    return shapes


def counterexample_search(
    B: ImplicationSet,
    r1: Rule,
    r2: Rule,
    r0: Rule,
    gamma: Fraction,
    bound: int = ENTAILMENT_ORACLE_BOUND,
    names: Sequence[str] | None = None,
) -> Dataset | None:
    """B-closed transactions where both premises reach gamma and r0 does not.

    The explicit constructions of the characterization are tried first, each
    only when its multiplicities stay within `bound`. Failing those, an
    integer program looks for multiplicities over the closures of X0, X1Y1,
    X2Y2, X0Y1, X0Y2, X1Y1X2Y2 and X0X1Y1X2Y2.

    Args:
        B (ImplicationSet): Implications every transaction respects
        r1 (Rule): First premise
        r2 (Rule): Second premise
        r0 (Rule): The rule to refute
        gamma (Fraction): Confidence threshold in (0, 1)
        bound (int, optional): Largest multiplicity.
            Defaults to ENTAILMENT_ORACLE_BOUND.
        names (Sequence[str] | None, optional): Item names for the result.

    Returns:
        Dataset | None: The counterexample, or None when none exists in the search space
    """
    _check_gamma(gamma)
    names = names or oracle_names(r1, r2, r0, *B)

    for pairs in _explicit_constructions(B, r1, r2, r0, gamma):
        if any(count > bound or count < 0 for _, count in pairs):
            continue
        shapes = _shapes(pairs)
        if shapes and _refutes(shapes, r1, r2, r0, gamma):
            return dataset_from_shapes(shapes, names)

    shapes = _integer_search(B, r1, r2, r0, gamma, bound)
    if shapes is None:
        return None
    bases_logger.debug("Counterexample found by the integer program")
    return dataset_from_shapes(shapes, names)


def prune_basis_2premise(
    B: ImplicationSet, basis: Basis, gamma: Fraction
) -> Basis:
    """Greedily drops rules that two remaining rules entail, in lectic order.

    Rules serving as premises of a removal are kept from then on, so every
    removed rule stays entailed by the result; this is re-checked at the end.

    Raises:
        InvariantError: The re-check fails
    """
    if gamma < HALF or gamma >= 1:
        return basis

    remaining = list(basis.rules)
    locked: set[Rule] = set()
    removals: list[tuple[Rule, Rule, Rule]] = []

    for candidate in basis.rules:
        if candidate in locked:
            continue
        others = [rule for rule in remaining if rule != candidate]
        for first, second in combinations(others, 2):
            if two_premise_entails(B, first, second, candidate, gamma).holds:
                remaining.remove(candidate)
                locked.update((first, second))
                removals.append((candidate, first, second))
                break

    for removed, first, second in removals:
        if first not in remaining or second not in remaining:
            raise InvariantError("a premise of a pruned rule left the basis")
        if not two_premise_entails(B, first, second, removed, gamma).holds:
            raise InvariantError("a pruned rule is no longer entailed")

    bases_logger.info(
        "Two-premise pruning removed %s of %s rules", len(removals), len(basis)
    )
    return basis.with_rules(remaining)
