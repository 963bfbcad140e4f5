"""Completeness and minimality checks for rule bases"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Literal, Sequence

from ..closure.closure import enumerate_closures
from ..constants import EXHAUSTIVE_UNIVERSE_LIMIT, MINIMALITY_POOL_LIMIT
from ..dataset.dataset import Dataset, ItemSet, Rule, sorted_rules
from ..implications.implications import NO_IMPLICATIONS, ImplicationSet, logical_closure
from ..logger import bases_logger
from ..redundancy.redundancy import closure_redundant, plainly_redundant
from ..utils import popcount
from .bases import Basis

Mode = Literal["plain", "closure"]


@dataclass(frozen=True)
class CompletenessReport:
    checked: int
    violators: tuple[Rule, ...]

    @property
    def complete(self) -> bool:
        return not self.violators


@dataclass(frozen=True)
class MinimalityReport:
    """Outcome of the minimality checks.

    `redundant_rules` lists basis rules made redundant by another basis rule.
    `smaller_complete_basis` is a complete subset of the candidate pool with
    fewer rules than the basis, when the exhaustive search found one. The
    exhaustive search only runs when `exhaustive` is True.
    """

    redundant_rules: tuple[Rule, ...]
    smaller_complete_basis: tuple[Rule, ...] | None
    exhaustive: bool

    @property
    def minimal(self) -> bool:
        return not self.redundant_rules and self.smaller_complete_basis is None


def _makes_redundant(
    premise: Rule, rule: Rule, mode: Mode, implications: ImplicationSet
) -> bool:
    if mode == "plain":
        return plainly_redundant(premise, rule)
    return closure_redundant(implications, premise, rule)


def _given_for_free(rule: Rule, mode: Mode, implications: ImplicationSet) -> bool:
    if mode == "plain":
        return rule.is_trivial
    return rule.consequent <= logical_closure(implications, rule.antecedent)


def candidate_rules(d: Dataset, gamma: Fraction, tau: int) -> list[Rule]:
    """Rules X -> Y, disjoint and Y nonempty, with confidence >= gamma, support >= tau.

    Small universes are enumerated exhaustively. Otherwise antecedents are
    minimal generators and X ∪ Y runs over closed sets, which reaches a
    premise for every rule of the full set.
    """
    rules: list[Rule] = []

    if len(d.items) <= EXHAUSTIVE_UNIVERSE_LIMIT:
        # side 1 is the antecedent, side 2 the consequent
        for placement in product((0, 1, 2), repeat=len(d.items)):
            sides = list(enumerate(placement))
            antecedent = ItemSet(item for item, side in sides if side == 1)
            consequent = ItemSet(item for item, side in sides if side == 2)
            if not consequent:
                continue
            rule = Rule(antecedent, consequent)
            if d.support(rule.full) >= tau and d.confidence(rule) >= gamma:
                rules.append(rule)
        return sorted_rules(rules)

    L = enumerate_closures(d, tau)
    for closed_antecedent in L.nodes:
        for generator in L.minimal_generators(closed_antecedent):
            for node in L.nodes[closed_antecedent.index :]:
                if node.itemset == generator or not generator <= node.itemset:
                    continue
                if node.support >= gamma * closed_antecedent.support:
                    rules.append(Rule(generator, node.itemset - generator))
    return sorted_rules(rules)


def verify_completeness(
    basis: Basis | Sequence[Rule],
    d: Dataset,
    gamma: Fraction,
    tau: int,
    mode: Mode = "plain",
    implications: ImplicationSet = NO_IMPLICATIONS,
) -> CompletenessReport:
    """Checks that every candidate rule is redundant with respect to some basis rule.

    Args:
        basis (Basis | Sequence[Rule]): The rules under test
        d (Dataset): The dataset
        gamma (Fraction): Confidence threshold
        tau (int): Support threshold
        mode (Mode, optional): "plain" or "closure". Defaults to "plain".
        implications (ImplicationSet, optional): Implications for closure mode.

    Returns:
        CompletenessReport: Candidates checked and those nothing covers
    """
    rules = tuple(basis)
    candidates = candidate_rules(d, gamma, tau)
    violators = tuple(
        candidate
        for candidate in candidates
        if not _given_for_free(candidate, mode, implications)
        and not any(
            _makes_redundant(rule, candidate, mode, implications) for rule in rules
        )
    )

    if violators:
        bases_logger.warning(
            "%s of %s candidate rules are not covered by the basis",
            len(violators),
            len(candidates),
        )
    return CompletenessReport(len(candidates), violators)


def verify_minimality(
    basis: Basis,
    d: Dataset,
    gamma: Fraction,
    mode: Mode = "plain",
    implications: ImplicationSet = NO_IMPLICATIONS,
) -> MinimalityReport:
    """Irredundancy of each rule, then an exact search for a smaller complete basis.

    The search treats every candidate rule as the set of pool rules making it
    redundant; a complete basis meets all of these sets, so a smaller one is
    a hitting set with fewer than len(basis) members.
    """
    rules = tuple(basis)
    redundant = tuple(
        rule
        for position, rule in enumerate(rules)
        if _given_for_free(rule, mode, implications)
        or any(
            _makes_redundant(other, rule, mode, implications)
            for other_position, other in enumerate(rules)
            if other_position != position
        )
    )

    pool = candidate_rules(d, gamma, basis.support_floor)
    if len(pool) > MINIMALITY_POOL_LIMIT:
        bases_logger.warning(
            "Candidate pool of %s rules is too large, checking irredundancy only",
            len(pool),
        )
        return MinimalityReport(redundant, None, False)

    families = []
    for candidate in pool:
        if _given_for_free(candidate, mode, implications):
            continue
        mask = 0
        for position, premise in enumerate(pool):
            if _makes_redundant(premise, candidate, mode, implications):
                mask |= 1 << position
        families.append(mask)

    smaller = None
    if rules:
        hit = smallest_hitting_set(families, len(rules) - 1)
        if hit is not None:
            smaller = tuple(
                rule for position, rule in enumerate(pool) if hit >> position & 1
            )
            bases_logger.warning(
                "Found a complete basis of %s rules, smaller than %s",
                len(smaller),
                len(rules),
            )

    return MinimalityReport(redundant, smaller, True)


def _minimal_masks(masks: list[int]) -> list[int]:
    kept: list[int] = []
    for mask in sorted(set(masks), key=popcount):
        if not any(other & mask == other for other in kept):
            kept.append(mask)
    return kept


def _disjoint_lower_bound(masks: list[int]) -> int:
    used = 0
    count = 0
    for mask in sorted(masks, key=popcount):
        if not mask & used:
            used |= mask
            count += 1
    return count


def smallest_hitting_set(families: list[int], limit: int) -> int | None:
    """A set of at most `limit` positions meeting every family, or None.

    Families and the answer are bit masks. Branches on the members of the
    smallest unmet family, pruned by a count of pairwise disjoint unmet families.
    """
    families = _minimal_masks(families)

    def search(chosen: int, remaining: int) -> int | None:
        unmet = [family for family in families if not family & chosen]
        if not unmet:
            return chosen
        if remaining == 0 or _disjoint_lower_bound(unmet) > remaining:
            return None

        pivot = min(unmet, key=popcount)
        while pivot:
            lowest = pivot & -pivot
            found = search(chosen | lowest, remaining - 1)
            if found is not None:
                return found
            pivot ^= lowest
        return None

    return search(0, limit)
