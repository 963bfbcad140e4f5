"""Representative rules, the B* basis and its variants, double-support mining"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import AbstractSet, Iterator, Literal

from bitarray import frozenbitarray

from ..closure.closure import ClosedNode, ClosureLattice, enumerate_closures
from ..dataset.dataset import EMPTY, Dataset, ItemSet, Rule, sorted_rules
from ..exceptions import InputError, ThresholdError
from ..implications.implications import ImplicationSet
from ..logger import bases_logger
from ..utils import ceil_fraction, format_fraction, lectic_key

Convention = Literal["traditional_singleton", "general"]
DoubleSupportMode = Literal["filtered", "min_basis"]


class BasisKind(str, Enum):
    RR = "RR"
    BSTAR = "Bstar"
    BSTAR_MINMAX = "BstarMinMax"
    BSTAR_MINMIN = "BstarMinMin"
    GD = "GD"
    ITER_FREE = "IterFree"


@dataclass(frozen=True)
class Basis:
    """A lectic-sorted rule set together with the thresholds it was built for."""

    rules: tuple[Rule, ...]
    gamma: Fraction
    support_floor: int
    kind: BasisKind

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.rules)

    @classmethod
    def from_implications(
        cls, implications: ImplicationSet, kind: BasisKind, support_floor: int
    ) -> Basis:
        return cls(tuple(implications), Fraction(1), support_floor, kind)

    def implications(self) -> ImplicationSet:
        return ImplicationSet(self.rules)

    def with_rules(self, rules: list[Rule], kind: BasisKind | None = None) -> Basis:
        return Basis(
            tuple(sorted_rules(rules)),
            self.gamma,
            self.support_floor,
            kind or self.kind,
        )


def _check_gamma(gamma: Fraction, allow_one: bool = True) -> None:
    upper_ok = gamma <= 1 if allow_one else gamma < 1
    if not (gamma > 0 and upper_ok):
        interval = "(0, 1]" if allow_one else "(0, 1)"
        raise ThresholdError(f"confidence threshold {gamma} is outside {interval}")


def _reaches(antecedent_support: int, support: int, gamma: Fraction) -> bool:
    return support >= gamma * antecedent_support


def is_gamma_antecedent(
    d: Dataset, x: AbstractSet[int], y: AbstractSet[int], gamma: Fraction
) -> bool:
    """Whether s(y) >= gamma * s(x), for x inside y.

    Raises:
        InputError: x is not a subset of y
    """
    if not x <= y:
        raise InputError("a gamma-antecedent must be a subset of its itemset")
    return _reaches(d.support(x), d.support(y), gamma)


def _antecedent_nodes(
    L: ClosureLattice, node: ClosedNode, gamma: Fraction
) -> Iterator[ClosedNode]:
    for candidate in L.subsets_of(node):
        if _reaches(candidate.support, node.support, gamma):
            yield candidate


def representative_rules(d: Dataset, L: ClosureLattice, gamma: Fraction) -> Basis:
    """X -> Y - X for every valid gamma-antecedent X of a maximal Y.

    Valid antecedents are minimal generators of closed subsets of Y, so only
    those are visited. A generator g qualifies when no g minus one item is
    still an antecedent of Y, and Y is maximal when no upper cover keeps g as
    an antecedent.

    Args:
        d (Dataset): The dataset
        L (ClosureLattice): Its closed sets at the working support floor
        gamma (Fraction): Confidence threshold in (0, 1]

    Returns:
        Basis: The representative rules
    """
    _check_gamma(gamma)
    rules: list[Rule] = []

    for node in L.nodes:
        uppers = L.upper_covers(node)
        for closed_antecedent in _antecedent_nodes(L, node, gamma):
            for generator in L.minimal_generators(closed_antecedent):
                if generator == node.itemset:
                    continue
                generator_support = closed_antecedent.support
                if any(
                    _reaches(d.support(generator - {item}), node.support, gamma)
                    for item in generator
                ):
                    continue
                if any(
                    _reaches(generator_support, upper.support, gamma)
                    for upper in uppers
                ):
                    continue
                rules.append(Rule(generator, node.itemset - generator))

    basis = Basis(tuple(sorted_rules(rules)), gamma, L.support_floor, BasisKind.RR)
    bases_logger.info("Representative rules at gamma %s: %s rules", gamma, len(basis))
    return basis


def basic_antecedents(
    L: ClosureLattice, node: ClosedNode, gamma: Fraction
) -> list[ClosedNode]:
    """Closed proper subsets of the node that are antecedents with none below."""
    found = []
    for candidate in _antecedent_nodes(L, node, gamma):
        if candidate.index == node.index:
            continue
        if any(
            _reaches(lower.support, node.support, gamma)
            for lower in L.lower_covers(candidate)
        ):
            continue
        found.append(candidate)
    return found


def bstar(d: Dataset, L: ClosureLattice, gamma: Fraction) -> Basis:
    """The closure-based basis for partial rules at confidence gamma.

    A first scan collects the basic antecedents of every closed set; a second
    drops an antecedent when some upper cover of the closed set keeps it as
    an antecedent.

    Raises:
        ThresholdError: gamma outside (0, 1)
    """
    _check_gamma(gamma, allow_one=False)
    rules: list[Rule] = []

    for node in L.nodes:
        uppers = L.upper_covers(node)
        for antecedent in basic_antecedents(L, node, gamma):
            if any(
                _reaches(antecedent.support, upper.support, gamma) for upper in uppers
            ):
                continue
            rules.append(Rule(antecedent.itemset, node.itemset - antecedent.itemset))

    basis = Basis(tuple(sorted_rules(rules)), gamma, L.support_floor, BasisKind.BSTAR)
    bases_logger.info("B* at gamma %s: %s rules", gamma, len(basis))
    return basis


def _require_bstar(basis: Basis) -> None:
    if basis.kind is not BasisKind.BSTAR:
        raise InputError(f"variants are built from a B* basis, not {basis.kind.value}")


def _smallest_generator(L: ClosureLattice, itemset: ItemSet) -> ItemSet:
    return min(
        L.minimal_generators(L.node(itemset)),
        key=lambda generator: (len(generator), lectic_key(generator)),
    )


def minmax_variant(basis: Basis, L: ClosureLattice) -> Basis:
    """Replaces each left-hand side by its lectic-least minimal generator."""
    _require_bstar(basis)
    rules = []
    for rule in basis:
        generator = L.minimal_generators(L.node(rule.antecedent))[0]
        rules.append(Rule(generator, rule.consequent))
    return basis.with_rules(rules, BasisKind.BSTAR_MINMAX)


def minmin_variant(basis: Basis, L: ClosureLattice) -> Basis:
    """Minimal generators on both sides.

    The left side becomes the smallest generator of X. The right side becomes
    the smallest generator of XY that brings the fewest items beyond X, minus X.
    """
    _require_bstar(basis)
    rules = []
    for rule in basis:
        left = _smallest_generator(L, rule.antecedent)
        full = rule.full
        right = min(
            L.minimal_generators(L.node(full)),
            key=lambda generator: (
                len(generator),
                len(generator - rule.antecedent),
                lectic_key(generator),
            ),
        )
        rules.append(Rule(left, right - rule.antecedent))
    return basis.with_rules(rules, BasisKind.BSTAR_MINMIN)


def double_support_bstar(
    d: Dataset, gamma: Fraction, tau: int, mode: DoubleSupportMode = "filtered"
) -> Basis:
    """B* for rules of support at least tau.

    "filtered" mines closures of support ceil(gamma * tau), which holds every
    antecedent and competing superset of a rule of support tau, and keeps the
    rules reaching tau. "min_basis" builds B* over the tau-pruned lattice,
    the minimum-size basis for rules meeting both thresholds.

    Args:
        d (Dataset): The dataset
        gamma (Fraction): Confidence threshold in (0, 1)
        tau (int): Support threshold, at least 1
        mode (DoubleSupportMode, optional): Defaults to "filtered".

    Raises:
        ThresholdError: tau below 1
        InputError: Unknown mode

    Returns:
        Basis: Rules with support_floor tau
    """
    if tau < 1:
        raise ThresholdError(
            "double-support mining needs a support threshold of at least 1"
        )

    if mode == "min_basis":
        return bstar(d, enumerate_closures(d, tau), gamma)
    if mode != "filtered":
        raise InputError(f"unknown double-support mode {mode!r}")

    pruned = enumerate_closures(d, ceil_fraction(gamma * tau))
    full = bstar(d, pruned, gamma)
    kept = [rule for rule in full if d.support(rule.full) >= tau]
    bases_logger.debug(
        "Double-support mining kept %s of %s rules at tau %s", len(kept), len(full), tau
    )
    return Basis(tuple(kept), gamma, tau, BasisKind.BSTAR)


def frequent_itemsets(d: Dataset, floor: int) -> Iterator[tuple[ItemSet, int]]:
    """Every itemset of support >= floor, by depth-first tidset intersection."""
    root = d.extent(EMPTY)
    if root.count() < floor:
        return

    yield EMPTY, root.count()

    stack: list[tuple[ItemSet, list[tuple[int, frozenbitarray]]]] = []
    singletons = [
        (item.id, d.tidset(item.id))
        for item in d.items
        if d.tidset(item.id).count() >= floor
    ]
    stack.append((EMPTY, singletons))

    while stack:
        prefix, extensions = stack.pop()
        for position, (item, tidset) in enumerate(extensions):
            itemset = prefix | {item}
            yield itemset, tidset.count()
            deeper = []
            for other, other_tidset in extensions[position + 1 :]:
                joined = frozenbitarray(tidset & other_tidset)
                if joined.count() >= floor:
                    deeper.append((other, joined))
            if deeper:
                stack.append((itemset, deeper))


def all_rules_count(
    d: Dataset,
    gamma: Fraction,
    tau: int,
    convention: Convention = "traditional_singleton",
) -> int:
    """Number of rules meeting both thresholds.

    `traditional_singleton` counts X -> y with a nonempty X and a single
    consequent item; `general` counts every X -> Y with a nonempty Y disjoint
    from X, X possibly empty. Itemsets never seen are not counted, whatever
    tau says.
    """
    _check_gamma(gamma)
    supports = dict(frequent_itemsets(d, max(tau, 1)))
    count = 0

    for itemset, itemset_support in supports.items():
        if convention == "traditional_singleton":
            if len(itemset) < 2:
                continue
            count += sum(
                _reaches(supports[itemset - {item}], itemset_support, gamma)
                for item in itemset
            )
        elif convention == "general":
            for size in range(1, len(itemset) + 1):
                for consequent in combinations(itemset.items, size):
                    antecedent = itemset - ItemSet(consequent)
                    count += _reaches(supports[antecedent], itemset_support, gamma)
        else:
            raise InputError(f"unknown counting convention {convention!r}")

    return count


def format_basis(basis: Basis, d: Dataset, hide_empty_antecedent: bool = False) -> str:
    """Basis file text: a "# kind gamma support_floor" header and one rule per line.

    Each line reads "X -> Y ; supp=<count> conf=<num>/<den> (<decimal>)".
    Hiding empty antecedents only affects what is printed.
    """
    lines = [f"# {basis.kind.value} {basis.gamma} {basis.support_floor}"]
    for rule in basis:
        if hide_empty_antecedent and not rule.antecedent:
            continue
        lines.append(
            f"{d.format_rule(rule)} ; supp={d.support(rule.full)} "
            f"conf={format_fraction(d.confidence(rule))}"
        )
    return "\n".join(lines) + "\n"
