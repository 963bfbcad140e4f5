"""Transactions, itemsets and rules, with the support and confidence primitives"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import AbstractSet, BinaryIO, Container, Iterable, Sequence, TextIO

from bitarray import bitarray, frozenbitarray
from bitarray.util import subset

from ..constants import EMPTY_ITEMSET_TOKEN, FIMI_FORMAT, IMPLICATION_ARROW, RULE_ARROW
from ..exceptions import InputError
from ..logger import bases_logger
from ..utils import lectic_key


class ItemSet(frozenset):
    """Immutable set of item ids.

    Set algebra between itemsets stays within the type, and `items` gives the
    strictly increasing id sequence used for display and ordering.
    """

    __slots__ = ()

    def __new__(cls, items: Iterable[int] = ()) -> ItemSet:
        return super().__new__(cls, items)

    def __or__(self, other: AbstractSet[int]) -> ItemSet:
        if not isinstance(other, AbstractSet):
            return NotImplemented
        return ItemSet(frozenset.__or__(self, frozenset(other)))

    def __and__(self, other: AbstractSet[int]) -> ItemSet:
        if not isinstance(other, AbstractSet):
            return NotImplemented
        return ItemSet(frozenset.__and__(self, frozenset(other)))

    def __sub__(self, other: AbstractSet[int]) -> ItemSet:
        if not isinstance(other, AbstractSet):
            return NotImplemented
        return ItemSet(frozenset.__sub__(self, frozenset(other)))

    def __xor__(self, other: AbstractSet[int]) -> ItemSet:
        if not isinstance(other, AbstractSet):
            return NotImplemented
        return ItemSet(frozenset.__xor__(self, frozenset(other)))

    def union(self, *others: Iterable[int]) -> ItemSet:
        return ItemSet(frozenset.union(self, *others))

    def intersection(self, *others: Iterable[int]) -> ItemSet:
        return ItemSet(frozenset.intersection(self, *others))

    def difference(self, *others: Iterable[int]) -> ItemSet:
        return ItemSet(frozenset.difference(self, *others))

    @property
    def items(self) -> tuple[int, ...]:
        return tuple(sorted(self))

    def lectic_key(self) -> tuple[int, ...]:
        return lectic_key(self)

    def __repr__(self) -> str:
        return f"ItemSet({list(self.items)})"


EMPTY = ItemSet()


@dataclass(frozen=True)
class Item:
    id: int
    name: str


@dataclass(frozen=True)
class Transaction:
    tid: int
    items: ItemSet


@dataclass(frozen=True)
class Rule:
    """An association rule X -> Y.

    The internal form may repeat antecedent items on the right; `canonical`
    strips them, which is the form every output uses.
    """

    antecedent: ItemSet
    consequent: ItemSet

    def __post_init__(self) -> None:
        object.__setattr__(self, "antecedent", ItemSet(self.antecedent))
        object.__setattr__(self, "consequent", ItemSet(self.consequent))

    @property
    def full(self) -> ItemSet:
        """Antecedent and consequent together, XY."""
        return self.antecedent | self.consequent

    @property
    def is_trivial(self) -> bool:
        return self.consequent <= self.antecedent

    def canonical(self) -> Rule:
        return Rule(self.antecedent, self.consequent - self.antecedent)

    def sort_key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (self.antecedent.lectic_key(), self.consequent.lectic_key())

    def __str__(self) -> str:
        return f"{list(self.antecedent.items)} -> {list(self.consequent.items)}"


def sorted_rules(rules: Iterable[Rule]) -> list[Rule]:
    return sorted(rules, key=Rule.sort_key)


class Dataset:
    """A multiset of transactions over a dense universe of named items.

    Supports are answered from one vertical tidset per item. Instances are
    treated as immutable; the caches only memoise pure answers.
    """

    def __init__(
        self, names: Sequence[str], transactions: Iterable[Iterable[int]]
    ) -> None:
        if len(set(names)) != len(names):
            raise InputError("item names must be unique")

        self.items: tuple[Item, ...] = tuple(
            Item(item_id, name) for item_id, name in enumerate(names)
        )
        self.universe: ItemSet = ItemSet(range(len(names)))
        self.transactions: tuple[Transaction, ...] = tuple(
            Transaction(tid, ItemSet(items)) for tid, items in enumerate(transactions)
        )
        self._ids_by_name: dict[str, int] = {item.name: item.id for item in self.items}

        for transaction in self.transactions:
            if not transaction.items <= self.universe:
                raise InputError(
                    f"transaction {transaction.tid} mentions items outside the universe"
                )

        size = len(self.transactions)
        everything = bitarray(size)
        everything.setall(True)
        self._all_tids = frozenbitarray(everything)

        tidsets = [bitarray(size) for _ in self.items]
        for tidset in tidsets:
            tidset.setall(False)
        for transaction in self.transactions:
            for item in transaction.items:
                tidsets[item][transaction.tid] = True
        self._tidsets: tuple[frozenbitarray, ...] = tuple(
            frozenbitarray(tidset) for tidset in tidsets
        )

        self._supports: dict[ItemSet, int] = {}
        self._closures: dict[ItemSet, ItemSet] = {}

    @classmethod
    def from_itemsets(
        cls,
        itemsets: Iterable[Iterable[int]],
        names: Sequence[str] | None = None,
    ) -> Dataset:
        """Builds a dataset straight from id-level transactions.

        Without names the universe is 0..max id and items are named by their ids.
        """
        rows = [ItemSet(itemset) for itemset in itemsets]
        if names is None:
            width = max((max(row) + 1 for row in rows if row), default=0)
            names = [str(item_id) for item_id in range(width)]
        return cls(names, rows)

    def __len__(self) -> int:
        return len(self.transactions)

    def __repr__(self) -> str:
        return (
            f"Dataset(items={len(self.items)}, transactions={len(self.transactions)})"
        )

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(item.name for item in self.items)

    def id_of(self, name: str) -> int:
        try:
            return self._ids_by_name[name]
        except KeyError as error:
            raise InputError(f"unknown item {name!r}") from error

    def name_of(self, item_id: int) -> str:
        return self.items[item_id].name

    def has_item(self, name: str) -> bool:
        return name in self._ids_by_name

    def itemset(self, names: Iterable[str]) -> ItemSet:
        return ItemSet(self.id_of(name) for name in names)

    def check_itemset(self, itemset: AbstractSet[int]) -> None:
        if not itemset <= self.universe:
            raise InputError(
                f"itemset {sorted(itemset)} is not contained in the dataset universe"
            )

    def tidset(self, item_id: int) -> frozenbitarray:
        return self._tidsets[item_id]

    def extent(self, itemset: AbstractSet[int]) -> frozenbitarray:
        """Transactions containing every item of the itemset, as a bit mask."""
        self.check_itemset(itemset)
        result = bitarray(self._all_tids)
        for item in itemset:
            result &= self._tidsets[item]
        return frozenbitarray(result)

    def support(self, itemset: AbstractSet[int]) -> int:
        key = ItemSet(itemset)
        cached = self._supports.get(key)
        if cached is None:
            cached = self.extent(key).count()
            self._supports[key] = cached
        return cached

    def confidence(self, rule: Rule) -> Fraction:
        antecedent_support = self.support(rule.antecedent)
        if antecedent_support == 0:
            return Fraction(1)
        return Fraction(self.support(rule.full), antecedent_support)

    def closure_of_extent(self, extent: frozenbitarray) -> ItemSet:
        """Items shared by every transaction of the extent; the universe if empty."""
        if not extent.any():
            return self.universe
        return ItemSet(
            item_id
            for item_id, tidset in enumerate(self._tidsets)
            if subset(extent, tidset)
        )

    def closure(self, itemset: AbstractSet[int]) -> ItemSet:
        key = ItemSet(itemset)
        cached = self._closures.get(key)
        if cached is None:
            cached = self.closure_of_extent(self.extent(key))
            self._closures[key] = cached
        return cached

    def format_itemset(self, itemset: AbstractSet[int]) -> str:
        if not itemset:
            return EMPTY_ITEMSET_TOKEN
        return " ".join(self.name_of(item_id) for item_id in sorted(itemset))

    def format_rule(
        self, rule: Rule, arrow: str = RULE_ARROW, canonical: bool = True
    ) -> str:
        shown = rule.canonical() if canonical else rule
        return (
            f"{self.format_itemset(shown.antecedent)} {arrow} "
            f"{self.format_itemset(shown.consequent)}"
        )

    def format_implication(self, rule: Rule) -> str:
        return self.format_rule(rule, IMPLICATION_ARROW)

    def parse_itemset(self, text: str) -> ItemSet:
        """Reads one rule side, e.g. "a b" or, for one-letter items, "ab"."""
        return ItemSet(
            self.id_of(name) for name in split_side(text, known=self._ids_by_name)
        )

    def parse_rule(self, text: str) -> Rule:
        for arrow in (RULE_ARROW, IMPLICATION_ARROW):
            if arrow in text:
                left, right = text.split(arrow, 1)
                return Rule(self.parse_itemset(left), self.parse_itemset(right))
        raise InputError(
            f"rule {text!r} has no {RULE_ARROW!r} or {IMPLICATION_ARROW!r}"
        )

    def to_fimi(self) -> str:
        """Serialises the transactions, one line each.

        FIMI has no way to write an empty transaction, so those become blank
        lines and are dropped again on re-reading.
        """
        return "".join(
            " ".join(self.name_of(item_id) for item_id in transaction.items.items)
            + "\n"
            for transaction in self.transactions
        )


def _is_compact(token: str) -> bool:
    return len(token) > 1 and token.isascii() and token.isalpha() and token.isupper()


def split_side(text: str, known: Container[str] | None = None) -> list[str]:
    """Splits one rule side into item names.

    A side with several whitespace separated tokens lists whole item names, so
    "milk bread" means milk and bread. A side with a single token that is not a
    known name may be written compactly as a run of one-letter names, so "ACD"
    means A, C and D. Without known names only upper-case runs read that way,
    and "ab" stays one item.
    """
    stripped = text.strip()
    if stripped in ("", EMPTY_ITEMSET_TOKEN):
        return []

    tokens = stripped.split()
    if len(tokens) > 1:
        if known is not None:
            for token in tokens:
                if token not in known:
                    raise InputError(f"unknown item {token!r}")
        return tokens

    token = tokens[0]
    if known is None:
        return list(token) if _is_compact(token) else [token]
    if token in known:
        return [token]
    if len(token) > 1 and all(character in known for character in token):
        return list(token)
    raise InputError(f"unknown item {token!r}")


def vocabulary_from_rules(texts: Iterable[str]) -> list[str]:
    """Sorted item names mentioned by free-standing rules, for runs without data."""
    names: set[str] = set()
    for text in texts:
        for arrow in (RULE_ARROW, IMPLICATION_ARROW):
            if arrow in text:
                left, right = text.split(arrow, 1)
                names.update(split_side(left))
                names.update(split_side(right))
                break
        else:
            raise InputError(
                f"rule {text!r} has no {RULE_ARROW!r} or {IMPLICATION_ARROW!r}"
            )
    return sorted(names)


def parse_transactions(
    stream: BinaryIO | TextIO | bytes | str, format: str = FIMI_FORMAT
) -> Dataset:
    """Reads a transaction file.

    Args:
        stream (BinaryIO | TextIO | bytes | str): File object or raw content
        format (str, optional): Input format, only FIMI. Defaults to "FIMI".

    Raises:
        InputError: Unknown format, undecodable bytes, or no transactions

    Returns:
        Dataset: One transaction per nonempty line, tids in line order and item
        ids in first-appearance order
    """
    if format != FIMI_FORMAT:
        raise InputError(f"unsupported transaction format {format!r}")

    if isinstance(stream, (bytes, str)):
        content = stream
    else:
        content = stream.read()

    if isinstance(content, bytes):
        try:
            content = content.decode("utf-8")
        except UnicodeDecodeError as error:
            raise InputError("transaction file is not valid UTF-8") from error

    names: list[str] = []
    ids: dict[str, int] = {}
    rows: list[list[int]] = []

    for line in io.StringIO(content):
        tokens = line.split()
        if not tokens:
            continue

        row: list[int] = []
        for token in tokens:
            if token not in ids:
                ids[token] = len(names)
                names.append(token)
            row.append(ids[token])
        rows.append(row)

    if not rows:
        raise InputError("no transactions")

    bases_logger.debug("Read %s transactions over %s items", len(rows), len(names))
    return Dataset(names, rows)


def load_dataset(path: str | Path) -> Dataset:
    try:
        with open(path, "rb") as handle:
            return parse_transactions(handle)
    except OSError as error:
        raise InputError(f"cannot read {path}: {error}") from error


def support(d: Dataset, x: AbstractSet[int]) -> int:
    return d.support(x)


def confidence(d: Dataset, r: Rule) -> Fraction:
    """s(XY)/s(X) exactly, and 1 when the antecedent never occurs."""
    return d.confidence(r)


def equivalent_by_reflexivity(r0: Rule, r1: Rule) -> bool:
    return r0.antecedent == r1.antecedent and r0.full == r1.full


@dataclass(frozen=True)
class WeightedShape:
    """A transaction itemset together with its multiplicity.

    Oracles reason about datasets made of a handful of repeated shapes; these
    answer supports arithmetically and only become a `Dataset` on demand.
    """

    itemset: ItemSet
    count: int = field(default=1)


def shape_support(shapes: Iterable[WeightedShape], itemset: AbstractSet[int]) -> int:
    return sum(shape.count for shape in shapes if itemset <= shape.itemset)


def shape_confidence(shapes: Sequence[WeightedShape], rule: Rule) -> Fraction:
    antecedent_support = shape_support(shapes, rule.antecedent)
    if antecedent_support == 0:
        return Fraction(1)
    return Fraction(shape_support(shapes, rule.full), antecedent_support)


def dataset_from_shapes(
    shapes: Iterable[WeightedShape], names: Sequence[str] | None = None
) -> Dataset:
    rows = [shape.itemset for shape in shapes for _ in range(shape.count)]
    if names is None:
        return Dataset.from_itemsets(rows)
    return Dataset(names, rows)
