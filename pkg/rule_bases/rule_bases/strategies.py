"""Hypothesis strategies shared by the test modules"""

from fractions import Fraction

from hypothesis import strategies as st

from .dataset.dataset import Dataset, ItemSet, Rule
from .implications.implications import ImplicationSet

GAMMAS = (
    Fraction(1, 2),
    Fraction(3, 5),
    Fraction(2, 3),
    Fraction(3, 4),
    Fraction(9, 10),
)


def itemsets(
    item_count: int, max_size: int | None = None
) -> st.SearchStrategy[ItemSet]:
    return st.frozensets(
        st.integers(min_value=0, max_value=item_count - 1), max_size=max_size
    ).map(ItemSet)


def rules(item_count: int) -> st.SearchStrategy[Rule]:
    return st.builds(Rule, itemsets(item_count), itemsets(item_count))


def disjoint_rules(item_count: int) -> st.SearchStrategy[Rule]:
    return rules(item_count).map(Rule.canonical)


@st.composite
def datasets(
    draw: st.DrawFn,
    min_items: int = 2,
    max_items: int = 6,
    min_transactions: int = 1,
    max_transactions: int = 12,
) -> Dataset:
    """Small random datasets over items named A, B, C, ..."""
    item_count = draw(st.integers(min_value=min_items, max_value=max_items))
    rows = draw(
        st.lists(
            itemsets(item_count),
            min_size=min_transactions,
            max_size=max_transactions,
        )
    )
    names = [chr(ord("A") + item_id) for item_id in range(item_count)]
    return Dataset(names, rows)


@st.composite
def implication_sets(
    draw: st.DrawFn, item_count: int, max_rules: int = 3
) -> ImplicationSet:
    drawn = draw(st.lists(rules(item_count), max_size=max_rules))
    return ImplicationSet(tuple(rule.canonical() for rule in drawn))


def gammas() -> st.SearchStrategy[Fraction]:
    return st.sampled_from(GAMMAS)
