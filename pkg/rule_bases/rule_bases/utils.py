"""Utility functions"""

import math
import re
from fractions import Fraction
from itertools import chain, combinations
from typing import AbstractSet, Iterable, Iterator, TypeVar

from .exceptions import ThresholdError

T = TypeVar("T")

GAMMA_PATTERN = re.compile(r"^\s*(\d+)\s*/\s*(\d+)\s*$")
DECIMAL_PATTERN = re.compile(r"^\s*\d*\.?\d+\s*$")


def parse_gamma(text: str | Fraction | float) -> Fraction:
    """Reads a confidence threshold as an exact rational.

    Accepts "m/n" or a decimal such as "0.75"; decimals are taken over the
    denominator 10^k so that "0.6" is exactly 3/5.

    Args:
        text (str | Fraction | float): The threshold as typed by the user

    Raises:
        ThresholdError: Unparseable, or outside (0, 1]

    Returns:
        Fraction: The threshold
    """
    if isinstance(text, Fraction):
        gamma = text
    elif isinstance(text, float):
        gamma = Fraction(repr(text))
    else:
        match = GAMMA_PATTERN.match(text)
        if match:
            numerator, denominator = int(match.group(1)), int(match.group(2))
            if denominator == 0:
                raise ThresholdError(
                    f"confidence threshold {text!r} has a zero denominator"
                )
            gamma = Fraction(numerator, denominator)
        elif DECIMAL_PATTERN.match(text):
            gamma = Fraction(text.strip())
        else:
            raise ThresholdError(f"cannot read confidence threshold {text!r}")

    if not 0 < gamma <= 1:
        raise ThresholdError(f"confidence threshold {gamma} is outside (0, 1]")

    return gamma


def parse_support(text: str | int, transaction_count: int) -> int:
    """Reads a support threshold as an absolute transaction count.

    A value containing "." or "/" is a fraction of the dataset and becomes
    ceiling(fraction * transaction_count); anything else is a count.

    Args:
        text (str | int): The threshold as typed by the user
        transaction_count (int): Number of transactions in the dataset

    Raises:
        ThresholdError: Unparseable, negative, or a fraction above 1

    Returns:
        int: The support floor
    """
    if isinstance(text, int):
        count = text
    else:
        stripped = text.strip()
        if "." in stripped or "/" in stripped:
            try:
                fraction = Fraction(stripped)
            except (ValueError, ZeroDivisionError) as error:
                raise ThresholdError(
                    f"cannot read support threshold {text!r}"
                ) from error
            if not 0 <= fraction <= 1:
                raise ThresholdError(f"support fraction {fraction} is outside [0, 1]")
            return ceil_fraction(fraction * transaction_count)
        try:
            count = int(stripped)
        except ValueError as error:
            raise ThresholdError(f"cannot read support threshold {text!r}") from error

    if count < 0:
        raise ThresholdError(f"support threshold {count} is negative")

    return count


def ceil_fraction(value: Fraction) -> int:
    return math.ceil(value)


def format_fraction(value: Fraction) -> str:
    """Renders a rational as "num/den" followed by its rounded decimal value."""
    return f"{value.numerator}/{value.denominator} ({float(value):.4f})"


def lectic_key(items: Iterable[int]) -> tuple[int, ...]:
    """Sort key realising the lectic order on itemsets.

    A precedes B iff the smallest item of their symmetric difference lies in B,
    so item 0 is the most significant position and every subset precedes its
    supersets.

    Args:
        items (Iterable[int]): Item ids of one itemset

    Returns:
        tuple[int, ...]: A key comparable with tuple ordering
    """
    return tuple(-item for item in sorted(items))


def lectic_sorted(itemsets: Iterable[AbstractSet[int]]) -> list:
    return sorted(itemsets, key=lectic_key)


def all_subsets(items: Iterable[T]) -> Iterator[tuple[T, ...]]:
    """All subsets of items, smallest first."""
    pool = tuple(items)
    return chain.from_iterable(
        combinations(pool, size) for size in range(len(pool) + 1)
    )


def popcount(mask: int) -> int:
    return bin(mask).count("1")
