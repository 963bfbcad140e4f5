"""Deduction schemes for partial rules, derivation traces and their checker"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import AbstractSet, Literal

from ..constants import IMPLICATION_ARROW, PREMISE_SEPARATOR, TRACE_TURNSTILE
from ..dataset.dataset import EMPTY, Dataset, ItemSet, Rule
from ..exceptions import InputError, NotRedundantError
from ..implications.implications import ImplicationSet, implies, logical_closure
from ..logger import bases_logger
from .redundancy import closure_redundant, plainly_redundant

Mode = Literal["plain", "closure"]


class SchemeTag(str, Enum):
    RIGHT_REDUCTION = "rR"
    RIGHT_AUGMENTATION = "rA"
    LEFT_AUGMENTATION = "lA"
    RIGHT_EMPTY = "rEmpty"
    RIGHT_AUGMENTATION_CLOSURE = "rA_clo"
    RIGHT_IMPLICATION = "rI"
    LEFT_IMPLICATION = "lI"
    TWO_PREMISE = "two_A"


@dataclass(frozen=True)
class Scheme:
    """One application of a deduction scheme.

    `premises` are partial rules, `implication_premises` are read as X => Y
    and must follow from the implication set the step is checked against.
    """

    tag: SchemeTag
    premises: tuple[Rule, ...]
    implication_premises: tuple[Rule, ...]
    conclusion: Rule


@dataclass(frozen=True)
class DerivationTrace:
    steps: tuple[Scheme, ...]
    root_premises: tuple[Rule, ...]
    final: Rule

    def __len__(self) -> int:
        return len(self.steps)


def _one_premise(step: Scheme, implications: int) -> bool:
    return len(step.premises) == 1 and len(step.implication_premises) == implications


def check_step(B: ImplicationSet, s: Scheme) -> bool:
    """Validates the side conditions of the named scheme, exactly.

    Args:
        B (ImplicationSet): Implications the implication premises must follow from
        s (Scheme): The step

    Returns:
        bool: Whether the step is a correct instance of its scheme
    """
    conclusion = s.conclusion

    if s.tag is SchemeTag.RIGHT_EMPTY:
        return not (s.premises or s.implication_premises or conclusion.consequent)

    if s.tag is SchemeTag.TWO_PREMISE:
        return _check_two_premise(B, s)

    if not s.premises:
        return False
    premise = s.premises[0]
    x, y = premise.antecedent, premise.consequent

    if s.tag is SchemeTag.RIGHT_REDUCTION:
        return (
            _one_premise(s, 0)
            and conclusion.antecedent == x
            and conclusion.consequent <= y
        )

    if s.tag is SchemeTag.RIGHT_AUGMENTATION:
        return (
            _one_premise(s, 0)
            and conclusion.antecedent == x
            and conclusion.consequent == x | y
        )

    if s.tag is SchemeTag.LEFT_AUGMENTATION:
        # X -> W gives X' -> Z' when W splits as (X' - X) and Z'
        enlarged, rest = conclusion.antecedent, conclusion.consequent
        return (
            _one_premise(s, 0)
            and x <= enlarged
            and enlarged - x <= y
            and rest <= y
            and y - rest <= enlarged
        )

    if not _one_premise(s, 1):
        return False
    implication = s.implication_premises[0]
    if not implies(B, implication):
        return False

    if s.tag is SchemeTag.RIGHT_AUGMENTATION_CLOSURE:
        return (
            implication.antecedent == x
            and conclusion.antecedent == x
            and conclusion.consequent == y | implication.consequent
        )

    if s.tag is SchemeTag.RIGHT_IMPLICATION:
        return (
            implication.antecedent == y
            and conclusion.antecedent == x
            and conclusion.consequent == implication.consequent
        )

    if s.tag is SchemeTag.LEFT_IMPLICATION:
        return (
            implication.consequent == x
            and implication.antecedent == conclusion.antecedent
            and conclusion.antecedent <= x
            and conclusion.consequent == y
        )

    return False


def two_premise_step(
    r1: Rule, r2: Rule, z1: AbstractSet[int], z2: AbstractSet[int]
) -> Scheme:
    """Builds the (2A) instance for premises r1, r2 and the sets Z1, Z2."""
    z1, z2 = ItemSet(z1), ItemSet(z2)
    full_1, full_2 = r1.full, r2.full
    return Scheme(
        SchemeTag.TWO_PREMISE,
        (r1, r2),
        (
            Rule(full_1, r2.antecedent),
            Rule(full_2, r1.antecedent),
            Rule(full_1 | full_2, z1),
            Rule(full_1 | z1, z2),
            Rule(full_2 | z1, z2),
        ),
        Rule(r1.antecedent | r2.antecedent | z1, z2),
    )


TWO_PREMISE_CONDITIONS = (
    "X1Y1 => X2",
    "X2Y2 => X1",
    "X1Y1X2Y2 => Z1",
    "X1Y1Z1 => Z2",
    "X2Y2Z1 => Z2",
)


def failed_two_premise_condition(B: ImplicationSet, s: Scheme) -> str | None:
    """Names the first (2A) implication side condition B does not give, if any."""
    for condition, implication in zip(TWO_PREMISE_CONDITIONS, s.implication_premises):
        if not implies(B, implication):
            return condition
    return None


def _check_two_premise(B: ImplicationSet, s: Scheme) -> bool:
    if len(s.premises) != 2 or len(s.implication_premises) != 5:
        return False
    z1 = s.implication_premises[2].consequent
    z2 = s.implication_premises[3].consequent
    expected = two_premise_step(s.premises[0], s.premises[1], z1, z2)
    if expected != s:
        return False
    return failed_two_premise_condition(B, s) is None


def check_trace(B: ImplicationSet, trace: DerivationTrace) -> bool:
    """Replays a trace: every step valid, every premise available, final reached."""
    available = set(trace.root_premises)
    for step in trace.steps:
        if not all(premise in available for premise in step.premises):
            return False
        if not check_step(B, step):
            return False
        available.add(step.conclusion)

    if trace.steps:
        return trace.steps[-1].conclusion == trace.final
    return trace.final in available


def _without_identities(steps: list[Scheme]) -> tuple[Scheme, ...]:
    return tuple(
        step
        for step in steps
        if not (len(step.premises) == 1 and step.premises[0] == step.conclusion)
    )


def derive(
    B: ImplicationSet, r1: Rule, r0: Rule, mode: Mode = "closure"
) -> DerivationTrace:
    """Derives r0 from r1 along the canonical chain of the completeness argument.

    Plain mode:   X1->Y1 |-rA X1->X1Y1 |-rR X1->X0Y0 |-lA X0->Y0
    Closure mode: X1->Y1 |-rA X1->X1Y1 |-rI X1->C Y0 |-lA C->Y0 |-lI X0->Y0,
    with C the B-closure of X0. Steps that change nothing are left out.

    Args:
        B (ImplicationSet): Implications; ignored in plain mode
        r1 (Rule): The premise
        r0 (Rule): The rule to derive
        mode (Mode, optional): "plain" or "closure". Defaults to "closure".

    Raises:
        NotRedundantError: r0 is not redundant with respect to r1 in this mode

    Returns:
        DerivationTrace: A trace that replays through check_trace
    """
    x0, y0 = r0.antecedent, r0.consequent
    x1 = r1.antecedent

    if mode == "plain":
        if not plainly_redundant(r1, r0):
            raise NotRedundantError("the rule is not plainly redundant")
        if r0.is_trivial:
            steps = _empty_start(x0, y0, plain=True)
        else:
            augmented = Rule(x1, r1.full)
            reduced = Rule(x1, r0.full)
            steps = [
                Scheme(SchemeTag.RIGHT_AUGMENTATION, (r1,), (), augmented),
                Scheme(SchemeTag.RIGHT_REDUCTION, (augmented,), (), reduced),
                Scheme(SchemeTag.LEFT_AUGMENTATION, (reduced,), (), r0),
            ]
    elif mode == "closure":
        if not closure_redundant(B, r1, r0):
            raise NotRedundantError("the rule is not closure-redundant")
        closed_x0 = logical_closure(B, x0)
        if y0 <= closed_x0:
            steps = _empty_start(x0, y0, plain=False)
        else:
            augmented = Rule(x1, r1.full)
            widened = Rule(x1, closed_x0 | y0)
            shifted = Rule(closed_x0, y0)
            steps = [
                Scheme(
                    SchemeTag.RIGHT_AUGMENTATION_CLOSURE,
                    (r1,),
                    (Rule(x1, x1),),
                    augmented,
                ),
                Scheme(
                    SchemeTag.RIGHT_IMPLICATION,
                    (augmented,),
                    (Rule(r1.full, closed_x0 | y0),),
                    widened,
                ),
                Scheme(SchemeTag.LEFT_AUGMENTATION, (widened,), (), shifted),
                Scheme(
                    SchemeTag.LEFT_IMPLICATION,
                    (shifted,),
                    (Rule(x0, closed_x0),),
                    r0,
                ),
            ]
    else:
        raise InputError(f"unknown redundancy mode {mode!r}")

    trace = DerivationTrace(_without_identities(steps), (r1,), r0)
    bases_logger.debug("Derived a %s-step %s trace", len(trace), mode)
    return trace


def _empty_start(x0: ItemSet, y0: ItemSet, plain: bool) -> list[Scheme]:
    empty = Rule(x0, EMPTY)
    start = Scheme(SchemeTag.RIGHT_EMPTY, (), (), empty)
    if plain:
        reflexive = Rule(x0, x0)
        return [
            start,
            Scheme(SchemeTag.RIGHT_AUGMENTATION, (empty,), (), reflexive),
            Scheme(SchemeTag.RIGHT_REDUCTION, (reflexive,), (), Rule(x0, y0)),
        ]
    return [
        start,
        Scheme(
            SchemeTag.RIGHT_AUGMENTATION_CLOSURE,
            (empty,),
            (Rule(x0, y0),),
            Rule(x0, y0),
        ),
    ]


def format_trace(trace: DerivationTrace, d: Dataset) -> str:
    """One line per step: "SCHEME: premise ; implication |- conclusion".

    Rules are written literally (antecedent items are not stripped from the
    consequent) so that the text replays through `parse_trace`.
    """
    lines = []
    for step in trace.steps:
        premises = [d.format_rule(rule, canonical=False) for rule in step.premises]
        premises.extend(
            d.format_rule(rule, IMPLICATION_ARROW, canonical=False)
            for rule in step.implication_premises
        )
        joined = f" {PREMISE_SEPARATOR} ".join(premises)
        left = f"{step.tag.value}: {joined}".rstrip()
        conclusion = d.format_rule(step.conclusion, canonical=False)
        lines.append(f"{left} {TRACE_TURNSTILE} {conclusion}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_trace(text: str, d: Dataset) -> DerivationTrace:
    """Reads `format_trace` output back; roots are the premises never concluded."""
    steps: list[Scheme] = []
    concluded: set[Rule] = set()
    roots: list[Rule] = []

    for number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            head, conclusion_text = line.split(TRACE_TURNSTILE, 1)
            tag_text, premises_text = head.split(":", 1)
            tag = SchemeTag(tag_text.strip())
        except ValueError as error:
            raise InputError(f"trace line {number} is malformed: {line!r}") from error

        premises: list[Rule] = []
        implications: list[Rule] = []
        for part in premises_text.split(PREMISE_SEPARATOR):
            if not part.strip():
                continue
            rule = d.parse_rule(part)
            if IMPLICATION_ARROW in part:
                implications.append(rule)
            else:
                premises.append(rule)
                if rule not in concluded and rule not in roots:
                    roots.append(rule)

        step = Scheme(
            tag, tuple(premises), tuple(implications), d.parse_rule(conclusion_text)
        )
        steps.append(step)
        concluded.add(step.conclusion)

    if not steps:
        raise InputError("the trace has no steps")

    return DerivationTrace(tuple(steps), tuple(roots), steps[-1].conclusion)
