"""Errors raised by the app"""


class RuleBasesError(Exception):
    """Base class of every error raised by the app."""


class InputError(RuleBasesError):
    """Unreadable or malformed input: files, item names, rules, thresholds."""


class ThresholdError(InputError, ValueError):
    """A confidence or support threshold outside its admissible range."""


class MissingParameterError(RuleBasesError):
    """A builder was asked to run before its mandatory parameters were set."""


class NotRedundantError(RuleBasesError):
    """No derivation exists because the target rule is not redundant."""


class SideConditionError(RuleBasesError):
    """A deduction scheme was applied with a side condition that does not hold."""

    def __init__(self, condition: str, message: str | None = None) -> None:
        self.condition = condition
        super().__init__(message or f"side condition {condition} does not hold")


class InvariantError(RuleBasesError):
    """A post-construction self check failed."""
