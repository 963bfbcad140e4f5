from __future__ import annotations

from fractions import Fraction

from ..closure.closure import ClosureLattice, enumerate_closures
from ..dataset.dataset import Dataset
from ..exceptions import MissingParameterError, RuleBasesError
from ..implications.implications import gd_basis, iteration_free_basis
from ..logger import bases_logger
from .bases import (
    Basis,
    BasisKind,
    bstar,
    minmax_variant,
    minmin_variant,
    representative_rules,
)

GAMMA_FREE_KINDS = frozenset({BasisKind.GD, BasisKind.ITER_FREE})


class BaseBasisBuilder:
    """Abstract Basis Builder class"""

    def __init__(self) -> None:
        self.error: RuleBasesError | Exception | None = None
        self._observers: list[ErrorObserver] = []

    def attach(self, observer: ErrorObserver) -> None:
        """Attach an observer

        Args:
            observer (ErrorObserver): The observer to attach
        """
        self._observers.append(observer)

    def notify(self) -> None:
        """Notify all attached observers."""
        for observer in self._observers:
            observer.update(self)


class ErrorObserver:
    """Error observer class."""

    def update(self, notifier: BaseBasisBuilder) -> None:
        """Logs the notifier's error and raises it again

        Args:
            notifier (BaseBasisBuilder): The event notifier object
        """
        if notifier.error:
            bases_logger.exception(notifier.error, exc_info=notifier.error)
            raise notifier.error


class BasisBuilder(BaseBasisBuilder):
    """
    Basis Builder class.
    Mines the closed sets of a dataset once and builds any kind of basis from them
    """

    def __init__(self) -> None:
        super().__init__()
        self._dataset: Dataset | None = None
        self._kind: BasisKind | None = None
        self._gamma: Fraction | None = None
        self._support_floor: int = 1
        self._lattice: ClosureLattice | None = None

        self.attach(ErrorObserver())

    @property
    def dataset(self) -> Dataset | None:
        return self._dataset

    @dataset.setter
    def dataset(self, new_dataset: Dataset) -> None:
        self._dataset = new_dataset
        self._lattice = None

    @property
    def kind(self) -> BasisKind | None:
        """The basis to build."""
        return self._kind

    @kind.setter
    def kind(self, new_kind: BasisKind | str) -> None:
        self._kind = BasisKind(new_kind)

    @property
    def gamma(self) -> Fraction | None:
        return self._gamma

    @gamma.setter
    def gamma(self, new_gamma: Fraction) -> None:
        self._gamma = new_gamma

    @property
    def support_floor(self) -> int:
        return self._support_floor

    @support_floor.setter
    def support_floor(self, new_support_floor: int) -> None:
        self._support_floor = new_support_floor
        self._lattice = None

    @property
    def lattice(self) -> ClosureLattice:
        """Closed sets at the current support floor, mined on first use."""
        if self._dataset is None:
            raise MissingParameterError("a dataset is needed before mining closed sets")
        if self._lattice is None:
            self._lattice = enumerate_closures(self._dataset, self._support_floor)
        return self._lattice

    def build(self) -> Basis | None:
        """Builds the configured basis."""
        if self._dataset is None or self._kind is None:
            raise MissingParameterError(
                "Please ensure the dataset and the basis kind are set."
            )
        if self._gamma is None and self._kind not in GAMMA_FREE_KINDS:
            raise MissingParameterError(
                f"A confidence threshold is required for {self._kind.value}."
            )

        try:
            if self._kind is BasisKind.GD:
                return Basis.from_implications(
                    gd_basis(self.lattice, self._dataset),
                    BasisKind.GD,
                    self._support_floor,
                )
            if self._kind is BasisKind.ITER_FREE:
                return Basis.from_implications(
                    iteration_free_basis(self.lattice, self._dataset),
                    BasisKind.ITER_FREE,
                    self._support_floor,
                )
            if self._kind is BasisKind.RR:
                return representative_rules(self._dataset, self.lattice, self._gamma)

            basis = bstar(self._dataset, self.lattice, self._gamma)
            if self._kind is BasisKind.BSTAR_MINMAX:
                return minmax_variant(basis, self.lattice)
            if self._kind is BasisKind.BSTAR_MINMIN:
                return minmin_variant(basis, self.lattice)
            return basis

        except RuleBasesError as error:
            self.error = error
            self.notify()
            return None
