import unittest
from fractions import Fraction
from unittest.mock import MagicMock, patch

from ..constants import LOGGER_NAME, SMALL_EXAMPLE_DATASET
from ..dataset.dataset import load_dataset
from ..exceptions import InvariantError, MissingParameterError
from .bases import BasisKind
from .basis_builder import BasisBuilder


class TestBasisBuilder(unittest.TestCase):
    """Test Cases"""

    def setUp(self) -> None:
        self.d = load_dataset(SMALL_EXAMPLE_DATASET)

    def test_builds_every_kind(self) -> None:
        expected = {
            BasisKind.RR: 10,
            BasisKind.BSTAR: 4,
            BasisKind.BSTAR_MINMAX: 4,
            BasisKind.BSTAR_MINMIN: 4,
            BasisKind.GD: 6,
            BasisKind.ITER_FREE: 6,
        }

        b = BasisBuilder()
        b.dataset = self.d
        b.gamma = Fraction(3, 4)

        for kind, size in expected.items():
            with self.subTest(kind=kind.value):
                b.kind = kind
                basis = b.build()
                self.assertIsNotNone(basis)
                self.assertEqual(len(basis), size)
                self.assertIs(basis.kind, kind)
                self.assertEqual(basis.support_floor, 1)

    def test_kind_accepts_its_name(self) -> None:
        b = BasisBuilder()
        b.kind = "Bstar"
        self.assertIs(b.kind, BasisKind.BSTAR)

    def test_implication_bases_need_no_gamma(self) -> None:
        b = BasisBuilder()
        b.dataset = self.d
        b.kind = BasisKind.GD
        self.assertEqual(b.build().gamma, 1)

    def test_lattice_follows_the_support_floor(self) -> None:
        b = BasisBuilder()
        b.dataset = self.d
        self.assertEqual(len(b.lattice), 12)

        b.support_floor = 0
        self.assertEqual(len(b.lattice), 13)

    def test_missing_parameters(self) -> None:
        b = BasisBuilder()
        with self.assertRaises(MissingParameterError):
            b.build()
        with self.assertRaises(MissingParameterError):
            b.lattice

        b.dataset = self.d
        b.kind = BasisKind.BSTAR
        with self.assertRaises(MissingParameterError):
            b.build()

    @patch("rule_bases.rule_bases.bases.basis_builder.bstar")
    def test_failures_reach_the_observer(self, mock_bstar: MagicMock) -> None:
        mock_bstar.side_effect = InvariantError("B* self check failed")

        b = BasisBuilder()
        b.dataset = self.d
        b.kind = BasisKind.BSTAR
        b.gamma = Fraction(3, 4)

        with self.assertLogs(LOGGER_NAME, level="ERROR") as logs:
            with self.assertRaises(InvariantError):
                b.build()

        self.assertIsInstance(b.error, InvariantError)
        self.assertIn("B* self check failed", logs.output[0])
