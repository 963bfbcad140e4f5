import unittest
from fractions import Fraction
from unittest.mock import patch

from hypothesis import given, settings, strategies as st

from ..closure.closure import enumerate_closures
from ..constants import LOGGER_NAME, SMALL_EXAMPLE_DATASET
from ..dataset.dataset import Dataset, load_dataset, parse_transactions
from ..implications.implications import gd_basis
from ..strategies import datasets, gammas
from .bases import bstar, representative_rules
from .verifiers import (
    candidate_rules,
    smallest_hitting_set,
    verify_completeness,
    verify_minimality,
)


class TestExampleVerification(unittest.TestCase):
    def setUp(self) -> None:
        self.d = load_dataset(SMALL_EXAMPLE_DATASET)
        self.L = enumerate_closures(self.d, 1)
        self.gamma = Fraction(3, 4)
        self.implications = gd_basis(self.L, self.d)

    def test_candidates_meet_both_thresholds(self) -> None:
        candidates = candidate_rules(self.d, self.gamma, 2)
        self.assertIn(self.d.parse_rule("D -> C"), candidates)
        for rule in candidates:
            self.assertTrue(rule.consequent)
            self.assertFalse(rule.antecedent & rule.consequent)
            self.assertGreaterEqual(self.d.confidence(rule), self.gamma)
            self.assertGreaterEqual(self.d.support(rule.full), 2)

    def test_representative_rules_are_complete_and_minimum(self) -> None:
        basis = representative_rules(self.d, self.L, self.gamma)
        self.assertTrue(verify_completeness(basis, self.d, self.gamma, 1).complete)

        report = verify_minimality(basis, self.d, self.gamma)
        self.assertTrue(report.exhaustive)
        self.assertEqual(report.redundant_rules, ())
        self.assertIsNone(report.smaller_complete_basis)
        self.assertTrue(report.minimal)

    def test_bstar_with_implications_is_complete_and_minimum(self) -> None:
        basis = bstar(self.d, self.L, self.gamma)
        report = verify_completeness(
            basis, self.d, self.gamma, 1, "closure", self.implications
        )
        self.assertTrue(report.complete)

        minimality = verify_minimality(
            basis, self.d, self.gamma, "closure", self.implications
        )
        self.assertTrue(minimality.minimal)

    def test_bstar_alone_misses_the_implications(self) -> None:
        basis = bstar(self.d, self.L, self.gamma)
        report = verify_completeness(basis, self.d, self.gamma, 1)
        self.assertFalse(report.complete)
        self.assertIn(self.d.parse_rule("A C -> B"), report.violators)

    def test_dropping_a_rule_leaves_a_violator(self) -> None:
        basis = representative_rules(self.d, self.L, self.gamma)
        dropped = self.d.parse_rule("D -> C")
        smaller = basis.with_rules([rule for rule in basis if rule != dropped])
        self.assertEqual(len(smaller), 9)

        report = verify_completeness(smaller, self.d, self.gamma, 1)
        self.assertIn(dropped, report.violators)

    def test_a_repeated_rule_is_reported(self) -> None:
        basis = representative_rules(self.d, self.L, self.gamma)
        repeated = self.d.parse_rule("A D -> B")
        padded = basis.with_rules([*basis, repeated])

        report = verify_minimality(padded, self.d, self.gamma)
        self.assertIn(repeated, report.redundant_rules)
        self.assertEqual(len(report.smaller_complete_basis), 10)
        self.assertFalse(report.minimal)


class TestMinimalityPool(unittest.TestCase):
    def setUp(self) -> None:
        self.d = parse_transactions("A B C D E\n")
        self.gamma = Fraction(3, 4)
        L = enumerate_closures(self.d, 1)
        self.basis = representative_rules(self.d, L, self.gamma)

    def test_pools_beyond_subset_enumeration_are_searched_exactly(self) -> None:
        self.assertGreater(len(candidate_rules(self.d, self.gamma, 1)), 22)
        report = verify_minimality(self.basis, self.d, self.gamma)
        self.assertTrue(report.exhaustive)
        self.assertTrue(report.minimal)

    @patch("rule_bases.rule_bases.bases.verifiers.MINIMALITY_POOL_LIMIT", 10)
    def test_oversized_pool_falls_back_to_irredundancy(self) -> None:
        with self.assertLogs(LOGGER_NAME, level="WARNING"):
            report = verify_minimality(self.basis, self.d, self.gamma)
        self.assertFalse(report.exhaustive)
        self.assertIsNone(report.smaller_complete_basis)
        self.assertEqual(report.redundant_rules, ())


class TestHittingSets(unittest.TestCase):
    def test_smallest_hitting_set(self) -> None:
        families = [0b011, 0b110, 0b100]
        self.assertIsNone(smallest_hitting_set(families, 1))

        hit = smallest_hitting_set(families, 2)
        self.assertIsNotNone(hit)
        self.assertLessEqual(bin(hit).count("1"), 2)
        for family in families:
            self.assertTrue(family & hit)

    def test_nothing_to_hit(self) -> None:
        self.assertEqual(smallest_hitting_set([], 0), 0)


class TestVerifierProperties(unittest.TestCase):
    @settings(max_examples=30, deadline=None)
    @given(datasets(max_items=5), gammas(), st.integers(min_value=1, max_value=3))
    def test_representative_rules_are_plainly_complete(
        self, d: Dataset, gamma: Fraction, tau: int
    ) -> None:
        basis = representative_rules(d, enumerate_closures(d, tau), gamma)
        report = verify_completeness(basis, d, gamma, tau)
        self.assertEqual(report.violators, ())

    @settings(max_examples=30, deadline=None)
    @given(datasets(max_items=5), gammas(), st.integers(min_value=1, max_value=3))
    def test_bstar_with_gd_is_closure_complete(
        self, d: Dataset, gamma: Fraction, tau: int
    ) -> None:
        L = enumerate_closures(d, tau)
        report = verify_completeness(
            bstar(d, L, gamma), d, gamma, tau, "closure", gd_basis(L, d)
        )
        self.assertEqual(report.violators, ())

    @settings(max_examples=20, deadline=None)
    @given(datasets(max_items=4), gammas())
    def test_no_smaller_complete_basis_exists(
        self, d: Dataset, gamma: Fraction
    ) -> None:
        L = enumerate_closures(d, 1)
        self.assertTrue(
            verify_minimality(representative_rules(d, L, gamma), d, gamma).minimal
        )
        self.assertTrue(
            verify_minimality(
                bstar(d, L, gamma), d, gamma, "closure", gd_basis(L, d)
            ).minimal
        )
