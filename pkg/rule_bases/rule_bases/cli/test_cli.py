import logging
import unittest
from fractions import Fraction
from pathlib import Path

from click.testing import CliRunner

from ... import hooks
from ..bases.bases import all_rules_count
from ..constants import (
    EXIT_INPUT_ERROR,
    EXIT_NEGATIVE_VERDICT,
    EXIT_OK,
    LOGGER_NAME,
    SMALL_EXAMPLE_DATASET,
)
from ..dataset.dataset import load_dataset
from ..exceptions import InputError, InvariantError, ThresholdError
from ..handlers import handle_errors
from ..logger import bases_logger
from .cli import RunConfig, cli, cmd_compare, cmd_sweep, compare_row, sweep_gammas

EXAMPLE = str(SMALL_EXAMPLE_DATASET)


def rule_lines(output: str) -> list[str]:
    return [line for line in output.splitlines() if not line.startswith("#")]


class CliTestCase(unittest.TestCase):
    def setUp(self) -> None:
        self.runner = CliRunner()

    def tearDown(self) -> None:
        # handlers bound to the runner's streams must not outlive the test
        for handler in list(bases_logger.handlers):
            if not isinstance(handler, logging.NullHandler):
                bases_logger.removeHandler(handler)
                handler.close()

    def invoke(self, *args: str):
        return self.runner.invoke(cli, list(args))


class TestMineAndBasis(CliTestCase):
    def test_mine(self) -> None:
        result = self.invoke("mine", EXAMPLE)
        self.assertEqual(result.exit_code, EXIT_OK, result.output)
        self.assertEqual(result.output.splitlines()[0], "{} | 12")

    def test_representative_rules(self) -> None:
        result = self.invoke("basis", "rr", EXAMPLE, "--gamma", "3/4")
        self.assertEqual(result.exit_code, EXIT_OK, result.output)
        self.assertEqual(result.output.splitlines()[0], "# RR 3/4 1")
        self.assertEqual(len(rule_lines(result.output)), 10)

    def test_bstar_with_decimal_gamma(self) -> None:
        result = self.invoke("basis", "bstar", EXAMPLE, "-g", "0.6")
        self.assertEqual(result.exit_code, EXIT_OK, result.output)
        self.assertEqual(len(rule_lines(result.output)), 7)
        self.assertIn("{} -> C ; supp=8 conf=2/3 (0.6667)", result.output)

        hidden = self.invoke(
            "basis", "bstar", EXAMPLE, "-g", "0.6", "--hide-empty-antecedent"
        )
        self.assertEqual(len(rule_lines(hidden.output)), 6)

    def test_double_support(self) -> None:
        result = self.invoke(
            "basis", "bstar", EXAMPLE, "-g", "3/4", "-s", "4", "--double-support"
        )
        self.assertEqual(result.exit_code, EXIT_OK, result.output)
        self.assertEqual(result.output.splitlines()[0], "# Bstar 3/4 4")
        self.assertEqual(
            rule_lines(result.output),
            [
                "D -> C ; supp=5 conf=5/6 (0.8333)",
                "B -> A ; supp=4 conf=4/5 (0.8000)",
                "A -> B ; supp=4 conf=4/5 (0.8000)",
            ],
        )

    def test_implication_bases(self) -> None:
        for kind in ("gd", "iterfree"):
            result = self.invoke("basis", kind, EXAMPLE)
            self.assertEqual(result.exit_code, EXIT_OK, result.output)
            self.assertEqual(len(rule_lines(result.output)), 6)

    def test_output_file(self) -> None:
        with self.runner.isolated_filesystem():
            result = self.invoke("-o", "gd.txt", "basis", "gd", EXAMPLE)
            self.assertEqual(result.exit_code, EXIT_OK, result.output)
            self.assertEqual(result.output, "")
            self.assertIn("A C -> B ; supp=3", Path("gd.txt").read_text())

    def test_bad_thresholds(self) -> None:
        at_one = self.invoke("basis", "bstar", EXAMPLE, "--gamma", "1")
        self.assertEqual(at_one.exit_code, EXIT_INPUT_ERROR)

        unreadable = self.invoke("basis", "rr", EXAMPLE, "--gamma", "three quarters")
        self.assertEqual(unreadable.exit_code, 2)

        missing = self.invoke("basis", "rr", EXAMPLE)
        self.assertEqual(missing.exit_code, EXIT_INPUT_ERROR)

    def test_empty_file(self) -> None:
        with self.runner.isolated_filesystem():
            Path("empty.dat").write_text("")
            result = self.invoke("mine", "empty.dat")
        self.assertEqual(result.exit_code, EXIT_INPUT_ERROR)
        self.assertIn("no transactions", result.output)

    def test_version(self) -> None:
        result = self.invoke("--version")
        self.assertEqual(result.exit_code, EXIT_OK)
        self.assertIn(hooks.app_version, result.output)


class TestRedundancyCommands(CliTestCase):
    def test_plain_check(self) -> None:
        yes = self.invoke("check", "A -> B C", "A B -> C", "--mode", "plain")
        self.assertEqual(yes.exit_code, EXIT_OK, yes.output)
        self.assertEqual(yes.output, "redundant\n")

        no = self.invoke("check", "A -> B", "A C -> B", "--mode", "plain")
        self.assertEqual(no.exit_code, EXIT_NEGATIVE_VERDICT)
        self.assertEqual(no.output, "not redundant\n")

    def test_multi_character_names_without_a_dataset(self) -> None:
        for premise, conclusion in (
            ("milk -> bread", "milk -> dim"),
            ("ab -> c", "ba -> c"),
        ):
            with self.subTest(premise=premise, conclusion=conclusion):
                result = self.invoke("check", premise, conclusion, "--mode", "plain")
                self.assertEqual(result.exit_code, EXIT_NEGATIVE_VERDICT)
                self.assertEqual(result.output, "not redundant\n")

        reduced = self.invoke(
            "check", "milk -> bread dim", "milk -> bread", "--mode", "plain"
        )
        self.assertEqual(reduced.exit_code, EXIT_OK, reduced.output)
        self.assertEqual(reduced.output, "redundant\n")

    def test_closure_check_uses_the_dataset_implications(self) -> None:
        with_data = self.invoke("check", "A -> C", "A -> B C", "-i", EXAMPLE)
        self.assertEqual(with_data.exit_code, EXIT_OK, with_data.output)

        without = self.invoke("check", "A -> C", "A -> B C")
        self.assertEqual(without.exit_code, EXIT_NEGATIVE_VERDICT)

        explicit = self.invoke(
            "check", "A -> C", "A -> B C", "--implication", "A C => B"
        )
        self.assertEqual(explicit.exit_code, EXIT_OK)

    def test_show_trace(self) -> None:
        result = self.invoke(
            "check", "A -> B C", "A B -> C", "--mode", "plain", "--show-trace"
        )
        self.assertEqual(
            result.output.splitlines(),
            [
                "redundant",
                "rA: A -> B C |- A -> A B C",
                "lA: A -> A B C |- A B -> C",
            ],
        )

    def test_trace_replay(self) -> None:
        with self.runner.isolated_filesystem():
            Path("good.txt").write_text(
                "rA: A -> B C |- A -> A B C\nlA: A -> A B C |- A B -> C\n"
            )
            Path("short.txt").write_text("rR: A -> B C |- A -> B\n")

            replay = ("check", "A -> B C", "A B -> C", "--mode", "plain", "--trace")
            good = self.invoke(*replay, "good.txt")
            short = self.invoke(*replay, "short.txt")

        self.assertEqual(good.exit_code, EXIT_OK, good.output)
        self.assertEqual(good.output, "redundant\ntrace: valid\n")
        self.assertEqual(short.exit_code, EXIT_NEGATIVE_VERDICT)
        self.assertEqual(short.output, "redundant\ntrace: invalid\n")

    def test_derive(self) -> None:
        result = self.invoke("derive", "A -> B C", "A B -> C", "--mode", "plain")
        self.assertEqual(result.exit_code, EXIT_OK, result.output)
        self.assertEqual(len(result.output.splitlines()), 2)

        refused = self.invoke("derive", "A -> B", "A C -> B", "--mode", "plain")
        self.assertEqual(refused.exit_code, EXIT_NEGATIVE_VERDICT)

    def test_derive_from_two_premises(self) -> None:
        result = self.invoke(
            "derive", "A -> B C", "A C D -> B", "--second-premise", "A -> B D"
        )
        self.assertEqual(result.exit_code, EXIT_OK, result.output)
        line = result.output.strip()
        self.assertTrue(line.startswith("two_A: A -> B C ; A -> B D ; "))
        self.assertTrue(line.endswith("|- A C D -> B"))

        failing = self.invoke(
            "derive", "A -> B C", "A E -> B", "--second-premise", "A -> B D"
        )
        self.assertEqual(failing.exit_code, EXIT_INPUT_ERROR)
        self.assertIn("condition (v)", failing.output)


class TestEntail2Command(CliTestCase):
    def test_proper_entailment(self) -> None:
        result = self.invoke(
            "entail2", "A -> BC", "A -> BD", "ACD -> B", "--gamma", "1/2"
        )
        self.assertEqual(result.exit_code, EXIT_OK, result.output)
        self.assertEqual(result.output, "holds: yes (seven_conditions)\n")

    def test_counterexample(self) -> None:
        result = self.invoke(
            "entail2", "A -> BC", "A -> BD", "AE -> B", "-g", "1/2", "--counterexample"
        )
        self.assertEqual(result.exit_code, EXIT_NEGATIVE_VERDICT)
        self.assertEqual(
            result.output.splitlines(),
            [
                "holds: no (none)",
                "failed conditions: v",
                "counterexample:",
                "A E",
                "A B C D",
            ],
        )

    def test_below_one_half(self) -> None:
        result = self.invoke(
            "entail2", "A -> BC", "A -> BD", "ACD -> B", "-g", "2/5", "--counterexample"
        )
        self.assertEqual(result.exit_code, EXIT_NEGATIVE_VERDICT)
        self.assertIn("counterexample:", result.output)

    def test_gamma_is_required(self) -> None:
        result = self.invoke("entail2", "A -> BC", "A -> BD", "ACD -> B")
        self.assertEqual(result.exit_code, EXIT_INPUT_ERROR)


class TestReports(CliTestCase):
    def test_sweep(self) -> None:
        result = self.invoke(
            "sweep", EXAMPLE, "--from", "3/4", "--to", "3/5", "--step", "3/20"
        )
        self.assertEqual(result.exit_code, EXIT_OK, result.output)
        header, first, second = result.output.splitlines()
        self.assertEqual(header, "gamma,RR,Bstar,GD,Bstar+GD")
        self.assertEqual(first, "0.7500,10,4,6,10")

        gamma, rr, partial, gd, total = second.split(",")
        self.assertEqual((gamma, partial, gd, total), ("0.6000", "7", "6", "13"))
        self.assertGreaterEqual(int(rr), int(partial))

    def test_sweep_over_the_default_range(self) -> None:
        result = self.invoke("sweep", EXAMPLE)
        self.assertEqual(result.exit_code, EXIT_OK, result.output)
        header, *rows = result.output.splitlines()
        self.assertEqual(header, "gamma,RR,Bstar,GD,Bstar+GD")
        self.assertEqual(len(rows), 49)

        fields = [row.split(",") for row in rows]
        self.assertEqual(
            [gamma for gamma, *_ in fields],
            [f"0.{hundredths}00" for hundredths in range(99, 50, -1)],
        )
        for gamma, rr, partial, gd, total in fields:
            with self.subTest(gamma=gamma):
                self.assertEqual(gd, "6")
                self.assertEqual(int(total), int(partial) + int(gd))
                self.assertGreaterEqual(int(rr), int(partial))
        self.assertIn("0.7500,10,4,6,10", rows)

    def test_basis_sizes_are_not_monotone_in_gamma(self) -> None:
        # closed sets Z < ZA < ZAB < ZABC with supports 10, 9, 8, 7
        chain = "Z A B C\n" * 7 + "Z A B\nZ A\nZ\n"
        with self.runner.isolated_filesystem():
            Path("chain.dat").write_text(chain)
            result = self.invoke(
                "sweep", "chain.dat", "--from", "9/10", "--to", "1/2", "--step", "1/20"
            )
        self.assertEqual(result.exit_code, EXIT_OK, result.output)

        partial = {
            row.split(",")[0]: int(row.split(",")[2])
            for row in result.output.splitlines()[1:]
        }
        self.assertEqual(len(partial), 9)
        self.assertEqual(partial["0.9000"], 1)
        self.assertEqual(partial["0.8500"], 3)
        self.assertEqual(partial["0.5000"], 1)

    def test_sweep_skips_full_confidence(self) -> None:
        cfg = RunConfig(input=SMALL_EXAMPLE_DATASET)
        output = cmd_sweep(cfg, Fraction(1), Fraction(3, 4), Fraction(1, 4)).output
        self.assertEqual(len(output.splitlines()), 2)

    def test_sweep_gammas(self) -> None:
        self.assertEqual(
            sweep_gammas(Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)),
            [Fraction(1, 2), Fraction(3, 8), Fraction(1, 4)],
        )
        self.assertEqual(
            sweep_gammas(Fraction(1, 4), Fraction(1, 2), Fraction(1, 4)),
            [Fraction(1, 4), Fraction(1, 2)],
        )
        with self.assertRaises(ThresholdError):
            sweep_gammas(Fraction(1, 2), Fraction(1, 4), Fraction(0))

    def test_compare(self) -> None:
        d = load_dataset(SMALL_EXAMPLE_DATASET)
        gamma = Fraction(3, 4)
        row = compare_row(d, gamma, 1)
        self.assertEqual(
            row,
            {
                "Traditional": all_rules_count(d, gamma, 1),
                "RRImp": 6,
                "GD": 6,
                "Bstar": 4,
                "Sum": 10,
            },
        )

        output = cmd_compare(RunConfig(input=SMALL_EXAMPLE_DATASET, gamma=gamma)).output
        header, values = output.splitlines()
        self.assertEqual(header.split("\t"), list(row))
        self.assertEqual(values.split("\t")[1:], ["6", "6", "4", "10"])

    def test_compare_command(self) -> None:
        result = self.invoke("compare", EXAMPLE, "-g", "3/4", "--convention", "general")
        self.assertEqual(result.exit_code, EXIT_OK, result.output)
        self.assertEqual(result.output.splitlines()[0].split("\t")[0], "Traditional")


class TestHandlers(unittest.TestCase):
    def test_input_errors_are_reported_briefly(self) -> None:
        with self.assertLogs(LOGGER_NAME, level="ERROR") as logs:
            code = handle_errors(InputError("unknown item 'Q'"), "check")
        self.assertEqual(code, EXIT_INPUT_ERROR)
        self.assertEqual(len(logs.records), 1)
        self.assertIsNone(logs.records[0].exc_info)
        self.assertIn("Command: check", logs.output[0])

    def test_other_errors_keep_their_traceback(self) -> None:
        with self.assertLogs(LOGGER_NAME, level="ERROR") as logs:
            code = handle_errors(InvariantError("lost a rule"), "basis")
        self.assertEqual(code, EXIT_INPUT_ERROR)
        self.assertIsNotNone(logs.records[0].exc_info)
