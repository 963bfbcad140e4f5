"""Maps tunable bounds, file tokens and names used across the app to variable names"""

from pathlib import Path
from typing import Final

# Logging
LOGGER_NAME: Final[str] = "rule_bases"
LOG_FILE_COUNT: Final[int] = 50
LOG_FILE_MAX_BYTES: Final[int] = 5 * 1024 * 1024

# Input formats
FIMI_FORMAT: Final[str] = "FIMI"

# Rendering
EMPTY_ITEMSET_TOKEN: Final[str] = "{}"
RULE_ARROW: Final[str] = "->"
IMPLICATION_ARROW: Final[str] = "=>"
TRACE_TURNSTILE: Final[str] = "|-"
PREMISE_SEPARATOR: Final[str] = ";"
LATTICE_SEPARATOR: Final[str] = "|"
SWEEP_CSV_HEADER: Final[tuple[str, ...]] = ("gamma", "RR", "Bstar", "GD", "Bstar+GD")
COMPARE_COLUMNS: Final[tuple[str, ...]] = ("Traditional", "RRImp", "GD", "Bstar", "Sum")

# Oracle and verifier bounds
PLAIN_ORACLE_BOUND: Final[int] = 20
CLOSURE_ORACLE_BOUND: Final[int] = 20
ENTAILMENT_ORACLE_BOUND: Final[int] = 30
EXHAUSTIVE_UNIVERSE_LIMIT: Final[int] = 8
MINIMALITY_POOL_LIMIT: Final[int] = 4096

# Two-premise conditions, in the order they are checked
ENTAILMENT_CONDITIONS: Final[tuple[str, ...]] = (
    "i",
    "ii",
    "iii",
    "iv",
    "v",
    "vi",
    "vii",
)

# Exit codes
EXIT_OK: Final[int] = 0
EXIT_NEGATIVE_VERDICT: Final[int] = 1
EXIT_INPUT_ERROR: Final[int] = 2

# Bundled data
FIXTURES_DIRECTORY: Final[Path] = Path(__file__).resolve().parent.parent / "fixtures"
SMALL_EXAMPLE_DATASET: Final[Path] = FIXTURES_DIRECTORY / "small_example.dat"
