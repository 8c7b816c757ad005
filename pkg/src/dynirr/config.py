"""
Configuration module for dynirr.
Contains enumerations, budgets, tolerances and other settings shared by the
family builders, the certifiers, the numeric oracle and the CLI.
"""

from enum import Enum
from typing import Dict, List, Optional
from dataclasses import dataclass, field
import os

from .logger import get_logger


class Family(str, Enum):
    """Polynomial families handled by the tool."""
    CUBIC = "cubic"      # z^3 - 3a^2 z + 2a^3 + b
    QUADRAT = "quadrat"  # a z (b - z) / (1 + (b - 2) z)
    UNI = "uni"          # a z^D + 1


class CheckKind(str, Enum):
    """Check suites a job can request."""
    STRUCTURE = "structure"
    EISENSTEIN = "eisenstein"
    IDENTITY = "identity"
    RESULTANT = "resultant"
    MODP = "modp"
    GLEASON = "gleason"
    SPECIAL = "special"
    SURVEY = "survey"
    ORACLE = "oracle"
    ALL = "all"


class Verdict(str, Enum):
    """Outcome of a single check or certificate."""
    PASS = "pass"
    FAIL = "fail"
    INFO = "info"  # computed, nothing asserted
    IRREDUCIBLE = "irreducible"
    INCONCLUSIVE = "inconclusive"
    OUT_OF_HYPOTHESES = "out-of-hypotheses"
    CONFIRMED = "confirmed"
    ESCAPED = "escaped"
    POLE = "pole"
    UNCONFIRMED = "unconfirmed"
    NEAR_MISS = "near-miss"  # landed within near_miss_tolerance but above tolerance


class EmitFormat(str, Enum):
    """Console summary formats."""
    JSON = "json"
    TEXT = "text"


class ArtifactKind(str, Enum):
    """Files the tool reads and writes."""
    POLYNOMIAL = "polynomial"
    CERTIFICATE = "certificate"
    MANIFEST = "manifest"


DEFAULT_BUDGET = 5000


def _budget_from_env() -> int:
    raw = os.environ.get("DYNIRR_BUDGET")
    if raw is None or not raw.strip():
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError:
        get_logger().warning(
            f"Ignoring DYNIRR_BUDGET={raw!r}: not an integer; using {DEFAULT_BUDGET}",
            extra={"variable": "DYNIRR_BUDGET", "value": raw},
        )
        return DEFAULT_BUDGET


@dataclass
class BudgetConfig:
    """Degree budgets for exact constructions."""
    max_degree: int = field(default_factory=_budget_from_env)
    sylvester_max_degree: int = 8
    flint_threshold: int = 256  # len(f) * len(g) above which products go to fmpz_poly


@dataclass
class OracleConfig:
    """Numeric oracle settings."""
    tolerance: float = 1e-8
    root_tolerance: float = 1e-10
    max_iterations: int = 500
    max_degree: int = 2000
    max_steps: int = 64
    newton_polish_steps: int = 3
    double_root_ratio: float = 1e-6
    escape_radius: float = 1e12
    seed: int = 0  # perturbation of the initial circle
    polish_dps: int = 60  # decimal digits for mpmath polishing and orbit replay
    polish_steps: int = 8
    near_miss_tolerance: float = 1e-4


@dataclass
class ValidationRules:
    """Validation rules for job specifications."""
    min_k: int = 2
    max_k: int = 12
    min_D: int = 2
    max_D: int = 64
    max_n: int = 8
    max_jobs: int = 64
    min_tolerance: float = 1e-12
    max_tolerance: float = 1e-6
    max_budget: int = 200_000


@dataclass
class LoggingConfig:
    """Logging configuration."""
    level: str = "INFO"  # DEBUG, INFO, WARNING, ERROR, CRITICAL
    file_path: Optional[str] = None
    console_output: bool = True
    json_format: bool = False


@dataclass
class DynirrConfig:
    """Main configuration class."""

    budget: BudgetConfig = field(default_factory=BudgetConfig)
    oracle: OracleConfig = field(default_factory=OracleConfig)
    validation: ValidationRules = field(default_factory=ValidationRules)
    logging: LoggingConfig = field(default_factory=LoggingConfig)

    # Output configuration
    output_directory: str = "out"
    emit: EmitFormat = EmitFormat.TEXT
    jobs: int = 1


# Default configuration instance
DEFAULT_CONFIG = DynirrConfig()

SCHEMA_VERSION = 1
TOOL_NAME = "dynirr"

# Checks expanded by "all", per family
CHECK_ALIASES: Dict[Family, List[CheckKind]] = {
    Family.CUBIC: [CheckKind.STRUCTURE, CheckKind.EISENSTEIN, CheckKind.ORACLE],
    Family.QUADRAT: [CheckKind.STRUCTURE, CheckKind.EISENSTEIN, CheckKind.ORACLE],
    Family.UNI: [
        CheckKind.IDENTITY,
        CheckKind.RESULTANT,
        CheckKind.MODP,
        CheckKind.EISENSTEIN,
        CheckKind.GLEASON,
        CheckKind.SPECIAL,
        CheckKind.ORACLE,
    ],
}

# Degrees the F_p survey runs on when none are given
DEFAULT_SURVEY_DEGREES = [2, 3, 4, 8, 9, 16, 27]

# Prime-power degrees whose R_3 mod p is irreducible (n >= 3 classification)
IRREDUCIBLE_R3_DEGREES = (2, 8)
