"""
Validation module for dynirr.
Checks user-supplied parameter ranges, tolerances, budgets and paths and
collects readable errors instead of raising.
"""

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, List, Optional, Sequence

from .config import SCHEMA_VERSION, TOOL_NAME, ArtifactKind, Family, ValidationRules
from .logger import get_logger
from .numtheory import prime_power


@dataclass
class ValidationResult:
    """Result of a validation operation."""
    is_valid: bool
    errors: List[str]
    warnings: List[str]
    sanitized_value: Any = None

    def __bool__(self):
        """Allow using result in boolean context."""
        return self.is_valid


_RANGE = re.compile(r"^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$")
_INT = re.compile(r"^\s*-?\d+\s*$")


class Validator:
    """
    Validator for job parameters.
    """

    def __init__(self, rules: ValidationRules):
        """
        Initialize validator with rules.

        Args:
            rules: ValidationRules instance
        """
        self.rules = rules
        self.logger = get_logger()

    def validate_int_list(
        self, text: str, name: str, minimum: int, maximum: Optional[int] = None
    ) -> ValidationResult:
        """
        Parse "2..5" (inclusive), "2,4,8", "3" or a mix like "2..4,8".

        Args:
            text: Raw parameter string
            name: Parameter name for error messages
            minimum: Smallest admissible value
            maximum: Largest admissible value, if any

        Returns:
            ValidationResult with the sorted, deduplicated values
        """
        self.logger.debug(f"Validating {name}: {text}")

        errors: List[str] = []
        warnings: List[str] = []

        if text is None or not str(text).strip():
            errors.append(f"{name} cannot be empty")
            return ValidationResult(False, errors, warnings)

        values: List[int] = []
        for part in str(text).split(","):
            if not part.strip():
                errors.append(f"{name}: empty item in '{text}'")
                continue
            match = _RANGE.match(part)
            if match:
                lo, hi = int(match.group(1)), int(match.group(2))
                if lo > hi:
                    errors.append(f"{name}: empty range '{part.strip()}'")
                    continue
                values.extend(range(lo, hi + 1))
            elif _INT.match(part):
                values.append(int(part))
            else:
                errors.append(
                    f"{name}: cannot parse '{part.strip()}'. "
                    "Expected an integer, a range like 2..5 or a list like 2,4,8"
                )
        if errors:
            return ValidationResult(False, errors, warnings)

        unique = sorted(set(values))
        if len(unique) < len(values):
            warnings.append(f"{name}: duplicate values removed")
        for v in unique:
            if v < minimum:
                errors.append(f"{name} too low: {v} (minimum: {minimum})")
            elif maximum is not None and v > maximum:
                errors.append(f"{name} too high: {v} (maximum: {maximum})")
        if errors:
            return ValidationResult(False, errors, warnings)

        return ValidationResult(True, errors, warnings, sanitized_value=unique)

    def validate_k_values(self, text: str) -> ValidationResult:
        return self.validate_int_list(text, "k", self.rules.min_k, self.rules.max_k)

    def validate_n_values(self, text: str) -> ValidationResult:
        return self.validate_int_list(text, "n", 1, self.rules.max_n)

    def validate_D_values(self, text: str, require_prime_power: bool = False) -> ValidationResult:
        """
        Validate the list of degrees D.

        Args:
            text: Raw parameter string
            require_prime_power: Reject composite non-prime-power D (survey mode)

        Returns:
            ValidationResult with the sorted degrees
        """
        result = self.validate_int_list(text, "D", self.rules.min_D, self.rules.max_D)
        if not result.is_valid:
            return result
        errors, warnings = [], list(result.warnings)
        for D in result.sanitized_value:
            if prime_power(D) is None:
                if require_prime_power:
                    errors.append(f"D={D} is not a prime power; the survey needs D = p^e")
                else:
                    warnings.append(
                        f"D={D} is not a prime power; mod-p checks are informational "
                        "and certification does not apply"
                    )
        if errors:
            return ValidationResult(False, errors, warnings)
        return ValidationResult(True, errors, warnings, sanitized_value=result.sanitized_value)

    def validate_divisors(
        self, D_values: Sequence[int], d_values: Sequence[int]
    ) -> ValidationResult:
        """Every (D, d) pair must satisfy d >= 2 and d | D."""
        self.logger.debug(f"Validating divisors {list(d_values)} against D={list(D_values)}")

        errors = []
        warnings: List[str] = []
        for d in d_values:
            if d < 2:
                errors.append(f"d must be >= 2, got {d}")
                continue
            for D in D_values:
                if D % d:
                    errors.append(f"d={d} does not divide D={D}")
        if errors:
            return ValidationResult(False, errors, warnings)
        return ValidationResult(True, errors, warnings, sanitized_value=sorted(set(d_values)))

    def validate_tolerance(self, tolerance: float) -> ValidationResult:
        """
        Validate a numeric confirmation tolerance.

        Args:
            tolerance: Relative tolerance of the oracle

        Returns:
            ValidationResult with validation status
        """
        self.logger.debug(f"Validating tolerance: {tolerance}")

        errors: List[str] = []
        warnings: List[str] = []

        if not isinstance(tolerance, (int, float)) or isinstance(tolerance, bool):
            errors.append(f"Tolerance must be a number, got {type(tolerance).__name__}")
            return ValidationResult(False, errors, warnings)

        if not self.rules.min_tolerance <= tolerance <= self.rules.max_tolerance:
            errors.append(
                f"Tolerance {tolerance} outside "
                f"[{self.rules.min_tolerance}, {self.rules.max_tolerance}]"
            )
            return ValidationResult(False, errors, warnings)

        return ValidationResult(True, errors, warnings, sanitized_value=float(tolerance))

    def validate_budget(self, budget: int) -> ValidationResult:
        """Validate a degree budget."""
        self.logger.debug(f"Validating budget: {budget}")

        errors: List[str] = []
        warnings: List[str] = []

        if not isinstance(budget, int) or isinstance(budget, bool):
            errors.append(f"Budget must be an integer, got {type(budget).__name__}")
            return ValidationResult(False, errors, warnings)
        if budget <= 0:
            errors.append(f"Budget must be positive, got {budget}")
            return ValidationResult(False, errors, warnings)
        if budget > self.rules.max_budget:
            errors.append(f"Budget too high: {budget} (maximum: {self.rules.max_budget})")
            return ValidationResult(False, errors, warnings)
        if budget > 20_000:
            warnings.append(f"Large degree budget {budget}: exact constructions may take minutes")

        return ValidationResult(True, errors, warnings, sanitized_value=budget)

    def validate_jobs(self, jobs: int) -> ValidationResult:
        errors: List[str] = []
        if not isinstance(jobs, int) or jobs < 1:
            errors.append(f"jobs must be a positive integer, got {jobs}")
        elif jobs > self.rules.max_jobs:
            errors.append(f"Too many jobs: {jobs} (maximum: {self.rules.max_jobs})")
        if errors:
            return ValidationResult(False, errors, [])
        return ValidationResult(True, [], [], sanitized_value=jobs)

    def validate_artifact_path(self, file_path: str) -> ValidationResult:
        """An existing regular file with a .json suffix."""
        self.logger.debug(f"Validating artifact path: {file_path}")

        if not file_path or not str(file_path).strip():
            return ValidationResult(False, ["File path cannot be empty"], [])
        path = Path(file_path)
        if not path.is_file():
            reason = "does not exist" if not path.exists() else "is not a file"
            return ValidationResult(False, [f"{file_path} {reason}"], [])
        if path.suffix.lower() != ".json":
            return ValidationResult(False, [f"{file_path}: artifacts are .json files, got '{path.suffix}'"], [])
        return ValidationResult(True, [], [], sanitized_value=str(path.absolute()))

    def validate_envelope(self, data: Any, kind: ArtifactKind, body_key: str) -> ValidationResult:
        """
        Check the envelope shared by polynomial, certificate and manifest files.

        A foreign tool name or another schema version is only a warning; a
        wrong kind or a missing body is an error.
        """
        if not isinstance(data, dict):
            return ValidationResult(False, [f"expected a JSON object, got {type(data).__name__}"], [])

        errors: List[str] = []
        warnings: List[str] = []
        if "kind" not in data:
            errors.append("missing 'kind'")
        elif data["kind"] != kind.value:
            errors.append(f"expected a {kind.value} file, found kind {data['kind']!r}")
        if body_key not in data:
            errors.append(f"missing '{body_key}'")
        if data.get("tool", TOOL_NAME) != TOOL_NAME:
            warnings.append(f"written by {data['tool']!r}, not {TOOL_NAME}")
        if data.get("schema", SCHEMA_VERSION) != SCHEMA_VERSION:
            warnings.append(f"schema {data.get('schema')} differs from supported schema {SCHEMA_VERSION}")
        if errors:
            return ValidationResult(False, errors, warnings)
        return ValidationResult(True, errors, warnings, sanitized_value=data)

    def validate_job_spec(self, spec: Any) -> ValidationResult:
        """
        Validate an entire job specification.

        Args:
            spec: JobSpec instance

        Returns:
            ValidationResult with validation status
        """
        self.logger.info("Validating job specification")

        errors: List[str] = []
        warnings: List[str] = []

        def merge(result: ValidationResult):
            errors.extend(result.errors)
            warnings.extend(result.warnings)

        if not spec.survey:
            if not spec.k_values:
                errors.append("at least one k is required")
            for k in spec.k_values:
                if not self.rules.min_k <= k <= self.rules.max_k:
                    errors.append(f"k={k} outside [{self.rules.min_k}, {self.rules.max_k}]")
        if spec.family == Family.UNI:
            if not spec.D_values:
                errors.append("the unicritical family needs at least one D")
            if any(n < 1 for n in spec.n_values):
                errors.append("n must be >= 1")
            if spec.d_values:
                merge(self.validate_divisors(spec.D_values, spec.d_values))
        elif spec.survey:
            errors.append("--survey applies to the unicritical family only")

        merge(self.validate_tolerance(spec.tolerance))
        merge(self.validate_budget(spec.budget))
        merge(self.validate_jobs(spec.jobs))

        output_path = Path(spec.output_directory) if spec.output_directory else None
        if output_path is not None and output_path.exists() and not output_path.is_dir():
            errors.append(f"Output path is not a directory: {spec.output_directory}")

        if errors:
            self.logger.error(f"Job specification invalid with {len(errors)} errors")
            return ValidationResult(False, errors, warnings)

        self.logger.info("Job specification validated successfully")
        if warnings:
            self.logger.warning(f"Job specification has {len(warnings)} warnings")

        return ValidationResult(True, errors, warnings, sanitized_value=spec)
