"""
Readers and writers for the JSON artifacts: polynomials, certificates and
run manifests. Malformed files are reported with the byte offset of the
offending token.
"""

import json
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

from .config import SCHEMA_VERSION, TOOL_NAME, ArtifactKind
from .errors import PolynomialParseError
from .fppoly import ModPoly
from .logger import get_logger
from .validator import ValidationResult, Validator
from .zpoly import IntPoly1, IntPoly2, from_json_dict, to_json_dict

Polynomial = Union[IntPoly1, IntPoly2, ModPoly]


def _byte_offset(raw: bytes, token: Any) -> Optional[int]:
    """Byte offset of the first occurrence of token's JSON spelling in raw."""
    if token is None:
        return None
    needle = json.dumps(token).encode("utf-8")
    pos = raw.find(needle)
    return pos if pos >= 0 else None


def _locate(exc: PolynomialParseError, raw: bytes) -> PolynomialParseError:
    if exc.offset is not None:
        return exc
    offset = _byte_offset(raw, exc.token)
    if offset is None:
        return exc
    return PolynomialParseError(str(exc), offset=offset, token=exc.token)


def decode_json_bytes(raw: bytes) -> Any:
    """json.loads with decode errors turned into PolynomialParseError carrying a byte offset."""
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise PolynomialParseError("file is not UTF-8", offset=exc.start) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        offset = len(text[: exc.pos].encode("utf-8"))
        raise PolynomialParseError(f"invalid JSON: {exc.msg}", offset=offset) from None


def _envelope(kind: ArtifactKind, body_key: str, body: Dict[str, Any], label: Optional[str]) -> Dict[str, Any]:
    out: Dict[str, Any] = {"schema": SCHEMA_VERSION, "tool": TOOL_NAME, "kind": kind.value}
    if label:
        out["label"] = label
    out[body_key] = body
    return out


def write_json(path: Union[str, Path], payload: Dict[str, Any]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def dump_polynomial(f: Polynomial, path: Union[str, Path], label: Optional[str] = None) -> Path:
    """Write a polynomial file; coefficients are decimal strings."""
    written = write_json(path, _envelope(ArtifactKind.POLYNOMIAL, "polynomial", to_json_dict(f), label))
    get_logger().debug(f"Wrote polynomial to {written}", extra={"label": label})
    return written


def dump_certificate(cert, path: Union[str, Path], label: Optional[str] = None) -> Path:
    """Write an EisensteinCertificate file."""
    written = write_json(path, _envelope(ArtifactKind.CERTIFICATE, "certificate", cert.to_dict(), label))
    get_logger().debug(f"Wrote certificate to {written}", extra={"label": label})
    return written


class ArtifactParser(ABC):
    """Base class for artifact parsers."""

    kind: ArtifactKind
    body_key: str

    def __init__(self, validator: Validator):
        """
        Initialize parser.

        Args:
            validator: Validator instance
        """
        self.validator = validator
        self.logger = get_logger()

    def _load(self, file_path: str) -> Tuple[Optional[bytes], Any, ValidationResult]:
        path_result = self.validator.validate_artifact_path(file_path)
        if not path_result.is_valid:
            return None, None, path_result
        try:
            raw = Path(file_path).read_bytes()
        except OSError as e:
            error_msg = f"Error reading file: {e}"
            self.logger.error(error_msg)
            return None, None, ValidationResult(False, [error_msg], [])
        try:
            data = decode_json_bytes(raw)
        except PolynomialParseError as e:
            self.logger.error(f"Invalid JSON file {file_path}: {e}")
            return raw, None, ValidationResult(False, [str(e)], [])
        return raw, data, self.validator.validate_envelope(data, self.kind, self.body_key)

    def parse(self, file_path: str) -> ValidationResult:
        """
        Parse an artifact file.

        Args:
            file_path: Path to JSON file

        Returns:
            ValidationResult with the decoded object
        """
        self.logger.log_operation_start(f"parse_{self.kind.value}", {"file": file_path})
        raw, data, result = self._load(file_path)
        if not result.is_valid:
            self.logger.log_operation_end(f"parse_{self.kind.value}", False)
            return result
        try:
            value = self._decode(data[self.body_key])
        except PolynomialParseError as e:
            located = _locate(e, raw)
            self.logger.error(f"Malformed {self.kind.value} in {file_path}: {located}")
            self.logger.log_operation_end(f"parse_{self.kind.value}", False)
            return ValidationResult(False, [str(located)], result.warnings)
        self.logger.log_operation_end(f"parse_{self.kind.value}", True)
        return ValidationResult(True, [], result.warnings, sanitized_value=value)

    @abstractmethod
    def _decode(self, body: Any) -> Any:
        pass


class PolynomialFileParser(ArtifactParser):
    """Parser for polynomial files."""

    kind = ArtifactKind.POLYNOMIAL
    body_key = "polynomial"

    def _decode(self, body: Any) -> Polynomial:
        return from_json_dict(body)


class CertificateFileParser(ArtifactParser):
    """Parser for certificate files."""

    kind = ArtifactKind.CERTIFICATE
    body_key = "certificate"

    def _decode(self, body: Any):
        from .certify import EisensteinCertificate

        return EisensteinCertificate.from_dict(body)


class ManifestFileParser(ArtifactParser):
    """Parser for run manifests; the body is returned as loaded."""

    kind = ArtifactKind.MANIFEST
    body_key = "results"

    def _decode(self, body: Any) -> Any:
        if not isinstance(body, list):
            raise PolynomialParseError("'results' must be a list")
        return body


class ArtifactParserFactory:
    """Factory for creating artifact parsers."""

    @staticmethod
    def create_parser(kind: ArtifactKind, validator: Validator) -> ArtifactParser:
        """
        Create appropriate parser for an artifact kind.

        Args:
            kind: Kind of artifact
            validator: Validator instance

        Returns:
            ArtifactParser instance
        """
        parsers = {
            ArtifactKind.POLYNOMIAL: PolynomialFileParser,
            ArtifactKind.CERTIFICATE: CertificateFileParser,
            ArtifactKind.MANIFEST: ManifestFileParser,
        }

        parser_class = parsers.get(kind)
        if not parser_class:
            raise ValueError(f"Unsupported artifact kind: {kind}")

        return parser_class(validator)
