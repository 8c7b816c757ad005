"""
Test suite for dynirr.
Part 2: artifact parsers, JSON codecs and the parser factory.
"""

import unittest
import json
import os
import tempfile
from pathlib import Path

import sys
sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from dynirr.config import ValidationRules, ArtifactKind, Verdict
from dynirr.validator import Validator
from dynirr.parsers import (
    ArtifactParserFactory,
    CertificateFileParser,
    ManifestFileParser,
    PolynomialFileParser,
    decode_json_bytes,
    dump_certificate,
    dump_polynomial,
)
from dynirr.certify import eisenstein_classic
from dynirr.errors import PolynomialParseError
from dynirr.zpoly import IntPoly1, IntPoly2, from_json_dict, to_json_dict
from dynirr.fppoly import ModPoly

from test_core import TestUtilities


class TestPolynomialFileParser(unittest.TestCase):
    """Test polynomial files."""

    def setUp(self):
        """Set up parser."""
        self.parser = PolynomialFileParser(Validator(ValidationRules()))
        self.tmp = tempfile.mkdtemp()

    def test_export_then_import_s2(self):
        """s_2 = b^4 + 3b^2 + 3 survives a file round trip exactly."""
        s2 = IntPoly1((3, 0, 3, 0, 1), "b")
        path = dump_polynomial(s2, Path(self.tmp) / "s2.json", "s_2")

        result = self.parser.parse(str(path))

        self.assertTrue(result.is_valid, result.errors)
        self.assertEqual(result.sanitized_value, s2)
        stored = json.loads(Path(path).read_text())
        self.assertEqual(stored["polynomial"]["coeffs"], ["3", "0", "3", "0", "1"])
        self.assertEqual(stored["label"], "s_2")

    def test_large_coefficients_stay_decimal(self):
        """Coefficients beyond 64 bits are written as decimal strings."""
        big = IntPoly1((2 ** 200 + 1, -(3 ** 150), 1))
        path = dump_polynomial(big, Path(self.tmp) / "big.json")
        result = self.parser.parse(str(path))
        self.assertEqual(result.sanitized_value, big)

    def test_bivariate_and_modular(self):
        """IntPoly2 and ModPoly files decode to the same types."""
        a, b = IntPoly2.gen("a"), IntPoly2.gen("b")
        f = a * 3 + b * 3 - a * b
        path = dump_polynomial(f, Path(self.tmp) / "f.json")
        self.assertEqual(self.parser.parse(str(path)).sanitized_value, f)

        g = ModPoly(2, (1, 1, 0, 0, 0, 0, 0, 0, 0, 1))
        path = dump_polynomial(g, Path(self.tmp) / "g.json")
        self.assertEqual(self.parser.parse(str(path)).sanitized_value, g)

    def test_non_decimal_coefficient(self):
        """A non-decimal coefficient string is a parse error naming its byte offset."""
        data = TestUtilities.polynomial_file([1, 0, 1])
        data["polynomial"]["coeffs"][1] = "0x1f"
        path = TestUtilities.create_temp_json(data)
        try:
            result = self.parser.parse(path)
            self.assertFalse(result.is_valid)
            raw = Path(path).read_bytes()
            offset = raw.find(b'"0x1f"')
            self.assertIn(f"byte offset {offset}", result.errors[0])
        finally:
            os.remove(path)

    def test_invalid_json(self):
        """Broken JSON reports where decoding stopped."""
        path = TestUtilities.create_temp_file('{"kind": "polynomial", "polynomial": {', '.json')
        try:
            result = self.parser.parse(path)
            self.assertFalse(result.is_valid)
            self.assertIn("byte offset", result.errors[0])
        finally:
            os.remove(path)

    def test_wrong_kind(self):
        """A certificate file is not a polynomial file."""
        data = TestUtilities.polynomial_file([1, 1])
        data["kind"] = "certificate"
        path = TestUtilities.create_temp_json(data)
        try:
            result = self.parser.parse(path)
            self.assertFalse(result.is_valid)
        finally:
            os.remove(path)

    def test_missing_file(self):
        result = self.parser.parse("/nonexistent/poly.json")
        self.assertFalse(result.is_valid)


class TestJsonCodec(unittest.TestCase):
    """Test the polynomial JSON codec directly."""

    def test_univariate_form(self):
        f = IntPoly1((2, 2, 2, 1))
        self.assertEqual(to_json_dict(f), {"var": "a", "coeffs": ["2", "2", "2", "1"]})
        self.assertEqual(from_json_dict(to_json_dict(f)), f)

    def test_rejects_bad_exponent(self):
        with self.assertRaises(PolynomialParseError):
            from_json_dict({"vars": ["a", "b"], "terms": [[[-1, 0], "1"]]})

    def test_rejects_numeric_coefficient(self):
        with self.assertRaises(PolynomialParseError):
            from_json_dict({"var": "a", "coeffs": [1, 2]})

    def test_modulus_range(self):
        with self.assertRaises(PolynomialParseError):
            from_json_dict({"p": 3, "var": "a", "coeffs": ["1", "5"]})

    def test_decode_offset_counts_bytes(self):
        """Offsets count UTF-8 bytes, not characters."""
        raw = '{"label": "é", '.encode("utf-8")
        with self.assertRaises(PolynomialParseError) as ctx:
            decode_json_bytes(raw)
        self.assertEqual(ctx.exception.offset, len(raw))


class TestCertificateFileParser(unittest.TestCase):
    """Test certificate files."""

    def setUp(self):
        self.parser = CertificateFileParser(Validator(ValidationRules()))
        self.tmp = tempfile.mkdtemp()

    def test_round_trip(self):
        """A written certificate reads back with the same verdict and witnesses."""
        cert = eisenstein_classic(IntPoly1((3, 0, 3, 0, 1), "b"), 3)
        path = dump_certificate(cert, Path(self.tmp) / "s2.cert.json")

        result = self.parser.parse(str(path))

        self.assertTrue(result.is_valid, result.errors)
        loaded = result.sanitized_value
        self.assertEqual(loaded.verdict, Verdict.IRREDUCIBLE)
        self.assertEqual(loaded.polynomial, cert.polynomial)
        self.assertEqual(loaded.digest, cert.digest)
        self.assertEqual(loaded.hypotheses, cert.hypotheses)

    def test_bad_timestamp(self):
        cert = eisenstein_classic(IntPoly1((2, 0, 1)), 2)
        payload = {"kind": "certificate", "schema": 1, "certificate": cert.to_dict()}
        payload["certificate"]["issued_at"] = "yesterday-ish"
        path = TestUtilities.create_temp_json(payload)
        try:
            self.assertFalse(self.parser.parse(path).is_valid)
        finally:
            os.remove(path)


class TestArtifactParserFactory(unittest.TestCase):
    """Test parser factory."""

    def setUp(self):
        self.validator = Validator(ValidationRules())

    def test_create_parsers(self):
        self.assertIsInstance(
            ArtifactParserFactory.create_parser(ArtifactKind.POLYNOMIAL, self.validator), PolynomialFileParser
        )
        self.assertIsInstance(
            ArtifactParserFactory.create_parser(ArtifactKind.CERTIFICATE, self.validator), CertificateFileParser
        )
        self.assertIsInstance(
            ArtifactParserFactory.create_parser(ArtifactKind.MANIFEST, self.validator), ManifestFileParser
        )

    def test_unsupported_kind(self):
        with self.assertRaises(ValueError):
            ArtifactParserFactory.create_parser("spreadsheet", self.validator)


if __name__ == '__main__':
    unittest.main()
