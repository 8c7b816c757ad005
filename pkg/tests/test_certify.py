"""
Test suite for dynirr.
Part 7: Eisenstein certificates and the certification pipeline.
"""

import unittest
from dataclasses import replace
from pathlib import Path

import sys
sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from dynirr.certify import (
    EisensteinCertificate,
    eisenstein_classic,
    eisenstein_general,
    eisenstein_shifted,
    origin_criterion_hypotheses,
    polynomial_digest,
    theorem_pipeline,
    verify_certificate,
)
from dynirr.config import Verdict
from dynirr.errors import ConstantPolynomialError, NonMonicError, NotPrimeError, SpecError
from dynirr.unifam import UnicriticalContext
from dynirr.zpoly import IntPoly1, IntPoly2


class TestClassicCriterion(unittest.TestCase):
    """Test the classic and shifted criteria."""

    def test_irreducible(self):
        cert = eisenstein_classic(IntPoly1((2, 2, 2, 1)), 2)
        self.assertTrue(cert.is_irreducible)
        self.assertIsNone(cert.failed)
        self.assertTrue(all(cert.hypotheses.values()))

    def test_inconclusive_is_not_reducible(self):
        """a^2 + 1 fails at 2; the verdict is inconclusive, never reducible."""
        cert = eisenstein_classic(IntPoly1((1, 0, 1)), 2)
        self.assertEqual(cert.verdict, Verdict.INCONCLUSIVE)
        self.assertEqual(cert.failed, "lower_coefficients_divisible")

    def test_shifted(self):
        """(a - 1)^2 + 1 = a^2 - 2a + 2 is Eisenstein at 2."""
        cert = eisenstein_shifted(IntPoly1((1, 0, 1)), 2, -1)
        self.assertTrue(cert.is_irreducible)
        self.assertEqual(cert.shift, -1)
        self.assertEqual(cert.polynomial, IntPoly1((1, 0, 1)))

    def test_errors(self):
        with self.assertRaises(NotPrimeError):
            eisenstein_classic(IntPoly1((2, 1)), 4)
        with self.assertRaises(ConstantPolynomialError):
            eisenstein_classic(IntPoly1((6,)), 2)


class TestGeneralizedCriterion(unittest.TestCase):
    """Test A = B^N mod p with the resultant bound."""

    def test_R222(self):
        A, B = IntPoly1((1, 0, 1)), IntPoly1((1, 1))
        cert = eisenstein_general(A, B, 2)
        self.assertTrue(cert.is_irreducible)
        self.assertEqual(cert.exponent, 2)
        self.assertEqual(cert.resultant, 2)
        self.assertEqual(cert.valuation, 1)
        self.assertEqual(cert.bound, 4)
        self.assertTrue(cert.fp_transcript["irreducible"])

    def test_not_a_power(self):
        A, B = IntPoly1((1, 1, 1)), IntPoly1((1, 1))
        cert = eisenstein_general(A, B, 2)
        self.assertEqual(cert.verdict, Verdict.INCONCLUSIVE)
        self.assertEqual(cert.failed, "power_mod_p")

    def test_non_monic(self):
        with self.assertRaises(NonMonicError):
            eisenstein_general(IntPoly1((1, 2)), IntPoly1((0, 1)), 2)


class TestCertificateVerification(unittest.TestCase):
    """Test re-verification of stored certificates."""

    def test_round_trip(self):
        for cert in (
            eisenstein_classic(IntPoly1((3, 0, 3, 0, 1), "b"), 3),
            eisenstein_shifted(IntPoly1((1, 0, 1)), 2, -1),
            eisenstein_general(IntPoly1((1, 0, 1)), IntPoly1((1, 1)), 2),
        ):
            with self.subTest(variant=cert.variant):
                loaded = EisensteinCertificate.from_dict(cert.to_dict())
                self.assertTrue(verify_certificate(loaded))

    def test_tampered_digest(self):
        cert = eisenstein_classic(IntPoly1((2, 0, 1)), 2)
        self.assertFalse(verify_certificate(replace(cert, digest="0" * 64)))

    def test_tampered_polynomial(self):
        cert = eisenstein_classic(IntPoly1((2, 0, 1)), 2)
        other = IntPoly1((4, 0, 1))
        forged = replace(cert, polynomial=other, digest=polynomial_digest(other))
        self.assertFalse(verify_certificate(forged))

    def test_tampered_witness(self):
        cert = eisenstein_general(IntPoly1((1, 0, 1)), IntPoly1((1, 1)), 2)
        self.assertFalse(verify_certificate(replace(cert, resultant=4)))

    def test_large_values_serialize_as_strings(self):
        cert = eisenstein_general(IntPoly1((1, 0, 1)), IntPoly1((1, 1)), 2)
        data = cert.to_dict()
        self.assertEqual(data["resultant"], "2")
        self.assertEqual(data["bound"], "4")


class TestOriginCriterion(unittest.TestCase):

    def test_hypotheses(self):
        a, b = IntPoly2.gen("a"), IntPoly2.gen("b")
        self.assertEqual(origin_criterion_hypotheses(a * 3 + b * 3 + a * b).verdict, Verdict.PASS)
        self.assertEqual(origin_criterion_hypotheses(a * b + 1).verdict, Verdict.FAIL)
        self.assertEqual(origin_criterion_hypotheses(a * b).verdict, Verdict.FAIL)


class TestTheoremPipeline(unittest.TestCase):
    """Test end-to-end certification of R_{k,n,d}."""

    def test_certified_instances(self):
        for D, k, n, d in ((2, 2, 2, 2), (2, 3, 1, 2), (3, 2, 1, 3), (4, 2, 2, 4), (2, 3, 2, 2)):
            with self.subTest(D=D, k=k, n=n, d=d):
                bundle = theorem_pipeline(D, k, n, d)
                self.assertEqual(bundle.verdict, Verdict.IRREDUCIBLE, bundle.to_dict())
                self.assertTrue(verify_certificate(bundle.certificate))

    def test_out_of_hypotheses(self):
        """R_3 mod 3 is reducible for D = 3, so no verdict is claimed."""
        bundle = theorem_pipeline(3, 2, 3, 3)
        self.assertEqual(bundle.verdict, Verdict.OUT_OF_HYPOTHESES)
        self.assertIsNone(bundle.certificate)

    def test_shared_context(self):
        ctx = UnicriticalContext(2)
        theorem_pipeline(2, 2, 2, 2, ctx)
        self.assertIn((2, 2, 2), ctx._Rkd)

    def test_composite_degree(self):
        with self.assertRaises(SpecError):
            theorem_pipeline(6, 2, 1, 2)


if __name__ == '__main__':
    unittest.main()
