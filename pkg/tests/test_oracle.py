"""
Test suite for dynirr.
Part 8: numeric root finding and critical-orbit classification.
"""

import unittest
from pathlib import Path

import numpy as np
from mpmath import mp

import sys
sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from dynirr.config import Family, OracleConfig, Verdict
from dynirr.errors import BudgetExceededError, ConstantPolynomialError, SpecError
from dynirr.oracle import (
    OrbitMap,
    all_roots,
    classify_orbit,
    designated_polynomial,
    omega_check,
    polish_roots,
    validate_family,
    working_digits,
)
from dynirr.zpoly import IntPoly1


def sorted_roots(root_set):
    return sorted(root_set.roots, key=lambda z: (round(z.real, 6), round(z.imag, 6)))


class TestAllRoots(unittest.TestCase):
    """Test the Aberth-Ehrlich root finder."""

    def test_linear(self):
        found = all_roots(IntPoly1((2, 1)))
        self.assertEqual(len(found), 1)
        self.assertAlmostEqual(complex(found.roots[0]), -2)

    def test_quadratic(self):
        found = all_roots(IntPoly1((1, 0, 1)))
        roots = sorted_roots(found)
        self.assertAlmostEqual(complex(roots[0]), -1j, places=10)
        self.assertAlmostEqual(complex(roots[1]), 1j, places=10)
        self.assertTrue(found.all_converged)
        self.assertEqual(found.anomalies, [])

    def test_matches_numpy(self):
        f = IntPoly1((-7, 3, 0, -5, 2, 1))
        found = all_roots(f)
        reference = np.roots(list(reversed(f.coeffs)))
        for z in reference:
            self.assertLess(np.min(np.abs(found.roots - z)), 1e-9)
        self.assertLess(found.vieta_residual(), 1e-12)

    def test_double_root_flagged(self):
        found = all_roots(IntPoly1((1, 2, 1)) * IntPoly1((3, 1)))
        self.assertTrue(any(a.startswith("near_double_root") for a in found.anomalies))

    def test_seed_is_reproducible(self):
        f = IntPoly1((3, 0, 3, 0, 1))
        first = all_roots(f, OracleConfig(seed=7))
        second = all_roots(f, OracleConfig(seed=7))
        np.testing.assert_array_equal(first.roots, second.roots)

    def test_errors(self):
        with self.assertRaises(ConstantPolynomialError):
            all_roots(IntPoly1((5,)))
        with self.assertRaises(BudgetExceededError):
            all_roots(IntPoly1((3, 0, 3, 0, 1)), OracleConfig(max_degree=3))


class TestOrbitClassification(unittest.TestCase):
    """Test critical-orbit classification."""

    def test_unicritical_i(self):
        """At a = i, z -> a z^2 + 1 sends 0 to 1 to 1+i to -1 to 1+i."""
        report = classify_orbit(OrbitMap(Family.UNI, 1j, D=2), claimed=(2, 2))
        self.assertEqual(report.verdict, Verdict.CONFIRMED)
        self.assertEqual((report.preperiod, report.period), (2, 2))
        self.assertTrue(omega_check(OrbitMap(Family.UNI, 1j, D=2), 2, 2, 2, 1e-8))

    def test_negative_control(self):
        """a = -2 lands on a fixed point, so the claim (2, 2) is not confirmed."""
        report = classify_orbit(OrbitMap(Family.UNI, -2, D=2), claimed=(2, 2))
        self.assertEqual(report.verdict, Verdict.UNCONFIRMED)
        self.assertEqual((report.preperiod, report.period), (2, 1))

    def test_escape(self):
        report = classify_orbit(OrbitMap(Family.CUBIC, 3.0))
        self.assertEqual(report.verdict, Verdict.ESCAPED)
        self.assertFalse(report)

    def test_pole(self):
        """G_{a,3} sends 1 to a; a = -1 is a pole."""
        report = classify_orbit(OrbitMap(Family.QUADRAT, -1.0, b=3))
        self.assertEqual(report.verdict, Verdict.POLE)

    def test_landing_above_tolerance_is_a_near_miss(self):
        """a = i + 1e-7 lands on the 2-cycle about 6e-7 off: reported apart from an escape."""
        report = classify_orbit(OrbitMap(Family.UNI, 1j + 1e-7, D=2), max_steps=5, claimed=(2, 2))
        self.assertEqual(report.verdict, Verdict.NEAR_MISS)
        self.assertEqual((report.preperiod, report.period), (2, 2))
        self.assertTrue(1e-8 < report.residual < 1e-4)
        self.assertFalse(report)

    def test_tags(self):
        self.assertEqual(OrbitMap(Family.CUBIC, 0).tag, "cubic-slice")
        self.assertEqual(OrbitMap(Family.QUADRAT, 0).tag, "quadratic-rational-slice")
        self.assertEqual(OrbitMap(Family.QUADRAT, 0, b=3).tag, "quadratic-rational")

    def test_tolerance_range(self):
        with self.assertRaises(SpecError):
            classify_orbit(OrbitMap(Family.UNI, 1j, D=2), tolerance=1e-3)


class TestExtendedPrecision(unittest.TestCase):
    """Test mpmath polishing and orbit replay."""

    # a double-precision root of s_4 whose orbit lands about 5.6e-7 off the fixed point
    ROOT = 0.2532871251872107 + 1.3323317199812157j

    def test_double_orbit_misses(self):
        report = classify_orbit(OrbitMap(Family.CUBIC, self.ROOT), max_steps=5, claimed=(4, 1))
        self.assertEqual(report.verdict, Verdict.NEAR_MISS)

    def test_polished_orbit_is_confirmed(self):
        s4 = designated_polynomial(Family.CUBIC, 4)
        digits = working_digits(s4)
        root = polish_roots(s4, [self.ROOT])[0]
        self.assertLess(abs(complex(root) - self.ROOT), 1e-9)
        report = classify_orbit(OrbitMap(Family.CUBIC, root), max_steps=5, claimed=(4, 1), digits=digits)
        self.assertEqual(report.verdict, Verdict.CONFIRMED)
        self.assertLess(report.residual, 1e-30)

    def test_polishing_sharpens_roots(self):
        f = IntPoly1((-2, 0, 1))
        with mp.workdps(working_digits(f)):
            root = polish_roots(f, [1.41])[0]
            self.assertLess(abs(root - mp.sqrt(2)), mp.mpf(10) ** -50)

    def test_working_digits_grow_with_coefficients(self):
        self.assertEqual(working_digits(IntPoly1((3, 0, 1))), OracleConfig().polish_dps)
        self.assertGreater(working_digits(IntPoly1((10 ** 100, 1))), 100)


class TestFamilyValidation(unittest.TestCase):
    """Test the full oracle on designated polynomials."""

    def test_cubic_s2(self):
        result = validate_family(Family.CUBIC, 2)
        self.assertEqual(result.degree, 4)
        self.assertEqual(result.confirmed, 4)
        self.assertTrue(result.passed, result.to_dict())

    def test_quadrat_r3(self):
        result = validate_family(Family.QUADRAT, 3)
        self.assertEqual(result.confirmed, 3)
        self.assertTrue(result.passed, result.to_dict())

    def test_unicritical(self):
        result = validate_family(Family.UNI, 2, n=2, d=2, D=2)
        self.assertTrue(result.passed, result.to_dict())
        self.assertEqual(result.omega, [True, True])
        self.assertEqual(result.to_dict()["verdict"], "pass")

    def test_cubic_s3(self):
        result = validate_family(Family.CUBIC, 3)
        self.assertEqual(result.degree, 16)
        self.assertTrue(result.passed, result.to_dict())

    def test_cubic_s4(self):
        """All 52 roots of s_4 land on the fixed point once polished and replayed."""
        result = validate_family(Family.CUBIC, 4)
        self.assertEqual(result.degree, 52)
        self.assertEqual(result.confirmed, 52)
        self.assertEqual(result.near_misses, 0)
        self.assertTrue(result.passed, result.to_dict())

    def test_wrong_polynomial_fails(self):
        """Roots of R_{2,1,2} = a + 2 do not have critical orbit type (2, 2)."""
        result = validate_family(Family.UNI, 2, n=2, d=2, D=2, poly=IntPoly1((2, 1)))
        self.assertFalse(result.passed)
        self.assertEqual(len(result.failures()), 1)

    def test_designated_polynomial(self):
        self.assertEqual(designated_polynomial(Family.CUBIC, 2), IntPoly1((3, 0, 3, 0, 1), "b"))
        self.assertEqual(designated_polynomial(Family.QUADRAT, 3), IntPoly1((-2, 0, 2, -1)))
        with self.assertRaises(SpecError):
            designated_polynomial(Family.UNI, 2, n=1)


if __name__ == '__main__':
    unittest.main()
