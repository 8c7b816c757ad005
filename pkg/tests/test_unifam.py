"""
Test suite for dynirr.
Part 6: the unicritical family a z^D + 1.
"""

import unittest
from pathlib import Path

import sympy

import sys
sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from dynirr import unifam
from dynirr.config import Verdict
from dynirr.errors import BudgetExceededError, SpecError
from dynirr.zpoly import IntPoly1, exact_div

A = sympy.Symbol("a")


class TestCriticalOrbit(unittest.TestCase):
    """Test P_n and the Gleason factors R_n."""

    def setUp(self):
        self.ctx = unifam.UnicriticalContext(2)

    def test_first_orbit_polynomials(self):
        self.assertEqual(self.ctx.critical_orbit(1), IntPoly1((1,)))
        self.assertEqual(self.ctx.critical_orbit(2), IntPoly1((1, 1)))
        self.assertEqual(self.ctx.critical_orbit(3), IntPoly1((1, 1, 2, 1)))

    def test_R4_is_P4_over_P2(self):
        P4, P2 = self.ctx.critical_orbit(4), self.ctx.critical_orbit(2)
        self.assertEqual(self.ctx.gleason_factor(4), exact_div(P4, P2))

    def test_gleason_discriminant(self):
        report = unifam.check_gleason(self.ctx, 3)
        self.assertTrue(report.passed)
        self.assertEqual(report.get("discriminant").details["value"], "-23")

    def test_poonen(self):
        self.assertTrue(unifam.check_poonen(self.ctx, 2, 3))
        self.assertTrue(unifam.check_poonen_congruence(self.ctx, 2, 1))

    def test_budget(self):
        ctx = unifam.UnicriticalContext(2, max_degree=5)
        with self.assertRaises(BudgetExceededError):
            ctx.critical_orbit(5)

    def test_invalid_degree(self):
        with self.assertRaises(SpecError):
            unifam.UnicriticalContext(1)


class TestCyclotomic(unittest.TestCase):
    """Test cyclotomic polynomials against sympy."""

    def test_matches_sympy(self):
        for d in range(1, 31):
            with self.subTest(d=d):
                expected = sympy.Poly(sympy.cyclotomic_poly(d, A), A).all_coeffs()
                got = unifam.cyclotomic_univariate(d)
                self.assertEqual(list(reversed(got.coeffs)), [int(c) for c in expected])

    def test_homogenized(self):
        phi = unifam.cyclotomic(3)
        self.assertEqual(phi.vars, ("X", "Y"))
        self.assertTrue(phi.is_homogeneous())
        self.assertEqual(phi.total_degree, 2)


class TestPreperiodicFactors(unittest.TestCase):
    """Test R_{k,n,d} and R_{k,n}."""

    def test_R222(self):
        """R_{2,2,2} = a^2 + 1 for D = 2."""
        ctx = unifam.UnicriticalContext(2)
        self.assertEqual(ctx.preperiodic_factor(2, 2, 2).poly, IntPoly1((1, 0, 1)))

    def test_R312(self):
        """R_{3,1,2} = a^3 + 2a^2 + 2a + 2 for D = 2."""
        ctx = unifam.UnicriticalContext(2)
        self.assertEqual(ctx.preperiodic_factor(3, 1, 2).poly, IntPoly1((2, 2, 2, 1)))

    def test_aggregate_D3(self):
        """P_{2,1} = a^2 + 3a + 3 for D = 3."""
        ctx = unifam.UnicriticalContext(3)
        agg = ctx.aggregate_factor(2, 1)
        self.assertEqual(agg.full, IntPoly1((3, 3, 1)))
        self.assertEqual(agg.label, "R_{2,1,all}")

    def test_identities(self):
        for D, k, n in ((2, 2, 2), (2, 3, 1), (3, 2, 2), (4, 2, 1), (6, 2, 1)):
            with self.subTest(D=D, k=k, n=n):
                report = unifam.check_identities(unifam.UnicriticalContext(D), k, n)
                self.assertTrue(report.passed, [c.name for c in report.failures()])

    def test_multiplicity(self):
        self.assertTrue(unifam.check_multiplicity(unifam.UnicriticalContext(2), 2, 2, 2))
        self.assertTrue(unifam.check_multiplicity(unifam.UnicriticalContext(3), 3, 2, 3))

    def test_d_must_divide_D(self):
        with self.assertRaises(SpecError):
            unifam.UnicriticalContext(2).preperiodic_factor(2, 1, 3)

    def test_resultant_lemma(self):
        ctx = unifam.UnicriticalContext(2)
        same = unifam.check_resultant_lemma(ctx, 2, 2, 2, 2)
        self.assertEqual(same.verdict, Verdict.PASS)
        self.assertEqual(abs(same.value), 2)
        self.assertEqual(same.shape, "p^deg(R_n)")
        other = unifam.check_resultant_lemma(ctx, 2, 2, 2, 3)
        self.assertEqual(other.verdict, Verdict.PASS)
        self.assertEqual(other.expected_abs, 1)


class TestModP(unittest.TestCase):
    """Test congruences modulo p for D = p^e."""

    def test_power_structure(self):
        for D, k, n, d in ((2, 3, 1, 2), (3, 2, 1, 3), (2, 2, 2, 2), (4, 2, 1, 2)):
            with self.subTest(D=D, k=k, n=n, d=d):
                report = unifam.check_modp_power(unifam.UnicriticalContext(D), k, n, d)
                self.assertTrue(report.passed, report.to_dict())

    def test_M_exponent(self):
        ctx = unifam.UnicriticalContext(2)
        report = unifam.check_modp_power(ctx, 3, 1, 2)
        self.assertEqual(report.get("aggregate.exponent").details["exponent"], 3)

    def test_closed_forms(self):
        ctx = unifam.UnicriticalContext(2)
        self.assertTrue(unifam.check_modp_closed_form(ctx, 3))
        self.assertTrue(unifam.check_aggregate_modp(ctx, 3, 1))
        self.assertTrue(unifam.check_orbit_difference(ctx, 2))

    def test_composite_degree_is_informational(self):
        report = unifam.check_modp_power(unifam.UnicriticalContext(6), 2, 1, 2)
        self.assertTrue(report.passed)
        self.assertTrue(all(c.verdict == Verdict.INFO for c in report.checks))
        with self.assertRaises(SpecError):
            unifam.check_modp_closed_form(unifam.UnicriticalContext(6), 2)


class TestSpecialCases(unittest.TestCase):
    """Test closed forms and the F_p survey."""

    def test_special_cases(self):
        for D in (2, 3, 4, 6):
            with self.subTest(D=D):
                report = unifam.special_cases_check(unifam.UnicriticalContext(D))
                self.assertTrue(report.passed, [c.name for c in report.failures()])

    def test_closed_forms_need_even_D(self):
        with self.assertRaises(SpecError):
            unifam.special_closed_forms(3)

    def test_r3_cyclotomic_factor(self):
        for D in (2, 3, 7):
            with self.subTest(D=D):
                result = unifam.check_r3_cyclotomic_factor(D)
                self.assertEqual(result.verdict, Verdict.PASS)
                self.assertEqual(result.details["divides"], D == 7)

    def test_survey(self):
        table = unifam.fp_survey([2, 3, 4], 3)
        self.assertTrue(table.passed, table.to_dict())
        self.assertTrue(table.row(2, 3).irreducible)
        self.assertFalse(table.row(3, 3).irreducible)
        self.assertFalse(table.row(4, 3).irreducible)

    def test_survey_rejects_composite(self):
        with self.assertRaises(SpecError):
            unifam.fp_survey([6], 3)


if __name__ == '__main__':
    unittest.main()
