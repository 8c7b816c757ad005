"""
Test suite for dynirr.
Part 4: polynomials over F_p, irreducibility and power detection.
"""

import unittest
from pathlib import Path
from unittest.mock import patch

from hypothesis import given, settings, strategies as st

import sys
sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from dynirr.fppoly import (
    ModPoly,
    as_power_of,
    frobenius_period_check,
    gcd,
    is_irreducible,
    is_irreducible_bruteforce,
    modexp,
)
from dynirr.errors import (
    ConstantPolynomialError,
    ModulusMismatchError,
    NotPrimeError,
    ZeroPolynomialError,
)


def poly(p, *coeffs):
    return ModPoly(p, tuple(coeffs))


class TestModPolyArithmetic(unittest.TestCase):
    """Test field arithmetic."""

    def test_residues_are_canonical(self):
        f = poly(5, -1, 7, 10)
        self.assertEqual(f.coeffs, (4, 2))
        self.assertEqual(f.degree, 1)

    def test_frobenius_identity(self):
        """(a + 1)^p = a^p + 1 over F_p."""
        for p in (2, 3, 5, 7):
            a = ModPoly.gen(p)
            self.assertEqual((a + 1) ** p, a ** p + 1)

    def test_divmod(self):
        f = poly(7, 3, 0, 5, 1)
        g = poly(7, 2, 1)
        q, r = divmod(f, g)
        self.assertEqual(q * g + r, f)
        self.assertLess(r.degree, g.degree)

    def test_gcd(self):
        """gcd(a^2 + 1, a + 1) over F_2 is a + 1."""
        self.assertEqual(gcd(poly(2, 1, 0, 1), poly(2, 1, 1)), poly(2, 1, 1))
        self.assertEqual(gcd(poly(3, 1, 0, 1), poly(3, 1, 1)), poly(3, 1))

    def test_modexp(self):
        """a^4 mod (a^2 + a + 1) over F_2 is a."""
        a = ModPoly.gen(2)
        self.assertEqual(modexp(a, 4, poly(2, 1, 1, 1)), a)

    def test_modexp_matches_power(self):
        m = poly(5, 2, 0, 3, 1, 1)
        base = poly(5, 1, 4, 2)
        self.assertEqual(modexp(base, 37, m), base ** 37 % m)

    def test_evaluate(self):
        f = poly(7, 1, 0, 1)
        self.assertEqual(f(3), 3)

    def test_errors(self):
        with self.assertRaises(NotPrimeError):
            ModPoly(4, (1, 1))
        with self.assertRaises(ModulusMismatchError):
            poly(2, 1, 1) + poly(3, 1, 1)
        with self.assertRaises(ZeroPolynomialError):
            divmod(poly(3, 1, 1), poly(3, 0))
        with self.assertRaises(ConstantPolynomialError):
            modexp(poly(3, 0, 1), 5, poly(3, 2))


class TestIrreducibility(unittest.TestCase):
    """Test Rabin's criterion."""

    def test_known_cases(self):
        self.assertTrue(is_irreducible(poly(2, 1, 1, 0, 0, 0, 0, 0, 0, 0, 1)))  # 1 + a + a^9
        self.assertTrue(is_irreducible(poly(2, 1, 1, 1)))
        self.assertFalse(is_irreducible(poly(2, 1, 0, 1)))
        self.assertTrue(is_irreducible(poly(3, 1, 0, 1)))
        self.assertFalse(is_irreducible(poly(5, 1, 0, 1)))

    def test_product_of_large_factors(self):
        """A product of two irreducible quintics is reducible."""
        f = poly(2, 1, 0, 1, 0, 0, 1)  # a^5 + a^2 + 1
        g = poly(2, 1, 1, 1, 1, 0, 1)  # a^5 + a^3 + a^2 + a + 1
        self.assertTrue(is_irreducible(f))
        self.assertTrue(is_irreducible(g))
        self.assertFalse(is_irreducible(f * g))

    def test_constant_rejected(self):
        with self.assertRaises(ConstantPolynomialError):
            is_irreducible(poly(3, 2))

    @settings(max_examples=80, deadline=None)
    @given(
        st.sampled_from([2, 3, 5]),
        st.lists(st.integers(0, 4), min_size=1, max_size=6),
    )
    def test_agrees_with_trial_division(self, p, tail):
        f = ModPoly(p, tuple(tail) + (1,))
        self.assertEqual(is_irreducible(f), is_irreducible_bruteforce(f))


class TestPowerDetection(unittest.TestCase):
    """Test A = c * B^N detection and the Frobenius period check."""

    def test_power_found(self):
        B = poly(3, 1, 1, 1)
        match = as_power_of(B ** 4 * 2, B)
        self.assertIsNotNone(match)
        self.assertEqual(match.exponent, 4)
        self.assertEqual(match.scalar, 2)

    def test_not_a_power(self):
        B = poly(3, 1, 0, 1)
        self.assertIsNone(as_power_of(B ** 2 + 1, B))
        self.assertIsNone(as_power_of(poly(3, 1, 1, 1), B * poly(3, 0, 1)))

    def test_divisible_degree_without_power(self):
        """B divides A once and leaves a nonconstant cofactor."""
        B = poly(5, 2, 0, 1)
        self.assertIsNone(as_power_of(B * (B + 1), B))
        self.assertIsNone(as_power_of(B ** 3 * poly(5, 1, 1) ** 2, B))

    def test_power_found_without_flint(self):
        B = poly(7, 3, 1, 1)
        with patch("dynirr.fppoly.WORD_MODULUS_LIMIT", 2):
            match = as_power_of(B ** 5 * 4, B)
            self.assertIsNone(as_power_of(B ** 2 * (B + 1), B))
        self.assertEqual((match.exponent, match.scalar), (5, 4))

    def test_frobenius_period(self):
        """Every root of a^2 + a + 1 over F_2 lies in F_4, so a^(2^2) = a modulo it."""
        f = poly(2, 1, 1, 1)
        self.assertTrue(frobenius_period_check(f, 2, 2))
        self.assertFalse(frobenius_period_check(f, 2, 1))


if __name__ == '__main__':
    unittest.main()
