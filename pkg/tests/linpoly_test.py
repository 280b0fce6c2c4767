import unittest

import numpy as np

from rankcode.errors import ParameterError
from rankcode.field import ExtensionField
from rankcode.linalg import rank
from rankcode.linpoly import (
    LinPoly,
    left_divide,
    min_poly,
    product_coefficient,
    q_reverse,
    right_divide,
    root_space_basis,
)


class LinPolyTest(unittest.TestCase):
    def setUp(self):
        self.field = ExtensionField.create(2, 5)
        self.rng = np.random.default_rng(11)

    def random_poly(self, degree):
        coeffs = self.field.random(degree + 1, self.rng)
        while coeffs[-1] == 0:
            coeffs[-1] = self.field.random((), self.rng)
        return LinPoly(self.field, coeffs)

    def test_trailing_zeros_trimmed(self):
        f = LinPoly(self.field, self.field.GF([3, 1, 0, 0]))
        self.assertEqual(f.q_degree, 1)
        self.assertEqual(LinPoly.zero(self.field).q_degree, -1)
        self.assertTrue(LinPoly.zero(self.field).is_zero())

    def test_immutable(self):
        f = LinPoly.identity(self.field)
        with self.assertRaises(AttributeError):
            f.coeffs = None

    def test_evaluation_is_linear(self):
        f = self.random_poly(3)
        a, b = self.field.random(2, self.rng)
        self.assertEqual(f(a + b), f(a) + f(b))
        self.assertEqual(f(self.field.GF(1) * a), f(a))

    def test_monomial_is_frobenius(self):
        x2 = LinPoly.monomial(self.field, 2)
        a = self.field.random((), self.rng)
        self.assertEqual(x2(a), self.field.frob_pow(a, 2))

    def test_symbolic_product_is_composition(self):
        for _ in range(10):
            A, B = self.random_poly(2), self.random_poly(3)
            beta = self.field.random(4, self.rng)
            np.testing.assert_array_equal((A @ B)(beta), A(B(beta)))
            self.assertEqual((A @ B).q_degree, 5)

    def test_symbolic_product_not_commutative(self):
        A = LinPoly(self.field, self.field.GF([0, 1]))
        c = LinPoly(self.field, self.field.basis[1:2])
        self.assertNotEqual(A @ c, c @ A)

    def test_product_coefficient_matches(self):
        A, B = self.random_poly(3), self.random_poly(2)
        P = A @ B
        for ell in range(P.q_degree + 1):
            self.assertEqual(product_coefficient(A, B, ell), P.coefficient(ell))

    def test_q_reverse(self):
        f = self.random_poly(2)
        fbar = q_reverse(f, 3)
        for i in range(4):
            expected = self.field.frob_pow(f.coefficient(3 - i), i - 3)
            self.assertEqual(fbar.coefficient(i), expected)
        self.assertEqual(q_reverse(q_reverse(f, 3), 3), f.twist(-3))
        with self.assertRaises(ParameterError):
            q_reverse(f, 1)

    def test_min_poly_vanishes_on_span(self):
        S = self.field.random_independent(3, self.rng)
        M = min_poly(self.field, S)
        self.assertEqual(M.q_degree, 3)
        self.assertTrue(M.is_monic())
        self.assertFalse(np.any(M(S)))
        self.assertEqual(M(S[0] + S[2]), 0)

    def test_min_poly_of_dependent_set(self):
        S = self.field.random_independent(2, self.rng)
        M = min_poly(self.field, self.field.GF(np.concatenate([S, S[:1] + S[1:]])))
        self.assertEqual(M.q_degree, 2)

    def test_root_space_of_min_poly(self):
        S = self.field.random_independent(3, self.rng)
        roots = root_space_basis(min_poly(self.field, S))
        self.assertEqual(roots.size, 3)
        both = self.field.GF(np.concatenate([S, roots]))
        self.assertEqual(rank(self.field.to_matrix(both)), 3)

    def test_root_space_of_zero_rejected(self):
        with self.assertRaises(ParameterError):
            root_space_basis(LinPoly.zero(self.field))

    def test_right_division(self):
        f, g = self.random_poly(4), self.random_poly(2)
        Q, R = right_divide(f, g)
        self.assertLess(R.q_degree, g.q_degree)
        self.assertEqual(Q @ g + R, f)

    def test_left_division(self):
        f, g = self.random_poly(4), self.random_poly(2)
        Q, R = left_divide(f, g)
        self.assertLess(R.q_degree, g.q_degree)
        self.assertEqual(g @ Q + R, f)

    def test_exact_division(self):
        f, g = self.random_poly(1), self.random_poly(2)
        Q, R = right_divide(f @ g, g)
        self.assertEqual(Q, f)
        self.assertTrue(R.is_zero())

    def test_shift_twist_truncate(self):
        f = self.random_poly(2)
        x3 = LinPoly.monomial(self.field, 3)
        self.assertEqual(f.shift(3), x3 @ f)
        self.assertEqual(f.twist(5), f)
        self.assertLessEqual(f.truncate(1).q_degree, 0)
        self.assertEqual(f.truncate(0), LinPoly.zero(self.field))

    def test_str(self):
        f = LinPoly(self.field, self.field.GF([3, 0, 1]))
        self.assertEqual(str(f), "3·x + 1·x^[2]")
        self.assertEqual(str(LinPoly.zero(self.field)), "0")

    def test_different_fields_rejected(self):
        other = ExtensionField.create(2, 3)
        with self.assertRaises(ParameterError):
            LinPoly.identity(self.field) + LinPoly.identity(other)


if __name__ == "__main__":
    unittest.main()
