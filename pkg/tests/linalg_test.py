import itertools
import math
import unittest

import galois
import numpy as np

from rankcode.errors import ParameterError, ShapeError
from rankcode.linalg import (
    Subspace,
    batch_rank,
    errata_matrix,
    gaussian_coefficient,
    left_null_space,
    null_space,
    random_full_rank,
    rank,
    rank_distance,
    rank_stack_bound,
    right_inverse,
    rre,
    singleton_bounds,
    sub_optimality,
    subspace_code_bound,
    subspace_distance,
)

GF2 = galois.GF(2)
GF5 = galois.GF(5)


class EchelonTest(unittest.TestCase):
    def test_rre_and_pivots(self):
        X = GF5([[0, 2, 4], [0, 1, 2], [3, 0, 1]])
        R, pivots = rre(X)
        self.assertEqual(pivots, (0, 1))
        np.testing.assert_array_equal(R, GF5([[1, 0, 2], [0, 1, 2], [0, 0, 0]]))

    def test_empty_matrices(self):
        self.assertEqual(rank(GF2.Zeros((0, 3))), 0)
        self.assertEqual(rank(GF2.Zeros((3, 0))), 0)

    def test_rank_distance_is_a_metric(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            X, Y, Z = (GF2(rng.integers(0, 2, size=(3, 4))) for _ in range(3))
            self.assertEqual(rank_distance(X, X), 0)
            self.assertEqual(rank_distance(X, Y), rank_distance(Y, X))
            self.assertLessEqual(rank_distance(X, Z), rank_distance(X, Y) + rank_distance(Y, Z))

    def test_rank_distance_shape_mismatch(self):
        with self.assertRaises(ShapeError):
            rank_distance(GF2.Zeros((2, 2)), GF2.Zeros((2, 3)))

    def test_null_spaces(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            A = GF5(rng.integers(0, 5, size=(3, 5)))
            K = null_space(A)
            self.assertEqual(K.shape[0], 5 - rank(A))
            self.assertFalse(np.any(A @ K.T))
            W = left_null_space(A)
            self.assertEqual(W.shape[0], 3 - rank(A))
            if W.shape[0]:
                self.assertFalse(np.any(W @ A))

    def test_null_spaces_are_canonical(self):
        rng = np.random.default_rng(12)
        for _ in range(20):
            A = GF5(rng.integers(0, 5, size=(2, 4)))
            K = null_space(A)
            np.testing.assert_array_equal(K, rre(K)[0])
            np.testing.assert_array_equal(K, A.null_space())
            np.testing.assert_array_equal(left_null_space(A.T), K)

    def test_null_space_edge_shapes(self):
        np.testing.assert_array_equal(null_space(GF2.Zeros((0, 3))), GF2.Identity(3))
        self.assertEqual(null_space(GF2.Identity(3)).shape, (0, 3))
        np.testing.assert_array_equal(left_null_space(GF2.Zeros((3, 0))), GF2.Identity(3))
        self.assertEqual(left_null_space(GF2.Identity(3)).shape, (0, 3))

    def test_null_space_over_extension_field(self):
        GF16 = galois.GF(2**4)
        A = GF16([[1, 2, 3], [4, 5, 6]])
        K = null_space(A)
        self.assertFalse(np.any(A @ K.T))

    def test_right_inverse(self):
        rng = np.random.default_rng(3)
        h = random_full_rank(GF5, 3, 5, rng)
        Q = right_inverse(h)
        np.testing.assert_array_equal(h @ Q, GF5.Identity(3))

    def test_right_inverse_needs_full_rank(self):
        with self.assertRaises(ParameterError):
            right_inverse(GF2([[1, 1], [1, 1]]))

    def test_random_full_rank(self):
        rng = np.random.default_rng(4)
        for rows, cols in [(3, 5), (5, 3), (4, 4), (0, 2)]:
            self.assertEqual(rank(random_full_rank(GF2, rows, cols, rng)), min(rows, cols))

    def test_errata_matrix_layout(self):
        L = GF5([[1], [2]])
        e = GF5([[1, 2, 3], [4, 0, 1]])
        E = GF5([[0, 1, 1]])
        M = errata_matrix(L, e, E)
        np.testing.assert_array_equal(
            M, GF5([[1, 1, 2, 3], [2, 4, 0, 1], [0, 0, 1, 1]])
        )


class SubspaceTest(unittest.TestCase):
    def test_span_is_canonical(self):
        X = GF2([[1, 1, 0], [0, 1, 1]])
        Y = GF2([[1, 0, 1], [1, 1, 0]])
        self.assertEqual(Subspace.span(X), Subspace.span(Y))
        self.assertEqual(hash(Subspace.span(X)), hash(Subspace.span(Y)))
        self.assertEqual(Subspace.span(X).dim, 2)

    def test_membership_and_sum(self):
        U = Subspace.span(GF2([[1, 0, 0]]))
        V = Subspace.span(GF2([[0, 1, 0]]))
        self.assertIn(GF2([1, 0, 0]), U)
        self.assertNotIn(GF2([1, 1, 0]), U)
        self.assertIn(GF2([1, 1, 0]), U + V)
        self.assertEqual(U.intersection_dim(V), 0)

    def test_subspace_distance(self):
        U = Subspace.span(GF2([[1, 0, 0], [0, 1, 0]]))
        V = Subspace.span(GF2([[1, 0, 0], [0, 0, 1]]))
        self.assertEqual(subspace_distance(U, U), 0)
        self.assertEqual(subspace_distance(U, V), 2)
        with self.assertRaises(ShapeError):
            subspace_distance(U, Subspace.span(GF2([[1, 0]])))

    def test_rank_stack_bound(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            X = GF2(rng.integers(0, 2, size=(3, 5)))
            Y = GF2(rng.integers(0, 2, size=(3, 5)))
            lhs, rhs = rank_stack_bound(X, Y)
            self.assertLessEqual(lhs, rhs)


class BoundsTest(unittest.TestCase):
    def test_gaussian_coefficient(self):
        self.assertEqual(gaussian_coefficient(4, 2, 2), 35)
        self.assertEqual(gaussian_coefficient(3, 1, 2), 7)
        self.assertEqual(gaussian_coefficient(5, 0, 3), 1)
        with self.assertRaises(ParameterError):
            gaussian_coefficient(2, 3, 2)

    def test_singleton_bounds(self):
        bounds = singleton_bounds(2, 4, 4, 3)
        self.assertEqual(bounds.rank_metric_bound, 2**8)
        self.assertAlmostEqual(bounds.suboptimality_bound, 0.5)

    def test_subspace_bound_below_approximation(self):
        bounds = subspace_code_bound(2, 8, 4, 3)
        self.assertEqual(bounds.singleton, gaussian_coefficient(6, 4, 2))
        self.assertLess(bounds.singleton, bounds.approximation)

    def test_sub_optimality_below_one_percent_for_long_packets(self):
        alpha = sub_optimality(2, 8, 392, 4)
        self.assertGreaterEqual(alpha, 0)
        self.assertLess(alpha, 0.01)
        self.assertLess(alpha, singleton_bounds(2, 8, 392, 5).suboptimality_bound)

    def test_lifted_mrd_code_size_against_subspace_bound(self):
        for n, m, k in [(4, 4, 2), (3, 5, 1), (4, 6, 3)]:
            d = n - k + 1
            bound = subspace_code_bound(2, n + m, n, d).singleton
            self.assertLessEqual(2 ** (m * k), bound)
            self.assertGreater(math.log2(2 ** (m * k)) / math.log2(bound), 0.5)


class BatchRankTest(unittest.TestCase):
    def test_agrees_with_row_reduction(self):
        for q, GF in [(2, GF2), (5, GF5)]:
            rng = np.random.default_rng(q)
            stack = rng.integers(0, q, size=(200, 3, 4))
            expected = [rank(GF(M)) for M in stack]
            np.testing.assert_array_equal(batch_rank(stack, q), expected)

    def test_all_binary_2x2(self):
        stack = np.array(list(itertools.product(range(2), repeat=4))).reshape(-1, 2, 2)
        ranks = batch_rank(stack, 2)
        self.assertEqual(np.bincount(ranks).tolist(), [1, 9, 6])

    def test_needs_three_dimensions(self):
        with self.assertRaises(ShapeError):
            batch_rank(np.zeros((2, 2), dtype=int), 2)


if __name__ == "__main__":
    unittest.main()
