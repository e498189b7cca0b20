import unittest
from fractions import Fraction

import numpy as np

from qh_covers.Core.exceptions import VerificationError
from qh_covers.Core.linear_algebra import (Span, column_span, inverse, kernel_basis, kernel_basis_blocked, rank,
                                           solve, split_basis, unit_rank)
from qh_covers.Core.ring_arith import CoefficientDomain


class TestKernels(unittest.TestCase):

    def test_unit_rank_reads_the_residue_field_over_local_rings(self):
        z2 = CoefficientDomain.parse("zloc2")
        arr = z2.array([[2, 0], [0, 1]])
        self.assertEqual(rank(z2, arr), 2)
        self.assertEqual(unit_rank(z2, arr), 1)
        f2 = CoefficientDomain.parse("f2")
        self.assertEqual(unit_rank(f2, f2.array([[1, 1], [1, 1]])), 1)

    def test_local_kernel_is_saturated(self):
        z2 = CoefficientDomain.parse("zloc2")
        arr = z2.array([[2, -1]])
        kernel = kernel_basis(z2, arr)
        self.assertEqual(kernel.shape, (2, 1))
        self.assertTrue(z2.contains(kernel))
        self.assertTrue(np.all(z2.matmul(arr, kernel) == 0))
        # saturated: the residue of the basis vector is nonzero
        self.assertTrue(np.any(z2.residue_array(kernel) != 0))

    def test_blocked_kernel_matches_dense(self):
        f3 = CoefficientDomain.parse("f3")
        arr = f3.array([[1, 1, 0, 0], [0, 0, 1, 2]])
        blocked = kernel_basis_blocked(f3, arr)
        self.assertEqual(blocked.shape, (4, 2))
        self.assertEqual(rank(f3, blocked), 2)
        self.assertTrue(np.all(f3.matmul(arr, blocked) == 0))

    def test_empty_system(self):
        q = CoefficientDomain.parse("q")
        self.assertEqual(kernel_basis(q, q.zeros((0, 3))).shape, (3, 3))


class TestSolving(unittest.TestCase):

    def test_inverse_over_local_ring(self):
        z2 = CoefficientDomain.parse("zloc2")
        self.assertIsNone(inverse(z2, z2.array([[2]])))
        self.assertEqual(inverse(z2, z2.array([[3]]))[0, 0], Fraction(1, 3))

    def test_solve_over_f3(self):
        f3 = CoefficientDomain.parse("f3")
        x = solve(f3, f3.array([[1, 1], [0, 1]]), f3.array([2, 1]))
        self.assertEqual(x.reshape(-1).tolist(), [1, 1])
        self.assertIsNone(solve(f3, f3.array([[1], [1]]), f3.array([0, 1])))

    def test_column_span_over_local_ring(self):
        z3 = CoefficientDomain.parse("zloc3")
        gens = z3.array([[3, 6], [0, 0]])
        self.assertEqual(column_span(z3, gens).shape, (2, 1))


class TestSpan(unittest.TestCase):

    def test_coordinates(self):
        q = CoefficientDomain.parse("q")
        span = Span.of(q, q.array([[1, 0], [1, 1], [0, 1]]))
        self.assertEqual(span.dim, 2)
        self.assertEqual(span.coordinates(q.array([2, 5, 3])).tolist(), [2, 3])
        self.assertFalse(span.contains(q.array([1, 0, 0])))

    def test_dependent_columns_raise(self):
        f2 = CoefficientDomain.parse("f2")
        with self.assertRaises(VerificationError):
            Span.of(f2, f2.array([[1, 1], [1, 1]]))

    def test_rational_coordinates_are_rejected_over_local_ring(self):
        z2 = CoefficientDomain.parse("zloc2")
        span = Span.of(z2, z2.array([[2], [0]]))
        with self.assertRaises(VerificationError):
            span.coordinates(z2.array([1, 0]))

    def test_split_basis(self):
        z2 = CoefficientDomain.parse("zloc2")
        t, t_inv = split_basis(z2, z2.array([[1], [2]]))
        self.assertTrue(np.array_equal(z2.matmul(t, t_inv), z2.eye(2)))
        with self.assertRaises(VerificationError):
            split_basis(z2, z2.array([[2], [0]]))


if __name__ == "__main__":
    unittest.main()
