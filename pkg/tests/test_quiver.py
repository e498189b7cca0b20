import unittest

from qh_covers.Core.algebra import check_peirce, verify_algebra
from qh_covers.Core.exceptions import InvalidInputError
from qh_covers.Core.quiver import quiver_algebra, two_vertex_quiver_fixture, vertex_idempotent
from qh_covers.Core.ring_arith import CoefficientDomain

F3 = CoefficientDomain.parse("f3")


class TestQuiverAlgebra(unittest.TestCase):

    def test_two_vertex_fixture(self):
        a = two_vertex_quiver_fixture(F3)
        self.assertEqual(a.rank, 5)
        self.assertEqual(set(a.labels), {"e1", "e2", "alpha", "beta", "beta*alpha"})
        self.assertEqual(len(a.peirce), 2)
        check_peirce(a)
        verify_algebra(a)

    def test_products_follow_paths(self):
        a = two_vertex_quiver_fixture(F3)
        alpha = a.basis_element(a.labels.index("alpha"))
        beta = a.basis_element(a.labels.index("beta"))
        beta_alpha = a.basis_element(a.labels.index("beta*alpha"))
        self.assertEqual(list(a.multiply(beta, alpha)), list(beta_alpha))
        self.assertFalse(any(a.multiply(alpha, beta)))
        self.assertFalse(any(a.multiply(alpha, alpha)))

    def test_path_algebra_without_relations(self):
        a = quiver_algebra(("1", "2", "3"), (("x", "1", "2"), ("y", "2", "3")), (), F3, "A3")
        # e1, e2, e3, x, y, y*x
        self.assertEqual(a.rank, 6)
        self.assertIn("y*x", a.labels)

    def test_invalid_quivers(self):
        with self.assertRaises(InvalidInputError):
            quiver_algebra(("1", "1"), (), (), F3)
        with self.assertRaises(InvalidInputError):
            quiver_algebra(("1",), (("x", "1", "2"),), (), F3)
        with self.assertRaises(InvalidInputError):
            quiver_algebra(("1", "2"), (("x", "1", "2"),), (("z",),), F3)

    def test_vertex_idempotent(self):
        a = two_vertex_quiver_fixture(F3)
        e1 = vertex_idempotent(a, "1")
        self.assertTrue(a.is_idempotent(e1))
        with self.assertRaises(InvalidInputError):
            vertex_idempotent(a, "7")


if __name__ == "__main__":
    unittest.main()
