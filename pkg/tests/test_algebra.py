import unittest

import numpy as np

from qh_covers.Core.algebra import (Algebra, ModuleMap, Representation, center, direct_sum, dual_module,
                                    endomorphism_algebra, hom_space, idempotent_truncation, quotient_module,
                                    reduce_algebra_mod_p, regular_module, right_ideal_module, right_regular_module,
                                    same_algebra, submodule, submodule_generated, tensor_over_algebra,
                                    verify_algebra, verify_representation)
from qh_covers.Core.exceptions import DomainMismatchError, InvalidInputError, VerificationError
from qh_covers.Core.quiver import two_vertex_quiver_fixture, vertex_idempotent
from qh_covers.Core.ring_arith import CoefficientDomain
from qh_covers.Schur.symmetric_group import symmetric_group_algebra

F2 = CoefficientDomain.parse("f2")
Q = CoefficientDomain.parse("q")


def trivial_module(a):
    """Every basis element of the group algebra acts as 1."""
    return Representation(a, a.domain.array([[[1]]] * a.rank), "trivial")


class TestAlgebra(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.s2 = symmetric_group_algebra(2, F2)
        cls.quiver = two_vertex_quiver_fixture(Q)

    def test_group_algebra_multiplication(self):
        self.assertEqual(self.s2.rank, 2)
        swap = self.s2.basis_element(self.s2.labels.index("21"))
        np.testing.assert_array_equal(self.s2.multiply(swap, swap), self.s2.unit)
        verify_algebra(self.s2)

    def test_broken_unit_is_rejected(self):
        s2 = self.s2
        broken = Algebra(s2.domain, s2.labels, s2.mult, s2.basis_element(1), name="broken")
        with self.assertRaises(VerificationError):
            verify_algebra(broken)

    def test_shape_mismatch_is_input_error(self):
        with self.assertRaises(InvalidInputError):
            Algebra(F2, ("a", "b"), F2.zeros((2, 2, 3)), F2.array([1, 0]))

    def test_opposite_is_an_involution(self):
        op = self.quiver.opposite
        self.assertIs(op.opposite, self.quiver)
        np.testing.assert_array_equal(op.mult, self.quiver.mult.transpose(1, 0, 2))
        verify_algebra(op)

    def test_center_of_commutative_algebra(self):
        self.assertEqual(center(self.s2).shape[1], 2)
        self.assertLess(center(self.quiver).shape[1], self.quiver.rank)

    def test_quiver_idempotent_truncations(self):
        e1 = vertex_idempotent(self.quiver, "1")
        e2 = vertex_idempotent(self.quiver, "2")
        self.assertEqual(idempotent_truncation(self.quiver, e1).algebra.rank, 2)
        self.assertEqual(idempotent_truncation(self.quiver, e2).algebra.rank, 1)
        with self.assertRaises(InvalidInputError):
            idempotent_truncation(self.quiver, self.quiver.basis_element(self.quiver.labels.index("alpha")))

    def test_right_ideal_module(self):
        e1 = vertex_idempotent(self.quiver, "1")
        ideal = right_ideal_module(self.quiver, e1)
        self.assertEqual(ideal.rank, 3)
        self.assertTrue(same_algebra(ideal.algebra, self.quiver))
        verify_representation(ideal.left)


class TestModules(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.quiver = two_vertex_quiver_fixture(Q)
        cls.regular = regular_module(cls.quiver)
        cls.s2 = symmetric_group_algebra(2, Q)

    def test_regular_and_dual_modules(self):
        verify_representation(self.regular)
        dual = dual_module(self.regular)
        verify_representation(dual)
        self.assertTrue(same_algebra(dual.algebra, self.quiver.opposite))
        np.testing.assert_array_equal(dual_module(dual).action, self.regular.action)

    def test_endomorphisms_of_regular_module(self):
        self.assertEqual(len(hom_space(self.regular, self.regular)), self.quiver.rank)
        end = endomorphism_algebra(self.regular)
        self.assertEqual(end.algebra.rank, self.quiver.rank)
        verify_algebra(end.algebra)

    def test_direct_sum(self):
        total = direct_sum(self.regular, self.regular)
        self.assertEqual(total.rank, 2 * self.quiver.rank)
        verify_representation(total)
        with self.assertRaises(DomainMismatchError):
            direct_sum(self.regular, regular_module(self.s2))

    def test_identity_is_iso(self):
        ident = ModuleMap(self.regular, self.regular, Q.eye(self.quiver.rank))
        self.assertTrue(ident.is_intertwiner())
        self.assertTrue(ident.is_iso)
        self.assertTrue(ident.compose(ident).is_epi)

    def test_submodules_and_quotients(self):
        regular = regular_module(self.s2)
        norm = submodule_generated(regular, Q.array([1, 1]))
        self.assertEqual(norm.shape[1], 1)
        sub = submodule(regular, norm, "norm")
        verify_representation(sub)
        quot, projection = quotient_module(regular, norm)
        self.assertEqual(quot.rank, 1)
        self.assertEqual(projection.shape, (1, 2))
        with self.assertRaises(VerificationError):
            quotient_module(regular, Q.array([[1], [0]]))

    def test_tensor_with_regular_right_module(self):
        result = tensor_over_algebra(right_regular_module(self.quiver), self.regular)
        self.assertEqual(result.invariants.free_rank, self.quiver.rank)
        self.assertEqual(tuple(result.invariants.torsion_factors), ())

    def test_reduction_modulo_p(self):
        zloc2 = CoefficientDomain.parse("zloc2")
        reduced = reduce_algebra_mod_p(symmetric_group_algebra(2, zloc2))
        self.assertEqual(reduced.domain, F2)
        self.assertTrue(same_algebra(reduced, symmetric_group_algebra(2, F2)))
        with self.assertRaises(DomainMismatchError):
            reduce_algebra_mod_p(self.s2)

    def test_trivial_module(self):
        verify_representation(trivial_module(self.s2))


if __name__ == "__main__":
    unittest.main()
