import unittest

from qh_covers.Core.algebra import same_algebra, tensor_over_algebra
from qh_covers.Core.exceptions import InvalidInputError
from qh_covers.Core.qh_structure import standard_module
from qh_covers.Core.radical import simple_modules
from qh_covers.Core.ring_arith import CoefficientDomain
from qh_covers.Schur.schur_algebra import (schur_algebra, schur_functor_image, schur_heredity_chain,
                                           tensor_space_intertwiner)

F2 = CoefficientDomain.parse("f2")
F3 = CoefficientDomain.parse("f3")
F5 = CoefficientDomain.parse("f5")


class TestSchurAlgebra(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.s22 = schur_algebra(2, 2, F2)

    def test_rank_and_weights(self):
        a = self.s22.algebra
        self.assertEqual(a.rank, 10)
        self.assertEqual(a.name, "S_F_2(2,2)")
        self.assertEqual(self.s22.weights, ((2, 0), (1, 1), (0, 2)))
        self.assertEqual(len(a.peirce), 3)
        self.assertIs(self.s22.weight_idempotent((1, 1)), a.peirce[1])
        with self.assertRaises(InvalidInputError):
            self.s22.weight_idempotent((3,))

    def test_rank_for_three_by_three(self):
        data = schur_algebra(3, 3, F3)
        self.assertEqual(data.algebra.rank, 165)
        self.assertEqual(data.tensor.rank, 27)
        # eSe is the group algebra of S_3
        self.assertEqual(data.truncation.algebra.rank, 6)

    def test_heredity_chain_is_most_dominant_first(self):
        chain = schur_heredity_chain(self.s22, verify=True)
        self.assertEqual(chain.weights, ("(2)", "(1,1)"))
        self.assertEqual(chain.partitions, ((2,), (1, 1)))

    def test_tensor_space_is_projective(self):
        phi = tensor_space_intertwiner(self.s22)
        self.assertTrue(phi.is_intertwiner())
        self.assertTrue(phi.is_iso)

    def test_functor_on_tensor_space(self):
        image = schur_functor_image(self.s22, self.s22.module)
        # e V^(x)2 is the regular module of S_2
        self.assertEqual(image.rank, 2)

    def test_tensor_space_over_the_sign_weyl_module(self):
        chain = schur_heredity_chain(self.s22)
        delta = standard_module(chain, chain.index("(1,1)")).module
        product = tensor_over_algebra(self.s22.right_module, delta)
        self.assertEqual(product.invariants.free_rank, 1)
        self.assertEqual(product.invariants.torsion_factors, ())

    def test_functor_kills_one_simple(self):
        # over F_2 the Frobenius twist L((2)) has no (1,1) weight space
        ranks = sorted(schur_functor_image(self.s22, s).rank for s in simple_modules(self.s22.algebra))
        self.assertEqual(len(ranks), 2)
        self.assertEqual(ranks, [0, 1])

    def test_q_schur_algebra(self):
        data = schur_algebra(2, 2, F5, 2)
        self.assertEqual(data.family, "qschur")
        self.assertEqual(data.algebra.rank, 10)
        self.assertEqual(data.truncation.algebra.rank, 2)

    def test_q_schur_at_one_is_classical(self):
        deformed = schur_algebra(2, 2, F5, 1, family="qschur")
        self.assertEqual(deformed.family, "qschur")
        self.assertTrue(same_algebra(deformed.algebra, schur_algebra(2, 2, F5).algebra))

    def test_n_smaller_than_d(self):
        with self.assertRaises(InvalidInputError):
            schur_algebra(1, 2, F2)


if __name__ == "__main__":
    unittest.main()
