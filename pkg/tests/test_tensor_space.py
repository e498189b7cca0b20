import unittest

import numpy as np

from qh_covers.Core.algebra import verify_representation
from qh_covers.Core.exceptions import InvalidInputError
from qh_covers.Core.ring_arith import CoefficientDomain
from qh_covers.Schur.tensor_space import tensor_space, weight_of

F5 = CoefficientDomain.parse("f5")


class TestTensorSpace(unittest.TestCase):

    def test_indices_and_weights(self):
        ts = tensor_space(2, 3, F5)
        self.assertEqual(ts.rank, 8)
        self.assertEqual(ts.indices[0], (0, 0, 0))
        self.assertEqual(weight_of((0, 1, 0), 2), (2, 1))
        self.assertEqual(int(np.trace(ts.weight_projection((2, 1)))), 3)

    def test_place_permutations_at_one(self):
        ts = tensor_space(2, 2, F5)
        self.assertTrue(ts.classical)
        np.testing.assert_array_equal(ts.action_matrices[1], ts.place_permutation((1, 0)))
        verify_representation(ts.module())

    def test_deformed_action_is_a_module(self):
        ts = tensor_space(2, 3, F5, 2)
        self.assertFalse(ts.classical)
        verify_representation(ts.module())

    def test_rejects_bad_parameters(self):
        with self.assertRaises(InvalidInputError):
            tensor_space(0, 2, F5)
        with self.assertRaises(InvalidInputError):
            tensor_space(2, 2, F5, 0)


if __name__ == "__main__":
    unittest.main()
