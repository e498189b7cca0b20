import unittest

from qh_covers.Core.algebra import same_algebra, verify_algebra
from qh_covers.Core.exceptions import InvalidInputError
from qh_covers.Core.ring_arith import CoefficientDomain
from qh_covers.Schur.symmetric_group import (compose, hecke_algebra, length, permutation_label, permutations,
                                             quadratic_relation_holds, reduced_word, simple_transposition,
                                             symmetric_group_algebra)

F5 = CoefficientDomain.parse("f5")


class TestPermutations(unittest.TestCase):

    def test_enumeration_and_labels(self):
        perms = permutations(3)
        self.assertEqual(len(perms), 6)
        self.assertEqual(perms[0], (0, 1, 2))
        self.assertEqual(permutation_label(perms[-1]), "321")
        with self.assertRaises(InvalidInputError):
            permutations(0)

    def test_reduced_words(self):
        for sigma in permutations(4):
            word = reduced_word(sigma)
            self.assertEqual(len(word), length(sigma))
            current = tuple(range(4))
            for t in word:
                current = compose(current, simple_transposition(4, t))
            self.assertEqual(current, sigma)

    def test_longest_element(self):
        self.assertEqual(length((2, 1, 0)), 3)


class TestGroupAndHeckeAlgebras(unittest.TestCase):

    def test_group_algebra(self):
        a = symmetric_group_algebra(3, F5)
        self.assertEqual(a.rank, 6)
        self.assertEqual(a.name, "F_5S_3")
        verify_algebra(a)

    def test_hecke_quadratic_relation(self):
        h = hecke_algebra(3, 2, F5)
        self.assertEqual(h.rank, 6)
        self.assertTrue(quadratic_relation_holds(h, 3, 2))
        self.assertFalse(quadratic_relation_holds(h, 3, 3))

    def test_hecke_at_one_is_group_algebra(self):
        self.assertTrue(same_algebra(hecke_algebra(3, 1, F5), symmetric_group_algebra(3, F5)))

    def test_parameter_must_be_a_unit(self):
        with self.assertRaises(InvalidInputError):
            hecke_algebra(2, 0, F5)
        with self.assertRaises(InvalidInputError):
            hecke_algebra(2, 2, CoefficientDomain.parse("zloc2"))


if __name__ == "__main__":
    unittest.main()
