import unittest

from qh_covers.Core.exceptions import DomainMismatchError
from qh_covers.Core.ring_arith import CoefficientDomain
from qh_covers.Covers.consistency import (equivalence_implication, functor_is_equivalence, gendo_symmetric_halving,
                                          hn_domdim_bound, rigidity_check, specht_uniqueness_probe,
                                          surviving_weights, truncation_consistency)
from qh_covers.Covers.cover import CoverSpec
from qh_covers.Covers.dimensions import Dimension
from qh_covers.Schur.schur_algebra import schur_algebra
from qh_covers.Schur.symmetric_group import symmetric_group_algebra

finite, at_least = Dimension.finite, Dimension.at_least


def schur_cover(n, d, ring):
    return CoverSpec.from_schur(schur_algebra(n, d, CoefficientDomain.parse(ring)))


class TestRigidity(unittest.TestCase):

    def test_characteristic_two(self):
        cover = schur_cover(2, 2, "f2")
        self.assertEqual(surviving_weights(cover, cover.chain), [1])
        verdict = rigidity_check(cover, cover.chain, finite(-1))
        self.assertEqual(verdict.surviving, ("(1,1)",))
        self.assertEqual(verdict.depth, 0)
        self.assertFalse(verdict.equivalence)
        self.assertTrue(verdict.consistent)
        # hn-standard = 1 would force an equivalence
        self.assertFalse(rigidity_check(cover, cover.chain, finite(1)).consistent)

    def test_characteristic_three(self):
        cover = schur_cover(3, 3, "f3")
        verdict = rigidity_check(cover, cover.chain, finite(0))
        self.assertEqual(verdict.surviving, ("(2,1)", "(1,1,1)"))
        self.assertEqual(verdict.depth, 1)
        self.assertTrue(verdict.consistent)
        self.assertEqual(verdict.to_json()["hn_value"], "0")

    def test_needs_a_field(self):
        cover = schur_cover(2, 2, "zloc2")
        with self.assertRaises(DomainMismatchError):
            rigidity_check(cover, cover.chain, finite(0))


class TestEquivalence(unittest.TestCase):

    def test_schur_functor_is_not_an_equivalence_in_small_characteristic(self):
        self.assertFalse(functor_is_equivalence(schur_cover(2, 2, "f2")))

    def test_semisimple_and_trivial_covers(self):
        self.assertTrue(functor_is_equivalence(schur_cover(2, 2, "f3")))
        a = symmetric_group_algebra(2, CoefficientDomain.parse("f2"))
        self.assertTrue(functor_is_equivalence(CoverSpec.from_idempotent(a, a.unit)))


class TestSpechtProbe(unittest.TestCase):

    def test_probe_values(self):
        self.assertTrue(specht_uniqueness_probe(CoefficientDomain.parse("f2"), 2).nonzero)
        self.assertTrue(specht_uniqueness_probe(CoefficientDomain.parse("f2"), 3).nonzero)
        probe = specht_uniqueness_probe(CoefficientDomain.parse("f3"), 2)
        self.assertFalse(probe.nonzero)
        self.assertEqual(probe.characteristic, 3)

    def test_needs_a_field(self):
        with self.assertRaises(DomainMismatchError):
            specht_uniqueness_probe(CoefficientDomain.parse("zloc2"), 2)


class TestRelations(unittest.TestCase):

    def test_truncation_consistency(self):
        self.assertTrue(truncation_consistency(finite(0), finite(1)))
        self.assertTrue(truncation_consistency(finite(2), finite(3)))
        self.assertFalse(truncation_consistency(finite(0), finite(3)))
        self.assertFalse(truncation_consistency(finite(2), finite(1)))
        self.assertTrue(truncation_consistency(at_least(8), at_least(8)))

    def test_gendo_symmetric_halving(self):
        self.assertTrue(gendo_symmetric_halving(finite(2), finite(1)))
        self.assertTrue(gendo_symmetric_halving(finite(4), finite(2)))
        self.assertTrue(gendo_symmetric_halving(Dimension.infinite(), Dimension.infinite()))
        self.assertFalse(gendo_symmetric_halving(finite(2), finite(2)))
        self.assertFalse(gendo_symmetric_halving(finite(2), at_least(8)))

    def test_hn_domdim_bound(self):
        self.assertTrue(hn_domdim_bound(finite(0), finite(2), exact=True))
        self.assertFalse(hn_domdim_bound(finite(1), finite(2), exact=True))
        self.assertTrue(hn_domdim_bound(finite(1), finite(2)))
        self.assertFalse(hn_domdim_bound(finite(0), finite(4)))
        self.assertTrue(hn_domdim_bound(Dimension.infinite(), Dimension.infinite(), exact=True))

    def test_equivalence_implication(self):
        self.assertFalse(equivalence_implication(finite(0), finite(0), False))
        self.assertTrue(equivalence_implication(finite(0), finite(0), True))
        self.assertTrue(equivalence_implication(at_least(8), at_least(8), False))
        self.assertTrue(equivalence_implication(finite(0), finite(2), False))


if __name__ == "__main__":
    unittest.main()
