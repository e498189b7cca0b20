import unittest

from qh_covers.Core.algebra import Representation, regular_module
from qh_covers.Core.exceptions import NotProjectiveError
from qh_covers.Core.quiver import two_vertex_quiver_fixture, vertex_idempotent
from qh_covers.Core.ring_arith import CoefficientDomain
from qh_covers.Covers.cover import CoverSpec, double_centralizer_check, require_rqf3, rqf3_check
from qh_covers.Schur.schur_algebra import schur_algebra
from qh_covers.Schur.symmetric_group import symmetric_group_algebra


class TestSchurCover(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.cover = CoverSpec.from_schur(schur_algebra(2, 2, CoefficientDomain.parse("f2")))

    def test_double_centralizer(self):
        verdict = double_centralizer_check(self.cover)
        self.assertTrue(verdict.holds)
        self.assertEqual(verdict.evidence["rank_a"], 10)
        self.assertEqual(verdict.evidence["rank_end"], 10)
        self.assertTrue(self.cover.is_cover)

    def test_double_centralizer_over_f5(self):
        for u in (1, 2):
            with self.subTest(u=u):
                cover = CoverSpec.from_schur(schur_algebra(2, 2, CoefficientDomain.parse("f5"), u))
                verdict = double_centralizer_check(cover)
                self.assertTrue(verdict.holds)
                self.assertEqual(verdict.evidence["rank_end"], 10)

    def test_relative_qf3(self):
        verdict = rqf3_check(self.cover)
        self.assertTrue(verdict.projective)
        self.assertTrue(verdict.injective)
        self.assertTrue(verdict.strongly_faithful)
        require_rqf3(self.cover)

    def test_b_is_the_group_algebra(self):
        self.assertEqual(self.cover.b.rank, 2)
        self.assertEqual(self.cover.fa.rank, self.cover.v.rank)
        self.assertFalse(self.cover.b_semisimple)
        self.assertIsNotNone(self.cover.chain)

    def test_resolution_is_shared(self):
        first = self.cover.fa_resolution(2)
        self.assertIs(self.cover.fa_resolution(1), first)


class TestQuiverCovers(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.a = two_vertex_quiver_fixture(CoefficientDomain.parse("q"))

    def test_projective_injective_vertex_gives_a_cover(self):
        cover = CoverSpec.from_idempotent(self.a, vertex_idempotent(self.a, "1"))
        self.assertTrue(cover.is_cover)
        self.assertTrue(cover.rqf3.holds)

    def test_other_vertex_is_not_a_cover(self):
        cover = CoverSpec.from_idempotent(self.a, vertex_idempotent(self.a, "2"))
        self.assertFalse(cover.is_cover)
        self.assertFalse(double_centralizer_check(cover).holds)

    def test_regular_module_gives_trivial_cover(self):
        cover = CoverSpec.from_projective(regular_module(self.a))
        self.assertTrue(cover.is_cover)
        self.assertEqual(cover.b.rank, self.a.rank)


class TestProjectivityRequirement(unittest.TestCase):

    def test_group_algebra_unit_cover(self):
        a = symmetric_group_algebra(2, CoefficientDomain.parse("f2"))
        cover = CoverSpec.from_idempotent(a, a.unit)
        self.assertTrue(cover.is_cover)
        require_rqf3(cover)

    def test_from_projective_rejects_non_projectives(self):
        a = symmetric_group_algebra(2, CoefficientDomain.parse("f2"))
        cover = CoverSpec.from_idempotent(a, a.unit)
        top = cover.functor.apply(regular_module(a))
        self.assertEqual(top.rank, 2)
        with self.assertRaises(NotProjectiveError):
            CoverSpec.from_projective(Representation(a, a.domain.array([[[1]]] * a.rank)))


if __name__ == "__main__":
    unittest.main()
