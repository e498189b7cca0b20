import unittest

import numpy as np

from qh_covers.Core.algebra import Representation, RightRepresentation, hom_space, regular_module
from qh_covers.Core.exceptions import DomainMismatchError, InvalidInputError, NotProjectiveError
from qh_covers.Core.homology import (SchurFunctor, ext, ext_injective, free_resolution, is_projective,
                                     minimal_resolution, projective_dimension, tor)
from qh_covers.Core.linear_algebra import Span
from qh_covers.Core.qh_structure import standard_module
from qh_covers.Core.quiver import two_vertex_quiver_fixture
from qh_covers.Core.radical import simple_modules
from qh_covers.Core.ring_arith import CoefficientDomain
from qh_covers.Schur.schur_algebra import schur_algebra, schur_heredity_chain
from qh_covers.Schur.symmetric_group import symmetric_group_algebra


def trivial(a):
    return Representation(a, a.domain.array([[[1]]] * a.rank), "trivial")


class TestResolutions(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.s2 = symmetric_group_algebra(2, CoefficientDomain.parse("f2"))
        cls.k = trivial(cls.s2)

    def test_periodic_resolution_of_trivial_module(self):
        res = free_resolution(self.k, 3)
        res.verify()
        self.assertEqual(res.terms, (2, 2, 2, 2))
        self.assertFalse(res.complete)
        self.assertEqual(res.length, 3)

    def test_minimal_resolution_of_projective_is_complete(self):
        res = minimal_resolution(regular_module(self.s2), 3)
        res.verify()
        self.assertTrue(res.complete)
        self.assertEqual(res.length, 0)

    def test_negative_length(self):
        with self.assertRaises(InvalidInputError):
            free_resolution(self.k, -1)


class TestExtAndTor(unittest.TestCase):

    def test_ext_of_trivial_module_in_characteristic_two(self):
        s2 = symmetric_group_algebra(2, CoefficientDomain.parse("f2"))
        k = trivial(s2)
        self.assertEqual([g.free_rank for g in ext(k, k, 3)], [1, 1, 1, 1])
        v = RightRepresentation(trivial(s2.opposite))
        self.assertEqual([g.free_rank for g in tor(v, k, 2)], [1, 1, 1])

    def test_ext_vanishes_in_characteristic_three(self):
        s2 = symmetric_group_algebra(2, CoefficientDomain.parse("f3"))
        k = trivial(s2)
        groups = ext(k, k, 2)
        self.assertEqual([g.dimension for g in groups], [1, 0, 0])
        self.assertTrue(groups[1].vanishes)

    def test_integral_ext_has_torsion(self):
        s2 = symmetric_group_algebra(2, CoefficientDomain.parse("zloc2"))
        k = trivial(s2)
        groups = ext(k, k, 2)
        self.assertEqual([g.free_rank for g in groups], [1, 0, 0])
        self.assertTrue(groups[1].vanishes)
        self.assertEqual(len(groups[2].torsion_factors), 1)
        self.assertIsNone(groups[2].dimension)
        self.assertEqual(groups[2].evidence(), [2, 0, ["2"]])

    def test_mismatched_algebras(self):
        f2, f3 = CoefficientDomain.parse("f2"), CoefficientDomain.parse("f3")
        with self.assertRaises(DomainMismatchError):
            ext(trivial(symmetric_group_algebra(2, f2)), trivial(symmetric_group_algebra(2, f3)), 1)


def ext_pairs():
    """(label, M, N) pairs over F_2 S_2, the quiver fixture and S_F2(2,2)."""
    s2 = symmetric_group_algebra(2, CoefficientDomain.parse("f2"))
    pairs = [("f2s2", trivial(s2), trivial(s2))]
    quiver = two_vertex_quiver_fixture(CoefficientDomain.parse("q"))
    simples = simple_modules(quiver)
    pairs += [(f"quiver {i}{j}", s, t) for i, s in enumerate(simples) for j, t in enumerate(simples)]
    chain = schur_heredity_chain(schur_algebra(2, 2, CoefficientDomain.parse("f2")))
    standards = [standard_module(chain, k).module for k in range(chain.size)]
    pairs += [(f"delta {i}{j}", s, t) for i, s in enumerate(standards) for j, t in enumerate(standards)]
    return pairs


class TestExtIndependence(unittest.TestCase):
    """Ext does not depend on the resolution used to compute it."""

    @classmethod
    def setUpClass(cls):
        cls.pairs = ext_pairs()

    def test_generator_order(self):
        for label, m, n in self.pairs:
            with self.subTest(pair=label):
                dims = {tuple(g.dimension for g in ext(m, n, 3, free_resolution(m, 4, seed=seed)))
                        for seed in (None, 0, 7, 2024)}
                self.assertEqual(len(dims), 1)

    def test_injective_coresolution(self):
        for label, m, n in self.pairs:
            with self.subTest(pair=label):
                self.assertEqual([g.dimension for g in ext_injective(m, n, 3)],
                                 [g.dimension for g in ext(m, n, 3)])

    def test_injective_coresolution_needs_a_field(self):
        k = trivial(symmetric_group_algebra(2, CoefficientDomain.parse("zloc2")))
        with self.assertRaises(DomainMismatchError):
            ext_injective(k, k, 1)


class TestProjectivity(unittest.TestCase):

    def test_is_projective(self):
        f2s2 = symmetric_group_algebra(2, CoefficientDomain.parse("f2"))
        f3s2 = symmetric_group_algebra(2, CoefficientDomain.parse("f3"))
        self.assertTrue(is_projective(regular_module(f2s2)))
        self.assertFalse(is_projective(trivial(f2s2)))
        self.assertTrue(is_projective(trivial(f3s2)))

    def test_projective_dimensions(self):
        f2s2 = symmetric_group_algebra(2, CoefficientDomain.parse("f2"))
        self.assertIsNone(projective_dimension(trivial(f2s2), 3))
        quiver = two_vertex_quiver_fixture(CoefficientDomain.parse("q"))
        self.assertEqual(sorted(projective_dimension(s, 4) for s in simple_modules(quiver)), [1, 2])


class TestSchurFunctor(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.data = schur_algebra(2, 2, CoefficientDomain.parse("f2"))

    def test_unit_on_regular_module_is_iso(self):
        unit = self.data.functor.unit(regular_module(self.data.algebra))
        self.assertTrue(unit.is_iso)
        self.assertEqual(unit.verdicts(), {"mono": True, "split_mono": True, "epi": True, "iso": True})
        self.assertTrue(unit.module_map().is_intertwiner())

    def test_functor_kinds_agree_on_ranks(self):
        p, _ = self.data.projective
        by_projective = SchurFunctor.from_projective(p)
        by_idempotent = self.data.functor
        x = self.data.module
        self.assertEqual(by_projective.b.rank, by_idempotent.b.rank)
        self.assertEqual(by_projective.apply(x).rank, by_idempotent.apply(x).rank)

    def test_unit_is_natural(self):
        # eta_Y(f(x)) = F(f) o eta_X(x) for every f : A -> V^(x)2
        dom, trunc = self.data.domain, self.data.truncation
        x, y = regular_module(self.data.algebra), self.data.module
        _, ux = self.data.functor.apply_with_units(x)
        fy, uy = self.data.functor.apply_with_units(y)
        _, basis_x = trunc.truncate_with_basis(x)
        _, basis_y = trunc.truncate_with_basis(y)
        maps = hom_space(x, y)
        self.assertEqual(len(maps), y.rank)
        for f in maps:
            ff = Span.of(dom, basis_y).coordinates(dom.matmul(f.matrix, basis_x))
            lhs = dom.normalize(dom.matmul(np.ascontiguousarray(f.matrix.T), uy.reshape(y.rank, -1)))
            rhs = dom.normalize(np.stack([dom.matmul(ff, ux[j]) for j in range(x.rank)]))
            self.assertTrue(np.array_equal(lhs.reshape(rhs.shape), rhs))

    def test_non_projective_is_rejected(self):
        f2s2 = symmetric_group_algebra(2, CoefficientDomain.parse("f2"))
        with self.assertRaises(NotProjectiveError):
            SchurFunctor.from_projective(trivial(f2s2))


if __name__ == "__main__":
    unittest.main()
