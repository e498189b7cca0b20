import unittest

from qh_covers.Core.algebra import hom_space, regular_module
from qh_covers.Core.exceptions import InvalidInputError
from qh_covers.Core.qh_structure import (HeredityChain, costandard_modules, has_delta_filtration, reduce_chain,
                                         standard_module, standard_modules, verify_split_qh)
from qh_covers.Core.quiver import two_vertex_quiver_fixture, vertex_idempotent
from qh_covers.Core.ring_arith import CoefficientDomain
from qh_covers.Schur.schur_algebra import schur_algebra, schur_heredity_chain
from qh_covers.Schur.symmetric_group import symmetric_group_algebra

F2 = CoefficientDomain.parse("f2")


def quiver_chain(domain):
    a = two_vertex_quiver_fixture(domain)
    return HeredityChain(a, ("2", "1"), (vertex_idempotent(a, "2"), vertex_idempotent(a, "1")))


class TestHeredityChain(unittest.TestCase):

    def test_chain_validation(self):
        a = two_vertex_quiver_fixture(F2)
        e1 = vertex_idempotent(a, "1")
        with self.assertRaises(InvalidInputError):
            HeredityChain(a, ("1", "1"), (e1, e1))
        with self.assertRaises(InvalidInputError):
            HeredityChain(a, ("1",), (a.basis_element(a.labels.index("alpha")),))
        with self.assertRaises(InvalidInputError):
            HeredityChain(a, (), ())

    def test_order_and_upper_idempotents(self):
        chain = quiver_chain(F2)
        self.assertEqual(chain.size, 2)
        self.assertEqual(chain.index("1"), 1)
        self.assertTrue(chain.leq(1, 0))
        self.assertFalse(chain.leq(0, 1))
        self.assertFalse(chain.upper_idempotent(0).any())
        self.assertEqual(list(chain.upper_idempotent(2)), list(chain.algebra.unit))
        with self.assertRaises(InvalidInputError):
            chain.index("3")

    def test_dominance_order_on_partitions(self):
        chain = schur_heredity_chain(schur_algebra(3, 3, CoefficientDomain.parse("f3")))
        self.assertEqual(chain.weights, ("(3)", "(2,1)", "(1,1,1)"))
        self.assertTrue(chain.leq(2, 0))
        self.assertFalse(chain.leq(0, 2))


class TestStandardModules(unittest.TestCase):

    def test_quiver_standards(self):
        chain = quiver_chain(CoefficientDomain.parse("q"))
        self.assertEqual([s.module.rank for s in standard_modules(chain)], [2, 1])
        top = standard_module(chain, 0)
        self.assertEqual(top.kernel.rank, 0)
        self.assertEqual(top.projective.rank, 2)
        with self.assertRaises(InvalidInputError):
            standard_module(chain, 2)

    def test_schur_standards_over_f2(self):
        chain = schur_heredity_chain(schur_algebra(2, 2, F2))
        # Weyl modules of S(2, 2): Sym^2 V and Lambda^2 V
        self.assertEqual([s.module.rank for s in standard_modules(chain)], [3, 1])
        self.assertEqual([m.rank for m in costandard_modules(chain, verify=True)], [3, 1])

    def test_costandards_are_standards_when_semisimple(self):
        chain = schur_heredity_chain(schur_algebra(2, 2, CoefficientDomain.parse("f3")))
        for k, nabla in enumerate(costandard_modules(chain)):
            with self.subTest(weight=chain.weights[k]):
                delta = standard_module(chain, k).module
                self.assertTrue(any(f.is_iso for f in hom_space(delta, nabla)))

    def test_delta_filtration_of_regular_module(self):
        chain = quiver_chain(CoefficientDomain.parse("q"))
        verdict = has_delta_filtration(regular_module(chain.algebra), chain)
        self.assertTrue(verdict.holds)
        self.assertEqual(verdict.layers, (("1", 1), ("2", 2)))


class TestSplitQuasiHereditary(unittest.TestCase):

    def test_quiver_chain_passes(self):
        verdict = verify_split_qh(quiver_chain(CoefficientDomain.parse("f3")))
        self.assertTrue(verdict.passed)
        self.assertEqual(set(verdict.axioms), {"i", "ii", "iii", "iv", "v"})

    def test_schur_chains_pass(self):
        for ring in ("f2", "zloc2"):
            chain = schur_heredity_chain(schur_algebra(2, 2, CoefficientDomain.parse(ring)))
            self.assertTrue(verify_split_qh(chain).passed, ring)

    def test_group_algebra_with_unit_chain_fails(self):
        a = symmetric_group_algebra(2, F2)
        verdict = verify_split_qh(HeredityChain(a, ("1",), (a.unit,)))
        self.assertFalse(verdict.passed)
        self.assertFalse(verdict.axioms["iii"])
        self.assertEqual(verdict.evidence["hom"], [[2]])

    def test_reduce_chain(self):
        chain = schur_heredity_chain(schur_algebra(2, 2, CoefficientDomain.parse("zloc2")))
        reduced = reduce_chain(chain)
        self.assertEqual(reduced.algebra.domain, F2)
        self.assertEqual(reduced.weights, chain.weights)


if __name__ == "__main__":
    unittest.main()
