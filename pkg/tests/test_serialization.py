import json
import tempfile
import unittest
from pathlib import Path

import numpy as np

from qh_covers.Core.algebra import regular_module, same_algebra
from qh_covers.Core.exceptions import InvalidInputError
from qh_covers.Core.ring_arith import CoefficientDomain
from qh_covers.Core.serialization import (algebra_from_json, algebra_to_json, bundle_sidecar, load_bundle, read_json,
                                          representation_from_json, representation_to_json, save_bundle,
                                          sidecar_path)
from qh_covers.Schur.schur_algebra import schur_algebra, schur_heredity_chain
from qh_covers.Schur.symmetric_group import symmetric_group_algebra


class TestAlgebraFiles(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.data = schur_algebra(2, 2, CoefficientDomain.parse("zloc2"))
        cls.chain = schur_heredity_chain(cls.data)

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.path = Path(self.tmp.name) / "s22.json"

    def test_bundle_survives_a_save(self):
        a = self.data.algebra
        side = bundle_sidecar("schur", 2, 2, "1", self.data.idempotent, a, self.chain)
        path, side_path = save_bundle(self.path, a, side)
        self.assertEqual(side_path, sidecar_path(path))
        self.assertEqual(side_path.name, "s22.sidecar.json")
        bundle = load_bundle(path)
        self.assertTrue(same_algebra(bundle.algebra, a))
        self.assertEqual(bundle.family, "schur")
        self.assertEqual(len(bundle.algebra.peirce), 3)
        np.testing.assert_array_equal(bundle.idempotent, self.data.idempotent)
        self.assertEqual(bundle.chain.weights, ("(2)", "(1,1)"))
        self.assertEqual(bundle.chain.partitions, ((2,), (1, 1)))

    def test_writes_are_deterministic(self):
        a = self.data.algebra
        side = bundle_sidecar("schur", 2, 2, "1", self.data.idempotent, a, self.chain)
        save_bundle(self.path, a, side)
        first = self.path.read_bytes()
        save_bundle(self.path, a, side)
        self.assertEqual(self.path.read_bytes(), first)

    def test_missing_sidecar_is_allowed(self):
        a = symmetric_group_algebra(2, CoefficientDomain.parse("f3"))
        self.path.write_text(json.dumps(algebra_to_json(a)))
        bundle = load_bundle(self.path)
        self.assertIsNone(bundle.idempotent)
        self.assertIsNone(bundle.chain)
        self.assertEqual(bundle.family, "custom")

    def test_malformed_files(self):
        self.path.write_text("{not json")
        with self.assertRaises(InvalidInputError):
            read_json(self.path)
        data = algebra_to_json(symmetric_group_algebra(2, CoefficientDomain.parse("f3")))
        data["unit"] = ["0", "1"]
        with self.assertRaises(InvalidInputError):
            algebra_from_json(data)
        del data["ring"]
        with self.assertRaises(InvalidInputError):
            algebra_from_json(data)

    def test_bad_idempotent_in_sidecar(self):
        a = symmetric_group_algebra(2, CoefficientDomain.parse("f3"))
        side = bundle_sidecar("symgroup", None, 2, "1", a.basis_element(1), a, None)
        save_bundle(self.path, a, side)
        with self.assertRaises(InvalidInputError):
            load_bundle(self.path)


class TestModuleFiles(unittest.TestCase):

    def test_regular_module(self):
        a = symmetric_group_algebra(2, CoefficientDomain.parse("f3"))
        data = representation_to_json(regular_module(a))
        self.assertEqual(data["rank"], 2)
        m = representation_from_json(data, a, "regular")
        np.testing.assert_array_equal(m.action, regular_module(a).action)

    def test_rejects_non_modules(self):
        a = symmetric_group_algebra(2, CoefficientDomain.parse("f3"))
        data = {"rank": 1, "action": [[["1"]], [["0"]]]}
        with self.assertRaises(InvalidInputError):
            representation_from_json(data, a)
        with self.assertRaises(InvalidInputError):
            representation_from_json({"rank": 1, "action": [[["1"]]]}, a)


if __name__ == "__main__":
    unittest.main()
