import io
import json
import os
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path
from unittest.mock import patch

from qh_covers.cli import EXIT_FAILED, EXIT_INPUT, EXIT_OK, main
from qh_covers.Core.serialization import read_json
from qh_covers.fixture_check import PASS, CheckRecord, SuiteResult


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with patch.dict(os.environ, {"QHC_WORKERS": "1"}, clear=True), redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


class TestBuildAndCompute(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.dir = Path(self.tmp.name)

    def test_build_writes_algebra_and_sidecar(self):
        path = self.dir / "s22.json"
        code, out, _ = run(["build", "schur", str(path), "--n", "2", "--d", "2", "--ring", "f2"])
        self.assertEqual(code, EXIT_OK)
        self.assertIn("rank 10", out)
        self.assertTrue(path.exists())
        self.assertTrue((self.dir / "s22.sidecar.json").exists())

        code, out, _ = run(["domdim", str(path), "--cap", "6"])
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["value"], "2")

        code, out, _ = run(["hn", str(path), "--category", "standard", "--cap", "6"])
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["value"], "-1")

        code, out, _ = run(["verify-qh", str(path)])
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(json.loads(out)["passed"])

        code, out, _ = run(["ext", str(path), "delta:(2)", "delta:(1,1)", "--cap", "2"])
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(len(json.loads(out)["groups"]), 3)

    def test_n_defaults_to_d(self):
        path = self.dir / "s22.json"
        code, out, _ = run(["build", "schur", str(path), "--d", "2", "--ring", "f2"])
        self.assertEqual(code, EXIT_OK)
        self.assertIn("rank 10", out)
        self.assertEqual(read_json(self.dir / "s22.sidecar.json")["n"], 2)

    def test_group_algebra_fails_the_axioms(self):
        path = self.dir / "s2.json"
        code, _, _ = run(["build", "symgroup", str(path), "--d", "2", "--ring", "f2"])
        self.assertEqual(code, EXIT_OK)
        code, out, _ = run(["verify-qh", str(path)])
        self.assertEqual(code, EXIT_FAILED)
        self.assertFalse(json.loads(out)["axioms"]["iii"])

    def test_semisimple_group_algebra(self):
        path = self.dir / "s2.json"
        run(["build", "symgroup", str(path), "--d", "2", "--ring", "f3"])
        code, out, _ = run(["domdim", str(path)])
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["value"], "infinite")


class TestInputErrors(unittest.TestCase):

    def test_bad_ring(self):
        code, _, err = run(["build", "symgroup", "x.json", "--d", "2", "--ring", "f4"])
        self.assertEqual(code, EXIT_INPUT)
        self.assertIn("qh-covers:", err)

    def test_classical_schur_needs_u_one(self):
        code, _, _ = run(["build", "schur", "x.json", "--n", "2", "--d", "2", "--ring", "f5", "--u", "2"])
        self.assertEqual(code, EXIT_INPUT)

    def test_missing_file(self):
        code, _, _ = run(["domdim", "/nonexistent/algebra.json"])
        self.assertEqual(code, EXIT_INPUT)

    def test_bad_cap_and_workers(self):
        self.assertEqual(run(["domdim", "x.json", "--cap", "1"])[0], EXIT_INPUT)
        self.assertEqual(run(["--workers", "0", "paper-check"])[0], EXIT_INPUT)

    def test_bad_environment(self):
        err = io.StringIO()
        with patch.dict(os.environ, {"QHC_CAP": "zero"}, clear=True), redirect_stderr(err):
            self.assertEqual(main(["paper-check"]), EXIT_INPUT)
        self.assertIn("QHC_CAP", err.getvalue())


class TestPaperCheckCommand(unittest.TestCase):

    def result(self, status):
        return SuiteResult("schur", 8, [CheckRecord("schur(2,2) f2 u=1", "domdim", "2", "2", status)],
                           {"schur(2,2) f2 u=1": 0.5})

    @patch("qh_covers.cli.run_suite")
    def test_passing_suite(self, mock_run):
        mock_run.return_value = self.result(PASS)
        code, out, _ = run(["paper-check", "--suite", "schur"])
        self.assertEqual(code, EXIT_OK)
        self.assertIn("schur: PASSED", out)
        self.assertEqual(mock_run.call_args.args[:2], ("schur", 8))
        self.assertFalse(mock_run.call_args.kwargs["include_d4"])

    @patch("qh_covers.cli.run_suite")
    def test_failing_suite_with_json(self, mock_run):
        mock_run.return_value = self.result("fail")
        code, out, _ = run(["paper-check", "--json", "-", "--include-d4"])
        self.assertEqual(code, EXIT_FAILED)
        self.assertFalse(json.loads(out)["passed"])
        self.assertTrue(mock_run.call_args.kwargs["include_d4"])

    @patch("qh_covers.cli.run_suite")
    def test_json_file(self, mock_run):
        mock_run.return_value = self.result(PASS)
        with tempfile.TemporaryDirectory() as tmp:
            target = Path(tmp) / "report.json"
            code, _, _ = run(["paper-check", "--json", str(target)])
            self.assertEqual(code, EXIT_OK)
            self.assertEqual(json.loads(target.read_text())["checks"][0]["status"], PASS)


if __name__ == "__main__":
    unittest.main()
