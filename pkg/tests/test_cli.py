import io
import json
import os
import tempfile
from contextlib import redirect_stderr, redirect_stdout
from typing import Sequence, Tuple
from unittest import TestCase

from weylstar.cli import main
from weylstar.operators import ElementaryOp


def run_cli(argv: Sequence[str]) -> Tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue().strip(), err.getvalue()


class TestCli(TestCase):

    def assertOutput(self, argv, expected):
        code, out, err = run_cli(argv)
        self.assertEqual(code, 0, err)
        self.assertEqual(out, expected)

    def test_star(self):
        self.assertOutput(["star", "-n", "1", "p1", "q1"], "p1*q1 + 1/2")
        self.assertOutput(["star", "p1^2", "q1^2", "--max-degree", "2"],
                          "2*p1*q1 + 1/2")
        self.assertOutput(["star", "-t", "0", "p1", "q1"], "p1*q1")

    def test_star_json(self):
        code, out, _ = run_cli(["star", "--json", "p1", "q1"])
        self.assertEqual(code, 0)
        data = json.loads(out)
        self.assertEqual(data["nvars"], 2)
        self.assertEqual(data["kind"], "symplectic")

    def test_forms(self):
        self.assertOutput(["bracket", "super", "p1", "q1"], "2*p1*q1")
        self.assertOutput(["bracket", "lie", "p1", "q1"], "1")
        self.assertOutput(["str", "p1*q1 + 3"], "3")
        self.assertOutput(["kappa", "p1", "q1"], "1/2")
        self.assertOutput(["bform", "1", "1"], "-1")
        self.assertOutput(["rho", "p1*q1"], "q1*p1 + 1/2")

    def test_osp(self):
        code, out, _ = run_cli(["osp-check", "roots", "-n", "2", "--json"])
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)["status"], "pass")

        code, out, _ = run_cli(["osp-check", "image", "--l", "3", "--m", "3",
                                "--kind", "lie"])
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines()[0], "image: pass")

        code, out, _ = run_cli(["osp-roots"])
        self.assertIn("+ (1) p1", out.splitlines())
        self.assertIn("- (-1) q1", out.splitlines())

        code, out, _ = run_cli(["cg", "2", "1"])
        self.assertEqual(out.splitlines()[0], "cg: pass")
        code, out, _ = run_cli(["ck-image", "1", "2", "2"])
        self.assertEqual(out.splitlines()[0], "ck-image: pass")

    def test_reconstruct(self):
        self.assertOutput(["reconstruct", "--op", "d"], "c[1] = 1")
        self.assertOutput(["reconstruct", "--op", "E", "--in", "1", "--out",
                           "0", "--max-order", "2"],
                          "c[1] = 1\nc[2] = -x1")
        self.assertOutput(["reconstruct", "--op", "id", "-n", "2"],
                          "c[0, 0] = 1")

    def test_wmap(self):
        self.assertOutput(["wmap", "p1*q1", "x1"], "3/2*x1")

    def test_supertraces(self):
        self.assertOutput(["rstr", "--op", "S", "--lambda", "1"], "1/2")
        self.assertOutput(["rstr", "--op", "S", "--lambda", "1/2", "-n", "2"],
                          "4/9")
        self.assertOutput(["strwbar", "--op", "E", "--in", "1", "--out", "1"],
                          "-2")

        code, out, _ = run_cli(["rstr", "--op", "id", "-n", "2",
                                "--numeric"])
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith("0.25 (converged"), out)

    def test_undetermined(self):
        code, out, _ = run_cli(["rstr", "--op", "S", "--lambda", "1/2",
                                "--numeric", "--max-terms", "10"])
        self.assertEqual(code, 3)
        self.assertIn("undetermined after 10 batches", out)

    def test_iw(self):
        code, out, _ = run_cli(["iw", "--op", "S", "--lambda", "-1", "-n",
                                "1", "--max-degree", "6"])
        self.assertEqual(code, 3)
        self.assertTrue(out.startswith("diverged"), out)

        code, out, _ = run_cli(["iw", "--op", "S", "--lambda", "1",
                                "--closed-form", "--max-degree", "4"])
        self.assertEqual(code, 0)
        self.assertEqual(out, "1")

    def test_domain_error(self):
        code, out, err = run_cli(["rstr", "--op", "S", "--lambda", "3"])
        self.assertEqual(code, 1)
        self.assertEqual(out, "")
        self.assertIn("closed form", err)

    def test_from_json(self):
        op = ElementaryOp((0,), (1,))
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "op.json")
            with open(path, "w", encoding="utf-8") as f:
                json.dump(op.to_json(), f)
            self.assertOutput(["reconstruct", "--from-json", path,
                               "--max-order", "2"], "c[1] = 1\nc[2] = -x1")

            code, _, _ = run_cli(["rstr", "--from-json",
                                  os.path.join(tmp, "missing.json")])
            self.assertEqual(code, 1)

    def test_usage_errors(self):
        code, _, err = run_cli(["star"])
        self.assertEqual(code, 2)
        self.assertIn("usage", err)

        code, _, err = run_cli(["rstr"])
        self.assertEqual(code, 2)
        self.assertIn("an operator is required", err)

        code, _, err = run_cli(["star", "p1 +", "q1"])
        self.assertEqual(code, 2)
        self.assertIn("syntax error", err)

        code, _, err = run_cli(["star", "p2", "q1"])
        self.assertEqual(code, 2)
        self.assertIn("unknown variable", err)

    def test_deterministic(self):
        argv = ["iw", "--op", "E", "--in", "1", "--out", "2", "--closed-form",
                "--json"]
        first = run_cli(argv)
        second = run_cli(argv)
        self.assertEqual(first, second)
        self.assertEqual(first[0], 0)
