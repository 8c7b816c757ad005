"""
Test suite for dynirr.
Part 9: the command-line surface, job planning and run manifests.
"""

import unittest
import json
import shutil
import tempfile
from contextlib import redirect_stderr, redirect_stdout
from io import StringIO
from pathlib import Path

import sys
sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from dynirr.cli import EXIT_FAILED, EXIT_INTERRUPTED, EXIT_OK, EXIT_USAGE, main
from dynirr.config import CheckKind, Family, Verdict
from dynirr.parsers import ManifestFileParser
from dynirr.runner import JobRunner, JobSpec, Task, run_task
from dynirr.validator import Validator
from dynirr.config import ValidationRules


def run_cli(*argv):
    """Run main() and capture stdout and stderr."""
    out, err = StringIO(), StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


class TestJobPlanning(unittest.TestCase):
    """Test task expansion."""

    def test_cubic_all(self):
        spec = JobSpec(Family.CUBIC, k_values=[2, 3])
        tasks = JobRunner(spec).plan()
        self.assertEqual(len(tasks), 6)
        self.assertEqual(tasks[0].label, "cubic-structure-k2")

    def test_uni_grid(self):
        spec = JobSpec(Family.UNI, k_values=[2], D_values=[4], n_values=[1, 2], checks=[CheckKind.EISENSTEIN])
        labels = [t.label for t in JobRunner(spec).plan()]
        self.assertEqual(
            labels,
            [
                "uni-eisenstein-D4-k2-n1-d2",
                "uni-eisenstein-D4-k2-n1-d4",
                "uni-eisenstein-D4-k2-n2-d2",
                "uni-eisenstein-D4-k2-n2-d4",
            ],
        )

    def test_survey_is_one_task(self):
        spec = JobSpec(Family.UNI, D_values=[2, 3], n_values=[2, 3], survey=True)
        tasks = JobRunner(spec).plan()
        self.assertEqual(len(tasks), 1)
        self.assertEqual(tasks[0].extra, (2, 2, 3))

    def test_budget_refusal_is_recorded(self):
        result = run_task(Task(Family.CUBIC, CheckKind.STRUCTURE, k=4, budget=20))
        self.assertTrue(result.passed)
        self.assertEqual(result.verdict, Verdict.INFO)
        self.assertIn("refused", result.details)


class TestCommandLine(unittest.TestCase):
    """End-to-end runs through main()."""

    def setUp(self):
        self.tmp = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmp, ignore_errors=True)

    def test_no_command(self):
        code, out, _ = run_cli()
        self.assertEqual(code, EXIT_USAGE)

    def test_cubic_run_writes_manifest(self):
        code, out, _ = run_cli("cubic", "--k", "2", "--check", "all", "--out", self.tmp)
        self.assertEqual(code, EXIT_OK, out)
        self.assertIn("3/3 tasks passed", out)

        manifest_path = Path(self.tmp) / "manifest.json"
        parsed = ManifestFileParser(Validator(ValidationRules())).parse(str(manifest_path))
        self.assertTrue(parsed.is_valid, parsed.errors)
        checks = [r["check"] for r in parsed.sanitized_value]
        self.assertEqual(checks, ["structure", "eisenstein", "oracle"])
        self.assertTrue((Path(self.tmp) / "certificates" / "cubic-eisenstein-k2.json").exists())

    def test_uni_run_json(self):
        code, out, _ = run_cli("uni", "--D", "2", "--k", "2", "--n", "1..2", "--emit", "json")
        self.assertEqual(code, EXIT_OK, out)
        manifest = json.loads(out)
        self.assertEqual(manifest["summary"]["failed"], 0)
        verdicts = {r["check"] for r in manifest["results"]}
        self.assertEqual(
            verdicts, {"identity", "resultant", "modp", "eisenstein", "gleason", "special", "oracle"}
        )

    def test_manifest_results_are_stable(self):
        """Two runs produce the same results section."""
        _, first, _ = run_cli("quadrat", "--k", "3", "--check", "structure,eisenstein", "--emit", "json")
        _, second, _ = run_cli("quadrat", "--k", "3", "--check", "structure,eisenstein", "--emit", "json")
        self.assertEqual(json.loads(first)["results"], json.loads(second)["results"])

    def test_parallel_run_matches_serial(self):
        """Worker processes return the same results, certificates included, as one process."""
        argv = ["uni", "--D", "2,4", "--k", "2", "--n", "1..2", "--check", "eisenstein,modp,oracle",
                "--emit", "json"]
        serial_code, serial, _ = run_cli(*argv, "--jobs", "1")
        parallel_code, parallel, _ = run_cli(*argv, "--jobs", "2")
        self.assertEqual(parallel_code, serial_code)
        serial_results = json.loads(serial)["results"]
        self.assertEqual(json.loads(parallel)["results"], serial_results)
        self.assertTrue(any("certificates" in r for r in serial_results))

    def test_invalid_divisor(self):
        code, _, err = run_cli("uni", "--D", "2", "--k", "2", "--d", "3")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("d=3 does not divide D=2", err)

    def test_missing_degree(self):
        code, _, err = run_cli("uni", "--k", "2")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("--D", err)

    def test_survey_rejects_composite(self):
        code, _, _ = run_cli("uni", "--survey", "--D", "6", "--n", "2..3")
        self.assertEqual(code, EXIT_USAGE)

    def test_survey(self):
        code, out, _ = run_cli("uni", "--survey", "--D", "2,3,4", "--n", "2..3")
        self.assertEqual(code, EXIT_OK, out)

    def test_invalid_budget(self):
        code, _, _ = run_cli("cubic", "--k", "2", "--budget", "0")
        self.assertEqual(code, EXIT_USAGE)

    def test_refusal_summary(self):
        code, out, _ = run_cli("cubic", "--k", "4", "--check", "structure", "--budget", "20")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("1 refused by budget", out)

    def test_export_and_verify(self):
        poly_path = str(Path(self.tmp) / "s2.json")
        cert_path = str(Path(self.tmp) / "s2.cert.json")
        code, out, _ = run_cli("export", "cubic", "--k", "2", "--out", poly_path, "--certificate", cert_path)
        self.assertEqual(code, EXIT_OK, out)

        code, out, _ = run_cli("verify-cert", cert_path)
        self.assertEqual(code, EXIT_OK)
        self.assertIn("verified", out)

        code, out, _ = run_cli("import", poly_path)
        self.assertEqual(code, EXIT_OK)
        self.assertIn("b^4 + 3*b^2 + 3", out)

    def test_forged_certificate(self):
        cert_path = Path(self.tmp) / "r.cert.json"
        run_cli("export", "uni", "--D", "2", "--k", "2", "--n", "2", "--d", "2",
                "--out", str(Path(self.tmp) / "r.json"), "--certificate", str(cert_path))
        data = json.loads(cert_path.read_text())
        data["certificate"]["resultant"] = "8"
        cert_path.write_text(json.dumps(data))

        code, out, _ = run_cli("verify-cert", str(cert_path))
        self.assertEqual(code, EXIT_FAILED)
        self.assertIn("NOT verified", out)

    def test_malformed_certificate(self):
        cert_path = Path(self.tmp) / "bad.json"
        cert_path.write_text('{"kind": "certificate", "certificate": {"variant": ')
        code, _, err = run_cli("verify-cert", str(cert_path))
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("byte offset", err)


def test_interrupt_exit_code(mocker):
    mocker.patch("dynirr.cli.JobRunner.run", side_effect=KeyboardInterrupt)
    assert main(["cubic", "--k", "2", "--check", "eisenstein"]) == EXIT_INTERRUPTED


def test_unexpected_error_exit_code(mocker, capsys):
    mocker.patch("dynirr.cli.JobRunner.run", side_effect=RuntimeError("boom"))
    assert main(["cubic", "--k", "2", "--check", "eisenstein"]) == EXIT_FAILED
    assert "boom" in capsys.readouterr().err


def test_failing_witness_is_printed(mocker, capsys):
    """A failed check prints its witness on stdout and exits 1."""
    mocker.patch("dynirr.runner.cubicfam.s_hypotheses", return_value={"s_monic": False})
    assert main(["cubic", "--k", "2", "--check", "eisenstein"]) == EXIT_FAILED
    out = capsys.readouterr().out
    assert "failing witness for cubic-eisenstein-k2" in out
    assert '"s_monic": false' in out


if __name__ == '__main__':
    unittest.main()
