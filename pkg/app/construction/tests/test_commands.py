import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase


def _call(*args, **options):
    stdout, stderr = StringIO(), StringIO()
    call_command(*args, stdout=stdout, stderr=stderr, **options)
    return stdout.getvalue()


class CheckCommandTests(SimpleTestCase):
    def test_validate_bundled_config(self):
        data = json.loads(_call("validate", config="paper-10n"))
        self.assertTrue(data["passed"])

    def test_validate_failure_exits_one(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "bad.json"
            path.write_text(
                json.dumps(
                    {
                        "schedule": {"kind": "prefix", "prefix": [1, 2, 3]},
                        "stage_cap": 3,
                        "kappa_stage": 3,
                        "rho": "0",
                    }
                ),
                encoding="utf-8",
            )
            with self.assertRaises(CommandError) as context:
                _call("validate", config=str(path))
        self.assertEqual(context.exception.returncode, 1)

    def test_unknown_config_exits_two(self):
        with self.assertRaises(CommandError) as context:
            _call("validate", config="no-such-config")
        self.assertEqual(context.exception.returncode, 2)

    def test_stage_override_beyond_cap_exits_two(self):
        with self.assertRaises(CommandError) as context:
            _call("kappa", config="tiny-235", kappa_stage=9)
        self.assertEqual(context.exception.returncode, 2)

    def test_negative_rho_override_exits_two(self):
        for command in ("validate", "run"):
            with self.assertRaises(CommandError) as context:
                _call(command, config="tiny-235", rho="-1/2")
            self.assertEqual(context.exception.returncode, 2)
            self.assertIn("rho", str(context.exception))

    def test_sequences_table(self):
        output = _call(
            "sequences",
            "--config", "paper-10n",
            "--stage-cap", "3",
            "--kappa-stage", "3",
            "--table",
        )
        self.assertIn("r=1126488", output)

    def test_kappa_for_prefix_exits_one(self):
        with self.assertRaises(CommandError) as context:
            _call("kappa", config="tiny-235")
        self.assertEqual(context.exception.returncode, 1)

    def test_kappa_json(self):
        data = json.loads(_call("kappa", config="paper-10n"))
        self.assertTrue(data["certified"])

    def test_intertwine(self):
        data = json.loads(_call("intertwine", config="tiny-235", spot_check_samples=2))
        self.assertEqual([report["stage"] for report in data["intertwine"]], [0, 1, 2])
        self.assertTrue(all(report["passed"] for report in data["intertwine"]))

    def test_towers(self):
        data = json.loads(_call("towers", config="paper-10n", stage_cap=5, kappa_stage=5))
        self.assertEqual([tower["length"] for tower in data["towers"]], [2, 4, 8, 16, 32])

    def test_bott(self):
        data = json.loads(_call("bott", config="tiny-235"))
        self.assertEqual(data[2]["line_count"], "6")
        self.assertEqual(data[2]["trivial_rank"], "9")

    def test_density(self):
        data = json.loads(_call("density", config="tiny-235", samples=64))
        self.assertEqual(data["evaluation_points"], [0, 2, 8, 38])
        self.assertTrue(data["monotone"])

    def test_dot_to_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "stages.dot"
            _call(
                "dot",
                "--config", "paper-10n",
                "--depth", "2",
                "--with-cross-evals",
                "--output", str(path),
            )
            self.assertIn('"n1_0" -> "n2_3"', path.read_text(encoding="utf-8"))


class RunCommandTests(SimpleTestCase):
    def test_transcript_for_tiny_config(self):
        output = _call("run", config="tiny-235", no_write=True, samples=0)
        self.assertIn("certify: skipped, kappa is not certified", output)
        self.assertTrue(output.endswith("exit status 0\n"))

    def test_json_report_is_byte_identical(self):
        first = _call("run", config="tiny-235", no_write=True, json=True)
        second = _call("run", config="tiny-235", no_write=True, json=True)
        self.assertEqual(first, second)
        self.assertEqual(json.loads(first)["exit_status"], 0)

    def test_failed_run_exits_one(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "bad.json"
            path.write_text(
                json.dumps(
                    {
                        "schedule": {"kind": "prefix", "prefix": [1, 2, 3]},
                        "stage_cap": 3,
                        "kappa_stage": 3,
                        "rho": "0",
                    }
                ),
                encoding="utf-8",
            )
            with self.assertRaises(CommandError) as context:
                _call("run", config=str(path), no_write=True)
        self.assertEqual(context.exception.returncode, 1)
