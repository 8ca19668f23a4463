import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase


def _call(*args, **options):
    stdout = StringIO()
    call_command(*args, stdout=stdout, stderr=StringIO(), **options)
    return stdout.getvalue()


class CertifyCommandTests(SimpleTestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)
        self.path = Path(self.directory.name) / "certificate.json"

    def test_certify_then_replay(self):
        _call("certify", config="paper-10n", output=str(self.path))
        certificate = json.loads(self.path.read_text(encoding="utf-8"))
        self.assertEqual((certificate["n"], certificate["M"]), (1, "17"))

        report = json.loads(_call("replay", str(self.path)))
        self.assertTrue(report["passed"])
        self.assertEqual(report["check_depth"], 6)

    def test_certify_with_rho_zero(self):
        certificate = json.loads(_call("certify", config="paper-10n", rho="0", check_depth=2))
        self.assertEqual(certificate["M"], "12")

    def test_certify_refuses_prefix_schedules(self):
        with self.assertRaises(CommandError) as context:
            _call("certify", config="tiny-235")
        self.assertEqual(context.exception.returncode, 1)

    def test_replay_of_tampered_file_exits_one(self):
        _call("certify", config="paper-10n", output=str(self.path))
        certificate = json.loads(self.path.read_text(encoding="utf-8"))
        certificate["M"] = "22"
        self.path.write_text(json.dumps(certificate), encoding="utf-8")
        with self.assertRaises(CommandError) as context:
            _call("replay", str(self.path), check_depth=0)
        self.assertEqual(context.exception.returncode, 1)
        self.assertIn("digest", str(context.exception))

    def test_certify_with_negative_rho_exits_two(self):
        for rho in ("-3", "-3/2"):
            with self.assertRaises(CommandError) as context:
                _call("certify", config="paper-10n", rho=rho)
            self.assertEqual(context.exception.returncode, 2)

    def test_replay_of_certificate_without_witness_exits_two(self):
        _call("certify", config="paper-10n", check_depth=1, output=str(self.path))
        certificate = json.loads(self.path.read_text(encoding="utf-8"))
        certificate["M"] = "0"
        self.path.write_text(json.dumps(certificate), encoding="utf-8")
        with self.assertRaises(CommandError) as context:
            _call("replay", str(self.path))
        self.assertEqual(context.exception.returncode, 2)

    def test_replay_of_unreadable_file_exits_two(self):
        self.path.write_text("{not json", encoding="utf-8")
        with self.assertRaises(CommandError) as context:
            _call("replay", str(self.path))
        self.assertEqual(context.exception.returncode, 2)

    def test_replay_of_missing_file_exits_two(self):
        with self.assertRaises(CommandError) as context:
            _call("replay", str(self.path))
        self.assertEqual(context.exception.returncode, 2)
