import json
import tempfile
from pathlib import Path

from django.conf import settings
from django.test import SimpleTestCase, override_settings

from ...services.errors import ConfigError
from ...services.pipeline_service import PipelineService
from ..models.run_model import UnitaryOrder


class PowersOfTenRunTests(SimpleTestCase):
    """
    One full run of the bundled powers-of-ten config, shared by the assertions below.
    """

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.service = PipelineService()
        cls.config = cls.service.load_config("paper-10n")
        cls.report = cls.service.run(cls.config)

    def test_every_exact_check_passes(self):
        self.assertTrue(self.report.passed)
        self.assertEqual(self.report.exit_status, 0)
        self.assertEqual(self.report.notes, ())

    def test_steps_cover_the_expected_stages(self):
        self.assertEqual([r.stage for r in self.report.intertwine], list(range(9)))
        self.assertEqual([t.stage for t in self.report.towers], list(range(1, 11)))
        self.assertEqual([b.stage for b in self.report.bott], list(range(10)))
        self.assertTrue(all(order.passed for order in self.report.unitary_orders))

    def test_spot_checks_respect_the_dense_guard(self):
        measured = [spot for spot in self.report.spot_checks if spot.deviation is not None]
        refused = [spot for spot in self.report.spot_checks if spot.deviation is None]
        self.assertEqual([spot.stage for spot in measured], [0, 1])
        self.assertTrue(all(spot.deviation <= 1e-9 for spot in measured))
        self.assertEqual(len(refused), 7)

    def test_certificate_and_replay(self):
        self.assertEqual((self.report.certificate.n, self.report.certificate.M), (1, 17))
        self.assertTrue(self.report.replay.passed)

    def test_density_is_a_diagnostic(self):
        self.assertTrue(self.report.density.monotone)
        self.assertLess(self.report.density.final_estimate, 0.3)

    def test_report_is_deterministic(self):
        again = self.service.run(self.config)
        self.assertEqual(self.service.render_report(again), self.service.render_report(self.report))

    def test_report_json_leaves_out_timings(self):
        data = json.loads(self.service.render_report(self.report))
        self.assertEqual(data["schema_version"], settings.CONSTRUCTION["REPORT_SCHEMA_VERSION"])
        self.assertNotIn("timings", data)
        self.assertNotIn("outputs", data["config"])
        self.assertEqual(data["sequences"]["rows"][3]["r"], "1126488")

    def test_transcript_mentions_timings_and_status(self):
        transcript = self.service.render_transcript(self.report)
        self.assertIn("timings", transcript)
        self.assertIn("certificate rho=1/2 n=1 M=17", transcript)
        self.assertTrue(transcript.endswith("exit status 0\n"))


class TinyRunTests(SimpleTestCase):
    def setUp(self):
        self.service = PipelineService()

    def test_prefix_schedule_skips_certification(self):
        report = self.service.run(self.service.load_config("tiny-235"))
        self.assertTrue(report.passed)
        self.assertFalse(report.kappa.certified)
        self.assertIsNone(report.certificate)
        self.assertIn("certify: skipped, kappa is not certified", report.notes)
        self.assertEqual(len(report.intertwine), 3)
        self.assertTrue(all(summary.matches for summary in report.bott))
        self.assertEqual(report.density.evaluation_points, (0, 2, 8, 38))

    def test_growth_violation_fails_the_run(self):
        config = self.service.parse_config(
            {
                "schedule": {"kind": "prefix", "prefix": [1, 2, 3]},
                "stage_cap": 3,
                "kappa_stage": 3,
                "rho": "0",
            }
        )
        report = self.service.run(config)
        self.assertFalse(report.passed)
        self.assertEqual(report.exit_status, 1)
        self.assertIsNone(report.sequences)
        self.assertIn("growth", report.validation.failed_lines)

    def test_outputs_are_written_under_the_report_dir(self):
        with tempfile.TemporaryDirectory() as directory:
            construction = {**settings.CONSTRUCTION, "REPORT_DIR": directory}
            with override_settings(CONSTRUCTION=construction):
                config = self.service.load_config("tiny-235", {"density": {"samples": 0}})
                written = self.service.write_outputs(self.service.run(config))
            self.assertEqual(set(written), {"report", "transcript", "dot"})
            for path in written.values():
                self.assertTrue(Path(path).is_file())
                self.assertTrue(path.startswith(directory))


class ConfigTests(SimpleTestCase):
    def setUp(self):
        self.service = PipelineService()

    def test_bundled_configs(self):
        self.assertEqual(self.service.bundled_configs(), ["paper-10n", "tiny-235"])

    def test_overrides_merge_nested_settings(self):
        config = self.service.load_config("tiny-235", {"density": {"samples": 7}, "seed": 3})
        self.assertEqual(config.density.samples, 7)
        self.assertEqual(config.density.cutoff, 3)
        self.assertEqual(config.seed, 3)
        self.assertEqual(config.name, "tiny-235")

    def test_unknown_config(self):
        with self.assertRaises(ConfigError):
            self.service.load_config("no-such-config")

    def test_stage_beyond_cap(self):
        with self.assertRaises(ConfigError) as context:
            self.service.load_config("tiny-235", {"kappa_stage": 5})
        self.assertIn("kappa_stage", str(context.exception))

    def test_cap_beyond_prefix(self):
        with self.assertRaises(ConfigError):
            self.service.load_config("tiny-235", {"stage_cap": 4, "kappa_stage": 1})

    def test_rho_must_be_rational(self):
        with self.assertRaises(ConfigError):
            self.service.load_config("tiny-235", {"rho": "one half"})

    def test_defaults_from_settings(self):
        config = self.service.parse_config(
            {
                "schedule": {"kind": "geometric", "coefficient": 1, "base": 10},
                "stage_cap": 4,
                "kappa_stage": 4,
                "rho": "1/2",
            }
        )
        self.assertEqual(config.check_depth, settings.CONSTRUCTION["DEFAULT_CHECK_DEPTH"])
        self.assertEqual(config.seed, settings.CONSTRUCTION["DEFAULT_SEED"])


class UnitaryOrderTests(SimpleTestCase):
    def test_order_must_divide_half_period(self):
        order = UnitaryOrder(stage=3, order=8, automorphism_order=8)
        self.assertTrue(order.periodic)
        self.assertFalse(order.divides_half_period)
        self.assertFalse(order.passed)

    def test_order_dividing_half_period_passes(self):
        self.assertTrue(UnitaryOrder(stage=3, order=4, automorphism_order=8).passed)
        self.assertTrue(UnitaryOrder(stage=1, order=1, automorphism_order=2).passed)
        self.assertFalse(UnitaryOrder(stage=3, order=4, automorphism_order=4).passed)


class LoggingSettingsTests(SimpleTestCase):
    def test_verbose_format_names_the_logger(self):
        verbose = settings.LOGGING["formatters"]["verbose"]["format"]
        self.assertIn("{name}", verbose)
        self.assertNotIn("{module}", verbose)
