from dataclasses import replace
from fractions import Fraction

from django.test import SimpleTestCase

from ...construction.models.schedule_model import ParameterSchedule
from ...services.comparison_service import ComparisonService
from ...services.errors import NotCertifiableError, StageMismatchError
from ...services.schedule_service import ScheduleService
from ..serializers.certificate_serializer import CertificateSerializer


class ComparisonServiceTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        schedule_service = ScheduleService()
        cls.schedule = ParameterSchedule.geometric(1, 10)
        cls.kappa = schedule_service.kappa_interval(cls.schedule, 6)
        cls.sequences = schedule_service.derive_sequences(cls.schedule, 10)

    def setUp(self):
        self.service = ComparisonService()

    def test_certificate_for_half(self):
        certificate = self.service.certify(Fraction(1, 2), self.sequences, self.kappa, 6)
        self.assertEqual((certificate.n, certificate.M, certificate.r_n), (1, 17, 11))
        self.assertTrue(all(line.holds() for line in certificate.inequalities))
        self.assertEqual([record.m for record in certificate.obstructions], [2, 3, 4, 5, 6, 7])
        self.assertTrue(all(record.obstruction.obstructed for record in certificate.obstructions))
        self.assertEqual(certificate.obstructions[0].rank, 17 * 102)
        self.assertEqual(len(certificate.digest), 64)

    def test_certificate_for_zero(self):
        certificate = self.service.certify(Fraction(0), self.sequences, self.kappa, 2)
        self.assertEqual((certificate.n, certificate.M), (1, 12))

    def test_rho_beyond_threshold(self):
        with self.assertRaises(NotCertifiableError):
            self.service.certify(Fraction(4, 5), self.sequences, self.kappa)

    def test_prefix_kappa_is_refused(self):
        schedule = ParameterSchedule.explicit((2, 3, 5))
        schedule_service = ScheduleService()
        with self.assertRaises(NotCertifiableError):
            self.service.certify(
                Fraction(0),
                schedule_service.derive_sequences(schedule, 3),
                schedule_service.kappa_interval(schedule, 3),
            )

    def test_replay_passes(self):
        certificate = self.service.certify(Fraction(1, 2), self.sequences, self.kappa, 6)
        report = self.service.replay(certificate, self.sequences)
        self.assertTrue(report.passed, report.failed_lines)
        self.assertTrue(report.line("bott_m7").passed)
        self.assertTrue(report.line("minimal_stage").passed)

    def test_replay_without_extra_stages(self):
        certificate = self.service.certify(Fraction(1, 2), self.sequences, self.kappa, 6)
        report = self.service.replay(certificate, self.sequences, check_depth=0)
        self.assertTrue(report.passed)
        self.assertFalse(any(line.name.startswith("rank_m") for line in report.lines))

    def test_tampered_multiplier_fails(self):
        certificate = self.service.certify(Fraction(1, 2), self.sequences, self.kappa, 6)
        report = self.service.replay(replace(certificate, M=22), self.sequences)
        self.assertFalse(report.passed)
        self.assertIn("digest", report.failed_lines)
        self.assertIn("universal", report.failed_lines)
        self.assertIn("trace_upper", report.failed_lines)

    def test_resigned_tampering_still_fails(self):
        certificate = self.service.certify(Fraction(1, 2), self.sequences, self.kappa, 6)
        tampered = replace(certificate, M=22)
        tampered = replace(tampered, digest=self.service.digest_of(tampered))
        report = self.service.replay(tampered, self.sequences)
        self.assertTrue(report.line("digest").passed)
        self.assertIn("transcript", report.failed_lines)
        self.assertIn("rank_m2", report.failed_lines)

    def test_tampered_kappa_fails(self):
        certificate = self.service.certify(Fraction(1, 2), self.sequences, self.kappa, 6)
        tampered = replace(certificate, kappa_lo=Fraction(99, 100))
        tampered = replace(tampered, digest=self.service.digest_of(tampered))
        report = self.service.replay(tampered, self.sequences)
        self.assertIn("kappa_lower_bound", report.failed_lines)

    def test_serialized_certificate_replays(self):
        certificate = self.service.certify(Fraction(1, 2), self.sequences, self.kappa, 3)
        serializer = CertificateSerializer(data=CertificateSerializer(certificate).data)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        restored = serializer.validated_data
        self.assertEqual(restored, certificate)
        self.assertTrue(self.service.replay(restored, self.sequences).passed)

    def test_trace_gap(self):
        certificate = self.service.certify(Fraction(1, 2), self.sequences, self.kappa, 6)
        self.assertEqual(self.service.trace_gap(certificate, 3), Fraction(6, 11))
        self.assertEqual(self.service.trace_gap(certificate, 4, self.sequences), Fraction(6, 11))
        with self.assertRaises(StageMismatchError):
            self.service.trace_gap(certificate, 0)

    def test_negative_rho_is_refused(self):
        for rho in (Fraction(-3, 2), Fraction(-3), Fraction(-1, 100)):
            with self.assertRaises(NotCertifiableError):
                self.service.certify(rho, self.sequences, self.kappa, 2)

    def test_inequality_lines(self):
        certificate = self.service.certify(Fraction(1, 2), self.sequences, self.kappa, 2)
        self.assertEqual(
            [line.name for line in certificate.inequalities],
            ["rho_nonnegative", "stage_choice", "trace_lower", "trace_upper"],
        )

    def test_replay_rejects_negative_rho_and_empty_witness(self):
        certificate = self.service.certify(Fraction(1, 2), self.sequences, self.kappa, 2)
        for M in (0, -11):  # pylint: disable=invalid-name
            tampered = replace(certificate, rho=Fraction(-3, 2), M=M)
            tampered = replace(tampered, digest=self.service.digest_of(tampered))
            report = self.service.replay(tampered, self.sequences)
            self.assertFalse(report.passed)
            self.assertIn("rho_nonnegative", report.failed_lines)
            self.assertIn("witness_rank", report.failed_lines)
            self.assertFalse(any(line.name.startswith("rank_m") for line in report.lines))

    def test_replay_checks_obstruction_stages_and_argument(self):
        certificate = self.service.certify(Fraction(1, 2), self.sequences, self.kappa, 3)
        tampered = replace(certificate, obstructions=(), universal_argument="anything")
        tampered = replace(tampered, digest=self.service.digest_of(tampered))
        report = self.service.replay(tampered, self.sequences)
        self.assertTrue(report.line("digest").passed)
        self.assertIn("obstruction_stages", report.failed_lines)
        self.assertIn("universal_argument", report.failed_lines)
        original = self.service.replay(certificate, self.sequences)
        self.assertTrue(original.line("obstruction_stages").passed)

    def test_shifted_obstruction_stages_fail(self):
        certificate = self.service.certify(Fraction(1, 2), self.sequences, self.kappa, 3)
        tampered = replace(certificate, obstructions=certificate.obstructions[1:])
        tampered = replace(tampered, digest=self.service.digest_of(tampered))
        self.assertIn(
            "obstruction_stages", self.service.replay(tampered, self.sequences).failed_lines
        )

    def test_smaller_rho_keeps_the_witness(self):
        certificate = self.service.certify(Fraction(1, 2), self.sequences, self.kappa, 3)
        for rho in (Fraction(49, 100), Fraction(1, 4), Fraction(0)):
            lines = self.service.inequalities(
                rho, certificate.kappa_lo, certificate.M, certificate.r_n
            )
            self.assertTrue(all(line.holds() for line in lines), rho)
        weaker = replace(
            certificate,
            rho=Fraction(0),
            inequalities=self.service.inequalities(
                Fraction(0), certificate.kappa_lo, certificate.M, certificate.r_n
            ),
        )
        weaker = replace(weaker, digest=self.service.digest_of(weaker))
        report = self.service.replay(weaker, self.sequences)
        self.assertTrue(report.passed, report.failed_lines)
