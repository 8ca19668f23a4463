import math

import numpy as np
from django.test import SimpleTestCase

from ...services.density_service import DensityService
from ...services.errors import GuardExceededError
from ...services.schedule_service import ScheduleService
from ..models.density_model import PointScheme
from ..models.schedule_model import ParameterSchedule


def fibonacci_sphere(count):
    index = np.arange(count) + 0.5
    z = 1.0 - 2.0 * index / count
    phi = np.pi * (1.0 + 5.0**0.5) * index
    radius = np.sqrt(1.0 - z * z)
    return np.stack([radius * np.cos(phi), radius * np.sin(phi), z], axis=1)


class PointSchemeTests(SimpleTestCase):
    def setUp(self):
        self.sequences = ScheduleService().derive_sequences(ParameterSchedule.geometric(1, 10), 3)

    def test_points_lie_on_the_sphere(self):
        points = PointScheme(seed=5).point(self.sequences, 2)
        self.assertEqual(points.shape, (1000, 3))
        np.testing.assert_allclose(np.linalg.norm(points, axis=1), 1.0)

    def test_stages_use_disjoint_stretches(self):
        scheme = PointScheme(seed=5)
        self.assertEqual(scheme.start_of(self.sequences, 2), 11)
        np.testing.assert_allclose(scheme.point(self.sequences, 1)[-1], scheme.stream(10, 1)[0])

    def test_seed_changes_the_points(self):
        self.assertFalse(
            np.allclose(
                PointScheme(seed=1).point(self.sequences, 1),
                PointScheme(seed=2).point(self.sequences, 1),
            )
        )

    def test_point_guard(self):
        with self.assertRaises(GuardExceededError):
            PointScheme().point(self.sequences, 3, guard=1000)


class DensityServiceTests(SimpleTestCase):
    def setUp(self):
        self.service = DensityService()
        self.sequences = ScheduleService().derive_sequences(ParameterSchedule.geometric(1, 10), 3)
        self.scheme = PointScheme(seed=20240601)

    def test_estimates_shrink_with_the_cutoff(self):
        report = self.service.density_diagnostic(
            self.scheme, self.sequences, 0, 2, samples=400, seed=9
        )
        self.assertEqual(report.cutoffs, (0, 1, 2))
        self.assertEqual(report.evaluation_points, (0, 10, 1010))
        self.assertEqual(report.estimates[0], math.pi)
        self.assertTrue(report.monotone)
        self.assertLess(report.final_estimate, 0.3)

    def test_estimate_is_bounded_by_fine_grid_covering_radius(self):
        # cutoff 2 (1010 points on S^2) is the anchor where the estimate drops below 0.3 rad
        report = self.service.density_diagnostic(
            self.scheme, self.sequences, 0, 2, samples=2000, seed=9
        )
        points = np.concatenate([self.scheme.point(self.sequences, m) for m in (1, 2)])
        radius = max(
            float(np.arccos(np.clip((chunk @ points.T).max(axis=1), -1.0, 1.0)).max())
            for chunk in np.array_split(fibonacci_sphere(40_000), 20)
        )
        self.assertLess(radius, 0.3)
        self.assertLessEqual(report.final_estimate, radius + 0.03)
        self.assertLess(report.final_estimate, 0.3)

    def test_workers_do_not_change_the_result(self):
        serial = self.service.density_diagnostic(
            self.scheme, self.sequences, 0, 2, samples=600, seed=4
        )
        threaded = self.service.density_diagnostic(
            self.scheme, self.sequences, 0, 2, samples=600, seed=4, workers=3
        )
        self.assertEqual(serial, threaded)

    def test_higher_target_stage(self):
        report = self.service.density_diagnostic(
            self.scheme, self.sequences, 1, 2, samples=50, seed=1
        )
        self.assertEqual(report.evaluation_points, (0, 100))
        self.assertTrue(report.monotone)

    def test_empty_evaluation_set_reports_pi(self):
        report = self.service.density_diagnostic(
            self.scheme, self.sequences, 1, 1, samples=10, seed=1
        )
        self.assertEqual(report.estimates, (math.pi,))

    def test_space_guard(self):
        with self.assertRaises(GuardExceededError):
            self.service.density_diagnostic(self.scheme, self.sequences, 2, 3, samples=10, seed=1)
