from django.urls import reverse
from rest_framework import status
from rest_framework.test import APISimpleTestCase

POWERS_OF_TEN = {"kind": "geometric", "coefficient": 1, "base": 10}


class SequencesViewTests(APISimpleTestCase):
    def test_sequence_table(self):
        response = self.client.post(
            reverse("construction-sequences"),
            {"schedule": POWERS_OF_TEN, "cap": 3},
            format="json",
        )
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        rows = response.data["sequences"]["rows"]
        self.assertEqual(rows[3]["r"], "1126488")
        self.assertEqual(rows[3]["s"], "1000000")
        self.assertEqual(rows[1]["ratio"], {"numerator": "10", "denominator": "11"})
        self.assertTrue(response.data["validation"]["passed"])

    def test_failing_schedule(self):
        response = self.client.post(
            reverse("construction-sequences"),
            {"schedule": {"kind": "prefix", "prefix": [1, 2]}, "cap": 2},
            format="json",
        )
        self.assertEqual(response.status_code, status.HTTP_422_UNPROCESSABLE_ENTITY)
        self.assertIsNone(response.data["sequences"])
        self.assertIn("growth", response.data["validation"]["failed_lines"])

    def test_malformed_schedule(self):
        response = self.client.post(
            reverse("construction-sequences"),
            {"schedule": {"kind": "geometric", "base": 2}, "cap": 2},
            format="json",
        )
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)


class KappaViewTests(APISimpleTestCase):
    def test_certified_interval(self):
        response = self.client.post(
            reverse("construction-kappa"), {"schedule": POWERS_OF_TEN, "stage": 6}, format="json"
        )
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertTrue(response.data["certified"])
        self.assertTrue(response.data["above_half"])
        self.assertTrue(response.data["lo_decimal"].startswith("0.88682"))

    def test_prefix_interval_is_flagged(self):
        response = self.client.post(
            reverse("construction-kappa"),
            {"schedule": {"kind": "prefix", "prefix": [2, 3, 5]}, "stage": 3},
            format="json",
        )
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertFalse(response.data["certified"])
        self.assertIsNone(response.data["tail_bound"])


class DiagramViewTests(APISimpleTestCase):
    def test_dot_source(self):
        response = self.client.post(
            reverse("construction-diagram"),
            {"schedule": POWERS_OF_TEN, "depth": 1},
            format="json",
        )
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertTrue(response.data["dot"].startswith("digraph stages {"))

    def test_depth_guard_answers_413(self):
        response = self.client.post(
            reverse("construction-diagram"),
            {"schedule": POWERS_OF_TEN, "depth": 5},
            format="json",
        )
        self.assertEqual(response.status_code, status.HTTP_413_REQUEST_ENTITY_TOO_LARGE)
        self.assertEqual(response.json()["error"], "GuardExceededError")
