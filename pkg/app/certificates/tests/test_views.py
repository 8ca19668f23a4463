from django.urls import reverse
from rest_framework import status
from rest_framework.test import APISimpleTestCase

POWERS_OF_TEN = {"kind": "geometric", "coefficient": 1, "base": 10}


class CertificatesViewTests(APISimpleTestCase):
    def _certify(self, **body):
        return self.client.post(
            reverse("certificates-certify"),
            {"schedule": POWERS_OF_TEN, "rho": "1/2", "check_depth": 3, **body},
            format="json",
        )

    def test_certify(self):
        response = self._certify()
        self.assertEqual(response.status_code, status.HTTP_201_CREATED)
        self.assertEqual(response.data["n"], 1)
        self.assertEqual(response.data["M"], "17")
        self.assertEqual(len(response.data["obstructions"]), 3)

    def test_rho_too_large(self):
        response = self._certify(rho="9/10")
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertEqual(response.json()["error"], "NotCertifiableError")

    def test_replay_round_trip(self):
        certificate = self._certify().data
        response = self.client.post(
            reverse("certificates-replay"), {"certificate": certificate}, format="json"
        )
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertTrue(response.data["passed"])

    def test_replay_detects_tampering(self):
        certificate = dict(self._certify().data)
        certificate["M"] = "22"
        response = self.client.post(
            reverse("certificates-replay"),
            {"certificate": certificate, "check_depth": 1},
            format="json",
        )
        self.assertEqual(response.status_code, status.HTTP_422_UNPROCESSABLE_ENTITY)
        self.assertIn("digest", response.data["failed_lines"])

    def test_malformed_certificate(self):
        response = self.client.post(
            reverse("certificates-replay"), {"certificate": {"n": 1}}, format="json"
        )
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)

    def test_negative_rho(self):
        response = self._certify(rho="-3")
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)

    def test_replay_refuses_empty_witness(self):
        certificate = dict(self._certify().data)
        certificate["M"] = "0"
        response = self.client.post(
            reverse("certificates-replay"), {"certificate": certificate}, format="json"
        )
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
