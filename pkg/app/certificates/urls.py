"""
URL configuration for the certificates.
"""

from django.urls import path
from ..certificates.views.certificates_view import CertificatesView
from ..certificates.views.replay_view import ReplayView

urlpatterns = [
    path("", CertificatesView.as_view(), name="certificates-certify"),
    path("replay/", ReplayView.as_view(), name="certificates-replay"),
]
