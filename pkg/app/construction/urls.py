"""
URL configuration for the construction.
"""

from django.urls import path
from ..construction.views.sequences_view import SequencesView
from ..construction.views.kappa_view import KappaView
from ..construction.views.diagram_view import DiagramView

urlpatterns = [
    path("sequences/", SequencesView.as_view(), name="construction-sequences"),
    path("kappa/", KappaView.as_view(), name="construction-kappa"),
    path("diagram/", DiagramView.as_view(), name="construction-diagram"),
]
