from django.test import SimpleTestCase

from ...services.diagram_service import DiagramService
from ...services.errors import GuardExceededError
from ...services.schedule_service import ScheduleService
from ..models.schedule_model import ParameterSchedule


def _edges(dot, source=None, dotted=None):
    lines = [line.strip() for line in dot.splitlines() if "->" in line]
    if source is not None:
        lines = [line for line in lines if line.startswith(f'"{source}"')]
    if dotted is not None:
        lines = [line for line in lines if ("style=dotted" in line) == dotted]
    return lines


class DiagramServiceTests(SimpleTestCase):
    def setUp(self):
        self.service = DiagramService()
        self.sequences = ScheduleService().derive_sequences(ParameterSchedule.geometric(1, 10), 4)

    def test_depth_zero_is_a_single_node(self):
        dot = self.service.emit_dot(self.sequences, 0)
        self.assertIn('"n0_0" [label="&epsilon;"]', dot)
        self.assertEqual(_edges(dot), [])

    def test_depth_one_has_parallel_edges(self):
        dot = self.service.emit_dot(self.sequences, 1)
        self.assertEqual(len(_edges(dot, dotted=False)), 2)
        self.assertEqual(len(_edges(dot, dotted=True)), 2)
        self.assertIn('label="10"', dot)
        self.assertIn('"n1_1" [label="1"]', dot)

    def test_cross_evaluations_reach_every_node(self):
        dot = self.service.emit_dot(self.sequences, 2, with_cross_evals=True)
        for k in range(2):
            with self.subTest(k=k):
                targets = _edges(dot, source=f"n1_{k}", dotted=True)
                self.assertEqual(len(targets), 4)
        self.assertEqual(len(_edges(dot, source="n1_0", dotted=False)), 2)

    def test_labels_are_least_significant_digit_first(self):
        dot = self.service.emit_dot(self.sequences, 2)
        self.assertIn('"n2_1" [label="10"]', dot)
        self.assertIn('"n2_2" [label="01"]', dot)

    def test_chain_layout(self):
        dot = self.service.emit_dot(self.sequences, 2, chain=True)
        self.assertIn('"C0" -> "C1"', dot)
        self.assertEqual(len(_edges(dot)), 4)

    def test_depth_guard(self):
        with self.assertRaises(GuardExceededError):
            self.service.emit_dot(self.sequences, 5)
        with self.assertRaises(ValueError):
            self.service.emit_dot(self.sequences, -1)
