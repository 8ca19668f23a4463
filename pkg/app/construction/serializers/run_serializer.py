"""
Serializers for run configurations and run reports.
"""

from fractions import Fraction
from typing import Any, Dict

from django.conf import settings
from rest_framework import serializers

from ...abstract.base_fields import RationalField
from ...certificates.serializers.certificate_serializer import (
    CertificateSerializer,
    ReplayReportSerializer,
)
from ..models.run_model import DensitySettings, OutputPaths, RunConfig
from ..models.schedule_model import ScheduleKind
from .dynamics_serializer import (
    BottSummarySerializer,
    DensityReportSerializer,
    IntertwineReportSerializer,
    SpotCheckSerializer,
    TowerReportSerializer,
    UnitaryOrderSerializer,
)
from .schedule_serializer import (
    DerivedSequencesSerializer,
    KappaIntervalSerializer,
    ScheduleSerializer,
    ValidationReportSerializer,
)


class DensitySettingsSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    target_stage = serializers.IntegerField(min_value=0, default=0)
    cutoff = serializers.IntegerField(min_value=0, default=0)
    samples = serializers.IntegerField(min_value=0, default=0)
    workers = serializers.IntegerField(min_value=1, required=False, allow_null=True, default=None)

    def validate(self, attrs: Dict[str, Any]) -> DensitySettings:
        return DensitySettings(**attrs)


class OutputPathsSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    report = serializers.CharField(required=False, allow_null=True, default=None)
    transcript = serializers.CharField(required=False, allow_null=True, default=None)
    dot = serializers.CharField(required=False, allow_null=True, default=None)

    def validate(self, attrs: Dict[str, Any]) -> OutputPaths:
        return OutputPaths(**attrs)


class RunConfigSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    """
    Serializer for RunConfig.

    Rationals are strings; every referenced stage must be at most stage_cap.
    """

    name = serializers.CharField(required=False, allow_blank=True, default="")
    schedule = ScheduleSerializer()
    stage_cap = serializers.IntegerField(min_value=1)
    kappa_stage = serializers.IntegerField(min_value=0)
    rho = RationalField(min_value=Fraction(0))
    check_depth = serializers.IntegerField(min_value=0, required=False)
    seed = serializers.IntegerField(min_value=0, max_value=2**64 - 1, required=False)
    density = DensitySettingsSerializer(required=False)
    spot_check_samples = serializers.IntegerField(min_value=0, default=20)
    dot_depth = serializers.IntegerField(min_value=0, default=2)
    with_cross_evals = serializers.BooleanField(default=False)
    outputs = OutputPathsSerializer(required=False)

    def validate(self, attrs: Dict[str, Any]) -> RunConfig:
        """
        Check stage references against the cap and build the RunConfig.
        """
        cap = attrs["stage_cap"]
        density = attrs.get("density") or DensitySettings()
        stages = {
            "kappa_stage": attrs["kappa_stage"],
            "density.target_stage": density.target_stage,
            "density.cutoff": density.cutoff,
            "dot_depth": attrs["dot_depth"],
        }
        errors = {
            key: f"Stage {value} is beyond stage_cap {cap}."
            for key, value in stages.items()
            if value > cap
        }
        schedule = attrs["schedule"]
        if schedule.kind is ScheduleKind.PREFIX and cap > len(schedule.prefix):
            errors["stage_cap"] = (
                f"stage_cap {cap} is beyond the explicit prefix of length {len(schedule.prefix)}."
            )
        if errors:
            raise serializers.ValidationError(errors)

        return RunConfig(
            schedule=schedule,
            stage_cap=cap,
            kappa_stage=attrs["kappa_stage"],
            rho=attrs["rho"],
            check_depth=attrs.get("check_depth", settings.CONSTRUCTION["DEFAULT_CHECK_DEPTH"]),
            seed=attrs.get("seed", settings.CONSTRUCTION["DEFAULT_SEED"]),
            density=density,
            spot_check_samples=attrs["spot_check_samples"],
            dot_depth=attrs["dot_depth"],
            with_cross_evals=attrs["with_cross_evals"],
            outputs=attrs.get("outputs") or OutputPaths(),
            name=attrs["name"],
        )

    def to_representation(self, instance: RunConfig) -> Dict[str, Any]:
        return {
            "name": instance.name,
            "schedule": ScheduleSerializer(instance.schedule).data,
            "stage_cap": instance.stage_cap,
            "kappa_stage": instance.kappa_stage,
            "rho": RationalField().to_representation(instance.rho),
            "check_depth": instance.check_depth,
            "seed": instance.seed,
            "density": {
                "target_stage": instance.density.target_stage,
                "cutoff": instance.density.cutoff,
                "samples": instance.density.samples,
            },
            "spot_check_samples": instance.spot_check_samples,
            "dot_depth": instance.dot_depth,
            "with_cross_evals": instance.with_cross_evals,
        }


class RunReportSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    """
    Serializer for RunReport. Output paths and timings are left out so that the JSON
    only depends on the configuration and the seed.
    """

    schema_version = serializers.SerializerMethodField()
    config = RunConfigSerializer(read_only=True)
    validation = ValidationReportSerializer(read_only=True)
    sequences = DerivedSequencesSerializer(read_only=True, allow_null=True)
    kappa = KappaIntervalSerializer(read_only=True, allow_null=True)
    intertwine = IntertwineReportSerializer(many=True, read_only=True)
    spot_checks = SpotCheckSerializer(many=True, read_only=True)
    towers = TowerReportSerializer(many=True, read_only=True)
    unitary_orders = UnitaryOrderSerializer(many=True, read_only=True)
    bott = BottSummarySerializer(many=True, read_only=True)
    certificate = CertificateSerializer(read_only=True, allow_null=True)
    replay = ReplayReportSerializer(read_only=True, allow_null=True)
    density = DensityReportSerializer(read_only=True, allow_null=True)
    notes = serializers.ListField(child=serializers.CharField(), read_only=True)
    passed = serializers.BooleanField(read_only=True)
    exit_status = serializers.IntegerField(read_only=True)

    def get_schema_version(self, _instance) -> int:
        return settings.CONSTRUCTION["REPORT_SCHEMA_VERSION"]
