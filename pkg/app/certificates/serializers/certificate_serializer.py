"""
Serializers for comparison certificates, obstructions and replay reports.

The certificate schema is stable: replay reads exactly what certify writes.
"""

from fractions import Fraction
from typing import Any, Dict

from django.conf import settings
from rest_framework import serializers

from ...abstract.base_fields import BigIntegerStringField, EnumValueField, RationalField
from ...abstract.base_report_serializer import BaseReportSerializer
from ...construction.serializers.schedule_serializer import ScheduleSerializer
from ..models.certificate_model import (
    ComparisonCertificate,
    InequalityLine,
    Relation,
    StageObstruction,
)
from ..models.cohomology_model import EmbeddingVerdict, ObstructionCertificate


class InequalityLineSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    """
    Serializer for InequalityLine.
    """

    name = serializers.CharField()
    lhs = RationalField()
    relation = EnumValueField(Relation)
    rhs = RationalField()

    def validate(self, attrs: Dict[str, Any]) -> InequalityLine:
        return InequalityLine(**attrs)


class ObstructionSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    """
    Serializer for ObstructionCertificate.
    """

    k = BigIntegerStringField()
    r = BigIntegerStringField()
    verdict = EnumValueField(EmbeddingVerdict)
    witness_degree = BigIntegerStringField()
    coefficient = serializers.IntegerField()

    def validate(self, attrs: Dict[str, Any]) -> ObstructionCertificate:
        return ObstructionCertificate(**attrs)


class StageObstructionSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    """
    Serializer for the per-stage rank witness.
    """

    m = serializers.IntegerField(min_value=0)
    rank = BigIntegerStringField()
    obstruction = ObstructionSerializer()

    def validate(self, attrs: Dict[str, Any]) -> StageObstruction:
        return StageObstruction(**attrs)


class CertificateSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    """
    Serializer for ComparisonCertificate.
    """

    schema_version = serializers.SerializerMethodField()
    schedule = ScheduleSerializer()
    rho = RationalField(min_value=Fraction(0))
    kappa_lo = RationalField()
    kappa_stage = serializers.IntegerField(min_value=0)
    n = serializers.IntegerField(min_value=0)
    M = BigIntegerStringField(min_value=1)
    r_n = BigIntegerStringField(min_value=1)
    check_depth = serializers.IntegerField(min_value=0)
    inequalities = InequalityLineSerializer(many=True)
    obstructions = StageObstructionSerializer(many=True)
    universal_argument = serializers.CharField()
    digest = serializers.CharField(required=False, allow_blank=True, default="")

    def get_schema_version(self, _instance) -> int:
        return settings.CONSTRUCTION["REPORT_SCHEMA_VERSION"]

    def validate(self, attrs: Dict[str, Any]) -> ComparisonCertificate:
        return ComparisonCertificate(
            schedule=attrs["schedule"],
            rho=attrs["rho"],
            kappa_lo=attrs["kappa_lo"],
            kappa_stage=attrs["kappa_stage"],
            n=attrs["n"],
            M=attrs["M"],
            r_n=attrs["r_n"],
            check_depth=attrs["check_depth"],
            inequalities=tuple(attrs["inequalities"]),
            obstructions=tuple(attrs["obstructions"]),
            universal_argument=attrs["universal_argument"],
            digest=attrs.get("digest", ""),
        )

    @classmethod
    def body(cls, certificate: ComparisonCertificate) -> Dict[str, Any]:
        """
        Everything the digest covers: the full representation without the digest.
        """
        data = dict(cls(certificate).data)
        data.pop("digest", None)
        return data


class ReplayReportSerializer(BaseReportSerializer):  # pylint: disable=abstract-method
    """
    Serializer for ReplayReport.
    """

    n = serializers.IntegerField(read_only=True)
    check_depth = serializers.IntegerField(read_only=True)
    digest = serializers.CharField(read_only=True, allow_null=True)


class CertifyRequestSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    """
    Input for certify: a schedule, rho and the stages to use.
    """

    schedule = ScheduleSerializer()
    rho = RationalField(min_value=Fraction(0))
    kappa_stage = serializers.IntegerField(min_value=0, default=6)
    check_depth = serializers.IntegerField(min_value=0, default=6)


class ReplayRequestSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    """
    Input for replay: a certificate and an optional check depth.
    """

    certificate = CertificateSerializer()
    check_depth = serializers.IntegerField(min_value=0, required=False)
