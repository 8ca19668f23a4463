"""
Serializer fields shared by the construction and certificate apps.

Exact values never pass through floats: rationals travel as numerator/denominator
strings and big integers as decimal strings.
"""

from fractions import Fraction
from typing import Optional

from rest_framework import serializers

from ..services.errors import ConfigError
from ..services.utils import parse_rational, rational_from_dict, rational_to_dict


class RationalField(serializers.Field):
    """
    Reads "p/q" strings or {"numerator", "denominator"} objects; writes the object form.
    """

    default_error_messages = {
        "invalid": "Expected a rational as 'p/q' or a numerator/denominator object.",
        "min_value": "Ensure this value is greater than or equal to {min_value}.",
    }

    def __init__(self, min_value: Optional[Fraction] = None, **kwargs) -> None:
        self.min_value = min_value
        super().__init__(**kwargs)

    def to_representation(self, value: Fraction):
        return rational_to_dict(Fraction(value))

    def to_internal_value(self, data) -> Fraction:
        try:
            if isinstance(data, dict):
                value = rational_from_dict(data)
            else:
                value = parse_rational(data)
        except ConfigError:
            self.fail("invalid")
        if self.min_value is not None and value < self.min_value:
            self.fail("min_value", min_value=self.min_value)
        return value


class BigIntegerStringField(serializers.Field):
    """
    Integers of any size as decimal strings.
    """

    default_error_messages = {
        "invalid": "Expected an integer written as a string.",
        "min_value": "Ensure this value is greater than or equal to {min_value}.",
    }

    def __init__(self, min_value: Optional[int] = None, **kwargs) -> None:
        self.min_value = min_value
        super().__init__(**kwargs)

    def to_representation(self, value: int) -> str:
        return str(int(value))

    def to_internal_value(self, data) -> int:
        if isinstance(data, (bool, float)):
            self.fail("invalid")
        try:
            value = int(str(data).strip())
        except ValueError:
            self.fail("invalid")
        if self.min_value is not None and value < self.min_value:
            self.fail("min_value", min_value=self.min_value)
        return value


class EnumValueField(serializers.ChoiceField):
    """
    Choice field over a str-valued Enum that reads and writes the plain value.
    """

    def __init__(self, enum, **kwargs) -> None:
        self.enum = enum
        super().__init__(choices=[member.value for member in enum], **kwargs)

    def to_representation(self, value) -> str:
        return self.enum(value).value

    def to_internal_value(self, data):
        return self.enum(super().to_internal_value(data))
