"""
Utility functions shared by the services: rational parsing, canonical JSON and digests.
"""

import hashlib
import json
from fractions import Fraction
from typing import Any, Dict, Union

from .errors import ConfigError


def parse_rational(value: Union[str, int, Fraction]) -> Fraction:
    """
    Parse a rational given as "p/q", an integer string, an int or a Fraction.

    Floats are refused so no binary rounding leaks into exact checks.

    :param value: The value to parse.
    :return: The exact rational.
    """
    if isinstance(value, (bool, float)):
        raise ConfigError(f"Rationals must be given as strings, got {value!r}.")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"Cannot parse rational {value!r}.") from exc


def rational_to_dict(value: Fraction) -> Dict[str, str]:
    """
    Render a rational as numerator/denominator strings.
    """
    return {"numerator": str(value.numerator), "denominator": str(value.denominator)}


def rational_from_dict(data: Dict[str, Any]) -> Fraction:
    """
    Inverse of rational_to_dict.
    """
    try:
        return Fraction(int(data["numerator"]), int(data["denominator"]))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"Malformed rational {data!r}.") from exc


def canonical_json(payload: Any) -> str:
    """
    Serialize with sorted keys and a fixed indent so equal payloads give equal bytes.
    """
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def digest(payload: Any) -> str:
    """
    SHA-256 of the compact canonical JSON of a payload.
    """
    body = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(body.encode("utf-8")).hexdigest()
