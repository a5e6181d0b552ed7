"""
Argument checks shared by the operations.
"""

from __future__ import annotations

import math

from ..errors import BadExponent


_INFINITY_SPELLINGS = {"inf", "infinity", "+inf", "∞", "oo"}


def check_number(arg):
    """
    Check for number (float or int).
    """
    try:
        float(arg)
        return True
    except (TypeError, ValueError):
        return False


def parse_exponent(arg) -> float:
    """
    Parse an exponent from a number or a string; infinity is ``math.inf``.
    """

    if isinstance(arg, str):
        text = arg.strip().lower()
        if text in _INFINITY_SPELLINGS:
            return math.inf
        if not check_number(text):
            raise BadExponent(f"exponent '{arg}' is not a number")
        arg = float(text)
    value = float(arg)
    if math.isnan(value):
        raise BadExponent("exponent is NaN")
    return value


def check_exponent(p, *, lower_open=False, allow_inf=True, name="p") -> float:
    """
    Validate p in [1, ∞] (or (1, ∞] when lower_open) and return it as a float.
    """

    p = parse_exponent(p)
    if p < 1 or (lower_open and p == 1):
        bound = "> 1" if lower_open else ">= 1"
        raise BadExponent(f"{name} must be {bound}, got {p}", details={name: p})
    if math.isinf(p) and not allow_inf:
        raise BadExponent(f"{name} must be finite", details={name: "inf"})
    return p


def format_exponent(p):
    """
    JSON-friendly exponent: floats stay floats, infinity becomes "inf".
    """
    return "inf" if math.isinf(p) else p
