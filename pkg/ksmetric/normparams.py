"""
Exponent pair (p, q) bound to a ball family.

    conjugate_exponent() --> q with 1/p + 1/q = 1
    NormParams.from_exponent() --> validated (p, q, family)
    exponent_of() --> the float exponent behind a number, a string or a NormParams
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import BadExponent
from .tools.typechecks import check_exponent


def conjugate_exponent(p: float) -> float:
    """
    q with 1/p + 1/q = 1; 1 <-> inf.
    """
    p = check_exponent(p)
    if p == 1:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


@dataclass(frozen=True)
class NormParams:
    """
    :param p: exponent in [1, inf]; ``math.inf`` encodes infinity.
    :type p: float

    :param q: conjugate exponent, derived from p.
    :type q: float

    :param family: ball family the KS norms are taken over.
    :type family: BallFamily, optional
    """

    p: float
    q: float
    family: Optional[object] = None

    def __post_init__(self):
        p = check_exponent(self.p)
        if float(self.q) != conjugate_exponent(p):
            raise BadExponent(f"q = {self.q} is not the conjugate of p = {p}", details={"p": p, "q": self.q})
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", float(self.q))

    @classmethod
    def from_exponent(cls, p, family=None, *, lower_open=False, allow_inf=True) -> "NormParams":
        p = check_exponent(p, lower_open=lower_open, allow_inf=allow_inf)
        return cls(p=p, q=conjugate_exponent(p), family=family)


def exponent_of(p, **checks) -> float:
    """
    Validated float exponent; a NormParams contributes its p. ``checks`` go to check_exponent.
    """
    if isinstance(p, NormParams):
        p = p.p
    return check_exponent(p, **checks)
