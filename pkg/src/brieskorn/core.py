"""Exponent tuples a = (a_0, ..., a_n) and the constants derived from them.

Times are kept as integers L with T = L * pi/2, so nothing here touches floats.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import ValidationError


class Shift(str, enum.Enum):
    POSITIVE = "PositiveShift"
    ZERO = "ZeroShift"
    NEGATIVE = "NegativeShift"


@dataclass(frozen=True)
class ExponentTuple:
    """A validated Brieskorn exponent vector.

    ``L_P`` is the Reeb period in units of pi/2, ``maslov`` is I(g) for the
    loop given by the normalized Reeb flow, and ``mu_P = 2 I(g)`` is the
    degree of the principal orbit class in product grading.
    """

    a: tuple[int, ...]
    n: int = field(init=False)
    dim_sigma: int = field(init=False)
    L_P: int = field(init=False)
    maslov: int = field(init=False)
    mu_P: int = field(init=False)

    def __post_init__(self):
        a = tuple(self.a)
        if len(a) < 2:
            raise ValidationError(f"need at least two exponents, got {list(a)}")
        for j, aj in enumerate(a):
            if isinstance(aj, bool) or not isinstance(aj, int):
                raise ValidationError(f"exponent a_{j}={aj!r} is not an integer")
            if aj < 2:
                raise ValidationError(f"exponent a_{j}={aj} must be >= 2")
        L_P = math.lcm(*a)
        maslov = sum(L_P // aj for aj in a) - L_P
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "n", len(a) - 1)
        object.__setattr__(self, "dim_sigma", 2 * (len(a) - 1) - 1)
        object.__setattr__(self, "L_P", L_P)
        object.__setattr__(self, "maslov", maslov)
        object.__setattr__(self, "mu_P", 2 * maslov)

    @property
    def reciprocal_excess(self) -> Fraction:
        """sum_j 1/a_j - 1 as an exact rational."""
        return sum((Fraction(1, aj) for aj in self.a), Fraction(0)) - 1

    def sub_tuple(self, indices: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted(self.a[j] for j in indices))

    def as_dict(self) -> dict:
        return {
            "exponents": list(self.a),
            "n": self.n,
            "dim_sigma": self.dim_sigma,
            "L_P": self.L_P,
            "maslov_index": self.maslov,
            "mu_P": self.mu_P,
            "shift": shift_classification(self).value,
        }


def new_exponent_tuple(a: Iterable[int]) -> ExponentTuple:
    return ExponentTuple(tuple(a))


def shift_classification(t: ExponentTuple) -> Shift:
    excess = t.reciprocal_excess
    if excess > 0:
        return Shift.POSITIVE
    if excess == 0:
        return Shift.ZERO
    return Shift.NEGATIVE
