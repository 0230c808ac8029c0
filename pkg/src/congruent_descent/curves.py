"""The curve family y^2 = x^3 + a x^2 + b x over the integers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class SingularCurveError(ValueError):
    pass


@dataclass(frozen=True)
class Curve:
    a: int
    b: int

    def __post_init__(self) -> None:
        if self.b == 0 or self.a * self.a - 4 * self.b == 0:
            raise SingularCurveError(f"y^2 = x^3 + {self.a}x^2 + {self.b}x is singular")

    @classmethod
    def congruent(cls, n: int) -> Curve:
        """y^2 = x^3 - n^2 x, whose rank is positive exactly when n is congruent."""
        return cls(0, -n * n)

    @property
    def isogenous_b(self) -> int:
        return self.a * self.a - 4 * self.b

    def rhs(self, x: Fraction | int) -> Fraction:
        x = Fraction(x)
        return x * x * x + self.a * x * x + self.b * x

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b}

    def __str__(self) -> str:
        return f"y^2 = x^3 + {self.a}x^2 + {self.b}x"
