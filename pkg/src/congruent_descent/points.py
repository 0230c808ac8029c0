"""Rational points on y^2 = x^3 + a x^2 + b x: group law, the alpha map,
right triangles for congruent numbers, and a brute-force point search.

The point search deliberately does not share code with the homogeneous-space
search in :mod:`congruent_descent.descent`; tests use it as an oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import is_rational_square, square_class, squarefree_divisors
from .curves import Curve


@dataclass(frozen=True)
class RationalPoint:
    x: Fraction = Fraction(0)
    y: Fraction = Fraction(0)
    at_infinity: bool = False

    @classmethod
    def of(cls, x, y) -> RationalPoint:
        return cls(Fraction(x), Fraction(y))

    def to_json(self) -> dict:
        if self.at_infinity:
            return {"infinity": True}
        return {"x": str(self.x), "y": str(self.y)}

    def __str__(self) -> str:
        return "O" if self.at_infinity else f"({self.x}, {self.y})"


INFINITY = RationalPoint(at_infinity=True)


@dataclass(frozen=True)
class RightTriangle:
    leg_a: Fraction
    leg_b: Fraction
    hyp: Fraction

    @property
    def area(self) -> Fraction:
        return self.leg_a * self.leg_b / 2

    def to_json(self) -> dict:
        return {"leg_a": str(self.leg_a), "leg_b": str(self.leg_b), "hyp": str(self.hyp)}


def on_curve(E: Curve, P: RationalPoint) -> bool:
    if P.at_infinity:
        return True
    return P.y * P.y == E.rhs(P.x)


def negate(E: Curve, P: RationalPoint) -> RationalPoint:
    if P.at_infinity:
        return P
    return RationalPoint(P.x, -P.y)


def add(E: Curve, P: RationalPoint, Q: RationalPoint) -> RationalPoint:
    """Chord-tangent addition with O at infinity."""
    if P.at_infinity:
        return Q
    if Q.at_infinity:
        return P
    if P.x == Q.x:
        if P.y + Q.y == 0:
            return INFINITY
        # doubling; y != 0 here since y = -y was handled above
        slope = (3 * P.x * P.x + 2 * E.a * P.x + E.b) / (2 * P.y)
    else:
        slope = (Q.y - P.y) / (Q.x - P.x)
    x3 = slope * slope - E.a - P.x - Q.x
    y3 = slope * (P.x - x3) - P.y
    return RationalPoint(x3, y3)


def multiply(E: Curve, k: int, P: RationalPoint) -> RationalPoint:
    if k < 0:
        return multiply(E, -k, negate(E, P))
    result, addend = INFINITY, P
    while k:
        if k & 1:
            result = add(E, result, addend)
        addend = add(E, addend, addend)
        k >>= 1
    return result


def alpha_map(E: Curve, P: RationalPoint) -> int:
    """Image of P in Q*/Q*^2: 1 at O, class(b) at (0, 0), class(x) elsewhere."""
    if P.at_infinity:
        return 1
    if P.x == 0:
        return square_class(E.b)
    return square_class(P.x)


def isogeny(E: Curve, P: RationalPoint) -> RationalPoint:
    """The 2-isogeny E -> (-2a, a^2 - 4b): (x, y) -> (y^2/x^2, y (x^2 - b)/x^2), killing (0, 0)."""
    if P.at_infinity or P.x == 0:
        return INFINITY
    x, y = P.x, P.y
    return RationalPoint(y * y / (x * x), y * (x * x - E.b) / (x * x))


def pull_back(E: Curve, P: RationalPoint) -> RationalPoint:
    """Send a point of the isogenous curve back to E.

    Applying the isogeny twice lands on (4a, 16b), which is E rescaled by
    (x, y) -> (x/4, y/8).
    """
    bar = Curve(-2 * E.a, E.a * E.a - 4 * E.b)
    Q = isogeny(bar, P)
    if Q.at_infinity:
        return Q
    R = RationalPoint(Q.x / 4, Q.y / 8)
    if not on_curve(E, R):
        raise ArithmeticError(f"pull back of {P} is not on {E}")
    return R


def triangle_from_point(n: int, P: RationalPoint) -> RightTriangle:
    """Right triangle of area n from a point of y^2 = x^3 - n^2 x with y != 0."""
    if P.at_infinity or P.y == 0:
        raise ValueError("2-torsion points do not give a triangle")
    E = Curve.congruent(n)
    if not on_curve(E, P):
        raise ValueError(f"{P} is not on {E}")
    x, y = P.x, abs(P.y)
    tri = RightTriangle(abs(x * x - n * n) / y, abs(2 * n * x) / y, (x * x + n * n) / y)
    if tri.leg_a**2 + tri.leg_b**2 != tri.hyp**2 or tri.area != n:
        raise ArithmeticError(f"triangle check failed for {P}")
    return tri


def _sqrt_fraction(q: Fraction) -> Fraction:
    return Fraction(math.isqrt(q.numerator), math.isqrt(q.denominator))


def point_search(E: Curve, height_bound: int) -> list[RationalPoint]:
    """All points with x = d m^2 / e^2, d a squarefree divisor of b, 1 <= m, e <= bound.

    Includes O and the rational 2-torsion. Candidates are pre-filtered in floating
    point and then confirmed exactly with Fractions, so nothing approximate
    reaches the output.
    """
    if height_bound < 1:
        raise ValueError("height_bound must be >= 1")
    # keyed by the point, valued by its (e, m) sort key
    found: dict[RationalPoint, tuple[int, int]] = {P: (0, 0) for P in _two_torsion(E)}

    ms = np.arange(1, height_bound + 1, dtype=np.float64)
    coprime = np.gcd.outer(np.arange(1, height_bound + 1), np.arange(1, height_bound + 1)) == 1
    for d in squarefree_divisors(E.b):
        # x = d (m/e)^2, and y^2 e^6 / m^2 = d (d^2 m^4 + a d m^2 e^2 + b e^4)
        mm = ms[None, :] ** 2
        ee = ms[:, None] ** 2
        cubic = d * (d * d * mm * mm + E.a * d * mm * ee + E.b * ee * ee)
        ok = coprime & (cubic >= 0)
        root = np.sqrt(np.where(ok, cubic, 0.0))
        tol = np.maximum(1e-6, root * 1e-12)
        ok &= np.abs(root - np.round(root)) <= tol
        for ei, mi in zip(*np.nonzero(ok)):
            m, e = int(mi) + 1, int(ei) + 1
            x = Fraction(d * m * m, e * e)
            rhs = E.rhs(x)
            if not is_rational_square(rhs):
                continue
            y = _sqrt_fraction(rhs)
            for P in (RationalPoint(x, y), RationalPoint(x, -y)):
                found.setdefault(P, (e, m))

    pts = sorted(found, key=lambda P: (found[P], P.x, P.y))
    return [INFINITY] + pts


def _two_torsion(E: Curve) -> list[RationalPoint]:
    pts = [RationalPoint(Fraction(0), Fraction(0))]
    disc = E.a * E.a - 4 * E.b
    if disc > 0 and math.isqrt(disc) ** 2 == disc:
        r = math.isqrt(disc)
        pts += [RationalPoint(Fraction(-E.a + s * r, 2), Fraction(0)) for s in (1, -1)]
    return pts


def point_height(P: RationalPoint) -> int:
    """max(|num x|, den x); 0 for O."""
    if P.at_infinity:
        return 0
    return max(abs(P.x.numerator), P.x.denominator)


__all__ = [
    "INFINITY",
    "RationalPoint",
    "RightTriangle",
    "add",
    "alpha_map",
    "multiply",
    "negate",
    "isogeny",
    "on_curve",
    "point_height",
    "point_search",
    "pull_back",
    "triangle_from_point",
]
