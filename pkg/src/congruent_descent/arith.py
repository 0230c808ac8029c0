"""Exact integer helpers: squares, square classes, Legendre symbols, primality.

Everything here works on Python ints, so magnitudes are unbounded; the
fourth-power searches elsewhere routinely leave the 64-bit range.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

# Jaeschke / Sorenson-Webster: these bases make Miller-Rabin exact below 3.3e24,
# which comfortably covers the documented 3.3e14 ceiling.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981


def is_perfect_square(n: int) -> tuple[bool, int]:
    """Return ``(True, k)`` when ``n == k*k`` with ``k >= 0``, else ``(False, 0)``."""
    if n < 0:
        return False, 0
    k = math.isqrt(n)
    if k * k == n:
        return True, k
    return False, 0


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def is_rational_square(q: Fraction) -> bool:
    return is_square(q.numerator) and is_square(q.denominator)


def _small_factor(n: int) -> int:
    """Smallest prime factor of n > 1 (trial division with a Pollard fallback)."""
    if n % 2 == 0:
        return 2
    limit = math.isqrt(n)
    f = 3
    while f <= limit and f < 100_000:
        if n % f == 0:
            return f
        f += 2
    if f > limit:
        return n
    if is_prime(n):
        return n
    d = _pollard_rho(n)
    return min(_small_factor(d), _small_factor(n // d))


def _pollard_rho(n: int) -> int:
    for c in range(1, 50):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"could not split {n}")


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation of |n| as ``{prime: exponent}``; ``factorize(1) == {}``."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    while n > 1:
        p = _small_factor(n)
        while n % p == 0:
            n //= p
            out[p] = out.get(p, 0) + 1
    return out


@dataclass(frozen=True)
class SquarefreeDecomposition:
    """``value == squarefree_part * square_root_of_cofactor**2``."""

    squarefree_part: int
    square_root_of_cofactor: int

    @property
    def value(self) -> int:
        return self.squarefree_part * self.square_root_of_cofactor**2


def squarefree_decompose(n: int) -> SquarefreeDecomposition:
    if n == 0:
        raise ValueError("0 has no square class")
    core, root = (1 if n > 0 else -1), 1
    for p, k in factorize(n).items():
        if k % 2:
            core *= p
        root *= p ** (k // 2)
    return SquarefreeDecomposition(core, root)


def squarefree_part(n: int) -> int:
    return squarefree_decompose(n).squarefree_part


def square_class(q: Fraction | int) -> int:
    """Squarefree representative of a nonzero rational in Q*/Q*^2."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("0 has no square class")
    return squarefree_part(q.numerator * q.denominator)


def class_product(c1: int, c2: int) -> int:
    """Product of two square classes, reduced back to a squarefree representative."""
    g = math.gcd(c1, c2)
    return (c1 // g) * (c2 // g)


def is_squarefree(n: int) -> bool:
    return n != 0 and all(k == 1 for k in factorize(n).values())


def radical(n: int) -> int:
    return math.prod(factorize(n)) if n not in (0, 1, -1) else 1


def _strong_probable_prime(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Deterministic below 3.3e24; above that, 64 extra random Miller-Rabin rounds."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = list(_MR_BASES)
    if n >= _MR_LIMIT:
        rng = random.Random(n)
        bases += [rng.randrange(2, n - 1) for _ in range(64)]
    return all(_strong_probable_prime(n, a, d, s) for a in bases)


def _require_odd_prime(p: int) -> None:
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) by Euler's criterion; p must be an odd prime."""
    _require_odd_prime(p)
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def sqrt_minus_one(p: int) -> int:
    """Some x with x^2 = -1 (mod p), for a prime p = 1 (mod 4)."""
    # Any non-residue c gives c^((p-1)/4); scanning c upward is deterministic.
    for c in range(2, p):
        if pow(c, (p - 1) // 2, p) == p - 1:
            return pow(c, (p - 1) // 4, p)
    raise ValueError(f"no square root of -1 modulo {p}")


def sum_two_squares(p: int) -> tuple[int, int]:
    """Write a prime p = 1 (mod 4) as a^2 + b^2 with a odd, b even, both positive.

    Runs the Euclidean algorithm on (p, sqrt(-1) mod p) and stops at the first
    remainder below sqrt(p) (Cornacchia / Hermite-Serret).
    """
    if p % 4 != 1 or not is_prime(p):
        raise ValueError(f"{p} is not a prime congruent to 1 mod 4")
    r0, r1 = p, sqrt_minus_one(p)
    limit = math.isqrt(p)
    while r1 > limit:
        r0, r1 = r1, r0 % r1
    a = r1
    b = math.isqrt(p - a * a)
    if a * a + b * b != p:
        raise ArithmeticError(f"descent failed for {p}")
    return (a, b) if a % 2 else (b, a)


def primes_below(n: int) -> list[int]:
    if n < 3:
        return []
    sieve = bytearray([1]) * n
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(n - 1) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n, i)))
    return [i for i in range(n) if sieve[i]]


def squarefree_divisors(n: int, signed: bool = True) -> list[int]:
    """All squarefree divisors of n (optionally with both signs), sorted by |d| then sign."""
    ds = [1]
    for p in sorted(factorize(n)):
        ds += [d * p for d in ds]
    if signed:
        ds = ds + [-d for d in ds]
    return sorted(ds, key=lambda d: (abs(d), d < 0))


def divisors(n: int) -> list[int]:
    ds = [1]
    for p, k in sorted(factorize(n).items()):
        ds = [d * p**i for d in ds for i in range(k + 1)]
    return sorted(ds)
