"""2-isogeny descent for y^2 = x^3 + a x^2 + b x.

For each square class d dividing b the engine decides whether d lies in the
image of the descent map alpha, by two independent routes:

* membership: an integer solution of N^2 = d m^4 + a m^2 e^2 + (b/d) e^4 with
  gcd(m, e) = 1 gives the point (d m^2/e^2, d m N/e^3), so d is in the image.
* non-membership: every rational point of class d can be written with
  x = b1 M^2/e^2 where b1 = sign(x) gcd(numerator(x), b) is a divisor of b in
  class d, and then gcd(M, e) = gcd(M, b/b1) = gcd(e, b1) = gcd(N, M e) = 1.
  If for every such divisor b1 the congruence has no solution modulo some
  prime power under those unit conditions, d is not in the image.

Rank bounds then follow from 2^r = |Im alpha| |Im alpha_bar| / 4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

import numpy as np

from .arith import (
    class_product,
    divisors,
    factorize,
    is_perfect_square,
    radical,
    square_class,
    squarefree_divisors,
)
from .curves import Curve, SingularCurveError
from .points import INFINITY, RationalPoint, add, alpha_map, on_curve

ENGINE_VERSION = "1.0.0"

# Search bounds are visited in this order so the smallest witness is found first.
_SHELLS = (4, 16, 64, 256, 1024, 4096, 16384, 65536)
_MAX_SIEVE_MODULUS = 5_000_000
_CHUNK = 1 << 22


class InconsistencyError(RuntimeError):
    """A class came out both solvable and obstructed, or bounds crossed."""


def isogenous_curve(E: Curve | tuple[int, int]) -> Curve:
    """The 2-isogenous curve y^2 = x^3 - 2a x^2 + (a^2 - 4b) x."""
    if not isinstance(E, Curve):
        E = Curve(*E)
    return Curve(-2 * E.a, E.a * E.a - 4 * E.b)


# --------------------------------------------------------------------------- spaces


@dataclass(frozen=True)
class HomogeneousSpace:
    """N^2 = b1 m^4 + a m^2 e^2 + b2 e^4, plus optional coprimality conditions.

    ``m_coprime`` / ``e_coprime`` mean gcd(m, m_coprime) = gcd(e, e_coprime) = 1;
    ``n_coprime`` asks for gcd(N, m e) = 1. gcd(m, e) = 1 is always required.
    """

    b1: int
    a: int
    b2: int
    m_coprime: int = 1
    e_coprime: int = 1
    n_coprime: bool = False
    label: str = ""

    def __post_init__(self) -> None:
        if self.b1 == 0 or self.b2 == 0:
            raise ValueError("b1 and b2 must be nonzero")

    @classmethod
    def classical(cls, b1: int, a: int, b2: int, label: str = "") -> HomogeneousSpace:
        return cls(b1, a, b2, m_coprime=radical(b2), e_coprime=radical(b1), n_coprime=True, label=label)

    @property
    def b(self) -> int:
        return self.b1 * self.b2

    @property
    def curve(self) -> Curve:
        return Curve(self.a, self.b)

    @property
    def bare(self) -> HomogeneousSpace:
        return HomogeneousSpace(self.b1, self.a, self.b2, label=self.label)

    def value(self, m: int, e: int) -> int:
        m2, e2 = m * m, e * e
        return self.b1 * m2 * m2 + self.a * m2 * e2 + self.b2 * e2 * e2

    def admits(self, m: int, e: int, N: int | None = None) -> bool:
        """Side conditions on (m, e[, N]) other than the equation itself."""
        if m == 0 or e == 0 or math.gcd(m, e) != 1:
            return False
        if math.gcd(m, self.m_coprime) != 1 or math.gcd(e, self.e_coprime) != 1:
            return False
        if N is not None and self.n_coprime and math.gcd(N, m * e) != 1:
            return False
        return True

    def to_json(self) -> dict:
        out = {"b1": self.b1, "a": self.a, "b2": self.b2}
        if self.m_coprime != 1 or self.e_coprime != 1 or self.n_coprime:
            out["conditions"] = {
                "m_coprime": self.m_coprime,
                "e_coprime": self.e_coprime,
                "n_coprime": self.n_coprime,
            }
        if self.label:
            out["label"] = self.label
        return out

    def __str__(self) -> str:
        return f"N^2 = {self.b1} m^4 + {self.a} m^2 e^2 + {self.b2} e^4"


@dataclass(frozen=True)
class Witness:
    m: int
    e: int
    N: int

    def verifies(self, S: HomogeneousSpace) -> bool:
        return self.N * self.N == S.value(self.m, self.e) and S.admits(self.m, self.e, self.N)

    def to_json(self) -> dict:
        return {"m": str(self.m), "e": str(self.e), "N": str(self.N)}


# --------------------------------------------------------------------------- statuses


@dataclass(frozen=True)
class ProvenSolvable:
    """Class is in the image. ``reason`` is one of identity, torsion, search, closure."""

    witness: Witness | None
    space: HomogeneousSpace | None
    reason: str = "search"
    derived_from: tuple[int, int] | None = None
    kind = "proven"

    def to_json(self) -> dict:
        out = {"kind": self.kind, "reason": self.reason}
        if self.space is not None:
            out["space"] = self.space.to_json()
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.derived_from is not None:
            out["derived_from"] = list(self.derived_from)
        return out


@dataclass(frozen=True)
class ObstructionCertificate:
    """No admissible (m, e, N) mod ``modulus`` satisfies the space's congruence."""

    space: HomogeneousSpace
    modulus: int
    prime: int
    representatives: int

    def to_json(self) -> dict:
        return {
            "space": self.space.to_json(),
            "modulus": self.modulus,
            "prime": self.prime,
            "representatives": self.representatives,
        }


@dataclass(frozen=True)
class LocallyObstructed:
    certificates: tuple[ObstructionCertificate, ...]
    kind = "obstructed"

    @property
    def modulus(self) -> int:
        return math.lcm(*(c.modulus for c in self.certificates))

    def to_json(self) -> dict:
        return {"kind": self.kind, "modulus": self.modulus, "certificates": [c.to_json() for c in self.certificates]}


@dataclass(frozen=True)
class Undecided:
    search_bound: int
    kind = "undecided"

    def to_json(self) -> dict:
        return {"kind": self.kind, "search_bound": self.search_bound}


SolvabilityStatus = Union[ProvenSolvable, LocallyObstructed, Undecided]


# --------------------------------------------------------------------------- classes


def candidate_classes(E: Curve) -> list[int]:
    """Squarefree divisors of b that can possibly lie in the image of alpha.

    Negative classes are dropped when b > 0 and a^2 < 4b: the quartic is then
    negative definite, so there is not even a real solution.
    """
    classes = squarefree_divisors(E.b)
    if E.b > 0 and E.a * E.a < 4 * E.b:
        classes = [d for d in classes if d > 0]
    return classes


def trivial_classes(E: Curve) -> list[int]:
    """Images of O and (0, 0)."""
    return sorted({1, square_class(E.b)}, key=lambda d: (abs(d), d < 0))


def representations(E: Curve, d: int) -> list[HomogeneousSpace]:
    """Classical spaces for class d: one per divisor b1 of b with squarefree part d.

    For a = 0 the spaces (b1, b2) and (b2, b1) are the same equation with m, e
    swapped, so only one of each pair is kept.
    """
    if E.b % d:
        raise ValueError(f"{d} does not divide {E.b}")
    cofactor = E.b // d
    square_root_part = math.prod(p ** (k // 2) for p, k in factorize(cofactor).items())
    spaces, seen = [], set()
    for k in divisors(square_root_part):
        b1 = d * k * k
        b2 = E.b // b1
        key = frozenset((b1, b2)) if E.a == 0 else (b1, b2)
        if key in seen:
            continue
        seen.add(key)
        spaces.append(HomogeneousSpace.classical(b1, E.a, b2))
    return spaces


def default_moduli(S: HomogeneousSpace) -> list[int]:
    """{8, 16, 32} followed by q, q^2 for each odd prime q dividing b1 b2."""
    out = [8, 16, 32]
    for q in sorted(factorize(S.b1 * S.b2)):
        if q != 2:
            out += [q, q * q]
    return out


# --------------------------------------------------------------------------- search


# Each stage keeps (m, e) only if the quartic is a square modulo K. The tables
# are indexed [e mod K, m mod K]; every K is a product of coprime prime powers.
_SIEVE_MODULI = (2880, 1001, 323, 667, 1147, 1763, 2491)  # 2^6 3^2 5, 7 11 13, 17 19, ...


@lru_cache(maxsize=256)
def _pair_table(b1: int, a: int, b2: int, K: int) -> np.ndarray:
    r = np.arange(K, dtype=np.int64)
    r2 = r * r % K
    r4 = r2 * r2 % K
    val = (b1 * r4[None, :] + a * (r2[:, None] * r2[None, :] % K) + b2 * r4[:, None]) % K
    squares = np.zeros(K, dtype=bool)
    squares[r2] = True
    return squares[val]


def _tables(S: HomogeneousSpace) -> list[tuple[int, np.ndarray]]:
    return [(K, _pair_table(S.b1 % K, S.a % K, S.b2 % K, K)) for K in _SIEVE_MODULI]


def _residue_filter(S: HomogeneousSpace, K: int, T: np.ndarray | None, m: np.ndarray, e: np.ndarray) -> np.ndarray:
    if T is not None:
        return T[e % K, m % K]
    m2, e2 = m * m % K, e * e % K
    val = ((S.b1 % K) * (m2 * m2 % K) + (S.a % K) * (m2 * e2 % K) + (S.b2 % K) * (e2 * e2 % K)) % K
    return _square_residues(K)[val]


@lru_cache(maxsize=None)
def _square_residues(K: int) -> np.ndarray:
    table = np.zeros(K, dtype=bool)
    table[np.arange(K, dtype=np.int64) ** 2 % K] = True
    return table


# Building a K x K table only pays off once the grid is much larger than K^2.
_TABLE_THRESHOLD = 1 << 24


def _sieved_pairs(S: HomogeneousSpace, ms: np.ndarray, es: np.ndarray) -> Iterable[tuple[np.ndarray, np.ndarray]]:
    """Blocks of candidate (m, e) from the grid ms x es that survive every residue test."""
    if ms.size * es.size >= _TABLE_THRESHOLD:
        tables = _tables(S)
    else:
        tables = [(K, None) for K in _SIEVE_MODULI]
    rows = max(1, _CHUNK // max(1, ms.size))
    for i in range(0, es.size, rows):
        eb = es[i : i + rows]
        K0, T0 = tables[0]
        if T0 is not None:
            ei, mi = np.nonzero(T0[(eb % K0)[:, None], (ms % K0)[None, :]])
            e_arr, m_arr = eb[ei], ms[mi]
        else:
            e_arr, m_arr = np.repeat(eb, ms.size), np.tile(ms, eb.size)
            keep = _residue_filter(S, K0, None, m_arr, e_arr)
            e_arr, m_arr = e_arr[keep], m_arr[keep]
        for K, T in tables[1:]:
            if m_arr.size == 0:
                break
            keep = _residue_filter(S, K, T, m_arr, e_arr)
            e_arr, m_arr = e_arr[keep], m_arr[keep]
        if m_arr.size:
            yield m_arr, e_arr


def _shell_hits(S: HomogeneousSpace, lo: int, hi: int) -> list[Witness]:
    """All admissible witnesses with lo < max(m, e) <= hi, smallest first."""
    hits = []
    # m > lo with any e <= hi, then m <= lo with e > lo
    regions = [(np.arange(lo + 1, hi + 1), np.arange(1, hi + 1))]
    if lo:
        regions.append((np.arange(1, lo + 1), np.arange(lo + 1, hi + 1)))
    for ms, es in regions:
        for m_arr, e_arr in _sieved_pairs(S, ms.astype(np.int64), es.astype(np.int64)):
            keep = np.gcd(m_arr, e_arr) == 1
            for m, e in zip(m_arr[keep].tolist(), e_arr[keep].tolist()):
                ok, N = is_perfect_square(S.value(m, e))
                if ok and S.admits(m, e, N):
                    hits.append(Witness(m, e, N))
    hits.sort(key=lambda w: (max(w.m, w.e), w.m, w.e))
    return hits


def _shells(start: int, bound: int) -> list[tuple[int, int]]:
    edges = [s for s in _SHELLS if start < s < bound] + [bound]
    out, lo = [], start
    for hi in edges:
        if hi > lo:
            out.append((lo, hi))
            lo = hi
    return out


def search_homogeneous(S: HomogeneousSpace, bound: int, start: int = 0) -> ProvenSolvable | Undecided:
    """Look for N^2 = S(m, e) with coprime 1 <= m, e <= bound.

    Only m, e > 0 are scanned: the quartic depends on m^2 and e^2 alone.
    ``start`` skips pairs with max(m, e) <= start (already searched).
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    for lo, hi in _shells(start, bound):
        hits = _shell_hits(S, lo, hi)
        if hits:
            return ProvenSolvable(hits[0], S, "search")
    return Undecided(bound)


# --------------------------------------------------------------------------- local sieve


@lru_cache(maxsize=64)
def _residue_squares(M: int, ell: int) -> tuple[np.ndarray, np.ndarray]:
    r = np.arange(M, dtype=np.int64)
    any_sq = np.zeros(M, dtype=bool)
    any_sq[r * r % M] = True
    units = r[r % ell != 0]
    unit_sq = np.zeros(M, dtype=bool)
    unit_sq[units * units % M] = True
    return any_sq, unit_sq


def _prime_power_parts(M: int) -> list[tuple[int, int]]:
    return [(p, p**k) for p, k in sorted(factorize(M).items())]


def solvable_mod_prime_power(S: HomogeneousSpace, ell: int, M: int) -> tuple[bool, int]:
    """Whether S has an admissible residue solution modulo M = ell^k.

    Unit scaling (m, e, N) -> (u m, u e, u^2 N) preserves the congruence and
    every side condition, so it is enough to test (m, 1) for all m and (1, e)
    for e divisible by ell. Returns (solvable, number of pairs examined).
    """
    if M > _MAX_SIEVE_MODULUS:
        raise ValueError(f"modulus {M} exceeds the sieve cap {_MAX_SIEVE_MODULUS}")
    any_sq, unit_sq = _residue_squares(M, ell)
    b1, a, b2 = S.b1 % M, S.a % M, S.b2 % M
    m_unit = S.m_coprime % ell == 0
    e_unit = S.e_coprime % ell == 0
    examined = 0

    # pairs (m, 1)
    m = np.arange(M, dtype=np.int64)
    if m_unit:
        m = m[m % ell != 0]
    m2 = m * m % M
    f = (b1 * (m2 * m2 % M) + a * m2 + b2) % M
    need_unit = (m % ell == 0) & S.n_coprime
    examined += m.size
    if np.any(np.where(need_unit, unit_sq[f], any_sq[f])):
        return True, examined

    # pairs (1, e) with ell | e
    if not e_unit:
        e = np.arange(0, M, ell, dtype=np.int64)
        e2 = e * e % M
        f = (b1 + a * e2 + b2 * (e2 * e2 % M)) % M
        table = unit_sq if S.n_coprime else any_sq
        examined += e.size
        if np.any(table[f]):
            return True, examined
    return False, examined


def local_obstruction(S: HomogeneousSpace, moduli: Sequence[int]) -> LocallyObstructed | Undecided:
    """First modulus (or prime-power part of one) with no admissible residue solution."""
    if not moduli:
        raise ValueError("moduli must be nonempty")
    for M in moduli:
        for ell, q in _prime_power_parts(M):
            ok, examined = solvable_mod_prime_power(S, ell, q)
            if not ok:
                return LocallyObstructed((ObstructionCertificate(S, q, ell, examined),))
    return Undecided(0)


def _is_square_mod_prime_power(v: int, ell: int, k: int, unit: bool) -> bool:
    """Is v = N^2 (mod ell^k) for some N (a unit, if ``unit``)? Valuation argument."""
    M = ell**k
    v %= M
    if v == 0:
        return not unit or k == 0
    t = 0
    while v % ell == 0:
        v //= ell
        t += 1
    if unit and t:
        return False
    if t % 2:
        return False
    rest = k - t  # need v = w^2 mod ell^rest with w a unit
    if ell == 2:
        return rest <= 1 or v % (4 if rest == 2 else 8) == 1
    return pow(v, (ell - 1) // 2, ell) == 1


def verify_certificate(cert: ObstructionCertificate, brute_force_limit: int = 2048) -> bool:
    """Re-derive the obstruction without the projective shortcut tables.

    Small moduli enumerate every residue pair (m, e) with every N; larger ones
    walk the projective line in pure Python and test squares by valuation and
    Euler's criterion.
    """
    S, M, ell = cert.space, cert.modulus, cert.prime
    k = round(math.log(M, ell))
    if ell**k != M:
        return False
    m_unit = S.m_coprime % ell == 0
    e_unit = S.e_coprime % ell == 0
    if M <= brute_force_limit:
        squares = {N * N % M for N in range(M)}
        unit_squares = {N * N % M for N in range(M) if N % ell}
        r = np.arange(M, dtype=np.int64)
        mm, ee = np.meshgrid(r, r, indexing="ij")
        mm, ee = mm.ravel(), ee.ravel()
        ok = ~((mm % ell == 0) & (ee % ell == 0))
        if m_unit:
            ok &= mm % ell != 0
        if e_unit:
            ok &= ee % ell != 0
        mm, ee = mm[ok], ee[ok]
        m2, e2 = mm * mm % M, ee * ee % M
        f = ((S.b1 % M) * (m2 * m2 % M) + (S.a % M) * (m2 * e2 % M) + (S.b2 % M) * (e2 * e2 % M)) % M
        need_unit = ((mm % ell == 0) | (ee % ell == 0)) & S.n_coprime
        for v, u in zip(f.tolist(), need_unit.tolist()):
            if v in (unit_squares if u else squares):
                return False
        return True
    for m in range(M):
        if m_unit and m % ell == 0:
            continue
        if _is_square_mod_prime_power(S.value(m, 1), ell, k, S.n_coprime and m % ell == 0):
            return False
    if not e_unit:
        for e in range(0, M, ell):
            if _is_square_mod_prime_power(S.value(1, e), ell, k, S.n_coprime):
                return False
    return True


# --------------------------------------------------------------------------- points


def point_from_witness(S: HomogeneousSpace, w: Witness) -> RationalPoint:
    """P = (b1 m^2 / e^2, b1 m N / e^3), checked on y^2 = x^3 + a x^2 + b x."""
    if w.N * w.N != S.value(w.m, w.e):
        raise ValueError(f"{w} does not solve {S}")
    P = RationalPoint(Fraction(S.b1 * w.m * w.m, w.e * w.e), Fraction(S.b1 * w.m * w.N, w.e**3))
    if not on_curve(S.curve, P):
        raise ArithmeticError(f"recovered point {P} is not on {S.curve}")
    return P


def witness_from_point(E: Curve, P: RationalPoint) -> tuple[HomogeneousSpace, Witness]:
    """Inverse of :func:`point_from_witness` for a point with x != 0."""
    d = square_class(P.x)
    ratio = P.x / d  # a rational square (m/e)^2
    m, e = math.isqrt(ratio.numerator), math.isqrt(ratio.denominator)
    N = P.y * e**3 / (d * m)
    if N.denominator != 1:
        raise ArithmeticError(f"non-integral N for {P}")
    S = HomogeneousSpace(d, E.a, E.b // d)
    w = Witness(m, e, int(N))
    if not w.verifies(S):
        raise ArithmeticError(f"witness from {P} does not verify")
    return S, w


# --------------------------------------------------------------------------- images


def pow2_floor(n: int) -> int:
    return 1 << (n.bit_length() - 1) if n > 0 else 0


@dataclass
class DescentImage:
    curve: Curve
    classes: dict[int, SolvabilityStatus]
    guaranteed: frozenset[int]
    search_bound: int
    excluded: tuple[int, ...] = ()
    points: dict[int, RationalPoint] = field(default_factory=dict, repr=False)

    def proven(self) -> list[int]:
        return [d for d, s in self.classes.items() if isinstance(s, ProvenSolvable)]

    def obstructed(self) -> list[int]:
        return [d for d, s in self.classes.items() if isinstance(s, LocallyObstructed)]

    def not_obstructed(self) -> list[int]:
        return [d for d, s in self.classes.items() if not isinstance(s, LocallyObstructed)]

    @property
    def lower_order(self) -> int:
        return pow2_floor(len(self.proven()))

    @property
    def upper_order(self) -> int:
        return pow2_floor(len(self.not_obstructed()))

    @property
    def determined(self) -> bool:
        return self.lower_order == self.upper_order

    def to_json(self) -> dict:
        return {
            "curve": self.curve.to_json(),
            "search_bound": self.search_bound,
            "classes": {str(d): s.to_json() for d, s in self.classes.items()},
            "proven": self.proven(),
            "not_obstructed": self.not_obstructed(),
        }


def _closure(E: Curve, statuses: dict, points: dict) -> list[int]:
    """Close the proven classes under multiplication, deriving a witness by point addition."""
    added = []
    changed = True
    while changed:
        changed = False
        members = [d for d, s in statuses.items() if isinstance(s, ProvenSolvable)]
        for i, d1 in enumerate(members):
            for d2 in members[i + 1 :]:
                c = class_product(d1, d2)
                status = statuses.get(c)
                if status is None:
                    raise InconsistencyError(f"product class {c} is not a candidate for {E}")
                if isinstance(status, ProvenSolvable):
                    continue
                if isinstance(status, LocallyObstructed):
                    raise InconsistencyError(f"class {c} = {d1}*{d2} is proven but obstructed on {E}")
                P = add(E, points[d1], points[d2])
                if alpha_map(E, P) != c:
                    raise InconsistencyError(f"alpha is not multiplicative at {d1}, {d2}")
                S, w = witness_from_point(E, P)
                statuses[c] = ProvenSolvable(w, S, "closure", (d1, d2))
                points[c] = P
                added.append(c)
                changed = True
    return added


def compute_image(
    E: Curve,
    bound: int,
    moduli: Sequence[int] | None = None,
) -> DescentImage:
    """Decide every candidate class of E up to the search bound.

    ``moduli`` overrides :func:`default_moduli` for every space. Classes are
    searched in rounds of growing bound; searching stops early once the proven
    subgroup is as large as the unobstructed set allows.
    """
    if not isinstance(E, Curve):
        E = Curve(*E)
    classes = candidate_classes(E)
    excluded = tuple(d for d in squarefree_divisors(E.b) if d not in classes)
    statuses: dict[int, SolvabilityStatus] = {}
    points: dict[int, RationalPoint] = {}

    trivial = trivial_classes(E)
    statuses[1] = ProvenSolvable(None, None, "identity")
    points[1] = INFINITY
    cb = square_class(E.b)
    if cb != 1:
        statuses[cb] = ProvenSolvable(None, None, "torsion")
        points[cb] = RationalPoint(Fraction(0), Fraction(0))

    for d in classes:
        if d in statuses:
            continue
        certs = []
        for S in representations(E, d):
            st = local_obstruction(S, list(moduli) if moduli else default_moduli(S))
            if not isinstance(st, LocallyObstructed):
                break
            certs.extend(st.certificates)
        else:
            statuses[d] = LocallyObstructed(tuple(certs))
            continue
        statuses[d] = Undecided(0)
    statuses = {d: statuses[d] for d in classes}

    searched = 0
    for lo, hi in _shells(0, bound):
        open_ = [d for d, s in statuses.items() if isinstance(s, Undecided)]
        if not open_ or _image_pinned(statuses):
            break
        for d in open_:
            if not isinstance(statuses[d], Undecided):
                continue  # derived by closure earlier in this round
            S = HomogeneousSpace(d, E.a, E.b // d)
            hits = _shell_hits(S, lo, hi)
            if hits:
                statuses[d] = ProvenSolvable(hits[0], S, "search")
                points[d] = point_from_witness(S, hits[0])
                _closure(E, statuses, points)
            else:
                statuses[d] = Undecided(hi)
        searched = hi
    _closure(E, statuses, points)
    return DescentImage(E, statuses, frozenset(trivial), max(searched, 0), excluded, points)


def _image_pinned(statuses: dict) -> bool:
    proven = sum(isinstance(s, ProvenSolvable) for s in statuses.values())
    possible = sum(not isinstance(s, LocallyObstructed) for s in statuses.values())
    return pow2_floor(proven) == pow2_floor(possible)


# --------------------------------------------------------------------------- bounds


@dataclass(frozen=True)
class RankBounds:
    lower: int
    upper: int
    provenance: tuple[str, ...] = ()

    @property
    def exact(self) -> int | None:
        return self.lower if self.lower == self.upper else None

    def to_json(self) -> dict:
        return {"lower": self.lower, "upper": self.upper, "exact": self.exact, "provenance": list(self.provenance)}


def rank_bounds(im: DescentImage, im_bar: DescentImage) -> RankBounds:
    lo_bits = im.lower_order.bit_length() + im_bar.lower_order.bit_length() - 2 - 2
    hi_bits = im.upper_order.bit_length() + im_bar.upper_order.bit_length() - 2 - 2
    lower = max(lo_bits, 0)
    if hi_bits < lower:
        raise InconsistencyError(f"upper bound {hi_bits} below lower bound {lower}")
    provenance = []
    for name, image in (("alpha", im), ("alpha_bar", im_bar)):
        provenance.append(
            f"{name}: proven {sorted(image.proven())} (order {image.lower_order}), "
            f"not obstructed {sorted(image.not_obstructed())} (order <= {image.upper_order})"
        )
    return RankBounds(lower, hi_bits, tuple(provenance))


@dataclass
class DescentResult:
    curve: Curve
    image: DescentImage
    image_bar: DescentImage
    bounds: RankBounds

    def to_json(self) -> dict:
        return {
            "engine_version": ENGINE_VERSION,
            "curve": self.curve.to_json(),
            "alpha": self.image.to_json(),
            "alpha_bar": self.image_bar.to_json(),
            "rank_bounds": self.bounds.to_json(),
        }


def descend(E: Curve, bound: int, moduli: Sequence[int] | None = None) -> DescentResult:
    """Both images and the resulting rank bounds."""
    im = compute_image(E, bound, moduli)
    im_bar = compute_image(isogenous_curve(E), bound, moduli)
    return DescentResult(E, im, im_bar, rank_bounds(im, im_bar))


def status_to_json(S: HomogeneousSpace, status: SolvabilityStatus) -> dict:
    """Canonical record for a single space, as consumed by the CLI cache."""
    return {"engine_version": ENGINE_VERSION, "space": S.to_json(), "status": status.to_json()}


__all__ = [
    "ENGINE_VERSION",
    "Curve",
    "DescentImage",
    "DescentResult",
    "HomogeneousSpace",
    "InconsistencyError",
    "LocallyObstructed",
    "ObstructionCertificate",
    "ProvenSolvable",
    "RankBounds",
    "SingularCurveError",
    "Undecided",
    "Witness",
    "candidate_classes",
    "compute_image",
    "default_moduli",
    "descend",
    "isogenous_curve",
    "local_obstruction",
    "point_from_witness",
    "rank_bounds",
    "representations",
    "search_homogeneous",
    "verify_certificate",
    "witness_from_point",
]
