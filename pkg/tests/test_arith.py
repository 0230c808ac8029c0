import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from congruent_descent.arith import (
    class_product,
    factorize,
    is_perfect_square,
    is_prime,
    is_rational_square,
    legendre,
    primes_below,
    square_class,
    squarefree_decompose,
    squarefree_divisors,
    sum_two_squares,
)

PRIMES_1000 = [p for p in primes_below(1000) if p > 2]


def brute_legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if any(x * x % p == a for x in range(1, p)) else -1


def trial_prime(n):
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


# ---- examples


@pytest.mark.parametrize("a,p,expected", [(1, 5, 1), (2, 7, 1), (3, 5, -1), (10, 5, 0), (-1, 13, 1), (-1, 7, -1)])
def test_legendre_examples(a, p, expected):
    assert legendre(a, p) == expected


@pytest.mark.parametrize("p", [2, 9, 15, 1, 0, -3])
def test_legendre_rejects_bad_modulus(p):
    with pytest.raises(ValueError):
        legendre(1, p)


@pytest.mark.parametrize("n,expected", [(0, (True, 0)), (1, (True, 1)), (1681, (True, 41)), (325, (False, 0)), (-4, (False, 0))])
def test_is_perfect_square(n, expected):
    assert is_perfect_square(n) == expected


def test_perfect_square_beyond_64_bits():
    k = 3**80 + 1
    assert is_perfect_square(k * k) == (True, k)
    assert not is_perfect_square(k * k + 1)[0]


@pytest.mark.parametrize("n,expected", [(18, (2, 3)), (-25, (-1, 5)), (2605, (2605, 1)), (1, (1, 1)), (-72, (-2, 6))])
def test_squarefree_decompose(n, expected):
    d = squarefree_decompose(n)
    assert (d.squarefree_part, d.square_root_of_cofactor) == expected
    assert d.value == n


def test_squarefree_decompose_rejects_zero():
    with pytest.raises(ValueError):
        squarefree_decompose(0)


@pytest.mark.parametrize("n,expected", [(521, True), (1, False), (2605, False), (2, True), (0, False), (561, False), (999_999_000_001, True), (999_999_000_003, False)])
def test_is_prime_examples(n, expected):
    assert is_prime(n) == expected


def test_is_prime_agrees_with_trial_division():
    assert [n for n in range(3000) if is_prime(n)] == [n for n in range(3000) if trial_prime(n)]


def test_is_prime_large_known_values():
    assert is_prime(1_000_000_007)
    assert is_prime(2**61 - 1)
    assert not is_prime((2**31 - 1) * (2**61 - 1))
    assert not is_prime(3_215_031_751)  # strong pseudoprime to bases 2, 3, 5, 7


@pytest.mark.parametrize("p,expected", [(41, (5, 4)), (17, (1, 4)), (149, (7, 10)), (5, (1, 2)), (13, (3, 2))])
def test_sum_two_squares_examples(p, expected):
    assert sum_two_squares(p) == expected


@pytest.mark.parametrize("p", [3, 7, 15, 21, 2])
def test_sum_two_squares_rejects(p):
    with pytest.raises(ValueError):
        sum_two_squares(p)


def test_square_class_of_rationals():
    assert square_class(Fraction(41, 16)) == 41
    assert square_class(Fraction(-4)) == -1
    assert square_class(Fraction(2, 3)) == 6
    assert class_product(6, 10) == 15
    assert class_product(-1, -5) == 5


def test_squarefree_divisors_of_minus_225():
    assert set(squarefree_divisors(-225)) == {1, -1, 3, -3, 5, -5, 15, -15}


def test_factorize_uses_rho_for_large_semiprime():
    n = 1_000_003 * 998_244_353
    assert factorize(n) == {1_000_003: 1, 998_244_353: 1}


# ---- sweeps and properties


def test_legendre_matches_brute_force_below_200():
    for p in [q for q in PRIMES_1000 if q < 200]:
        for a in range(-p, 2 * p):
            assert legendre(a, p) == brute_legendre(a, p)


@settings(max_examples=300)
@given(st.integers(-1000, 1000), st.integers(-1000, 1000), st.sampled_from(PRIMES_1000))
def test_legendre_multiplicative(a, b, p):
    assert legendre(a * b, p) == legendre(a, p) * legendre(b, p)


def test_supplementary_laws():
    for p in PRIMES_1000:
        assert (legendre(-1, p) == 1) == (p % 4 == 1)
        assert (legendre(2, p) == 1) == (p % 8 in (1, 7))


def test_fourth_root_of_minus_one_iff_p_1_mod_8():
    for p in [q for q in primes_below(10_000) if q > 2]:
        fourth_powers = {pow(x, 4, p) for x in range(1, p)} if p < 2000 else None
        if fourth_powers is not None:
            has = (p - 1) in fourth_powers
        else:
            # -1 is a fourth power iff its order (2) divides (p-1)/gcd(4, p-1)
            has = ((p - 1) // math.gcd(4, p - 1)) % 2 == 0
        assert has == (p % 8 == 1), p


def test_squarefree_decompose_round_trip_exhaustive():
    for n in range(-2000, 2001):
        if n == 0:
            continue
        d = squarefree_decompose(n)
        assert d.value == n
        assert d.square_root_of_cofactor > 0
        assert all(k == 1 for k in factorize(d.squarefree_part).values())


@settings(max_examples=500)
@given(st.integers(1, 10**6).flatmap(lambda n: st.sampled_from([n, -n])))
def test_squarefree_decompose_round_trip(n):
    d = squarefree_decompose(n)
    assert d.value == n
    assert (d.squarefree_part > 0) == (n > 0)


@given(st.sampled_from([p for p in primes_below(20_000) if p % 4 == 1]))
def test_sum_two_squares_property(p):
    a, b = sum_two_squares(p)
    assert a * a + b * b == p and a % 2 == 1 and b % 2 == 0 and a > 0 and b > 0


@given(st.integers(0, 10**12))
def test_is_perfect_square_property(n):
    ok, k = is_perfect_square(n)
    assert ok == (math.isqrt(n) ** 2 == n)
    if ok:
        assert k * k == n


NONZERO_Q = st.fractions(min_value=-(10**6), max_value=10**6, max_denominator=10**6).filter(lambda q: q != 0)


@given(NONZERO_Q, NONZERO_Q)
def test_square_class_is_a_homomorphism(x, y):
    assert square_class(x * y) == class_product(square_class(x), square_class(y))
    assert is_rational_square(x * x)
