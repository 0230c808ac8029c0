import math

import pytest
from hypothesis import given, strategies as st

from congruent_descent.arith import is_perfect_square, legendre, primes_below
from congruent_descent.theory import (
    FORMS,
    CongruentCase,
    PythWitness,
    alpha_pm_pythagorean,
    beta_pythagorean,
    beta_sum_decomposition,
    classify,
    f1,
    f2,
    f3,
    factorization_identity_check,
    form_primes,
    labelled_space,
    labelled_spaces,
    labels_for,
    necessary_condition,
    pyth_triples_square_diff,
    rank2_criterion,
    theorem_rank,
)

ODD_PRIMES = [p for p in primes_below(600) if p > 2]


@pytest.mark.parametrize(
    "n,expected",
    [(41, ("P", 41, None)), (2605, ("PQ", 5, 521)), (10, ("TwoP", 5, None)), (130, ("TwoPQ", 5, 13)), (12, None), (105, None), (2, None)],
)
def test_classify(n, expected):
    case = classify(n)
    if expected is None:
        assert case is None
    else:
        assert (case.variant, case.p, case.q) == expected
        assert case.n == n


def test_case_validation():
    with pytest.raises(ValueError):
        CongruentCase("P", 9)
    with pytest.raises(ValueError):
        CongruentCase("PQ", 5)
    with pytest.raises(ValueError):
        CongruentCase("PQ", 5, 5)
    assert CongruentCase("PQ", 5, 521).residues == (5, 1)


@pytest.mark.parametrize(
    "case,rank",
    [(CongruentCase("P", 3), 0), (CongruentCase("P", 5), 1), (CongruentCase("P", 7), 1), (CongruentCase("TwoPQ", 5, 13), 0),
     (CongruentCase("PQ", 3, 7), 1), (CongruentCase("TwoP", 5), 0), (CongruentCase("TwoP", 3), 1), (CongruentCase("PQ", 3, 11), 0)],
)
def test_theorem_rank_examples(case, rank):
    v = theorem_rank(case)
    assert v.rank == rank and v.congruent == (rank >= 1)
    assert v.citation


def test_theorem_rank_deferral_and_silence():
    assert theorem_rank(CongruentCase("P", 41)).condition == "deferred-rank2-criterion"
    assert theorem_rank(CongruentCase("TwoP", 17)).condition == "no-verdict"
    assert theorem_rank(CongruentCase("PQ", 5, 13)).rank is None


def test_theorem_rank_is_symmetric_in_p_q():
    for p in ODD_PRIMES[:25]:
        for q in ODD_PRIMES[:25]:
            if p < q:
                for variant in ("PQ", "TwoPQ"):
                    a, b = CongruentCase(variant, p, q), CongruentCase(variant, q, p)
                    assert theorem_rank(a) == theorem_rank(b)


def test_form_values():
    assert f1(1, 1) == 41 and f1(-1, 7) == 137
    assert f2(1, 1) == 7
    assert f3(1, 1) == 41 and f3(2, 1) == 353


@pytest.mark.parametrize(
    "p,abc,kind,aux",
    [(37, (22, 21, 5), "AlphaMinus", 29), (149, (10, 7, 1), "AlphaPlus", 25), (41, (5, 4, 1), None, None)],
)
def test_alpha_detector_examples(p, abc, kind, aux):
    w = alpha_pm_pythagorean(p)
    assert (w.a, w.b, w.c) == abc
    if kind:
        assert (w.kind, w.auxiliary_square_root) == (kind, aux)
    assert w.verifies(p)


def test_seventeen_rejected_by_both():
    assert alpha_pm_pythagorean(17) is None
    assert beta_pythagorean(17, 50) is None
    assert rank2_criterion(17).condition == "undecided-at-bound"


def test_beta_detector_examples():
    w = beta_pythagorean(41)
    assert (w.a, w.b, w.form) == (1, 1, "f1") and w.verifies(41)
    w = beta_pythagorean(7)
    assert (w.a, w.b, w.form) == (1, 1, "f2") and w.verifies(7)
    w = beta_pythagorean(137)
    assert (w.a, w.b, w.form) == (-1, 7, "f1")


def test_rank2_criterion():
    assert rank2_criterion(41).rank == 2
    with pytest.raises(ValueError):
        rank2_criterion(13)
    v = rank2_criterion(137)
    assert v.rank in (2, None)


def test_alpha_rejects_three_mod_four():
    assert alpha_pm_pythagorean(7) is None
    with pytest.raises(ValueError):
        alpha_pm_pythagorean(15)


@pytest.mark.parametrize("m,e", [(1, 1), (3, 2), (1, 4), (7, 10)])
def test_factorization_identity(m, e):
    assert factorization_identity_check(m, e)


def test_triples_with_square_leg_difference():
    triples = pyth_triples_square_diff(12)
    legs = {tuple(sorted(t.legs[:2])) + (t.legs[2],) for t in triples}
    assert {(20, 21, 29), (3, 4, 5), (119, 120, 169)} <= legs
    assert (1, 1, 1) in {(t.x, t.y, t.lemma) for t in triples if (t.s, t.t) == (5, 2)}
    assert all(t.verifies() for t in triples)
    with pytest.raises(ValueError):
        pyth_triples_square_diff(0)


def test_form_primes_listing():
    rows = form_primes(20, 500)
    vals = {(v, f) for v, f, _, _ in rows}
    assert (41, "f1") in vals and (7, "f2") in vals and (137, "f1") in vals and (353, "f3") in vals
    assert all(FORMS[f](x, y) == v for v, f, x, y in rows)


def test_labelled_space_construction():
    case = CongruentCase("P", 13)
    S = labelled_space(case, "b1")
    assert (S.b1, S.a, S.b2, S.label) == (13, 0, 52, "b1")
    Sm = labelled_space(case, "a1", -1)
    assert (Sm.b1, Sm.b2, Sm.label) == (-13, 13, "a1-")
    with pytest.raises(ValueError):
        labelled_space(case, "b1", -1)
    with pytest.raises(ValueError):
        labelled_space(case, "b7")
    assert len(labelled_spaces(case)) == 5
    assert labels_for(4) == ["a1", "a2", "a3", "b1", "b2", "b3", "b4", "b5", "b6", "b7"]


@pytest.mark.parametrize(
    "label,case,holds",
    [("b3", CongruentCase("P", 17), True), ("b3", CongruentCase("P", 13), False), ("b6", CongruentCase("PQ", 5, 13), True),
     ("b6", CongruentCase("PQ", 5, 7), False), ("b2", CongruentCase("TwoPQ", 17, 13), True), ("b2", CongruentCase("TwoPQ", 17, 5), False)],
)
def test_necessary_condition_examples(label, case, holds):
    assert necessary_condition(label, case).holds is holds


def test_corrected_predicate_only_changes_two_labels():
    diffs = set()
    for p in ODD_PRIMES[:15]:
        for q in ODD_PRIMES[:15]:
            if p == q:
                continue
            case = CongruentCase("TwoPQ", p, q)
            for label in labels_for(5):
                if necessary_condition(label, case).holds != necessary_condition(label, case, corrected=True).holds:
                    diffs.add(label)
    assert diffs == {"a4", "a5"}


# ---- properties


@given(st.integers(-60, 60), st.integers(-60, 60).filter(lambda y: y % 2))
def test_beta_decomposition_property(x, y):
    if math.gcd(2 * x, y) != 1:
        return
    for form in ("f1", "f2"):
        a, b, c = beta_sum_decomposition(x, y, form)
        assert a + b == FORMS[form](x, y)
        assert a - b == (2 * x * x - y * y) ** 2
        assert a * a + b * b == c * c


@given(st.integers(-200, 200), st.integers(-200, 200).filter(lambda y: y % 2))
def test_forms_residue_classes(x, y):
    if math.gcd(2 * x, y) != 1:
        return
    assert f1(x, y) % 8 == 1
    assert f2(x, y) % 8 == 7
    assert f3(x, y) % 8 == 1


@given(st.integers(1, 300), st.integers(1, 300))
def test_factorization_identity_property(m, e):
    assert factorization_identity_check(m, e)
    assert m**4 + 4 * e**4 == (m * m - 2 * m * e + 2 * e * e) * (m * m + 2 * m * e + 2 * e * e)


@given(st.sampled_from([p for p in ODD_PRIMES if p % 4 == 1]))
def test_alpha_witnesses_verify(p):
    w = alpha_pm_pythagorean(p, 60)
    if w is not None:
        assert isinstance(w, PythWitness) and w.verifies(p)
        assert is_perfect_square(w.auxiliary_square_root**2)[0]


@given(st.sampled_from([p for p in ODD_PRIMES if p % 8 in (1, 7)]))
def test_beta_witnesses_verify(p):
    w = beta_pythagorean(p, 40)
    if w is not None:
        assert w.verifies(p)


def test_c_equals_one_is_not_decisive():
    from congruent_descent.theory import _alpha_test

    a, b = 1, 16  # 257 = 1 + 16^2, the only c = 1 representation
    assert a * a + b * b == 257 and _alpha_test(257, a, b, 1) is None
    w = alpha_pm_pythagorean(257)
    assert (w.a, w.b, w.c, w.kind) == (61, 52, 5, "AlphaPlus") and w.verifies(257)
    assert rank2_criterion(257).rank == 2


def test_verdict_legendre_inputs_are_consistent():
    case = CongruentCase("PQ", 17, 5)
    assert case.legendre_pq == legendre(17, 5)
