from __future__ import annotations

import math
from fractions import Fraction as F

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from corpus import LENS_TABLES, POWERS_OF_TWO
from lensseq.core import (
    NONLINEAR_VARIANTS,
    LensConstants,
    Seed,
    SequenceWindow,
    alpha_from_four,
    compatibility_check,
    compatibility_failures,
    constants_from_seed,
    extend,
    extend_nonlinear,
    four_term_check,
    gcd_triple,
    generate,
    is_lens_window,
    recurrence_residuals,
    window_constants,
    window_from_terms,
    window_gcd,
)
from lensseq.errors import AllZero, NonSquareDiscriminant, NotLensSequence, ZeroDenominatorTerm, ZeroMiddleTerm

small = st.integers(min_value=-12, max_value=12)
nonzero = small.filter(bool)
int_seeds = st.builds(Seed, small, nonzero, small)


def naive_terms(seed, lo, hi):
    """Independent oracle: dictionary-driven recurrence from the defining formulas."""
    a, b, c = (F(x) for x in seed)
    al = (a * b + b * c + c * a) / (b * b) - 1
    be = (b * b - a * c) / b
    d = {-1: a, 0: b, 1: c}
    n = 1
    while n < hi:
        d[n + 1] = al * d[n] - d[n - 1] + be
        n += 1
    n = -1
    while n > lo:
        d[n - 1] = al * d[n] - d[n + 1] + be
        n -= 1
    return [d[i] for i in range(lo, hi + 1)]


@pytest.mark.parametrize("name, seed, start, consts, terms", LENS_TABLES + [POWERS_OF_TWO], ids=lambda v: v if isinstance(v, str) else "")
def test_table_rows(name, seed, start, consts, terms):
    k = constants_from_seed(Seed(*seed))
    assert (k.alpha, k.beta) == consts
    w = extend(Seed(*seed), 20, 20)
    assert [w.term(start + i) for i in range(len(terms))] == terms


@pytest.mark.parametrize(
    "seed, alpha, beta",
    [((3, 1, 3), 14, -8), ((2, 1, 2), 7, -3), ((-1, 3, 15), 2, 8), ((6, 2, 6), 14, -16), ((1, 2, 4), F(5, 2), 0)],
)
def test_constants_from_seed(seed, alpha, beta):
    assert constants_from_seed(Seed(*seed)) == LensConstants(alpha, beta)


def test_zero_middle_term():
    with pytest.raises(ZeroMiddleTerm):
        constants_from_seed(Seed(1, 0, 1))
    with pytest.raises(ZeroMiddleTerm):
        window_constants(SequenceWindow(0, (0, 0, 0, 0)))


def test_extend_indexing():
    w = extend(Seed(3, 1, 3), 3, 2)
    assert w.origin_index == -3
    assert w.last_index == 4
    assert list(w.indices()) == list(range(-3, 5))
    assert w.term(0) == 1 and w.term(-1) == 3 and w.term(2) == 33
    with pytest.raises(IndexError):
        w.term(5)
    assert w.slice(0, 3).terms == (1, 3, 33)
    assert w.shifted(1).term(1) == 1


def test_generate_from_pair():
    k = LensConstants(14, -8)
    w = generate((1, 3), 0, k, 2, 1)
    assert w.origin_index == -1
    assert w.terms == (3, 1, 3, 33, 451)
    with pytest.raises(ValueError):
        generate((1, 3), 0, k, -1, 0)


def test_rational_seed():
    w = extend(Seed(F(1, 2), 1, 2), 4)
    assert w.terms == tuple(naive_terms((F(1, 2), 1, 2), -1, 5))
    assert not w.is_integral()


def test_powers_of_two_one_directional():
    w = extend(Seed(1, 2, 4), 10, 5)
    forward = [w.term(n) for n in range(-1, 11)]
    assert all(t.denominator == 1 for t in forward)
    assert w.term(-2) == F(1, 2)


@given(int_seeds, st.integers(0, 15), st.integers(0, 15))
def test_extend_matches_naive_oracle(seed, nf, nb):
    w = extend(seed, nf, nb)
    assert list(w.terms) == naive_terms(seed.as_tuple(), -1 - nb, 1 + nf)


@given(int_seeds)
def test_translation_invariance(seed):
    w = extend(seed, 10, 10)
    k = w.constants
    t = w.terms
    for i in range(1, len(t) - 1):
        if t[i] != 0:
            assert constants_from_seed(Seed(t[i - 1], t[i], t[i + 1])) == k


@given(int_seeds)
def test_compatibility_of_every_pair(seed):
    w = extend(seed, 8, 8)
    assert compatibility_failures(w) == []


@given(int_seeds, st.integers(0, 10))
def test_forward_then_backward_identity(seed, n):
    w = extend(seed, n, 0)
    k = w.constants
    # regenerate backwards from the last two terms
    back = generate(w.terms[-2:], w.last_index - 1, k, 0, len(w) - 2)
    assert back.terms == w.terms
    assert back.origin_index == w.origin_index


@given(int_seeds, st.integers(-5, 5).filter(bool))
def test_scaling(seed, m):
    k = constants_from_seed(seed)
    ks = constants_from_seed(seed.scaled(m))
    assert ks.alpha == k.alpha and ks.beta == m * k.beta
    assert extend(seed.scaled(m), 6, 6).terms == tuple(m * t for t in extend(seed, 6, 6).terms)


@given(int_seeds)
def test_gcd_is_constant_along_the_sequence(seed):
    w = extend(seed, 8, 8)
    assume(w.is_integral())
    g = gcd_triple(seed)
    t = w.as_ints()
    assert all(math.gcd(t[i], t[i + 1], t[i + 2]) == g for i in range(len(t) - 2))
    assert window_gcd(w) == g


def test_all_zero_gcd():
    with pytest.raises(AllZero):
        window_gcd(SequenceWindow(0, (0, 0, 0)))


@given(int_seeds, st.sampled_from(NONLINEAR_VARIANTS))
def test_nonlinear_variants_agree(seed, variant):
    ref = extend(seed, 8, 0)
    try:
        alt = extend_nonlinear(seed, variant, 8)
    except (ZeroDenominatorTerm, NonSquareDiscriminant):
        return
    assert alt.terms == ref.terms and alt.origin_index == ref.origin_index


@pytest.mark.parametrize("variant", NONLINEAR_VARIANTS)
def test_nonlinear_on_vesica(variant):
    assert extend_nonlinear(Seed(3, 1, 3), variant, 5).terms == extend(Seed(3, 1, 3), 5).terms


def test_nonlinear_typed_errors():
    with pytest.raises(ValueError):
        extend_nonlinear(Seed(3, 1, 3), "no_such", 3)
    # zero term as a divisor
    with pytest.raises(ZeroDenominatorTerm):
        extend_nonlinear(Seed(1, 1, 0), "three_step_beta", 3)


@given(int_seeds)
def test_four_term_and_alpha_from_four(seed):
    w = extend(seed, 8, 2)
    assert four_term_check(w)
    t = w.terms
    for i in range(len(t) - 3):
        if t[i + 1] and t[i + 2]:
            assert alpha_from_four(*t[i : i + 4]) == w.constants.alpha


def test_four_term_needs_four():
    with pytest.raises(ValueError):
        four_term_check(SequenceWindow(0, (1, 2, 3)))


def test_compatibility_check_detects_tamper():
    k = LensConstants(14, -8)
    assert compatibility_check(1, 3, k)
    assert compatibility_check(3, 33, k)
    assert not compatibility_check(3, 34, k)
    w = SequenceWindow(0, (1, 3, 34))
    assert compatibility_failures(w, k) == [1]
    assert recurrence_residuals(w, k) == [(2, F(1))]
    assert not is_lens_window(w, k)


def test_window_from_terms():
    w = window_from_terms([1, 3, 33, 451])
    assert w.constants == LensConstants(14, -8)
    with pytest.raises(NotLensSequence):
        window_from_terms([1, 3, 33, 452])
    assert window_from_terms([1, 3]).constants is None


def test_window_as_ints():
    assert extend(Seed(3, 1, 3), 1).as_ints() == [3, 1, 3, 33]
    with pytest.raises(ValueError):
        extend(Seed(F(1, 2), 1, 2), 1).as_ints()


def test_seed_helpers():
    s = Seed.of(["1/2", 1, 2])
    assert s.a == F(1, 2)
    assert s.reversed() == Seed(2, 1, F(1, 2))
    assert Seed(1, 2, 3).is_integral() and not s.is_integral()
