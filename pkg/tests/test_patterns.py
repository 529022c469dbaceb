from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from maxseg.errors import InvalidArgument
from maxseg.patterns import (ContinuedFraction, admissible_cuts, cf_decompose,
                             check_edge_sequence, convergents, factor_structure,
                             flanking_edge_sequence, flanking_factors, flanking_properties,
                             is_dss_word, leaning_vectors, max_edges_bound, pattern,
                             pattern_power, pattern_word, pell_numbers, reversed_pattern,
                             word_remainders)


def greedy_pattern(a, b):
    """Independent construction: the path from (0,0) to (b,a) hugging a*x - b*y in [0, a+b)."""
    r, out = 0, []
    for _ in range(a + b):
        if r < b:
            out.append("0")
            r += a
        else:
            out.append("1")
            r -= b
    return "".join(out)


def brute_lower_leaning(a, b):
    """Lower leaning points of the pattern path, found by scanning remainders."""
    word = greedy_pattern(a, b)
    x = y = 0
    hits = []
    for c in word:
        x, y = (x + 1, y) if c == "0" else (x, y + 1)
        if a * x - b * y == a + b - 1:
            hits.append((x, y))
    return hits


@pytest.mark.parametrize("a,b,quots", [
    (2, 5, (2, 2)), (1, 1, (1,)), (3, 5, (1, 1, 2)), (1, 2, (2,)), (0, 1, ()),
])
def test_cf_decompose(a, b, quots):
    cf = cf_decompose(a, b)
    assert cf.quotients == quots
    assert cf.value == Fraction(a, b)


def test_flipped_form():
    cf = cf_decompose(3, 5)
    assert cf.flipped().quotients == (1, 1, 1, 1)
    assert cf.flipped().value == cf.value
    assert cf.flipped().flipped() == cf
    assert cf.complexity == 3


@pytest.mark.parametrize("a,b", [(3, 2), (2, 4), (-1, 3), (1, 0)])
def test_cf_decompose_rejects(a, b):
    with pytest.raises(InvalidArgument):
        cf_decompose(a, b)


def test_convergents_examples():
    assert convergents(cf_decompose(3, 5)) == [(0, 1), (1, 1), (1, 2), (3, 5)]
    assert convergents(ContinuedFraction((2,))) == [(0, 1), (1, 2)]
    rows = convergents(cf_decompose(3, 5))
    (p3, q3), (p2, q2) = rows[3], rows[2]
    assert p3 * q2 - p2 * q3 == 1


@pytest.mark.parametrize("quots,word", [
    ((), "0"), ((2,), "001"), ((2, 2), "0001001"), ((1, 1, 2), "00100101"),
])
def test_pattern_words(quots, word):
    assert pattern_word(ContinuedFraction(quots)).word == word


@pytest.mark.parametrize("quots,word", [((2, 2), "1001000"), ((), "0"), ((2,), "100")])
def test_reversed_pattern(quots, word):
    assert reversed_pattern(ContinuedFraction(quots)).word == word


def test_pattern_is_dss_between_upper_leaning_points():
    r = word_remainders("0001001", 2, 5)
    assert r[0] == r[-1] == 0 and max(r) == 6


@pytest.mark.parametrize("a,b,u1l1,l1u2", [
    (3, 5, (4, 1), (1, 2)), (2, 5, (3, 0), (2, 2)),
])
def test_leaning_vectors(a, b, u1l1, l1u2):
    assert leaning_vectors(cf_decompose(a, b)) == (u1l1, l1u2)
    assert (u1l1[0] + l1u2[0], u1l1[1] + l1u2[1]) == (b, a)


def test_leaning_vectors_need_a_slope():
    with pytest.raises(InvalidArgument):
        leaning_vectors(cf_decompose(0, 1))


def test_factor_structure():
    left, right = factor_structure(cf_decompose(3, 5))
    assert (left, right) == ("001", "01")
    assert pattern(3, 5).startswith(left) and pattern(3, 5).endswith(right)
    assert factor_structure(cf_decompose(2, 5)) == ("00", "001")
    with pytest.raises(InvalidArgument):
        factor_structure(cf_decompose(1, 2))


coprime = st.tuples(st.integers(1, 80), st.integers(1, 80)).filter(
    lambda t: t[0] < t[1] and gcd(*t) == 1)


@given(coprime)
def test_pattern_matches_independent_construction(ab):
    a, b = ab
    word = pattern(a, b)
    assert word == greedy_pattern(a, b)
    assert word.count("0") == b and word.count("1") == a
    assert is_dss_word(word, a, b)


@given(coprime)
def test_both_parities_give_the_same_pattern(ab):
    cf = cf_decompose(*ab)
    flipped = cf.flipped()
    assert pattern_word(flipped).word == pattern_word(cf).word
    assert leaning_vectors(flipped) == leaning_vectors(cf)


@given(coprime)
def test_leaning_vectors_match_remainder_scan(ab):
    a, b = ab
    lower = brute_lower_leaning(a, b)
    assert len(lower) == 1
    (lx, ly), = lower
    assert leaning_vectors(cf_decompose(a, b)) == ((lx, ly), (b - lx, a - ly))


def test_pattern_power():
    assert pattern_power("0001001" * 3) == (Fraction(2, 5), 3)
    assert pattern_power("0011") is None
    assert pattern_power("111") is None


def test_flanking_factor_examples():
    cf = ContinuedFraction((2, 2))
    L = flanking_factors(cf, "left", 1)
    R = flanking_factors(cf, "right", 1)
    assert L.word == "0001" and L.complexity == 2
    assert R.word == "001" and R.complexity == 1
    assert R.slope == Fraction(1, 2) > Fraction(2, 5) > L.slope == Fraction(1, 3)


def test_flanking_factor_errors():
    cf = ContinuedFraction((2, 2))
    for cut in (0, 2, 5):
        with pytest.raises(InvalidArgument):
            flanking_factors(cf, "left", cut)
    with pytest.raises(InvalidArgument):
        flanking_factors(cf, "up", 1)


@pytest.mark.parametrize("a,b", [(1, 3), (2, 5), (3, 7), (3, 8), (5, 12), (4, 9), (7, 16)])
def test_flanking_properties_every_cut(a, b):
    cf = cf_decompose(a, b)
    u = cf.quotients[-1]
    for r in range(1, u):
        for l in range(1, u):
            assert all(flanking_properties(cf, r, l).values())


def test_single_quotient_sequence():
    cf = ContinuedFraction((2,))
    rights, lefts = flanking_edge_sequence(cf)
    assert [e.word for e in rights] == ["01"] and [e.word for e in lefts] == ["0"]
    assert all(check_edge_sequence(cf, rights, lefts).values())


def test_two_step_sequence():
    cf = ContinuedFraction((2, 2))
    rights, lefts = flanking_edge_sequence(cf, [(1, 1), (1, 1)])
    assert len(rights) == 2 and len(lefts) == 2
    assert [e.word for e in rights] == ["001", "01"]
    assert [e.word for e in lefts] == ["0001", "0"]
    assert all(check_edge_sequence(cf, rights, lefts).values())


def test_odd_sequence_first_right_edge():
    cf = ContinuedFraction((2, 2, 2))
    rights, _ = flanking_edge_sequence(cf)
    assert rights[0].word == "0001001" + "001"


def test_skipped_steps_and_bad_cuts():
    cf = cf_decompose(3, 5)  # [0; 1, 1, 2]: only rank 1 has a quotient >= 2
    rights, lefts = flanking_edge_sequence(cf, [(1, 1), None, None])
    assert len(rights) == len(lefts) == 1
    with pytest.raises(InvalidArgument):
        flanking_edge_sequence(ContinuedFraction((2, 2)), [(2, 1), (1, 1)])
    with pytest.raises(InvalidArgument):
        flanking_edge_sequence(ContinuedFraction((2, 2)), [(1, 1)])


@pytest.mark.parametrize("a,b", [(2, 5), (5, 12), (7, 17), (3, 10)])
def test_all_admissible_sequences(a, b):
    cf = cf_decompose(a, b)
    for cuts in admissible_cuts(cf):
        rights, lefts = flanking_edge_sequence(cf, cuts)
        assert all(check_edge_sequence(cf, rights, lefts).values()), cuts


def test_pell_prefix():
    assert pell_numbers(9) == [0, 1, 2, 5, 12, 29, 70, 169, 408]


@pytest.mark.parametrize("m,exact,closed", [(512, 7, 7.26), (2, 1, 0.97)])
def test_max_edges_bound(m, exact, closed):
    e, c = max_edges_bound(m)
    assert e == exact
    assert c == pytest.approx(closed, abs=0.01)


def test_max_edges_bound_rejects_small_grid():
    with pytest.raises(InvalidArgument):
        max_edges_bound(1)
