import random
from fractions import Fraction

import pytest

from helpers import example_s_gamma, random_presentation, random_word
from strandwalk.braid import BraidWord, burau
from strandwalk.errors import BadGrade, NotStringLink
from strandwalk.linalg import Matrix
from strandwalk.randomwalk import (
    ClosurePresentation,
    blocks,
    closed_cycle,
    compose,
    eigen_check,
    equilibrium,
    is_string_link,
    ltw,
    ltw_exterior,
    string_link_permutation,
    truncated_series_gaps,
    truncated_series_oracle,
)
from strandwalk.ring import LaurentPoly, RatFunc
from strandwalk.verify import EXAMPLE_S

ONE, ZERO = LaurentPoly.one(), LaurentPoly.zero()


# --- blocks and the string-link test ------------------------------------------

def test_blocks_pure_braid():
    cp = ClosurePresentation(3, 0, BraidWord(3, (1, -2)))
    blk = blocks(cp)
    assert blk.x == burau(cp.braid)
    assert blk.y.cols == 0 and blk.z.rows == 0 and blk.q.rows == 0


def test_blocks_identity_closure():
    cp = ClosurePresentation(2, 1, BraidWord(3, ()))
    blk = blocks(cp)
    assert blk.x == Matrix.identity(2, ONE, ZERO)
    assert blk.q == Matrix(1, 1, [ONE])


def test_blocks_reassemble():
    rng = random.Random(0)
    for _ in range(5):
        cp = random_presentation(rng, 2, 2, 8, want_string_link=False)
        blk = blocks(cp)
        assert Matrix.assemble([[blk.x, blk.y], [blk.z, blk.q]]) == burau(cp.braid)


def test_is_string_link():
    assert not is_string_link(ClosurePresentation(2, 1, BraidWord(3, ())))
    assert is_string_link(ClosurePresentation(2, 0, BraidWord(2, (1, 1))))
    assert is_string_link(EXAMPLE_S)


def test_closed_cycle_reported():
    cp = ClosurePresentation(2, 2, BraidWord(4, ()))
    assert closed_cycle(cp) == [3]
    with pytest.raises(NotStringLink) as exc:
        ltw(cp)
    assert exc.value.cycle


# --- the invariant ---------------------------------------------------------------

def test_ltw_reduces_to_burau_on_braids():
    rng = random.Random(1)
    for n in (1, 2, 3):
        cp = ClosurePresentation(n, 0, BraidWord(n, random_word(rng, n, 8)))
        inv = ltw(cp)
        assert inv.denominator == ONE
        assert inv.gamma == burau(cp.braid).map_entries(RatFunc.from_laurent)


def test_ltw_example_s():
    inv = ltw(EXAMPLE_S)
    assert inv.gamma == example_s_gamma()
    assert inv.denominator == LaurentPoly({0: 2, 2: -1})


def test_ltw_not_string_link():
    with pytest.raises(NotStringLink):
        ltw(ClosurePresentation(2, 1, BraidWord(3, ())))


def test_t1_specialization_is_link_permutation():
    rng = random.Random(2)
    for _ in range(10):
        n, m = rng.choice([(2, 1), (3, 1), (2, 2), (1, 2)])
        cp = random_presentation(rng, n, m, 8)
        at1 = ltw(cp).gamma.map_entries(lambda r: r.specialize_t1())
        assert at1 == string_link_permutation(cp).matrix()


def test_column_sums_are_one():
    rng = random.Random(3)
    for _ in range(6):
        cp = random_presentation(rng, rng.randint(1, 3), rng.randint(0, 2), 8)
        g = ltw(cp).gamma
        for j in range(g.cols):
            total = RatFunc.zero()
            for i in range(g.rows):
                total = total + g.entry(i, j)
            assert total.is_one()


def test_denominator_is_one_at_t1():
    rng = random.Random(4)
    for _ in range(8):
        cp = random_presentation(rng, rng.randint(1, 3), rng.randint(0, 3), 10)
        assert ltw(cp).denominator.specialize_t1() == 1


# --- exterior powers ----------------------------------------------------------------

def test_ltw_exterior_grades():
    assert ltw_exterior(EXAMPLE_S, 0) == Matrix(1, 1, [RatFunc.one()])
    assert ltw_exterior(EXAMPLE_S, 1) == ltw(EXAMPLE_S).gamma
    top = ltw_exterior(EXAMPLE_S, 2)
    expected = RatFunc(LaurentPoly({0: 2, -2: -1}), LaurentPoly({0: 2, 2: -1}))
    assert top == Matrix(1, 1, [expected])
    with pytest.raises(BadGrade):
        ltw_exterior(EXAMPLE_S, 3)


def test_functoriality_braid_concatenation():
    rng = random.Random(5)
    for _ in range(5):
        n = rng.randint(2, 3)
        w1 = BraidWord(n, random_word(rng, n, 6))
        w2 = BraidWord(n, random_word(rng, n, 6))
        t_cp = ClosurePresentation(n, 0, w2)
        s_cp = ClosurePresentation(n, 0, w1)
        stacked = ClosurePresentation(n, 0, w1.concat(w2))
        assert ltw(stacked).gamma == ltw(t_cp).gamma * ltw(s_cp).gamma
        for k in range(n + 1):
            assert ltw_exterior(stacked, k) == ltw_exterior(t_cp, k) * ltw_exterior(
                s_cp, k
            )


def test_functoriality_closure_then_braid():
    # a closure followed by a pure braid on top multiplies the invariants
    rng = random.Random(6)
    for _ in range(5):
        lower = random_presentation(rng, 2, rng.randint(1, 2), 6)
        upper = ClosurePresentation(2, 0, BraidWord(2, random_word(rng, 2, 6)))
        comp = compose(upper, lower)
        assert ltw(comp).gamma == ltw(upper).gamma * ltw(lower).gamma


def test_compose_general_pairs():
    rng = random.Random(7)
    for _ in range(6):
        n = rng.randint(1, 3)
        lower = random_presentation(rng, n, rng.randint(0, 2), 6)
        upper = random_presentation(rng, n, rng.randint(0, 2), 6)
        comp = compose(upper, lower)
        assert comp.m == lower.m + upper.m
        assert is_string_link(comp)
        assert ltw(comp).gamma == ltw(upper).gamma * ltw(lower).gamma


# --- eigenvectors and the equilibrium state ----------------------------------------

def test_eigen_example_s_by_hand():
    # column sums: (1 + 1-t)/(2-t) = 1 and (1/t - 1 + 3 - t - 1/t)/(2-t) = 1;
    # first entry of gamma (1, t)^T: (1 + t(1/t - 1))/(2-t) = 1
    assert eigen_check(ltw(EXAMPLE_S))


def test_eigen_identity_and_random():
    rng = random.Random(8)
    assert eigen_check(ltw(ClosurePresentation(3, 0, BraidWord(3, ()))))
    for _ in range(6):
        cp = random_presentation(rng, rng.randint(1, 3), rng.randint(0, 2), 8)
        assert eigen_check(ltw(cp))


def test_equilibrium():
    assert equilibrium(1) == [RatFunc.one()]
    for n in (1, 2, 3, 5):
        p = equilibrium(n)
        total = RatFunc.zero()
        for entry in p:
            total = total + entry
        assert total.is_one()
        # normalized right eigenvector: p_j = t^(j-1) (1-t)/(1-t^n)
        num = LaurentPoly({0: 1, 2: -1})
        den = LaurentPoly({0: 1, 2 * n: -1})
        if n > 1:
            for j, entry in enumerate(p):
                assert entry == RatFunc(LaurentPoly.t_power(j) * num, den)


def test_equilibrium_is_fixed_by_gamma():
    rng = random.Random(9)
    cp = random_presentation(rng, 3, 2, 8)
    g = ltw(cp).gamma
    p = Matrix(3, 1, equilibrium(3))
    assert g * p == p


# --- the numeric oracle ---------------------------------------------------------------

def test_oracle_zero_crossings_is_x():
    t0 = Fraction(9, 10)
    blk = blocks(EXAMPLE_S)
    expected = blk.x.map_entries(lambda p: p.evaluate_t(t0))
    assert truncated_series_oracle(EXAMPLE_S, 0, t0) == expected


def test_oracle_braid_is_exact_for_all_truncations():
    cp = ClosurePresentation(2, 0, BraidWord(2, (1, 1, -1)))
    t0 = Fraction(1, 2)
    exact = burau(cp.braid).map_entries(lambda p: p.evaluate_t(t0))
    for trunc in (0, 1, 5):
        assert truncated_series_oracle(cp, trunc, t0) == exact


def test_oracle_converges_on_example_s():
    t0 = Fraction(9, 10)
    approx = truncated_series_oracle(EXAMPLE_S, 60, t0)
    exact = ltw(EXAMPLE_S).gamma.map_entries(lambda r: r.evaluate_t(t0))
    gap = max(abs(a - b) for a, b in zip(approx.entries, exact.entries))
    assert gap < Fraction(1, 10**6)


def test_oracle_gap_history_non_increasing_tail():
    gaps = truncated_series_gaps(EXAMPLE_S, 40, Fraction(9, 10))
    assert gaps[0] > gaps[10] > gaps[20]
    for i in range(20, 30):
        assert gaps[i + 10] <= gaps[i]


def test_oracle_rejects_bad_point():
    with pytest.raises(ValueError):
        truncated_series_oracle(EXAMPLE_S, 5, Fraction(3, 2))
    with pytest.raises(ValueError):
        truncated_series_oracle(EXAMPLE_S, 5, Fraction(0))
    with pytest.raises(NotStringLink):
        truncated_series_oracle(ClosurePresentation(2, 1, BraidWord(3, ())), 5, Fraction(1, 2))
