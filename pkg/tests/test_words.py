import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from buchitop.errors import AlphabetMismatch, ParseError
from buchitop.words import (BINARY, Alphabet, Dyadic, FiniteWord, first_difference,
                            format_upword, is_in_pinf, iter_upwords, parse_upword,
                            prefix_distance, up, up_canonicalize, up_equal, up_from_pairs,
                            up_letter_at, up_project, xn)


def letters(u, v, n):
    """Reference expansion of u.v^w, independent of UPWord."""
    out = list(u)
    while len(out) < n:
        out.extend(v)
    return tuple(out[:n])


def brute_canonical(u, v):
    """Shortest (|u'|, |v'|) pair denoting the same word, by prefix comparison."""
    # any candidate agrees with u.v^w everywhere once it agrees up to |u| + lcm
    target = letters(u, v, len(u) + len(v) ** 2 + 1)
    best = None
    for lu in range(len(u) + 1):
        for lv in range(1, len(v) + 1):
            u2, v2 = target[:lu], target[lu:lu + lv]
            if letters(u2, v2, len(target)) == target:
                if best is None or (lv, lu) < (len(best[1]), len(best[0])):
                    best = (u2, v2)
    return best


words_idx = st.lists(st.integers(0, 1), max_size=5).map(tuple)
periods_idx = st.lists(st.integers(0, 1), min_size=1, max_size=5).map(tuple)


def test_alphabet_rules():
    with pytest.raises(ValueError):
        Alphabet(("0",))
    with pytest.raises(ValueError):
        Alphabet(("a", "a"))
    assert len(Alphabet.of("a", "b", "c")) == 3
    pairs = Alphabet.pairs(BINARY, BINARY)
    assert pairs.index(("1", "0")) == 2
    assert pairs.component(1) == BINARY


def test_canonicalize_examples():
    x = up_canonicalize(BINARY, (0, 1), (0, 1, 0, 1))
    assert (x.prefix, x.period) == ((), (0, 1))
    assert up("(0)w").period == (0,)
    y = up_canonicalize(BINARY, (1, 0), (0, 1))
    assert brute_canonical((1, 0), (0, 1)) == (y.prefix, y.period)
    with pytest.raises(ValueError):
        up_canonicalize(BINARY, (0,), ())


@settings(max_examples=300, deadline=None)
@given(words_idx, periods_idx)
def test_canonical_form_matches_bruteforce(u, v):
    x = up_canonicalize(BINARY, u, v)
    assert x.letters(len(u) + 3 * len(v) + 3) == letters(u, v, len(u) + 3 * len(v) + 3)
    assert (x.prefix, x.period) == brute_canonical(u, v)
    # idempotent
    assert up_canonicalize(BINARY, x.prefix, x.period) == x


@settings(max_examples=200, deadline=None)
@given(words_idx, periods_idx, words_idx, periods_idx)
def test_equality_is_prefix_agreement(u1, v1, u2, v2):
    x, y = up_canonicalize(BINARY, u1, v1), up_canonicalize(BINARY, u2, v2)
    horizon = len(u1) + len(u2) + math.lcm(len(v1), len(v2))
    same = letters(u1, v1, horizon + 1) == letters(u2, v2, horizon + 1)
    assert up_equal(x, y) == same
    assert (first_difference(x, y) is None) == same


def test_up_equal_examples():
    assert up_equal(up("(01)w"), up("01(01)w"))
    assert not up_equal(up("(0)w"), up("(1)w"))
    assert up_equal(up("(0101)w"), up("(01)w"))
    with pytest.raises(AlphabetMismatch):
        up_equal(up("(0)w"), up("(a)w", Alphabet.of("a", "b")))


def test_letter_at():
    x = up("0(1)w")
    assert up_letter_at(x, 0) == 0 and up_letter_at(x, 5) == 1
    assert up_letter_at(up("(01)w"), 4) == 0


def test_parse_and_format():
    assert format_upword(up("01(10)w")) == "01(10)w"
    assert format_upword(up("1(01)w")) == "(10)w"
    for bad in ["01", "(0)", "0(2)w", "()w"]:
        with pytest.raises(ParseError):
            parse_upword(bad)
    abc = Alphabet.of("a", "b", "c")
    assert format_upword(parse_upword("ab(c)w", abc)) == "ab(c)w"


def test_pinf_and_xn():
    assert is_in_pinf(up("(01)w"))
    assert not is_in_pinf(up("1(0)w"))
    assert (xn(1).prefix, xn(1).period) == ((0, 1), (0,))
    assert format_upword(xn(3)) == "0000001(0)w"
    assert len(xn(4).prefix) == 25 and xn(4).prefix[-1] == 1
    with pytest.raises(ValueError):
        xn(0)
    with pytest.raises(AlphabetMismatch):
        is_in_pinf(up("(a)w", Alphabet.of("a", "b")))
    for n in range(1, 6):
        assert not is_in_pinf(xn(n))
        assert sum(xn(n).prefix) + sum(xn(n).period) == 1


def test_iter_upwords_canonical_and_distinct():
    ws = list(iter_upwords(BINARY, 2, 3))
    assert len(ws) == len(set(ws))
    for x in ws:
        assert up_canonicalize(BINARY, x.prefix, x.period) == x
    # every (u, v) with |u|<=2, |v|<=3 denotes one of them
    for lu in range(3):
        for lv in range(1, 4):
            for u in itertools.product((0, 1), repeat=lu):
                for v in itertools.product((0, 1), repeat=lv):
                    c = up_canonicalize(BINARY, u, v)
                    if len(c.prefix) <= 2:
                        assert c in ws


def test_dyadic():
    assert str(Dyadic.zero()) == "0" and str(Dyadic.power(0)) == "1"
    assert str(Dyadic.power(2)) == "1/4"
    assert Dyadic.power(3) < Dyadic.power(2) and Dyadic.zero() < Dyadic.power(9)
    assert Dyadic.power(1) + Dyadic.power(1) == Fraction(1)
    with pytest.raises(ValueError):
        Dyadic(-1)


def test_prefix_distance_examples():
    assert prefix_distance(up("(0)w"), up("(1)w")) == Dyadic.power(0)
    assert prefix_distance(up("(01)w"), up("(01)w")).is_zero
    assert prefix_distance(up("0(1)w"), up("(0)w")) == Dyadic.power(1)


@settings(max_examples=200, deadline=None)
@given(words_idx, periods_idx, words_idx, periods_idx, words_idx, periods_idx)
def test_prefix_distance_ultrametric(u1, v1, u2, v2, u3, v3):
    x, y, z = (up_canonicalize(BINARY, u, v) for u, v in ((u1, v1), (u2, v2), (u3, v3)))
    assert prefix_distance(x, z) <= max(prefix_distance(x, y), prefix_distance(y, z))


@settings(max_examples=100, deadline=None)
@given(words_idx, periods_idx, words_idx, periods_idx)
def test_pair_zip_roundtrip(u1, v1, u2, v2):
    x, y = up_canonicalize(BINARY, u1, v1), up_canonicalize(BINARY, u2, v2)
    p = up_from_pairs(x, y)
    assert up_project(p, 0) == x and up_project(p, 1) == y


def test_finite_word():
    w = FiniteWord.parse(BINARY, "0110")
    assert str(w) == "0110" and len(w + w) == 8
    with pytest.raises(ValueError):
        FiniteWord(BINARY, (2,))
    with pytest.raises(ParseError):
        FiniteWord.parse(BINARY, "012")
