import itertools
import random

import pytest

from oracles import all_raw_nbas, member, sample_words
from buchitop.automata import nba_member, singleton_nba
from buchitop.closure import nba_equivalent
from buchitop.errors import BudgetExceeded
from buchitop.metric import (RawSpace, ball_language, cauchy_demo, delta, nba_enumeration,
                             separates)
from buchitop.words import BINARY, Dyadic, iter_upwords, up, up_equal, xn

WORDS = list(iter_upwords(BINARY, 2, 3))


def oracle_delta(x, y, k_max):
    """Smallest separator size by brute force over every raw automaton."""
    for k in range(1, k_max + 1):
        for aut in all_raw_nbas(k):
            if member(aut, x) != member(aut, y):
                return k
    return None


def test_raw_space_sizes():
    assert RawSpace(BINARY, 1).size == 16
    assert RawSpace(BINARY, 2).size == 4096
    with pytest.raises(BudgetExceeded):
        RawSpace(BINARY, 4)


def test_raw_space_matches_oracle_for_one_state():
    space = RawSpace(BINARY, 1)
    raw = list(all_raw_nbas(1))
    for x in WORDS:
        acc = space.accepts(x)
        got = sorted(str(space.decode(t, i, f)) for t, i, f in zip(*acc.nonzero()))
        want = sorted(str(a) for a in raw if member(a, x))
        assert got == want


def test_enumeration_counts_and_reachability():
    one = list(nba_enumeration(BINARY, 1))
    assert len(one) == 8
    two = list(nba_enumeration(BINARY, 2))
    assert len({str(a) for a in two}) == len(two)
    for a in two:
        assert 0 in a.initial


def test_enumeration_covers_every_raw_language():
    enumerated = [a for k in (1, 2) for a in nba_enumeration(BINARY, k)]
    by_signature = {}
    for a in enumerated:
        by_signature.setdefault(tuple(nba_member(a, x) for x in WORDS), []).append(a)
    rng = random.Random(0)
    raw = list(all_raw_nbas(2))
    for aut in raw:
        sig = tuple(member(aut, x) for x in WORDS)
        assert sig in by_signature or not any(sig)
    for aut in rng.sample(raw, 150):
        sig = tuple(member(aut, x) for x in WORDS)
        if not any(sig):
            continue
        assert any(nba_equivalent(aut, cand) for cand in by_signature[sig])


def test_delta_examples():
    r = delta(up("(0)w"), up("(1)w"), 3)
    assert r.exact and r.value == Dyadic.power(1)
    assert separates(r.separator, up("(0)w"), up("(1)w"))
    assert delta(up("(01)w"), up("01(01)w"), 1).value.is_zero
    far = delta(xn(3), xn(4), 2)
    assert far.kind == "bounded-above" and far.value == Dyadic.power(2)
    assert str(far) == "<1/4"


def test_delta_matches_bruteforce():
    words = sample_words(BINARY, 12, seed=5, max_prefix=3, max_period=3)
    for x, y in itertools.combinations(words, 2):
        k = oracle_delta(x, y, 2)
        r = delta(x, y, 2)
        if up_equal(x, y):
            assert r.value.is_zero
        elif k is None:
            assert not r.exact
        else:
            assert r.exact and r.value == Dyadic.power(k)
            assert separates(r.separator, x, y)


def test_delta_beyond_raw_limit_uses_prefix_bound():
    # the words differ at position 0, so a 2-state prefix automaton separates
    r = delta(up("(0)w"), up("1(0)w"), 4)
    assert r.exact and r.value == Dyadic.power(1)
    # first difference at position 2: exact only if some automaton with <= 3 states separates
    r = delta(up("00(0)w"), up("001(0)w"), 4)
    assert r.exact


def test_delta_symmetric_and_ultrametric():
    words = sample_words(BINARY, 7, seed=17)
    d = {}
    for x, y in itertools.product(words, repeat=2):
        d[x, y] = delta(x, y, 2)
    for x, y in itertools.product(words, repeat=2):
        assert d[x, y].value == d[y, x].value
        assert d[x, y].value.is_zero == up_equal(x, y)
    for x, y, z in itertools.product(words, repeat=3):
        if d[x, y].exact and d[y, z].exact:
            assert d[x, z].value <= max(d[x, y].value, d[y, z].value)


def test_isolated_points():
    # singleton_nba(x) has |u| + |v| states, so nothing else is closer than that
    for x in sample_words(BINARY, 8, seed=2, max_prefix=1, max_period=2):
        n = len(x.prefix) + len(x.period)
        sing = singleton_nba(x)
        for y in WORDS:
            if not up_equal(x, y):
                assert separates(sing, x, y)
                assert delta(x, y, n).exact
                assert delta(x, y, n).value >= Dyadic.power(n)


def test_ball_radius_one():
    b = ball_language(up("(0)w"), 1)
    assert nba_equivalent(b, singleton_nba(up("(0)w")))


def test_ball_agrees_with_delta():
    for x in [up("(01)w"), up("1(0)w")]:
        b = ball_language(x, 2)
        for y in WORDS:
            r = delta(x, y, 2)
            inside = r.value.is_zero or not r.exact
            assert nba_member(b, y) == inside


def test_balls_are_nested():
    x = up("(01)w")
    b1, b2 = ball_language(x, 1), ball_language(x, 2)
    for y in WORDS:
        if nba_member(b2, y):
            assert nba_member(b1, y)
    with pytest.raises(BudgetExceeded):
        ball_language(x, 3)


def test_cauchy_demo_counts():
    reports = cauchy_demo(2, [(3, 4), (3, 5), (4, 5)])
    assert [r["pair"] for r in reports] == [[3, 4], [3, 5], [4, 5]]
    for r in reports:
        assert r["checked"] == {"1": 16, "2": 4096} and r["checked_total"] == 4112
        assert r["result"] == "verified" and not r["separator_found"]
    with pytest.raises(ValueError):
        cauchy_demo(2, [(2, 5)])


def test_cauchy_words_have_no_small_separator_bruteforce():
    assert oracle_delta(xn(3), xn(4), 2) is None
