import random

import pytest

from oracles import member, random_nba, sample_words
from buchitop.automata import (NBA, NFA, clopen_nba, empty_nba, find_up_word, nba_empty,
                               nba_member, nfa_member, nfa_sample, pinf_nba, singleton_nba,
                               universal_nba)
from buchitop.closure import (Budget, buchi_decomposition, decomposition_nba, kv_complement,
                              nba_complement, nba_contains, nba_equivalent, nba_intersection,
                              nba_intersection_all, nba_is_cantor_closed, nba_product,
                              nba_projection, nba_union, omega_concat, safety_closure)
from buchitop.errors import AlphabetMismatch, BudgetExceeded
from buchitop.metric import nba_enumeration
from buchitop.words import (BINARY, Alphabet, FiniteWord, iter_upwords, up, up_from_pairs,
                            up_project)

WORDS = list(iter_upwords(BINARY, 2, 3))


def small_automata():
    return [a for k in (1, 2) for a in nba_enumeration(BINARY, k)]


def test_boolean_operations_on_random_automata():
    rng = random.Random(4)
    for _ in range(60):
        a, b = random_nba(rng), random_nba(rng)
        u, i, c = nba_union(a, b), nba_intersection(a, b), nba_complement(a)
        for x in WORDS:
            ma, mb = member(a, x), member(b, x)
            assert member(u, x) == (ma or mb)
            assert member(i, x) == (ma and mb)
            assert member(c, x) == (not ma)


def test_complement_two_constructions_agree():
    rng = random.Random(8)
    for _ in range(40):
        a = random_nba(rng, max_states=3)
        fkv, kv = nba_complement(a), kv_complement(a)
        for x in WORDS:
            assert nba_member(fkv, x) == nba_member(kv, x) == (not member(a, x))


def test_complement_examples():
    comp = nba_complement(pinf_nba())
    assert nba_member(comp, up("1(0)w")) and not nba_member(comp, up("(01)w"))
    assert nba_empty(nba_complement(universal_nba(BINARY)))
    assert nba_equivalent(nba_complement(empty_nba(BINARY)), universal_nba(BINARY))


def test_double_complement_is_identity():
    for a in small_automata()[::13]:
        assert nba_equivalent(nba_complement(nba_complement(a)), a)


def test_contains_is_a_preorder():
    rng = random.Random(12)
    auts = [random_nba(rng, max_states=2) for _ in range(12)]
    for a in auts:
        assert nba_contains(a, a)
        assert nba_contains(universal_nba(BINARY), a)
        assert nba_contains(a, empty_nba(BINARY))
    for a in auts:
        for b in auts:
            if nba_contains(a, b):
                # L(b) inside L(a): no sampled counterexample
                assert all(member(a, x) for x in WORDS if member(b, x))
            else:
                # the counterexample is a UP word
                diff = nba_intersection_all([b, nba_complement(a)])
                x = find_up_word(diff)
                assert member(b, x) and not member(a, x)


def test_contains_examples():
    assert nba_contains(pinf_nba(), singleton_nba(up("(01)w")))
    assert not nba_contains(pinf_nba(), singleton_nba(up("1(0)w")))
    assert nba_contains(clopen_nba(FiniteWord.parse(BINARY, "0")),
                        clopen_nba(FiniteWord.parse(BINARY, "01")))


def test_intersection_all_matches_pairwise():
    rng = random.Random(3)
    for _ in range(30):
        auts = [random_nba(rng) for _ in range(rng.randint(1, 4))]
        big = nba_intersection_all(auts)
        for x in WORDS:
            assert nba_member(big, x) == all(member(a, x) for a in auts)


def test_product_and_projection():
    rng = random.Random(6)
    for _ in range(30):
        a, b = random_nba(rng), random_nba(rng)
        p = nba_product(a, b)
        for x in WORDS[::3]:
            for y in WORDS[::4]:
                assert nba_member(p, up_from_pairs(x, y)) == (member(a, x) and member(b, y))
        proj = nba_projection(p, 0)
        b_nonempty = not nba_empty(b)
        for x in WORDS:
            assert nba_member(proj, x) == (member(a, x) and b_nonempty)


def test_alphabet_mismatch():
    abc = Alphabet.of("a", "b", "c")
    with pytest.raises(AlphabetMismatch):
        nba_union(pinf_nba(), universal_nba(abc))


def test_budget_exceeded():
    rng = random.Random(0)
    auts = [random_nba(rng, max_states=4, density=0.5) for _ in range(6)]
    with pytest.raises(BudgetExceeded):
        nba_intersection_all(auts, Budget(5))
    with pytest.raises(BudgetExceeded):
        nba_complement(pinf_nba(), 1)


def in_closure_oracle(aut, x, horizon):
    # every prefix up to the horizon leads somewhere a nonempty language starts
    nonempty = {q for q in aut.states
                if not nba_empty(NBA(BINARY, aut.state_count, {q}, aut.final, aut.transitions))}
    current = set(aut.initial)
    for a in x.letters(horizon):
        if not current & nonempty:
            return False
        current = {r for (p, b, r) in aut.transitions if p in current and b == a}
    return bool(current & nonempty)


def test_safety_closure_and_cantor_closed():
    assert nba_is_cantor_closed(singleton_nba(up("0(1)w")))
    assert nba_is_cantor_closed(clopen_nba(FiniteWord.parse(BINARY, "01")))
    assert not nba_is_cantor_closed(pinf_nba())
    rng = random.Random(21)
    for _ in range(25):
        a = random_nba(rng, max_states=3)
        closure = safety_closure(a)
        for x in WORDS[::2]:
            horizon = len(x.prefix) + 8 * len(x.period)
            assert nba_member(closure, x) == in_closure_oracle(a, x, horizon)


def test_decomposition_examples():
    pairs = buchi_decomposition(pinf_nba())
    assert len(pairs) == 1
    u, v = pairs[0]
    assert nfa_member(u, FiniteWord.parse(BINARY, "001"))
    assert not nfa_member(u, FiniteWord.parse(BINARY, "10"))
    assert not nfa_member(v, FiniteWord(BINARY, ()))
    assert nba_equivalent(decomposition_nba(pairs, BINARY), pinf_nba())


def test_decomposition_reconstructs_language():
    rng = random.Random(14)
    for _ in range(25):
        a = random_nba(rng, max_states=3)
        rebuilt = decomposition_nba(buchi_decomposition(a), BINARY)
        for x in WORDS:
            assert nba_member(rebuilt, x) == member(a, x)


def test_omega_concat():
    u = NFA(BINARY, 2, {0}, {1}, [(0, 0, 1)])          # {0}
    v = NFA(BINARY, 2, {0}, {1}, [(0, 1, 1)])          # {1}
    cat = omega_concat(u, v)
    assert nba_member(cat, up("0(1)w"))
    assert not nba_member(cat, up("(1)w"))
    eps = NFA(BINARY, 1, {0}, {0}, [])
    assert nba_equivalent(omega_concat(eps, v), singleton_nba(up("(1)w")))
