"""Closure of omega-regular languages under union, intersection, products,
projection and complement, plus the decision procedures built on them."""
from __future__ import annotations

import threading
from collections import deque
from dataclasses import dataclass
from itertools import product as cartesian
from typing import Sequence

from .automata import (NBA, NFA, Automaton, empty_nba, live_states, nba_empty,
                       reduce, trim)
from .errors import AlphabetMismatch, BudgetExceeded
from .words import Alphabet, check_same_alphabet

DEFAULT_MAX_STATES = 10 ** 6


@dataclass
class Budget:
    """State budget plus an optional cancellation flag for long constructions."""

    max_states: int = DEFAULT_MAX_STATES
    cancel: threading.Event | None = None

    def check(self, states: int, what: str = "construction") -> None:
        if states > self.max_states:
            raise BudgetExceeded(f"{what} exceeded {self.max_states} states")
        if self.cancel is not None and self.cancel.is_set():
            raise BudgetExceeded(f"{what} cancelled")


def _budget(budget) -> Budget:
    if budget is None:
        return Budget()
    if isinstance(budget, int):
        return Budget(budget)
    return budget


def nba_union(a: NBA, b: NBA) -> NBA:
    check_same_alphabet(a.alphabet, b.alphabet)
    off = a.state_count
    trans = set(a.transitions) | {(p + off, s, q + off) for p, s, q in b.transitions}
    return NBA(a.alphabet, a.state_count + b.state_count,
               set(a.initial) | {q + off for q in b.initial},
               set(a.final) | {q + off for q in b.final}, trans)


def _flag_step(flag: int, p_final: bool, q_final: bool) -> int:
    if flag == 0:
        return 1 if p_final else 0
    return 0 if q_final else 1


def nba_intersection(a: NBA, b: NBA) -> NBA:
    """Two-copy flag product with ``2 * |a| * |b|`` states."""
    check_same_alphabet(a.alphabet, b.alphabet)
    nb = b.state_count
    idx = lambda p, q, f: (p * nb + q) * 2 + f
    trans = set()
    for p, s, p2 in a.transitions:
        for q in b.states:
            for q2 in b.successors(q, s):
                for f in (0, 1):
                    f2 = _flag_step(f, p in a.final, q in b.final)
                    trans.add((idx(p, q, f), s, idx(p2, q2, f2)))
    return NBA(a.alphabet, 2 * a.state_count * nb,
               {idx(p, q, 0) for p in a.initial for q in b.initial},
               {idx(p, q, 0) for p in a.final for q in b.states}, trans)


def nba_product(a: NBA, b: NBA) -> NBA:
    """Accepts the pairs ``(x, y)`` with ``x`` in ``L(a)`` and ``y`` in ``L(b)``."""
    alphabet = Alphabet.pairs(a.alphabet, b.alphabet)
    nb, kb = b.state_count, len(b.alphabet)
    idx = lambda p, q, f: (p * nb + q) * 2 + f
    trans = set()
    for p, s, p2 in a.transitions:
        for q, t, q2 in b.transitions:
            for f in (0, 1):
                f2 = _flag_step(f, p in a.final, q in b.final)
                trans.add((idx(p, q, f), s * kb + t, idx(p2, q2, f2)))
    return NBA(alphabet, 2 * a.state_count * nb,
               {idx(p, q, 0) for p in a.initial for q in b.initial},
               {idx(p, q, 0) for p in a.final for q in b.states}, trans)


def nba_projection(a: NBA, coordinate: int = 0) -> NBA:
    """Image of ``L(a)`` under the projection onto one coordinate."""
    if not a.alphabet.is_pair:
        raise AlphabetMismatch("projection needs a pair alphabet")
    target = a.alphabet.component(coordinate)
    relabel = [target.index(s[coordinate]) for s in a.alphabet.symbols]
    trans = {(p, relabel[s], q) for p, s, q in a.transitions}
    return NBA(target, a.state_count, a.initial, a.final, trans)


def nba_intersection_all(automata: Sequence[NBA], budget=None) -> NBA:
    """n-ary intersection with a round-robin acceptance counter.

    Only reachable product states are built; the result is reduced.
    """
    automata = list(automata)
    if not automata:
        raise ValueError("need at least one automaton")
    alphabet = automata[0].alphabet
    for aut in automata[1:]:
        check_same_alphabet(alphabet, aut.alphabet)
    if len(automata) == 1:
        return reduce(automata[0])
    budget = _budget(budget)
    k = len(automata)
    starts = [(qs, 0) for qs in cartesian(*(sorted(a.initial) for a in automata))]
    index, order = {}, []
    queue = deque()
    for s in starts:
        index[s] = len(order)
        order.append(s)
        queue.append(s)
    trans = []
    while queue:
        node = queue.popleft()
        qs, c = node
        c2 = (c + 1) % k if qs[c] in automata[c].final else c
        for sym in range(len(alphabet)):
            choices = [automata[i].successors(q, sym) for i, q in enumerate(qs)]
            if not all(choices):
                continue
            for nxt_qs in cartesian(*choices):
                nxt = (nxt_qs, c2)
                if nxt not in index:
                    index[nxt] = len(order)
                    order.append(nxt)
                    queue.append(nxt)
                    budget.check(len(order), "intersection")
                trans.append((index[node], sym, index[nxt]))
    final = {i for i, (qs, c) in enumerate(order) if c == 0 and qs[0] in automata[0].final}
    return reduce(NBA(alphabet, len(order), range(len(starts)), final, trans))


# ---------------------------------------------------------------------------
# rank-based complementation

BOTTOM = -1


def nba_complement(aut: NBA, budget=None) -> NBA:
    """Complement by guessing a tight level ranking (ranks below ``2 * state_count``).

    Before the guess the automaton tracks the subset of reachable states.
    Afterwards a state is (obligation set, ranking): the ranking maps every
    reachable state of ``aut`` to a rank, final states get even ranks only,
    the odd ranks up to the maximum are all used and the maximum never
    changes.  The obligation set holds even-ranked states that still owe a
    visit to an odd rank; the complement accepts whenever it empties.
    Raises :class:`BudgetExceeded` past ``budget`` states.
    """
    budget = _budget(budget)
    aut = reduce(aut)
    n, k = aut.state_count, len(aut.alphabet)
    final = aut.final
    top = 2 * n - 1
    succ = [[aut.successors(q, a) for a in range(k)] for q in range(n)]
    preds = [[[] for _ in range(n)] for _ in range(k)]
    for p, a, q in aut.transitions:
        preds[a][q].append(p)

    def post(mask, a):
        out = 0
        for q in range(n):
            if mask >> q & 1:
                for r in succ[q][a]:
                    out |= 1 << r
        return out

    start = ("S", sum(1 << q for q in aut.initial))
    index, order = {start: 0}, [start]
    queue = deque([start])
    trans = []

    def visit(src, a, nxt):
        if nxt not in index:
            index[nxt] = len(order)
            order.append(nxt)
            queue.append(nxt)
            budget.check(len(order), "complement")
        trans.append((index[src], a, index[nxt]))

    while queue:
        state = queue.popleft()
        if state[0] == "S":
            mask = state[1]
            for a in range(k):
                nxt_mask = post(mask, a)
                visit(state, a, ("S", nxt_mask))
                targets = [q for q in range(n) if nxt_mask >> q & 1]
                if not targets:
                    visit(state, a, ("R", 0, (BOTTOM,) * n))
                for rank in range(1, top + 1, 2):
                    for g in _tight_rankings(targets, [rank] * len(targets), final, rank, n):
                        visit(state, a, ("R", 0, g))
            continue
        _, obligation, g = state
        rank = max(g)
        for a in range(k):
            targets, bounds = [], []
            for q in range(n):
                ranks = [g[p] for p in preds[a][q] if g[p] != BOTTOM]
                if ranks:
                    targets.append(q)
                    bounds.append(min(ranks))
            carried = post(obligation, a) if obligation else None
            if not targets:
                visit(state, a, ("R", 0, (BOTTOM,) * n))
                continue
            for g2 in _tight_rankings(targets, bounds, final, rank, n):
                even = sum(1 << q for q in targets if g2[q] % 2 == 0)
                o2 = even if carried is None else carried & even
                visit(state, a, ("R", o2, g2))
    accepting = {i for i, s in enumerate(order) if s[0] == "R" and s[1] == 0}
    return reduce(NBA(aut.alphabet, len(order), {0}, accepting, trans))


def _tight_rankings(targets, bounds, final, rank, n):
    """Rankings of ``targets`` with maximum exactly ``rank`` (odd) using every
    odd value up to it, respecting per-state upper bounds."""
    need = (rank + 1) // 2
    m = len(targets)
    if need > m:
        return
    g = [BOTTOM] * n

    def rec(i, covered):
        missing = need - len(covered)
        if missing > m - i:
            return
        if i == m:
            yield tuple(g)
            return
        q = targets[i]
        for r in range(min(bounds[i], rank) + 1):
            if r % 2 and q in final:
                continue
            g[q] = r
            if r % 2 and r not in covered:
                yield from rec(i + 1, covered | {r})
            else:
                yield from rec(i + 1, covered)
        g[q] = BOTTOM

    yield from rec(0, frozenset())


def kv_complement(aut: NBA, budget=None, rank_bound: int | None = None) -> NBA:
    """Plain level-ranking complement with ranks up to ``2 * state_count``.

    Larger output than :func:`nba_complement`; kept as an independent route.
    """
    budget = _budget(budget)
    aut = reduce(aut)
    n = aut.state_count
    top = 2 * n if rank_bound is None else rank_bound
    k = len(aut.alphabet)
    final = aut.final
    preds = [[[] for _ in range(n)] for _ in range(k)]
    for p, a, q in aut.transitions:
        preds[a][q].append(p)

    init_rank = tuple(top if q in aut.initial else BOTTOM for q in range(n))
    start = (init_rank, 0)
    index, order = {start: 0}, [start]
    queue = deque([start])
    trans = []
    while queue:
        state = queue.popleft()
        g, obligation = state
        for a in range(k):
            targets, options = [], []
            for q in range(n):
                bounds = [g[p] for p in preds[a][q] if g[p] != BOTTOM]
                if bounds:
                    targets.append(q)
                    options.append([r for r in range(min(bounds) + 1)
                                    if not (r % 2 and q in final)])
            carried = None
            if obligation:
                carried = 0
                for q in range(n):
                    if obligation >> q & 1:
                        for r in aut.successors(q, a):
                            carried |= 1 << r
            for choice in cartesian(*options):
                g2 = [BOTTOM] * n
                even = 0
                for q, r in zip(targets, choice):
                    g2[q] = r
                    if r % 2 == 0:
                        even |= 1 << q
                nxt = (tuple(g2), even if carried is None else carried & even)
                if nxt not in index:
                    index[nxt] = len(order)
                    order.append(nxt)
                    queue.append(nxt)
                    budget.check(len(order), "complement")
                trans.append((index[state], a, index[nxt]))
    accepting = {i for i, (_, o) in enumerate(order) if o == 0}
    return reduce(NBA(aut.alphabet, len(order), {0}, accepting, trans))


def nba_contains(a: NBA, b: NBA, budget=None) -> bool:
    """``L(b) ⊆ L(a)``; complements ``a`` and may raise :class:`BudgetExceeded`."""
    check_same_alphabet(a.alphabet, b.alphabet)
    if nba_empty(b):
        return True
    return nba_empty(nba_intersection_all([b, nba_complement(a, budget)], budget))


def nba_equivalent(a: NBA, b: NBA, budget=None) -> bool:
    return nba_contains(a, b, budget) and nba_contains(b, a, budget)


def safety_closure(aut: NBA) -> NBA:
    """Automaton for the Cantor closure of ``L(aut)``: every prefix extends into it."""
    live = trim(aut)
    if not live_states(live):
        return empty_nba(aut.alphabet)
    return NBA(live.alphabet, live.state_count, live.initial, live.states, live.transitions)


def nba_is_cantor_closed(aut: NBA, budget=None) -> bool:
    return nba_equivalent(aut, safety_closure(aut), budget)


# ---------------------------------------------------------------------------
# Büchi decomposition L = U_1 V_1^w u ... u U_n V_n^w


def buchi_decomposition(aut: NBA) -> list[tuple[NFA, NFA]]:
    """One ``(U_q, V_q)`` pair per final state ``q``.

    ``U_q`` reads from an initial state to ``q``; ``V_q`` reads nonempty
    words from ``q`` back to ``q`` (a fresh start state copies ``q``'s exits).
    """
    pairs = []
    n = aut.state_count
    for q in sorted(aut.final):
        u = NFA(aut.alphabet, n, aut.initial, {q}, aut.transitions)
        loop = set(aut.transitions) | {(n, a, r) for a, r in aut.edges_from(q)}
        v = NFA(aut.alphabet, n + 1, {n}, {q}, loop)
        pairs.append((u, v))
    return pairs


def omega_concat(u: Automaton, v: Automaton) -> NBA:
    """NBA for ``L(u) . (L(v) minus {empty word})^w``."""
    check_same_alphabet(u.alphabet, v.alphabet)
    nu, nv = u.state_count, v.state_count
    hub = nu + nv
    trans = set()
    for p, a, q in u.transitions:
        trans.add((p, a, q))
        if q in u.final:
            trans.add((p, a, hub))
    for p, a, q in v.transitions:
        trans.add((p + nu, a, q + nu))
        if q in v.final:
            trans.add((p + nu, a, hub))
        if p in v.initial:
            trans.add((hub, a, q + nu))
            if q in v.final:
                trans.add((hub, a, hub))
    initial = set(u.initial)
    if u.initial & u.final:
        initial.add(hub)
    return NBA(u.alphabet, nu + nv + 1, initial, {hub}, trans)


def decomposition_nba(pairs: Sequence[tuple[NFA, NFA]], alphabet: Alphabet) -> NBA:
    """Union of ``U_q . V_q^w`` over all pairs."""
    result = empty_nba(alphabet)
    for u, v in pairs:
        result = nba_union(result, omega_concat(u, v))
    return result
