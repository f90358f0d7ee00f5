"""The separating-automaton distance on omega-words.

``delta(x, y) = 2^-n`` where ``n`` is the least number of states of a
Büchi automaton accepting exactly one of ``x`` and ``y``.  Separators are
searched exhaustively: :class:`RawSpace` evaluates membership of a UP word
in *every* raw ``k``-state automaton at once with bit-packed relation
tables, and :func:`nba_enumeration` streams one automaton per isomorphism
class for the constructions that need explicit automata.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .automata import NBA, nba_empty, nba_member, universal_nba
from .closure import nba_complement, nba_contains, nba_intersection_all
from .errors import BudgetExceeded
from .words import (Alphabet, Dyadic, UPWord, check_same_alphabet, first_difference,
                    format_upword, up_equal, xn)

log = logging.getLogger(__name__)

RAW_SPACE_LIMIT = 1 << 18
BALL_CAP = 2


def separates(aut: NBA, x: UPWord, y: UPWord) -> bool:
    return nba_member(aut, x) != nba_member(aut, y)


# ---------------------------------------------------------------------------
# raw automaton space with bulk membership


class RawSpace:
    """All NBAs with exactly ``k`` states over an alphabet.

    A raw automaton is the triple (transition bits, initial mask, final
    mask).  Transition bit ``(p * s + a) * k + q`` encodes ``p -a-> q``.
    Relations on the ``k`` states are ``k*k``-bit integers (bit ``i*k+j``
    for the pair ``(i, j)``); composition, closure, image and diagonal
    are table lookups.
    """

    def __init__(self, alphabet: Alphabet, k: int):
        s = len(alphabet)
        self.alphabet, self.k = alphabet, k
        self.trans_bits = k * k * s
        self.transition_sets = 1 << self.trans_bits
        if self.transition_sets > RAW_SPACE_LIMIT:
            raise BudgetExceeded(f"{self.transition_sets} transition sets for k={k}, |alphabet|={s}")
        self.masks = 1 << k
        self.size = self.transition_sets * self.masks * self.masks
        tables = _relation_tables(k)
        self.compose, self.star, self.image, self.diag, self.into = tables
        t = np.arange(self.transition_sets, dtype=np.int64)
        self.letter = []
        for a in range(s):
            rel = np.zeros(self.transition_sets, dtype=np.int64)
            for p in range(k):
                for q in range(k):
                    bit = (p * s + a) * k + q
                    rel |= ((t >> bit) & 1) << (p * k + q)
            self.letter.append(rel)

    def _run(self, word: Sequence[int]) -> np.ndarray:
        rel = np.full(self.transition_sets, _identity(self.k), dtype=np.int64)
        for a in word:
            rel = self.compose[rel, self.letter[a]]
        return rel

    def _run_through_final(self, word: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
        """Plain relation, and per final mask the relation restricted to
        paths seeing a final state before some letter."""
        rel = np.full(self.transition_sets, _identity(self.k), dtype=np.int64)
        through = np.zeros((self.transition_sets, self.masks), dtype=np.int64)
        for a in word:
            seen = through | (rel[:, None] & self.into[None, :])
            through = self.compose[seen, self.letter[a][:, None]]
            rel = self.compose[rel, self.letter[a]]
        return rel, through

    def accepts(self, x: UPWord) -> np.ndarray:
        """Boolean array ``[transition set, initial mask, final mask]``."""
        check_same_alphabet(self.alphabet, x.alphabet)
        stem = self._run(x.prefix)
        loop, loop_final = self._run_through_final(x.period)
        loop_star = self.star[loop]
        reach = self.image[self.compose[stem, loop_star][:, None],
                           np.arange(self.masks)[None, :]]
        cycles = self.diag[self.compose[loop_final, loop_star[:, None]]]
        return (reach[:, :, None] & cycles[:, None, :]) != 0

    def decode(self, t: int, initial: int, final: int) -> NBA:
        k, s = self.k, len(self.alphabet)
        trans = [(p, a, q) for p in range(k) for a in range(s) for q in range(k)
                 if t >> ((p * s + a) * k + q) & 1]
        return NBA(self.alphabet, k, _bits(initial, k), _bits(final, k), trans)

    def first_separator(self, x: UPWord, y: UPWord) -> NBA | None:
        diff = self.accepts(x) != self.accepts(y)
        hits = np.flatnonzero(diff)
        if hits.size == 0:
            return None
        t, i, f = np.unravel_index(hits[0], diff.shape)
        return self.decode(int(t), int(i), int(f))


def _bits(mask: int, k: int) -> set:
    return {q for q in range(k) if mask >> q & 1}


def _identity(k: int) -> int:
    return sum(1 << (i * k + i) for i in range(k))


@lru_cache(maxsize=None)
def _relation_tables(k: int):
    size = 1 << (k * k)
    rels = np.arange(size, dtype=np.int64)
    rows = [(rels >> (i * k)) & ((1 << k) - 1) for i in range(k)]
    # compose[r, m]: row i of r.m is the OR of rows j of m for j in row i of r
    compose = np.zeros((size, size), dtype=np.int64)
    m_rows = [(rels >> (j * k)) & ((1 << k) - 1) for j in range(k)]
    for i in range(k):
        acc = np.zeros((size, size), dtype=np.int64)
        for j in range(k):
            sel = ((rows[i] >> j) & 1).astype(bool)
            acc |= np.where(sel[:, None], m_rows[j][None, :], 0)
        compose |= acc << (i * k)
    star = np.empty(size, dtype=np.int64)
    ident = _identity(k)
    for r in range(size):
        cur = r | ident
        while True:
            nxt = int(compose[cur, cur])
            if nxt == cur:
                break
            cur = nxt
        star[r] = cur
    masks = 1 << k
    image = np.zeros((size, masks), dtype=np.int64)
    for s in range(masks):
        for i in range(k):
            if s >> i & 1:
                image[:, s] |= rows[i]
    diag = np.zeros(size, dtype=np.int64)
    for i in range(k):
        diag |= ((rels >> (i * k + i)) & 1) << i
    # into[f]: pairs whose target lies in f
    into = np.zeros(masks, dtype=np.int64)
    for f in range(masks):
        into[f] = sum(1 << (i * k + j) for i in range(k) for j in range(k) if f >> j & 1)
    return compose, star, image, diag, into


# ---------------------------------------------------------------------------
# canonical enumeration


def nba_enumeration(alphabet: Alphabet, k: int) -> Iterator[NBA]:
    """One NBA per isomorphism class with ``k`` states, initial states
    ``0..i-1`` (``i >= 1``) and every state reachable from an initial one.

    Automata with an unreachable state accept the same language as one
    with fewer states, so the streams for ``1..k`` together cover every
    language of an NBA with at most ``k`` states.  Deterministic order.
    """
    s = len(alphabet)
    slots = [(p, a, q) for p in range(k) for a in range(s) for q in range(k)]
    for n_init in range(1, k + 1):
        perms = [perm for perm in itertools.permutations(range(k))
                 if set(perm[:n_init]) == set(range(n_init))]
        for t in range(1 << len(slots)):
            trans = [slots[i] for i in range(len(slots)) if t >> i & 1]
            if not _all_reachable(k, n_init, trans):
                continue
            for final in range(1 << k):
                key = _encode(trans, final, k)
                if any(_encode([(perm[p], a, perm[q]) for p, a, q in trans],
                               sum(1 << perm[q] for q in range(k) if final >> q & 1), k) < key
                       for perm in perms):
                    continue
                yield NBA(alphabet, k, range(n_init), _bits(final, k), trans)


@dataclass(frozen=True)
class NbaEnumeration:
    """Re-iterable canonical stream of ``k``-state NBAs (see :func:`nba_enumeration`)."""

    alphabet: Alphabet
    state_count: int

    def __iter__(self) -> Iterator[NBA]:
        return nba_enumeration(self.alphabet, self.state_count)


def _encode(trans, final: int, k: int) -> tuple:
    return (final, tuple(sorted(trans)))


def _all_reachable(k: int, n_init: int, trans) -> bool:
    seen = set(range(n_init))
    frontier = list(seen)
    while frontier:
        p = frontier.pop()
        for p2, _, q in trans:
            if p2 == p and q not in seen:
                seen.add(q)
                frontier.append(q)
    return len(seen) == k


# ---------------------------------------------------------------------------
# distance


@dataclass(frozen=True)
class DistanceResult:
    """``exact`` distance, or ``bounded`` meaning ``delta < value``."""

    value: Dyadic
    exact: bool
    separator: NBA | None = field(default=None, compare=False)
    checked: dict = field(default_factory=dict, compare=False)

    @property
    def kind(self) -> str:
        return "exact" if self.exact else "bounded-above"

    def __str__(self) -> str:
        return str(self.value) if self.exact else f"<{self.value}"


def delta(x: UPWord, y: UPWord, k_max: int) -> DistanceResult:
    """Separator distance, searching automata with 1..k_max states."""
    check_same_alphabet(x.alphabet, y.alphabet)
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    if up_equal(x, y):
        return DistanceResult(Dyadic.zero(), True)
    checked = {}
    for k in range(1, k_max + 1):
        try:
            space = RawSpace(x.alphabet, k)
        except BudgetExceeded:
            r = first_difference(x, y)
            if r + 2 == k:
                # the prefix automaton for x|(r+1) separates with r+2 states
                return DistanceResult(Dyadic.power(k), True, None, checked)
            raise
        checked[k] = space.size
        sep = space.first_separator(x, y)
        if sep is not None:
            return DistanceResult(Dyadic.power(k), True, sep, checked)
    return DistanceResult(Dyadic.power(k_max), False, None, checked)


def ball_language(x: UPWord, n: int, budget=None) -> NBA:
    """NBA for the open ball ``{y : delta(x, y) < 2^-n}``.

    Intersects, over every enumerated automaton with at most ``n`` states,
    its language (if it contains ``x``) or its complement (otherwise).
    A constraint already implied by the running intersection is skipped,
    which also removes language-equal duplicates.
    """
    if n < 1:
        raise ValueError("ball radius index must be >= 1")
    if n > BALL_CAP:
        raise BudgetExceeded(f"ball_language is capped at n <= {BALL_CAP}")
    ball = universal_nba(x.alphabet)
    for k in range(1, n + 1):
        for aut in nba_enumeration(x.alphabet, k):
            if nba_member(aut, x):
                if nba_contains(aut, ball, budget):
                    continue
                constraint = aut
            else:
                if nba_empty(nba_intersection_all([ball, aut], budget)):
                    continue
                constraint = nba_complement(aut, budget)
            ball = nba_intersection_all([ball, constraint], budget)
    return ball


def cauchy_demo(k: int, pairs: Sequence[tuple[int, int]]) -> list[dict]:
    """Check that no automaton with at most ``k`` states separates
    ``xn(n)`` and ``xn(m)`` for each pair; one report entry per pair."""
    reports = []
    spaces = [RawSpace(Alphabet(("0", "1")), j) for j in range(1, k + 1)]
    for n, m in pairs:
        if not m > n > k:
            raise ValueError(f"pair ({n}, {m}) needs m > n > k = {k}")
        x, y = xn(n), xn(m)
        checked, separator = {}, None
        for space in spaces:
            checked[space.k] = space.size
            separator = space.first_separator(x, y)
            if separator is not None:
                break
        if separator is not None:
            log.error("automaton with %d states separates xn(%d) and xn(%d)",
                      separator.state_count, n, m)
        reports.append({
            "pair": [n, m],
            "words": [format_upword(x), format_upword(y)],
            "checked": {str(j): c for j, c in checked.items()},
            "checked_total": sum(checked.values()),
            "separator_found": separator is not None,
            "separator": None if separator is None else str(separator),
            "result": "verified" if separator is None else "refuted",
        })
    return reports
