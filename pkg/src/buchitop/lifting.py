"""Run annotation: every omega-regular set is the projection of a closed
omega-regular subset of ``Sigma^N x P_inf``.

The lifted automaton reads pairs ``(a, e)`` and insists that ``e = 1``
exactly when the current state is final, so the second track of an
accepted pair is the final-visit sequence of an accepting run.
"""
from __future__ import annotations

from dataclasses import dataclass

from .automata import NBA, find_up_word, nba_member, singleton_nba, universal_nba
from .closure import nba_intersection_all, nba_product
from .errors import EmptyLanguage
from .words import (BINARY, Alphabet, UPWord, check_same_alphabet, up_from_pairs,
                    up_project)


@dataclass(frozen=True)
class LiftedNBA:
    base: NBA
    lifted: NBA


def lift(aut: NBA) -> LiftedNBA:
    alphabet = Alphabet.pairs(aut.alphabet, BINARY)
    trans = {(p, a * 2 + (1 if p in aut.final else 0), q) for p, a, q in aut.transitions}
    return LiftedNBA(aut, NBA(alphabet, aut.state_count, aut.initial, aut.final, trans))


def lift_witness(lifted: LiftedNBA, x: UPWord, within: NBA | None = None, budget=None) -> UPWord:
    """Annotation ``alpha`` with ``(x, alpha)`` accepted by ``lifted.lifted``.

    ``within`` optionally restricts the pair further (an automaton over the
    same pair alphabet).  Raises :class:`EmptyLanguage` if no annotation
    exists, which for ``within=None`` means ``x`` is not in the base language.
    """
    check_same_alphabet(lifted.base.alphabet, x.alphabet)
    pinned = nba_product(singleton_nba(x), universal_nba(BINARY))
    parts = [lifted.lifted, pinned] + ([within] if within is not None else [])
    try:
        pair = find_up_word(nba_intersection_all(parts, budget))
    except EmptyLanguage:
        raise EmptyLanguage(f"no accepting run annotation for {x}") from None
    return up_project(pair, 1)


def lift_member(lifted: LiftedNBA, x: UPWord, alpha: UPWord) -> bool:
    return nba_member(lifted.lifted, up_from_pairs(x, alpha))
