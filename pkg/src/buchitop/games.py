"""Two-player Büchi games on finite graphs.

Eve wins a play when it visits a target position infinitely often.  The
solver is the classical nested fixpoint: repeatedly remove the Adam
attractor of the positions from which Eve cannot force a visit to the
target.  Büchi games are positionally determined, so the result includes
a positional strategy for Eve on her winning region.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

EVE, ADAM = 0, 1


@dataclass(frozen=True)
class BuchiGame:
    """Positions ``0..n-1``; ``owner[p]`` is EVE or ADAM.

    Build with :meth:`make`, which gives every stuck position a move into
    a sink that makes its owner lose.
    """

    owner: tuple
    edges: tuple
    target: frozenset
    labels: tuple = field(default=(), compare=False)

    @classmethod
    def make(cls, owner: Sequence[int], edges: Sequence[Iterable[int]],
             target: Iterable[int], labels: Sequence = ()) -> "BuchiGame":
        owner = list(owner)
        edges = [tuple(sorted(set(e))) for e in edges]
        target = set(target)
        labels = list(labels) + [None] * (len(owner) - len(labels))
        sinks = {}
        for p in range(len(owner)):
            if edges[p]:
                continue
            loser = owner[p]
            if loser not in sinks:
                sinks[loser] = len(owner)
                owner.append(EVE)
                edges.append(())
                labels.append(("sink", "eve loses" if loser == EVE else "adam loses"))
                if loser == ADAM:
                    target.add(sinks[loser])
            edges[p] = (sinks[loser],)
        for s in sinks.values():
            edges[s] = (s,)
        return cls(tuple(owner), tuple(edges), frozenset(target), tuple(labels))

    def __len__(self) -> int:
        return len(self.owner)

    @property
    def predecessors(self) -> list:
        pred = [[] for _ in self.owner]
        for p, succ in enumerate(self.edges):
            for q in succ:
                pred[q].append(p)
        return pred


def attractor(game: BuchiGame, player: int, goal: set, arena: set, pred) -> tuple[set, dict]:
    """Positions of ``arena`` from which ``player`` forces a visit to ``goal``.

    Returns the set and, for ``player``'s positions outside ``goal``, the
    move that entered the attractor first, which decreases the rank.
    Processing is in index order, so the choice is deterministic.
    """
    attr = set(goal & arena)
    move = {}
    count = {p: sum(1 for q in game.edges[p] if q in arena) for p in arena}
    queue = deque(sorted(attr))
    while queue:
        q = queue.popleft()
        for p in pred[q]:
            if p not in arena or p in attr:
                continue
            if game.owner[p] == player:
                attr.add(p)
                move[p] = q
                queue.append(p)
            else:
                count[p] -= 1
                if count[p] == 0:
                    attr.add(p)
                    queue.append(p)
    return attr, move


@dataclass(frozen=True)
class Solution:
    winning: frozenset
    strategy: dict


def solve_buchi(game: BuchiGame) -> Solution:
    """Eve's winning region and a positional winning strategy on it."""
    pred = game.predecessors
    arena = set(range(len(game)))
    while True:
        reach, _ = attractor(game, EVE, set(game.target), arena, pred)
        trap = arena - reach
        if not trap:
            break
        lost, _ = attractor(game, ADAM, trap, arena, pred)
        arena -= lost
    _, move = attractor(game, EVE, set(game.target), arena, pred)
    strategy = {}
    for p in sorted(arena):
        if game.owner[p] != EVE:
            continue
        if p in move:
            strategy[p] = move[p]
        else:
            # a target position: stay inside the winning region
            strategy[p] = next(q for q in game.edges[p] if q in arena)
    return Solution(frozenset(arena), strategy)
