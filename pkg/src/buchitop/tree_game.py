"""The strong Choquet game on labelled binary trees.

Same strategy as the word game; annotations are trees with infinitely
many ones on every path, and the level sets are
``O_k = {t : every path carries at least k ones}``, so ``s^n_l`` is the
shallowest prefix (deeper than ``s^n_(l-1)``) whose every path already
has ``l + 1`` ones.  Büchi tree automata have no complementation, so
containment between sets is never decided here; membership is.
"""
from __future__ import annotations

from .automata import pinf_nba
from .choquet import (UNDECIDED, GameReport, GameState, Move1, Space, new_game, parse_script,
                      play_scripted)
from .trees import (BINARY, bta_intersection_all, bta_member, bta_product, bta_projection,
                    clopen_bta, constant_tree, exists_path, find_tree, load_bta, load_tree,
                    min_depth_for_level, serialize_tree, singleton_bta, tree_lift,
                    tree_prefix, tree_project, universal_bta)
from .words import Alphabet


class TreeSpace(Space):
    name = "trees"

    def member(self, aut, t):
        return bta_member(aut, t)

    def lift(self, aut):
        return tree_lift(aut)

    def witness(self, lifted, t, within, budget):
        parts = [lifted] + ([within] if within is not None else [])
        pinned = bta_product(singleton_bta(t), universal_bta(BINARY))
        pair = find_tree(bta_intersection_all(parts + [pinned], budget))
        return tree_project(pair, 1)

    def prefix(self, t, l):
        return tree_prefix(t, l + 1)

    def annotation_prefix(self, alpha, previous, level):
        d = min_depth_for_level(alpha, level + 1)
        if previous is not None:
            d = max(d, previous.depth + 1)
        return tree_prefix(alpha, d)

    def box(self, w, s):
        return bta_product(clopen_bta(w), clopen_bta(s))

    def meet(self, automata, budget):
        return bta_intersection_all(automata, budget)

    def project(self, aut):
        return bta_projection(aut, 0)

    def contains(self, big, small, budget):
        return UNDECIDED

    def find(self, aut):
        return find_tree(aut)

    def fmt(self, t):
        return serialize_tree(t)

    def fmt_prefix(self, p):
        return str(p)

    def size(self, aut):
        return aut.state_count


def new_tree_game(alphabet: Alphabet = BINARY, **options) -> GameState:
    options.setdefault("budget", None)
    return new_game(alphabet, TreeSpace(), **options)


def play_tree_scripted(adversary, rounds: int, alphabet: Alphabet = BINARY, **options) -> GameReport:
    return play_scripted(adversary, rounds, new_tree_game(alphabet, **options))


def parse_tree_script(text: str, base_dir: str = ".") -> list[Move1]:
    """``round <i>: tree=<tree-file> L=<bta-file>`` per line."""
    return parse_script(text, base_dir, point_key="tree", load_point=load_tree, load_set=load_bta)


# ---------------------------------------------------------------------------
# adversaries


def stabilizing_tree(t, settle: int = 2):
    """Prefix neighbourhoods of ``t`` for ``settle`` rounds, then ``{t}``."""
    def move(i: int, state: GameState) -> Move1:
        if i < settle:
            return Move1(t, clopen_bta(tree_prefix(t, i)))
        return Move1(t, singleton_bta(t))
    return move


def path_opens(i: int, state: GameState) -> Move1:
    """Trees with a path carrying infinitely many 1s, under a growing
    all-ones prefix; the point is the all-ones tree."""
    one = constant_tree(BINARY, "1")
    L = bta_intersection_all([exists_path(pinf_nba()), clopen_bta(tree_prefix(one, i))])
    return Move1(one, L)
