"""Regular infinite binary trees and Büchi tree automata.

A regular tree is given by a finite deterministic generator: each
generator state has a label and a left and right child state.  A Büchi
tree automaton (BTA) accepts a tree when some run labels every node with
a state so that every path visits final states infinitely often.
Membership and emptiness are Büchi games (see :mod:`.games`).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import product as cartesian
from typing import Sequence

from .automata import NBA, _parse_symbol, _symbol_index
from .closure import _budget, _flag_step
from .errors import AlphabetMismatch, EmptyLanguage, ParseError
from .games import ADAM, EVE, BuchiGame, solve_buchi
from .words import BINARY, Alphabet, check_same_alphabet, symbol_text

LEFT, RIGHT = 0, 1


# ---------------------------------------------------------------------------
# regular trees


@dataclass(frozen=True)
class RegularTree:
    alphabet: Alphabet
    state_count: int
    root: int
    label: tuple
    left: tuple
    right: tuple

    def __post_init__(self):
        for name in ("label", "left", "right"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        n = self.state_count
        if n < 1:
            raise ValueError("a tree generator needs at least one state")
        if not (len(self.label) == len(self.left) == len(self.right) == n):
            raise ValueError("label, left and right must be total on the generator states")
        if not 0 <= self.root < n:
            raise ValueError(f"root {self.root} out of range")
        for s in range(n):
            if not 0 <= self.label[s] < len(self.alphabet):
                raise ValueError(f"label of state {s} out of range")
            if not (0 <= self.left[s] < n and 0 <= self.right[s] < n):
                raise ValueError(f"child of state {s} out of range")

    def child(self, s: int, direction: int) -> int:
        return self.left[s] if direction == LEFT else self.right[s]

    def node_state(self, path: Sequence[int]) -> int:
        s = self.root
        for d in path:
            s = self.child(s, d)
        return s

    def at(self, path: Sequence[int]) -> int:
        """Label index at the node reached by ``path`` (0 = left, 1 = right)."""
        return self.label[self.node_state(path)]

    def __str__(self) -> str:
        return serialize_tree(self)


def constant_tree(alphabet: Alphabet, symbol) -> RegularTree:
    return RegularTree(alphabet, 1, 0, (alphabet.index(symbol),), (0,), (0,))


def tree_equal(t1: RegularTree, t2: RegularTree) -> bool:
    """Bisimulation check on the product of the two generators."""
    check_same_alphabet(t1.alphabet, t2.alphabet)
    seen = {(t1.root, t2.root)}
    queue = deque(seen)
    while queue:
        a, b = queue.popleft()
        if t1.label[a] != t2.label[b]:
            return False
        for nxt in ((t1.left[a], t2.left[b]), (t1.right[a], t2.right[b])):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return True


def tree_pair(t1: RegularTree, t2: RegularTree) -> RegularTree:
    """The tree of label pairs, over the pair alphabet."""
    alphabet = Alphabet.pairs(t1.alphabet, t2.alphabet)
    m = len(t2.alphabet)
    index, order = {(t1.root, t2.root): 0}, [(t1.root, t2.root)]
    queue = deque(order)
    while queue:
        a, b = queue.popleft()
        for nxt in ((t1.left[a], t2.left[b]), (t1.right[a], t2.right[b])):
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
                queue.append(nxt)
    return RegularTree(alphabet, len(order), 0,
                       [t1.label[a] * m + t2.label[b] for a, b in order],
                       [index[(t1.left[a], t2.left[b])] for a, b in order],
                       [index[(t1.right[a], t2.right[b])] for a, b in order])


def tree_project(t: RegularTree, coordinate: int) -> RegularTree:
    alphabet = t.alphabet.component(coordinate)
    relabel = [alphabet.index(s[coordinate]) for s in t.alphabet.symbols]
    return RegularTree(alphabet, t.state_count, t.root, [relabel[a] for a in t.label],
                       t.left, t.right)


def reachable_tree_states(t: RegularTree) -> list:
    seen, order = {t.root}, [t.root]
    queue = deque(order)
    while queue:
        s = queue.popleft()
        for nxt in (t.left[s], t.right[s]):
            if nxt not in seen:
                seen.add(nxt)
                order.append(nxt)
                queue.append(nxt)
    return order


def parse_tree(text: str) -> RegularTree:
    """Line format: ``tree``, ``alphabet ...`` (default ``0 1``), ``states n``,
    ``root i`` and one ``node i label a left j right k`` line per state."""
    header = False
    alphabet, states, root = BINARY, None, 0
    nodes = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if not header:
            if head != "tree" or rest:
                raise ParseError("expected 'tree' header", lineno)
            header = True
            continue
        try:
            if head == "alphabet":
                alphabet = Alphabet(tuple(_parse_symbol(t) for t in rest))
            elif head == "states":
                (n,) = rest
                states = int(n)
            elif head == "root":
                (r,) = rest
                root = int(r)
            elif head == "node":
                i, kw1, a, kw2, j, kw3, k = rest
                if (kw1, kw2, kw3) != ("label", "left", "right"):
                    raise ParseError("expected 'node i label a left j right k'", lineno)
                if int(i) in nodes:
                    raise ParseError(f"node {i} defined twice", lineno)
                nodes[int(i)] = (_symbol_index(alphabet, a, lineno), int(j), int(k))
            else:
                raise ParseError(f"unknown directive {head!r}", lineno)
        except ParseError:
            raise
        except ValueError as exc:
            raise ParseError(str(exc) or f"malformed {head!r} line", lineno) from None
    if not header:
        raise ParseError("empty tree file")
    if states is None:
        raise ParseError("missing 'states' line")
    missing = [i for i in range(states) if i not in nodes]
    if missing or len(nodes) != states:
        raise ParseError(f"generator not total: nodes {missing or sorted(nodes)}")
    try:
        return RegularTree(alphabet, states, root, [nodes[i][0] for i in range(states)],
                           [nodes[i][1] for i in range(states)],
                           [nodes[i][2] for i in range(states)])
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def serialize_tree(t: RegularTree) -> str:
    lines = ["tree", f"alphabet {t.alphabet}", f"states {t.state_count}", f"root {t.root}"]
    for s in range(t.state_count):
        a = symbol_text(t.alphabet.symbol(t.label[s]))
        lines.append(f"node {s} label {a} left {t.left[s]} right {t.right[s]}")
    return "\n".join(lines) + "\n"


def load_tree(path) -> RegularTree:
    with open(path, encoding="utf-8") as fh:
        return parse_tree(fh.read())


# ---------------------------------------------------------------------------
# finite prefixes


@dataclass(frozen=True)
class FiniteTreePrefix:
    """Labels of every node of depth ``<= depth``.

    ``levels[d]`` lists the ``2^d`` labels of depth ``d`` in path order,
    reading a path as a binary number with left = 0.
    """

    alphabet: Alphabet
    depth: int
    levels: tuple

    def __post_init__(self):
        levels = tuple(tuple(level) for level in self.levels)
        object.__setattr__(self, "levels", levels)
        if len(levels) != self.depth + 1:
            raise ValueError("prefix needs one level per depth")
        for d, level in enumerate(levels):
            if len(level) != 2 ** d:
                raise ValueError(f"level {d} must have {2 ** d} labels")

    def at(self, path: Sequence[int]) -> int:
        i = 0
        for d in path:
            i = 2 * i + d
        return self.levels[len(path)][i]

    def __str__(self) -> str:
        sym = lambda a: symbol_text(self.alphabet.symbol(a))
        return "/".join(" ".join(map(sym, level)) for level in self.levels)


def tree_prefix(t: RegularTree, n: int) -> FiniteTreePrefix:
    if n < 0:
        raise ValueError("prefix depth must be >= 0")
    states = [t.root]
    levels = []
    for _ in range(n + 1):
        levels.append([t.label[s] for s in states])
        states = [c for s in states for c in (t.left[s], t.right[s])]
    return FiniteTreePrefix(t.alphabet, n, levels)


def prefix_consistent(p: FiniteTreePrefix, t: RegularTree) -> bool:
    return tree_prefix(t, p.depth) == p


def _one(alphabet: Alphabet) -> int:
    try:
        return alphabet.index("1")
    except KeyError:
        raise AlphabetMismatch("level checks need a symbol '1'") from None


def o_level_check(p: FiniteTreePrefix, k: int) -> bool:
    """Does every root-to-depth path of ``p`` carry at least ``k`` ones?"""
    one = _one(p.alphabet)
    counts = [1 if a == one else 0 for a in p.levels[-1]]
    for level in reversed(p.levels[:-1]):
        counts = [(1 if a == one else 0) + min(counts[2 * i], counts[2 * i + 1])
                  for i, a in enumerate(level)]
    return counts[0] >= k


def min_depth_for_level(alpha: RegularTree, k: int) -> int:
    """Least ``d`` with ``o_level_check(tree_prefix(alpha, d), k)``."""
    if not bta_member(tinf_bta(), alpha):
        raise ValueError("tree does not carry infinitely many ones on every path")
    one = _one(alpha.alphabet)
    ones = [1 if a == one else 0 for a in alpha.label]
    counts = ones[:]
    d = 0
    while counts[alpha.root] < k:
        counts = [ones[s] + min(counts[alpha.left[s]], counts[alpha.right[s]])
                  for s in range(alpha.state_count)]
        d += 1
    return d


# ---------------------------------------------------------------------------
# Büchi tree automata


@dataclass(frozen=True)
class BTA:
    alphabet: Alphabet
    state_count: int
    initial: int
    final: frozenset
    transitions: frozenset

    def __post_init__(self):
        object.__setattr__(self, "final", frozenset(self.final))
        object.__setattr__(self, "transitions", frozenset(self.transitions))
        n, k = self.state_count, len(self.alphabet)
        if n < 1:
            raise ValueError("a tree automaton needs at least one state")
        if not 0 <= self.initial < n:
            raise ValueError(f"initial state {self.initial} out of range")
        for q in self.final:
            if not 0 <= q < n:
                raise ValueError(f"state {q} out of range 0..{n - 1}")
        for q, a, l, r in self.transitions:
            if not all(0 <= s < n for s in (q, l, r)):
                raise ValueError(f"transition ({q}, {a}, {l}, {r}) has a state out of range")
            if not 0 <= a < k:
                raise ValueError(f"transition ({q}, {a}, {l}, {r}) has a symbol out of range")

    @cached_property
    def moves(self) -> dict:
        """``(state, symbol) -> sorted tuple of (left, right)``."""
        table = {}
        for q, a, l, r in self.transitions:
            table.setdefault((q, a), []).append((l, r))
        return {key: tuple(sorted(v)) for key, v in table.items()}

    def successors(self, q: int, a: int) -> tuple:
        return self.moves.get((q, a), ())

    def __str__(self) -> str:
        return serialize_bta(self)


def parse_bta(text: str) -> BTA:
    """Like the NBA format with header ``bta``, a single ``initial`` state
    and ``trans q a q' q''`` lines."""
    header = False
    alphabet = states = initial = None
    final, trans = set(), []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if not header:
            if head != "bta" or rest:
                raise ParseError("expected 'bta' header", lineno)
            header = True
            continue
        try:
            if head == "alphabet":
                alphabet = Alphabet(tuple(_parse_symbol(t) for t in rest))
            elif head == "states":
                (n,) = rest
                states = int(n)
            elif head == "initial":
                (q,) = rest
                initial = int(q)
            elif head == "final":
                final.update(int(t) for t in rest)
            elif head == "trans":
                q, a, l, r = rest
                if alphabet is None:
                    raise ParseError("'trans' before 'alphabet'", lineno)
                trans.append((int(q), _symbol_index(alphabet, a, lineno), int(l), int(r)))
            else:
                raise ParseError(f"unknown directive {head!r}", lineno)
        except ParseError:
            raise
        except ValueError as exc:
            raise ParseError(str(exc) or f"malformed {head!r} line", lineno) from None
    if not header:
        raise ParseError("empty tree automaton file")
    if alphabet is None or states is None or initial is None:
        raise ParseError("missing 'alphabet', 'states' or 'initial' line")
    try:
        return BTA(alphabet, states, initial, final, trans)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def serialize_bta(aut: BTA) -> str:
    lines = ["bta", f"alphabet {aut.alphabet}", f"states {aut.state_count}",
             f"initial {aut.initial}"]
    if aut.final:
        lines.append("final " + " ".join(map(str, sorted(aut.final))))
    for q, a, l, r in sorted(aut.transitions):
        lines.append(f"trans {q} {symbol_text(aut.alphabet.symbol(a))} {l} {r}")
    return "\n".join(lines) + "\n"


def load_bta(path) -> BTA:
    with open(path, encoding="utf-8") as fh:
        return parse_bta(fh.read())


def save_bta(aut: BTA, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_bta(aut))


def empty_bta(alphabet: Alphabet) -> BTA:
    return BTA(alphabet, 1, 0, (), ())


def universal_bta(alphabet: Alphabet) -> BTA:
    return BTA(alphabet, 1, 0, {0}, [(0, a, 0, 0) for a in range(len(alphabet))])


# ---------------------------------------------------------------------------
# membership and emptiness


@dataclass(frozen=True)
class RunStrategy:
    """Positional choice of transition ``(left, right)`` per ``(tree state, automaton state)``."""

    choice: dict

    def run_states(self, t: RegularTree, initial: int) -> list:
        """Reachable ``(tree state, automaton state)`` pairs, breadth-first."""
        start = (t.root, initial)
        seen, order = {start}, [start]
        queue = deque(order)
        while queue:
            s, q = queue.popleft()
            l, r = self.choice[(s, q)]
            for nxt in ((t.left[s], l), (t.right[s], r)):
                if nxt not in seen:
                    seen.add(nxt)
                    order.append(nxt)
                    queue.append(nxt)
        return order


def membership_game(aut: BTA, t: RegularTree) -> tuple[BuchiGame, dict]:
    """Eve positions ``(s, q)``; Adam positions ``(s, q, l, r)`` choose a direction."""
    check_same_alphabet(aut.alphabet, t.alphabet)
    index, keys = {}, []

    def pos(key):
        if key not in index:
            index[key] = len(keys)
            keys.append(key)
            queue.append(key)
        return index[key]

    queue = deque()
    pos((t.root, aut.initial))
    edges = {}
    while queue:
        key = queue.popleft()
        if len(key) == 2:
            s, q = key
            edges[index[key]] = [pos((s, q, l, r)) for l, r in aut.successors(q, t.label[s])]
        else:
            s, q, l, r = key
            edges[index[key]] = [pos((t.left[s], l)), pos((t.right[s], r))]
    owner = [EVE if len(k) == 2 else ADAM for k in keys]
    target = [i for i, k in enumerate(keys) if len(k) == 2 and k[1] in aut.final]
    game = BuchiGame.make(owner, [edges[i] for i in range(len(keys))], target, keys)
    return game, index


def bta_member(aut: BTA, t: RegularTree, strategy: bool = False):
    """Does ``aut`` have an accepting run on ``t``?

    With ``strategy=True`` returns ``(accepted, RunStrategy | None)``.
    """
    game, index = membership_game(aut, t)
    sol = solve_buchi(game)
    accepted = 0 in sol.winning
    if not strategy:
        return accepted
    if not accepted:
        return False, None
    choice = {}
    for p, q in sol.strategy.items():
        key = game.labels[p]
        if key is not None and len(key) == 2:
            choice[key] = game.labels[q][2:]
    return True, RunStrategy(choice)


def emptiness_game(aut: BTA) -> BuchiGame:
    """Eve positions are states; Adam positions ``(q, a, l, r)``."""
    keys = [("q", q) for q in range(aut.state_count)]
    trans = sorted(aut.transitions)
    keys += [("t",) + tr for tr in trans]
    n = aut.state_count
    edges = [[] for _ in keys]
    for i, (q, a, l, r) in enumerate(trans):
        edges[q].append(n + i)
        edges[n + i] = [l, r]
    owner = [EVE] * n + [ADAM] * len(trans)
    return BuchiGame.make(owner, edges, aut.final, keys)


def productive_states(aut: BTA) -> frozenset:
    """States from which some tree is accepted."""
    game = emptiness_game(aut)
    sol = solve_buchi(game)
    return frozenset(q for q in range(aut.state_count) if q in sol.winning)


def bta_empty(aut: BTA, witness: bool = False):
    """Emptiness; with ``witness=True`` returns ``(empty, RegularTree | None)``
    where the tree is read off a positional strategy."""
    game = emptiness_game(aut)
    sol = solve_buchi(game)
    empty = aut.initial not in sol.winning
    if not witness:
        return empty
    if empty:
        return True, None
    index, order = {aut.initial: 0}, [aut.initial]
    queue = deque(order)
    chosen = {}
    while queue:
        q = queue.popleft()
        _, _, a, l, r = game.labels[sol.strategy[q]]
        chosen[q] = (a, l, r)
        for nxt in (l, r):
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
                queue.append(nxt)
    t = RegularTree(aut.alphabet, len(order), 0, [chosen[q][0] for q in order],
                    [index[chosen[q][1]] for q in order], [index[chosen[q][2]] for q in order])
    return False, t


def find_tree(aut: BTA) -> RegularTree:
    empty, t = bta_empty(aut, witness=True)
    if empty:
        raise EmptyLanguage("the tree automaton accepts no tree")
    return t


# ---------------------------------------------------------------------------
# constructions


def exists_path(aut: NBA) -> BTA:
    """Trees with at least one path whose label word is accepted by ``aut``.

    State ``n`` is the accept-everything state; when ``aut`` has several
    initial states a fresh initial state ``n + 1`` copies their moves.
    """
    n = aut.state_count
    top = n
    trans = {(top, a, top, top) for a in range(len(aut.alphabet))}
    for p, a, q in aut.transitions:
        trans.add((p, a, q, top))
        trans.add((p, a, top, q))
    final = set(aut.final) | {top}
    if len(aut.initial) == 1:
        (init,) = aut.initial
        return BTA(aut.alphabet, n + 1, init, final, trans)
    init = n + 1
    for p, a, q in aut.transitions:
        if p in aut.initial:
            trans.add((init, a, q, top))
            trans.add((init, a, top, q))
    return BTA(aut.alphabet, n + 2, init, final, trans)


def tinf_bta() -> BTA:
    """Deterministic: a node labelled 1 sends both children to final state 1.

    The root starts in the final state; one position does not affect
    acceptance, and the run on the all-ones tree is then all final."""
    return BTA(BINARY, 2, 1, {1}, [(q, a, a, a) for q in (0, 1) for a in (0, 1)])


def tree_lift(aut: BTA) -> BTA:
    """Pairs ``(t, alpha)`` where ``alpha`` marks the final states of an accepting run."""
    alphabet = Alphabet.pairs(aut.alphabet, BINARY)
    trans = {(q, a * 2 + (1 if q in aut.final else 0), l, r) for q, a, l, r in aut.transitions}
    return BTA(alphabet, aut.state_count, aut.initial, aut.final, trans)


def tree_witness(aut: BTA, t: RegularTree) -> RegularTree:
    """The final-visit annotation of the run given by a positional strategy."""
    accepted, strat = bta_member(aut, t, strategy=True)
    if not accepted:
        raise EmptyLanguage("tree is not accepted")
    return _annotation(aut, t, strat)


def _annotation(aut: BTA, t: RegularTree, strat: RunStrategy) -> RegularTree:
    order = strat.run_states(t, aut.initial)
    index = {key: i for i, key in enumerate(order)}
    left, right, label = [], [], []
    for s, q in order:
        l, r = strat.choice[(s, q)]
        label.append(1 if q in aut.final else 0)
        left.append(index[(t.left[s], l)])
        right.append(index[(t.right[s], r)])
    return RegularTree(BINARY, len(order), 0, label, left, right)


def tree_lift_witness(aut: BTA, t: RegularTree, within: BTA | None = None, budget=None) -> RegularTree:
    """Annotation ``alpha`` with ``(t, alpha)`` accepted by ``tree_lift(aut)``
    and, if given, by ``within`` (a BTA over the same pair alphabet)."""
    lifted = tree_lift(aut)
    if within is not None:
        lifted = bta_intersection_all([lifted, within], budget)
    pinned = bta_product(singleton_bta(t), universal_bta(BINARY))
    pair = find_tree(bta_intersection_all([lifted, pinned], budget))
    return tree_project(pair, 1)


def singleton_bta(t: RegularTree) -> BTA:
    """Accepts exactly ``t``: the generator itself, every state final."""
    trans = [(s, t.label[s], t.left[s], t.right[s]) for s in range(t.state_count)]
    return BTA(t.alphabet, t.state_count, t.root, range(t.state_count), trans)


def clopen_bta(p: FiniteTreePrefix) -> BTA:
    """Trees extending ``p``; equal subtrees of ``p`` share a state."""
    k = len(p.alphabet)
    ids = {}
    trans = set()
    top = 0
    ids[("top",)] = top
    for a in range(k):
        trans.add((top, a, top, top))
    # bottom-up over levels, hash-consing (label, left, right)
    below = [top] * (2 ** (p.depth + 1))
    for level in reversed(p.levels):
        here = []
        for i, a in enumerate(level):
            key = (a, below[2 * i], below[2 * i + 1])
            if key not in ids:
                ids[key] = len(ids)
                trans.add((ids[key], a, below[2 * i], below[2 * i + 1]))
            here.append(ids[key])
        below = here
    return BTA(p.alphabet, len(ids), below[0], {top}, trans)


def bta_product(a: BTA, b: BTA) -> BTA:
    """Pairs of trees ``(s, t)`` with ``s`` in ``L(a)`` and ``t`` in ``L(b)``."""
    alphabet = Alphabet.pairs(a.alphabet, b.alphabet)
    nb, kb = b.state_count, len(b.alphabet)
    idx = lambda p, q, f: (p * nb + q) * 2 + f
    trans = set()
    for p, s, pl, pr in a.transitions:
        for q, t, ql, qr in b.transitions:
            for f in (0, 1):
                f2 = _flag_step(f, p in a.final, q in b.final)
                trans.add((idx(p, q, f), s * kb + t, idx(pl, ql, f2), idx(pr, qr, f2)))
    final = {idx(p, q, 0) for p in a.final for q in range(nb)}
    return bta_trim(BTA(alphabet, 2 * a.state_count * nb, idx(a.initial, b.initial, 0), final, trans))


def bta_intersection_all(automata: Sequence[BTA], budget=None) -> BTA:
    """n-ary intersection with a round-robin acceptance counter; the
    counter evolves along each path exactly as in the word case."""
    automata = list(automata)
    if not automata:
        raise ValueError("need at least one automaton")
    alphabet = automata[0].alphabet
    for aut in automata[1:]:
        check_same_alphabet(alphabet, aut.alphabet)
    if len(automata) == 1:
        return bta_trim(automata[0])
    budget = _budget(budget)
    k = len(automata)
    start = (tuple(a.initial for a in automata), 0)
    index, order = {start: 0}, [start]
    queue = deque(order)
    trans = []
    while queue:
        node = queue.popleft()
        qs, c = node
        c2 = (c + 1) % k if qs[c] in automata[c].final else c
        for sym in range(len(alphabet)):
            choices = [automata[i].successors(q, sym) for i, q in enumerate(qs)]
            if not all(choices):
                continue
            for combo in cartesian(*choices):
                kids = []
                for side in (0, 1):
                    nxt = (tuple(lr[side] for lr in combo), c2)
                    if nxt not in index:
                        index[nxt] = len(order)
                        order.append(nxt)
                        queue.append(nxt)
                        budget.check(len(order), "tree intersection")
                    kids.append(index[nxt])
                trans.append((index[node], sym, kids[0], kids[1]))
    final = {i for i, (qs, c) in enumerate(order) if c == 0 and qs[0] in automata[0].final}
    return bta_trim(BTA(alphabet, len(order), 0, final, trans))


def bta_projection(aut: BTA, coordinate: int = 0) -> BTA:
    if not aut.alphabet.is_pair:
        raise AlphabetMismatch("projection needs a pair alphabet")
    target = aut.alphabet.component(coordinate)
    relabel = [target.index(s[coordinate]) for s in aut.alphabet.symbols]
    trans = {(q, relabel[a], l, r) for q, a, l, r in aut.transitions}
    return BTA(target, aut.state_count, aut.initial, aut.final, trans)


def bta_trim(aut: BTA) -> BTA:
    """Keep productive states reachable through productive transitions."""
    good = productive_states(aut)
    if aut.initial not in good:
        return empty_bta(aut.alphabet)
    trans = [tr for tr in aut.transitions if tr[0] in good and tr[2] in good and tr[3] in good]
    by_state = {}
    for tr in trans:
        by_state.setdefault(tr[0], []).append(tr)
    index, order = {aut.initial: 0}, [aut.initial]
    queue = deque(order)
    while queue:
        q = queue.popleft()
        for _, _, l, r in sorted(by_state.get(q, ())):
            for nxt in (l, r):
                if nxt not in index:
                    index[nxt] = len(order)
                    order.append(nxt)
                    queue.append(nxt)
    new = {(index[q], a, index[l], index[r]) for q, a, l, r in trans if q in index}
    return BTA(aut.alphabet, len(order), 0, {index[q] for q in aut.final if q in index}, new)
