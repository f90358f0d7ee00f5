"""Büchi and finite-word automata: types, text format, constructors and
the decision procedures that need no complementation."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable, Iterator, Sequence

from .errors import AlphabetMismatch, EmptyLanguage, ParseError
from .words import (BINARY, Alphabet, FiniteWord, UPWord, check_same_alphabet,
                    symbol_text, up_canonicalize)


@dataclass(frozen=True)
class Automaton:
    alphabet: Alphabet
    state_count: int
    initial: frozenset
    final: frozenset
    transitions: frozenset = field(default_factory=frozenset)

    kind = "automaton"

    def __post_init__(self):
        for name in ("initial", "final", "transitions"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        n, k = self.state_count, len(self.alphabet)
        if n < 1:
            raise ValueError("an automaton needs at least one state")
        for q in self.initial | self.final:
            if not 0 <= q < n:
                raise ValueError(f"state {q} out of range 0..{n - 1}")
        for p, a, q in self.transitions:
            if not (0 <= p < n and 0 <= q < n):
                raise ValueError(f"transition ({p}, {a}, {q}) has a state out of range")
            if not 0 <= a < k:
                raise ValueError(f"transition ({p}, {a}, {q}) has a symbol out of range")

    @cached_property
    def succ(self) -> dict:
        """``(state, symbol) -> sorted tuple of successor states``."""
        table = {}
        for p, a, q in self.transitions:
            table.setdefault((p, a), []).append(q)
        return {key: tuple(sorted(qs)) for key, qs in table.items()}

    def successors(self, p: int, a: int) -> tuple:
        return self.succ.get((p, a), ())

    def post(self, states: Iterable[int], a: int) -> frozenset:
        return frozenset(q for p in states for q in self.successors(p, a))

    def edges_from(self, p: int) -> Iterator[tuple]:
        """``(symbol, target)`` pairs in symbol-then-state order."""
        for a in range(len(self.alphabet)):
            for q in self.successors(p, a):
                yield a, q

    @property
    def states(self) -> range:
        return range(self.state_count)

    def __str__(self) -> str:
        return serialize_automaton(self)


@dataclass(frozen=True)
class NBA(Automaton):
    """Nondeterministic Büchi automaton; a run accepts when it visits
    final states infinitely often."""

    kind = "nba"


@dataclass(frozen=True)
class NFA(Automaton):
    """Finite-word automaton."""

    kind = "nfa"


@dataclass(frozen=True)
class LassoWitness:
    stem: tuple
    loop: tuple
    word: UPWord


# ---------------------------------------------------------------------------
# text format


def _parse_symbol(token: str):
    if "," in token:
        return tuple(_parse_symbol(t) for t in token.split(","))
    return token


def parse_automaton(text: str) -> Automaton:
    """Parse the line-based ``nba``/``nfa`` format (``#`` starts a comment)."""
    header = None
    alphabet = None
    states = None
    initial, final, trans = set(), set(), []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if header is None:
            if head not in ("nba", "nfa") or rest:
                raise ParseError("expected 'nba' or 'nfa' header", lineno)
            header = head
            continue
        try:
            if head == "alphabet":
                alphabet = Alphabet(tuple(_parse_symbol(t) for t in rest))
            elif head == "states":
                (n,) = rest
                states = int(n)
            elif head in ("initial", "final"):
                (initial if head == "initial" else final).update(int(t) for t in rest)
            elif head == "trans":
                p, a, q = rest
                if alphabet is None:
                    raise ParseError("'trans' before 'alphabet'", lineno)
                trans.append((int(p), _symbol_index(alphabet, a, lineno), int(q)))
            else:
                raise ParseError(f"unknown directive {head!r}", lineno)
        except ParseError:
            raise
        except ValueError as exc:
            raise ParseError(str(exc) or f"malformed {head!r} line", lineno) from None
        if states is not None:
            for q in [*initial, *final, *(s for p, _, q in trans for s in (p, q))]:
                if not 0 <= q < states:
                    raise ParseError(f"state {q} out of range for {states} states", lineno)
    if header is None:
        raise ParseError("empty automaton file")
    if alphabet is None or states is None:
        raise ParseError("missing 'alphabet' or 'states' line")
    cls = NBA if header == "nba" else NFA
    try:
        return cls(alphabet, states, initial, final, trans)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _symbol_index(alphabet: Alphabet, token: str, lineno: int) -> int:
    try:
        return alphabet.index(_parse_symbol(token))
    except KeyError:
        raise ParseError(f"unknown symbol {token!r}", lineno) from None


def parse_nba(text: str) -> NBA:
    aut = parse_automaton(text)
    if not isinstance(aut, NBA):
        raise ParseError("expected an 'nba' file")
    return aut


def serialize_automaton(aut: Automaton) -> str:
    lines = [aut.kind, f"alphabet {aut.alphabet}", f"states {aut.state_count}"]
    if aut.initial:
        lines.append("initial " + " ".join(map(str, sorted(aut.initial))))
    if aut.final:
        lines.append("final " + " ".join(map(str, sorted(aut.final))))
    for p, a, q in sorted(aut.transitions):
        lines.append(f"trans {p} {symbol_text(aut.alphabet.symbol(a))} {q}")
    return "\n".join(lines) + "\n"


serialize_nba = serialize_automaton


def load_automaton(path) -> Automaton:
    with open(path, encoding="utf-8") as fh:
        return parse_automaton(fh.read())


def save_automaton(aut: Automaton, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_automaton(aut))


# ---------------------------------------------------------------------------
# basic sets


def empty_nba(alphabet: Alphabet) -> NBA:
    return NBA(alphabet, 1, {0}, (), ())


def universal_nba(alphabet: Alphabet) -> NBA:
    return NBA(alphabet, 1, {0}, {0}, [(0, a, 0) for a in range(len(alphabet))])


def pinf_nba() -> NBA:
    """Binary words with infinitely many 1s; state 1 is entered exactly after a 1."""
    return NBA(BINARY, 2, {0}, {1}, [(p, a, a) for p in (0, 1) for a in (0, 1)])


def clopen_nba(w: FiniteWord) -> NBA:
    """Words having ``w`` as a prefix: a prefix chain into an accepting sink."""
    n = len(w)
    trans = [(i, a, i + 1) for i, a in enumerate(w.letters)]
    trans += [(n, a, n) for a in range(len(w.alphabet))]
    return NBA(w.alphabet, n + 1, {0}, {n}, trans)


def singleton_nba(x: UPWord) -> NBA:
    """Accepts exactly ``{x}``."""
    u, v = x.prefix, x.period
    n = len(u) + len(v)
    word = u + v
    trans = [(i, word[i], i + 1) for i in range(n - 1)]
    trans.append((n - 1, word[n - 1], len(u)))
    return NBA(x.alphabet, n, {0}, {len(u)}, trans)


# ---------------------------------------------------------------------------
# graph helpers


def _reachable_bfs(starts: Sequence[Hashable], successors: Callable) -> tuple[list, dict]:
    """BFS order and parent links ``node -> (parent, label)``."""
    order, parent = [], {}
    queue = deque()
    for s in starts:
        if s not in parent:
            parent[s] = None
            queue.append(s)
    while queue:
        node = queue.popleft()
        order.append(node)
        for label, nxt in successors(node):
            if nxt not in parent:
                parent[nxt] = (node, label)
                queue.append(nxt)
    return order, parent


def _cyclic_nodes(nodes: Sequence[Hashable], successors: Callable) -> set:
    """Nodes lying on some cycle within ``nodes`` (iterative Tarjan)."""
    node_set = set(nodes)
    index, low, on_stack = {}, {}, set()
    stack, cyclic = [], set()
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter([nxt for _, nxt in successors(root) if nxt in node_set]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if nxt not in index:
                    index[nxt] = low[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter([m for _, m in successors(nxt) if m in node_set])))
                    advanced = True
                    break
                if nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                component = []
                while True:
                    m = stack.pop()
                    on_stack.discard(m)
                    component.append(m)
                    if m == node:
                        break
                if len(component) > 1:
                    cyclic.update(component)
                elif any(nxt == node for _, nxt in successors(node)):
                    cyclic.add(node)
    return cyclic


def _path_to(parent: dict, node) -> tuple[list, list]:
    nodes, labels = [node], []
    while parent[node] is not None:
        node, label = parent[node]
        nodes.append(node)
        labels.append(label)
    return nodes[::-1], labels[::-1]


def find_lasso(starts, successors: Callable, accepting: Callable):
    """Shortest-stem, then shortest-loop lasso through an accepting node.

    Returns ``(stem_nodes, stem_labels, loop_nodes, loop_labels)`` where
    ``stem_nodes`` ends at the accepting node and ``loop_nodes`` starts
    there, or ``None`` if no accepting node lies on a reachable cycle.
    """
    order, parent = _reachable_bfs(starts, successors)
    candidates = [n for n in order if accepting(n)]
    if not candidates:
        return None
    cyclic = _cyclic_nodes(order, successors)
    target = next((n for n in candidates if n in cyclic), None)
    if target is None:
        return None
    stem_nodes, stem_labels = _path_to(parent, target)
    # shortest cycle through target
    back = {}
    queue = deque()
    for label, nxt in successors(target):
        if nxt == target:
            return stem_nodes, stem_labels, [target], [label]
        if nxt not in back:
            back[nxt] = (target, label)
            queue.append(nxt)
    while queue:
        node = queue.popleft()
        for label, nxt in successors(node):
            if nxt == target:
                loop_nodes, loop_labels = _path_to_cycle(back, node, target)
                return stem_nodes, stem_labels, loop_nodes, loop_labels + [label]
            if nxt not in back:
                back[nxt] = (node, label)
                queue.append(nxt)
    raise AssertionError("cyclic node without a cycle")


def _path_to_cycle(back: dict, node, target) -> tuple[list, list]:
    nodes, labels = [node], []
    while node != target:
        node, label = back[node]
        nodes.append(node)
        labels.append(label)
    return nodes[::-1], labels[::-1]


# ---------------------------------------------------------------------------
# decision procedures


def nba_member(aut: NBA, x: UPWord, witness: bool = False):
    """Does some accepting run of ``aut`` read ``x``?

    With ``witness=True`` returns ``(accepted, LassoWitness | None)``; the
    witness loop spans a whole number of periods of ``x``.
    """
    check_same_alphabet(aut.alphabet, x.alphabet)
    word = x.prefix + x.period
    n, start = len(word), len(x.prefix)

    def successors(node):
        q, pos = node
        nxt = pos + 1 if pos + 1 < n else start
        for r in aut.successors(q, word[pos]):
            yield word[pos], (r, nxt)

    lasso = find_lasso([(q, 0) for q in sorted(aut.initial)], successors,
                       lambda node: node[0] in aut.final)
    if not witness:
        return lasso is not None
    if lasso is None:
        return False, None
    stem_nodes, _, loop_nodes, _ = lasso
    return True, LassoWitness(tuple(q for q, _ in stem_nodes),
                              tuple(q for q, _ in loop_nodes) + (loop_nodes[0][0],), x)


def _automaton_lasso(aut: Automaton):
    return find_lasso(sorted(aut.initial), aut.edges_from, lambda q: q in aut.final)


def nba_empty(aut: NBA) -> bool:
    return _automaton_lasso(aut) is None


def find_up_word(aut: NBA) -> UPWord:
    """Deterministic accepted UP word: shortest stem, then shortest loop."""
    lasso = _automaton_lasso(aut)
    if lasso is None:
        raise EmptyLanguage("the automaton accepts no word")
    _, stem_labels, _, loop_labels = lasso
    return up_canonicalize(aut.alphabet, stem_labels, loop_labels)


def find_lasso_witness(aut: NBA) -> LassoWitness:
    lasso = _automaton_lasso(aut)
    if lasso is None:
        raise EmptyLanguage("the automaton accepts no word")
    stem_nodes, stem_labels, loop_nodes, loop_labels = lasso
    return LassoWitness(tuple(stem_nodes), tuple(loop_nodes) + (loop_nodes[0],),
                        up_canonicalize(aut.alphabet, stem_labels, loop_labels))


def nfa_member(aut: Automaton, w: FiniteWord) -> bool:
    check_same_alphabet(aut.alphabet, w.alphabet)
    current = aut.initial
    for a in w.letters:
        current = aut.post(current, a)
        if not current:
            return False
    return bool(current & aut.final)


def nfa_sample(aut: Automaton, max_len: int) -> list[FiniteWord]:
    """Accepted finite words of length <= ``max_len`` in length-lex order."""
    k = len(aut.alphabet)
    out = []
    level = [((), aut.initial)] if aut.initial else []
    for length in range(max_len + 1):
        out.extend(FiniteWord(aut.alphabet, w) for w, states in level if states & aut.final)
        if length == max_len:
            break
        nxt = []
        for w, states in level:
            for a in range(k):
                post = aut.post(states, a)
                if post:
                    nxt.append((w + (a,), post))
        level = nxt
    return out


# ---------------------------------------------------------------------------
# language-preserving size reduction


def live_states(aut: NBA) -> set:
    """States from which some accepting run starts."""
    nodes = list(aut.states)
    cyclic = _cyclic_nodes(nodes, aut.edges_from)
    good = {q for q in aut.final if q in cyclic}
    preds = {}
    for p, _, q in aut.transitions:
        preds.setdefault(q, set()).add(p)
    live, queue = set(good), deque(good)
    while queue:
        q = queue.popleft()
        for p in preds.get(q, ()):
            if p not in live:
                live.add(p)
                queue.append(p)
    return live


def trim(aut: NBA) -> NBA:
    """Keep reachable states that can still accept; renumber in BFS order."""
    live = live_states(aut)
    starts = [q for q in sorted(aut.initial) if q in live]
    if not starts:
        return empty_nba(aut.alphabet)

    def successors(q):
        return ((a, r) for a, r in aut.edges_from(q) if r in live)

    order, _ = _reachable_bfs(starts, successors)
    rename = {q: i for i, q in enumerate(order)}
    trans = [(rename[p], a, rename[q]) for p, a, q in aut.transitions
             if p in rename and q in rename]
    return type(aut)(aut.alphabet, len(order), {rename[q] for q in starts},
                     {rename[q] for q in order if q in aut.final}, trans)


def bisimulation_quotient(aut: Automaton) -> Automaton:
    """Merge forward-bisimilar states (same finality, same successor blocks)."""
    block = {q: int(q in aut.final) for q in aut.states}
    while True:
        sigs = {}
        for q in aut.states:
            sig = (block[q], tuple(sorted({(a, block[r]) for a, r in aut.edges_from(q)})))
            sigs[q] = sig
        ids = {}
        for q in aut.states:
            ids.setdefault(sigs[q], len(ids))
        new_block = {q: ids[sigs[q]] for q in aut.states}
        if len(ids) == len(set(block.values())):
            block = new_block
            break
        block = new_block
    n = len(set(block.values()))
    trans = {(block[p], a, block[q]) for p, a, q in aut.transitions}
    return type(aut)(aut.alphabet, n, {block[q] for q in aut.initial},
                     {block[q] for q in aut.final}, trans)


def direct_simulation(aut: Automaton) -> list[list[bool]]:
    """``sim[q][r]`` is true iff ``r`` directly simulates ``q``.

    Greatest relation with: ``q`` final implies ``r`` final, and every
    ``q -a-> q2`` is matched by some ``r -a-> r2`` with ``r2`` simulating ``q2``.
    """
    n, k = aut.state_count, len(aut.alphabet)
    sim = [[(q not in aut.final) or (r in aut.final) for r in range(n)] for q in range(n)]
    succ = [[aut.successors(q, a) for a in range(k)] for q in range(n)]
    changed = True
    while changed:
        changed = False
        for q in range(n):
            row = sim[q]
            for r in range(n):
                if not row[r] or q == r:
                    continue
                for a in range(k):
                    rs = succ[r][a]
                    if any(not any(sim[q2][r2] for r2 in rs) for q2 in succ[q][a]):
                        row[r] = False
                        changed = True
                        break
    return sim


SIMULATION_LIMIT = 300


def simulation_reduce(aut: NBA) -> NBA:
    """Quotient by mutual direct simulation and prune little-brother transitions."""
    n = aut.state_count
    sim = direct_simulation(aut)
    block = {}
    reps = []
    for q in range(n):
        for i, r in enumerate(reps):
            if sim[q][r] and sim[r][q]:
                block[q] = i
                break
        else:
            block[q] = len(reps)
            reps.append(q)
    strictly_below = lambda q, r: sim[q][r] and not sim[r][q]
    by_source = {}
    for p, a, q in aut.transitions:
        by_source.setdefault((block[p], a), set()).add(reps[block[q]])
    trans = set()
    for (bp, a), targets in by_source.items():
        for q in targets:
            if not any(strictly_below(q, r) for r in targets if r != q):
                trans.add((bp, a, block[q]))
    inits = {reps[block[q]] for q in aut.initial}
    initial = {block[q] for q in inits if not any(strictly_below(q, r) for r in inits if r != q)}
    final = {block[q] for q in aut.final}
    return type(aut)(aut.alphabet, len(reps), initial, final, trans)


def reduce(aut: NBA) -> NBA:
    """Language-preserving shrink: trim, merge bisimilar states, and for
    small automata also apply direct-simulation reductions."""
    aut = trim(bisimulation_quotient(trim(aut)))
    while aut.state_count <= SIMULATION_LIMIT:
        smaller = trim(simulation_reduce(aut))
        if (smaller.state_count, len(smaller.transitions)) >= (aut.state_count, len(aut.transitions)):
            break
        aut = smaller
    return aut
