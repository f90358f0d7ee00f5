"""Reference implementations used only by the tests.

They are deliberately naive and share no code with the library's
decision procedures.
"""
import itertools
import random

from buchitop.automata import NBA
from buchitop.words import BINARY


def relation(aut, word):
    """Pairs (p, q) with a run p -> q reading word, and the subset of those
    runs that see a final state before some letter."""
    plain = {(p, p) for p in range(aut.state_count)}
    seen = set()
    for a in word:
        step = {(p, q) for (p, a2, q) in aut.transitions if a2 == a}
        seen_next = {(p, r) for (p, q) in plain if q in aut.final for (q2, r) in step if q2 == q}
        seen_next |= {(p, r) for (p, q) in seen for (q2, r) in step if q2 == q}
        plain = {(p, r) for (p, q) in plain for (q2, r) in step if q2 == q}
        seen = seen_next
    return plain, seen


def closure(rel, n):
    star = {(p, p) for p in range(n)} | set(rel)
    while True:
        more = star | {(p, r) for (p, q) in star for (q2, r) in star if q2 == q}
        if more == star:
            return star
        star = more


def member(aut, x):
    """Membership of u.v^w: some reachable loop boundary closes a v^k cycle
    that sees a final state."""
    stem, _ = relation(aut, x.prefix)
    loop, loop_final = relation(aut, x.period)
    star = closure(loop, aut.state_count)
    reach = {q for (p, q) in stem if p in aut.initial}
    reach = {r for q in reach for (q2, r) in star if q2 == q}
    return any((q2, q) in star for (q, q2) in loop_final if q in reach)


def random_nba(rng, max_states=3, density=0.35, alphabet=BINARY):
    n = rng.randint(1, max_states)
    k = len(alphabet)
    trans = [(p, a, q) for p in range(n) for a in range(k) for q in range(n) if rng.random() < density]
    initial = {q for q in range(n) if rng.random() < 0.4} or {0}
    final = {q for q in range(n) if rng.random() < 0.4}
    return NBA(alphabet, n, initial, final, trans)


def all_raw_nbas(k, alphabet=BINARY):
    """Every NBA with exactly k states (including empty initial sets)."""
    slots = [(p, a, q) for p in range(k) for a in range(len(alphabet)) for q in range(k)]
    for bits in itertools.product((0, 1), repeat=len(slots)):
        trans = [s for s, b in zip(slots, bits) if b]
        for i in range(1 << k):
            for f in range(1 << k):
                yield NBA(alphabet, k, {q for q in range(k) if i >> q & 1},
                          {q for q in range(k) if f >> q & 1}, trans)


def sample_words(alphabet, count, seed, max_prefix=3, max_period=3):
    from buchitop.words import up_canonicalize
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        u = [rng.randrange(len(alphabet)) for _ in range(rng.randint(0, max_prefix))]
        v = [rng.randrange(len(alphabet)) for _ in range(rng.randint(1, max_period))]
        out.append(up_canonicalize(alphabet, u, v))
    return out


# ---------------------------------------------------------------------------
# trees


def _reach_and_cycles(start, succ):
    """Reachable nodes and a predicate telling whether a node set contains a cycle."""
    seen, stack = {start}, [start]
    while stack:
        n = stack.pop()
        for m in succ(n):
            if m not in seen:
                seen.add(m)
                stack.append(m)
    return seen


def has_cycle(nodes, succ):
    """Does the graph restricted to ``nodes`` contain a cycle?  (Kahn's algorithm.)"""
    nodes = set(nodes)
    indeg = {n: 0 for n in nodes}
    for n in nodes:
        for m in succ(n):
            if m in nodes:
                indeg[m] += 1
    queue = [n for n in nodes if indeg[n] == 0]
    removed = 0
    while queue:
        n = queue.pop()
        removed += 1
        for m in succ(n):
            if m in nodes:
                indeg[m] -= 1
                if indeg[m] == 0:
                    queue.append(m)
    return removed < len(nodes)


def tree_succ(t):
    return lambda s: (t.left[s], t.right[s])


def every_path_infinitely_many(t, symbol=1):
    """No reachable generator cycle avoids ``symbol``."""
    reach = _reach_and_cycles(t.root, tree_succ(t))
    return not has_cycle({s for s in reach if t.label[s] != symbol}, tree_succ(t))


def some_path_accepted(aut, t):
    """Some path's label word is accepted by the NBA ``aut``: a reachable
    cycle through a final state in the product of generator and automaton."""
    def succ(node):
        s, q = node
        return [(c, r) for c in (t.left[s], t.right[s])
                for (p, a, r) in aut.transitions if p == q and a == t.label[s]]
    reach = set()
    for q in aut.initial:
        reach |= _reach_and_cycles((t.root, q), succ)
    for node in reach:
        if node[1] in aut.final:
            back = _reach_and_cycles(node, succ)
            if any(node in succ(m) for m in back):
                return True
    return False


def bta_member_bruteforce(aut, t):
    """Try every positional choice of transition on reachable (tree state,
    automaton state) pairs; a choice accepts when no reachable cycle of the
    induced graph avoids final states."""
    start = (t.root, aut.initial)

    def options(node):
        s, q = node
        return sorted((l, r) for (q2, a, l, r) in aut.transitions if q2 == q and a == t.label[s])

    def kids(node, choice):
        s, q = node
        l, r = choice[node]
        return [(t.left[s], l), (t.right[s], r)]

    def accepts(choice):
        succ = lambda n: kids(n, choice)
        reach = _reach_and_cycles(start, succ)
        return not has_cycle({n for n in reach if n[1] not in aut.final}, succ)

    def search(choice, pending):
        while pending and pending[0] in choice:
            pending = pending[1:]
        if not pending:
            return accepts(choice)
        node = pending[0]
        for opt in options(node):
            choice[node] = opt
            if search(choice, pending[1:] + kids(node, choice)):
                return True
            del choice[node]
        return False

    return search({}, [start])


def random_tree(rng, max_states=3, alphabet=BINARY):
    n = rng.randint(1, max_states)
    from buchitop.trees import RegularTree
    return RegularTree(alphabet, n, 0, [rng.randrange(len(alphabet)) for _ in range(n)],
                       [rng.randrange(n) for _ in range(n)], [rng.randrange(n) for _ in range(n)])


def random_bta(rng, max_states=3, per_move=2, alphabet=BINARY):
    from buchitop.trees import BTA
    n = rng.randint(1, max_states)
    trans = set()
    for q in range(n):
        for a in range(len(alphabet)):
            for _ in range(rng.randint(0, per_move)):
                trans.add((q, a, rng.randrange(n), rng.randrange(n)))
    final = {q for q in range(n) if rng.random() < 0.5}
    return BTA(alphabet, n, 0, final, trans)


def all_trees(max_states=2, alphabet=BINARY):
    """Every regular tree generator with up to ``max_states`` states, root 0."""
    from buchitop.trees import RegularTree
    k = len(alphabet)
    for n in range(1, max_states + 1):
        for labels in itertools.product(range(k), repeat=n):
            for left in itertools.product(range(n), repeat=n):
                for right in itertools.product(range(n), repeat=n):
                    yield RegularTree(alphabet, n, 0, labels, left, right)
