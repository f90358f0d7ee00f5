"""The strong Choquet game for the Büchi topology, with Player 2's
winning strategy built from run annotations.

Player 1 plays a point and a basic open set containing it (an automaton).
Player 2 answers with

    V_i = meet over n <= i of  proj_0[ C_n  &  (N(w_{i-n}) x N(s^n_{i-n})) ]

where ``C_n`` is the lifted automaton of Player 1's ``n``-th set, ``w_l``
are growing prefixes of the played points and ``s^n_l`` growing prefixes
of annotation witnesses carrying more and more ones.  The engine is
generic over a :class:`Space` so that the tree game reuses it.
"""
from __future__ import annotations

import logging
import os
import re
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from .automata import (clopen_nba, find_up_word, load_automaton, nba_member, pinf_nba,
                       singleton_nba)
from .closure import (Budget, nba_contains, nba_intersection_all, nba_product,
                      nba_projection)
from .errors import (AlphabetMismatch, BudgetExceeded, EmptyLanguage, IllegalMove,
                     InvariantViolation, ParseError)
from .lifting import LiftedNBA, lift, lift_witness
from .words import (BINARY, Alphabet, FiniteWord, UPWord, check_same_alphabet,
                    format_upword, parse_upword, up_canonicalize)
from .trees import o_level_check

log = logging.getLogger(__name__)

DEFAULT_ROUND_CAP = 10
CONTAINMENT_BUDGET = 20_000
VERIFIED, REFUTED, SKIPPED = "verified", "refuted", "skipped-budget"
UNDECIDED = "skipped-no-complement"


class Space:
    """Operations the strategy needs on one kind of point (words or trees)."""

    name = "abstract"

    def member(self, aut, x) -> bool: ...
    def lift(self, aut): ...
    def witness(self, lifted, x, within, budget): ...
    def prefix(self, x, l: int): ...
    def annotation_prefix(self, alpha, previous, level: int): ...
    def box(self, w, s): ...
    def meet(self, automata, budget): ...
    def project(self, aut): ...
    def contains(self, big, small, budget) -> str: ...
    def find(self, aut): ...
    def fmt(self, x) -> str: ...
    def fmt_prefix(self, p) -> str: ...
    def size(self, aut) -> int: ...


class WordSpace(Space):
    name = "words"

    def member(self, aut, x):
        return nba_member(aut, x)

    def lift(self, aut):
        return lift(aut)

    def witness(self, lifted, x, within, budget):
        return lift_witness(lifted, x, within, budget)

    def prefix(self, x, l):
        return FiniteWord(x.alphabet, x.letters(l + 1))

    def annotation_prefix(self, alpha, previous, level):
        """Shortest prefix of ``alpha`` strictly longer than ``previous``
        with at least ``level + 1`` ones."""
        n = 0 if previous is None else len(previous) + 1
        while n == 0 or sum(alpha.letters(n)) < level + 1:
            n += 1
        return FiniteWord(BINARY, alpha.letters(n))

    def box(self, w, s):
        return nba_product(clopen_nba(w), clopen_nba(s))

    def meet(self, automata, budget):
        return nba_intersection_all(automata, budget)

    def project(self, aut):
        return nba_projection(aut, 0)

    def contains(self, big, small, budget):
        if budget is None:
            return SKIPPED
        try:
            return VERIFIED if nba_contains(big, small, Budget(budget)) else REFUTED
        except BudgetExceeded:
            return SKIPPED

    def find(self, aut):
        return find_up_word(aut)

    def fmt(self, x):
        return format_upword(x)

    def fmt_prefix(self, p):
        return str(p)

    def size(self, aut):
        return aut.state_count


@dataclass(frozen=True)
class Move1:
    """Player 1's move: a point ``sigma`` and a basic open set ``L`` around it."""

    sigma: Any
    L: Any


@dataclass
class RoundRecord:
    round: int
    sigma: str
    L_states: int
    sigma_in_L: bool
    sigma_in_previous_V: bool | None
    L_within_previous_V: str
    w: str
    annotations: dict
    V_states: int
    sigma_in_V: bool
    V_within_L: str

    def as_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class GameState:
    """Single-owner game state; Player 1 and Player 2 alternate."""

    space: Space
    alphabet: Alphabet
    budget: int | None = CONTAINMENT_BUDGET
    state_budget: int = 200_000
    round_cap: int = DEFAULT_ROUND_CAP
    moves: list = field(default_factory=list)
    lifted: list = field(default_factory=list)
    w: list = field(default_factory=list)
    s: list = field(default_factory=list)       # s[n] = [s^n_0, s^n_1, ...]
    witnesses: list = field(default_factory=list)
    V: list = field(default_factory=list)
    records: list = field(default_factory=list)
    pending: dict | None = None

    @property
    def round(self) -> int:
        return len(self.V)

    @property
    def current_V(self):
        return self.V[-1] if self.V else None


def new_game(alphabet: Alphabet, space: Space | None = None, **options) -> GameState:
    if not isinstance(alphabet, Alphabet):
        alphabet = Alphabet(tuple(alphabet))
    return GameState(space or WordSpace(), alphabet, **options)


def p1_move(state: GameState, m: Move1) -> GameState:
    """Validate and record Player 1's move.

    Membership failures are illegal moves.  Containment of the new set in
    Player 2's last answer is checked within the complementation budget;
    an unknown or refuted containment is recorded as a warning.
    """
    if state.pending is not None:
        raise IllegalMove("Player 2 has not answered the previous move")
    i = state.round
    if i >= state.round_cap:
        raise IllegalMove(f"round cap {state.round_cap} reached")
    space = state.space
    check_same_alphabet(state.alphabet, m.L.alphabet)
    check_same_alphabet(state.alphabet, m.sigma.alphabet)
    if not space.member(m.L, m.sigma):
        raise IllegalMove(f"round {i}: {space.fmt(m.sigma)} is not in the played set")
    in_prev, contained = None, "n/a"
    if i > 0:
        in_prev = space.member(state.current_V, m.sigma)
        if not in_prev:
            raise IllegalMove(f"round {i}: {space.fmt(m.sigma)} is not in Player 2's last set")
        contained = space.contains(state.current_V, m.L, state.budget)
        if contained == REFUTED:
            log.warning("round %d: played set is not inside the previous answer", i)
        elif contained == UNDECIDED:
            log.info("round %d: containment in the previous answer not decidable here", i)
        elif contained != VERIFIED:
            log.warning("round %d: containment in the previous answer unverified (%s)", i, contained)
    state.pending = {"move": m, "sigma_in_L": True, "in_prev": in_prev, "contained": contained}
    return state


def p2_respond(state: GameState):
    """Player 2's answer ``V_i``; returns ``(V_i, state)``."""
    if state.pending is None:
        raise IllegalMove("no pending Player 1 move")
    space, i = state.space, state.round
    m = state.pending["move"]
    sigma = m.sigma
    budget = Budget(state.state_budget)
    # (a) annotate the new set
    lifted = space.lift(m.L)
    try:
        alpha = space.witness(lifted, sigma, None, budget)
    except EmptyLanguage:
        raise InvariantViolation(f"round {i}: no annotation for a member of the played set") from None
    new_s = [space.annotation_prefix(alpha, None, 0)]
    # (b) re-annotate the earlier sets inside their last boxes
    fresh = {}
    for n in range(i):
        box = space.box(state.w[i - 1 - n], state.s[n][i - 1 - n])
        try:
            beta = space.witness(state.lifted[n], sigma, box, budget)
        except EmptyLanguage:
            raise InvariantViolation(
                f"round {i}: no annotation of set {n} inside its box; the point left V_{i - 1}") from None
        fresh[n] = (beta, space.annotation_prefix(beta, state.s[n][i - 1 - n], i - n))
    # commit
    state.moves.append(m)
    state.lifted.append(lifted)
    state.s.append(new_s)
    state.witnesses.append([alpha])
    for n, (beta, s_next) in fresh.items():
        state.s[n].append(s_next)
        state.witnesses[n].append(beta)
    # (c) prefix of the point
    state.w.append(space.prefix(sigma, i))
    # (d) the answer
    factors = []
    for n in range(i + 1):
        box = space.box(state.w[i - n], state.s[n][i - n])
        lifted_n = state.lifted[n]
        base = lifted_n.lifted if isinstance(lifted_n, LiftedNBA) else lifted_n
        factors.append(space.project(space.meet([base, box], budget)))
    V = space.meet(factors, budget)
    state.V.append(V)
    in_V = space.member(V, sigma)
    if not in_V:
        raise InvariantViolation(f"round {i}: the played point is not in Player 2's answer")
    within = space.contains(m.L, V, state.budget)
    if within == REFUTED:
        raise InvariantViolation(f"round {i}: Player 2's answer is not inside the played set")
    p = state.pending
    state.records.append(RoundRecord(
        round=i, sigma=space.fmt(sigma), L_states=space.size(m.L), sigma_in_L=p["sigma_in_L"],
        sigma_in_previous_V=p["in_prev"], L_within_previous_V=p["contained"],
        w=space.fmt_prefix(state.w[i]),
        annotations={str(n): space.fmt_prefix(state.s[n][i - n]) for n in range(i + 1)},
        V_states=space.size(V), sigma_in_V=in_V, V_within_L=within))
    state.pending = None
    return V, state


def check_invariants(state: GameState) -> list[str]:
    """Prefix coherence and annotation growth; returns a list of failures."""
    space = state.space
    problems = []
    for l in range(1, len(state.w)):
        if not _extends(state.w[l], state.w[l - 1]):
            problems.append(f"w_{l} does not extend w_{l - 1}")
    for n, chain in enumerate(state.s):
        for l, s in enumerate(chain):
            if not space_level_ok(space, s, l):
                problems.append(f"s^{n}_{l} below level {l + 1}")
            if l and not _strictly_extends(chain[l], chain[l - 1]):
                problems.append(f"s^{n}_{l} does not strictly extend s^{n}_{l - 1}")
    return problems


def space_level_ok(space: Space, s, l: int) -> bool:
    if isinstance(s, FiniteWord):
        return sum(s.letters) >= l + 1
    return o_level_check(s, l + 1)


def _extends(longer, shorter) -> bool:
    if isinstance(longer, FiniteWord):
        return longer.letters[:len(shorter)] == shorter.letters
    return longer.depth >= shorter.depth and longer.levels[:shorter.depth + 1] == shorter.levels


def _strictly_extends(longer, shorter) -> bool:
    size = len if isinstance(longer, FiniteWord) else (lambda p: p.depth)
    return _extends(longer, shorter) and size(longer) > size(shorter)


@dataclass
class GameReport:
    space: str
    rounds: int
    records: list
    invariant_failures: list
    certificate: str | None
    certificate_in_all_L: list
    outcome: str
    loss: str | None = None

    @property
    def ok(self) -> bool:
        return self.outcome == "player 2 wins"

    def as_dict(self) -> dict:
        return {
            "space": self.space,
            "rounds": self.rounds,
            "records": [r.as_dict() for r in self.records],
            "invariant_failures": self.invariant_failures,
            "certificate": self.certificate,
            "certificate_in_all_L": self.certificate_in_all_L,
            "outcome": self.outcome,
            "loss": self.loss,
        }


Adversary = Callable[[int, GameState], Move1]


def play_scripted(adversary: Adversary | Sequence[Move1], rounds: int,
                  state: GameState | None = None, alphabet: Alphabet = BINARY) -> GameReport:
    """Play ``rounds`` rounds; ``adversary`` is a move list or a callable
    ``(round, state) -> Move1``.  Ends with a certificate: a point of the
    last answer, checked against every set Player 1 played."""
    state = state or new_game(alphabet)
    space = state.space
    pick = adversary if callable(adversary) else (lambda i, st: adversary[i])
    loss = None
    for i in range(rounds):
        try:
            move = pick(i, state)
            p1_move(state, move)
        except (IllegalMove, AlphabetMismatch, IndexError) as exc:
            loss = f"player 1 loses by rule in round {i}: {exc}"
            break
        p2_respond(state)
    certificate, in_all = None, []
    if state.V:
        cert = space.find(state.V[-1])
        certificate = space.fmt(cert)
        in_all = [space.member(m.L, cert) for m in state.moves]
    problems = check_invariants(state)
    if loss is not None:
        outcome = "player 1 broke the rules"
    elif problems or not all(in_all) or not state.V:
        outcome = "strategy failure"
    else:
        outcome = "player 2 wins"
    return GameReport(space.name, len(state.V), state.records, problems, certificate,
                      in_all, outcome, loss)


# ---------------------------------------------------------------------------
# adversaries


def shrinking_clopens(i: int, state: GameState) -> Move1:
    """``L_i`` = words starting with ``0^(i+1)``, point ``0^w``."""
    return Move1(up_canonicalize(BINARY, (), (0,)), clopen_nba(FiniteWord(BINARY, (0,) * (i + 1))))


def stabilizing_singleton(x: UPWord, settle: int = 2) -> Adversary:
    """Prefix neighbourhoods of ``x`` for ``settle`` rounds, then ``{x}``."""
    def move(i: int, state: GameState) -> Move1:
        if i < settle:
            return Move1(x, clopen_nba(FiniteWord(x.alphabet, x.letters(i + 1))))
        return Move1(x, singleton_nba(x))
    return move


def nested_pinf(i: int, state: GameState) -> Move1:
    """``L_i`` = words with infinitely many 1s starting with ``(01)^i``."""
    L = nba_intersection_all([pinf_nba(), clopen_nba(FiniteWord(BINARY, (0, 1) * i))])
    return Move1(up_canonicalize(BINARY, (), (0, 1)), L)


# ---------------------------------------------------------------------------
# script files

_MOVE_RE = re.compile(r"^round\s+(\d+)\s*:\s*(\w+)=(\S+)\s+L=(\S+)\s*$")


def parse_script(text: str, base_dir: str = ".", point_key: str = "sigma",
                 load_point=None, load_set=load_automaton) -> list[Move1]:
    """One move per line: ``round <i>: sigma=<upword> L=<automaton-file>``.

    Paths are relative to ``base_dir``; rounds must be numbered 0, 1, ...
    """
    load_point = load_point or parse_upword
    moves = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _MOVE_RE.match(line)
        if not m or m.group(2) != point_key:
            raise ParseError(f"expected 'round <i>: {point_key}=<...> L=<file>'", lineno)
        if int(m.group(1)) != len(moves):
            raise ParseError(f"expected round {len(moves)}", lineno)
        try:
            L = load_set(os.path.join(base_dir, m.group(4)))
        except OSError as exc:
            raise ParseError(f"cannot read {m.group(4)}: {exc.strerror}", lineno) from None
        if point_key == "sigma":
            point = load_point(m.group(3), L.alphabet)
        else:
            point = load_point(os.path.join(base_dir, m.group(3)))
        moves.append(Move1(point, L))
    return moves
