"""Büchi-automaton topology on omega-words and infinite trees: automata,
the separator distance, run annotations and strong Choquet games."""

from .automata import (NBA, NFA, LassoWitness, clopen_nba, empty_nba, find_up_word,
                       load_automaton, nba_empty, nba_member, parse_automaton, parse_nba,
                       pinf_nba, reduce, save_automaton, serialize_automaton, serialize_nba,
                       singleton_nba, trim, universal_nba)
from .closure import (Budget, buchi_decomposition, kv_complement, nba_complement,
                      nba_contains, nba_equivalent, nba_intersection, nba_intersection_all,
                      nba_is_cantor_closed, nba_product, nba_projection, nba_union,
                      omega_concat, safety_closure)
from .errors import (AlphabetMismatch, BudgetExceeded, BuchiTopError, EmptyLanguage,
                     IllegalMove, InvariantViolation, ParseError)
from .lifting import LiftedNBA, lift, lift_witness
from .metric import (DistanceResult, NbaEnumeration, ball_language, cauchy_demo, delta,
                     nba_enumeration, separates)
from .words import (BINARY, Alphabet, Dyadic, FiniteWord, UPWord, format_upword,
                    is_in_pinf, iter_upwords, parse_upword, up, up_canonicalize, up_equal,
                    up_from_pairs, up_project, xn)

__version__ = "0.1.0"
