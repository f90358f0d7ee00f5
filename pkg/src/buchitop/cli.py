"""Command-line interface.

Every command prints one JSON report on stdout; human-readable notes and
timing go to stderr, so the JSON is byte-identical across runs.

Exit codes: 0 success, 1 a checked property was refuted, 2 bad input,
3 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time

from . import automata as au
from . import closure as cl
from .errors import AlphabetMismatch, BudgetExceeded, EmptyLanguage, IllegalMove, ParseError
from .words import BINARY, Alphabet, format_upword, iter_upwords, parse_upword, up_equal

EXIT_OK, EXIT_REFUTED, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

log = logging.getLogger("buchitop")


class Refuted(Exception):
    """A property the theory guarantees did not hold."""


class RejectedInput(Exception):
    """The input broke the rules; the report is still printed."""


def _emit(report: dict) -> None:
    json.dump(report, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def _alphabet(text: str | None) -> Alphabet:
    if not text:
        return BINARY
    symbols = text.split(",") if "," in text else list(text)
    return Alphabet(tuple(symbols))


def _write_or_embed(aut, out: str | None, report: dict, key: str = "automaton") -> None:
    text = str(aut)
    report["states"] = aut.state_count
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
        report["output"] = out
    else:
        report[key] = text


# ---------------------------------------------------------------------------
# aut


def cmd_aut(args) -> dict:
    op = args.op
    budget = cl.Budget(args.budget)
    a = au.load_automaton(args.files[0])
    report = {"command": f"aut {op}", "inputs": list(args.files) + list(args.words)}

    def second():
        if len(args.files) < 2:
            raise ParseError(f"'aut {op}' needs two automaton files")
        return au.load_automaton(args.files[1])

    if op == "member":
        if not args.words:
            raise ParseError("'aut member' needs a word argument")
        results = {}
        for text in args.words:
            results[text] = au.nba_member(a, parse_upword(text, a.alphabet))
        report["outcome"] = results if len(results) > 1 else next(iter(results.values()))
    elif op == "empty":
        report["outcome"] = au.nba_empty(a)
    elif op == "find-word":
        try:
            report["outcome"] = format_upword(au.find_up_word(a))
        except EmptyLanguage:
            report["outcome"] = None
    elif op in ("union", "intersect"):
        b = second()
        res = cl.nba_union(a, b) if op == "union" else cl.nba_intersection_all([a, b], budget)
        _write_or_embed(res, args.output, report)
        report["outcome"] = "built"
    elif op == "complement":
        _write_or_embed(cl.nba_complement(a, budget), args.output, report)
        report["outcome"] = "built"
    elif op == "project":
        _write_or_embed(cl.nba_projection(a, args.coordinate), args.output, report)
        report["outcome"] = "built"
    elif op == "contains":
        b = second()
        report["question"] = f"L({args.files[1]}) is a subset of L({args.files[0]})"
        report["outcome"] = cl.nba_contains(a, b, budget)
    elif op == "equivalent":
        report["outcome"] = cl.nba_equivalent(a, second(), budget)
    elif op == "decompose":
        pairs = cl.buchi_decomposition(a)
        report["outcome"] = len(pairs)
        report["pairs"] = [{"U": str(u), "V": str(v)} for u, v in pairs]
        rebuilt = cl.decomposition_nba(pairs, a.alphabet)
        report["equivalent_to_input"] = cl.nba_equivalent(a, rebuilt, budget)
        if not report["equivalent_to_input"]:
            raise Refuted(report)
    elif op == "lift":
        from .lifting import lift
        _write_or_embed(lift(a).lifted, args.output, report)
        report["outcome"] = "built"
    elif op == "is-closed":
        report["outcome"] = cl.nba_is_cantor_closed(a, budget)
    elif op == "reduce":
        _write_or_embed(au.reduce(a), args.output, report)
        report["outcome"] = "built"
    return report


# ---------------------------------------------------------------------------
# metric


def _pair(text: str) -> tuple[int, int]:
    try:
        n, m = text.split(",")
        return int(n), int(m)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected n,m but got {text!r}") from None


def cmd_metric(args) -> dict:
    from . import metric
    alphabet = _alphabet(args.alphabet)
    if args.op == "delta":
        x, y = (parse_upword(w, alphabet) for w in args.words)
        res = metric.delta(x, y, args.kmax)
        report = {"command": "metric delta", "inputs": args.words, "kmax": args.kmax,
                  "outcome": str(res), "kind": res.kind, "value": str(res.value),
                  "checked": {str(k): v for k, v in res.checked.items()}}
        if res.separator is not None:
            report["separator"] = str(res.separator)
        return report
    if args.op == "ball":
        (w,) = args.words
        x = parse_upword(w, alphabet)
        ball = metric.ball_language(x, args.n, cl.Budget(args.budget))
        report = {"command": "metric ball", "inputs": [w], "n": args.n}
        _write_or_embed(ball, args.output, report)
        singleton = au.singleton_nba(x)
        report["equivalent_to_singleton"] = cl.nba_equivalent(ball, singleton, cl.Budget(args.budget))
        report["contains_center"] = au.nba_member(ball, x)
        if not report["contains_center"]:
            raise Refuted(report)
        report["outcome"] = "built"
        return report
    if args.op == "cauchy":
        pairs = args.pairs or [(3, 4), (3, 5), (4, 5)]
        rows = metric.cauchy_demo(args.k, pairs)
        report = {"command": "metric cauchy", "k": args.k, "pairs": rows,
                  "outcome": "verified" if not any(r["separator_found"] for r in rows) else "refuted"}
        if report["outcome"] != "verified":
            raise Refuted(report)
        return report
    raise ParseError(f"unknown metric operation {args.op!r}")


# ---------------------------------------------------------------------------
# games


def cmd_game(args, trees: bool = False) -> dict:
    base = os.path.dirname(os.path.abspath(args.script))
    with open(args.script, encoding="utf-8") as fh:
        text = fh.read()
    options = {"round_cap": max(args.rounds, 1)}
    if args.budget is not None:
        options["state_budget"] = args.budget
    if trees:
        from .tree_game import parse_tree_script, play_tree_scripted
        moves = parse_tree_script(text, base)
        alphabet = moves[0].L.alphabet if moves else BINARY
        report = play_tree_scripted(moves, args.rounds, alphabet, **options)
    else:
        from .choquet import new_game, parse_script, play_scripted
        moves = parse_script(text, base)
        alphabet = moves[0].L.alphabet if moves else BINARY
        if args.no_containment:
            options["budget"] = None
        report = play_scripted(moves, args.rounds, new_game(alphabet, **options))
    out = {"command": ("tree-game" if trees else "game") + " play",
           "inputs": [args.script], **report.as_dict()}
    if report.outcome == "strategy failure":
        raise Refuted(out)
    if report.loss is not None:
        _note(report.loss)
        raise RejectedInput(out)
    if report.certificate is not None:
        _note("certificate: " + report.certificate.strip().replace("\n", "; "))
    return out


# ---------------------------------------------------------------------------
# demos


def _sample_words(count: int) -> list:
    words = list(iter_upwords(BINARY, 2, 3))
    step = len(words) / count
    return [words[int(i * step)] for i in range(count)]


def demo_isolated_points() -> dict:
    sweep = list(iter_upwords(BINARY, 2, 3))
    rows, ok = [], True
    for x in _sample_words(10):
        single = au.singleton_nba(x)
        bad = [format_upword(y) for y in sweep if au.nba_member(single, y) != up_equal(x, y)]
        rows.append({"word": format_upword(x), "states": single.state_count, "mismatches": bad})
        ok &= not bad
    return {"words": rows, "sweep_size": len(sweep), "verified": ok}


def demo_non_complete() -> dict:
    from .metric import cauchy_demo
    rows = cauchy_demo(2, [(3, 4), (3, 5), (4, 5)])
    return {"pairs": rows, "verified": not any(r["separator_found"] for r in rows)}


def demo_ball_singleton() -> dict:
    from .metric import ball_language
    x = parse_upword("(0)w")
    ball = ball_language(x, 1)
    eq = cl.nba_equivalent(ball, au.singleton_nba(x))
    return {"word": "(0)w", "n": 1, "ball_states": ball.state_count, "verified": eq}


def demo_lifting() -> dict:
    from .lifting import lift, lift_witness
    from .words import FiniteWord, is_in_pinf
    suite = {
        "infinitely-many-ones": au.pinf_nba(),
        "prefix-0": au.clopen_nba(FiniteWord(BINARY, (0,))),
        "singleton-(01)w": au.singleton_nba(parse_upword("(01)w")),
        "universal": au.universal_nba(BINARY),
    }
    sweep = list(iter_upwords(BINARY, 2, 3))
    rows, ok = [], True
    for name, aut in suite.items():
        lifted = lift(aut)
        proj = cl.nba_projection(lifted.lifted)
        mismatches = [format_upword(x) for x in sweep if au.nba_member(proj, x) != au.nba_member(aut, x)]
        witnesses = [lift_witness(lifted, x) for x in sweep if au.nba_member(aut, x)]
        bad_witness = sum(1 for a in witnesses if not is_in_pinf(a))
        rows.append({"automaton": name, "projection_mismatches": mismatches,
                     "witnesses": len(witnesses), "witnesses_outside_pinf": bad_witness})
        ok &= not mismatches and not bad_witness
    return {"automata": rows, "verified": ok}


def demo_exists_path() -> dict:
    from .trees import bta_member, constant_tree, exists_path, tinf_bta
    ep, tinf = exists_path(au.pinf_nba()), tinf_bta()
    one, zero = constant_tree(BINARY, "1"), constant_tree(BINARY, "0")
    facts = {
        "all-ones in ExistsPath(P_inf)": (bta_member(ep, one), True),
        "all-ones in T_inf": (bta_member(tinf, one), True),
        "all-zeros in ExistsPath(P_inf)": (bta_member(ep, zero), False),
        "all-zeros in T_inf": (bta_member(tinf, zero), False),
    }
    return {"facts": {k: got for k, (got, _) in facts.items()},
            "verified": all(got == want for got, want in facts.values())}


DEMOS = {
    "isolated-points": demo_isolated_points,
    "non-complete": demo_non_complete,
    "ball-singleton": demo_ball_singleton,
    "lifting": demo_lifting,
    "exists-path": demo_exists_path,
}


def cmd_demo(args) -> dict:
    body = DEMOS[args.name]()
    report = {"command": f"demo {args.name}", "outcome": "verified" if body["verified"] else "refuted",
              **body}
    if not body["verified"]:
        raise Refuted(report)
    return report


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="buchitop", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="group", required=True)

    a = sub.add_parser("aut", help="automaton operations")
    a.add_argument("op", choices=["member", "empty", "union", "intersect", "complement",
                                  "project", "contains", "equivalent", "decompose", "lift",
                                  "is-closed", "find-word", "reduce"])
    a.add_argument("files", nargs="+", help="automaton files, then words for 'member'")
    a.add_argument("-o", "--output")
    a.add_argument("--coordinate", type=int, default=0)
    a.add_argument("--budget", type=int, default=cl.DEFAULT_MAX_STATES)

    m = sub.add_parser("metric", help="separator distance")
    m.add_argument("op", choices=["delta", "ball", "cauchy"])
    m.add_argument("words", nargs="*")
    m.add_argument("--kmax", type=int, default=3)
    m.add_argument("--n", type=int, default=1)
    m.add_argument("--k", type=int, default=2)
    m.add_argument("--pairs", type=_pair, nargs="+")
    m.add_argument("--alphabet", help="symbols, e.g. 01 or a,b,c (default 01)")
    m.add_argument("-o", "--out", "--output", dest="output")
    m.add_argument("--budget", type=int, default=cl.DEFAULT_MAX_STATES)

    for name in ("game", "tree-game"):
        g = sub.add_parser(name, help=f"scripted strong Choquet {name.replace('-game', ' ')}game")
        g.add_argument("action", choices=["play"])
        g.add_argument("--script", required=True)
        g.add_argument("--rounds", type=int, default=5)
        g.add_argument("--json", action="store_true", help="accepted for compatibility; output is always JSON")
        g.add_argument("--budget", type=int, help="state budget for Player 2's constructions")
        if name == "game":
            g.add_argument("--no-containment", action="store_true",
                           help="skip the containment check of Player 1's sets")

    d = sub.add_parser("demo", help="reproduce a fact end to end")
    d.add_argument("name", choices=sorted(DEMOS))
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    if args.group == "aut":
        # files first, then words: anything not naming a file is a word
        files = [f for f in args.files if os.path.exists(f)]
        args.words = args.files[len(files):]
        args.files = files or args.files[:1]
    start = time.perf_counter()
    try:
        if args.group == "aut":
            report = cmd_aut(args)
        elif args.group == "metric":
            report = cmd_metric(args)
        elif args.group == "game":
            report = cmd_game(args)
        elif args.group == "tree-game":
            report = cmd_game(args, trees=True)
        else:
            report = cmd_demo(args)
        code = EXIT_OK
    except Refuted as exc:
        report, code = exc.args[0], EXIT_REFUTED
    except RejectedInput as exc:
        report, code = exc.args[0], EXIT_INPUT
    except (ParseError, AlphabetMismatch, IllegalMove, OSError, ValueError) as exc:
        _note(f"error: {exc}")
        return EXIT_INPUT
    except BudgetExceeded as exc:
        _note(f"budget exceeded: {exc}")
        return EXIT_BUDGET
    _emit(report)
    _note(f"wall-clock {time.perf_counter() - start:.3f}s")
    return code


if __name__ == "__main__":
    sys.exit(main())
