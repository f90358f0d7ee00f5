"""Alphabets, finite words and ultimately periodic omega-words.

Letters are stored as symbol indices into an :class:`Alphabet`.  An
ultimately periodic word ``u.v^w`` is always kept in canonical form
(primitive period, shortest preperiod) so that equality of the denoted
infinite words is plain field equality.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Hashable, Iterable, Iterator, Sequence

from .errors import AlphabetMismatch, ParseError


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple

    def __post_init__(self):
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if len(symbols) < 2:
            raise ValueError("an alphabet needs at least two symbols")
        if len(set(symbols)) != len(symbols):
            raise ValueError(f"duplicate symbols in alphabet {symbols!r}")

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[Hashable]:
        return iter(self.symbols)

    def index(self, symbol) -> int:
        try:
            return self.symbols.index(symbol)
        except ValueError:
            raise KeyError(f"symbol {symbol!r} not in alphabet {self.symbols!r}") from None

    def symbol(self, i: int):
        return self.symbols[i]

    @classmethod
    def of(cls, *symbols) -> "Alphabet":
        return cls(tuple(symbols))

    @classmethod
    def pairs(cls, left: "Alphabet", right: "Alphabet") -> "Alphabet":
        """Pair alphabet identifying ``left^N x right^N`` with ``(left x right)^N``.

        Pair ``(a, b)`` gets index ``ia * len(right) + ib``.
        """
        return cls(tuple((a, b) for a in left.symbols for b in right.symbols))

    @property
    def is_pair(self) -> bool:
        return all(isinstance(s, tuple) and len(s) == 2 for s in self.symbols)

    def component(self, coordinate: int) -> "Alphabet":
        if not self.is_pair:
            raise ValueError("not a pair alphabet")
        seen = []
        for s in self.symbols:
            if s[coordinate] not in seen:
                seen.append(s[coordinate])
        return Alphabet(tuple(seen))

    def __str__(self) -> str:
        return " ".join(symbol_text(s) for s in self.symbols)


BINARY = Alphabet(("0", "1"))


def symbol_text(symbol) -> str:
    if isinstance(symbol, tuple):
        return ",".join(symbol_text(s) for s in symbol)
    return str(symbol)


def check_same_alphabet(a: Alphabet, b: Alphabet) -> None:
    if a != b:
        raise AlphabetMismatch(f"alphabet mismatch: {a} vs {b}")


@dataclass(frozen=True)
class FiniteWord:
    alphabet: Alphabet
    letters: tuple = ()

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        n = len(self.alphabet)
        for i in letters:
            if not (isinstance(i, int) and 0 <= i < n):
                raise ValueError(f"letter index {i!r} out of range for alphabet of size {n}")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __add__(self, other: "FiniteWord") -> "FiniteWord":
        check_same_alphabet(self.alphabet, other.alphabet)
        return FiniteWord(self.alphabet, self.letters + other.letters)

    @classmethod
    def parse(cls, alphabet: Alphabet, text: str) -> "FiniteWord":
        return cls(alphabet, parse_letters(alphabet, text))

    def __str__(self) -> str:
        return "".join(symbol_text(self.alphabet.symbol(i)) for i in self.letters)


def parse_letters(alphabet: Alphabet, text: str) -> tuple:
    out = []
    for ch in text:
        try:
            out.append(alphabet.index(ch))
        except KeyError:
            raise ParseError(f"unknown symbol {ch!r}") from None
    return tuple(out)


def primitive_root(v: Sequence[int]) -> tuple:
    n = len(v)
    for d in range(1, n + 1):
        if n % d == 0 and tuple(v[:d]) * (n // d) == tuple(v):
            return tuple(v[:d])
    raise ValueError("empty period")


@dataclass(frozen=True)
class UPWord:
    """The omega-word ``prefix . period^omega``; build with :func:`up_canonicalize`."""

    alphabet: Alphabet
    prefix: tuple
    period: tuple

    @property
    def u(self) -> FiniteWord:
        return FiniteWord(self.alphabet, self.prefix)

    @property
    def v(self) -> FiniteWord:
        return FiniteWord(self.alphabet, self.period)

    def __getitem__(self, i: int) -> int:
        return up_letter_at(self, i)

    def letters(self, n: int) -> tuple:
        return tuple(up_letter_at(self, i) for i in range(n))

    def __str__(self) -> str:
        return format_upword(self)


def up_canonicalize(alphabet: Alphabet, u, v) -> UPWord:
    """Canonical :class:`UPWord` for ``u.v^w``.

    ``u`` and ``v`` may be :class:`FiniteWord` or index sequences.
    """
    u = tuple(u.letters if isinstance(u, FiniteWord) else u)
    v = tuple(v.letters if isinstance(v, FiniteWord) else v)
    if not v:
        raise ValueError("the period of an ultimately periodic word must be nonempty")
    FiniteWord(alphabet, u + v)  # range check
    v = primitive_root(v)
    # absorb the tail of u into a rotation of v
    while u and u[-1] == v[-1]:
        u = u[:-1]
        v = (v[-1],) + v[:-1]
    return UPWord(alphabet, u, v)


def up(text: str, alphabet: Alphabet = BINARY) -> UPWord:
    """Shorthand for :func:`parse_upword`."""
    return parse_upword(text, alphabet)


_UP_RE = re.compile(r"^([^()]*)\(([^()]+)\)w$")


def parse_upword(text: str, alphabet: Alphabet = BINARY) -> UPWord:
    """Parse the ``u(v)w`` syntax, e.g. ``01(10)w`` or ``(0)w``."""
    m = _UP_RE.match(text.strip())
    if not m:
        raise ParseError(f"malformed ultimately periodic word {text!r}; expected u(v)w")
    return up_canonicalize(alphabet, parse_letters(alphabet, m.group(1)),
                           parse_letters(alphabet, m.group(2)))


def format_upword(x: UPWord) -> str:
    sym = lambda i: symbol_text(x.alphabet.symbol(i))
    return "".join(map(sym, x.prefix)) + "(" + "".join(map(sym, x.period)) + ")w"


def up_equal(x: UPWord, y: UPWord) -> bool:
    check_same_alphabet(x.alphabet, y.alphabet)
    return x.prefix == y.prefix and x.period == y.period


def up_letter_at(x: UPWord, i: int) -> int:
    if i < 0:
        raise IndexError(i)
    if i < len(x.prefix):
        return x.prefix[i]
    return x.period[(i - len(x.prefix)) % len(x.period)]


def agreement_horizon(x: UPWord, y: UPWord) -> int:
    """Positions beyond which two UP words agree iff they agreed before."""
    return max(len(x.prefix), len(y.prefix)) + math.lcm(len(x.period), len(y.period))


def first_difference(x: UPWord, y: UPWord) -> int | None:
    check_same_alphabet(x.alphabet, y.alphabet)
    for i in range(agreement_horizon(x, y)):
        if up_letter_at(x, i) != up_letter_at(y, i):
            return i
    return None


def up_from_pairs(x: UPWord, y: UPWord) -> UPWord:
    """Zip two UP words into one over the pair alphabet."""
    alphabet = Alphabet.pairs(x.alphabet, y.alphabet)
    m = len(y.alphabet)
    stem = max(len(x.prefix), len(y.prefix))
    loop = math.lcm(len(x.period), len(y.period))
    letters = [up_letter_at(x, i) * m + up_letter_at(y, i) for i in range(stem + loop)]
    return up_canonicalize(alphabet, letters[:stem], letters[stem:])


def up_project(x: UPWord, coordinate: int) -> UPWord:
    alphabet = x.alphabet.component(coordinate)
    f = lambda i: alphabet.index(x.alphabet.symbol(i)[coordinate])
    return up_canonicalize(alphabet, [f(i) for i in x.prefix], [f(i) for i in x.period])


def is_in_pinf(x: UPWord) -> bool:
    """True iff the binary word ``x`` carries infinitely many 1s."""
    if x.alphabet != BINARY:
        raise AlphabetMismatch("infinitely-many-ones test needs the alphabet {0,1}")
    return 1 in x.period


def xn(n: int) -> UPWord:
    """The word ``0^(n!) 1 0^w`` used to show the separator metric is not complete."""
    if n < 1:
        raise ValueError("xn needs n >= 1")
    return up_canonicalize(BINARY, (0,) * math.factorial(n) + (1,), (0,))


def iter_upwords(alphabet: Alphabet, max_prefix: int, max_period: int) -> Iterator[UPWord]:
    """All canonical UP words with ``|u| <= max_prefix`` and ``|v| <= max_period``.

    Deterministic order: by (|u|, |v|) then lexicographic.
    """
    seen = set()
    k = len(alphabet)
    for lu in range(max_prefix + 1):
        for lv in range(1, max_period + 1):
            for u in _all_words(k, lu):
                for v in _all_words(k, lv):
                    x = up_canonicalize(alphabet, u, v)
                    if x.prefix == u and x.period == v and x not in seen:
                        seen.add(x)
                        yield x


def _all_words(k: int, n: int) -> Iterable[tuple]:
    if n == 0:
        yield ()
        return
    for w in _all_words(k, n - 1):
        for a in range(k):
            yield w + (a,)


@total_ordering
@dataclass(frozen=True)
class Dyadic:
    """Exact value in ``{0} u {2^-n : n >= 0}``; ``exponent=None`` is zero."""

    exponent: int | None

    def __post_init__(self):
        if self.exponent is not None and self.exponent < 0:
            raise ValueError("dyadic exponent must be >= 0")

    @classmethod
    def zero(cls) -> "Dyadic":
        return cls(None)

    @classmethod
    def power(cls, n: int) -> "Dyadic":
        return cls(n)

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    def as_fraction(self) -> Fraction:
        return Fraction(0) if self.exponent is None else Fraction(1, 2 ** self.exponent)

    def __lt__(self, other: "Dyadic") -> bool:
        return self.as_fraction() < other.as_fraction()

    def __add__(self, other: "Dyadic") -> Fraction:
        return self.as_fraction() + other.as_fraction()

    def __str__(self) -> str:
        if self.exponent is None:
            return "0"
        return "1" if self.exponent == 0 else f"1/{2 ** self.exponent}"


def prefix_distance(x: UPWord, y: UPWord) -> Dyadic:
    r = first_difference(x, y)
    return Dyadic.zero() if r is None else Dyadic.power(r)
