"""Words, eventually periodic points and prefix-free sets over a finite alphabet.

A word is a plain tuple of symbols ``(0, 1, 1)``; the empty tuple is the empty
word. Text forms use one base-36 digit per symbol, with ``λ`` standing for the
empty word.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Tuple

Word = Tuple[int, ...]

EMPTY_WORD_TOKEN = "λ"
_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


def parse_word(text: str, alphabet: int = 2) -> Word:
    """Parse ``"011"`` into ``(0, 1, 1)``. ``"λ"`` and ``""`` give the empty word."""
    text = text.strip()
    if text in ("", EMPTY_WORD_TOKEN):
        return ()
    word = []
    for ch in text.lower():
        if ch not in _DIGITS or _DIGITS.index(ch) >= alphabet:
            raise ValueError(f"symbol {ch!r} is not in the alphabet of size {alphabet}")
        word.append(_DIGITS.index(ch))
    return tuple(word)


def format_word(word: Word, empty: str = EMPTY_WORD_TOKEN) -> str:
    if not word:
        return empty
    return "".join(_DIGITS[s] for s in word)


def is_prefix(u: Word, v: Word) -> bool:
    return len(u) <= len(v) and v[: len(u)] == u


def all_words(alphabet: int, length: int) -> Iterator[Word]:
    return itertools.product(range(alphabet), repeat=length)


@dataclass(frozen=True)
class EventuallyPeriodic:
    """The infinite sequence ``head · period · period · ...``."""

    head: Word
    period: Word

    def __post_init__(self):
        if not self.period:
            raise ValueError("period must be nonempty")
        object.__setattr__(self, "head", tuple(self.head))
        object.__setattr__(self, "period", tuple(self.period))

    @classmethod
    def constant(cls, symbol: int = 0) -> "EventuallyPeriodic":
        return cls((), (symbol,))

    def __getitem__(self, i: int) -> int:
        if i < len(self.head):
            return self.head[i]
        return self.period[(i - len(self.head)) % len(self.period)]

    def prefix(self, n: int) -> Word:
        return tuple(self[i] for i in range(n))

    def drop(self, n: int) -> "EventuallyPeriodic":
        """The suffix obtained by deleting the first ``n`` symbols."""
        if n <= len(self.head):
            return EventuallyPeriodic(self.head[n:], self.period)
        r = (n - len(self.head)) % len(self.period)
        return EventuallyPeriodic((), self.period[r:] + self.period[:r])

    def prepend(self, word: Word) -> "EventuallyPeriodic":
        return EventuallyPeriodic(tuple(word) + self.head, self.period)

    def first_difference(self, other: "EventuallyPeriodic") -> int | None:
        """Least index where the two sequences differ, or None if they are equal."""
        horizon = max(len(self.head), len(other.head)) + math.lcm(
            len(self.period), len(other.period)
        )
        for i in range(horizon):
            if self[i] != other[i]:
                return i
        return None

    def max_symbol(self) -> int:
        return max(self.head + self.period)


def parse_point(text: str, alphabet: int = 2) -> EventuallyPeriodic:
    """Parse ``HEAD:PERIOD``, e.g. ``"01:10"`` for 01(10)^ω or ``":0"`` for 0^ω."""
    if ":" not in text:
        raise ValueError(f"point {text!r} must have the form HEAD:PERIOD")
    head, period = text.split(":", 1)
    head_w = parse_word(head, alphabet) if head else ()
    period_w = parse_word(period, alphabet) if period else ()
    if not period_w:
        raise ValueError(f"point {text!r} has an empty period")
    return EventuallyPeriodic(head_w, period_w)


def format_point(x: EventuallyPeriodic) -> str:
    return format_word(x.head, empty="") + ":" + format_word(x.period, empty="")


@dataclass(frozen=True)
class PrefixFreeSet:
    """A finite antichain of words; it represents the clopen set ``[S]``."""

    words: frozenset
    alphabet: int = 2

    def __post_init__(self):
        words = frozenset(tuple(w) for w in self.words)
        object.__setattr__(self, "words", words)
        if self.alphabet < 2:
            raise ValueError("alphabet size must be at least 2")
        for w in words:
            if any(not 0 <= s < self.alphabet for s in w):
                raise ValueError(f"word {format_word(w)} uses symbols outside the alphabet")
        ordered = sorted(words)
        # in lexicographic order a prefix sorts immediately before some extension
        for u, v in zip(ordered, ordered[1:]):
            if is_prefix(u, v):
                raise ValueError(f"{format_word(u)} is a prefix of {format_word(v)}")

    @classmethod
    def of(cls, *words: str, alphabet: int = 2) -> "PrefixFreeSet":
        """Build from text words: ``PrefixFreeSet.of("00", "01")``."""
        return cls(frozenset(parse_word(w, alphabet) for w in words), alphabet)

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[Word]:
        return iter(sorted(self.words, key=lambda w: (len(w), w)))

    @property
    def is_empty(self) -> bool:
        return not self.words

    @property
    def is_full(self) -> bool:
        return () in self.words

    @property
    def max_length(self) -> int:
        return max((len(w) for w in self.words), default=0)

    def child(self, symbol: int) -> "PrefixFreeSet":
        """The slice ``{σ : symbol·σ ∈ S}``."""
        return PrefixFreeSet(
            frozenset(w[1:] for w in self.words if w and w[0] == symbol), self.alphabet
        )

    def covers(self, word: Word) -> bool:
        """True if the cylinder of ``word`` lies inside ``[S]``."""
        return any(is_prefix(w, word) for w in self.words)

    def cylinders(self, depth: int) -> list[Word]:
        """Words of length ``depth`` whose cylinders lie inside ``[S]``."""
        out = []
        for w in sorted(self.words):
            if len(w) > depth:
                raise ValueError("depth is shorter than a word of the set")
            out.extend(w + tail for tail in all_words(self.alphabet, depth - len(w)))
        return sorted(out)

    def __str__(self) -> str:
        return "{" + ", ".join(format_word(w) for w in self) + "}"


def antichains(alphabet: int, depth: int) -> Iterator[PrefixFreeSet]:
    """Every prefix-free set of words of length at most ``depth`` (empty set included)."""
    for words in _antichains((), alphabet, depth):
        yield PrefixFreeSet(frozenset(words), alphabet)


def _antichains(root: Word, alphabet: int, depth: int) -> Iterator[list[Word]]:
    # either the root itself, or an independent choice under each child
    yield [root]
    if len(root) == depth:
        yield []
        return
    per_child = [list(_antichains(root + (i,), alphabet, depth)) for i in range(alphabet)]
    for combo in itertools.product(*per_child):
        yield [w for part in combo for w in part]


def count_antichains(alphabet: int, depth: int) -> int:
    n = 2
    for _ in range(depth):
        n = n**alphabet + 1
    return n


def words_of(items: Iterable[str], alphabet: int = 2) -> list[Word]:
    return [parse_word(w, alphabet) for w in items]
