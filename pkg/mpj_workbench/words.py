"""Alphabets, words and subword combinatorics.

Words are plain tuples of :class:`Symbol`. A symbol is a base name plus a tuple
of integer decoration tags, so decorated alphabets (one letter per residue, or
one letter per sweep decoration) stack without string mangling.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import AlphabetMismatchError


class Symbol(NamedTuple):
    """A letter: base name plus decoration tags (outermost last)."""

    base: str
    tags: tuple[int, ...] = ()

    def decorate(self, tag: int) -> Symbol:
        return Symbol(self.base, (*self.tags, tag))

    @property
    def plain(self) -> bool:
        return not self.tags

    def __str__(self) -> str:
        if not self.tags:
            return self.base
        return f"{self.base}:{'.'.join(str(t) for t in self.tags)}"

    @classmethod
    def parse(cls, token: str) -> Symbol:
        """Parse a ``base`` or ``base:tag[.tag...]`` token."""
        base, sep, tags = token.partition(":")
        if not base:
            raise ValueError(f"empty symbol in token {token!r}")
        if not sep:
            return cls(base)
        return cls(base, tuple(int(t) for t in tags.split(".")))


Word = tuple[Symbol, ...]

EMPTY: Word = ()


@dataclass(frozen=True)
class Alphabet:
    """Ordered finite set of distinct symbols."""

    symbols: tuple[Symbol, ...]
    _index: dict[Symbol, int] = field(
        default=None, init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self):
        if not self.symbols:
            raise ValueError("alphabet must be nonempty")
        index = {s: i for i, s in enumerate(self.symbols)}
        if len(index) != len(self.symbols):
            raise ValueError(f"duplicate symbols in alphabet {self}")
        _check_tag_ranges(self.symbols)
        object.__setattr__(self, "_index", index)

    @classmethod
    def of(cls, letters: str | Iterable[str | Symbol]) -> Alphabet:
        """Build an alphabet from single characters or symbol tokens."""
        return cls(
            tuple(s if isinstance(s, Symbol) else Symbol.parse(s) for s in letters)
        )

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[Symbol]:
        return iter(self.symbols)

    def __contains__(self, symbol: object) -> bool:
        return symbol in self._index

    def __str__(self) -> str:
        return "{" + ",".join(str(s) for s in self.symbols) + "}"

    def index(self, symbol: Symbol) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise AlphabetMismatchError(
                f"symbol {symbol} not in alphabet {self}"
            ) from None

    def indices(self, word: Word) -> tuple[int, ...]:
        return tuple(self.index(s) for s in word)

    def decorated(self, width: int) -> Alphabet:
        """Alphabet of every symbol decorated with each tag in ``range(width)``."""
        return Alphabet(
            tuple(s.decorate(i) for s in self.symbols for i in range(width))
        )

    def word(self, text: str) -> Word:
        """Parse ``text`` as a word over this alphabet."""
        word = parse_word(text)
        check_word(word, self)
        return word


def _check_tag_ranges(symbols: tuple[Symbol, ...]) -> None:
    depth = max(len(s.tags) for s in symbols)
    for level in range(depth):
        values = {s.tags[level] for s in symbols if len(s.tags) > level}
        if values != set(range(len(values))):
            raise ValueError(
                f"decoration tags at level {level} are not contiguous from 0: "
                f"{sorted(values)}"
            )


def check_word(word: Word, alphabet: Alphabet) -> None:
    """Raise AlphabetMismatchError unless every letter belongs to ``alphabet``."""
    for symbol in word:
        if symbol not in alphabet:
            raise AlphabetMismatchError(f"letter {symbol} not in alphabet {alphabet}")


def parse_word(text: str) -> Word:
    """Parse a word: plain strings per character, else comma-separated tokens."""
    if "," in text or ":" in text:
        return tuple(Symbol.parse(t.strip()) for t in text.split(",") if t.strip())
    return tuple(Symbol(c) for c in text)


def format_word(word: Word) -> str:
    if all(s.plain and len(s.base) == 1 for s in word):
        return "".join(s.base for s in word)
    return ",".join(str(s) for s in word)


def word_of(text: str) -> Word:
    """Shorthand for an untagged word of single-character letters."""
    return tuple(Symbol(c) for c in text)


def decorate_word(word: Word, tag: int) -> Word:
    return tuple(s.decorate(tag) for s in word)


def sort_key(word: Word) -> tuple:
    """Length-lexicographic order key."""
    return (len(word), word)


def _same_alphabet(u: Word, w: Word, alphabet: Alphabet | None) -> None:
    if alphabet is not None:
        check_word(u, alphabet)
        check_word(w, alphabet)


def is_subword(u: Word, w: Word, alphabet: Alphabet | None = None) -> bool:
    """True iff ``u`` is a scattered subsequence of ``w``."""
    _same_alphabet(u, w, alphabet)
    if not u:
        return True
    i = 0
    for letter in w:
        if letter == u[i]:
            i += 1
            if i == len(u):
                return True
    return False


def is_factor(u: Word, w: Word, alphabet: Alphabet | None = None) -> bool:
    """True iff ``u`` occurs contiguously in ``w``."""
    _same_alphabet(u, w, alphabet)
    return find_factor(u, w, 0) >= 0


def find_factor(u: Word, w: Word, start: int = 0) -> int:
    """Index of the first occurrence of ``u`` in ``w`` at or after ``start``."""
    size = len(u)
    for i in range(start, len(w) - size + 1):
        if w[i : i + size] == u:
            return i
    return -1


@dataclass(frozen=True)
class SubwordSet:
    """Downward-closed set of subwords of length at most k."""

    k: int
    members: tuple[Word, ...]
    present: frozenset[Word] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("k must be non-negative")
        members = tuple(sorted(set(self.members), key=sort_key))
        object.__setattr__(self, "members", members)
        present = frozenset(members)
        object.__setattr__(self, "present", present)
        if EMPTY not in present:
            raise ValueError("subword set must contain the empty word")
        for x in members:
            if len(x) > self.k:
                raise ValueError(f"member longer than k={self.k}")
            for i in range(len(x)):
                if x[:i] + x[i + 1 :] not in present:
                    raise ValueError("subword set is not downward closed")

    def __contains__(self, word: object) -> bool:
        return word in self.present

    def __len__(self) -> int:
        return len(self.members)

    def concat(self, other: SubwordSet) -> SubwordSet:
        """Subword set of ``uv`` from those of ``u`` and ``v`` (split rule)."""
        if other.k != self.k:
            raise ValueError("cannot concatenate subword sets of different k")
        return SubwordSet(self.k, _split_product(self.members, other.members, self.k))

    def __str__(self) -> str:
        inner = ", ".join(format_word(m) or "ε" for m in self.members)
        return "{" + inner + "}"


def _split_product(left: Iterable[Word], right: Iterable[Word], k: int) -> tuple:
    right = list(right)
    return tuple(
        {x + y for x in left for y in right if len(x) + len(y) <= k}
    )


def subword_members(w: Word, k: int) -> frozenset[Word]:
    """Every subword of ``w`` of length at most ``k``."""
    found = {EMPTY}
    for letter in w:
        found |= {x + (letter,) for x in found if len(x) < k}
    return frozenset(found)


def subword_set(w: Word, k: int) -> SubwordSet:
    if k < 0:
        raise ValueError("k must be non-negative")
    return SubwordSet(k, tuple(subword_members(w, k)))


def sim_k(u: Word, v: Word, k: int, alphabet: Alphabet | None = None) -> bool:
    """True iff ``u`` and ``v`` have the same subwords of length at most ``k``."""
    _same_alphabet(u, v, alphabet)
    return subword_members(u, k) == subword_members(v, k)


def enumerate_words(alphabet: Alphabet, min_len: int, max_len: int) -> Iterator[Word]:
    """Yield every word with length in ``[min_len, max_len]`` in length-lex order."""
    if not 0 <= min_len <= max_len:
        raise ValueError(f"invalid length range [{min_len}, {max_len}]")
    for length in range(min_len, max_len + 1):
        yield from itertools.product(alphabet.symbols, repeat=length)


def enumerate_index_words(size: int, length: int) -> Iterator[tuple[int, ...]]:
    """Words of one length over ``range(size)``, in lexicographic order."""
    return itertools.product(range(size), repeat=length)
