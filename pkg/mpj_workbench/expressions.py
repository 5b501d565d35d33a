"""Language expressions built from subword and factor atoms.

Every node carries its alphabet. ``member`` evaluates an expression by direct
scanning (concatenations by dynamic programming over split points); the
automata module compiles the same trees to minimal DFAs.
"""

from __future__ import annotations

import functools
import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, fields
from functools import cached_property
from typing import Any

from .errors import AlphabetMismatchError
from .words import (
    EMPTY,
    Alphabet,
    Symbol,
    Word,
    check_word,
    find_factor,
    format_word,
    is_factor,
    is_subword,
    parse_word,
)


def power(word: Word, times: int) -> Word:
    return word * times


def concat_words(words: Iterable[Word]) -> Word:
    return tuple(itertools.chain.from_iterable(words))


class LangExpr:
    """Base class of expression nodes.

    Subclasses are frozen dataclasses declared with ``eq=False``; equality and
    the (cached) hash are defined here over the dataclass fields.
    """

    alphabet: Alphabet

    def _fields(self) -> tuple:
        return tuple(getattr(self, f.name) for f in fields(self))

    @cached_property
    def _hash(self) -> int:
        return hash((type(self).__name__, self._fields()))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if type(self) is not type(other):
            return NotImplemented
        return self._hash == other._hash and self._fields() == other._fields()

    def contains(self, word: Word) -> bool:
        raise NotImplementedError

    def expand(self) -> LangExpr | None:
        """Equivalent expression over core nodes, or None for core nodes."""
        return None

    def render(self, ascii: bool = False) -> str:
        raise NotImplementedError

    def to_json(self) -> dict[str, Any]:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.render()

    def __and__(self, other: LangExpr) -> Intersection:
        return Intersection(self.alphabet, (self, other))

    def __or__(self, other: LangExpr) -> Union:
        return Union(self.alphabet, (self, other))

    def __invert__(self) -> Complement:
        return Complement(self)

    def __add__(self, other: LangExpr) -> Concat:
        return Concat(self.alphabet, (self, other))


def _check_same_alphabet(alphabet: Alphabet, parts: Sequence[LangExpr]) -> None:
    for part in parts:
        if part.alphabet != alphabet:
            raise AlphabetMismatchError(
                f"subexpression {part.render(ascii=True)} is over {part.alphabet}, "
                f"expected {alphabet}"
            )


def _word_text(word: Word, ascii: bool) -> str:
    if word:
        return format_word(word)
    return "eps" if ascii else "ε"


class _WordAtom(LangExpr):
    word: Word

    def __post_init__(self):
        check_word(self.word, self.alphabet)

    def to_json(self) -> dict[str, Any]:
        return {"op": self.op, "u": format_word(self.word)}


@dataclass(frozen=True, eq=False)
class ShuffleIdeal(_WordAtom):
    """Words having ``word`` as a scattered subword."""

    alphabet: Alphabet
    word: Word
    op = "shuffleIdeal"

    def contains(self, word: Word) -> bool:
        return is_subword(self.word, word)

    def render(self, ascii: bool = False) -> str:
        if ascii:
            return f"sh({_word_text(self.word, True)})"
        return f"{_word_text(self.word, False)}⧢Σ*"


@dataclass(frozen=True, eq=False)
class Factor(_WordAtom):
    """Words containing ``word`` contiguously."""

    alphabet: Alphabet
    word: Word
    op = "factor"

    def contains(self, word: Word) -> bool:
        return is_factor(self.word, word)

    def render(self, ascii: bool = False) -> str:
        if ascii:
            return f"fac({_word_text(self.word, True)})"
        return f"Σ*{_word_text(self.word, False)}Σ*"


@dataclass(frozen=True, eq=False)
class Prefix(_WordAtom):
    alphabet: Alphabet
    word: Word
    op = "prefix"

    def contains(self, word: Word) -> bool:
        return word[: len(self.word)] == self.word

    def render(self, ascii: bool = False) -> str:
        if ascii:
            return f"pre({_word_text(self.word, True)})"
        return f"{_word_text(self.word, False)}Σ*"


@dataclass(frozen=True, eq=False)
class Suffix(_WordAtom):
    alphabet: Alphabet
    word: Word
    op = "suffix"

    def contains(self, word: Word) -> bool:
        return len(word) >= len(self.word) and word[len(word) - len(self.word) :] == self.word

    def render(self, ascii: bool = False) -> str:
        if ascii:
            return f"suf({_word_text(self.word, True)})"
        return f"Σ*{_word_text(self.word, False)}"


@dataclass(frozen=True, eq=False)
class SingleWord(_WordAtom):
    alphabet: Alphabet
    word: Word
    op = "word"

    def contains(self, word: Word) -> bool:
        return word == self.word

    def render(self, ascii: bool = False) -> str:
        return _word_text(self.word, ascii)


@dataclass(frozen=True, eq=False)
class Letters(LangExpr):
    """One-letter words drawn from ``letters``."""

    alphabet: Alphabet
    letters: frozenset[Symbol]

    def __post_init__(self):
        object.__setattr__(self, "letters", frozenset(self.letters))
        check_word(tuple(self.letters), self.alphabet)

    def sorted_letters(self) -> list[Symbol]:
        return [s for s in self.alphabet if s in self.letters]

    def contains(self, word: Word) -> bool:
        return len(word) == 1 and word[0] in self.letters

    def render(self, ascii: bool = False) -> str:
        return "{" + ",".join(str(s) for s in self.sorted_letters()) + "}"

    def to_json(self) -> dict[str, Any]:
        return {"op": "letters", "letters": [str(s) for s in self.sorted_letters()]}


@dataclass(frozen=True, eq=False)
class Star(LangExpr):
    inner: LangExpr

    @property
    def alphabet(self) -> Alphabet:
        return self.inner.alphabet

    def contains(self, word: Word) -> bool:
        reach = [True] + [False] * len(word)
        for j in range(1, len(word) + 1):
            reach[j] = any(
                reach[i] and _member(self.inner, word[i:j]) for i in range(j)
            )
        return reach[-1]

    def render(self, ascii: bool = False) -> str:
        return f"({self.inner.render(ascii)})*"

    def to_json(self) -> dict[str, Any]:
        return {"op": "star", "of": self.inner.to_json()}


def _block_atom(factor: Word, threshold: int, word: Word) -> bool:
    return is_factor(factor, word) or is_subword(power(factor, threshold), word)


def _split_dp(word: Word, parts: Sequence[Any], test) -> bool:
    reachable = {0}
    for part in parts:
        reachable = {
            j
            for i in sorted(reachable)
            for j in range(i, len(word) + 1)
            if test(part, word[i:j])
        }
        if not reachable:
            return False
    return len(word) in reachable


@dataclass(frozen=True, eq=False)
class ThresholdBlock(LangExpr):
    """Concatenation of the blocks ``Σ*uΣ* ∪ u^l⧢Σ*`` over the factors."""

    alphabet: Alphabet
    factors: tuple[Word, ...]
    threshold: int

    def __post_init__(self):
        if not self.factors:
            raise ValueError("threshold block needs at least one factor")
        if self.threshold < 1:
            raise ValueError(f"threshold must be >= 1, got {self.threshold}")
        for u in self.factors:
            if not u:
                raise ValueError("threshold block factors must be nonempty")
            check_word(u, self.alphabet)

    def contains(self, word: Word) -> bool:
        return _split_dp(
            word, self.factors, lambda u, x: _cached_block(u, self.threshold, x)
        )

    def expand(self) -> LangExpr:
        return Concat(
            self.alphabet,
            tuple(
                Union(
                    self.alphabet,
                    (
                        Factor(self.alphabet, u),
                        ShuffleIdeal(self.alphabet, power(u, self.threshold)),
                    ),
                )
                for u in self.factors
            ),
        )

    def render(self, ascii: bool = False) -> str:
        inner = ",".join(format_word(u) for u in self.factors)
        if ascii:
            return f"<{inner}>_{self.threshold}"
        return f"⟨{inner}⟩_{self.threshold}"

    def to_json(self) -> dict[str, Any]:
        return {
            "op": "thresholdBlock",
            "us": [format_word(u) for u in self.factors],
            "l": self.threshold,
        }


@functools.lru_cache(maxsize=1 << 16)
def _cached_block(factor: Word, threshold: int, word: Word) -> bool:
    return _block_atom(factor, threshold, word)


def _check_alphas(alphas: tuple[int, ...], factors: tuple[Word, ...], threshold: int):
    if threshold < 1:
        raise ValueError(f"threshold must be >= 1, got {threshold}")
    if len(alphas) != len(factors):
        raise ValueError("alpha vector and factor list differ in length")
    for a in alphas:
        if not 1 <= a <= threshold:
            raise ValueError(f"alpha component {a} outside [1, {threshold}]")


@dataclass(frozen=True, eq=False)
class LBlock(LangExpr):
    """Factor ``u`` below the threshold, ``u^l`` as a subword at it."""

    alphabet: Alphabet
    factor: Word
    threshold: int
    alpha: int

    def __post_init__(self):
        _check_alphas((self.alpha,), (self.factor,), self.threshold)
        check_word(self.factor, self.alphabet)

    def expand(self) -> LangExpr:
        if self.alpha < self.threshold:
            return Factor(self.alphabet, self.factor)
        return ShuffleIdeal(self.alphabet, power(self.factor, self.threshold))

    def contains(self, word: Word) -> bool:
        return _member(self.expand(), word)

    def render(self, ascii: bool = False) -> str:
        return f"L({format_word(self.factor)},{self.threshold},{self.alpha})"

    def to_json(self) -> dict[str, Any]:
        return {
            "op": "lBlock",
            "u": format_word(self.factor),
            "l": self.threshold,
            "alpha": self.alpha,
        }


class _AlphaFamily(LangExpr):
    alphas: tuple[int, ...]
    factors: tuple[Word, ...]
    threshold: int
    op: str
    letter: str

    def __post_init__(self):
        _check_alphas(self.alphas, self.factors, self.threshold)
        for u in self.factors:
            check_word(u, self.alphabet)

    def open_indices(self) -> list[int]:
        """Indices whose exponent stays below the threshold."""
        return [i for i, a in enumerate(self.alphas) if a < self.threshold]

    def powered(self, bump: int | None = None) -> Word:
        """Product of ``u_i^alpha_i`` with the exponent at ``bump`` raised by one."""
        return concat_words(
            power(u, a + (1 if i == bump else 0))
            for i, (u, a) in enumerate(zip(self.factors, self.alphas))
        )

    def context(self, i: int) -> tuple[Word, Word]:
        """Powered products strictly left and right of factor ``i``."""
        left = concat_words(
            power(u, a) for u, a in zip(self.factors[:i], self.alphas[:i])
        )
        right = concat_words(
            power(u, a)
            for u, a in zip(self.factors[i + 1 :], self.alphas[i + 1 :])
        )
        return left, right

    def render(self, ascii: bool = False) -> str:
        alphas = ",".join(str(a) for a in self.alphas)
        us = ",".join(format_word(u) for u in self.factors)
        return f"{self.letter}_{self.threshold}^({alphas})({us})"

    def to_json(self) -> dict[str, Any]:
        return {
            "op": self.op,
            "alphas": list(self.alphas),
            "us": [format_word(u) for u in self.factors],
            "l": self.threshold,
        }


@dataclass(frozen=True, eq=False)
class RLang(_AlphaFamily):
    """Exact subword counts: ``u_i^alpha_i`` products present, one more absent."""

    alphabet: Alphabet
    alphas: tuple[int, ...]
    factors: tuple[Word, ...]
    threshold: int
    op = "rLang"
    letter = "R"

    def contains(self, word: Word) -> bool:
        if not is_subword(self.powered(), word):
            return False
        return not any(is_subword(self.powered(i), word) for i in self.open_indices())

    def expand(self) -> LangExpr:
        return Intersection(
            self.alphabet,
            (ShuffleIdeal(self.alphabet, self.powered()),)
            + tuple(
                Complement(ShuffleIdeal(self.alphabet, self.powered(i)))
                for i in self.open_indices()
            ),
        )


@dataclass(frozen=True, eq=False)
class SLang(_AlphaFamily):
    """Each open factor occurs contiguously between its powered contexts."""

    alphabet: Alphabet
    alphas: tuple[int, ...]
    factors: tuple[Word, ...]
    threshold: int
    op = "sLang"
    letter = "S"

    def contains(self, word: Word) -> bool:
        for i in self.open_indices():
            u = self.factors[i]
            left, right = self.context(i)
            p = find_factor(u, word, 0)
            while p >= 0:
                if is_subword(left, word[:p]) and is_subword(right, word[p + len(u) :]):
                    break
                p = find_factor(u, word, p + 1)
            else:
                return False
        return True

    def expand(self) -> LangExpr:
        conjuncts = []
        for i in self.open_indices():
            left, right = self.context(i)
            conjuncts.append(
                Concat(
                    self.alphabet,
                    (
                        ShuffleIdeal(self.alphabet, left),
                        SingleWord(self.alphabet, self.factors[i]),
                        ShuffleIdeal(self.alphabet, right),
                    ),
                )
            )
        return Intersection(self.alphabet, tuple(conjuncts))


class _Combinator(LangExpr):
    parts: tuple[LangExpr, ...]
    symbol: str
    ascii_symbol: str

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        _check_same_alphabet(self.alphabet, self.parts)

    def render(self, ascii: bool = False) -> str:
        if not self.parts:
            return self.empty_text(ascii)
        sep = f" {self.ascii_symbol if ascii else self.symbol} "
        return "(" + sep.join(p.render(ascii) for p in self.parts) + ")"

    def empty_text(self, ascii: bool) -> str:
        raise NotImplementedError

    def to_json(self) -> dict[str, Any]:
        return {"op": self.op, "args": [p.to_json() for p in self.parts]}


@dataclass(frozen=True, eq=False)
class Union(_Combinator):
    alphabet: Alphabet
    parts: tuple[LangExpr, ...]
    op = "union"
    symbol = "∪"
    ascii_symbol = "|"

    def contains(self, word: Word) -> bool:
        return any(_member(p, word) for p in self.parts)

    def empty_text(self, ascii: bool) -> str:
        return "empty" if ascii else "∅"


@dataclass(frozen=True, eq=False)
class Intersection(_Combinator):
    alphabet: Alphabet
    parts: tuple[LangExpr, ...]
    op = "intersection"
    symbol = "∩"
    ascii_symbol = "&"

    def contains(self, word: Word) -> bool:
        return all(_member(p, word) for p in self.parts)

    def empty_text(self, ascii: bool) -> str:
        return "all" if ascii else "Σ*"


@dataclass(frozen=True, eq=False)
class Concat(_Combinator):
    alphabet: Alphabet
    parts: tuple[LangExpr, ...]
    op = "concat"
    symbol = "·"
    ascii_symbol = "."

    def contains(self, word: Word) -> bool:
        return _split_dp(word, self.parts, _member)

    def empty_text(self, ascii: bool) -> str:
        return "eps" if ascii else "ε"


@dataclass(frozen=True, eq=False)
class Complement(LangExpr):
    inner: LangExpr

    @property
    def alphabet(self) -> Alphabet:
        return self.inner.alphabet

    def contains(self, word: Word) -> bool:
        return not _member(self.inner, word)

    def render(self, ascii: bool = False) -> str:
        return f"{'~' if ascii else '¬'}{self.inner.render(ascii)}"

    def to_json(self) -> dict[str, Any]:
        return {"op": "complement", "of": self.inner.to_json()}


@functools.lru_cache(maxsize=1 << 18)
def _member(expr: LangExpr, word: Word) -> bool:
    return expr.contains(word)


def member(expr: LangExpr, word: Word) -> bool:
    """True iff ``word`` belongs to the language of ``expr``."""
    check_word(word, expr.alphabet)
    return _member(expr, word)


def universal(alphabet: Alphabet) -> LangExpr:
    """Σ* as the shuffle ideal of the empty word."""
    return ShuffleIdeal(alphabet, EMPTY)


def letter_star(alphabet: Alphabet, letters: Iterable[Symbol]) -> Star:
    return Star(Letters(alphabet, frozenset(letters)))


def threshold_normal_form(
    alphabet: Alphabet, factors: Sequence[Word], threshold: int
) -> Union:
    """Union over q in {1, l}^k of the LBlock products."""
    factors = tuple(factors)
    choices = sorted({1, threshold})
    return Union(
        alphabet,
        tuple(
            Concat(
                alphabet,
                tuple(
                    LBlock(alphabet, u, threshold, q)
                    for u, q in zip(factors, qs)
                ),
            )
            for qs in itertools.product(choices, repeat=len(factors))
        ),
    )


def rs_normal_form(
    alphabet: Alphabet, factors: Sequence[Word], threshold: int
) -> Union:
    """Union over alpha in [l]^k of R ∩ S."""
    factors = tuple(factors)
    return Union(
        alphabet,
        tuple(
            Intersection(
                alphabet,
                (
                    RLang(alphabet, alphas, factors, threshold),
                    SLang(alphabet, alphas, factors, threshold),
                ),
            )
            for alphas in itertools.product(
                range(1, threshold + 1), repeat=len(factors)
            )
        ),
    )


def has_distinct_letters(word: Word) -> bool:
    return len(set(word)) == len(word)


_WORD_OPS = {
    "shuffleIdeal": ShuffleIdeal,
    "factor": Factor,
    "prefix": Prefix,
    "suffix": Suffix,
    "word": SingleWord,
}


def expr_to_json(expr: LangExpr) -> dict[str, Any]:
    """Serialize an expression tree; the root carries the alphabet."""
    data = expr.to_json()
    data["alphabet"] = [str(s) for s in expr.alphabet]
    return data


def expr_from_json(data: dict[str, Any], alphabet: Alphabet | None = None) -> LangExpr:
    if alphabet is None:
        alphabet = Alphabet.of(data["alphabet"])
    op = data["op"]

    def sub(node):
        return expr_from_json(node, alphabet)

    if op in _WORD_OPS:
        return _WORD_OPS[op](alphabet, parse_word(data["u"]))
    if op == "letters":
        return Letters(alphabet, frozenset(Symbol.parse(t) for t in data["letters"]))
    if op == "star":
        return Star(sub(data["of"]))
    if op == "complement":
        return Complement(sub(data["of"]))
    if op in ("union", "intersection", "concat"):
        cls = {"union": Union, "intersection": Intersection, "concat": Concat}[op]
        return cls(alphabet, tuple(sub(a) for a in data["args"]))
    if op == "thresholdBlock":
        return ThresholdBlock(
            alphabet, tuple(parse_word(u) for u in data["us"]), int(data["l"])
        )
    if op == "lBlock":
        return LBlock(alphabet, parse_word(data["u"]), int(data["l"]), int(data["alpha"]))
    if op in ("rLang", "sLang"):
        cls = RLang if op == "rLang" else SLang
        return cls(
            alphabet,
            tuple(int(a) for a in data["alphas"]),
            tuple(parse_word(u) for u in data["us"]),
            int(data["l"]),
        )
    if op == "costa":
        from .costa import CostaForm, CostaLang

        return CostaLang(CostaForm.from_json(data, alphabet))
    raise ValueError(f"unknown expression op {op!r}")
