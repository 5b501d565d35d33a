"""Costa normal forms and their threshold dot-depth one description.

A form ``u0 A1* X1 A2* ... X(n-1) An* un`` with repetition parameter r. Each
bridge X_i is the word u_i when it is nonempty, and otherwise
``(A_i \\ A_i+1)(A_i ∩ A_i+1)^{>=r}(A_i+1 \\ A_i)``.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Any

from .errors import CostaFormError
from .expressions import (
    Complement,
    Concat,
    Intersection,
    LangExpr,
    Letters,
    Prefix,
    SingleWord,
    Star,
    Suffix,
    ThresholdBlock,
    Union,
    universal,
)
from .words import Alphabet, Symbol, Word, format_word, parse_word


@dataclass(frozen=True)
class CostaForm:
    alphabet: Alphabet
    r: int
    u_words: tuple[Word, ...]
    a_sets: tuple[frozenset[Symbol], ...]

    def __post_init__(self):
        object.__setattr__(self, "u_words", tuple(tuple(u) for u in self.u_words))
        object.__setattr__(self, "a_sets", tuple(frozenset(a) for a in self.a_sets))
        if self.r < 0:
            raise CostaFormError(f"r must be non-negative, got {self.r}")
        if len(self.u_words) != len(self.a_sets) + 1:
            raise CostaFormError("a form with n letter sets needs n + 1 words")
        for u in self.u_words:
            for letter in u:
                if letter not in self.alphabet:
                    raise CostaFormError(f"letter {letter} not in {self.alphabet}")
        for i, letters in enumerate(self.a_sets, start=1):
            if not letters:
                raise CostaFormError(f"A_{i} is empty")
            if not letters <= set(self.alphabet):
                raise CostaFormError(f"A_{i} is not a subset of {self.alphabet}")
        for i in range(1, self.n):
            u, left, right = self.u(i), self.a(i), self.a(i + 1)
            if u:
                if set(u) <= left or set(u) <= right:
                    raise CostaFormError(
                        f"alph(u_{i}) must escape both A_{i} and A_{i + 1}"
                    )
            elif left <= right or right <= left:
                raise CostaFormError(
                    f"A_{i} and A_{i + 1} must be incomparable when u_{i} is empty"
                )

    @property
    def n(self) -> int:
        return len(self.a_sets)

    def u(self, i: int) -> Word:
        return self.u_words[i]

    def a(self, i: int) -> frozenset[Symbol]:
        """Letter set A_i, 1-based."""
        return self.a_sets[i - 1]

    def ordered(self, letters: Iterable[Symbol]) -> list[Symbol]:
        letters = set(letters)
        return [s for s in self.alphabet if s in letters]

    @classmethod
    def build(
        cls,
        alphabet: Alphabet,
        r: int,
        u_words: Sequence[str],
        a_sets: Sequence[str],
    ) -> CostaForm:
        """Build from plain strings, e.g. ``build(ab, 0, ["a", "a"], ["b"])``."""
        return cls(
            alphabet,
            r,
            tuple(parse_word(u) for u in u_words),
            tuple(frozenset(parse_word(a)) for a in a_sets),
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "op": "costa",
            "r": self.r,
            "us": [format_word(u) for u in self.u_words],
            "as": [[str(s) for s in self.ordered(a)] for a in self.a_sets],
        }

    @classmethod
    def from_json(cls, data: dict[str, Any], alphabet: Alphabet) -> CostaForm:
        return cls(
            alphabet,
            int(data["r"]),
            tuple(parse_word(u) for u in data["us"]),
            tuple(frozenset(Symbol.parse(t) for t in a) for a in data["as"]),
        )


def _bridge(form: CostaForm, i: int) -> LangExpr:
    alphabet = form.alphabet
    if form.u(i):
        return SingleWord(alphabet, form.u(i))
    left, right = form.a(i), form.a(i + 1)
    shared = Letters(alphabet, left & right)
    return Concat(
        alphabet,
        (Letters(alphabet, left - right),)
        + (shared,) * form.r
        + (Star(shared), Letters(alphabet, right - left)),
    )


def costa_lang(form: CostaForm) -> LangExpr:
    """The concatenation the form describes."""
    alphabet = form.alphabet
    parts: list[LangExpr] = [SingleWord(alphabet, form.u(0))]
    for i in range(1, form.n + 1):
        parts.append(Star(Letters(alphabet, form.a(i))))
        if i < form.n:
            parts.append(_bridge(form, i))
    if form.n:
        parts.append(SingleWord(alphabet, form.u(form.n)))
    if len(parts) == 1:
        return parts[0]
    return Concat(alphabet, tuple(parts))


def _block(alphabet: Alphabet, factors: Iterable[Word]) -> LangExpr:
    factors = tuple(u for u in factors if u)
    if not factors:
        return universal(alphabet)
    return ThresholdBlock(alphabet, factors, 2)


def _letters_of(word: Word) -> list[Word]:
    return [(s,) for s in word]


def _bridge_words(form: CostaForm, i: int) -> list[Word]:
    """Candidates for the bridge at i: u_i itself, or a boundary letter pair."""
    if form.u(i):
        return [form.u(i)]
    left, right = form.a(i), form.a(i + 1)
    return [
        (b, c)
        for b in form.ordered(left - right)
        for c in form.ordered(right - left)
    ]


def costa_K(form: CostaForm) -> LangExpr:
    """Boolean combination of 2-threshold blocks with the language of ``form``."""
    alphabet = form.alphabet
    n = form.n
    first, last = form.u(0), form.u(n)
    letters = list(alphabet)

    if n == 0:
        return Intersection(
            alphabet,
            (Prefix(alphabet, first),)
            + tuple(
                Complement(_block(alphabet, [first, (c,)])) for c in letters
            ),
        )

    conjuncts: list[LangExpr] = [Prefix(alphabet, first), Suffix(alphabet, last)]
    if n == 1:
        # the anchors must not overlap; without this "a" would match a b* a
        conjuncts.append(_block(alphabet, [first, last]))
        conjuncts.extend(
            Complement(_block(alphabet, [first, (c,), last]))
            for c in letters
            if c not in form.a(1)
        )
        return Intersection(alphabet, tuple(dict.fromkeys(conjuncts)))

    bridges = [_bridge_words(form, i) for i in range(1, n)]
    choices = list(itertools.product(*bridges))

    def tilde(i: int, v: Word) -> list[Word]:
        return [v] if form.u(i) else _letters_of(v)

    def bars(vs: Sequence[Word]) -> list[Word]:
        return [x for v in vs for x in _letters_of(v)]

    conjuncts.append(
        Union(
            alphabet,
            tuple(
                dict.fromkeys(
                    _block(
                        alphabet,
                        [first]
                        + [x for i, v in enumerate(vs, start=1) for x in tilde(i, v)]
                        + [last],
                    )
                    for vs in choices
                )
            ),
        )
    )

    for vs in choices:
        for i in range(1, n + 1):
            for c in letters:
                if c in form.a(i):
                    continue
                factors = [first] + bars(vs[: i - 1]) + [(c,)] + bars(vs[i - 1 :]) + [last]
                conjuncts.append(Complement(_block(alphabet, factors)))

    for i in range(1, n):
        if form.u(i):
            continue
        left, right = form.a(i), form.a(i + 1)
        shared = form.ordered(left & right)
        outside = [c for c in letters if c not in left | right]
        short = [
            w for size in range(form.r) for w in itertools.product(shared, repeat=size)
        ]
        for vs in choices:
            b_left, b_right = vs[i - 1]
            before, after = bars(vs[: i - 1]), bars(vs[i:])
            for c in outside:
                factors = [first, *before, (b_left,), (c,), (b_right,), *after, last]
                conjuncts.append(Complement(_block(alphabet, factors)))
            for w in short:
                factors = [first, *before, (b_left, *w, b_right), *after, last]
                conjuncts.append(Complement(_block(alphabet, factors)))

    return Intersection(alphabet, tuple(dict.fromkeys(conjuncts)))


@dataclass(frozen=True, eq=False)
class CostaLang(LangExpr):
    """Expression node standing for the language of a Costa form."""

    form: CostaForm

    @property
    def alphabet(self) -> Alphabet:
        return self.form.alphabet

    def expand(self) -> LangExpr:
        return costa_lang(self.form)

    def contains(self, word: Word) -> bool:
        return self.expand().contains(word)

    def render(self, ascii: bool = False) -> str:
        return self.expand().render(ascii)

    def to_json(self) -> dict[str, Any]:
        return self.form.to_json()


