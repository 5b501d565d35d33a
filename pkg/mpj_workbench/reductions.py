"""Program reductions: feedback sweeps, selector programs, modular decoration.

Each generator returns a :class:`GammaProgram` on inputs of a fixed length
together with (or alongside a function building) the target language it
reduces to. Mutated variants break one step of a construction on purpose so
the verification harness can show it notices.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import RepeatedLetterError, ShapeMismatchError
from .expressions import (
    Complement,
    Concat,
    Intersection,
    LangExpr,
    Letters,
    ShuffleIdeal,
    SingleWord,
    Star,
    Union,
    concat_words,
    has_distinct_letters,
    letter_star,
    power,
)
from .programs import GammaProgram, Instruction
from .words import Alphabet, Symbol, Word, check_word, decorate_word, word_of

logger = logging.getLogger(__name__)

SWEEP_ALPHABET = Alphabet.of("abc")
BINARY = Alphabet.of("01")


# Feedback sweep over {a, b, c}


def _sweep_positions(n: int) -> list[int]:
    if n <= 1:
        return []
    return [p for i in range(2, n + 1) for p in (i, i - 1)]


def feedback_sweep(n: int, alphabet: Alphabet = SWEEP_ALPHABET) -> GammaProgram:
    """Identity outputs at positions 2,1,3,2,...,n,n-1 (empty for n <= 1)."""
    return GammaProgram.identity_reading(alphabet, _sweep_positions(n), n)


def mutated_feedback_sweep(n: int, alphabet: Alphabet = SWEEP_ALPHABET) -> GammaProgram:
    """Feedback sweep with the last two reads swapped."""
    positions = _sweep_positions(n)
    if len(positions) >= 2:
        positions[-2], positions[-1] = positions[-1], positions[-2]
    return GammaProgram.identity_reading(alphabet, positions, n)


def sweep_source_language(alphabet: Alphabet = SWEEP_ALPHABET) -> LangExpr:
    """(a+b)*ac+."""
    a, b, c = (Symbol(x) for x in "abc")
    return Concat(
        alphabet,
        (
            letter_star(alphabet, (a, b)),
            SingleWord(alphabet, (a, c)),
            letter_star(alphabet, (c,)),
        ),
    )


def sweep_target_language(alphabet: Alphabet = SWEEP_ALPHABET) -> LangExpr:
    """Words with ``ca`` as a subword but none of ``cca``, ``caa``, ``cb``."""
    return Intersection(
        alphabet,
        (ShuffleIdeal(alphabet, word_of("ca")),)
        + tuple(
            Complement(ShuffleIdeal(alphabet, word_of(u))) for u in ("cca", "caa", "cb")
        ),
    )


# Decorated sweep


@dataclass(frozen=True)
class DecoratedSweepPlan:
    """Target ``(x1 u^alpha x2)⧢Σ* ∩ ((x1 u^(alpha+1) x2)⧢Σ*)^c ∩ (x1⧢Σ*)u(x2⧢Σ*)``."""

    alphabet: Alphabet
    u: Word
    x1: Word = ()
    x2: Word = ()
    alpha: int = 1
    width: int = field(init=False)

    def __post_init__(self):
        for w in (self.u, self.x1, self.x2):
            check_word(w, self.alphabet)
        if not self.u:
            raise ValueError("u must be nonempty")
        if not has_distinct_letters(self.u):
            raise RepeatedLetterError(
                f"u = {''.join(s.base for s in self.u)} repeats a letter"
            )
        if self.alpha < 1:
            raise ValueError(f"alpha must be >= 1, got {self.alpha}")
        object.__setattr__(self, "width", 2 * len(self.u) - 1)

    @cached_property
    def decorated_alphabet(self) -> Alphabet:
        return self.alphabet.decorated(self.width)

    def plain(self, word: Word) -> Word:
        return decorate_word(word, 0)

    @cached_property
    def sweep_marker(self) -> Word:
        """The decorated backward then forward sweep over u."""
        u, m = self.u, len(self.u)
        backward = [u[m - j - 1].decorate(j) for j in range(1, m)]
        forward = [u[j - 1].decorate(m + j - 2) for j in range(2, m + 1)]
        return tuple(backward + forward)

    def zeta(self, beta: int) -> Word:
        u = self.plain(self.u)
        return concat_words(
            (
                self.plain(self.x1),
                power(u, beta),
                self.sweep_marker,
                power(u, self.alpha - beta),
                self.plain(self.x2),
            )
        )

    @cached_property
    def forbidden(self) -> Word:
        return self.plain(self.x1 + power(self.u, self.alpha + 1) + self.x2)

    def target_language(self) -> LangExpr:
        a = self.decorated_alphabet
        return Intersection(
            a,
            (
                Union(
                    a,
                    tuple(
                        ShuffleIdeal(a, self.zeta(beta))
                        for beta in range(1, self.alpha + 1)
                    ),
                ),
                Complement(ShuffleIdeal(a, self.forbidden)),
            ),
        )

    def length(self, n: int) -> int:
        m = len(self.u)
        return 0 if n < m else m - 1 + (n - m + 1) * self.width


def building_block_language(plan: DecoratedSweepPlan) -> LangExpr:
    """The language the decorated sweep reduces from, over the plain alphabet."""
    s = plan.alphabet
    return Intersection(
        s,
        (
            ShuffleIdeal(s, plan.x1 + power(plan.u, plan.alpha) + plan.x2),
            Complement(ShuffleIdeal(s, plan.x1 + power(plan.u, plan.alpha + 1) + plan.x2)),
            Concat(
                s,
                (
                    ShuffleIdeal(s, plan.x1),
                    SingleWord(s, plan.u),
                    ShuffleIdeal(s, plan.x2),
                ),
            ),
        ),
    )


def _tagging(alphabet: Alphabet, tag: int) -> tuple[Symbol, ...]:
    return tuple(s.decorate(tag) for s in alphabet)


def _phi(plan: DecoratedSweepPlan, i: int) -> list[Instruction]:
    m = len(plan.u)
    s = plan.alphabet
    block = [Instruction(i, _tagging(s, 0))]
    block += [Instruction(i - j, _tagging(s, j)) for j in range(1, m)]
    block += [Instruction(i - m + j, _tagging(s, m + j - 2)) for j in range(2, m + 1)]
    return block


def _decorated_instructions(
    plan: DecoratedSweepPlan, n: int, truncate: bool
) -> list[Instruction]:
    m = len(plan.u)
    if n < m:
        return []
    head = [Instruction(i, _tagging(plan.alphabet, 0)) for i in range(1, m)]
    body = []
    for i in range(m, n + 1):
        block = _phi(plan, i)
        body += block[:-1] if truncate else block
    return head + body


def decorated_sweep(plan: DecoratedSweepPlan, n: int) -> tuple[GammaProgram, LangExpr]:
    """Decorated feedback sweep on inputs of length n and its target language."""
    program = GammaProgram(
        plan.alphabet,
        n,
        plan.decorated_alphabet,
        tuple(_decorated_instructions(plan, n, truncate=False)),
    )
    return program, plan.target_language()


def mutated_decorated_sweep(
    plan: DecoratedSweepPlan, n: int
) -> tuple[GammaProgram, LangExpr]:
    """Decorated sweep whose blocks lose their top-decorated read."""
    if len(plan.u) < 2:
        raise ValueError("the truncated sweep needs |u| >= 2")
    program = GammaProgram(
        plan.alphabet,
        n,
        plan.decorated_alphabet,
        tuple(_decorated_instructions(plan, n, truncate=True)),
    )
    return program, plan.target_language()


# Selector languages and programs


def y_alphabet(k: int) -> Alphabet:
    """{e, #} plus an opening and a closing marker per level 1..k."""
    markers = [
        Symbol(name, (level,)) for level in range(k) for name in ("top", "bot")
    ]
    return Alphabet((Symbol("e"), Symbol("#"), *markers))


def top(level: int) -> Symbol:
    return Symbol("top", (level - 1,))


def bot(level: int) -> Symbol:
    return Symbol("bot", (level - 1,))


def _y_letters(level: int) -> list[Symbol]:
    return [Symbol("e"), Symbol("#")] + [
        m for i in range(1, level + 1) for m in (top(i), bot(i))
    ]


def _z(alphabet: Alphabet, k: int) -> LangExpr:
    if k == 0:
        any_y0 = Star(Letters(alphabet, frozenset(_y_letters(0))))
        return Concat(alphabet, (any_y0, SingleWord(alphabet, (Symbol("#"),)), any_y0))
    outer = Star(Letters(alphabet, frozenset(_y_letters(k - 1))))
    return Concat(
        alphabet,
        (
            outer,
            SingleWord(alphabet, (top(k),)),
            _z(alphabet, k - 1),
            SingleWord(alphabet, (bot(k),)),
            outer,
        ),
    )


def zk_language(k: int) -> LangExpr:
    """Z_0 = Y0* # Y0*, Z_k = Y(k-1)* top_k Z_(k-1) bot_k Y(k-1)* over Y_k."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return _z(y_alphabet(k), k)


@dataclass(frozen=True)
class SelectorFn:
    """A k-selector over n: a subset of [n] for every vector in [n]^k."""

    k: int
    n: int
    table: Mapping[tuple[int, ...], frozenset[int]]

    def __post_init__(self):
        table = {tuple(rho): frozenset(js) for rho, js in self.table.items()}
        expected = set(itertools.product(range(1, self.n + 1), repeat=self.k))
        if set(table) != expected:
            raise ShapeMismatchError(
                f"selector table must be total on [{self.n}]^{self.k}"
            )
        for js in table.values():
            if not js <= set(range(1, self.n + 1)):
                raise ShapeMismatchError(f"selected positions must lie in [1, {self.n}]")
        object.__setattr__(self, "table", table)

    def __call__(self, rho: tuple[int, ...]) -> frozenset[int]:
        return self.table[tuple(rho)]

    def restrict(self, j: int) -> SelectorFn:
        """The (k-1)-selector rho' -> sigma((j, *rho'))."""
        if self.k == 0:
            raise ValueError("cannot restrict a 0-selector")
        return SelectorFn(
            self.k - 1,
            self.n,
            {rho[1:]: js for rho, js in self.table.items() if rho[0] == j},
        )

    @classmethod
    def constant(cls, k: int, n: int, selected: frozenset[int]) -> SelectorFn:
        return cls(
            k,
            n,
            {rho: frozenset(selected) for rho in itertools.product(range(1, n + 1), repeat=k)},
        )

    @classmethod
    def random(cls, k: int, n: int, rng: np.random.Generator) -> SelectorFn:
        """Each position selected independently with probability 1/2."""
        table = {}
        for rho in itertools.product(range(1, n + 1), repeat=k):
            picks = rng.integers(0, 2, n)
            table[rho] = frozenset(j + 1 for j in range(n) if picks[j])
        return cls(k, n, table)

    def input_length(self) -> int:
        return (self.k + 1) * self.n


def _h(sigma: SelectorFn, j: int) -> tuple[Symbol, Symbol]:
    return (Symbol("e"), Symbol("#") if j in sigma(()) else Symbol("e"))


def _selector_instructions(
    sigma: SelectorFn, d: int, shift: Callable[[int], int]
) -> list[Instruction]:
    n = sigma.n
    if sigma.k == 0:
        return [Instruction(d * n + shift(j), _h(sigma, j)) for j in range(1, n + 1)]
    k = sigma.k
    f = (Symbol("e"), top(k))
    g = (Symbol("e"), bot(k))
    out: list[Instruction] = []
    for i in range(1, n + 1):
        out.append(Instruction(d * n + i, f))
        out += _selector_instructions(sigma.restrict(i), d + 1, shift)
        out.append(Instruction(d * n + i, g))
    return out


def selector_program(sigma: SelectorFn) -> GammaProgram:
    """Y_k-program on {0,1}^((k+1)n) reducing K_(n,sigma) to Z_k."""
    instructions = (
        _selector_instructions(sigma, 0, lambda j: j) if sigma.n else []
    )
    return GammaProgram(BINARY, sigma.input_length(), y_alphabet(sigma.k), tuple(instructions))


def mutated_selector_program(sigma: SelectorFn) -> GammaProgram:
    """Selector program whose innermost block reads every position shifted by one."""
    n = sigma.n
    instructions = (
        _selector_instructions(sigma, 0, lambda j: j % n + 1) if n else []
    )
    return GammaProgram(BINARY, sigma.input_length(), y_alphabet(sigma.k), tuple(instructions))


def selector_member(sigma: SelectorFn, word: Word) -> bool:
    """Direct membership in K_(n,sigma) by decoding the k + 1 blocks."""
    n, k = sigma.n, sigma.k
    if len(word) != sigma.input_length():
        return False
    check_word(word, BINARY)
    if n == 0:
        return False
    bits = [s.base == "1" for s in word]
    blocks = [bits[i * n : (i + 1) * n] for i in range(k + 1)]
    rho = []
    for block in blocks[:k]:
        if sum(block) != 1:
            return False
        rho.append(block.index(True) + 1)
    v = blocks[k]
    return any(v[j - 1] for j in sigma(tuple(rho)))


def selector_length_bound(k: int, n: int) -> int:
    return 2 * (k + 1) * n ** (k + 1)


# Modular decoration


def residue_alphabet(alphabet: Alphabet, d: int) -> Alphabet:
    """Σ × Z/dZ."""
    return alphabet.decorated(d)


def modular_decoration(d: int, n: int, alphabet: Alphabet) -> GammaProgram:
    """Reads each position once and tags the letter with (position - 1) mod d."""
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    return GammaProgram(
        alphabet,
        n,
        residue_alphabet(alphabet, d),
        tuple(Instruction(j, _tagging(alphabet, (j - 1) % d)) for j in range(1, n + 1)),
    )


def residue_word(word: Word, d: int, offset: int = 0) -> Word:
    """Tags letter j (1-based) with (j + offset - 1) mod d."""
    return tuple(s.decorate((j + offset) % d) for j, s in enumerate(word))
