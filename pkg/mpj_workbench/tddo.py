"""Compiling threshold dot-depth one expressions to programs over J-monoids.

Prefix and suffix atoms read a constant number of positions. Shuffle ideals
are read position by position through their syntactic morphism. A threshold
block with distinct-letter factors is split into its R ∩ S normal form, each
building block realized by a decorated sweep into a piecewise testable target.
Blocks whose factors repeat letters are first decorated with positions modulo
the longest factor length. Boolean structure folds through product targets.
"""

from __future__ import annotations

import functools
import itertools
import logging
from collections.abc import Callable, Sequence

from .algebra import SyntacticMonoid, Variety, check_variety, syntactic_monoid
from .automata import compile_dfa
from .config import get_tddo_block_cap
from .costa import CostaLang, costa_K
from .errors import CapExceededError, UnsupportedExpressionError
from .expressions import (
    Complement,
    Intersection,
    LangExpr,
    Prefix,
    ShuffleIdeal,
    Suffix,
    ThresholdBlock,
    Union,
    concat_words,
    has_distinct_letters,
    power,
)
from .programs import (
    Program,
    boolean_combine,
    combine,
    complement,
    components,
    compose_reduction,
    constant_program,
    morphism_program,
    prefix_program,
    suffix_program,
)
from .reductions import (
    DecoratedSweepPlan,
    decorated_sweep,
    modular_decoration,
    residue_alphabet,
    residue_word,
)
from .words import Alphabet, Word

logger = logging.getLogger(__name__)


@functools.lru_cache(maxsize=None)
def _recognizer(expr: LangExpr) -> SyntacticMonoid:
    return syntactic_monoid(compile_dfa(expr))


def _classical(expr: LangExpr, n: int) -> Program:
    """Identity reading through the syntactic morphism of ``expr``."""
    syn = _recognizer(expr)
    return morphism_program(syn.morphism, syn.accept, n)


def _fold(
    programs: Sequence[Program], op: str, empty: Callable[[], Program]
) -> Program:
    return combine(programs, op) if programs else empty()


def building_block_program(plan: DecoratedSweepPlan, n: int) -> Program:
    """Decorated sweep composed with the program of its target.

    The target's Boolean structure folds into a product target with one
    syntactic monoid per shuffle ideal leaf.
    """
    sweep, target = decorated_sweep(plan, n)
    return compose_reduction(sweep, compile_tddo(target, len(sweep)))


def _rs_conjunct(
    alphabet: Alphabet, factors: tuple[Word, ...], threshold: int, alphas: tuple[int, ...], n: int
) -> Program:
    powered = concat_words(power(u, a) for u, a in zip(factors, alphas))
    parts = [_classical(ShuffleIdeal(alphabet, powered), n)]
    for i, (u, a) in enumerate(zip(factors, alphas)):
        if a >= threshold:
            continue
        left = concat_words(power(v, b) for v, b in zip(factors[:i], alphas[:i]))
        right = concat_words(power(v, b) for v, b in zip(factors[i + 1 :], alphas[i + 1 :]))
        plan = DecoratedSweepPlan(alphabet, u, left, right, a)
        parts.append(building_block_program(plan, n))
    return _fold(parts, "and", lambda: constant_program(alphabet, n, True))


def distinct_block_program(block: ThresholdBlock, n: int) -> Program:
    """Union over alpha in [l]^k of the R ∩ S programs."""
    alphabet, factors, threshold = block.alphabet, block.factors, block.threshold
    if _is_shuffle_block(block):
        return _classical(_shuffle_of(block), n)
    programs = [
        _rs_conjunct(alphabet, factors, threshold, alphas, n)
        for alphas in itertools.product(range(1, threshold + 1), repeat=len(factors))
    ]
    return _fold(programs, "or", lambda: constant_program(alphabet, n, False))


def _is_shuffle_block(block: ThresholdBlock) -> bool:
    return block.threshold == 1 or all(len(u) == 1 for u in block.factors)


def _shuffle_of(block: ThresholdBlock) -> ShuffleIdeal:
    return ShuffleIdeal(block.alphabet, concat_words(block.factors))


def decorated_blocks(block: ThresholdBlock, cap: int | None = None) -> list[ThresholdBlock]:
    """Distinct-letter blocks over Σ × Z/dZ covering the q != (l,...,l) terms.

    The term with every factor at the threshold is the shuffle ideal of the
    powered factors and is handled over the plain alphabet.
    """
    alphabet, l = block.alphabet, block.threshold
    d = max(len(u) for u in block.factors)
    decorated = residue_alphabet(alphabet, d)
    cap = cap or get_tddo_block_cap()

    def options(u: Word, q: int) -> list[list[Word]]:
        if q == 1:
            return [[residue_word(u, d, r)] for r in range(d)]
        letters = power(u, l)
        return [
            [(s.decorate(r),) for s, r in zip(letters, residues)]
            for residues in itertools.product(range(d), repeat=len(letters))
        ]

    blocks: dict[ThresholdBlock, None] = {}
    for qs in itertools.product((1, l), repeat=len(block.factors)):
        if all(q == l for q in qs):
            continue
        choices = [options(u, q) for u, q in zip(block.factors, qs)]
        count = 1
        for c in choices:
            count *= len(c)
        if len(blocks) + count > cap:
            raise CapExceededError("decorated blocks", cap, block.render(ascii=True))
        for pick in itertools.product(*choices):
            factors = tuple(f for group in pick for f in group)
            blocks[ThresholdBlock(decorated, factors, l)] = None
    return list(blocks)


def _modular_block_program(block: ThresholdBlock, n: int) -> Program:
    alphabet, l = block.alphabet, block.threshold
    d = max(len(u) for u in block.factors)
    inner = [distinct_block_program(b, n) for b in decorated_blocks(block)]
    decorated = residue_alphabet(alphabet, d)
    reduction = modular_decoration(d, n, alphabet)
    lifted = compose_reduction(
        reduction, _fold(inner, "or", lambda: constant_program(decorated, n, False))
    )
    saturated = _classical(
        ShuffleIdeal(alphabet, concat_words(power(u, l) for u in block.factors)), n
    )
    logger.debug(
        f"{block.render(ascii=True)}: {len(inner)} decorated blocks modulo {d}"
    )
    return boolean_combine(lifted, saturated, "or")


def block_program(block: ThresholdBlock, n: int) -> Program:
    if _is_shuffle_block(block):
        return _classical(_shuffle_of(block), n)
    if all(has_distinct_letters(u) for u in block.factors):
        return distinct_block_program(block, n)
    return _modular_block_program(block, n)


def compile_tddo(expr: LangExpr, n: int) -> Program:
    """Program over a product of J-monoids recognizing the length-n slice of ``expr``."""
    alphabet = expr.alphabet
    if isinstance(expr, Prefix):
        return prefix_program(alphabet, expr.word, n)
    if isinstance(expr, Suffix):
        return suffix_program(alphabet, expr.word, n)
    if isinstance(expr, ShuffleIdeal):
        return _classical(expr, n)
    if isinstance(expr, ThresholdBlock):
        return block_program(expr, n)
    if isinstance(expr, Complement):
        return complement(compile_tddo(expr.inner, n))
    if isinstance(expr, Intersection):
        return _fold(
            [compile_tddo(p, n) for p in expr.parts],
            "and",
            lambda: constant_program(alphabet, n, True),
        )
    if isinstance(expr, Union):
        return _fold(
            [compile_tddo(p, n) for p in expr.parts],
            "or",
            lambda: constant_program(alphabet, n, False),
        )
    if isinstance(expr, CostaLang):
        return compile_tddo(costa_K(expr.form), n)
    raise UnsupportedExpressionError(
        f"{type(expr).__name__} {expr.render(ascii=True)} is not a threshold "
        f"dot-depth one combinator"
    )


def target_in_variety(program: Program, variety: Variety | str = Variety.J) -> bool:
    """Componentwise variety check of a (product) target."""
    return all(check_variety(c, variety) for c in components(program.target))
