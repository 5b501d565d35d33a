"""Programs over finite monoids and Γ-programs.

A program on inputs of length n is a sequence of instructions (p, f): read
position p (1-based) and emit f(letter). A monoid program multiplies its
outputs and accepts through a condition on the product; a Γ-program
concatenates them into a word over Γ.

Boolean combinations keep their target as an unflattened product of component
monoids; elements of a product are tuples and acceptance is a condition tree
over slices of those tuples.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Literal

import numpy as np

from .algebra import FiniteMonoid, GeneratedMorphism, syntactic_monoid
from .automata import compile_dfa
from .errors import LengthMismatchError, ShapeMismatchError
from .expressions import SingleWord
from .words import Alphabet, Symbol, Word, check_word

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProductMonoid:
    """Direct product kept as its list of components."""

    components: tuple[FiniteMonoid, ...]

    @property
    def identity(self) -> tuple[int, ...]:
        return tuple(c.identity for c in self.components)

    def multiply(self, x: tuple[int, ...], y: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(c.rows[a][b] for c, a, b in zip(self.components, x, y))

    @property
    def size(self) -> int:
        return int(np.prod([c.size for c in self.components], dtype=object))


Target = FiniteMonoid | ProductMonoid


def components(target: Target) -> tuple[FiniteMonoid, ...]:
    if isinstance(target, ProductMonoid):
        return target.components
    return (target,)


def _as_tuple(target: Target, element) -> tuple[int, ...]:
    return element if isinstance(target, ProductMonoid) else (element,)


# Acceptance conditions


@dataclass(frozen=True)
class InSet:
    elements: frozenset

    def __post_init__(self):
        object.__setattr__(self, "elements", frozenset(self.elements))

    def __call__(self, element) -> bool:
        return element in self.elements


@dataclass(frozen=True)
class Slice:
    """Applies ``inner`` to the components ``[start, stop)`` of a tuple.

    ``flat`` unwraps a single component for conditions written against a
    plain monoid.
    """

    start: int
    stop: int
    inner: Acceptance
    flat: bool

    def __call__(self, element) -> bool:
        if self.flat:
            return self.inner(element[self.start])
        return self.inner(element[self.start : self.stop])


@dataclass(frozen=True)
class AllOf:
    parts: tuple[Acceptance, ...]

    def __call__(self, element) -> bool:
        return all(p(element) for p in self.parts)


@dataclass(frozen=True)
class AnyOf:
    parts: tuple[Acceptance, ...]

    def __call__(self, element) -> bool:
        return any(p(element) for p in self.parts)


@dataclass(frozen=True)
class Negated:
    inner: Acceptance

    def __call__(self, element) -> bool:
        return not self.inner(element)


Acceptance = InSet | Slice | AllOf | AnyOf | Negated


@dataclass(frozen=True)
class Instruction:
    """Read ``position`` (1-based); ``outputs[i]`` is emitted for letter i."""

    position: int
    outputs: tuple[Any, ...]

    def output(self, alphabet: Alphabet, symbol: Symbol):
        return self.outputs[alphabet.index(symbol)]


def _check_instructions(
    alphabet: Alphabet, n: int, instructions: Sequence[Instruction]
) -> None:
    for instruction in instructions:
        if not 1 <= instruction.position <= n:
            raise ShapeMismatchError(
                f"instruction reads position {instruction.position} outside [1, {n}]"
            )
        if len(instruction.outputs) != len(alphabet):
            raise ShapeMismatchError("instruction output map is not total")


def _input_indices(alphabet: Alphabet, n: int, word: Word) -> tuple[int, ...]:
    if len(word) != n:
        raise LengthMismatchError(f"expected a word of length {n}, got {len(word)}")
    check_word(word, alphabet)
    return alphabet.indices(word)


@dataclass(frozen=True)
class Program:
    input_alphabet: Alphabet
    n: int
    target: Target
    instructions: tuple[Instruction, ...]
    accept: Acceptance

    def __post_init__(self):
        object.__setattr__(self, "instructions", tuple(self.instructions))
        if self.n < 0:
            raise ShapeMismatchError("input length must be non-negative")
        _check_instructions(self.input_alphabet, self.n, self.instructions)

    def __len__(self) -> int:
        return len(self.instructions)

    @property
    def flat(self) -> bool:
        return not isinstance(self.target, ProductMonoid)

    @cached_property
    def _component_steps(self) -> list[list[tuple[int, tuple[int, ...]]]]:
        """Per component, the instructions that do not emit only its identity."""
        steps = []
        for c, monoid in enumerate(components(self.target)):
            own = []
            for instruction in self.instructions:
                outs = tuple(
                    _as_tuple(self.target, o)[c] for o in instruction.outputs
                )
                if any(o != monoid.identity for o in outs):
                    own.append((instruction.position - 1, outs))
            steps.append(own)
        return steps

    def evaluate_indices(self, indices: Sequence[int]):
        values = []
        for monoid, steps in zip(components(self.target), self._component_steps):
            rows = monoid.rows
            x = monoid.identity
            for position, outs in steps:
                x = rows[x][outs[indices[position]]]
            values.append(x)
        return values[0] if self.flat else tuple(values)

    def trace_indices(self, indices: Sequence[int]) -> list:
        return [ins.outputs[indices[ins.position - 1]] for ins in self.instructions]

    def subprogram(self, indices: Iterable[int]) -> Program:
        """P[I]: the instructions at the given 0-based indices, in order."""
        return Program(
            self.input_alphabet,
            self.n,
            self.target,
            tuple(self.instructions[i] for i in sorted(set(indices))),
            self.accept,
        )

    def then(self, other: Program) -> Program:
        """Concatenation of two programs over the same target."""
        if other.target != self.target or other.n != self.n:
            raise ShapeMismatchError("programs differ in target or input length")
        return Program(
            self.input_alphabet,
            self.n,
            self.target,
            self.instructions + other.instructions,
            self.accept,
        )


def evaluate(program: Program, word: Word):
    """Ordered product of the instruction outputs (identity when empty)."""
    return program.evaluate_indices(_input_indices(program.input_alphabet, program.n, word))


def eval_trace(program: Program, word: Word) -> list:
    """Sequence of instruction outputs on ``word``."""
    return program.trace_indices(_input_indices(program.input_alphabet, program.n, word))


def recognizes(program: Program, word: Word) -> bool:
    return program.accept(evaluate(program, word))


@dataclass(frozen=True)
class GammaProgram:
    """Instruction sequence emitting letters of ``output_alphabet``."""

    input_alphabet: Alphabet
    n: int
    output_alphabet: Alphabet
    instructions: tuple[Instruction, ...]

    def __post_init__(self):
        object.__setattr__(self, "instructions", tuple(self.instructions))
        _check_instructions(self.input_alphabet, self.n, self.instructions)
        for instruction in self.instructions:
            check_word(tuple(instruction.outputs), self.output_alphabet)

    def __len__(self) -> int:
        return len(self.instructions)

    @property
    def positions(self) -> list[int]:
        return [ins.position for ins in self.instructions]

    @cached_property
    def index_steps(self) -> list[tuple[int, tuple[int, ...]]]:
        """(0-based position, output indices) per instruction."""
        return [
            (
                ins.position - 1,
                tuple(self.output_alphabet.index(o) for o in ins.outputs),
            )
            for ins in self.instructions
        ]

    def map_indices(self, indices: Sequence[int]) -> list[int]:
        return [outs[indices[p]] for p, outs in self.index_steps]

    @classmethod
    def identity_reading(
        cls, alphabet: Alphabet, positions: Sequence[int], n: int
    ) -> GammaProgram:
        """Reads the given positions and copies the letters."""
        letters = tuple(alphabet.symbols)
        return cls(
            alphabet, n, alphabet, tuple(Instruction(p, letters) for p in positions)
        )


def gamma_eval(program: GammaProgram, word: Word) -> Word:
    indices = _input_indices(program.input_alphabet, program.n, word)
    return tuple(ins.outputs[indices[ins.position - 1]] for ins in program.instructions)


def compose_reduction(reduction: GammaProgram, program: Program) -> Program:
    """Program on the reduction's inputs recognizing the preimage of ``program``.

    Each instruction (p, f) of ``program`` becomes one instruction reading the
    position the reduction's p-th instruction reads, through both maps.
    """
    if program.n != len(reduction):
        raise ShapeMismatchError(
            f"program reads words of length {program.n}, reduction emits {len(reduction)}"
        )
    if program.input_alphabet != reduction.output_alphabet:
        raise ShapeMismatchError("program input alphabet differs from reduction output")
    gamma = program.input_alphabet
    composite = []
    for instruction in program.instructions:
        inner = reduction.instructions[instruction.position - 1]
        composite.append(
            Instruction(
                inner.position,
                tuple(instruction.outputs[gamma.index(o)] for o in inner.outputs),
            )
        )
    return Program(
        reduction.input_alphabet, reduction.n, program.target, tuple(composite), program.accept
    )


BooleanOp = Literal["and", "or", "andnot"]


def _embed(target: Target, element, before: tuple[int, ...], after: tuple[int, ...]):
    return before + _as_tuple(target, element) + after


def boolean_combine(first: Program, second: Program, op: BooleanOp) -> Program:
    """Program over the product of both targets for and / or / and-not."""
    if first.input_alphabet != second.input_alphabet or first.n != second.n:
        raise ShapeMismatchError("programs differ in input alphabet or length")
    left, right = components(first.target), components(second.target)
    left_ids = tuple(c.identity for c in left)
    right_ids = tuple(c.identity for c in right)
    instructions = [
        Instruction(
            ins.position,
            tuple(_embed(first.target, o, (), right_ids) for o in ins.outputs),
        )
        for ins in first.instructions
    ] + [
        Instruction(
            ins.position,
            tuple(_embed(second.target, o, left_ids, ()) for o in ins.outputs),
        )
        for ins in second.instructions
    ]
    a = Slice(0, len(left), first.accept, first.flat)
    b = Slice(len(left), len(left) + len(right), second.accept, second.flat)
    if op == "and":
        accept = AllOf((a, b))
    elif op == "or":
        accept = AnyOf((a, b))
    elif op == "andnot":
        accept = AllOf((a, Negated(b)))
    else:
        raise ValueError(f"unknown boolean op {op!r}")
    return Program(
        first.input_alphabet,
        first.n,
        ProductMonoid(left + right),
        tuple(instructions),
        accept,
    )


def combine(programs: Sequence[Program], op: Literal["and", "or"]) -> Program:
    """n-ary conjunction or disjunction over the product of all targets."""
    if not programs:
        raise ValueError("combine needs at least one program")
    if len(programs) == 1:
        return programs[0]
    first = programs[0]
    for other in programs[1:]:
        if other.input_alphabet != first.input_alphabet or other.n != first.n:
            raise ShapeMismatchError("programs differ in input alphabet or length")
    parts = [components(p.target) for p in programs]
    identities = [tuple(c.identity for c in part) for part in parts]
    instructions: list[Instruction] = []
    slices: list[Slice] = []
    start = 0
    for i, program in enumerate(programs):
        before = tuple(x for ids in identities[:i] for x in ids)
        after = tuple(x for ids in identities[i + 1 :] for x in ids)
        instructions += [
            Instruction(
                ins.position,
                tuple(_embed(program.target, o, before, after) for o in ins.outputs),
            )
            for ins in program.instructions
        ]
        stop = start + len(parts[i])
        slices.append(Slice(start, stop, program.accept, program.flat))
        start = stop
    accept = AllOf(tuple(slices)) if op == "and" else AnyOf(tuple(slices))
    return Program(
        first.input_alphabet,
        first.n,
        ProductMonoid(tuple(c for part in parts for c in part)),
        tuple(instructions),
        accept,
    )


def complement(program: Program) -> Program:
    """Same instructions, flipped acceptance."""
    if program.flat and isinstance(program.accept, InSet):
        accept = InSet(frozenset(program.target.elements) - program.accept.elements)
    else:
        accept = Negated(program.accept)
    return Program(
        program.input_alphabet, program.n, program.target, program.instructions, accept
    )


def constant_program(alphabet: Alphabet, n: int, accept: bool) -> Program:
    """Empty program over the trivial monoid accepting everything or nothing."""
    return Program(
        alphabet, n, FiniteMonoid.trivial(), (), InSet({0} if accept else set())
    )


def morphism_program(
    morphism: GeneratedMorphism, accept: Iterable[int], n: int
) -> Program:
    """Reads positions 1..n through the morphism's letter map."""
    return Program(
        morphism.alphabet,
        n,
        morphism.target,
        tuple(Instruction(i, morphism.images) for i in range(1, n + 1)),
        InSet(frozenset(accept)),
    )


def _word_program(alphabet: Alphabet, word: Word, positions: range, n: int) -> Program:
    monoid, morphism, accept = syntactic_monoid(compile_dfa(SingleWord(alphabet, word)))
    if n < len(word):
        return Program(alphabet, n, monoid, (), InSet(frozenset()))
    return Program(
        alphabet,
        n,
        monoid,
        tuple(Instruction(p, morphism.images) for p in positions),
        InSet(accept),
    )


def prefix_program(alphabet: Alphabet, word: Word, n: int) -> Program:
    """Recognizes the words of length n starting with ``word``."""
    return _word_program(alphabet, word, range(1, len(word) + 1), n)


def suffix_program(alphabet: Alphabet, word: Word, n: int) -> Program:
    """Recognizes the words of length n ending with ``word``."""
    return _word_program(alphabet, word, range(n - len(word) + 1, n + 1), n)


def random_program(
    morphism: GeneratedMorphism,
    n: int,
    rng: np.random.Generator,
    accept: Iterable[int] = (),
    mean_length: int = 20,
    max_length: int = 40,
) -> Program:
    """Uniform positions and letter maps; length geometric with the given mean."""
    monoid = morphism.target
    length = 0 if n == 0 else min(int(rng.geometric(1 / mean_length)), max_length)
    instructions = tuple(
        Instruction(
            int(rng.integers(1, n + 1)),
            tuple(int(x) for x in rng.integers(0, monoid.size, len(morphism.alphabet))),
        )
        for _ in range(length)
    )
    return Program(morphism.alphabet, n, monoid, instructions, InSet(frozenset(accept)))
