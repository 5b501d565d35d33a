"""Pydantic models for the JSON artifacts and conversions to domain objects."""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field

from .algebra import FiniteMonoid, FiniteSemigroup, GeneratedMorphism, validate_and_build
from .automata import Dfa
from .config import (
    get_enumeration_bound,
    get_monoid_cap,
    get_output_format,
    get_parallelism,
    get_quotient_cap,
    get_seed,
    get_state_cap,
)
from .programs import (
    AllOf,
    AnyOf,
    GammaProgram,
    InSet,
    Instruction,
    Negated,
    ProductMonoid,
    Program,
    Slice,
)
from .words import Alphabet, Symbol


class MpjBase(BaseModel):
    """Base class for artifact models; unknown keys are ignored."""

    model_config = ConfigDict(extra="ignore", populate_by_name=True)


def _alphabet_tokens(alphabet: Alphabet) -> list[str]:
    return [str(s) for s in alphabet]


# Monoids and morphisms


class MonoidModel(MpjBase):
    """Multiplication table with optional identity."""

    size: int = Field(..., description="Number of elements", ge=1)
    identity: int | None = Field(None, description="Identity element, if any")
    table: list[list[int]] = Field(..., description="table[x][y] = x*y")
    gen_labels: list[str] | None = Field(
        None, description="Representative word of each element"
    )


def monoid_to_model(semigroup: FiniteSemigroup) -> MonoidModel:
    return MonoidModel(
        size=semigroup.size,
        identity=semigroup.identity,
        table=semigroup.rows,
        gen_labels=list(semigroup.labels) if semigroup.labels else None,
    )


def monoid_from_model(model: MonoidModel) -> FiniteSemigroup:
    if len(model.table) != model.size:
        raise ValueError(f"table has {len(model.table)} rows, size is {model.size}")
    return validate_and_build(model.table, model.identity, labels=model.gen_labels)


class MorphismModel(MpjBase):
    """Letter images of a morphism into an inline monoid."""

    alphabet: list[str] = Field(..., description="Alphabet symbols in order")
    images: dict[str, int] = Field(..., description="Letter to element map")
    monoid: MonoidModel = Field(..., description="Target monoid")


def morphism_to_model(morphism: GeneratedMorphism) -> MorphismModel:
    return MorphismModel(
        alphabet=_alphabet_tokens(morphism.alphabet),
        images={str(s): x for s, x in zip(morphism.alphabet, morphism.images)},
        monoid=monoid_to_model(morphism.target),
    )


def morphism_from_model(model: MorphismModel) -> GeneratedMorphism:
    alphabet = Alphabet.of(model.alphabet)
    target = monoid_from_model(model.monoid)
    return GeneratedMorphism(
        alphabet, target, tuple(model.images[str(s)] for s in alphabet)
    )


# Automata


class DfaModel(MpjBase):
    """Complete DFA with an explicit transition table."""

    alphabet: list[str] = Field(..., description="Alphabet symbols in order")
    states: int = Field(..., description="Number of states", ge=1)
    start: int = Field(0, description="Start state")
    transitions: list[list[int]] = Field(
        ..., description="transitions[state][letter index]"
    )
    accepting: list[int] = Field(default_factory=list, description="Accepting states")


def dfa_to_model(dfa: Dfa) -> DfaModel:
    return DfaModel(
        alphabet=_alphabet_tokens(dfa.alphabet),
        states=dfa.states,
        start=dfa.start,
        transitions=[list(row) for row in dfa.transitions],
        accepting=sorted(dfa.accepting),
    )


def dfa_from_model(model: DfaModel) -> Dfa:
    return Dfa(
        Alphabet.of(model.alphabet),
        model.states,
        model.start,
        tuple(tuple(row) for row in model.transitions),
        frozenset(model.accepting),
    )


# Programs


class InstructionModel(MpjBase):
    """One instruction; ``identity`` marks a letter-copying map of a Γ-program."""

    pos: int = Field(..., description="Input position read (1-based)", ge=1)
    map: dict[str, Any] | None = Field(None, description="Letter to output map")
    identity: bool = Field(False, description="Output equals the letter read")


class AcceptanceModel(MpjBase):
    """Acceptance condition tree over (product) monoid elements."""

    kind: Literal["in", "slice", "all", "any", "not"] = Field(
        ..., description="Node kind"
    )
    elements: list[Any] | None = Field(None, description="Accepted elements (in)")
    start: int | None = Field(None, description="First component (slice)")
    stop: int | None = Field(None, description="Past-the-end component (slice)")
    flat: bool = Field(False, description="Unwrap a single component (slice)")
    parts: list[AcceptanceModel] | None = Field(None, description="Children (all/any)")
    inner: AcceptanceModel | None = Field(None, description="Child (slice/not)")


def _element_out(element):
    return list(element) if isinstance(element, tuple) else element


def _element_in(element):
    return tuple(element) if isinstance(element, list) else element


def acceptance_to_model(accept) -> AcceptanceModel:
    if isinstance(accept, InSet):
        elements = sorted(accept.elements, key=lambda e: (isinstance(e, tuple), e))
        return AcceptanceModel(kind="in", elements=[_element_out(e) for e in elements])
    if isinstance(accept, Slice):
        return AcceptanceModel(
            kind="slice",
            start=accept.start,
            stop=accept.stop,
            flat=accept.flat,
            inner=acceptance_to_model(accept.inner),
        )
    if isinstance(accept, (AllOf, AnyOf)):
        return AcceptanceModel(
            kind="all" if isinstance(accept, AllOf) else "any",
            parts=[acceptance_to_model(p) for p in accept.parts],
        )
    if isinstance(accept, Negated):
        return AcceptanceModel(kind="not", inner=acceptance_to_model(accept.inner))
    raise TypeError(f"unknown acceptance node {accept!r}")


def acceptance_from_model(model: AcceptanceModel):
    if model.kind == "in":
        return InSet(frozenset(_element_in(e) for e in model.elements or []))
    if model.kind == "slice":
        return Slice(model.start, model.stop, acceptance_from_model(model.inner), model.flat)
    if model.kind in ("all", "any"):
        parts = tuple(acceptance_from_model(p) for p in model.parts or [])
        return AllOf(parts) if model.kind == "all" else AnyOf(parts)
    return Negated(acceptance_from_model(model.inner))


class ProgramModel(MpjBase):
    """Program over a monoid, or over a product of monoids."""

    input_alphabet: list[str] = Field(..., description="Input alphabet symbols")
    n: int = Field(..., description="Input length", ge=0)
    monoid: MonoidModel | None = Field(None, description="Target monoid")
    components: list[MonoidModel] | None = Field(
        None, description="Target product components, when not a single monoid"
    )
    instructions: list[InstructionModel] = Field(default_factory=list)
    accept: AcceptanceModel | list[int] = Field(
        ..., description="Accepted elements, or a condition tree for products"
    )


def program_to_model(program: Program) -> ProgramModel:
    alphabet = program.input_alphabet
    instructions = [
        InstructionModel(
            pos=ins.position,
            map={str(s): _element_out(o) for s, o in zip(alphabet, ins.outputs)},
        )
        for ins in program.instructions
    ]
    if isinstance(program.target, ProductMonoid):
        target = {"components": [monoid_to_model(c) for c in program.target.components]}
        accept = acceptance_to_model(program.accept)
    else:
        target = {"monoid": monoid_to_model(program.target)}
        accept = (
            sorted(program.accept.elements)
            if isinstance(program.accept, InSet)
            else acceptance_to_model(program.accept)
        )
    return ProgramModel(
        input_alphabet=_alphabet_tokens(alphabet),
        n=program.n,
        instructions=instructions,
        accept=accept,
        **target,
    )


def program_from_model(model: ProgramModel) -> Program:
    alphabet = Alphabet.of(model.input_alphabet)
    if model.components:
        target = ProductMonoid(tuple(monoid_from_model(c) for c in model.components))
    elif model.monoid is not None:
        target = monoid_from_model(model.monoid)
    else:
        raise ValueError("program needs a monoid or product components")
    if not isinstance(target, (FiniteMonoid, ProductMonoid)):
        raise ValueError("program targets must have an identity")
    accept = (
        InSet(frozenset(model.accept))
        if isinstance(model.accept, list)
        else acceptance_from_model(model.accept)
    )
    instructions = tuple(
        Instruction(
            ins.pos, tuple(_element_in((ins.map or {})[str(s)]) for s in alphabet)
        )
        for ins in model.instructions
    )
    return Program(alphabet, model.n, target, instructions, accept)


class GammaProgramModel(MpjBase):
    """Γ-program: instructions emit letters of the output alphabet."""

    input_alphabet: list[str] = Field(..., description="Input alphabet symbols")
    n: int = Field(..., description="Input length", ge=0)
    output_alphabet: list[str] = Field(..., description="Output alphabet symbols")
    instructions: list[InstructionModel] = Field(default_factory=list)


def gamma_program_to_model(program: GammaProgram) -> GammaProgramModel:
    alphabet = program.input_alphabet
    instructions = []
    for ins in program.instructions:
        if tuple(ins.outputs) == alphabet.symbols:
            instructions.append(InstructionModel(pos=ins.position, identity=True))
        else:
            instructions.append(
                InstructionModel(
                    pos=ins.position,
                    map={str(s): str(o) for s, o in zip(alphabet, ins.outputs)},
                )
            )
    return GammaProgramModel(
        input_alphabet=_alphabet_tokens(alphabet),
        n=program.n,
        output_alphabet=_alphabet_tokens(program.output_alphabet),
        instructions=instructions,
    )


def gamma_program_from_model(model: GammaProgramModel) -> GammaProgram:
    alphabet = Alphabet.of(model.input_alphabet)
    instructions = tuple(
        Instruction(
            ins.pos,
            alphabet.symbols
            if ins.identity
            else tuple(Symbol.parse((ins.map or {})[str(s)]) for s in alphabet),
        )
        for ins in model.instructions
    )
    return GammaProgram(alphabet, model.n, Alphabet.of(model.output_alphabet), instructions)


# Verification


class CheckSpec(MpjBase):
    """One check of a verification suite."""

    check_id: str = Field(..., description="Registered check name")
    parameters: dict[str, Any] = Field(default_factory=dict)
    bound: int | None = Field(None, description="Max word length or max n", gt=0)
    mode: Literal["exact-dfa", "exhaustive"] = Field(
        "exhaustive", description="Exact DFA equivalence or bounded enumeration"
    )


class Counterexample(MpjBase):
    """A word witnessing a failed check, with what it should re-fail."""

    word: str = Field(..., description="Counterexample word")
    context: dict[str, Any] = Field(default_factory=dict)


class VerificationReport(MpjBase):
    """Outcome of one check."""

    check_id: str
    parameters: dict[str, Any] = Field(default_factory=dict)
    verdict: Literal["pass", "fail", "skipped"]
    counterexample: Counterexample | None = None
    instances_checked: int = 0
    elapsed: float = Field(0.0, description="Wall time in seconds")
    bounded: bool = Field(
        False, description="Verdict rests on bounded enumeration, not exact equality"
    )
    notes: list[str] = Field(default_factory=list)


class ClassificationRecord(MpjBase):
    """Algebraic summary of a regular language."""

    source: str = Field(..., description="Input expression or file")
    alphabet: list[str]
    minimal_states: int
    monoid_size: int
    omega: int
    in_a: bool
    in_da: bool
    in_j: bool
    locally_j: bool = Field(..., description="Syntactic semigroup in LJ")
    stable_k: int
    stable_monoid_size: int
    quasi_a: bool
    quasi_da: bool
    quasi_j: bool
    piecewise: dict[int, bool] = Field(
        default_factory=dict, description="is_k_pt verdict per requested k"
    )


class CliConfig(MpjBase):
    """Caps and runtime settings, from the environment and CLI flags."""

    state_cap: int = Field(default_factory=get_state_cap, gt=0)
    monoid_cap: int = Field(default_factory=get_monoid_cap, gt=0)
    quotient_cap: int = Field(default_factory=get_quotient_cap, gt=0)
    enumeration_bound: int = Field(default_factory=get_enumeration_bound, ge=0)
    seed: int = Field(default_factory=get_seed)
    output_format: Literal["json", "text"] = Field(default_factory=get_output_format)
    parallelism: int = Field(default_factory=get_parallelism, ge=1)
