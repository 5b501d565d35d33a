"""Verification harness.

Every check runs a construction against its claimed language at desk scale and
returns a :class:`VerificationReport`. Failed reports carry a counterexample
whose context is enough for :func:`replay_counterexample` to re-check it with
direct membership, independently of the automata used by the check itself.
"""

from __future__ import annotations

import functools
import itertools
import logging
import time
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any

import numpy as np
from pydantic import TypeAdapter

from .algebra import (
    GeneratedMorphism,
    Variety,
    check_variety,
    is_locally_J,
    quotient_by_sim_k,
    stable_pair,
    syntactic_monoid,
    syntactic_semigroup,
)
from .automata import Dfa, compile_dfa, dfa_equal
from .compression import (
    compress_equivalent,
    compress_subword_indices,
    equivalent_length_bound,
    subword_index_bound,
)
from .config import get_enumeration_bound, get_seed
from .costa import CostaForm, costa_K, costa_lang
from .errors import AlphabetMismatchError, CapExceededError, UnknownCheckError
from .expressions import (
    Complement,
    Intersection,
    LangExpr,
    ShuffleIdeal,
    SingleWord,
    Star,
    ThresholdBlock,
    Union,
    expr_from_json,
    expr_to_json,
    has_distinct_letters,
    member,
    rs_normal_form,
    threshold_normal_form,
    universal,
)
from .logging import configure_worker_logging
from .models import (
    CheckSpec,
    Counterexample,
    MorphismModel,
    VerificationReport,
    morphism_from_model,
    morphism_to_model,
)
from .piecewise import is_k_pt
from .programs import GammaProgram, Program, gamma_eval, random_program, recognizes
from .reductions import (
    BINARY,
    SWEEP_ALPHABET,
    DecoratedSweepPlan,
    SelectorFn,
    building_block_language,
    decorated_sweep,
    feedback_sweep,
    mutated_decorated_sweep,
    mutated_feedback_sweep,
    mutated_selector_program,
    selector_length_bound,
    selector_member,
    selector_program,
    sweep_source_language,
    sweep_target_language,
    zk_language,
)
from .tddo import compile_tddo, target_in_variety
from .words import (
    Alphabet,
    Word,
    enumerate_index_words,
    enumerate_words,
    format_word,
    is_subword,
    parse_word,
    subword_members,
    word_of,
)

logger = logging.getLogger(__name__)

Indices = tuple[int, ...]


def _report(
    check_id: str,
    parameters: dict[str, Any],
    *,
    failure: Counterexample | None = None,
    instances: int = 0,
    bounded: bool = False,
    notes: Iterable[str] = (),
    skipped: bool = False,
) -> VerificationReport:
    if failure is not None:
        verdict = "fail"
    elif skipped:
        verdict = "skipped"
    else:
        verdict = "pass"
    return VerificationReport(
        check_id=check_id,
        parameters=parameters,
        verdict=verdict,
        counterexample=failure,
        instances_checked=instances,
        bounded=bounded,
        notes=list(notes),
    )


def _text(word: Word) -> str:
    return format_word(word)


# Reductions


def scan_reduction(
    program: GammaProgram, source_accepts: Callable[[Indices], bool], target: Dfa
) -> tuple[int, Indices | None]:
    """Count of inputs checked and the first one the reduction gets wrong."""
    if target.alphabet != program.output_alphabet:
        raise AlphabetMismatchError("target automaton and reduction outputs differ")
    checked = 0
    for indices in enumerate_index_words(len(program.input_alphabet), program.n):
        checked += 1
        if target.accepts_indices(program.map_indices(indices)) != source_accepts(indices):
            return checked, indices
    return checked, None


def check_reduction(
    family: Callable[[int], GammaProgram],
    source: LangExpr,
    target: LangExpr,
    n_max: int,
    check_id: str = "reduction",
    parameters: dict[str, Any] | None = None,
    context: dict[str, Any] | None = None,
) -> VerificationReport:
    """Exhaustively test L^{=n} = Ψ_n^{-1}(K^{=|Ψ_n|}) for every n <= n_max."""
    parameters = parameters if parameters is not None else {"n_max": n_max}
    source_dfa = compile_dfa(source)
    target_dfa = compile_dfa(target)
    total = 0
    for n in range(n_max + 1):
        program = family(n)
        if program.input_alphabet != source.alphabet:
            raise AlphabetMismatchError("reduction reads a different alphabet than the source")
        checked, bad = scan_reduction(program, source_dfa.accepts_indices, target_dfa)
        total += checked
        if bad is not None:
            word = tuple(source.alphabet.symbols[i] for i in bad)
            failure = Counterexample(
                word=_text(word),
                context={
                    **(context or {}),
                    "kind": "reduction",
                    "n": n,
                    "image": _text(gamma_eval(program, word)),
                    "in_source": source_dfa.accepts_indices(bad),
                },
            )
            return _report(check_id, parameters, failure=failure, instances=total)
    return _report(check_id, parameters, instances=total)


def _sweep_family(mutated: bool) -> Callable[[int], GammaProgram]:
    return mutated_feedback_sweep if mutated else feedback_sweep


def _run_sweep(spec: CheckSpec, mutated: bool) -> VerificationReport:
    n_max = spec.bound or int(spec.parameters.get("n_max", 10))
    return check_reduction(
        _sweep_family(mutated),
        sweep_source_language(),
        sweep_target_language(),
        n_max,
        check_id=spec.check_id,
        parameters={"n_max": n_max},
        context={"family": "sweep", "mutated": mutated},
    )


@dataclass(frozen=True)
class _PlanGrid:
    alphabet: str = "abc"
    us: tuple[str, ...] = ("ab", "abc")
    alphas: tuple[int, ...] = (1, 2)
    xs: tuple[str, ...] = ("", "a", "ba")
    n_max: int = 8

    @classmethod
    def from_parameters(cls, parameters: dict[str, Any], bound: int | None) -> _PlanGrid:
        defaults = cls()
        return cls(
            alphabet=parameters.get("alphabet", defaults.alphabet),
            us=tuple(parameters.get("us", defaults.us)),
            alphas=tuple(int(a) for a in parameters.get("alphas", defaults.alphas)),
            xs=tuple(parameters.get("xs", defaults.xs)),
            n_max=bound or int(parameters.get("n_max", defaults.n_max)),
        )

    def as_parameters(self) -> dict[str, Any]:
        return {
            "alphabet": self.alphabet,
            "us": list(self.us),
            "alphas": list(self.alphas),
            "xs": list(self.xs),
            "n_max": self.n_max,
        }

    def plans(self) -> list[DecoratedSweepPlan]:
        alphabet = Alphabet.of(self.alphabet)
        return [
            DecoratedSweepPlan(alphabet, word_of(u), word_of(x1), word_of(x2), alpha)
            for u in self.us
            for alpha in self.alphas
            for x1 in self.xs
            for x2 in self.xs
        ]


def _plan_context(plan: DecoratedSweepPlan) -> dict[str, Any]:
    return {
        "alphabet": "".join(s.base for s in plan.alphabet),
        "u": _text(plan.u),
        "x1": _text(plan.x1),
        "x2": _text(plan.x2),
        "alpha": plan.alpha,
    }


def _plan_from_context(context: dict[str, Any]) -> DecoratedSweepPlan:
    return DecoratedSweepPlan(
        Alphabet.of(context["alphabet"]),
        word_of(context["u"]),
        word_of(context["x1"]),
        word_of(context["x2"]),
        int(context["alpha"]),
    )


def _run_building_blocks(spec: CheckSpec, mutated: bool) -> VerificationReport:
    grid = _PlanGrid.from_parameters(spec.parameters, spec.bound)
    parameters = grid.as_parameters()
    build = mutated_decorated_sweep if mutated else decorated_sweep
    total = 0
    for plan in grid.plans():
        for n in range(grid.n_max + 1):
            program, _ = build(plan, n)
            bound = plan.width * n
            if len(program) > bound:
                failure = Counterexample(
                    word="",
                    context={
                        **_plan_context(plan),
                        "kind": "length",
                        "n": n,
                        "length": len(program),
                        "bound": bound,
                        "mutated": mutated,
                    },
                )
                return _report(spec.check_id, parameters, failure=failure, instances=total)
        report = check_reduction(
            lambda n, plan=plan: build(plan, n)[0],
            building_block_language(plan),
            plan.target_language(),
            grid.n_max,
            check_id=spec.check_id,
            parameters=parameters,
            context={**_plan_context(plan), "family": "block", "mutated": mutated},
        )
        total += report.instances_checked
        if report.verdict == "fail":
            report.instances_checked = total
            return report
    return _report(spec.check_id, parameters, instances=total)


def _table_to_json(sigma: SelectorFn) -> list[list[list[int]]]:
    return [[list(rho), sorted(js)] for rho, js in sorted(sigma.table.items())]


def _table_from_json(k: int, n: int, rows: list) -> SelectorFn:
    return SelectorFn(k, n, {tuple(rho): frozenset(js) for rho, js in rows})


def _selector_failure(
    sigma: SelectorFn, mutated: bool, target: Dfa
) -> tuple[int, Counterexample | None]:
    build = mutated_selector_program if mutated else selector_program
    program = build(sigma)
    context = {
        "family": "selector",
        "mutated": mutated,
        "k": sigma.k,
        "n": sigma.n,
        "table": _table_to_json(sigma),
    }
    bound = selector_length_bound(sigma.k, sigma.n)
    if len(program) > bound:
        return 0, Counterexample(
            word="",
            context={**context, "kind": "length", "length": len(program), "bound": bound},
        )
    symbols = BINARY.symbols

    def source(indices: Indices) -> bool:
        return selector_member(sigma, tuple(symbols[i] for i in indices))

    checked, bad = scan_reduction(program, source, target)
    if bad is None:
        return checked, None
    word = tuple(symbols[i] for i in bad)
    return checked, Counterexample(
        word=_text(word),
        context={
            **context,
            "kind": "reduction",
            "image": _text(gamma_eval(program, word)),
            "in_source": source(bad),
        },
    )


def _selectors(spec: CheckSpec) -> tuple[dict[str, Any], list[SelectorFn]]:
    params = spec.parameters
    ks = [int(k) for k in params.get("ks", [0, 1, 2])]
    n_max = spec.bound or int(params.get("n_max", 4))
    if "constant" in params:
        selected = frozenset(int(j) for j in params["constant"])
        parameters = {"ks": ks, "n_max": n_max, "constant": sorted(selected)}
        sigmas = [
            SelectorFn.constant(k, n, selected & set(range(1, n + 1)))
            for k in ks
            for n in range(1, n_max + 1)
        ]
        return parameters, sigmas
    seed = int(params.get("seed", get_seed()))
    samples = int(params.get("samples", 20))
    parameters = {"ks": ks, "n_max": n_max, "seed": seed, "samples": samples}
    sigmas = [
        SelectorFn.random(k, n, np.random.default_rng([seed, k, n, sample]))
        for k in ks
        for n in range(1, n_max + 1)
        for sample in range(samples)
    ]
    return parameters, sigmas


def _run_selectors(spec: CheckSpec, mutated: bool) -> VerificationReport:
    parameters, sigmas = _selectors(spec)
    targets: dict[int, Dfa] = {}
    total = 0
    for sigma in sigmas:
        if sigma.k not in targets:
            targets[sigma.k] = compile_dfa(zk_language(sigma.k))
        checked, failure = _selector_failure(sigma, mutated, targets[sigma.k])
        total += checked
        if failure is not None:
            return _report(spec.check_id, parameters, failure=failure, instances=total)
    logger.debug(f"{len(sigmas)} selector functions checked")
    return _report(spec.check_id, parameters, instances=total)


# Language equalities


def _equality_failure(left: LangExpr, right: LangExpr, word: Word) -> Counterexample:
    return Counterexample(
        word=_text(word),
        context={
            "kind": "equality",
            "left": expr_to_json(left),
            "right": expr_to_json(right),
        },
    )


def _compare(
    left: LangExpr, right: LangExpr, mode: str, bound: int
) -> tuple[Counterexample | None, bool, int]:
    """Failure (if any), whether the verdict is bounded, and instances checked."""
    if mode == "exact-dfa":
        try:
            result = dfa_equal(compile_dfa(left), compile_dfa(right))
        except CapExceededError as e:
            logger.warning(f"{e}; falling back to enumeration up to length {bound}")
        else:
            if result:
                return None, False, 1
            return _equality_failure(left, right, result.counterexample), False, 1
    checked = 0
    for word in enumerate_words(left.alphabet, 0, bound):
        checked += 1
        if member(left, word) != member(right, word):
            return _equality_failure(left, right, word), True, checked
    return None, True, checked


def sweep_identity_expression(alphabet: Alphabet = SWEEP_ALPHABET) -> LangExpr:
    """⟨c,a⟩₂^∁ ∩ ⟨c,b⟩₂^∁ ∩ ⟨ac⟩₂."""
    a, b, c = (word_of(x) for x in "abc")
    return Intersection(
        alphabet,
        (
            Complement(ThresholdBlock(alphabet, (c, a), 2)),
            Complement(ThresholdBlock(alphabet, (c, b), 2)),
            ThresholdBlock(alphabet, (word_of("ac"),), 2),
        ),
    )


def _run_sweep_identity(spec: CheckSpec) -> VerificationReport:
    bound = spec.bound or get_enumeration_bound()
    failure, bounded, checked = _compare(
        sweep_identity_expression(), sweep_source_language(), spec.mode, bound
    )
    parameters = {"mode": spec.mode, "bound": bound}
    return _report(spec.check_id, parameters, failure=failure, instances=checked, bounded=bounded)


def check_tddo_equality(
    alphabet: Alphabet,
    threshold: int,
    factors: Sequence[Word],
    mode: str = "exact-dfa",
    bound: int | None = None,
) -> VerificationReport:
    """The block, its {1,l}^k normal form and its R ∩ S normal form agree."""
    factors = tuple(tuple(u) for u in factors)
    parameters = {
        "alphabet": "".join(s.base for s in alphabet),
        "l": threshold,
        "us": [_text(u) for u in factors],
    }
    repeated = [u for u in factors if not has_distinct_letters(u)]
    if repeated:
        return _report(
            "tddo_equality",
            parameters,
            skipped=True,
            notes=[f"factor {_text(repeated[0])} repeats a letter"],
        )
    bound = bound or get_enumeration_bound()
    block = ThresholdBlock(alphabet, factors, threshold)
    pairs = [
        (block, threshold_normal_form(alphabet, factors, threshold)),
        (threshold_normal_form(alphabet, factors, threshold), rs_normal_form(alphabet, factors, threshold)),
    ]
    total, bounded = 0, False
    for left, right in pairs:
        failure, was_bounded, checked = _compare(left, right, mode, bound)
        total += checked
        bounded = bounded or was_bounded
        if failure is not None:
            return _report("tddo_equality", parameters, failure=failure, instances=total, bounded=bounded)
    return _report("tddo_equality", parameters, instances=total, bounded=bounded)


DEFAULT_TDDO_GRID = [
    {"alphabet": alphabet, "l": l, "us": us}
    for alphabet, lists in (
        ("ab", (["ab"], ["a", "b"], ["ab", "a"], ["ba", "ab"])),
        ("abc", (["ab", "c"], ["ac"], ["c", "ab"], ["bc", "a"])),
    )
    for l in (2, 3)
    for us in lists
]


def _run_tddo_equality(spec: CheckSpec) -> VerificationReport:
    instances = spec.parameters.get("instances", DEFAULT_TDDO_GRID)
    parameters = {"instances": instances, "mode": spec.mode}
    total, bounded, skipped = 0, False, []
    for instance in instances:
        report = check_tddo_equality(
            Alphabet.of(instance["alphabet"]),
            int(instance["l"]),
            [word_of(u) for u in instance["us"]],
            spec.mode,
            spec.bound,
        )
        total += report.instances_checked
        bounded = bounded or report.bounded
        if report.verdict == "skipped":
            skipped.extend(report.notes)
        elif report.verdict == "fail":
            return _report(
                spec.check_id,
                parameters,
                failure=report.counterexample,
                instances=total,
                bounded=bounded,
                notes=skipped,
            )
    return _report(
        spec.check_id,
        parameters,
        instances=total,
        bounded=bounded,
        notes=skipped,
        skipped=bool(instances) and len(skipped) == len(instances),
    )


# Costa forms


DEFAULT_COSTA_FORMS = [
    {"alphabet": "ab", "r": 0, "us": ["a"], "as": []},
    {"alphabet": "ab", "r": 0, "us": ["a", "a"], "as": [["b"]]},
    {"alphabet": "abc", "r": 1, "us": ["", "", ""], "as": [["a", "c"], ["b", "c"]]},
    {"alphabet": "abc", "r": 0, "us": ["a", "", "b"], "as": [["a", "c"], ["b", "c"]]},
    {"alphabet": "abc", "r": 2, "us": ["", "", ""], "as": [["a", "c"], ["b", "c"]]},
    {"alphabet": "abc", "r": 0, "us": ["", "c", ""], "as": [["a"], ["b"]]},
]


def _form_from_json(data: dict[str, Any]) -> CostaForm:
    return CostaForm.from_json(data, Alphabet.of(data["alphabet"]))


def check_costa(
    form: CostaForm, mode: str = "exact-dfa", bound: int | None = None
) -> VerificationReport:
    """L = K for one form, plus the DA and locally-J membership of L."""
    parameters = {"form": {**form.to_json(), "alphabet": [str(s) for s in form.alphabet]}}
    bound = bound or get_enumeration_bound()
    language, description = costa_lang(form), costa_K(form)
    failure, bounded, checked = _compare(language, description, mode, bound)
    if failure is not None:
        return _report("costa", parameters, failure=failure, instances=checked, bounded=bounded)
    notes = []
    try:
        dfa = compile_dfa(language)
        claims = {
            "DA": check_variety(syntactic_monoid(dfa).monoid, Variety.DA),
            "LJ": is_locally_J(syntactic_semigroup(dfa)[0]),
        }
    except CapExceededError as e:
        notes.append(f"variety membership not checked: {e}")
        claims = {}
    for claim, holds in claims.items():
        if not holds:
            failure = Counterexample(
                word="", context={"kind": "costa-variety", "claim": claim, **parameters}
            )
            return _report("costa", parameters, failure=failure, instances=checked, bounded=bounded)
    return _report("costa", parameters, instances=checked, bounded=bounded, notes=notes)


def _costa_variety_holds(form: CostaForm, claim: str) -> bool:
    dfa = compile_dfa(costa_lang(form))
    if claim == "DA":
        return check_variety(syntactic_monoid(dfa).monoid, Variety.DA)
    return is_locally_J(syntactic_semigroup(dfa)[0])


def _run_costa(spec: CheckSpec) -> VerificationReport:
    forms = spec.parameters.get("forms", DEFAULT_COSTA_FORMS)
    parameters = {"forms": forms, "mode": spec.mode}
    total, bounded, notes = 0, False, []
    for data in forms:
        report = check_costa(_form_from_json(data), spec.mode, spec.bound)
        total += report.instances_checked
        bounded = bounded or report.bounded
        notes.extend(report.notes)
        if report.verdict == "fail":
            return _report(
                spec.check_id,
                parameters,
                failure=report.counterexample,
                instances=total,
                bounded=bounded,
                notes=notes,
            )
    return _report(spec.check_id, parameters, instances=total, bounded=bounded, notes=notes)


# Compression


@functools.lru_cache(maxsize=1)
def compression_monoid() -> GeneratedMorphism:
    """Syntactic morphism of ab⧢Σ* over {a, b}."""
    ab = Alphabet.of("ab")
    return syntactic_monoid(compile_dfa(ShuffleIdeal(ab, word_of("ab")))).morphism


def _trial(
    seed: int, trial: int, n_max: int, morphism: GeneratedMorphism
) -> tuple[Program, np.random.Generator]:
    rng = np.random.default_rng([seed, trial])
    n = int(rng.integers(0, n_max + 1))
    return random_program(morphism, n, rng), rng


def _compression_failure(
    program: Program, k_max: int, rng: np.random.Generator
) -> tuple[int, dict[str, Any] | None]:
    """Checked instances and the context of the first broken guarantee.

    Every t in M^k is checked for k <= k_max, each against one random
    superset of its selected indices.
    """
    letters, n, size = len(program.input_alphabet), program.n, program.target.size
    inputs = list(enumerate_index_words(letters, n))
    traces = [tuple(program.trace_indices(w)) for w in inputs]
    checked = 0
    for k in range(k_max + 1):
        for t in itertools.product(range(size), repeat=k):
            selected = compress_subword_indices(program, t)
            bound = subword_index_bound(k, letters, n)
            if len(selected) > bound:
                return checked, {"aspect": "subword-bound", "t": list(t), "length": len(selected), "bound": bound}
            extra = {i for i in range(len(program)) if rng.random() < 0.5}
            superset = sorted(selected | extra)
            sub = program.subprogram(superset)
            for w, trace in zip(inputs, traces):
                checked += 1
                if is_subword(t, trace) != is_subword(t, sub.trace_indices(w)):
                    return checked, {"aspect": "subword", "t": list(t), "superset": superset, "input": list(w)}
        compressed = compress_equivalent(program, k)
        bound = equivalent_length_bound(k, size, letters, n)
        if len(compressed) > bound:
            return checked, {"aspect": "equivalence-bound", "k": k, "length": len(compressed), "bound": bound}
        for w, trace in zip(inputs, traces):
            checked += 1
            if subword_members(trace, k) != subword_members(tuple(compressed.trace_indices(w)), k):
                return checked, {"aspect": "equivalence", "k": k, "input": list(w)}
    return checked, None


def check_compression(
    seed: int,
    monoid: GeneratedMorphism | None = None,
    trials: int = 100,
    n_max: int = 5,
    k_max: int = 3,
) -> VerificationReport:
    """Random programs over the target of ``monoid``, ab⧢Σ*'s syntactic morphism by default."""
    morphism = monoid if monoid is not None else compression_monoid()
    parameters = {
        "seed": seed,
        "monoid_size": morphism.target.size,
        "trials": trials,
        "n_max": n_max,
        "k_max": k_max,
    }
    total = 0
    for trial in range(trials):
        program, rng = _trial(seed, trial, n_max, morphism)
        checked, broken = _compression_failure(program, k_max, rng)
        total += checked
        if broken is not None:
            symbols = program.input_alphabet.symbols
            word = tuple(symbols[i] for i in broken.get("input", []))
            context = {"kind": "compression", "seed": seed, "trial": trial, "n_max": n_max, **broken}
            if monoid is not None:
                context["morphism"] = morphism_to_model(monoid).model_dump()
            failure = Counterexample(word=_text(word), context=context)
            return _report("compression", parameters, failure=failure, instances=total)
    return _report("compression", parameters, instances=total)


def _run_compression(spec: CheckSpec) -> VerificationReport:
    params = spec.parameters
    morphism = params.get("morphism")
    report = check_compression(
        int(params.get("seed", get_seed())),
        morphism_from_model(MorphismModel.model_validate(morphism)) if morphism else None,
        int(params.get("trials", 100)),
        spec.bound or int(params.get("n_max", 5)),
        int(params.get("k_max", 3)),
    )
    report.check_id = spec.check_id
    return report


def _compression_refails(context: dict[str, Any], word: Word) -> bool:
    morphism = (
        morphism_from_model(MorphismModel.model_validate(context["morphism"]))
        if "morphism" in context
        else compression_monoid()
    )
    program, _ = _trial(
        int(context["seed"]), int(context["trial"]), int(context["n_max"]), morphism
    )
    letters, n = len(program.input_alphabet), program.n
    indices = program.input_alphabet.indices(word)
    aspect = context["aspect"]
    if aspect == "subword-bound":
        t = tuple(context["t"])
        return len(compress_subword_indices(program, t)) > subword_index_bound(len(t), letters, n)
    if aspect == "equivalence-bound":
        k = int(context["k"])
        size = program.target.size
        return len(compress_equivalent(program, k)) > equivalent_length_bound(k, size, letters, n)
    trace = program.trace_indices(indices)
    if aspect == "subword":
        t = tuple(context["t"])
        sub = program.subprogram(context["superset"])
        return is_subword(t, trace) != is_subword(t, sub.trace_indices(indices))
    k = int(context["k"])
    compressed = compress_equivalent(program, k)
    return subword_members(tuple(trace), k) != subword_members(
        tuple(compressed.trace_indices(indices)), k
    )


# Variety claims


def _syntactic(expr: LangExpr):
    return syntactic_monoid(compile_dfa(expr))


def variety_claims() -> dict[str, Callable[[], bool]]:
    """Named algebraic facts; each callable returns True when the fact holds."""
    ab, abc = Alphabet.of("ab"), SWEEP_ALPHABET

    def shuffle(alphabet: Alphabet, text: str) -> ShuffleIdeal:
        return ShuffleIdeal(alphabet, word_of(text))

    piecewise = {
        "ab-shuffle": shuffle(ab, "ab"),
        "ab-shuffle-without-ba": Intersection(
            ab, (shuffle(ab, "ab"), Complement(shuffle(ab, "ba")))
        ),
        "aab-or-no-b": Union(ab, (shuffle(ab, "aab"), Complement(shuffle(ab, "b")))),
        "universal": universal(ab),
    }
    sweep = sweep_source_language()
    claims: dict[str, Callable[[], bool]] = {}
    for name, expr in piecewise.items():
        claims[f"J:{name}"] = lambda e=expr: check_variety(_syntactic(e).monoid, Variety.J)
    claims["DA:sweep-source"] = lambda: check_variety(_syntactic(sweep).monoid, Variety.DA)
    claims["not-J:sweep-source"] = lambda: not check_variety(_syntactic(sweep).monoid, Variety.J)
    claims["not-quasi-J:sweep-source"] = lambda: not check_variety(
        stable_pair(_syntactic(sweep).morphism).stable_monoid, Variety.J
    )
    blocks = {
        "ab,c-threshold-3": ThresholdBlock(abc, (word_of("ab"), word_of("c")), 3),
        "ac-threshold-2": ThresholdBlock(abc, (word_of("ac"),), 2),
    }
    for name, expr in blocks.items():
        claims[f"DA:{name}"] = lambda e=expr: check_variety(_syntactic(e).monoid, Variety.DA)
    claims["3-PT:Z1"] = lambda: is_k_pt(compile_dfa(zk_language(1)), 3)
    ab_star = Star(SingleWord(ab, word_of("ab")))
    for k in range(5):
        claims[f"not-{k}-PT:(ab)*"] = lambda k=k: not is_k_pt(compile_dfa(ab_star), k)
    for letters in ("a", "ab"):
        for k in range(4):
            claims[f"J:sim-{k}-quotient-{letters}"] = lambda a=letters, k=k: check_variety(
                quotient_by_sim_k(Alphabet.of(a), k).monoid, Variety.J
            )
    return claims


def check_variety_claims(names: Sequence[str] | None = None) -> VerificationReport:
    claims = variety_claims()
    selected = list(names) if names else list(claims)
    unknown = [name for name in selected if name not in claims]
    if unknown:
        raise UnknownCheckError(f"unknown variety claims: {unknown}")
    for i, name in enumerate(selected, start=1):
        if not claims[name]():
            failure = Counterexample(word="", context={"kind": "claim", "claim": name})
            return _report("variety_claims", {"claims": selected}, failure=failure, instances=i)
    return _report("variety_claims", {"claims": selected}, instances=len(selected))


def _run_variety_claims(spec: CheckSpec) -> VerificationReport:
    report = check_variety_claims(spec.parameters.get("claims"))
    report.check_id = spec.check_id
    return report


# End-to-end compilation


DEFAULT_COMPILE_EXPRESSIONS = [
    expr_to_json(ThresholdBlock(Alphabet.of("ab"), (word_of("ab"),), 2)),
    expr_to_json(sweep_identity_expression()),
]


def _compile_failure(expr: LangExpr, n: int) -> tuple[int, Counterexample | None]:
    program = compile_tddo(expr, n)
    context = {"kind": "compile", "expr": expr_to_json(expr), "n": n}
    if not target_in_variety(program, Variety.J):
        return 0, Counterexample(word="", context={**context, "claim": "J components"})
    checked = 0
    for indices in enumerate_index_words(len(expr.alphabet), n):
        checked += 1
        word = tuple(expr.alphabet.symbols[i] for i in indices)
        if program.accept(program.evaluate_indices(indices)) != member(expr, word):
            return checked, Counterexample(word=_text(word), context=context)
    return checked, None


def _run_tddo_compile(spec: CheckSpec) -> VerificationReport:
    expressions = spec.parameters.get("expressions", DEFAULT_COMPILE_EXPRESSIONS)
    n_max = spec.bound or int(spec.parameters.get("n_max", 7))
    parameters = {"expressions": expressions, "n_max": n_max}
    total = 0
    for data in expressions:
        expr = expr_from_json(data)
        for n in range(n_max + 1):
            checked, failure = _compile_failure(expr, n)
            total += checked
            if failure is not None:
                return _report(spec.check_id, parameters, failure=failure, instances=total)
    return _report(spec.check_id, parameters, instances=total)


# Mutation sensitivity


MUTATION_SPECS = [
    CheckSpec(check_id="sweep_reduction_mutated", parameters={"n_max": 4}),
    CheckSpec(
        check_id="building_block_mutated",
        parameters={"alphabet": "ab", "us": ["ab"], "alphas": [1], "xs": [""], "n_max": 4},
    ),
    CheckSpec(
        check_id="selectors_mutated",
        parameters={"ks": [0, 1], "n_max": 2, "constant": [1]},
    ),
]


def _run_mutation_sensitivity(spec: CheckSpec) -> VerificationReport:
    specs = [CheckSpec.model_validate(s) for s in spec.parameters.get("mutations", [])] or MUTATION_SPECS
    parameters = {"mutations": [s.model_dump() for s in specs]}
    total = 0
    for mutation in specs:
        report = run_check(mutation)
        total += report.instances_checked
        caught = report.verdict == "fail" and replay_counterexample(report)
        if not caught:
            failure = Counterexample(
                word="", context={"kind": "mutation", "mutation": mutation.model_dump()}
            )
            return _report(spec.check_id, parameters, failure=failure, instances=total)
        logger.debug(
            f"{mutation.check_id} caught on {report.counterexample.word or 'ε'}"
        )
    return _report(spec.check_id, parameters, instances=total)


# Registry and suites


@dataclass(frozen=True)
class CheckEntry:
    run: Callable[[CheckSpec], VerificationReport]
    description: str


REGISTRY: dict[str, CheckEntry] = {
    "building_block": CheckEntry(
        lambda s: _run_building_blocks(s, False), "decorated sweep reductions"
    ),
    "building_block_mutated": CheckEntry(
        lambda s: _run_building_blocks(s, True), "decorated sweep without its top reads"
    ),
    "compression": CheckEntry(_run_compression, "subprogram compression guarantees"),
    "costa": CheckEntry(_run_costa, "Costa forms against their block description"),
    "mutation_sensitivity": CheckEntry(
        _run_mutation_sensitivity, "broken constructions are caught"
    ),
    "selectors": CheckEntry(lambda s: _run_selectors(s, False), "selector programs"),
    "selectors_mutated": CheckEntry(
        lambda s: _run_selectors(s, True), "selector programs with a shifted block"
    ),
    "sweep_identity": CheckEntry(_run_sweep_identity, "(a+b)*ac+ as a block combination"),
    "sweep_reduction": CheckEntry(lambda s: _run_sweep(s, False), "feedback sweep"),
    "sweep_reduction_mutated": CheckEntry(
        lambda s: _run_sweep(s, True), "feedback sweep with swapped reads"
    ),
    "tddo_compile": CheckEntry(_run_tddo_compile, "compiled programs over J"),
    "tddo_equality": CheckEntry(_run_tddo_equality, "threshold block normal forms"),
    "variety_claims": CheckEntry(_run_variety_claims, "variety membership facts"),
}


def _entry(check_id: str) -> CheckEntry:
    try:
        return REGISTRY[check_id]
    except KeyError:
        raise UnknownCheckError(
            f"unknown check {check_id!r}; known checks: {', '.join(sorted(REGISTRY))}"
        ) from None


def run_check(spec: CheckSpec) -> VerificationReport:
    """Run one check; unexpected errors become fail reports."""
    entry = _entry(spec.check_id)
    start = time.perf_counter()
    try:
        report = entry.run(spec)
    except Exception as e:
        logger.error(f"check {spec.check_id} raised {e!r}", exc_info=True)
        report = VerificationReport(
            check_id=spec.check_id,
            parameters=spec.parameters,
            verdict="fail",
            counterexample=Counterexample(
                word="", context={"kind": "error", "spec": spec.model_dump()}
            ),
            notes=[f"{type(e).__name__}: {e}"],
        )
    report.elapsed = round(time.perf_counter() - start, 6)
    log = logger.info if report.verdict != "fail" else logger.warning
    log(
        f"{spec.check_id}: {report.verdict} after {report.instances_checked} "
        f"instances in {report.elapsed:.2f}s"
    )
    return report


def validate_specs(specs: Iterable[CheckSpec]) -> list[CheckSpec]:
    specs = list(specs)
    for spec in specs:
        _entry(spec.check_id)
    return specs


def sort_reports(reports: Iterable[VerificationReport]) -> list[VerificationReport]:
    return sorted(reports, key=lambda r: r.check_id)


def run_suite(specs: Sequence[CheckSpec], parallelism: int = 1) -> list[VerificationReport]:
    """Run every check, in worker processes when ``parallelism`` > 1."""
    specs = validate_specs(specs)
    if parallelism > 1 and len(specs) > 1:
        with ProcessPoolExecutor(
            max_workers=parallelism, initializer=configure_worker_logging
        ) as pool:
            reports = list(pool.map(run_check, specs))
    else:
        reports = [run_check(spec) for spec in specs]
    return sort_reports(reports)


def suite_exit_code(reports: Iterable[VerificationReport]) -> int:
    return 1 if any(r.verdict == "fail" for r in reports) else 0


def _default_suite(seed: int) -> list[CheckSpec]:
    return [
        CheckSpec(check_id="building_block"),
        CheckSpec(
            check_id="compression",
            parameters={"seed": seed, "trials": 100, "n_max": 5, "k_max": 3},
        ),
        CheckSpec(check_id="costa", mode="exact-dfa"),
        CheckSpec(check_id="mutation_sensitivity"),
        CheckSpec(
            check_id="selectors",
            parameters={"seed": seed, "ks": [0, 1, 2], "n_max": 4, "samples": 20},
        ),
        CheckSpec(check_id="sweep_identity", mode="exact-dfa"),
        CheckSpec(check_id="sweep_reduction", parameters={"n_max": 10}),
        CheckSpec(check_id="tddo_compile", parameters={"n_max": 7}),
        CheckSpec(check_id="tddo_equality", mode="exact-dfa"),
        CheckSpec(check_id="variety_claims"),
    ]


def _quick_suite(seed: int) -> list[CheckSpec]:
    return [
        CheckSpec(
            check_id="building_block",
            parameters={"us": ["ab"], "alphas": [1, 2], "xs": ["", "a"], "n_max": 5},
        ),
        CheckSpec(
            check_id="compression",
            parameters={"seed": seed, "trials": 10, "n_max": 3, "k_max": 2},
        ),
        CheckSpec(check_id="costa", mode="exact-dfa"),
        CheckSpec(check_id="mutation_sensitivity"),
        CheckSpec(
            check_id="selectors",
            parameters={"seed": seed, "ks": [0, 1], "n_max": 3, "samples": 3},
        ),
        CheckSpec(check_id="sweep_identity", mode="exact-dfa"),
        CheckSpec(check_id="sweep_reduction", parameters={"n_max": 6}),
        CheckSpec(check_id="tddo_compile", parameters={"n_max": 4}),
        CheckSpec(
            check_id="tddo_equality",
            mode="exact-dfa",
            parameters={"instances": DEFAULT_TDDO_GRID[:4]},
        ),
        CheckSpec(check_id="variety_claims"),
    ]


SUITES: dict[str, Callable[[int], list[CheckSpec]]] = {
    "default": _default_suite,
    "quick": _quick_suite,
    "mutation": lambda seed: [s.model_copy() for s in MUTATION_SPECS],
}


def suite(name: str, seed: int | None = None) -> list[CheckSpec]:
    """Check specs of a named suite."""
    try:
        build = SUITES[name]
    except KeyError:
        raise UnknownCheckError(
            f"unknown suite {name!r}; known suites: {', '.join(SUITES)}"
        ) from None
    return build(get_seed() if seed is None else seed)


def load_suite(text: str) -> list[CheckSpec]:
    """Parse a JSON list of check specs."""
    return validate_specs(TypeAdapter(list[CheckSpec]).validate_json(text))


# Replay


def _reduction_case(context: dict[str, Any]) -> tuple[GammaProgram, Callable[[Word], bool], LangExpr]:
    mutated = bool(context.get("mutated"))
    family = context["family"]
    if family == "sweep":
        program = _sweep_family(mutated)(int(context["n"]))
        source = sweep_source_language()
        return program, lambda w: member(source, w), sweep_target_language()
    if family == "block":
        plan = _plan_from_context(context)
        build = mutated_decorated_sweep if mutated else decorated_sweep
        program, target = build(plan, int(context["n"]))
        source = building_block_language(plan)
        return program, lambda w: member(source, w), target
    if family == "selector":
        sigma = _table_from_json(int(context["k"]), int(context["n"]), context["table"])
        program = (mutated_selector_program if mutated else selector_program)(sigma)
        return program, lambda w: selector_member(sigma, w), zk_language(sigma.k)
    raise ValueError(f"unknown reduction family {family!r}")


def _length_refails(context: dict[str, Any]) -> bool:
    mutated = bool(context.get("mutated"))
    if context.get("family") == "selector":
        sigma = _table_from_json(int(context["k"]), int(context["n"]), context["table"])
        program = (mutated_selector_program if mutated else selector_program)(sigma)
        return len(program) > selector_length_bound(sigma.k, sigma.n)
    plan = _plan_from_context(context)
    n = int(context["n"])
    build = mutated_decorated_sweep if mutated else decorated_sweep
    return len(build(plan, n)[0]) > plan.width * n


def replay_counterexample(report: VerificationReport) -> bool:
    """True iff the report's counterexample still fails when re-checked alone."""
    if report.verdict != "fail" or report.counterexample is None:
        return False
    context = report.counterexample.context
    word = parse_word(report.counterexample.word)
    kind = context.get("kind")
    if kind == "reduction":
        program, source_member, target = _reduction_case(context)
        return source_member(word) != member(target, gamma_eval(program, word))
    if kind == "length":
        return _length_refails(context)
    if kind == "equality":
        left = expr_from_json(context["left"])
        right = expr_from_json(context["right"])
        return member(left, word) != member(right, word)
    if kind == "costa-variety":
        return not _costa_variety_holds(_form_from_json(context["form"]), context["claim"])
    if kind == "compression":
        return _compression_refails(context, word)
    if kind == "claim":
        return not variety_claims()[context["claim"]]()
    if kind == "compile":
        expr = expr_from_json(context["expr"])
        program = compile_tddo(expr, int(context["n"]))
        if context.get("claim"):
            return not target_in_variety(program, Variety.J)
        return recognizes(program, word) != member(expr, word)
    if kind == "mutation":
        mutation = CheckSpec.model_validate(context["mutation"])
        rerun = run_check(mutation)
        return not (rerun.verdict == "fail" and replay_counterexample(rerun))
    if kind == "error":
        return run_check(CheckSpec.model_validate(context["spec"])).verdict == "fail"
    raise ValueError(f"unknown counterexample kind {kind!r}")


def describe_checks() -> list[tuple[str, str]]:
    return [(name, entry.description) for name, entry in sorted(REGISTRY.items())]

