"""Command line interface for the MPJ workbench."""

import argparse
import asyncio
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np
from pydantic import ValidationError

from .algebra import quotient_by_sim_k, syntactic_monoid
from .automata import compile_dfa, dfa_equal
from .compression import compress_equivalent, equivalent_length_bound
from .config import load_config
from .core import classify, run_verification
from .errors import MpjError
from .expressions import LangExpr, expr_from_json, expr_to_json, member
from .logging import setup_logging
from .models import (
    CliConfig,
    DfaModel,
    ProgramModel,
    dfa_from_model,
    dfa_to_model,
    gamma_program_to_model,
    monoid_to_model,
    morphism_to_model,
    program_from_model,
    program_to_model,
)
from .programs import Program, components, evaluate, recognizes
from .reductions import (
    SelectorFn,
    feedback_sweep,
    mutated_feedback_sweep,
    selector_member,
    selector_program,
    sweep_source_language,
    sweep_target_language,
    zk_language,
)
from .regex_lite import parse_regex
from .renderer import (
    model_to_json,
    render_classification,
    render_reports,
    reports_to_json,
    write_output,
)
from .tddo import compile_tddo
from .verify import (
    SUITES,
    describe_checks,
    load_suite,
    scan_reduction,
    suite,
    suite_exit_code,
)
from .words import Alphabet, enumerate_index_words, format_word, subword_members

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2

logger = logging.getLogger("mpj_workbench")


# Inputs


def _alphabet(text: str | None) -> Alphabet | None:
    if not text:
        return None
    return Alphabet.of(text.split(",") if "," in text else text)


def _json_file(text: str) -> dict | None:
    path = Path(text)
    if text.endswith(".json") and path.is_file():
        return json.loads(path.read_text(encoding="utf-8"))
    return None


def load_expression(text: str, alphabet: str | None = None) -> LangExpr:
    """An expression JSON file, or a regex-lite string."""
    data = _json_file(text)
    if data is not None:
        return expr_from_json(data, _alphabet(alphabet))
    return parse_regex(text, _alphabet(alphabet))


def _read_model(path: str, model_cls):
    return model_cls.model_validate_json(Path(path).read_text(encoding="utf-8"))


def _apply(config: CliConfig) -> None:
    """Publish caps to the environment so library getters and workers see them."""
    os.environ["MPJ_STATE_CAP"] = str(config.state_cap)
    os.environ["MPJ_MONOID_CAP"] = str(config.monoid_cap)
    os.environ["MPJ_QUOTIENT_CAP"] = str(config.quotient_cap)
    os.environ["MPJ_ENUMERATION_BOUND"] = str(config.enumeration_bound)
    os.environ["MPJ_SEED"] = str(config.seed)


def build_config(args: argparse.Namespace) -> CliConfig:
    overrides = {
        key: value
        for key in CliConfig.model_fields
        if (value := getattr(args, key, None)) is not None
    }
    config = CliConfig(**overrides)
    _apply(config)
    return config


def _emit(args, config: CliConfig, text: str, model=None) -> None:
    as_json = config.output_format == "json" or (args.output or "").endswith(".json")
    content = model_to_json(model) if as_json and model is not None else text
    if not content.endswith("\n"):
        content += "\n"
    write_output(content, args.output, logger)


# classify


def cmd_classify(args, config: CliConfig) -> int:
    data = _json_file(args.input)
    if data is not None and "transitions" in data:
        dfa = dfa_from_model(DfaModel.model_validate(data))
    else:
        dfa = compile_dfa(load_expression(args.input, args.alphabet))
    record = classify(dfa, args.k or [], logger, source=args.input)
    _emit(args, config, render_classification(record), record)
    return EXIT_OK


# lang


def cmd_lang(args, config: CliConfig) -> int:
    expr = load_expression(args.expr, args.alphabet)
    if args.action == "render":
        if config.output_format == "json":
            write_output(json.dumps(expr_to_json(expr), indent=2) + "\n", args.output, logger)
        else:
            _emit(args, config, expr.render(ascii=args.ascii))
        return EXIT_OK
    if args.action == "compile":
        dfa = compile_dfa(expr)
        text = f"{dfa.states} states over {expr.alphabet}, start {dfa.start}, accepting {sorted(dfa.accepting)}"
        _emit(args, config, text, dfa_to_model(dfa))
        return EXIT_OK
    if args.action == "equal":
        other = load_expression(args.other, args.alphabet or ",".join(str(s) for s in expr.alphabet))
        result = dfa_equal(compile_dfa(expr), compile_dfa(other))
        if result:
            _emit(args, config, "equal")
            return EXIT_OK
        witness = format_word(result.counterexample) or "ε"
        _emit(args, config, f"different; shortest witness: {witness}")
        return EXIT_FAIL
    word = expr.alphabet.word(args.word)
    verdict = member(expr, word)
    _emit(args, config, "member" if verdict else "not a member")
    return EXIT_OK if verdict else EXIT_FAIL


# program


def _check_words(n: int, config: CliConfig) -> bool:
    if n > config.enumeration_bound:
        logger.warning(
            f"--check skipped: n={n} exceeds the enumeration bound {config.enumeration_bound}"
        )
        return False
    return True


def _report_check(subject: str, checked: int, bad: tuple | None, alphabet: Alphabet) -> int:
    if bad is None:
        logger.info(f"check passed: {subject} agrees on {checked} inputs")
        return EXIT_OK
    word = format_word(tuple(alphabet.symbols[i] for i in bad)) or "ε"
    logger.warning(f"check failed: {subject} disagrees on {word}")
    return EXIT_FAIL


def _program_eval(args, config: CliConfig) -> int:
    program = program_from_model(_read_model(args.file, ProgramModel))
    word = program.input_alphabet.word(args.word)
    value = evaluate(program, word)
    accepted = recognizes(program, word)
    if program.flat and program.target.labels:
        shown = program.target.label(value)
    else:
        shown = str(value)
    text = f"{shown} ({'accepted' if accepted else 'rejected'})"
    _emit(args, config, text)
    return EXIT_OK


def _program_sweep(args, config: CliConfig) -> int:
    build = mutated_feedback_sweep if args.mutated else feedback_sweep
    program = build(args.n)
    _emit(args, config, str(program.positions), gamma_program_to_model(program))
    if not args.check or not _check_words(args.n, config):
        return EXIT_OK
    source = compile_dfa(sweep_source_language())
    checked, bad = scan_reduction(
        program, source.accepts_indices, compile_dfa(sweep_target_language())
    )
    return _report_check("sweep", checked, bad, program.input_alphabet)


def _selector(args, config: CliConfig) -> SelectorFn:
    if args.selected is not None:
        selected = frozenset(int(j) for j in args.selected.split(",") if j)
        return SelectorFn.constant(args.k, args.n, selected)
    return SelectorFn.random(args.k, args.n, np.random.default_rng([config.seed, args.k, args.n]))


def _program_selector(args, config: CliConfig) -> int:
    sigma = _selector(args, config)
    program = selector_program(sigma)
    _emit(args, config, f"length {len(program)} reading {program.positions}", gamma_program_to_model(program))
    if not args.check or not _check_words(sigma.input_length(), config):
        return EXIT_OK
    symbols = program.input_alphabet.symbols
    checked, bad = scan_reduction(
        program,
        lambda w: selector_member(sigma, tuple(symbols[i] for i in w)),
        compile_dfa(zk_language(sigma.k)),
    )
    return _report_check("selector", checked, bad, program.input_alphabet)


def _agreement(program: Program, expr: LangExpr) -> tuple[int, tuple | None]:
    checked = 0
    symbols = expr.alphabet.symbols
    for indices in enumerate_index_words(len(symbols), program.n):
        checked += 1
        word = tuple(symbols[i] for i in indices)
        if program.accept(program.evaluate_indices(indices)) != member(expr, word):
            return checked, indices
    return checked, None


def _program_compile(args, config: CliConfig) -> int:
    expr = load_expression(args.expr, args.alphabet)
    program = compile_tddo(expr, args.n)
    sizes = [c.size for c in components(program.target)]
    _emit(args, config, f"length {len(program)} over monoids of sizes {sizes}", program_to_model(program))
    if not args.check or not _check_words(args.n, config):
        return EXIT_OK
    checked, bad = _agreement(program, expr)
    return _report_check("compiled program", checked, bad, expr.alphabet)


def _program_compress(args, config: CliConfig) -> int:
    program = program_from_model(_read_model(args.file, ProgramModel))
    compressed = compress_equivalent(program, args.k)
    sizes = [c.size for c in components(program.target)]
    bound = equivalent_length_bound(args.k, max(sizes), len(program.input_alphabet), program.n)
    logger.info(
        f"compressed {len(program)} instructions to {len(compressed)}; bound {bound}"
    )
    text = f"length {len(program)} -> {len(compressed)} (bound {bound})"
    _emit(args, config, text, program_to_model(compressed))
    if not args.check or not _check_words(program.n, config):
        return EXIT_OK
    for indices in enumerate_index_words(len(program.input_alphabet), program.n):
        left = subword_members(tuple(program.trace_indices(indices)), args.k)
        right = subword_members(tuple(compressed.trace_indices(indices)), args.k)
        if left != right:
            return _report_check("compressed program", 0, indices, program.input_alphabet)
    logger.info(f"check passed: traces are ~{args.k} equivalent")
    return EXIT_OK


PROGRAM_ACTIONS = {
    "eval": _program_eval,
    "sweep": _program_sweep,
    "selector": _program_selector,
    "compile-tddo": _program_compile,
    "compress": _program_compress,
}


def cmd_program(args, config: CliConfig) -> int:
    return PROGRAM_ACTIONS[args.action](args, config)


# verify


async def cmd_verify(args, config: CliConfig) -> int:
    if args.list:
        for name, description in describe_checks():
            print(f"{name:26} {description}")
        return EXIT_OK
    if args.config:
        specs = load_suite(Path(args.config).read_text(encoding="utf-8"))
    else:
        specs = suite(args.suite, config.seed)
    reports = await run_verification(specs, logger, config.parallelism)
    if args.json:
        write_output(reports_to_json(reports), args.json, logger)
    if config.output_format == "json" and not args.json:
        write_output(reports_to_json(reports), None, logger)
    else:
        write_output(render_reports(reports, logger), None, logger)
    return suite_exit_code(reports)


# monoid


def cmd_monoid(args, config: CliConfig) -> int:
    if args.action == "quotient":
        monoid, morphism = quotient_by_sim_k(_alphabet(args.alphabet), args.k)
    else:
        monoid, morphism, _ = syntactic_monoid(compile_dfa(load_expression(args.expr, args.alphabet)))
    letters = ", ".join(f"{s} -> {monoid.label(x)}" for s, x in morphism.letter_image.items())
    text = f"monoid of size {monoid.size}, ω = {monoid.omega}; {letters}"
    if args.table:
        text += "\n" + "\n".join(" ".join(f"{x:3d}" for x in row) for row in monoid.rows)
    _emit(args, config, text, morphism_to_model(morphism) if args.with_morphism else monoid_to_model(monoid))
    return EXIT_OK


# parser


def _add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output", "-o", help="Write to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mpj",
        description="Programs over J-monoids and threshold dot-depth one languages",
    )
    parser.add_argument("--state-cap", dest="state_cap", type=int, help="DFA state cap")
    parser.add_argument("--monoid-cap", dest="monoid_cap", type=int, help="Monoid element cap")
    parser.add_argument("--quotient-cap", dest="quotient_cap", type=int, help="~k quotient cap")
    parser.add_argument(
        "--enumeration-bound",
        dest="enumeration_bound",
        type=int,
        help="Max word length for enumeration checks",
    )
    parser.add_argument("--seed", type=int, help="Seed for random constructions")
    parser.add_argument(
        "--format", dest="output_format", choices=["text", "json"], help="Output format"
    )
    parser.add_argument("--parallelism", type=int, help="Worker processes for verify")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="Algebraic classification of a language")
    p.add_argument("input", help="regex-lite string, expression JSON or DFA JSON file")
    p.add_argument("--alphabet", help="Alphabet, e.g. abc (defaults to letters used)")
    p.add_argument("--k", type=int, action="append", help="Test k-piecewise testability")
    _add_output(p)

    p = sub.add_parser("lang", help="Expression utilities")
    p.add_argument("action", choices=["render", "compile", "equal", "member"])
    p.add_argument("expr", help="regex-lite string or expression JSON file")
    p.add_argument("other", nargs="?", help="Second expression (equal)")
    p.add_argument("--word", default="", help="Word to test (member)")
    p.add_argument("--alphabet", help="Alphabet, e.g. abc")
    p.add_argument("--ascii", action="store_true", help="Render without Unicode symbols")
    _add_output(p)

    p = sub.add_parser("program", help="Build, run and compress programs")
    p.add_argument("action", choices=list(PROGRAM_ACTIONS))
    p.add_argument("file", nargs="?", help="Program JSON file (eval, compress)")
    p.add_argument("--word", default="", help="Input word (eval)")
    p.add_argument("--n", type=int, default=0, help="Input length")
    p.add_argument("--k", type=int, default=1, help="Selector depth or ~k level")
    p.add_argument("--expr", help="Expression (compile-tddo)")
    p.add_argument("--alphabet", help="Alphabet, e.g. abc")
    p.add_argument("--selected", help="Constant selector positions, e.g. 1,3")
    p.add_argument("--mutated", action="store_true", help="Use the deliberately broken sweep")
    p.add_argument("--check", action="store_true", help="Cross-check by enumeration")
    _add_output(p)

    p = sub.add_parser("verify", help="Run a verification suite")
    p.add_argument("--suite", default="default", help=f"One of {', '.join(SUITES)}")
    p.add_argument("--config", help="JSON list of check specs")
    p.add_argument("--json", help="Also write the reports as JSON to this file")
    p.add_argument("--list", action="store_true", help="List the known checks")

    p = sub.add_parser("monoid", help="Show syntactic or ~k quotient monoids")
    p.add_argument("action", choices=["show", "quotient"])
    p.add_argument("expr", nargs="?", help="Expression (show)")
    p.add_argument("--alphabet", help="Alphabet, e.g. ab")
    p.add_argument("--k", type=int, default=1, help="Subword length (quotient)")
    p.add_argument("--table", action="store_true", help="Print the multiplication table")
    p.add_argument(
        "--with-morphism",
        dest="with_morphism",
        action="store_true",
        help="Emit the generating morphism instead of the bare monoid",
    )
    _add_output(p)
    return parser


def _validate(args, parser: argparse.ArgumentParser) -> None:
    if args.command == "program":
        if args.action in ("eval", "compress") and not args.file:
            parser.error(f"program {args.action} needs a program file")
        if args.action == "compile-tddo" and not args.expr:
            parser.error("program compile-tddo needs --expr")
    if args.command == "lang" and args.action == "equal" and not args.other:
        parser.error("lang equal needs two expressions")
    if args.command == "monoid":
        if args.action == "show" and not args.expr:
            parser.error("monoid show needs an expression")
        if args.action == "quotient" and not args.alphabet:
            parser.error("monoid quotient needs --alphabet")


async def main(argv: list[str] | None = None) -> int:
    """Main CLI function; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _validate(args, parser)
    except SystemExit as e:
        return EXIT_CONFIG if e.code else EXIT_OK

    try:
        config = build_config(args)
        if args.command == "verify":
            return await cmd_verify(args, config)
        handler = {
            "classify": cmd_classify,
            "lang": cmd_lang,
            "program": cmd_program,
            "monoid": cmd_monoid,
        }[args.command]
        return handler(args, config)
    except (MpjError, ValidationError, ValueError, OSError, json.JSONDecodeError) as e:
        logger.error(f"{args.command}: {e}")
        logger.debug("traceback", exc_info=True)
        return EXIT_CONFIG


def cli_main():
    """Synchronous entry point for console script."""
    load_config()
    logger = setup_logging()
    logger.debug("starting mpj")
    code = asyncio.run(main())
    logger.debug(f"mpj exiting with {code}")
    sys.exit(code)


if __name__ == "__main__":
    cli_main()
