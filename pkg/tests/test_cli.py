"""Tests for the mpj command line."""

import json

import pytest

from mpj_workbench.algebra import syntactic_monoid
from mpj_workbench.automata import compile_dfa
from mpj_workbench.cli import EXIT_CONFIG, EXIT_FAIL, EXIT_OK, main
from mpj_workbench.expressions import ShuffleIdeal, ThresholdBlock, expr_to_json
from mpj_workbench.models import program_to_model
from mpj_workbench.programs import morphism_program
from mpj_workbench.words import Alphabet, word_of

AB = Alphabet.of("ab")


@pytest.fixture
def program_file(tmp_path):
    """A program over sh(ab) reading inputs of length 3."""
    syn = syntactic_monoid(compile_dfa(ShuffleIdeal(AB, word_of("ab"))))
    path = tmp_path / "program.json"
    path.write_text(
        program_to_model(morphism_program(syn.morphism, syn.accept, 3)).model_dump_json()
    )
    return path


@pytest.fixture
def block_file(tmp_path):
    path = tmp_path / "block.json"
    path.write_text(json.dumps(expr_to_json(ThresholdBlock(AB, (word_of("ab"),), 2))))
    return path


class TestArguments:
    """Test argument handling and exit codes."""

    @pytest.mark.asyncio
    async def test_no_command(self):
        assert await main([]) == EXIT_CONFIG

    @pytest.mark.asyncio
    async def test_help(self, capsys):
        assert await main(["--help"]) == EXIT_OK
        assert "usage: mpj" in capsys.readouterr().out

    @pytest.mark.asyncio
    @pytest.mark.parametrize(
        "argv",
        [
            ["program", "eval"],
            ["program", "compile-tddo", "--n", "2"],
            ["lang", "equal", "ab-shuffle"],
            ["monoid", "quotient"],
            ["monoid", "show"],
        ],
    )
    async def test_missing_arguments(self, argv):
        assert await main(argv) == EXIT_CONFIG

    @pytest.mark.asyncio
    async def test_bad_cap(self):
        assert await main(["--state-cap", "0", "lang", "compile", "ab"]) == EXIT_CONFIG

    @pytest.mark.asyncio
    async def test_regex_error(self):
        assert await main(["lang", "render", "(ab"]) == EXIT_CONFIG

    @pytest.mark.asyncio
    async def test_missing_file(self, tmp_path):
        missing = str(tmp_path / "missing.json")
        assert await main(["program", "eval", missing, "--word", "ab"]) == EXIT_CONFIG


class TestLang:
    """Test the lang command."""

    @pytest.mark.asyncio
    async def test_render(self, capsys):
        assert await main(["lang", "render", "ab-shuffle", "--ascii"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "sh(ab)"

    @pytest.mark.asyncio
    async def test_render_json(self, capsys):
        assert await main(["--format", "json", "lang", "render", "ab-shuffle"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["alphabet"] == ["a", "b"]

    @pytest.mark.asyncio
    async def test_equal_reports_witness(self, capsys):
        assert await main(["lang", "equal", "ab-shuffle", "ba-shuffle"]) == EXIT_FAIL
        assert "shortest witness: ab" in capsys.readouterr().out

    @pytest.mark.asyncio
    async def test_equal(self, capsys):
        assert await main(["lang", "equal", "(a+b)*ac+", "(a+b)*acc*"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "equal"

    @pytest.mark.asyncio
    @pytest.mark.parametrize("word,code", [("abac", EXIT_OK), ("ca", EXIT_FAIL)])
    async def test_member(self, capsys, word, code):
        assert await main(["lang", "member", "(a+b)*ac+", "--word", word]) == code
        expected = "member" if code == EXIT_OK else "not a member"
        assert capsys.readouterr().out.strip() == expected

    @pytest.mark.asyncio
    async def test_compile_to_file(self, tmp_path):
        out = tmp_path / "dfa.json"
        assert await main(["lang", "compile", "ab-shuffle", "-o", str(out)]) == EXIT_OK
        data = json.loads(out.read_text())
        assert data["states"] == 3
        assert data["alphabet"] == ["a", "b"]


class TestClassify:
    """Test the classify command."""

    @pytest.mark.asyncio
    async def test_sweep_source(self, capsys):
        argv = ["--format", "json", "classify", "(a+b)*ac+", "--k", "1"]
        assert await main(argv) == EXIT_OK
        record = json.loads(capsys.readouterr().out)
        assert record["in_da"] is True
        assert record["in_j"] is False
        assert record["piecewise"] == {"1": False}

    @pytest.mark.asyncio
    async def test_shuffle_ideal_text(self, capsys):
        assert await main(["classify", "ab-shuffle"]) == EXIT_OK
        assert "ab-shuffle" in capsys.readouterr().out


class TestProgram:
    """Test the program command."""

    @pytest.mark.asyncio
    async def test_sweep(self, capsys):
        assert await main(["program", "sweep", "--n", "4"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "[2, 1, 3, 2, 4, 3]"

    @pytest.mark.asyncio
    async def test_sweep_check(self):
        assert await main(["program", "sweep", "--n", "5", "--check"]) == EXIT_OK

    @pytest.mark.asyncio
    async def test_mutated_sweep_check_fails(self):
        argv = ["program", "sweep", "--n", "2", "--mutated", "--check"]
        assert await main(argv) == EXIT_FAIL

    @pytest.mark.asyncio
    async def test_check_beyond_enumeration_bound(self):
        argv = ["--enumeration-bound", "2", "program", "sweep", "--n", "3", "--mutated", "--check"]
        assert await main(argv) == EXIT_OK

    @pytest.mark.asyncio
    async def test_sweep_json(self, capsys):
        assert await main(["--format", "json", "program", "sweep", "--n", "3"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert [ins["pos"] for ins in data["instructions"]] == [2, 1, 3, 2]

    @pytest.mark.asyncio
    async def test_selector(self):
        argv = ["program", "selector", "--k", "0", "--n", "2", "--selected", "1", "--check"]
        assert await main(argv) == EXIT_OK

    @pytest.mark.asyncio
    async def test_random_selector(self, capsys):
        argv = ["--seed", "5", "program", "selector", "--k", "1", "--n", "2", "--check"]
        assert await main(argv) == EXIT_OK
        assert capsys.readouterr().out.startswith("length ")

    @pytest.mark.asyncio
    async def test_eval(self, capsys, program_file):
        assert await main(["program", "eval", str(program_file), "--word", "bab"]) == EXIT_OK
        assert "(accepted)" in capsys.readouterr().out

    @pytest.mark.asyncio
    async def test_eval_wrong_length(self, program_file):
        assert await main(["program", "eval", str(program_file), "--word", "ab"]) == EXIT_CONFIG

    @pytest.mark.asyncio
    async def test_compress(self, capsys, program_file):
        argv = ["program", "compress", str(program_file), "--k", "1", "--check"]
        assert await main(argv) == EXIT_OK
        assert capsys.readouterr().out.startswith("length 3 -> ")

    @pytest.mark.asyncio
    async def test_compile_tddo(self, capsys, block_file):
        argv = ["program", "compile-tddo", "--expr", str(block_file), "--n", "4", "--check"]
        assert await main(argv) == EXIT_OK
        assert "over monoids of sizes" in capsys.readouterr().out


class TestMonoid:
    """Test the monoid command."""

    @pytest.mark.asyncio
    async def test_quotient(self, capsys):
        assert await main(["monoid", "quotient", "--alphabet", "ab", "--k", "1"]) == EXIT_OK
        assert capsys.readouterr().out.startswith("monoid of size 4")

    @pytest.mark.asyncio
    async def test_quotient_cap(self):
        argv = ["--quotient-cap", "3", "monoid", "quotient", "--alphabet", "ab", "--k", "1"]
        assert await main(argv) == EXIT_CONFIG

    @pytest.mark.asyncio
    async def test_show_json(self, capsys):
        argv = ["--format", "json", "monoid", "show", "ab-shuffle"]
        assert await main(argv) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["size"] == 5


class TestVerify:
    """Test the verify command."""

    @pytest.mark.asyncio
    async def test_list(self, capsys):
        assert await main(["verify", "--list"]) == EXIT_OK
        assert "sweep_reduction" in capsys.readouterr().out

    @pytest.mark.asyncio
    async def test_unknown_suite(self):
        assert await main(["verify", "--suite", "nope"]) == EXIT_CONFIG

    @pytest.mark.asyncio
    async def test_mutation_suite_fails(self, tmp_path):
        out = tmp_path / "reports.json"
        assert await main(["verify", "--suite", "mutation", "--json", str(out)]) == EXIT_FAIL
        reports = json.loads(out.read_text())
        assert [r["verdict"] for r in reports] == ["fail"] * 3

    @pytest.mark.asyncio
    async def test_config_file(self, tmp_path, capsys):
        config = tmp_path / "suite.json"
        config.write_text(
            json.dumps([{"check_id": "sweep_reduction", "parameters": {"n_max": 3}}])
        )
        assert await main(["--format", "json", "verify", "--config", str(config)]) == EXIT_OK
        reports = json.loads(capsys.readouterr().out)
        assert reports[0]["verdict"] == "pass"

    @pytest.mark.asyncio
    async def test_config_with_unknown_check(self, tmp_path):
        config = tmp_path / "suite.json"
        config.write_text(json.dumps([{"check_id": "nope"}]))
        assert await main(["verify", "--config", str(config)]) == EXIT_CONFIG


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
