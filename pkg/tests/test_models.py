"""Test the Pydantic artifact models and their conversions."""

import pytest
from pydantic import ValidationError

from mpj_workbench.algebra import syntactic_monoid
from mpj_workbench.automata import compile_dfa
from mpj_workbench.errors import NonAssociativeError
from mpj_workbench.expressions import ShuffleIdeal
from mpj_workbench.models import (
    CheckSpec,
    CliConfig,
    DfaModel,
    GammaProgramModel,
    MonoidModel,
    MorphismModel,
    ProgramModel,
    VerificationReport,
    dfa_from_model,
    dfa_to_model,
    gamma_program_from_model,
    gamma_program_to_model,
    monoid_from_model,
    monoid_to_model,
    morphism_from_model,
    morphism_to_model,
    program_from_model,
    program_to_model,
)
from mpj_workbench.programs import (
    boolean_combine,
    gamma_eval,
    morphism_program,
    recognizes,
    suffix_program,
)
from mpj_workbench.reductions import SelectorFn, feedback_sweep, selector_program
from mpj_workbench.words import Alphabet, enumerate_words, word_of

AB = Alphabet.of("ab")

# Words ending in a, written the way a user would
sample_dfa = {
    "alphabet": ["a", "b"],
    "states": 2,
    "start": 0,
    "transitions": [[1, 0], [1, 0]],
    "accepting": [1],
}


@pytest.fixture
def shuffle_ab():
    return syntactic_monoid(compile_dfa(ShuffleIdeal(AB, word_of("ab"))))


def words(length, alphabet=AB):
    return list(enumerate_words(alphabet, length, length))


class TestMonoidModels:
    """Test monoid and morphism models."""

    def test_table_is_validated(self):
        with pytest.raises(NonAssociativeError):
            monoid_from_model(MonoidModel(size=2, table=[[1, 1], [0, 0]]))

    def test_row_count_must_match_size(self):
        with pytest.raises(ValueError):
            monoid_from_model(MonoidModel(size=3, identity=0, table=[[0, 1], [1, 0]]))

    def test_size_is_positive(self):
        with pytest.raises(ValidationError):
            MonoidModel(size=0, table=[])

    def test_round_trip(self, shuffle_ab):
        model = MonoidModel.model_validate_json(
            monoid_to_model(shuffle_ab.monoid).model_dump_json()
        )
        assert model.gen_labels[0] == "1"
        assert monoid_from_model(model) == shuffle_ab.monoid

    def test_morphism_round_trip(self, shuffle_ab):
        model = morphism_to_model(shuffle_ab.morphism)
        assert set(model.images) == {"a", "b"}
        restored = morphism_from_model(MorphismModel.model_validate_json(model.model_dump_json()))
        assert restored.images == shuffle_ab.morphism.images


class TestDfaModels:
    """Test DFA models."""

    def test_from_user_json(self):
        dfa = dfa_from_model(DfaModel.model_validate(sample_dfa))
        assert dfa.accepts(word_of("ba"))
        assert not dfa.accepts(word_of("ab"))

    def test_round_trip(self):
        dfa = dfa_from_model(DfaModel.model_validate(sample_dfa))
        assert dfa_to_model(dfa).model_dump() == sample_dfa

    def test_transition_targets_checked(self):
        bad = {**sample_dfa, "transitions": [[1, 2], [1, 0]]}
        with pytest.raises(ValueError):
            dfa_from_model(DfaModel.model_validate(bad))


class TestProgramModels:
    """Test program and Γ-program models."""

    def test_flat_program_round_trip(self, shuffle_ab):
        program = morphism_program(shuffle_ab.morphism, shuffle_ab.accept, 3)
        model = program_to_model(program)
        assert isinstance(model.accept, list)
        restored = program_from_model(ProgramModel.model_validate_json(model.model_dump_json()))
        for w in words(3):
            assert recognizes(restored, w) == recognizes(program, w)

    def test_product_program_round_trip(self):
        program = boolean_combine(
            suffix_program(AB, word_of("a"), 3), suffix_program(AB, word_of("ab"), 3), "or"
        )
        model = program_to_model(program)
        assert model.components is not None
        assert model.accept.kind == "any"
        restored = program_from_model(ProgramModel.model_validate_json(model.model_dump_json()))
        for w in words(3):
            assert recognizes(restored, w) == recognizes(program, w)

    def test_program_needs_a_target(self):
        model = ProgramModel(input_alphabet=["a"], n=1, accept=[])
        with pytest.raises(ValueError):
            program_from_model(model)

    def test_identity_instructions(self):
        model = gamma_program_to_model(feedback_sweep(3))
        assert all(ins.identity for ins in model.instructions)
        assert [ins.pos for ins in model.instructions] == [2, 1, 3, 2]

    def test_gamma_round_trip(self):
        program = selector_program(SelectorFn.constant(1, 2, frozenset({2})))
        model = GammaProgramModel.model_validate_json(
            gamma_program_to_model(program).model_dump_json()
        )
        restored = gamma_program_from_model(model)
        for w in words(4, program.input_alphabet):
            assert gamma_eval(restored, w) == gamma_eval(program, w)


class TestVerificationModels:
    """Test check specs, reports and CLI settings."""

    def test_check_spec_defaults(self):
        spec = CheckSpec(check_id="sweep_reduction")
        assert spec.mode == "exhaustive"
        assert spec.parameters == {}
        assert spec.bound is None

    def test_check_spec_validation(self):
        with pytest.raises(ValidationError):
            CheckSpec(check_id="costa", bound=0)
        with pytest.raises(ValidationError):
            CheckSpec(check_id="costa", mode="approximate")

    def test_report_json(self):
        report = VerificationReport(check_id="costa", verdict="pass", instances_checked=3)
        restored = VerificationReport.model_validate_json(report.model_dump_json())
        assert restored == report
        assert restored.counterexample is None

    def test_cli_config_from_environment(self, monkeypatch):
        monkeypatch.setenv("MPJ_STATE_CAP", "123")
        monkeypatch.setenv("MPJ_OUTPUT_FORMAT", "JSON")
        config = CliConfig()
        assert config.state_cap == 123
        assert config.output_format == "json"
        assert config.parallelism == 1

    def test_cli_config_rejects_bad_values(self):
        with pytest.raises(ValidationError):
            CliConfig(parallelism=0)
        with pytest.raises(ValidationError):
            CliConfig(output_format="yaml")


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
