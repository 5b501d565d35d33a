"""Tests for feedback sweeps, decorated sweeps, selectors and modular decoration."""

import numpy as np
import pytest

from mpj_workbench.errors import RepeatedLetterError, ShapeMismatchError
from mpj_workbench.expressions import member
from mpj_workbench.programs import gamma_eval
from mpj_workbench.reductions import (
    BINARY,
    SWEEP_ALPHABET,
    DecoratedSweepPlan,
    SelectorFn,
    building_block_language,
    decorated_sweep,
    feedback_sweep,
    modular_decoration,
    mutated_decorated_sweep,
    mutated_feedback_sweep,
    mutated_selector_program,
    residue_word,
    selector_length_bound,
    selector_member,
    selector_program,
    sweep_source_language,
    sweep_target_language,
    y_alphabet,
    zk_language,
)
from mpj_workbench.words import Alphabet, Symbol, enumerate_words, format_word, word_of

ABC = Alphabet.of("abc")


def words(alphabet, length):
    return list(enumerate_words(alphabet, length, length))


def reduction_failures(program, source, target):
    """Inputs on which source membership and target membership of the image differ."""
    return [
        format_word(w)
        for w in words(program.input_alphabet, program.n)
        if source(w) != member(target, gamma_eval(program, w))
    ]


class TestFeedbackSweep:
    """Test the feedback sweep over {a, b, c}."""

    def test_positions(self):
        assert feedback_sweep(4).positions == [2, 1, 3, 2, 4, 3]
        assert feedback_sweep(1).positions == []
        assert feedback_sweep(0).positions == []

    def test_output_copies_letters(self):
        assert gamma_eval(feedback_sweep(3), word_of("abc")) == word_of("bacb")

    @pytest.mark.parametrize("n", range(0, 6))
    def test_reduction(self, n):
        source = sweep_source_language()
        failures = reduction_failures(
            feedback_sweep(n), lambda w: member(source, w), sweep_target_language()
        )
        assert failures == []

    def test_mutated_sweep_is_caught(self):
        """Swapping the last two reads maps ac to ac, which avoids ca."""
        program = mutated_feedback_sweep(2)
        assert program.positions == [1, 2]
        source = sweep_source_language()
        failures = reduction_failures(
            program, lambda w: member(source, w), sweep_target_language()
        )
        assert "ac" in failures

    def test_alphabet(self):
        assert feedback_sweep(2).input_alphabet == SWEEP_ALPHABET


class TestDecoratedSweep:
    """Test decorated sweeps for building-block languages."""

    def test_plan_validation(self):
        with pytest.raises(ValueError):
            DecoratedSweepPlan(ABC, ())
        with pytest.raises(RepeatedLetterError):
            DecoratedSweepPlan(ABC, word_of("aba"))
        with pytest.raises(ValueError):
            DecoratedSweepPlan(ABC, word_of("ab"), alpha=0)

    def test_width_and_length(self):
        plan = DecoratedSweepPlan(ABC, word_of("abc"))
        assert plan.width == 5
        assert plan.length(2) == 0
        program, _ = decorated_sweep(plan, 5)
        assert len(program) == plan.length(5) == 2 + 3 * 5

    @pytest.mark.parametrize(
        "u,x1,x2,alpha",
        [("ab", "", "", 1), ("ab", "a", "", 2), ("abc", "", "ba", 1), ("abc", "a", "ba", 2)],
    )
    def test_reduction(self, u, x1, x2, alpha):
        plan = DecoratedSweepPlan(ABC, word_of(u), word_of(x1), word_of(x2), alpha)
        source = building_block_language(plan)
        for n in range(0, 5):
            program, target = decorated_sweep(plan, n)
            failures = reduction_failures(program, lambda w: member(source, w), target)
            assert failures == [], f"n={n}"

    def test_truncated_sweep_is_caught(self):
        plan = DecoratedSweepPlan(Alphabet.of("ab"), word_of("ab"))
        source = building_block_language(plan)
        program, target = mutated_decorated_sweep(plan, 2)
        failures = reduction_failures(program, lambda w: member(source, w), target)
        assert "ab" in failures

    def test_truncation_needs_two_letters(self):
        with pytest.raises(ValueError):
            mutated_decorated_sweep(DecoratedSweepPlan(ABC, word_of("a")), 3)


class TestSelectors:
    """Test selector functions, Z_k and selector programs."""

    def test_y_alphabet_order(self):
        assert [str(s) for s in y_alphabet(1)] == ["e", "#", "top:0", "bot:0"]

    def test_z0(self):
        z0 = zk_language(0)
        assert member(z0, (Symbol("e"), Symbol("#")))
        assert not member(z0, (Symbol("e"),))

    def test_z1_nesting(self):
        z1 = zk_language(1)
        e, hash_, top, bot = y_alphabet(1)
        assert member(z1, (e, top, hash_, bot, e))
        assert not member(z1, (top, e, bot, hash_))

    def test_table_must_be_total(self):
        with pytest.raises(ShapeMismatchError):
            SelectorFn(1, 2, {(1,): frozenset({1})})

    def test_selected_positions_in_range(self):
        with pytest.raises(ShapeMismatchError):
            SelectorFn.constant(0, 2, frozenset({3}))

    def test_restrict(self):
        sigma = SelectorFn(1, 2, {(1,): frozenset({1}), (2,): frozenset({2})})
        assert sigma.restrict(2)(()) == {2}
        with pytest.raises(ValueError):
            sigma.restrict(1).restrict(1)

    @pytest.mark.parametrize(
        "word,expected", [("1010", True), ("1001", False), ("1110", False), ("0010", False)]
    )
    def test_member(self, word, expected):
        sigma = SelectorFn.constant(1, 2, frozenset({1}))
        assert selector_member(sigma, BINARY.word(word)) is expected

    @pytest.mark.parametrize("k,n", [(0, 1), (0, 3), (1, 1), (1, 2), (1, 3), (2, 2)])
    def test_reduction(self, k, n):
        sigma = SelectorFn.random(k, n, np.random.default_rng([k, n]))
        program = selector_program(sigma)
        assert len(program) <= selector_length_bound(k, n)
        failures = reduction_failures(
            program, lambda w: selector_member(sigma, w), zk_language(k)
        )
        assert failures == []

    def test_mutated_selector_is_caught(self):
        sigma = SelectorFn.constant(0, 2, frozenset({1}))
        failures = reduction_failures(
            mutated_selector_program(sigma),
            lambda w: selector_member(sigma, w),
            zk_language(0),
        )
        assert "01" in failures


class TestModularDecoration:
    """Test position residues."""

    def test_decoration(self):
        program = modular_decoration(2, 3, Alphabet.of("ab"))
        assert format_word(gamma_eval(program, word_of("aba"))) == "a:0,b:1,a:0"
        assert gamma_eval(program, word_of("aba")) == residue_word(word_of("aba"), 2)

    def test_offset(self):
        assert format_word(residue_word(word_of("ab"), 3, offset=2)) == "a:2,b:0"

    def test_modulus_must_be_positive(self):
        with pytest.raises(ValueError):
            modular_decoration(0, 3, Alphabet.of("ab"))


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
