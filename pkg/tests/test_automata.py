"""Tests for expressions, their automata and the regex-lite syntax."""

import pytest

from mpj_workbench.automata import (
    Dfa,
    compile_dfa,
    complement,
    dfa_equal,
    difference,
    intersect,
    is_empty,
    minimize,
    shortest_member,
)
from mpj_workbench.errors import AlphabetMismatchError, CapExceededError, RegexSyntaxError
from mpj_workbench.expressions import (
    Complement,
    Concat,
    Factor,
    Intersection,
    LBlock,
    Letters,
    Prefix,
    RLang,
    ShuffleIdeal,
    SingleWord,
    SLang,
    Star,
    Suffix,
    ThresholdBlock,
    Union,
    expr_from_json,
    expr_to_json,
    member,
    rs_normal_form,
    threshold_normal_form,
    universal,
)
from mpj_workbench.regex_lite import parse_regex, regex_letters
from mpj_workbench.words import Alphabet, Symbol, enumerate_words, format_word, word_of

AB = Alphabet.of("ab")
ABC = Alphabet.of("abc")


def sample_expressions():
    """One expression per node kind, over {a, b, c}."""
    return [
        ShuffleIdeal(ABC, word_of("ab")),
        Factor(ABC, word_of("ab")),
        Prefix(ABC, word_of("ca")),
        Suffix(ABC, word_of("bc")),
        SingleWord(ABC, word_of("abc")),
        Star(Letters(ABC, frozenset({Symbol("a"), Symbol("b")}))),
        ThresholdBlock(ABC, (word_of("ab"), word_of("c")), 2),
        LBlock(ABC, word_of("ab"), 2, 2),
        RLang(ABC, (1, 2), (word_of("ab"), word_of("c")), 2),
        SLang(ABC, (1, 2), (word_of("ab"), word_of("c")), 2),
        Union(ABC, (Factor(ABC, word_of("aa")), Suffix(ABC, word_of("b")))),
        Intersection(ABC, (ShuffleIdeal(ABC, word_of("a")), Complement(Factor(ABC, word_of("cc"))))),
        Concat(ABC, (ShuffleIdeal(ABC, word_of("c")), SingleWord(ABC, word_of("a")))),
        parse_regex("(a+b)*ac+", ABC),
    ]


class TestMembership:
    """Test direct membership on representative words."""

    @pytest.mark.parametrize(
        "word,expected",
        [("ab", True), ("aabb", True), ("abab", True), ("ba", False), ("bbaa", False)],
    )
    def test_threshold_block_over_ab(self, word, expected):
        block = ThresholdBlock(AB, (word_of("ab"),), 2)
        assert member(block, word_of(word)) is expected

    def test_threshold_block_counts_scattered_powers(self):
        """Without the factor, u^l as a subword suffices."""
        block = ThresholdBlock(ABC, (word_of("ab"),), 2)
        assert member(block, word_of("acbacb"))
        assert not member(block, word_of("acb"))

    def test_member_checks_alphabet(self):
        with pytest.raises(AlphabetMismatchError):
            member(ShuffleIdeal(AB, word_of("a")), word_of("c"))

    def test_universal(self):
        assert member(universal(AB), ())
        assert member(universal(AB), word_of("abba"))

    def test_render(self):
        block = ThresholdBlock(AB, (word_of("ab"), word_of("a")), 2)
        assert block.render() == "⟨ab,a⟩_2"
        assert block.render(ascii=True) == "<ab,a>_2"


class TestCompilation:
    """Test that compiled automata agree with direct membership."""

    @pytest.mark.parametrize("expr", sample_expressions(), ids=lambda e: e.render(ascii=True))
    def test_compile_agrees_with_member(self, expr):
        dfa = compile_dfa(expr)
        for word in enumerate_words(ABC, 0, 6):
            assert dfa.accepts(word) == member(expr, word), format_word(word)

    def test_compiled_dfa_is_minimal(self):
        dfa = compile_dfa(ShuffleIdeal(AB, word_of("ab")))
        assert dfa.states == 3
        assert minimize(dfa) == dfa

    def test_state_cap(self):
        with pytest.raises(CapExceededError):
            compile_dfa(ShuffleIdeal(AB, word_of("aaa")), state_cap=2)

    def test_threshold_normal_forms_agree(self):
        factors = [word_of("ab"), word_of("a")]
        block = compile_dfa(ThresholdBlock(AB, tuple(factors), 2))
        assert dfa_equal(block, compile_dfa(threshold_normal_form(AB, factors, 2)))
        assert dfa_equal(block, compile_dfa(rs_normal_form(AB, factors, 2)))


class TestDfaOperations:
    """Test products, emptiness and equivalence."""

    def test_invalid_transition_table(self):
        with pytest.raises(ValueError):
            Dfa(AB, 1, 0, ((0,),), frozenset())

    def test_shortest_member(self):
        dfa = compile_dfa(parse_regex("(a+b)*ac+"))
        assert shortest_member(dfa) == word_of("ac")

    def test_empty_intersection(self):
        word = compile_dfa(SingleWord(AB, word_of("ab")))
        avoids = complement(compile_dfa(ShuffleIdeal(AB, word_of("ab"))))
        assert is_empty(intersect(word, avoids))
        assert shortest_member(avoids) == ()

    def test_difference(self):
        left = compile_dfa(ShuffleIdeal(AB, word_of("a")))
        right = compile_dfa(ShuffleIdeal(AB, word_of("ab")))
        assert shortest_member(difference(left, right)) == word_of("a")

    def test_equal_languages(self):
        left = compile_dfa(Factor(AB, word_of("a")))
        right = compile_dfa(ShuffleIdeal(AB, word_of("a")))
        result = dfa_equal(left, right)
        assert result
        assert result.counterexample is None

    def test_shortest_counterexample(self):
        """ab separates ab⧢Σ* from ba⧢Σ* and nothing shorter does."""
        result = dfa_equal(
            compile_dfa(ShuffleIdeal(AB, word_of("ab"))),
            compile_dfa(ShuffleIdeal(AB, word_of("ba"))),
        )
        assert not result
        assert result.counterexample == word_of("ab")

    def test_alphabets_must_match(self):
        with pytest.raises(AlphabetMismatchError):
            dfa_equal(
                compile_dfa(ShuffleIdeal(AB, word_of("a"))),
                compile_dfa(ShuffleIdeal(ABC, word_of("a"))),
            )


class TestJson:
    """Test the JSON form of expression trees."""

    @pytest.mark.parametrize("expr", sample_expressions(), ids=lambda e: e.render(ascii=True))
    def test_json_round_trip(self, expr):
        data = expr_to_json(expr)
        assert data["alphabet"] == ["a", "b", "c"]
        assert expr_from_json(data) == expr

    def test_unknown_op(self):
        with pytest.raises(ValueError):
            expr_from_json({"op": "kleene", "alphabet": ["a"]})


class TestRegexLite:
    """Test the regex-lite parser."""

    def test_alphabet_from_letters(self):
        expr = parse_regex("(a+b)*ac+")
        assert [str(s) for s in expr.alphabet] == ["a", "b", "c"]
        assert member(expr, word_of("abacc"))
        assert not member(expr, word_of("acb"))

    def test_postfix_plus_only_at_end(self):
        """a+b is a union; c+ at the end is one or more c."""
        expr = parse_regex("a+bc+", ABC)
        assert member(expr, word_of("a"))
        assert member(expr, word_of("bcc"))
        assert not member(expr, word_of("b"))

    def test_shuffle_suffix(self):
        expr = parse_regex("ab-shuffle", ABC)
        assert expr == ShuffleIdeal(ABC, word_of("ab"))
        assert regex_letters("ab-shuffle") == ["a", "b"]

    def test_empty_group_is_the_empty_word(self):
        expr = parse_regex("()", AB)
        assert member(expr, ())
        assert not member(expr, word_of("a"))

    @pytest.mark.parametrize("text", ["(ab", "ab)", "*a", ""])
    def test_syntax_errors(self, text):
        with pytest.raises(RegexSyntaxError):
            parse_regex(text)

    def test_letter_outside_alphabet(self):
        with pytest.raises(RegexSyntaxError):
            parse_regex("ac", AB)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
