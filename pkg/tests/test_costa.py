"""Tests for Costa forms and their threshold block descriptions."""

import pytest

from mpj_workbench.algebra import Variety, check_variety, syntactic_monoid
from mpj_workbench.automata import compile_dfa, dfa_equal
from mpj_workbench.costa import CostaForm, CostaLang, costa_K, costa_lang
from mpj_workbench.errors import CostaFormError
from mpj_workbench.expressions import expr_from_json, expr_to_json, member
from mpj_workbench.verify import DEFAULT_COSTA_FORMS
from mpj_workbench.words import Alphabet, word_of

AB = Alphabet.of("ab")
ABC = Alphabet.of("abc")


def form_from(data):
    return CostaForm.from_json(data, Alphabet.of(data["alphabet"]))


@pytest.fixture
def aba_form():
    """a b* a"""
    return CostaForm.build(AB, 0, ["a", "a"], ["b"])


class TestValidation:
    """Test the bridge constraints of a form."""

    def test_word_count(self):
        with pytest.raises(CostaFormError):
            CostaForm.build(AB, 0, ["a", "b"], [])

    def test_negative_r(self):
        with pytest.raises(CostaFormError):
            CostaForm.build(AB, -1, ["a"], [])

    def test_empty_letter_set(self):
        with pytest.raises(CostaFormError):
            CostaForm.build(AB, 0, ["", ""], [""])

    def test_bridge_word_must_escape_both_sets(self):
        with pytest.raises(CostaFormError):
            CostaForm.build(ABC, 0, ["", "a", ""], ["a", "b"])

    def test_empty_bridge_needs_incomparable_sets(self):
        with pytest.raises(CostaFormError):
            CostaForm.build(ABC, 0, ["", "", ""], ["a", "ab"])

    def test_letter_outside_alphabet(self):
        with pytest.raises(CostaFormError):
            CostaForm.build(AB, 0, ["c"], [])


class TestLanguage:
    """Test the concatenation a form describes."""

    @pytest.mark.parametrize(
        "word,expected",
        [("aa", True), ("aba", True), ("abba", True), ("a", False), ("ab", False), ("aab", False)],
    )
    def test_single_letter_set(self, aba_form, word, expected):
        assert member(costa_lang(aba_form), word_of(word)) is expected

    def test_empty_bridge_with_repetitions(self):
        """(a+c)* a c^(>=1) b (b+c)* for r = 1."""
        form = CostaForm.build(ABC, 1, ["", "", ""], ["ac", "bc"])
        language = costa_lang(form)
        assert member(language, word_of("acb"))
        assert member(language, word_of("cacccbcb"))
        assert not member(language, word_of("ab"))
        assert not member(language, word_of("acbab"))

    def test_costa_lang_node(self, aba_form):
        node = CostaLang(aba_form)
        assert node.alphabet == AB
        assert member(node, word_of("abba"))
        assert expr_from_json(expr_to_json(node)) == node


class TestThresholdDescription:
    """Test that costa_K describes the same language."""

    def test_anchors_do_not_overlap(self, aba_form):
        assert not member(costa_K(aba_form), word_of("a"))
        assert member(costa_K(aba_form), word_of("aa"))

    @pytest.mark.parametrize("data", DEFAULT_COSTA_FORMS, ids=lambda d: str(d["us"]))
    def test_equal_languages(self, data):
        form = form_from(data)
        result = dfa_equal(compile_dfa(costa_lang(form)), compile_dfa(costa_K(form)))
        assert result, result.counterexample

    @pytest.mark.parametrize("data", DEFAULT_COSTA_FORMS, ids=lambda d: str(d["us"]))
    def test_languages_are_in_da(self, data):
        monoid, _, _ = syntactic_monoid(compile_dfa(costa_lang(form_from(data))))
        assert check_variety(monoid, Variety.DA)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
