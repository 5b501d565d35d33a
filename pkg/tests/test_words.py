"""Tests for alphabets, words and subword combinatorics."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mpj_workbench.errors import AlphabetMismatchError
from mpj_workbench.words import (
    Alphabet,
    Symbol,
    SubwordSet,
    enumerate_index_words,
    enumerate_words,
    format_word,
    is_factor,
    is_subword,
    parse_word,
    sim_k,
    subword_members,
    subword_set,
    word_of,
)

words_ab = st.text(alphabet="ab", max_size=7).map(word_of)
words_abc = st.text(alphabet="abc", max_size=6).map(word_of)


class TestSymbols:
    """Test symbol parsing and decoration."""

    def test_parse_plain_and_tagged(self):
        """Tokens carry an optional dotted tag list."""
        assert Symbol.parse("a") == Symbol("a")
        assert Symbol.parse("a:1.2") == Symbol("a", (1, 2))
        assert str(Symbol("a", (1, 2))) == "a:1.2"

    def test_parse_rejects_empty_base(self):
        with pytest.raises(ValueError):
            Symbol.parse(":1")

    def test_decorate_appends_outermost_tag(self):
        assert Symbol("a").decorate(0).decorate(3) == Symbol("a", (0, 3))


class TestAlphabet:
    """Test alphabet construction and validation."""

    def test_duplicate_symbols_rejected(self):
        with pytest.raises(ValueError):
            Alphabet.of("aa")

    def test_tags_must_start_at_zero(self):
        """Decoration tags at each level are contiguous from 0."""
        with pytest.raises(ValueError):
            Alphabet.of(["a:1"])

    def test_decorated_order(self):
        """Each symbol is followed by its tagged copies."""
        decorated = Alphabet.of("ab").decorated(2)
        assert [str(s) for s in decorated] == ["a:0", "a:1", "b:0", "b:1"]

    def test_word_outside_alphabet(self):
        with pytest.raises(AlphabetMismatchError):
            Alphabet.of("ab").word("abc")

    def test_index_of_missing_symbol(self):
        with pytest.raises(AlphabetMismatchError):
            Alphabet.of("ab").index(Symbol("c"))


class TestWordText:
    """Test the text form of words."""

    def test_plain_words_are_strings(self):
        assert parse_word("abc") == word_of("abc")
        assert format_word(word_of("abc")) == "abc"

    def test_tagged_words_are_comma_separated(self):
        word = parse_word("a:0,b:1")
        assert word == (Symbol("a", (0,)), Symbol("b", (1,)))
        assert format_word(word) == "a:0,b:1"

    def test_empty_word(self):
        assert parse_word("") == ()
        assert format_word(()) == ""


class TestSubwords:
    """Test subword and factor relations."""

    @pytest.mark.parametrize(
        "u,w,expected",
        [
            ("", "", True),
            ("ab", "acb", True),
            ("ba", "ab", False),
            ("aa", "aba", True),
            ("abc", "cba", False),
        ],
    )
    def test_is_subword(self, u, w, expected):
        assert is_subword(word_of(u), word_of(w)) is expected

    @pytest.mark.parametrize(
        "u,w,expected",
        [("ab", "cab", True), ("ab", "acb", False), ("", "a", True), ("aa", "a", False)],
    )
    def test_is_factor(self, u, w, expected):
        assert is_factor(word_of(u), word_of(w)) is expected

    def test_alphabet_checked_when_given(self):
        with pytest.raises(AlphabetMismatchError):
            is_subword(word_of("a"), word_of("c"), Alphabet.of("ab"))

    def test_subword_members(self):
        members = subword_members(word_of("ab"), 2)
        assert members == {(), word_of("a"), word_of("b"), word_of("ab")}

    @pytest.mark.parametrize(
        "u,v,k,expected",
        [
            ("ab", "ba", 1, True),
            ("ab", "ba", 2, False),
            ("abab", "baba", 2, True),
            ("abab", "baba", 3, False),
            ("a", "aa", 1, True),
            ("a", "aa", 2, False),
        ],
    )
    def test_sim_k(self, u, v, k, expected):
        assert sim_k(word_of(u), word_of(v), k) is expected

    @given(words_abc, st.integers(min_value=0, max_value=3))
    def test_power_stabilises_under_sim_k(self, x, k):
        """x^k and x^(k+1) share every subword of length at most k."""
        assert sim_k(x * k, x * (k + 1), k)

    @given(words_ab, words_ab, words_ab, st.integers(min_value=0, max_value=3))
    def test_sim_k_is_a_congruence(self, u, x, y, k):
        """Equivalent words stay equivalent inside any context."""
        assert sim_k(x + u * k + y, x + u * (k + 1) + y, k)


class TestSubwordSet:
    """Test the split rule on subword sets."""

    def test_requires_empty_word(self):
        with pytest.raises(ValueError):
            SubwordSet(1, (word_of("a"),))

    def test_requires_downward_closure(self):
        with pytest.raises(ValueError):
            SubwordSet(2, ((), word_of("ab")))

    def test_rejects_long_members(self):
        with pytest.raises(ValueError):
            SubwordSet(1, ((), word_of("a"), word_of("aa")))

    @given(words_ab, words_ab, st.integers(min_value=0, max_value=4))
    def test_concat_matches_concatenated_word(self, u, v, k):
        assert subword_set(u, k).concat(subword_set(v, k)) == subword_set(u + v, k)

    def test_concat_needs_same_k(self):
        with pytest.raises(ValueError):
            subword_set(word_of("a"), 1).concat(subword_set(word_of("a"), 2))

    def test_str(self):
        assert str(subword_set(word_of("a"), 1)) == "{ε, a}"

    def test_membership_uses_the_member_set(self):
        s = subword_set(word_of("ab"), 2)
        assert s.present == frozenset(s.members)
        assert word_of("ab") in s
        assert word_of("b") in s
        assert word_of("ba") not in s
        assert "ab" not in s


class TestEnumeration:
    """Test word enumeration order and counts."""

    def test_length_lex_order(self):
        words = [format_word(w) for w in enumerate_words(Alphabet.of("abc"), 0, 2)]
        assert len(words) == 13
        assert words[:6] == ["", "a", "b", "c", "aa", "ab"]

    def test_invalid_range(self):
        with pytest.raises(ValueError):
            list(enumerate_words(Alphabet.of("a"), 3, 1))

    def test_index_words(self):
        assert list(enumerate_index_words(2, 2)) == [(0, 0), (0, 1), (1, 0), (1, 1)]


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
