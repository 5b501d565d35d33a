"""Tests for compiling threshold dot-depth one expressions to programs over J."""

import pytest

from mpj_workbench.algebra import Variety
from mpj_workbench.costa import CostaForm, CostaLang
from mpj_workbench.errors import CapExceededError, UnsupportedExpressionError
from mpj_workbench.expressions import (
    Complement,
    Intersection,
    Prefix,
    ShuffleIdeal,
    Star,
    Suffix,
    ThresholdBlock,
    Union,
    member,
)
from mpj_workbench.programs import components, recognizes
from mpj_workbench.reductions import DecoratedSweepPlan, building_block_language
from mpj_workbench.tddo import (
    building_block_program,
    compile_tddo,
    decorated_blocks,
    target_in_variety,
)
from mpj_workbench.words import Alphabet, enumerate_words, format_word, word_of

AB = Alphabet.of("ab")
ABC = Alphabet.of("abc")


def mismatches(program, expr, n):
    return [
        format_word(w)
        for w in enumerate_words(expr.alphabet, n, n)
        if recognizes(program, w) != member(expr, w)
    ]


def expressions():
    return [
        Prefix(AB, word_of("ab")),
        Suffix(AB, word_of("ba")),
        ShuffleIdeal(ABC, word_of("cab")),
        ThresholdBlock(AB, (word_of("ab"),), 2),
        ThresholdBlock(ABC, (word_of("ab"), word_of("c")), 2),
        ThresholdBlock(AB, (word_of("a"), word_of("b")), 3),
        pytest.param(
            ThresholdBlock(ABC, (word_of("ab"), word_of("c")), 3), marks=pytest.mark.slow
        ),
        pytest.param(ThresholdBlock(AB, (word_of("aab"),), 3), marks=pytest.mark.slow),
        Complement(ThresholdBlock(AB, (word_of("ba"),), 2)),
        Intersection(AB, (Prefix(AB, word_of("a")), ShuffleIdeal(AB, word_of("bb")))),
        Union(AB, (Suffix(AB, word_of("aa")), ThresholdBlock(AB, (word_of("ab"),), 2))),
        Intersection(AB, ()),
        Union(AB, ()),
    ]


class TestCompileTddo:
    """Test compiled programs against direct membership."""

    @pytest.mark.parametrize("expr", expressions(), ids=lambda e: e.render(ascii=True))
    def test_recognizes_length_slices(self, expr):
        for n in range(0, 5):
            program = compile_tddo(expr, n)
            assert mismatches(program, expr, n) == [], f"n={n}"

    @pytest.mark.parametrize("expr", expressions(), ids=lambda e: e.render(ascii=True))
    def test_targets_are_j_trivial(self, expr):
        assert target_in_variety(compile_tddo(expr, 4), Variety.J)

    def test_repeated_letters_use_residues(self):
        block = ThresholdBlock(AB, (word_of("aa"),), 2)
        for n in range(0, 5):
            program = compile_tddo(block, n)
            assert target_in_variety(program)
            assert mismatches(program, block, n) == [], f"n={n}"

    def test_costa_form(self):
        form = CostaForm.build(AB, 0, ["a", "a"], ["b"])
        node = CostaLang(form)
        for n in range(0, 5):
            assert mismatches(compile_tddo(node, n), node, n) == [], f"n={n}"

    def test_unsupported_expression(self):
        with pytest.raises(UnsupportedExpressionError):
            compile_tddo(Star(ShuffleIdeal(AB, word_of("a"))), 3)


class TestBuildingBlocks:
    """Test decorated-sweep programs and residue decoration."""

    def test_building_block_program(self):
        plan = DecoratedSweepPlan(AB, word_of("ab"), alpha=1)
        language = building_block_language(plan)
        for n in range(0, 5):
            program = building_block_program(plan, n)
            assert target_in_variety(program)
            assert mismatches(program, language, n) == [], f"n={n}"

    def test_target_has_one_component_per_leaf(self):
        plan = DecoratedSweepPlan(ABC, word_of("ab"), x2=word_of("ccc"), alpha=2)
        language = building_block_language(plan)
        for n in range(0, 5):
            program = building_block_program(plan, n)
            assert len(components(program.target)) == plan.alpha + 1
            assert target_in_variety(program)
            assert mismatches(program, language, n) == [], f"n={n}"

    def test_decorated_blocks(self):
        blocks = decorated_blocks(ThresholdBlock(AB, (word_of("aa"),), 2))
        rendered = sorted(b.render(ascii=True) for b in blocks)
        assert rendered == ["<a:0,a:1>_2", "<a:1,a:0>_2"]

    def test_decorated_block_cap(self):
        with pytest.raises(CapExceededError):
            decorated_blocks(ThresholdBlock(AB, (word_of("aa"),), 2), cap=1)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
