"""A small regular-expression syntax compiled to expressions.

Grammar::

    union   := concat ('+' concat)*
    concat  := factor*
    factor  := atom ('*' | '+')*      postfix '+' only before ')' or the end
    atom    := letter | '(' union ')' | letters '-shuffle'

Letters are single alphanumeric characters. ``ab-shuffle`` is the shuffle
ideal of ``ab`` and ``()`` is the empty word.
"""

from __future__ import annotations

from .errors import RegexSyntaxError
from .expressions import Concat, LangExpr, ShuffleIdeal, SingleWord, Star, Union
from .words import Alphabet, Symbol

SHUFFLE_SUFFIX = "-shuffle"


def regex_letters(text: str) -> list[str]:
    """Letters used by ``text``, in order of first appearance."""
    stripped = text.replace(SHUFFLE_SUFFIX, "")
    return list(dict.fromkeys(c for c in stripped if c.isalnum()))


class _Parser:
    def __init__(self, text: str, alphabet: Alphabet):
        self.text = "".join(text.split())
        self.alphabet = alphabet
        self.pos = 0

    def error(self, message: str) -> RegexSyntaxError:
        return RegexSyntaxError(f"{message} at offset {self.pos} in {self.text!r}")

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def letter(self, c: str) -> Symbol:
        symbol = Symbol(c)
        if symbol not in self.alphabet:
            raise self.error(f"letter {c!r} is not in {self.alphabet}")
        return symbol

    def parse(self) -> LangExpr:
        expr = self.union()
        if self.pos != len(self.text):
            raise self.error(f"unexpected {self.peek()!r}")
        return expr

    def union(self) -> LangExpr:
        parts = [self.concat()]
        while self.peek() == "+":
            self.pos += 1
            parts.append(self.concat())
        return parts[0] if len(parts) == 1 else Union(self.alphabet, tuple(parts))

    def concat(self) -> LangExpr:
        parts: list[LangExpr] = []
        while self.peek() and self.peek() not in "+)":
            parts.extend(self.factor())
        if not parts:
            return SingleWord(self.alphabet, ())
        return parts[0] if len(parts) == 1 else Concat(self.alphabet, tuple(parts))

    def factor(self) -> list[LangExpr]:
        atoms = self.atoms()
        last = atoms[-1]
        while True:
            c = self.peek()
            if c == "*":
                self.pos += 1
                last = Star(last)
            elif c == "+" and self.text[self.pos + 1 : self.pos + 2] in ("", ")"):
                self.pos += 1
                last = Concat(self.alphabet, (last, Star(last)))
            else:
                break
        return atoms[:-1] + [last]

    def atoms(self) -> list[LangExpr]:
        c = self.peek()
        if c == "(":
            self.pos += 1
            inner = self.union()
            if self.peek() != ")":
                raise self.error("missing ')'")
            self.pos += 1
            return [inner]
        if c.isalnum():
            start = self.pos
            while self.peek().isalnum():
                self.pos += 1
            run = self.text[start : self.pos]
            if self.text.startswith(SHUFFLE_SUFFIX, self.pos):
                self.pos += len(SHUFFLE_SUFFIX)
                return [ShuffleIdeal(self.alphabet, tuple(self.letter(x) for x in run))]
            return [SingleWord(self.alphabet, (self.letter(x),)) for x in run]
        raise self.error(f"unexpected {c!r}" if c else "unexpected end of input")


def parse_regex(text: str, alphabet: Alphabet | None = None) -> LangExpr:
    """Parse ``text``; the alphabet defaults to the letters it mentions."""
    if alphabet is None:
        letters = regex_letters(text)
        if not letters:
            raise RegexSyntaxError(f"no letters in {text!r}; pass an alphabet")
        alphabet = Alphabet.of(sorted(letters))
    return _Parser(text, alphabet).parse()
