"""Deterministic automata: construction, minimization, products and equivalence.

Automata are built by crawling a ``follow`` function from an initial state, the
way greenery builds FSMs, then minimized by partition refinement. Expressions
compile bottom-up with one minimization per node.
"""

from __future__ import annotations

import functools
import logging
from collections import deque
from collections.abc import Callable, Hashable, Iterable
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .config import get_state_cap
from .errors import AlphabetMismatchError, CapExceededError, UnsupportedExpressionError
from .expressions import (
    Complement,
    Concat,
    Factor,
    Intersection,
    LangExpr,
    Letters,
    Prefix,
    ShuffleIdeal,
    SingleWord,
    Star,
    Suffix,
    Union,
)
from .words import Alphabet, Word

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Dfa:
    """Complete DFA; ``transitions[state][i]`` follows ``alphabet.symbols[i]``."""

    alphabet: Alphabet
    states: int
    start: int
    transitions: tuple[tuple[int, ...], ...]
    accepting: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        if not 0 <= self.start < self.states:
            raise ValueError(f"start state {self.start} out of range")
        if len(self.transitions) != self.states:
            raise ValueError("transition table must have one row per state")
        for row in self.transitions:
            if len(row) != len(self.alphabet):
                raise ValueError("transition table is not total")
            for target in row:
                if not 0 <= target < self.states:
                    raise ValueError(f"transition target {target} out of range")
        for state in self.accepting:
            if not 0 <= state < self.states:
                raise ValueError(f"accepting state {state} out of range")

    def run_indices(self, indices: Iterable[int], state: int | None = None) -> int:
        state = self.start if state is None else state
        transitions = self.transitions
        for i in indices:
            state = transitions[state][i]
        return state

    def run(self, word: Word) -> int:
        return self.run_indices(self.alphabet.indices(word))

    def accepts(self, word: Word) -> bool:
        return self.run(word) in self.accepting

    def accepts_indices(self, indices: Iterable[int]) -> bool:
        return self.run_indices(indices) in self.accepting


def crawl(
    alphabet: Alphabet,
    initial: Hashable,
    final: Callable[[Hashable], bool],
    follow: Callable[[Hashable, int], Hashable],
    state_cap: int | None = None,
    subject: str = "",
) -> Dfa:
    """Explore the states reachable from ``initial`` and minimize the result."""
    cap = state_cap or get_state_cap()
    index = {initial: 0}
    states = [initial]
    rows = []
    accepting = set()
    i = 0
    while i < len(states):
        state = states[i]
        if final(state):
            accepting.add(i)
        row = []
        for symbol in range(len(alphabet)):
            nxt = follow(state, symbol)
            j = index.get(nxt)
            if j is None:
                j = len(states)
                if j >= cap:
                    raise CapExceededError("dfa states", cap, subject)
                index[nxt] = j
                states.append(nxt)
            row.append(j)
        rows.append(tuple(row))
        i += 1
    return minimize(Dfa(alphabet, len(states), 0, tuple(rows), frozenset(accepting)))


def minimize(dfa: Dfa) -> Dfa:
    """Minimal DFA, states numbered by BFS from the start in alphabet order."""
    reachable = _bfs_order(dfa)
    position = {s: i for i, s in enumerate(reachable)}
    table = np.array(
        [[position[t] for t in dfa.transitions[s]] for s in reachable],
        dtype=np.int64,
    ).reshape(len(reachable), len(dfa.alphabet))
    blocks = np.array([s in dfa.accepting for s in reachable], dtype=np.int64)
    count = len(np.unique(blocks))
    while True:
        signature = np.column_stack([blocks, blocks[table]])
        _, refined = np.unique(signature, axis=0, return_inverse=True)
        refined = refined.reshape(-1)
        refined_count = int(refined.max()) + 1
        blocks = refined
        if refined_count == count:
            break
        count = refined_count

    representative = {}
    for state in range(len(reachable)):
        representative.setdefault(int(blocks[state]), state)
    quotient = Dfa(
        dfa.alphabet,
        count,
        int(blocks[0]),
        tuple(
            tuple(int(blocks[t]) for t in table[representative[b]])
            for b in range(count)
        ),
        frozenset(int(blocks[position[s]]) for s in dfa.accepting if s in position),
    )
    return _renumber(quotient)


def _bfs_order(dfa: Dfa) -> list[int]:
    seen = {dfa.start}
    order = [dfa.start]
    queue = deque(order)
    while queue:
        state = queue.popleft()
        for target in dfa.transitions[state]:
            if target not in seen:
                seen.add(target)
                order.append(target)
                queue.append(target)
    return order


def _renumber(dfa: Dfa) -> Dfa:
    order = _bfs_order(dfa)
    position = {s: i for i, s in enumerate(order)}
    return Dfa(
        dfa.alphabet,
        len(order),
        0,
        tuple(tuple(position[t] for t in dfa.transitions[s]) for s in order),
        frozenset(position[s] for s in dfa.accepting if s in position),
    )


def _check_alphabets(d1: Dfa, d2: Dfa) -> None:
    if d1.alphabet != d2.alphabet:
        raise AlphabetMismatchError(
            f"automata over {d1.alphabet} and {d2.alphabet} cannot be combined"
        )


def product(
    d1: Dfa,
    d2: Dfa,
    accept: Callable[[bool, bool], bool],
    state_cap: int | None = None,
    subject: str = "",
) -> Dfa:
    _check_alphabets(d1, d2)
    return crawl(
        d1.alphabet,
        (d1.start, d2.start),
        lambda s: accept(s[0] in d1.accepting, s[1] in d2.accepting),
        lambda s, a: (d1.transitions[s[0]][a], d2.transitions[s[1]][a]),
        state_cap,
        subject,
    )


def intersect(d1: Dfa, d2: Dfa, state_cap: int | None = None, subject: str = "") -> Dfa:
    return product(d1, d2, lambda x, y: x and y, state_cap, subject)


def union(d1: Dfa, d2: Dfa, state_cap: int | None = None, subject: str = "") -> Dfa:
    return product(d1, d2, lambda x, y: x or y, state_cap, subject)


def difference(d1: Dfa, d2: Dfa, state_cap: int | None = None, subject: str = "") -> Dfa:
    return product(d1, d2, lambda x, y: x and not y, state_cap, subject)


def complement(dfa: Dfa) -> Dfa:
    return Dfa(
        dfa.alphabet,
        dfa.states,
        dfa.start,
        dfa.transitions,
        frozenset(range(dfa.states)) - dfa.accepting,
    )


def shortest_member(dfa: Dfa) -> Word | None:
    """Shortest, then alphabet-least, accepted word; None for the empty language."""
    parents: dict[int, tuple[int, int] | None] = {dfa.start: None}
    queue = deque([dfa.start])
    while queue:
        state = queue.popleft()
        if state in dfa.accepting:
            return _trace_back(dfa.alphabet, parents, state)
        for a, target in enumerate(dfa.transitions[state]):
            if target not in parents:
                parents[target] = (state, a)
                queue.append(target)
    return None


def _trace_back(alphabet: Alphabet, parents: dict, state) -> Word:
    letters = []
    while parents[state] is not None:
        state, a = parents[state]
        letters.append(alphabet.symbols[a])
    return tuple(reversed(letters))


def is_empty(dfa: Dfa) -> bool:
    return shortest_member(dfa) is None


class Equivalence(NamedTuple):
    """Outcome of an equivalence test; truthy iff the languages are equal."""

    equal: bool
    counterexample: Word | None = None

    def __bool__(self) -> bool:
        return self.equal


def dfa_equal(d1: Dfa, d2: Dfa) -> Equivalence:
    """Compare languages by BFS over the product; return a shortest witness."""
    _check_alphabets(d1, d2)
    initial = (d1.start, d2.start)
    parents: dict[tuple[int, int], tuple | None] = {initial: None}
    queue = deque([initial])
    while queue:
        pair = queue.popleft()
        if (pair[0] in d1.accepting) != (pair[1] in d2.accepting):
            return Equivalence(False, _trace_back(d1.alphabet, parents, pair))
        for a in range(len(d1.alphabet)):
            nxt = (d1.transitions[pair[0]][a], d2.transitions[pair[1]][a])
            if nxt not in parents:
                parents[nxt] = (pair, a)
                queue.append(nxt)
    return Equivalence(True)


# Atom automata


def _shuffle_dfa(alphabet: Alphabet, word: Word, cap: int) -> Dfa:
    target = alphabet.indices(word)
    size = len(target)

    def follow(matched, a):
        if matched < size and target[matched] == a:
            return matched + 1
        return matched

    return crawl(alphabet, 0, lambda m: m == size, follow, cap)


def _kmp_table(target: tuple[int, ...], letters: int) -> list[list[int]]:
    """Automaton of the longest prefix of ``target`` that is a suffix of the input."""
    size = len(target)
    table = [[0] * letters for _ in range(size + 1)]
    if size:
        table[0][target[0]] = 1
    fallback = 0
    for state in range(1, size + 1):
        for a in range(letters):
            table[state][a] = table[fallback][a]
        if state < size:
            table[state][target[state]] = state + 1
            fallback = table[fallback][target[state]]
    return table


def _factor_dfa(alphabet: Alphabet, word: Word, cap: int) -> Dfa:
    size = len(word)
    table = _kmp_table(alphabet.indices(word), len(alphabet))
    return crawl(
        alphabet,
        0,
        lambda s: s == size,
        lambda s, a: size if s == size else table[s][a],
        cap,
    )


def _suffix_dfa(alphabet: Alphabet, word: Word, cap: int) -> Dfa:
    size = len(word)
    table = _kmp_table(alphabet.indices(word), len(alphabet))
    return crawl(alphabet, 0, lambda s: s == size, lambda s, a: table[s][a], cap)


def _prefix_dfa(alphabet: Alphabet, word: Word, exact: bool, cap: int) -> Dfa:
    target = alphabet.indices(word)
    size = len(target)
    dead = -1

    def follow(s, a):
        if s == dead:
            return dead
        if s == size:
            return dead if exact else size
        return s + 1 if target[s] == a else dead

    return crawl(alphabet, 0, lambda s: s == size, follow, cap)


def _letters_dfa(alphabet: Alphabet, letters: frozenset) -> Dfa:
    allowed = {alphabet.index(s) for s in letters}
    return crawl(
        alphabet,
        0,
        lambda s: s == 1,
        lambda s, a: 1 if s == 0 and a in allowed else 2,
    )


def _concat_dfa(left: Dfa, right: Dfa, cap: int, subject: str) -> Dfa:
    def enter(state, tail):
        if state in left.accepting:
            tail = tail | {right.start}
        return (state, frozenset(tail))

    def follow(current, a):
        state, tail = current
        return enter(
            left.transitions[state][a], {right.transitions[t][a] for t in tail}
        )

    return crawl(
        left.alphabet,
        enter(left.start, frozenset()),
        lambda s: bool(s[1] & right.accepting),
        follow,
        cap,
        subject,
    )


def _star_dfa(inner: Dfa, cap: int, subject: str) -> Dfa:
    # omega marks "just finished a piece"; it behaves like the inner start
    omega = -1

    def follow(current, a):
        nxt = set()
        for state in current:
            source = inner.start if state == omega else state
            target = inner.transitions[source][a]
            nxt.add(target)
            if target in inner.accepting:
                nxt.add(omega)
        return frozenset(nxt)

    return crawl(
        inner.alphabet, frozenset([omega]), lambda s: omega in s, follow, cap, subject
    )


def _fold(
    parts: tuple[LangExpr, ...],
    combine: Callable[[Dfa, Dfa], Dfa],
    empty: Dfa,
) -> Dfa:
    if not parts:
        return empty
    compiled = sorted((compile_dfa(p) for p in parts), key=lambda d: d.states)
    result = compiled[0]
    for dfa in compiled[1:]:
        result = combine(result, dfa)
    return result


def _constant_dfa(alphabet: Alphabet, accept: bool) -> Dfa:
    return Dfa(
        alphabet,
        1,
        0,
        ((0,) * len(alphabet),),
        frozenset([0]) if accept else frozenset(),
    )


def compile_dfa(expr: LangExpr, state_cap: int | None = None) -> Dfa:
    """Minimal complete DFA for ``expr``."""
    return _compile(expr, state_cap or get_state_cap())


@functools.lru_cache(maxsize=4096)
def _compile(expr: LangExpr, cap: int) -> Dfa:
    subject = expr.render(ascii=True)
    alphabet = expr.alphabet
    if isinstance(expr, ShuffleIdeal):
        dfa = _shuffle_dfa(alphabet, expr.word, cap)
    elif isinstance(expr, Factor):
        dfa = _factor_dfa(alphabet, expr.word, cap)
    elif isinstance(expr, Prefix):
        dfa = _prefix_dfa(alphabet, expr.word, exact=False, cap=cap)
    elif isinstance(expr, SingleWord):
        dfa = _prefix_dfa(alphabet, expr.word, exact=True, cap=cap)
    elif isinstance(expr, Suffix):
        dfa = _suffix_dfa(alphabet, expr.word, cap)
    elif isinstance(expr, Letters):
        dfa = _letters_dfa(alphabet, expr.letters)
    elif isinstance(expr, Complement):
        dfa = complement(_compile(expr.inner, cap))
    elif isinstance(expr, Star):
        dfa = _star_dfa(_compile(expr.inner, cap), cap, subject)
    elif isinstance(expr, Intersection):
        dfa = _fold(
            expr.parts,
            lambda x, y: intersect(x, y, cap, subject),
            _constant_dfa(alphabet, True),
        )
    elif isinstance(expr, Union):
        dfa = _fold(
            expr.parts,
            lambda x, y: union(x, y, cap, subject),
            _constant_dfa(alphabet, False),
        )
    elif isinstance(expr, Concat):
        if not expr.parts:
            dfa = _compile(SingleWord(alphabet, ()), cap)
        else:
            dfa = _compile(expr.parts[0], cap)
            for part in expr.parts[1:]:
                dfa = _concat_dfa(dfa, _compile(part, cap), cap, subject)
    else:
        expanded = expr.expand()
        if expanded is None:
            raise UnsupportedExpressionError(
                f"no automaton construction for {type(expr).__name__}"
            )
        dfa = _compile(expanded, cap)
    logger.debug(f"compiled {subject[:80]} to {dfa.states} states")
    return dfa
