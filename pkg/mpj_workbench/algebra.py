"""Finite semigroups and monoids given by multiplication tables.

Tables are numpy integer arrays; the variety equations are checked with
vectorised scans over element pairs. Constructed monoids number their elements
by BFS from the identity over the letter images, in alphabet order.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Hashable, Iterable, Sequence
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .automata import Dfa, minimize
from .config import get_monoid_cap, get_quotient_cap
from .errors import CapExceededError, IdentityLawError, NonAssociativeError
from .words import EMPTY, Alphabet, Symbol, Word, format_word

logger = logging.getLogger(__name__)

# Row chunk for pairwise equation scans; bounds memory at chunk * m entries.
_CHUNK = 256


class Variety(str, Enum):
    A = "A"
    DA = "DA"
    J = "J"


class FiniteSemigroup:
    """A finite semigroup, optionally with a distinguished identity."""

    def __init__(
        self,
        table: Sequence[Sequence[int]] | np.ndarray,
        identity: int | None = None,
        *,
        labels: Sequence[str] | None = None,
        check: bool = True,
    ):
        table = np.array(table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise ValueError(f"table must be square and nonempty, got {table.shape}")
        size = table.shape[0]
        if table.min() < 0 or table.max() >= size:
            raise ValueError("table entries must lie in [0, size)")
        if identity is not None and not 0 <= identity < size:
            raise IdentityLawError(f"identity {identity} out of range")
        if check:
            _check_associative(table)
            if identity is not None:
                _check_identity(table, identity)
        table.setflags(write=False)
        self.table = table
        self.identity = identity
        self.labels = tuple(labels) if labels is not None else None

    @property
    def size(self) -> int:
        return self.table.shape[0]

    @property
    def elements(self) -> range:
        return range(self.size)

    def multiply(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def product(self, elements: Iterable[int]) -> int:
        result = self.identity
        for x in elements:
            result = x if result is None else int(self.table[result, x])
        if result is None:
            raise ValueError("empty product in a semigroup without identity")
        return result

    def power(self, x: int, n: int) -> int:
        if n < 1:
            if self.identity is None:
                raise ValueError("non-positive power in a semigroup without identity")
            return self.identity
        result = x
        for _ in range(n - 1):
            result = int(self.table[result, x])
        return result

    def idempotents(self) -> list[int]:
        diagonal = self.table[np.arange(self.size), np.arange(self.size)]
        return [int(e) for e in np.flatnonzero(diagonal == np.arange(self.size))]

    @cached_property
    def omega(self) -> int:
        return idempotent_power(self)

    @cached_property
    def omega_powers(self) -> np.ndarray:
        """Array of x^omega for every element x."""
        return _powers(self.table, self.omega)

    @cached_property
    def rows(self) -> list[list[int]]:
        """The table as nested lists, for tight evaluation loops."""
        return self.table.tolist()

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteSemigroup):
            return NotImplemented
        return (
            type(self) is type(other)
            and self.identity == other.identity
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self) -> int:
        return hash((self.identity, self.table.tobytes()))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(size={self.size}, identity={self.identity})"


class FiniteMonoid(FiniteSemigroup):
    """A finite semigroup with identity."""

    def __init__(
        self,
        table: Sequence[Sequence[int]] | np.ndarray,
        identity: int,
        *,
        labels: Sequence[str] | None = None,
        check: bool = True,
    ):
        if identity is None:
            raise IdentityLawError("a monoid needs an identity")
        super().__init__(table, identity, labels=labels, check=check)

    @classmethod
    def trivial(cls) -> FiniteMonoid:
        return cls([[0]], 0, labels=["1"], check=False)


def _check_associative(table: np.ndarray) -> None:
    for a in range(table.shape[0]):
        left = table[table[a]]
        right = table[a][table]
        if not np.array_equal(left, right):
            b, c = np.argwhere(left != right)[0]
            raise NonAssociativeError((a, int(b), int(c)))


def _check_identity(table: np.ndarray, identity: int) -> None:
    expected = np.arange(table.shape[0])
    if not (
        np.array_equal(table[identity], expected)
        and np.array_equal(table[:, identity], expected)
    ):
        raise IdentityLawError(f"element {identity} is not a two-sided identity")


def validate_and_build(
    table: Sequence[Sequence[int]] | np.ndarray,
    identity: int | None = None,
    labels: Sequence[str] | None = None,
) -> FiniteSemigroup:
    """Validate a table and build a monoid (identity given) or a semigroup."""
    if identity is None:
        return FiniteSemigroup(table, labels=labels)
    return FiniteMonoid(table, identity, labels=labels)


def _powers(table: np.ndarray, n: int) -> np.ndarray:
    base = np.arange(table.shape[0])
    result = base.copy()
    for _ in range(n - 1):
        result = table[result, base]
    return result


def idempotent_power(semigroup: FiniteSemigroup) -> int:
    """Least omega > 0 with x^omega = x^(2 omega) for every element."""
    table = semigroup.table
    base = np.arange(semigroup.size)
    current = base.copy()
    omega = 1
    while not np.array_equal(table[current, current], current):
        current = table[current, base]
        omega += 1
    return omega


def _all_pairs(
    semigroup: FiniteSemigroup, predicate: Callable[[np.ndarray, np.ndarray], bool]
) -> bool:
    size = semigroup.size
    ys = np.arange(size)[None, :]
    for start in range(0, size, _CHUNK):
        xs = np.arange(start, min(start + _CHUNK, size))[:, None]
        if not predicate(xs, ys):
            return False
    return True


def check_variety(semigroup: FiniteSemigroup, variety: Variety | str) -> bool:
    """Check the defining omega-equation of A, DA or J on all element pairs."""
    variety = Variety(variety)
    table = semigroup.table
    omega = semigroup.omega_powers
    if variety is Variety.A:
        return bool(np.array_equal(table[omega, np.arange(semigroup.size)], omega))

    def holds(xs, ys):
        e = omega[table[xs, ys]]
        if variety is Variety.J:
            return np.array_equal(table[e, xs], e) and np.array_equal(table[ys, e], e)
        return np.array_equal(table[table[e, xs], e], e)

    return _all_pairs(semigroup, holds)


def restrict(
    semigroup: FiniteSemigroup,
    elements: Iterable[int],
    identity: int | None = None,
) -> FiniteSemigroup:
    """Sub-structure on a closed subset; ``identity`` is an original index."""
    chosen = sorted(set(int(x) for x in elements))
    lookup = np.full(semigroup.size, -1, dtype=np.int64)
    lookup[chosen] = np.arange(len(chosen))
    sub = lookup[semigroup.table[np.ix_(chosen, chosen)]]
    if (sub < 0).any():
        raise ValueError("subset is not closed under multiplication")
    labels = [semigroup.label(x) for x in chosen] if semigroup.labels else None
    if identity is None:
        return FiniteSemigroup(sub, labels=labels, check=False)
    return FiniteMonoid(sub, int(lookup[identity]), labels=labels, check=False)


def neutral_element(semigroup: FiniteSemigroup, elements: Iterable[int]) -> int | None:
    """Element of the subset that is neutral for the subset, if any."""
    chosen = np.array(sorted(set(elements)), dtype=np.int64)
    table = semigroup.table
    for e in chosen:
        if np.array_equal(table[e, chosen], chosen) and np.array_equal(
            table[chosen, e], chosen
        ):
            return int(e)
    return None


def is_locally_J(semigroup: FiniteSemigroup) -> bool:
    """True iff eSe satisfies the J equations for every idempotent e."""
    table = semigroup.table
    for e in semigroup.idempotents():
        local = np.unique(table[table[e], e])
        if not check_variety(restrict(semigroup, local, identity=e), Variety.J):
            logger.debug(f"local monoid at idempotent {e} is not in J")
            return False
    return True


def direct_product(
    first: FiniteMonoid, second: FiniteMonoid, cap: int | None = None
) -> FiniteMonoid:
    """Componentwise product; element (i, j) has index i * |second| + j."""
    cap = cap or get_monoid_cap()
    m1, m2 = first.size, second.size
    if m1 * m2 > cap:
        raise CapExceededError("monoid elements", cap, "direct product")
    table = (
        first.table[:, None, :, None] * m2 + second.table[None, :, None, :]
    ).reshape(m1 * m2, m1 * m2)
    labels = None
    if first.labels and second.labels:
        labels = [f"({a},{b})" for a in first.labels for b in second.labels]
    return FiniteMonoid(
        table, first.identity * m2 + second.identity, labels=labels, check=False
    )


@dataclass(frozen=True, eq=False)
class GeneratedMorphism:
    """Morphism from the free monoid over ``alphabet`` given by letter images."""

    alphabet: Alphabet
    target: FiniteSemigroup
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != len(self.alphabet):
            raise ValueError("one image per letter is required")
        for x in self.images:
            if not 0 <= x < self.target.size:
                raise ValueError(f"letter image {x} out of range")

    @property
    def letter_image(self) -> dict[Symbol, int]:
        return dict(zip(self.alphabet.symbols, self.images))

    def of(self, symbol: Symbol) -> int:
        return self.images[self.alphabet.index(symbol)]

    def image(self, word: Word) -> int:
        return self.target.product(self.of(s) for s in word)

    @cached_property
    def surjective(self) -> bool:
        generated = set(self.images)
        if self.target.identity is not None:
            generated.add(self.target.identity)
        frontier = list(generated)
        table = self.target.table
        while frontier:
            x = frontier.pop()
            for a in self.images:
                y = int(table[x, a])
                if y not in generated:
                    generated.add(y)
                    frontier.append(y)
        return len(generated) == self.target.size


class Closure(NamedTuple):
    elements: list
    table: np.ndarray
    images: tuple[int, ...]
    words: list[Word]


def cayley_closure(
    identity: Hashable,
    alphabet: Alphabet,
    step: Callable[[Hashable, int], Hashable],
    cap: int,
    what: str,
) -> Closure:
    """BFS closure of ``identity`` under right letter actions, with its table.

    The product x*y is read off the BFS tree of y: if y = p·a then
    x*y = (x*p)·a, one column per element.
    """
    elements = [identity]
    index = {identity: 0}
    parents: list[tuple[int, int] | None] = [None]
    words: list[Word] = [EMPTY]
    right = []
    i = 0
    while i < len(elements):
        row = []
        for a in range(len(alphabet)):
            nxt = step(elements[i], a)
            j = index.get(nxt)
            if j is None:
                j = len(elements)
                if j >= cap:
                    raise CapExceededError("monoid elements", cap, what)
                index[nxt] = j
                elements.append(nxt)
                parents.append((i, a))
                words.append(words[i] + (alphabet.symbols[a],))
            row.append(j)
        right.append(row)
        i += 1
    action = np.array(right, dtype=np.int64).reshape(len(elements), len(alphabet))
    size = len(elements)
    table = np.empty((size, size), dtype=np.int64)
    table[:, 0] = np.arange(size)
    for y in range(1, size):
        p, a = parents[y]
        table[:, y] = action[table[:, p], a]
    images = tuple(int(action[0, a]) for a in range(len(alphabet)))
    logger.debug(f"closure for {what}: {size} elements")
    return Closure(elements, table, images, words)


def _word_labels(words: list[Word]) -> list[str]:
    return [format_word(w) if w else "1" for w in words]


class MonoidWithMorphism(NamedTuple):
    monoid: FiniteMonoid
    morphism: GeneratedMorphism


class SyntacticMonoid(NamedTuple):
    monoid: FiniteMonoid
    morphism: GeneratedMorphism
    accept: frozenset[int]


def _transition_closure(dfa: Dfa, cap: int | None) -> Closure:
    transitions = dfa.transitions

    def step(f, a):
        return tuple(transitions[q][a] for q in f)

    return cayley_closure(
        tuple(range(dfa.states)),
        dfa.alphabet,
        step,
        cap or get_monoid_cap(),
        "transition monoid",
    )


def transition_monoid(dfa: Dfa, cap: int | None = None) -> MonoidWithMorphism:
    """Monoid of state transformations generated by the letters."""
    closure = _transition_closure(dfa, cap)
    monoid = FiniteMonoid(closure.table, 0, labels=_word_labels(closure.words), check=False)
    return MonoidWithMorphism(
        monoid, GeneratedMorphism(dfa.alphabet, monoid, closure.images)
    )


def syntactic_monoid(dfa: Dfa, cap: int | None = None) -> SyntacticMonoid:
    """Transition monoid of the minimal DFA, with the accepting image set."""
    minimal = minimize(dfa)
    closure = _transition_closure(minimal, cap)
    monoid = FiniteMonoid(closure.table, 0, labels=_word_labels(closure.words), check=False)
    accept = frozenset(
        x for x, f in enumerate(closure.elements) if f[minimal.start] in minimal.accepting
    )
    return SyntacticMonoid(
        monoid, GeneratedMorphism(dfa.alphabet, monoid, closure.images), accept
    )


def _generated_subsemigroup(monoid: FiniteSemigroup, generators: Iterable[int]) -> set[int]:
    generators = list(dict.fromkeys(generators))
    found = set(generators)
    frontier = list(generators)
    while frontier:
        x = frontier.pop()
        for a in generators:
            y = int(monoid.table[x, a])
            if y not in found:
                found.add(y)
                frontier.append(y)
    return found


def syntactic_semigroup(dfa: Dfa, cap: int | None = None) -> tuple[FiniteSemigroup, GeneratedMorphism]:
    """Image of the nonempty words under the syntactic morphism."""
    monoid, morphism, _ = syntactic_monoid(dfa, cap)
    elements = sorted(_generated_subsemigroup(monoid, morphism.images))
    identity = monoid.identity if monoid.identity in elements else None
    semigroup = restrict(monoid, elements, identity)
    position = {x: i for i, x in enumerate(elements)}
    return semigroup, GeneratedMorphism(
        dfa.alphabet, semigroup, tuple(position[x] for x in morphism.images)
    )


@dataclass(frozen=True, eq=False)
class StableStructure:
    k: int
    elements: tuple[int, ...]
    stable_semigroup: FiniteSemigroup
    stable_monoid: FiniteMonoid


def length_images(morphism: GeneratedMorphism, length: int) -> frozenset[int]:
    """The set phi(Σ^length)."""
    table = morphism.target.table
    current = {morphism.target.identity} if length == 0 else set(morphism.images)
    for _ in range(length - 1):
        current = {int(table[x, a]) for x in current for a in morphism.images}
    return frozenset(current)


def stable_pair(morphism: GeneratedMorphism) -> StableStructure:
    """Least k with phi(Σ^2k) = phi(Σ^k), its stable semigroup and monoid."""
    monoid = morphism.target
    table = monoid.table
    limit = 2 * monoid.size * monoid.size
    layers = [None, frozenset(morphism.images)]
    k = 1
    while True:
        while len(layers) <= 2 * k:
            if len(layers) > limit:
                raise RuntimeError("stable power search did not converge")
            layers.append(
                frozenset(int(table[x, a]) for x in layers[-1] for a in morphism.images)
            )
        if layers[2 * k] == layers[k]:
            break
        k += 1
    elements = tuple(sorted(layers[k]))
    neutral = neutral_element(monoid, elements)
    semigroup = restrict(monoid, elements, neutral)
    if neutral is not None:
        stable_monoid = restrict(monoid, elements, neutral)
    else:
        stable_monoid = restrict(monoid, set(elements) | {monoid.identity}, monoid.identity)
    logger.debug(f"stable power {k}, stable semigroup of size {len(elements)}")
    return StableStructure(k, elements, semigroup, stable_monoid)


def quotient_by_sim_k(
    alphabet: Alphabet, k: int, cap: int | None = None
) -> MonoidWithMorphism:
    """Quotient of the free monoid by ~k; elements are subword-closed sets."""
    if k < 0:
        raise ValueError("k must be non-negative")

    def step(members, a):
        letter = alphabet.symbols[a]
        return members | frozenset(x + (letter,) for x in members if len(x) < k)

    closure = cayley_closure(
        frozenset([EMPTY]),
        alphabet,
        step,
        cap or get_quotient_cap(),
        f"~{k} quotient over {alphabet}",
    )
    monoid = FiniteMonoid(closure.table, 0, labels=_word_labels(closure.words), check=False)
    return MonoidWithMorphism(monoid, GeneratedMorphism(alphabet, monoid, closure.images))
