"""Subprogram compression.

For a program P and a word t over its monoid, ``compress_subword_indices``
selects instruction indices I such that, for every I' containing I and every
input w, t is a subword of the trace of P on w iff it is one of the trace of
P[I'] on w. Unioning over all t up to length k gives a subprogram whose traces
are ~k-equivalent to the original ones.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Sequence

from .programs import Program

logger = logging.getLogger(__name__)


def c_k(k: int, alphabet_size: int) -> int:
    """k! · |Σ|^ceil(k/2)."""
    return math.factorial(k) * alphabet_size ** math.ceil(k / 2)


def subword_index_bound(k: int, alphabet_size: int, n: int) -> int:
    return c_k(k, alphabet_size) * n ** math.ceil(k / 2)


def equivalent_length_bound(k: int, monoid_size: int, alphabet_size: int, n: int) -> int:
    words = sum(monoid_size**j for j in range(k + 1))
    return words * subword_index_bound(k, alphabet_size, n)


class _Compressor:
    def __init__(self, program: Program):
        self.letters = len(program.input_alphabet)
        self.steps = [(ins.position, ins.outputs) for ins in program.instructions]
        self.memo: dict[tuple[int, int, tuple], frozenset[int]] = {}

    def _anchors(self, lo: int, hi: int, first, last) -> set[int]:
        """First index per (position, letter) emitting ``first``, last emitting ``last``."""
        anchors: set[int] = set()
        seen_first: set[tuple[int, int]] = set()
        for i in range(lo, hi):
            position, outputs = self.steps[i]
            for a in range(self.letters):
                if outputs[a] == first and (position, a) not in seen_first:
                    seen_first.add((position, a))
                    anchors.add(i)
        if last is not None:
            seen_last: set[tuple[int, int]] = set()
            for i in range(hi - 1, lo - 1, -1):
                position, outputs = self.steps[i]
                for a in range(self.letters):
                    if outputs[a] == last and (position, a) not in seen_last:
                        seen_last.add((position, a))
                        anchors.add(i)
        return anchors

    def indices(self, lo: int, hi: int, t: tuple) -> frozenset[int]:
        """Selected indices within the window [lo, hi) of the instruction list."""
        key = (lo, hi, t)
        if key in self.memo:
            return self.memo[key]
        k = len(t)
        if k == 0 or lo >= hi:
            result: frozenset[int] = frozenset()
        elif k == 1:
            result = frozenset(self._anchors(lo, hi, t[0], None))
        else:
            anchors = self._anchors(lo, hi, t[0], t[-1])
            selected = set(anchors)
            if k >= 3:
                ordered = sorted(anchors)
                for left, right in zip(ordered, ordered[1:]):
                    for alpha in range(1, k - 1):
                        for beta in range(alpha, k - 1):
                            selected |= self.indices(left + 1, right, t[alpha : beta + 1])
            result = frozenset(selected)
        self.memo[key] = result
        return result


def compress_subword_indices(program: Program, t: Sequence) -> frozenset[int]:
    """0-based instruction indices preserving the presence of ``t`` as a subword."""
    compressor = _Compressor(program)
    return compressor.indices(0, len(program), tuple(t))


def _output_elements(program: Program) -> list:
    seen = dict.fromkeys(o for ins in program.instructions for o in ins.outputs)
    return list(seen)


def compress_equivalent(program: Program, k: int) -> Program:
    """Subprogram whose traces are ~k-equivalent to those of ``program``.

    Only elements some instruction can emit are enumerated; words using any
    other element are never subwords of a trace.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    compressor = _Compressor(program)
    elements = _output_elements(program)
    selected: set[int] = set()
    for length in range(1, k + 1):
        for t in itertools.product(elements, repeat=length):
            selected |= compressor.indices(0, len(program), t)
    logger.debug(
        f"compressed program of length {len(program)} to {len(selected)} "
        f"instructions for k={k}"
    )
    return program.subprogram(selected)
