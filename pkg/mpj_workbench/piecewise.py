"""Deciding k-piecewise testability of a regular language."""

import logging
from collections import deque

from .algebra import quotient_by_sim_k
from .automata import Dfa

logger = logging.getLogger(__name__)


def is_k_pt(dfa: Dfa, k: int, quotient_cap: int | None = None) -> bool:
    """True iff the language of ``dfa`` is a union of ~k classes.

    Explores the reachable pairs (~k class of w, state reached on w); the
    language splits some class exactly when one class meets both an accepting
    and a rejecting state.
    """
    monoid, morphism = quotient_by_sim_k(dfa.alphabet, k, quotient_cap)
    action = monoid.table[:, list(morphism.images)]
    verdict: dict[int, bool] = {}
    start = (monoid.identity, dfa.start)
    seen = {start}
    queue = deque([start])
    while queue:
        element, state = queue.popleft()
        accepted = state in dfa.accepting
        if verdict.setdefault(element, accepted) != accepted:
            logger.debug(f"~{k} class {monoid.label(element)} is split by the language")
            return False
        for a in range(len(dfa.alphabet)):
            nxt = (int(action[element, a]), dfa.transitions[state][a])
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return True
