"""Core orchestration for verification runs and language classification."""

import asyncio
import logging
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor

from .algebra import (
    Variety,
    check_variety,
    is_locally_J,
    stable_pair,
    syntactic_monoid,
    syntactic_semigroup,
)
from .automata import Dfa, minimize
from .logging import configure_worker_logging
from .models import CheckSpec, ClassificationRecord, VerificationReport
from .piecewise import is_k_pt
from .verify import run_check, sort_reports, validate_specs


async def run_verification(
    specs: Sequence[CheckSpec], logger: logging.Logger, parallelism: int = 1
) -> list[VerificationReport]:
    """Run checks concurrently; reports come back sorted by check_id."""
    specs = validate_specs(specs)
    if not specs:
        logger.info("no checks to run")
        return []

    logger.info(f"running {len(specs)} checks with parallelism {parallelism}")
    loop = asyncio.get_running_loop()
    if parallelism > 1:
        with ProcessPoolExecutor(
            max_workers=parallelism, initializer=configure_worker_logging
        ) as pool:
            reports = await asyncio.gather(
                *(loop.run_in_executor(pool, run_check, spec) for spec in specs)
            )
    else:
        reports = [await loop.run_in_executor(None, run_check, spec) for spec in specs]

    failed = [r.check_id for r in reports if r.verdict == "fail"]
    if failed:
        logger.warning(f"{len(failed)} checks failed: {', '.join(sorted(failed))}")
    else:
        logger.info(f"all {len(reports)} checks passed or were skipped")
    return sort_reports(reports)


def classify(
    dfa: Dfa, ks: Iterable[int], logger: logging.Logger, source: str = ""
) -> ClassificationRecord:
    """Syntactic and stable monoid verdicts plus k-piecewise testability."""
    minimal = minimize(dfa)
    monoid, morphism, _ = syntactic_monoid(minimal)
    semigroup, _ = syntactic_semigroup(minimal)
    stable = stable_pair(morphism)
    logger.debug(
        f"{source or 'dfa'}: {minimal.states} states, monoid of size {monoid.size}, "
        f"stable power {stable.k}"
    )
    return ClassificationRecord(
        source=source,
        alphabet=[str(s) for s in dfa.alphabet],
        minimal_states=minimal.states,
        monoid_size=monoid.size,
        omega=monoid.omega,
        in_a=check_variety(monoid, Variety.A),
        in_da=check_variety(monoid, Variety.DA),
        in_j=check_variety(monoid, Variety.J),
        locally_j=is_locally_J(semigroup),
        stable_k=stable.k,
        stable_monoid_size=stable.stable_monoid.size,
        quasi_a=check_variety(stable.stable_monoid, Variety.A),
        quasi_da=check_variety(stable.stable_monoid, Variety.DA),
        quasi_j=check_variety(stable.stable_monoid, Variety.J),
        piecewise={k: is_k_pt(minimal, k) for k in sorted(set(ks))},
    )
