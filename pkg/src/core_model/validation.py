"""Validation of gambler specs by reachable-state enumeration."""

import logging

from src.config.model import ValidationReport
from src.core_model.compile import compile_spec
from src.core_model.spec import GamblerSpec

logger = logging.getLogger("core_model")


def validate_spec(spec: GamblerSpec, *, state_cap: int = 200_000) -> ValidationReport:
    """Certify a spec: stochastic bet rows, mask widths, and totality over reachable pairs.

    Enumeration follows every observation tuple from every discovered state,
    which over-approximates the pairs met on real sequences.

    Raises:
        NonStochasticBetsError: A bet row does not sum to exactly 1.
        MaskWidthMismatchError: A transition emits a mask of the wrong width.
        TransitionUndefinedError: A reachable (state, observation) pair has no row.
        TotalityUnknownError: More than ``state_cap`` states were discovered.
    """
    compiled = compile_spec(spec, state_cap=state_cap)
    checked = compiled.close()
    logger.info(f"validated {spec.name}: {len(compiled.tokens)} reachable states")
    return ValidationReport(
        valid=True,
        heads=spec.heads,
        alphabet_size=spec.alphabet.size,
        reachable_states=len(compiled.tokens),
        transitions_checked=checked,
    )
