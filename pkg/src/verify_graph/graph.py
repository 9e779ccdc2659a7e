"""Verification fan-out.

The graph plans one task per (check, seed), runs the tasks in parallel and
merges their results into a single summary. Each task depends only on the
configuration and its seed, and the result reducer orders by (check, seed),
so the merged summary does not depend on completion order.
"""

import logging
from dataclasses import asdict

from langchain_core.runnables import RunnableConfig
from langgraph.graph import END, START, StateGraph
from langgraph.types import Send

from src.config.model import CheckResult, VerificationSummary
from src.shared.errors import GaleError
from src.verify_graph.checks import CHECKS
from src.verify_graph.configuration import VerifyConfiguration
from src.verify_graph.state import CheckTask, InputState, VerifyState

logger = logging.getLogger("verify_graph")


def plan_checks(state: VerifyState, *, config: RunnableConfig) -> dict[str, list[str]]:
    """Resolve the requested checks, falling back to the configured ones.

    Raises:
        ValueError: When a requested check is not registered.
    """
    configuration = VerifyConfiguration.from_runnable_config(config)
    checks = list(state.checks or configuration.checks)
    unknown = [name for name in checks if name not in CHECKS]
    if unknown:
        raise ValueError(f"unknown checks {unknown}; registered: {sorted(CHECKS)}")
    logger.info(f"planning {len(checks)} checks x {len(configuration.seeds)} seeds")
    return {"checks": checks}


def fan_out_checks(state: VerifyState, *, config: RunnableConfig) -> list[Send]:
    """Create one run_check task per (check, seed)."""
    configuration = VerifyConfiguration.from_runnable_config(config)
    return [
        Send("run_check", CheckTask(check=check, seed=seed))
        for check in state.checks
        for seed in configuration.seeds
    ]


def run_check(state: CheckTask, *, config: RunnableConfig) -> dict[str, list[CheckResult]]:
    """Run one check; domain errors become a failed result."""
    configuration = VerifyConfiguration.from_runnable_config(config)
    try:
        result = CHECKS[state.check](configuration, state.seed)
    except GaleError as err:
        result = CheckResult(
            check=state.check,
            seed=state.seed,
            passed=False,
            summary=f"{type(err).__name__}: {err}",
        )
    logger.info(f"{state.check} seed={state.seed}: {'pass' if result.passed else 'FAIL'} ({result.summary})")
    return {"results": [result]}


def summarize(state: VerifyState, *, config: RunnableConfig) -> dict[str, VerificationSummary]:
    """Fold the results into one verdict."""
    configuration = VerifyConfiguration.from_runnable_config(config)
    summary = VerificationSummary(
        passed=all(result.passed for result in state.results),
        results=state.results,
        config=asdict(configuration),
    )
    return {"summary": summary}


builder = StateGraph(VerifyState, input=InputState, config_schema=VerifyConfiguration)
builder.add_node(plan_checks)
builder.add_node(run_check)
builder.add_node(summarize)
builder.add_edge(START, "plan_checks")
builder.add_conditional_edges("plan_checks", fan_out_checks, path_map=["run_check"])  # type: ignore[arg-type]
builder.add_edge("run_check", "summarize")
builder.add_edge("summarize", END)

graph = builder.compile()
graph.name = "VerifyGraph"
