"""Seeded grid-reasoning benchmark: generators, solvers, parsing, scoring."""

from ._core import (
    BenchmarkError,
    budget_for,
    build_prompt,
    catalog,
    generate_episode,
    instances_for,
    parse_failure_reason,
    parse_grid,
    render_grid,
    score,
    solve,
    total_budget,
    write_dataset,
)

__all__ = [
    "BenchmarkError",
    "budget_for",
    "build_prompt",
    "catalog",
    "generate_episode",
    "instances_for",
    "parse_failure_reason",
    "parse_grid",
    "render_grid",
    "score",
    "solve",
    "total_budget",
    "write_dataset",
]
