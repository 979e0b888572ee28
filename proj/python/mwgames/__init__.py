"""Solvers for multi-dimensional energy and bounding games."""

from ._mwgames import (
    BudgetExceeded,
    Error,
    Falsification,
    Game,
    InconsistentObservation,
    InputError,
    UndefinedState,
    __version__,
    alternatives,
    arena_size_bound,
    bounds,
    cross_check,
    enumerate_half_spaces,
    pareto,
    positive_kernel_solution,
    random_game,
    self_covering_search,
    simulate,
    solve,
    solve_fcb,
)

__all__ = [
    "BudgetExceeded",
    "Error",
    "Falsification",
    "Game",
    "InconsistentObservation",
    "InputError",
    "UndefinedState",
    "__version__",
    "alternatives",
    "arena_size_bound",
    "bounds",
    "cross_check",
    "enumerate_half_spaces",
    "pareto",
    "positive_kernel_solution",
    "random_game",
    "self_covering_search",
    "simulate",
    "solve",
    "solve_fcb",
]
