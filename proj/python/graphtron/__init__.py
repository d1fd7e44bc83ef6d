"""Online multiclass classification under feedback graphs."""

from ._core import (
    FeedbackGraph,
    Gappletron,
    GraphError,
    comparator,
    gap,
    loss_gradient,
    loss_value,
    run,
    validate,
)

__all__ = [
    "FeedbackGraph",
    "Gappletron",
    "GraphError",
    "comparator",
    "gap",
    "loss_gradient",
    "loss_value",
    "run",
    "validate",
]
