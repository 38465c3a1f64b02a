"""Expression language for q-series identities."""

from .evaluator import evaluate, evaluate_scalar
from .parser import parse
from .printer import to_source

__all__ = ["evaluate", "evaluate_scalar", "parse", "to_source"]
