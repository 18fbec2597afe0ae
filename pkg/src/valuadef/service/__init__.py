"""HTTP service wrapping the core package; the CLI is a thin client of the
same dispatch layer."""

from .schemas import CHECK_NAMES, CheckRequest, EvalRequest, GroupRequest

__all__ = ["CHECK_NAMES", "CheckRequest", "EvalRequest", "GroupRequest"]
