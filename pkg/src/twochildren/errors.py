"""Semantic exception hierarchy.

Every error raised on purpose by this package derives from
:class:`TwoChildrenError`, so callers can catch one base class.  The
subclasses also mix in the matching builtin (``ValueError`` etc.) so that
generic handlers keep working.
"""

from __future__ import annotations


class TwoChildrenError(Exception):
    """Base class for all domain errors raised by this package."""


class RangeError(TwoChildrenError, ValueError):
    """A scalar parameter lies outside its allowed range."""


class SizeError(TwoChildrenError, ValueError):
    """A popularity vector has fewer than two entries."""


class SumError(TwoChildrenError, ValueError):
    """Values that must sum to a target do not, beyond tolerance."""


class ShapeError(TwoChildrenError, ValueError):
    """Vector operands have mismatched lengths."""


class OrderError(TwoChildrenError, ValueError):
    """Vectors are not comparable (in the required direction) under majorization."""


class ModelError(TwoChildrenError, ValueError):
    """The requested model cannot generate families for these parameters."""


class ZeroConditionError(TwoChildrenError, ZeroDivisionError):
    """The conditioning event has zero probability."""


class NonterminationGuard(TwoChildrenError, RuntimeError):
    """The raw-sample budget ran out before enough conditioned samples arrived."""
