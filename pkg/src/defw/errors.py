from __future__ import annotations


class DefwError(Exception):
    """Base class for engine errors."""


class ValidationError(DefwError, ValueError):
    """Bad input: index/order out of range, context mismatch, shape errors."""


class OrderOverflowError(DefwError):
    """A derivation would raise a generator order beyond a finite jet bound."""


class UnsupportedContextError(DefwError):
    """The operation is not defined for the given codimension or variant."""
