"""Shared exception types."""


class ContractViolation(RuntimeError):
    """An internal mathematical invariant failed.

    Raised when a quantity that is provably constrained (an excess class
    that must be an honest character, a fusion constant that must be a
    nonnegative integer, a modular character-table step that must split)
    comes out wrong.  This always indicates a bug, never bad user input.
    """
