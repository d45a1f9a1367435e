"""Shared exception types.

PreconditionError: a caller handed in data that violates a documented
precondition (non-isometry generators, degenerate gram, non-nilpotent log).

StructuralError: data fails a structural shape check it was claimed to have
(missing zero blocks, non-skew corner, broken grading).

ConsistencyError: an internal cross-check that should be a theorem failed;
it signals a bug in this package or an invalid input group, never a normal
negative answer.
"""


class PreconditionError(ValueError):
    pass


class StructuralError(ValueError):
    pass


class ConsistencyError(RuntimeError):
    pass
