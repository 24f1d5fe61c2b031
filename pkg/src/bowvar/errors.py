"""Exception hierarchy shared by every module.

Each class names the invariant that failed, so the CLI can print the class
name as a short diagnostic and map every subclass of ``BowvarError`` to a
domain-error exit code.
"""

from __future__ import annotations


class BowvarError(Exception):
    """Base class for domain errors."""


class MalformedDiagram(BowvarError):
    pass


class SameKind(BowvarError):
    pass


class NegativeMultiplicity(BowvarError):
    pass


class IntegerOverflow(BowvarError):
    """A multiplicity left the signed 64-bit range."""


class ExponentOverflow(BowvarError):
    pass


class NegativeCoefficient(BowvarError):
    pass


class MarginMismatch(BowvarError):
    pass


class InvalidTies(BowvarError):
    pass


class NotAPair(BowvarError):
    pass


class SigmaLengthMismatch(BowvarError):
    pass


class NotSeparated(BowvarError):
    pass


class UnknownFixedPoint(BowvarError):
    """A fixed-point index or subset label does not exist for the diagram."""


INT64_MAX = 2**63 - 1


def check_int64(value: int, what: str, exc: type[BowvarError] = IntegerOverflow) -> int:
    if -INT64_MAX - 1 <= value <= INT64_MAX:
        return value
    raise exc(f"{what} {value} does not fit in a signed 64-bit integer")
