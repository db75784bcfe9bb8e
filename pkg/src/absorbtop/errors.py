"""Exception hierarchy shared by every module in the package."""

from __future__ import annotations


class AbsorbTopError(Exception):
    """Base class for all errors raised by absorbtop."""


class InvalidOrderError(AbsorbTopError, ValueError):
    pass


class RingTooLargeError(AbsorbTopError, ValueError):
    def __init__(self, order: int, cap: int, what: str = "ring"):
        super().__init__(f"{what} of order {order} exceeds the cap of {cap}")
        self.order = order
        self.cap = cap


class OracleTooLargeError(RingTooLargeError):
    def __init__(self, order: int, cap: int):
        super().__init__(order, cap, what="oracle-backed computation on a ring")


class RingAxiomError(AbsorbTopError, ValueError):
    """A table fails a ring axiom; ``witness`` is the first offending tuple."""

    def __init__(self, axiom: str, witness: tuple[int, ...], detail: str = ""):
        msg = f"axiom violated: {axiom} at {witness}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.axiom = axiom
        self.witness = witness


class NotIdempotentError(AbsorbTopError, ValueError):
    pass


class InvalidCoverError(AbsorbTopError, ValueError):
    pass


class UnknownElementError(AbsorbTopError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown element"


class SpecParseError(AbsorbTopError, ValueError):
    """Malformed ring spec; ``where`` names the offending field or line."""

    def __init__(self, message: str, where: str | None = None):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


class UnknownClaimError(AbsorbTopError, KeyError):
    def __str__(self) -> str:
        return f"unknown claim id: {self.args[0]!r}"


class EngineInvariantError(AbsorbTopError, AssertionError):
    """An unconditional topological fact failed; signals an engine bug."""
