"""Exception taxonomy shared by all dcnash modules."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple


class DcnashError(Exception):
    pass


@dataclass(frozen=True)
class Diagnostic:
    """One validation finding. ``code`` is a stable machine-readable tag."""

    code: str
    detail: str
    player: Optional[int] = None

    def __str__(self) -> str:
        where = f" (player {self.player})" if self.player is not None else ""
        return f"{self.code}{where}: {self.detail}"


class GameValidationError(DcnashError):
    """Raised with the *complete* list of hard validation violations."""

    def __init__(self, diagnostics: Tuple[Diagnostic, ...]):
        self.diagnostics = tuple(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


class GameNotValidatedError(DcnashError):
    pass


class DimensionMismatchError(DcnashError):
    pass


class LatticeTooLargeError(DcnashError):
    pass


class EmptyFeasibleSetError(DcnashError):
    pass


class InfeasibleProfileError(DcnashError):
    pass


class NonConvexGameError(DcnashError):
    """MCP-side operations refuse games whose own-variable blocks are not PSD."""


class PatternBudgetExceededError(DcnashError):
    pass


class NonPositiveEpsilonError(DcnashError):
    pass


class RetriesExhaustedError(DcnashError):
    pass


class InclusionViolationError(DcnashError):
    """The relaxed-system solution set escaped the equilibrium set; this
    breaks a proven inclusion and always indicates a bug."""


class GameFileError(DcnashError):
    """Raised on schema violations; carries every message found."""

    def __init__(self, messages):
        self.messages = tuple(messages)
        super().__init__("; ".join(self.messages))
