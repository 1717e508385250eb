"""Error taxonomy for cubillage operations and the CLI."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class ZonocubeError(Exception):
    code: str
    message: str

    def __post_init__(self) -> None:
        super().__init__(self.tool_message())

    def __str__(self) -> str:  # pragma: no cover - repr helper
        return f"{self.code}: {self.message}"

    def tool_message(self) -> str:
        return f"{self.code}: {self.message}"


class InvalidInputError(ZonocubeError):
    def __init__(self, message: str):
        super().__init__("InvalidInput", message)


class PreconditionError(ZonocubeError):
    def __init__(self, message: str):
        super().__init__("Precondition", message)


class NotBiConvexError(ZonocubeError):
    """An inversion set failed Ziegler's condition on ``stick``."""

    def __init__(self, message: str, stick=None):
        self.stick = stick
        super().__init__("NotBiConvex", message)


class FlipNotApplicableError(ZonocubeError):
    def __init__(self, message: str, reason: str = "validity"):
        self.reason = reason
        super().__init__("FlipNotApplicable", message)


class DocumentError(ZonocubeError):
    def __init__(self, message: str):
        super().__init__("MalformedDocument", message)


class BudgetExceededError(ZonocubeError):
    def __init__(self, message: str):
        super().__init__("BudgetExceeded", message)


class BarrelHoleError(ZonocubeError):
    def __init__(self, message: str):
        super().__init__("BarrelHole", message)


class LiftInconsistencyError(ZonocubeError):
    def __init__(self, message: str):
        super().__init__("LiftInconsistency", message)


class ConstructionError(ZonocubeError):
    def __init__(self, message: str):
        super().__init__("InternalError", message)


EXIT_CODES: dict[str, int] = {
    "InvalidInput": 2,
    "Precondition": 2,
    "NotBiConvex": 2,
    "FlipNotApplicable": 2,
    "MalformedDocument": 2,
    "BarrelHole": 2,
    "BudgetExceeded": 3,
    "LiftInconsistency": 1,
    "InternalError": 1,
}


def exit_code_for(exc: ZonocubeError) -> int:
    return EXIT_CODES.get(exc.code, 1)
