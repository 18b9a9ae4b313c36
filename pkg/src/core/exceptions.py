"""Exception hierarchy. Every error the CLI can surface carries its exit code."""

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_INTERNAL = 3


class WmsnError(Exception):
    exit_code = EXIT_INTERNAL

    def __init__(self, detail: str, exit_code: int | None = None):
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code


class ValidationFailed(WmsnError):
    exit_code = EXIT_VALIDATION

    def __init__(self, detail: str, problems: list[str] | None = None):
        self.problems = problems or [detail]
        if problems:
            detail = detail + "\n" + "\n".join(f"  - {problem}" for problem in problems)
        super().__init__(detail)


class DataIOError(WmsnError):
    exit_code = EXIT_IO


class FrameParseError(DataIOError):
    def __init__(self, path: str, offset: int, reason: str):
        self.path = path
        self.offset = offset
        super().__init__(f"{path}: byte offset {offset}: {reason}")


class TraceParseError(DataIOError):
    def __init__(self, path: str, line: int, reason: str):
        self.path = path
        self.line = line
        super().__init__(f"{path}: line {line}: {reason}")


class InvariantViolation(WmsnError):
    exit_code = EXIT_INTERNAL


class DegenerateGeometryError(ValueError):
    """Sender and sink coincide, so no forward direction exists."""


class PredictorDomainError(ValueError):
    """Negative RBA measurement or invalid predictor parameters."""


class DegenerateModelError(ValueError):
    """Target histogram has no positive bin."""


class WindowGeometryError(ValueError):
    """Search window does not intersect the frame."""
