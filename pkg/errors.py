"""Exception hierarchy shared by the library and the command line.

The CLI maps each family to a stable exit code (see ``exit_code_for``).
"""

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_IO = 3


class LabError(Exception):
    pass


class DomainError(LabError, ValueError):
    """Input outside the physical domain of an operation (e.g. |v| >= C)."""


class ScenarioParseError(LabError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ScenarioValidationError(LabError):
    def __init__(self, message: str, key: str | None = None):
        self.key = key
        super().__init__(message)


class ScenarioRunError(LabError):
    """A numerical failure inside a module, with the scenario attached."""

    def __init__(self, message: str, kind: str, source: str | None = None):
        self.kind = kind
        self.source = source
        where = f"{kind} scenario" if source is None else f"{kind} scenario {source}"
        super().__init__(f"{where}: {message}")


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, (ScenarioParseError, ScenarioValidationError)):
        return EXIT_USAGE
    if isinstance(exc, (ScenarioRunError, DomainError)):
        return EXIT_DOMAIN
    if isinstance(exc, OSError):
        return EXIT_IO
    return EXIT_USAGE
