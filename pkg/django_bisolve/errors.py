class BiSolveError(Exception):
    """
    Base class for every error raised by the solver. `code` is a stable,
    machine-readable identifier that the command line reports verbatim.
    """

    code = "BISOLVE_ERROR"

    def __init__(self, message=None):
        super().__init__(message or self.code)
        self.message = message or self.code

    def __str__(self):
        return f"{self.code}: {self.message}"


class ZeroPolynomialError(BiSolveError):
    code = "ZERO_POLY"


class ConstantPolynomialError(BiSolveError):
    code = "CONSTANT_POLY"


class BadVariableError(BiSolveError):
    code = "BAD_VAR"


class NotSquareFreeError(BiSolveError):
    code = "NOT_SQUAREFREE"


class NotCoprimeError(BiSolveError):
    """The system shares a nonconstant factor, so its solution set is infinite."""

    code = "NOT_COPRIME"


class ConfigError(BiSolveError):
    code = "CONFIG_ERROR"


class PolynomialParseError(BiSolveError):
    code = "PARSE_ERROR"

    def __init__(self, message, position):
        super().__init__(f"{message} at offset {position}")
        self.position = position
