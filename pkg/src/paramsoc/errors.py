"""Exception hierarchy shared by all modules."""


class ParamSocError(Exception):
    """Base class for every error raised by :mod:`paramsoc`."""


class DomainError(ParamSocError, ValueError):
    """An argument is outside the domain of an operation (bad index, partial map...)."""


class UnsupportedKindError(ParamSocError, TypeError):
    """The operation does not apply to this kind of profile or hedonic model."""


class ContractError(ParamSocError, ValueError):
    """A documented precondition of a solver does not hold."""


class ResourceLimitError(ParamSocError, RuntimeError):
    """A node budget or size guard was exceeded."""


class ParseError(ParamSocError, ValueError):
    """Malformed input file.

    Parameters
    ----------
    code : str
        Stable diagnostic identifier, e.g. ``"duplicate-entry"``.
    line : int
        1-based line number in the offending file (0 if not line specific).
    message : str
        Human readable description.
    """

    def __init__(self, code: str, line: int, message: str):
        self.code = code
        self.line = line
        self.message = message
        super().__init__(f"line {line}: [{code}] {message}")
