"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Invalid physical or numerical parameter."""


class WiringError(ValueError):
    """An element references a location or atom the state does not know about."""


class RoutingError(RuntimeError):
    """Amplitude ended up somewhere a correctly built circuit never sends it."""


class DegenerateInputError(ZeroDivisionError):
    """The surviving norm vanished, so fidelity is undefined."""


class CircuitParseError(ValueError):
    """Base class for circuit-description errors; carries a 1-based position."""

    kind = "error"

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(str(self))

    def __str__(self):
        where = ""
        if self.line is not None:
            where = f"line {self.line}"
            if self.column is not None:
                where += f", column {self.column}"
            where += ": "
        return f"{where}{self.kind}: {self.message}"


class CircuitSyntaxError(CircuitParseError):
    kind = "syntax error"


class UnknownElementError(CircuitParseError):
    kind = "unknown element"


class UnregisteredLocationError(CircuitParseError):
    kind = "unregistered location"


class DuplicatePortError(CircuitParseError):
    kind = "duplicate port"


class AtomIndexError(CircuitParseError):
    kind = "bad atom index"
