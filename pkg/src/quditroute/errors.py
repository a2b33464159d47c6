"""Exception hierarchy shared by every module."""


class QuditRouteError(Exception):
    """Base class for all library errors."""


class InvalidSpecError(QuditRouteError, ValueError):
    """Bad radix or wire count."""


class GateValidationError(QuditRouteError, ValueError):
    """A gate does not fit the circuit it is added to."""


class NonInvertibleError(QuditRouteError):
    """Inverse requested for a circuit containing opaque blocks."""


class OutOfSubspaceError(QuditRouteError):
    """A gate met a basis value outside the levels it is defined on."""


class NoPathError(QuditRouteError):
    """No path between two physical wires."""


class RoutingContractError(QuditRouteError, ValueError):
    """Routing helper called with a gate that does not match its path."""


class UnsupportedGateError(QuditRouteError):
    """The ladder strategy cannot route this gate kind."""


class TooLargeError(QuditRouteError):
    """Simulation dimension exceeds the configured cap."""


class ParseError(QuditRouteError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
