"""Exception hierarchy shared by all modules."""


class CausecovError(Exception):
    """Base class for every error raised by this package."""


class CircuitError(CausecovError, ValueError):
    """Malformed circuit (bad arity, dangling reference, duplicate id)."""


class CyclicCircuitError(CircuitError):
    pass


class MissingVariableError(CausecovError, KeyError):
    """An assignment does not cover every input of a circuit."""

    def __str__(self):
        return Exception.__str__(self)


class UnknownVariableError(CausecovError, KeyError):
    """A variable, gate, state or proposition name is not known."""

    def __str__(self):
        return Exception.__str__(self)


class NotReadOnceError(CircuitError):
    """The circuit is not a literal tree with one leaf per variable."""


class ParseError(CausecovError, ValueError):
    """Syntax error in a formula or expression, with a character offset."""

    def __init__(self, message: str, text: str = "", pos: int = -1):
        self.message = message
        self.text = text
        self.pos = pos
        if pos >= 0:
            message = f"{message} at position {pos}"
        super().__init__(message)


class FormatError(CausecovError, ValueError):
    """A structured document (model, circuit, graph, assignment) is invalid."""


class KripkeError(FormatError):
    pass


class CausalModelError(FormatError):
    pass


class SpecNotSatisfiedError(CausecovError):
    """Coverage and responsibility are only defined for satisfied specifications."""


class UnsupportedOperatorError(CausecovError, ValueError):
    """A formula leaves the fragment an operation is defined on."""
