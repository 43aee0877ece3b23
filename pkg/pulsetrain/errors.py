"""
Errors (pulsetrain.errors)
--------------------------

Exception types raised across pulsetrain.  All of them are :py:class:`RuntimeError` subclasses whose messages start
with ``"Error: "``, so callers that only care about failure can keep catching :py:class:`RuntimeError`.  The command-line
modes map them onto exit codes.
"""


class PulseTrainError(RuntimeError):
    """Base class of every pulsetrain failure."""

    def __init__(self, message):
        if not message.startswith("Error: "):
            message = "Error: " + message
        super().__init__(message)


class DomainError(PulseTrainError, ValueError):
    """Argument outside the domain of an operation (time outside the pulse, index out of range, bad N, ...)."""


class ShapeError(DomainError):
    """Coupling matrix with an unsupported shape."""


class DegenerateError(DomainError):
    """Couplings that vanish identically, leaving nothing to decompose."""


class DegenerateAngleError(DomainError):
    """Power angle with sin(theta) too close to zero for the diagonalization route."""


class NonIdentifiableError(DomainError):
    """Measurement series that carries no information about the error being estimated."""


class NumericError(PulseTrainError, ArithmeticError):
    """Non-finite values produced during integration."""


class ConfigError(PulseTrainError):
    """Invalid run configuration.

    :param message: description of the problem.
    :type message: :py:class:`str`
    :param keyPath: dotted path of the offending key, if known.
    :type keyPath: :py:class:`str`
    :param line: line number in the configuration text, if known.
    :type line: :py:class:`int`
    """

    def __init__(self, message, keyPath=None, line=None):
        self.keyPath = keyPath
        self.line = line
        location = ""
        if keyPath:
            location += " at \"" + keyPath + "\""
        if line is not None:
            location += " (line " + str(line) + ")"
        super().__init__("config error" + location + ": " + message)
