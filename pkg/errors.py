"""Exceptions raised for caller errors.

Decoder verdicts (detected failures) are returned as values, not raised.
"""


class IrsError(Exception):
    """Base class for every error raised by this package"""


class FieldError(IrsError, ValueError):
    """Invalid extension degree or non-primitive polynomial"""


class CodeSpecError(IrsError, ValueError):
    """Code dimension or shortening out of range"""


class DimensionError(IrsError, ValueError):
    """Matrix or vector shape does not match the code"""


class MatrixFormatError(IrsError, ValueError):
    """Malformed matrix file; line and column are 1-based"""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}" + (f", column {column}" if column else "")
        super().__init__(f"{where}: {message}" if line else message)


class SimulationInvariantError(IrsError, RuntimeError):
    """A trial produced an outcome the decoder theory rules out"""


class SingularMatrixError(IrsError, ArithmeticError):
    """Square system has no unique solution"""
