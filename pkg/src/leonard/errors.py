"""Exception hierarchy.

Every error carries a snake_case ``code`` that the command-line front end
reports verbatim in its JSON error object.
"""

from __future__ import annotations


class LeonardError(Exception):
    code = "error"

    def __init__(self, message: str = "", detail=None):
        super().__init__(message)
        self.message = message
        self.detail = detail


class DivisionByZero(LeonardError, ZeroDivisionError):
    code = "division_by_zero"


class ParseError(LeonardError, ValueError):
    code = "parse_error"

    def __init__(self, message: str, position: int | None = None, text: str | None = None):
        super().__init__(message, {"position": position, "text": text})
        self.position = position
        self.text = text


class DimensionMismatch(LeonardError, ValueError):
    code = "dimension_mismatch"


class StructureError(LeonardError, ValueError):
    """Parameter array lists whose lengths do not agree with the diameter."""

    code = "structure_error"


class Underdetermined(LeonardError):
    code = "underdetermined"


class Inconsistent(LeonardError):
    code = "inconsistent"


class DiameterTooSmall(LeonardError, ValueError):
    code = "diameter_too_small"


class InconsistentFormulas(LeonardError):
    code = "inconsistent_formulas"


class IndexOutOfRange(LeonardError, IndexError):
    code = "index_out_of_range"


class ZeroScale(LeonardError, ValueError):
    code = "zero_scale"


class InvalidSquareRoot(LeonardError, ValueError):
    code = "invalid_square_root"


class DegenerateParameters(LeonardError, ValueError):
    code = "degenerate_parameters"


class NotCovered(LeonardError):
    code = "not_covered"


class FieldTooSmall(LeonardError):
    code = "field_too_small"
