"""Exact rational helpers shared by the Lie-theoretic modules.

Scalars are ``fractions.Fraction``; linear solves go through sympy's
``DomainMatrix`` over ``QQ`` so nothing ever touches floating point.
"""
from fractions import Fraction

from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError


class ParseError(ValueError):
    """Raised when a rational or a vector cannot be read. ``position`` is the
    0-based character offset of the offending token."""

    def __init__(self, message, position=0):
        super().__init__(f"{message} (at position {position})")
        self.message = message
        self.position = position


class SingularSystemError(ArithmeticError): pass


def parse_rational(text, position=0):
    """Reads ``p/q``, an integer or a terminating decimal into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"expected a rational string, got {type(text).__name__}", position)
    token = text.strip()
    if not token:
        raise ParseError("empty rational", position)
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {token!r}", position) from None


def parse_vector(text):
    """Reads a comma-separated vector of rationals, e.g. ``"0, 3/2, -1"``.

    Lists (as they arrive from JSON) are accepted too, element by element.
    """
    if isinstance(text, (list, tuple)):
        return tuple(parse_rational(item, index) for index, item in enumerate(text))
    if not isinstance(text, str):
        raise ParseError(f"expected a vector, got {type(text).__name__}", 0)
    values = []
    offset = 0
    for token in text.split(","):
        # report the offset of the first non-blank character of the token
        lead = len(token) - len(token.lstrip())
        values.append(parse_rational(token, offset + lead))
        offset += len(token) + 1
    return tuple(values)


def is_integral(values):
    return all(Fraction(v).denominator == 1 for v in values)


def format_exact(value):
    """Terminating rationals print as decimals (``-0.5``), others as ``p/q``."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    denominator = value.denominator
    twos = fives = 0
    while denominator % 2 == 0:
        denominator //= 2
        twos += 1
    while denominator % 5 == 0:
        denominator //= 5
        fives += 1
    if denominator != 1:
        return f"{value.numerator}/{value.denominator}"
    digits = max(twos, fives)
    scaled = abs(value.numerator) * 10 ** digits // value.denominator
    sign = "-" if value < 0 else ""
    text = str(scaled).rjust(digits + 1, "0")
    return f"{sign}{text[:-digits]}.{text[-digits:]}"


def _to_qq(value):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _from_qq(value):
    return Fraction(int(value.numerator), int(value.denominator))


def solve(rows, rhs):
    """Solves ``rows @ x = rhs`` exactly for a square nonsingular system."""
    n = len(rows)
    if n == 0:
        return ()
    matrix = DomainMatrix([[_to_qq(v) for v in row] for row in rows], (n, n), QQ)
    column = DomainMatrix([[_to_qq(v)] for v in rhs], (n, 1), QQ)
    try:
        solution = matrix.lu_solve(column)
    except DMNonInvertibleMatrixError:
        raise SingularSystemError("linear system is singular") from None
    return tuple(_from_qq(row[0]) for row in solution.to_list())


def express_in_columns(columns, target):
    """Coefficients c with ``sum_j c_j * columns[j] == target``."""
    n = len(target)
    rows = [[columns[j][i] for j in range(len(columns))] for i in range(n)]
    return solve(rows, target)
