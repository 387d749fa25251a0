"""Gaussian-rational scalars.

Everything in the kernel is built over sympy's ``QQ_I``; real inputs embed
with zero imaginary part. Rationals are ``QQ`` elements.
"""

from typing import Any, Iterable

from sympy import I, Expr, sympify
from sympy.core.sympify import SympifyError
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.polyerrors import CoercionFailed

from poissonforge.exceptions import InputException

Scalar = Any  # a QQ_I element

ZERO = QQ_I.zero
ONE = QQ_I.one
IMAG = QQ_I.imag_unit
HALF = QQ_I.convert_from(QQ(1, 2), QQ)


def scalar(value: Any) -> Scalar:
    """Coerce ints, rationals, strings and sympy numbers into ``QQ_I``."""
    if QQ_I.of_type(value):
        return value
    if isinstance(value, bool):
        raise InputException(f"not a scalar: {value!r}")
    if isinstance(value, int):
        return QQ_I.convert(value)
    if QQ.of_type(value):
        return QQ_I.convert_from(value, QQ)
    if isinstance(value, str):
        return parse_scalar(value)
    if isinstance(value, Expr):
        return _from_sympy(value, str(value))
    raise InputException(f"not a scalar: {value!r}")


def parse_scalar(text: str) -> Scalar:
    """Parse "p/q", "p/q+r/s*i" and plain sympy arithmetic over Q(i)."""
    try:
        expr = sympify(text.strip(), locals={"i": I, "I": I})
    except (SympifyError, SyntaxError, TypeError) as e:
        raise InputException(f"cannot parse scalar {text!r}") from e
    return _from_sympy(expr, text)


def _from_sympy(expr: Expr, text: str) -> Scalar:
    if expr.free_symbols:
        raise InputException(f"scalar {text!r} depends on symbols")
    try:
        return QQ_I.from_sympy(expr.expand())
    except (CoercionFailed, TypeError) as e:
        raise InputException(f"{text!r} is not a Gaussian rational") from e


def rational(value: Any) -> Any:
    """A ``QQ`` element from an int, QQ element or "p/q" string."""
    z = scalar(value)
    if z.y:
        raise InputException(f"{value!r} is not real")
    return z.x


def _format_rational(q: Any) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(z: Scalar) -> str:
    """Inverse of :func:`parse_scalar`."""
    z = scalar(z)
    if not z.y:
        return _format_rational(z.x)
    imag = _format_rational(z.y)
    if not z.x:
        return f"{imag}*i"
    sign = "+" if z.y > 0 else ""
    return f"{_format_rational(z.x)}{sign}{imag}*i"


def conjugate(z: Scalar) -> Scalar:
    return z.new(z.x, -z.y)


def norm_squared(z: Scalar) -> Any:
    return z.x * z.x + z.y * z.y


def is_zero(z: Scalar) -> bool:
    return not z


def to_sympy(z: Scalar) -> Expr:
    return QQ_I.to_sympy(z)


def format_terms(terms: Iterable[tuple[Scalar, str]]) -> str:
    """Render a linear combination such as ``1/4*X⊗H - 1/4*H⊗X``."""
    pieces = []
    for c, label in terms:
        c = scalar(c)
        if not c:
            continue
        text = format_scalar(c)
        if c.x and c.y:
            text = f"({text})"
        if not label:
            pieces.append(text)
        elif text == "1":
            pieces.append(label)
        elif text == "-1":
            pieces.append(f"-{label}")
        else:
            pieces.append(f"{text}*{label}")
    if not pieces:
        return "0"
    return " + ".join(pieces).replace("+ -", "- ")
