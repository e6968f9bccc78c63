"""
Exact arithmetic layer for urnlab
Rational values, the error hierarchy and the combinatorial closed forms
that the solvers reduce their sums to.
"""

import math
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Annotated, Any

from pydantic import PlainSerializer, PlainValidator

# Every exact result in the package is a Fraction: immutable, always reduced,
# denominator positive, arbitrary-precision numerator and denominator.
Rational = Fraction

# ============================================================
# Errors
# ============================================================

class UrnLabError(Exception):
    """Base class for every error raised by urnlab"""


class DomainError(UrnLabError, ValueError):
    """An operation was called outside its precondition"""


class ConditioningError(UrnLabError, ValueError):
    """Conditioning on an event of probability zero"""


class EstimationError(UrnLabError, RuntimeError):
    """A simulation could not produce an estimate"""

# ============================================================
# Rational construction and text codec
# ============================================================

def rat(num: int, den: int = 1) -> Fraction:
    """Canonical reduced fraction num/den, sign carried on the numerator"""
    if den == 0:
        raise DomainError(f"zero denominator in {num}/{den}")
    return Fraction(num, den)


def fraction_str(value: Fraction) -> str:
    """Render as "p/q"; the denominator is always written, "1/1" included"""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text: Any) -> Fraction:
    """Inverse of fraction_str; also accepts ints, Fractions and bare integers"""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise DomainError(f"not a fraction: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise DomainError(f"not a fraction: {text!r}")
    num, sep, den = text.strip().partition("/")
    try:
        return rat(int(num), int(den) if sep else 1)
    except ValueError as e:
        if isinstance(e, DomainError):
            raise
        raise DomainError(f"not a fraction: {text!r}") from e


def to_decimal(value: Fraction, digits: int = 12) -> Decimal:
    """Approximate value with `digits` significant digits"""
    value = Fraction(value)
    with localcontext() as ctx:
        ctx.prec = digits
        return Decimal(value.numerator) / Decimal(value.denominator)


def _validate_fraction(value: Any) -> Fraction:
    try:
        return parse_fraction(value)
    except DomainError as e:
        # pydantic turns ValueError into a ValidationError
        raise ValueError(str(e)) from e


ExactFraction = Annotated[
    Fraction,
    PlainValidator(_validate_fraction),
    PlainSerializer(fraction_str, return_type=str),
]

# ============================================================
# Combinatorial closed forms
# ============================================================

def _check_non_negative(name: str, value: int):
    if value < 0:
        raise DomainError(f"{name} must be non-negative, got {value}")


def sum_integers(n: int) -> Fraction:
    """1 + 2 + ... + n = n(n+1)/2"""
    _check_non_negative("n", n)
    return rat(n * (n + 1), 2)


def square_pyramidal(n: int) -> Fraction:
    """1² + 2² + ... + n² = n(n+1)(2n+1)/6"""
    _check_non_negative("n", n)
    return rat(n * (n + 1) * (2 * n + 1), 6)


def binomial(n: int, k: int) -> Fraction:
    """C(n, k); zero when k > n"""
    _check_non_negative("n", n)
    _check_non_negative("k", k)
    if k > n:
        return Fraction(0)
    return Fraction(math.comb(n, k))


def falling_factorial(n: int, k: int) -> Fraction:
    """n (n-1) ... (n-k+1); zero once a factor reaches zero"""
    _check_non_negative("k", k)
    return Fraction(math.prod(n - m for m in range(k)))


def hockey_stick_sum(r: int, n: int) -> Fraction:
    """
    Sum of C(x, r) for x = r..n by direct summation.
    Equals binomial(n+1, r+1); callers and tests use that as the check.
    """
    _check_non_negative("r", r)
    if r > n:
        raise DomainError(f"hockey stick sum needs r <= n, got r={r}, n={n}")
    total = Fraction(0)
    for x in range(r, n + 1):
        total += binomial(x, r)
    return total
