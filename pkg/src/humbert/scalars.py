"""Number tower and Pochhammer primitives shared by every other module.

Scalars live in one of two fields: exact rationals (``fractions.Fraction``,
always in canonical reduced form) or IEEE double floats.  All verification
paths run in the exact field; float values appear only in numerical
evaluation and quadrature.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .errors import PoleError, SignatureError

Scalar = Union[Fraction, float]

# Absolute distance below which a float parameter counts as a non-positive
# integer for pole detection.
FLOAT_POLE_TOL = 1e-12

# Every parameter symbol a function signature, identity, or formula may bind.
SYMBOLS = (
    "alpha", "beta", "gamma", "gamma1", "gamma2",
    "beta1", "beta2", "alpha1", "alpha2",
    "eps", "eps1", "eps2", "h", "g",
)

ParameterMap = dict


def as_scalar(value) -> Scalar:
    """Coerce ints, floats, Fractions, and "p/q" strings to a Scalar."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise SignatureError(f"not a numeric parameter value: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise SignatureError(f"not a rational literal: {value!r}") from exc
    raise SignatureError(f"not a numeric parameter value: {value!r}")


def is_exact(a: Scalar) -> bool:
    return isinstance(a, Fraction)


def is_nonpositive_integer(a: Scalar) -> bool:
    """Pole predicate: exact test for Fractions, banded test for floats."""
    if isinstance(a, Fraction):
        return a.denominator == 1 and a <= 0
    return a <= 0.5 and abs(a - round(a)) <= FLOAT_POLE_TOL


def check_not_pole(a: Scalar, context: str = "parameter") -> None:
    if is_nonpositive_integer(a):
        raise PoleError(f"{context} = {a} is a non-positive integer")


def pochhammer(a: Scalar, n: int) -> Scalar:
    """Rising factorial a(a+1)...(a+n-1), computed as an explicit product.

    Exact for Fraction input, float for float input; returns 1 for n = 0.
    Never evaluated through the Gamma function, so it is total and pole-free
    for every finite a.
    """
    if n < 0:
        raise ValueError(f"pochhammer needs n >= 0, got {n}")
    one = Fraction(1) if isinstance(a, Fraction) else 1.0
    result = one
    for k in range(n):
        result *= a + k
    return result


def pochhammer_ratio_step(a: Scalar, b: Scalar, k: int) -> Scalar:
    """Multiplicative step (a+k)/(b+k) of the ratio pochhammer(a,n)/pochhammer(b,n).

    Composing steps k = 0..n-1 reproduces the full ratio without forming
    either product.
    """
    if k < 0:
        raise ValueError(f"ratio step needs k >= 0, got {k}")
    den = b + k
    if isinstance(den, Fraction):
        if den == 0:
            raise PoleError(f"ratio step denominator b + k = {b} + {k} = 0")
    elif abs(den) <= FLOAT_POLE_TOL:
        raise PoleError(f"ratio step denominator b + k = {den} within pole guard")
    return (a + k) / den


def require_symbols(params: ParameterMap, needed: tuple[str, ...], context: str) -> None:
    """Reject parameter maps that do not bind every needed symbol."""
    missing = [s for s in needed if s not in params]
    if missing:
        raise SignatureError(f"{context}: unbound symbols {missing}")
    unknown = [s for s in params if s not in SYMBOLS]
    if unknown:
        raise SignatureError(f"{context}: unknown symbols {unknown}")


def format_scalar(a: Scalar) -> str:
    """Canonical string form: "p/q" (or "p") for exact values, repr for floats."""
    if isinstance(a, Fraction):
        return str(a)
    return repr(a)
