"""Exact arithmetic for the exponents that index l_p norms.

Exponents live in [1, infinity], with infinity as a first-class point.
Every identity between exponents (duality, interpolation averages) is
computed in rational arithmetic; only norm values are ever floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

ExponentLike = Union["ExtendedExponent", Fraction, int, float, str]


def _parse_text(text: str) -> Fraction | None:
    token = text.strip()
    if token.lower() in ("inf", "infinity"):
        return None
    if any(ch in token for ch in ".eE"):
        raise ValueError(
            f"decimal exponents are not accepted, write an exact rational like '4/3': {text!r}"
        )
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse exponent {text!r}: expected 'inf' or 'a/b'") from exc


class ExtendedExponent:
    """A rational exponent in [1, inf) or the point at infinity."""

    __slots__ = ("_finite",)

    def __init__(self, value: ExponentLike) -> None:
        if isinstance(value, ExtendedExponent):
            finite = value._finite
        elif isinstance(value, str):
            finite = _parse_text(value)
        elif isinstance(value, float) and math.isinf(value) and value > 0:
            finite = None
        elif isinstance(value, float) and not value.is_integer():
            raise TypeError(
                f"finite exponents must be exact rationals, got float {value!r}; "
                "pass a Fraction, an int, or a string like '4/3'"
            )
        else:
            finite = Fraction(value)
        if finite is not None and finite < 1:
            raise ValueError(f"exponent must lie in [1, inf], got {finite}")
        object.__setattr__(self, "_finite", finite)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("ExtendedExponent is immutable")

    @property
    def is_infinite(self) -> bool:
        return self._finite is None

    @property
    def fraction(self) -> Fraction:
        if self._finite is None:
            raise ValueError("the infinite exponent has no finite value")
        return self._finite

    @property
    def reciprocal(self) -> Fraction:
        """1/e as an exact Fraction; the infinite exponent gives 0."""
        return Fraction(0) if self._finite is None else 1 / self._finite

    @property
    def dual(self) -> "ExtendedExponent":
        """The conjugate e' with 1/e + 1/e' = 1; dual(1) = inf, dual(inf) = 1."""
        if self._finite is None:
            return ExtendedExponent(1)
        if self._finite == 1:
            return ExtendedExponent(math.inf)
        return ExtendedExponent(self._finite / (self._finite - 1))

    def __float__(self) -> float:
        return math.inf if self._finite is None else float(self._finite)

    def _key(self) -> tuple[bool, Fraction]:
        return (self._finite is None, self._finite if self._finite is not None else Fraction(0))

    def __eq__(self, other: object) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._finite == other._finite

    def __lt__(self, other: object) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._key() < other._key()

    def __le__(self, other: object) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._key() <= other._key()

    def __gt__(self, other: object) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other.__lt__(self)

    def __ge__(self, other: object) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other.__le__(self)

    def __hash__(self) -> int:
        return hash(math.inf) if self._finite is None else hash(self._finite)

    def __str__(self) -> str:
        return "inf" if self._finite is None else str(self._finite)

    def __repr__(self) -> str:
        return f"ExtendedExponent({str(self)!r})"


def _coerce(value: object) -> ExtendedExponent | None:
    if isinstance(value, ExtendedExponent):
        return value
    try:
        return ExtendedExponent(value)  # type: ignore[arg-type]
    except (TypeError, ValueError):
        return None


def dual_exponent(e: ExponentLike) -> ExtendedExponent:
    """Return e' with 1/e + 1/e' = 1, computed exactly."""
    return ExtendedExponent(e).dual


def parse_exponent(text: str) -> ExtendedExponent:
    """Parse 'inf' or an exact rational like '2' or '4/3'; decimals are rejected."""
    return ExtendedExponent(text)


def interpolate_exponent(e0: ExponentLike, e1: ExponentLike, theta: Fraction) -> ExtendedExponent:
    """The exponent e_theta with 1/e_theta = (1-theta)/e0 + theta/e1, exactly."""
    theta = Fraction(theta)
    if not 0 <= theta <= 1:
        raise ValueError(f"interpolation parameter must lie in [0, 1], got {theta}")
    recip = (1 - theta) * ExtendedExponent(e0).reciprocal + theta * ExtendedExponent(e1).reciprocal
    if recip == 0:
        return ExtendedExponent(math.inf)
    return ExtendedExponent(1 / recip)


ONE = ExtendedExponent(1)
TWO = ExtendedExponent(2)
INF = ExtendedExponent(math.inf)
