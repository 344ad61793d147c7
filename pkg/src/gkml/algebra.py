"""Exact arithmetic in the standard Goedel algebra on [0, 1].

Truth values are :class:`fractions.Fraction` instances restricted to the unit
interval.  Fractions are immutable, always kept in lowest terms and compare
exactly, which is all the semantics needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

TruthValue = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

RationalLike = Union[Fraction, int, str]


class AlgebraError(ValueError):
    """Raised for out-of-range values or malformed order maps."""


def truth(value: RationalLike) -> Fraction:
    """Coerce ``value`` to a truth value, checking it lies in [0, 1]."""
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise AlgebraError(f"floats are not accepted as truth values: {value!r}")
    v = Fraction(value)
    if not ZERO <= v <= ONE:
        raise AlgebraError(f"truth value {v} outside [0,1]")
    return v


def parse_rational(text: str) -> Fraction:
    """Parse the literal syntax ``"p/q"`` (or a bare integer) into a truth value."""
    s = text.strip()
    num, sep, den = s.partition("/")
    if not num.isdigit() or (sep and not den.isdigit()):
        raise AlgebraError(f"malformed rational literal {text!r}")
    q = int(den) if sep else 1
    if q == 0:
        raise AlgebraError(f"zero denominator in {text!r}")
    v = Fraction(int(num), q)
    if v > ONE:
        raise AlgebraError(f"rational {text!r} outside [0,1]")
    return v


def format_rational(v: Fraction) -> str:
    """Canonical lowest-terms rendering: ``"0"``, ``"1"`` or ``"p/q"``."""
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


def format_decimal(v: Fraction, digits: int) -> str:
    q = round(v, digits)
    return f"{float(q):.{digits}f}"


def tnorm(a: Fraction, b: Fraction) -> Fraction:
    return a if a <= b else b


def residuum(a: Fraction, b: Fraction) -> Fraction:
    return ONE if a <= b else b


def join(a: Fraction, b: Fraction) -> Fraction:
    return b if a <= b else a


def neg(a: Fraction) -> Fraction:
    return ONE if a == 0 else ZERO


@dataclass(frozen=True)
class OrderMap:
    """A finite, strictly increasing map on truth values fixing 0 and 1.

    ``pairs`` is sorted by input; application outside the declared domain
    raises :class:`AlgebraError`.
    """

    pairs: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self) -> None:
        pairs = tuple(sorted((truth(a), truth(b)) for a, b in self.pairs))
        object.__setattr__(self, "pairs", pairs)
        table = dict(pairs)
        if table.get(ZERO) != ZERO or table.get(ONE) != ONE:
            raise AlgebraError("order map must contain (0,0) and (1,1)")
        for (a1, b1), (a2, b2) in zip(pairs, pairs[1:]):
            if a1 == a2 or b1 >= b2:
                raise AlgebraError(f"order map not strictly increasing at {a1}, {a2}")

    @property
    def domain(self) -> frozenset[Fraction]:
        return frozenset(a for a, _ in self.pairs)

    def __call__(self, value: Fraction) -> Fraction:
        for a, b in self.pairs:
            if a == value:
                return b
        raise AlgebraError(f"value {format_rational(value)} not in order map domain")

    @classmethod
    def identity(cls, domain: Iterable[Fraction] = ()) -> "OrderMap":
        values = {ZERO, ONE, *map(truth, domain)}
        return cls(tuple((v, v) for v in values))


def build_order_map(domain: Iterable[RationalLike], alpha: RationalLike,
                    epsilon: RationalLike) -> OrderMap:
    """Map the interior of ``domain`` into ``(alpha, alpha + epsilon)``.

    0 and 1 are fixed; interior points keep their order and are spread at
    equal spacing inside the open target interval.
    """
    alpha, epsilon = Fraction(alpha), Fraction(epsilon)
    if epsilon <= 0:
        raise AlgebraError("empty target interval (epsilon must be positive)")
    if alpha < 0 or alpha + epsilon > 1:
        raise AlgebraError(f"target interval ({alpha}, {alpha + epsilon}) not inside [0,1]")
    values = {truth(v) for v in domain}
    interior = sorted(values - {ZERO, ONE})
    step = epsilon / (len(interior) + 1)
    pairs = [(ZERO, ZERO), (ONE, ONE)]
    pairs += [(v, alpha + step * (i + 1)) for i, v in enumerate(interior)]
    return OrderMap(tuple(pairs))
