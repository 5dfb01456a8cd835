"""Exact rational intervals and labelled strict/non-strict bounds."""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

_RATIONAL_RE = re.compile(r"^\s*[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?(\s*/\s*\d+)?\s*$")


def parse_rational(text) -> Fraction:
    """Parse ``"0.8"``, ``"4/5"``, ``"1e-4"`` or an int/Fraction exactly.

    Decimal strings are read as exact decimals, never through binary floats.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if isinstance(text, float):
        # repr gives the shortest decimal that round-trips
        return Fraction(repr(text))
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational number: {text!r}")
    if "/" in text:
        num, den = text.split("/")
        value = Fraction(num.strip()) / Fraction(den.strip())
    else:
        value = Fraction(text.strip())
    return value


def q(x) -> Fraction:
    return x if isinstance(x, Fraction) else parse_rational(x)


@dataclass(frozen=True)
class Bound:
    """One side condition ``x > value`` (lower) or ``x < value`` (upper).

    ``strict=False`` turns the comparison into ≥ / ≤.  ``label`` names the
    condition in violation reports, e.g. ``"s < β"``.
    """

    label: str
    value: Fraction
    lower: bool
    strict: bool = True

    def holds(self, x: Fraction) -> bool:
        if self.lower:
            return x > self.value if self.strict else x >= self.value
        return x < self.value if self.strict else x <= self.value


def lower(label: str, value, strict: bool = True) -> Bound:
    return Bound(label, Fraction(value), True, strict)


def upper(label: str, value, strict: bool = True) -> Bound:
    return Bound(label, Fraction(value), False, strict)


@dataclass(frozen=True)
class QInterval:
    """Interval with rational endpoints; ``None`` marks an unbounded side."""

    lo: Optional[Fraction]
    hi: Optional[Fraction]
    lo_open: bool = True
    hi_open: bool = True

    @classmethod
    def open(cls, lo, hi) -> "QInterval":
        return cls(Fraction(lo), Fraction(hi), True, True)

    @classmethod
    def closed(cls, lo, hi) -> "QInterval":
        return cls(Fraction(lo), Fraction(hi), False, False)

    @classmethod
    def everything(cls) -> "QInterval":
        return cls(None, None, True, True)

    @classmethod
    def empty(cls) -> "QInterval":
        return cls(Fraction(1), Fraction(0), True, True)

    @classmethod
    def from_bounds(cls, bounds: Iterable[Bound]) -> "QInterval":
        iv = cls.everything()
        for b in bounds:
            iv = iv.restrict(b)
        return iv

    def restrict(self, b: Bound) -> "QInterval":
        """Intersect with a single bound; on ties the open side wins."""
        if b.lower:
            if self.lo is None or b.value > self.lo:
                return QInterval(b.value, self.hi, b.strict, self.hi_open)
            if b.value == self.lo:
                return QInterval(self.lo, self.hi, self.lo_open or b.strict, self.hi_open)
            return self
        if self.hi is None or b.value < self.hi:
            return QInterval(self.lo, b.value, self.lo_open, b.strict)
        if b.value == self.hi:
            return QInterval(self.lo, self.hi, self.lo_open, self.hi_open or b.strict)
        return self

    def intersect(self, other: "QInterval") -> "QInterval":
        iv = self
        if other.lo is not None:
            iv = iv.restrict(Bound("", other.lo, True, other.lo_open))
        if other.hi is not None:
            iv = iv.restrict(Bound("", other.hi, False, other.hi_open))
        return iv

    @property
    def is_empty(self) -> bool:
        if self.lo is None or self.hi is None:
            return False
        if self.lo > self.hi:
            return True
        return self.lo == self.hi and (self.lo_open or self.hi_open)

    @property
    def bounded(self) -> bool:
        return self.lo is not None and self.hi is not None

    def __contains__(self, x) -> bool:
        x = Fraction(x)
        if self.lo is not None and (x < self.lo or (self.lo_open and x == self.lo)):
            return False
        if self.hi is not None and (x > self.hi or (self.hi_open and x == self.hi)):
            return False
        return True

    @property
    def midpoint(self) -> Fraction:
        if not self.bounded or self.is_empty:
            raise ValueError(f"no midpoint for {self}")
        return (self.lo + self.hi) / 2

    @property
    def width(self) -> Fraction:
        if not self.bounded:
            raise ValueError(f"unbounded interval {self}")
        return max(self.hi - self.lo, Fraction(0))

    def dyadic_points(self, max_depth: int = 10):
        """Interior points ``lo + k (hi-lo) / 2^d`` for odd k, depth 1..max_depth.

        Each depth yields only the points it adds, in increasing order.
        """
        if self.is_empty or not self.bounded or self.lo == self.hi:
            return
        span = self.hi - self.lo
        for depth in range(1, max_depth + 1):
            den = 1 << depth
            for k in range(1, den, 2):
                yield self.lo + span * k / den

    def __str__(self) -> str:
        left = "(" if self.lo_open else "["
        right = ")" if self.hi_open else "]"
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "inf" if self.hi is None else str(self.hi)
        return f"{left}{lo}, {hi}{right}"


@dataclass(frozen=True)
class AlgebraicRoot:
    """The unique root of an integer polynomial inside an isolating interval.

    ``coeffs`` are listed from the leading term down, so ``(5, -20, 12)``
    stands for 5x² - 20x + 12.
    """

    coeffs: tuple
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.poly(self.lo) * self.poly(self.hi) >= 0:
            raise ValueError("interval does not isolate a simple root")

    def poly(self, x) -> Fraction:
        acc = Fraction(0)
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def compare(self, x) -> int:
        """Sign of ``x - root`` decided exactly (-1, 0 or 1)."""
        x = Fraction(x)
        if x <= self.lo:
            return -1
        if x >= self.hi:
            return 1
        px = self.poly(x)
        if px == 0:
            return 0
        # inside the isolating interval the sign of p changes only at the root
        same_side_as_lo = (px > 0) == (self.poly(self.lo) > 0)
        return 1 if not same_side_as_lo else -1

    def enclosure(self, width) -> tuple:
        """Rational bracket ``(a, b)`` around the root with ``b - a <= width``."""
        a, b = self.lo, self.hi
        sign_a = self.poly(a) > 0
        width = Fraction(width)
        while b - a > width:
            mid = (a + b) / 2
            pm = self.poly(mid)
            if pm == 0:
                return mid, mid
            if (pm > 0) == sign_a:
                a = mid
            else:
                b = mid
        return a, b

    def decimal(self, digits: int = 12) -> str:
        a, b = self.enclosure(Fraction(1, 10 ** (digits + 2)))
        mid = (a + b) / 2
        scaled = mid * 10**digits
        rounded = math.floor(scaled + Fraction(1, 2))
        sign = "-" if rounded < 0 else ""
        rounded = abs(rounded)
        whole, frac = divmod(rounded, 10**digits)
        return f"{sign}{whole}.{frac:0{digits}d}"

    def __float__(self) -> float:
        a, b = self.enclosure(Fraction(1, 2**60))
        return float((a + b) / 2)
