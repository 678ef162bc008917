"""Scalar layer for the two numeric modes.

The mode travels with the values themselves: ``int``/``Fraction``/``Sqrt3``
coordinates mean exact arithmetic with decidable equality, ``float``
coordinates mean double precision compared against ``EPS`` after
normalization.  Mixing a float into an exact computation demotes the whole
triple to float at construction time; exact scalars never inspect floats.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

# Comparison tolerance applied to normalized (unit-norm) float representatives.
EPS = 1e-9

# Smallest acceptable span determinant in float mode before a configuration
# is rejected as too degenerate to evaluate.
CONDITION_FLOOR = 1e-12

_RationalLike = (int, Fraction)


class Sqrt3:
    """Exact element ``a + b*sqrt(3)`` of the real quadratic field Q(sqrt 3).

    Closed under +, -, *, / and totally ordered; ``a`` and ``b`` are
    ``Fraction``.  Equality against plain rationals holds when ``b == 0``.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    def __setattr__(self, name, value):
        raise AttributeError("Sqrt3 values are immutable")

    # -- coercion helpers --

    @staticmethod
    def _lift(other):
        if isinstance(other, Sqrt3):
            return other
        if isinstance(other, bool):
            return NotImplemented
        if isinstance(other, _RationalLike):
            return Sqrt3(other, 0)
        return NotImplemented

    # -- arithmetic --

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return Sqrt3(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return Sqrt3(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return Sqrt3(o.a - self.a, o.b - self.b)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return Sqrt3(self.a * o.a + 3 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        # (a+b r)/(c+d r) = (a+b r)(c-d r)/(c^2-3 d^2); the norm vanishes
        # only for the zero divisor because sqrt(3) is irrational.
        norm = o.a * o.a - 3 * o.b * o.b
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 3)")
        return Sqrt3(
            (self.a * o.a - 3 * self.b * o.b) / norm,
            (self.b * o.a - self.a * o.b) / norm,
        )

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __neg__(self):
        return Sqrt3(-self.a, -self.b)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- ordering and equality --

    def sign(self) -> int:
        """Sign of the real value, computed with rational arithmetic only."""
        if self.b == 0:
            return _rational_sign(self.a)
        if self.a == 0:
            return _rational_sign(self.b)
        sa, sb = _rational_sign(self.a), _rational_sign(self.b)
        if sa == sb:
            return sa
        # mixed signs: compare a^2 against 3 b^2
        d = self.a * self.a - 3 * self.b * self.b
        return _rational_sign(d) * sa

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        # rational values must hash like their Fraction counterpart
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def _cmp(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o).sign()

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c >= 0

    def __bool__(self):
        return not self.is_zero()

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(3.0)

    def __repr__(self):
        return f"Sqrt3({self.a!r}, {self.b!r})"


SQRT3 = Sqrt3(0, 1)

Scalar = Union[int, Fraction, Sqrt3, float]
ExactScalar = Union[int, Fraction, Sqrt3]


def _rational_sign(x) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def is_exact_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, Sqrt3)) and not isinstance(x, bool)


def scalar_sign(x) -> int:
    """Sign of an exact scalar (int, Fraction or Sqrt3)."""
    if isinstance(x, Sqrt3):
        return x.sign()
    return _rational_sign(x)


def rational_parts(x) -> tuple[Fraction, ...]:
    """Rational coefficients of an exact scalar over the basis (1, sqrt 3)."""
    if isinstance(x, Sqrt3):
        return (x.a, x.b)
    return (Fraction(x),)
