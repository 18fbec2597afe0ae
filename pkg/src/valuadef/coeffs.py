"""Coefficient fields for Hahn series: Q, real quadratic extensions Q(sqrt d),
and a model of a real closed field that is exact over Q but answers n-th
power queries as the real field would."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import UnsupportedOperationError
from .exactmath import is_square_free, rational_nth_root, surd_sign

Coefficient = Union[Fraction, "QuadCoeff"]


@dataclass(frozen=True)
class QuadCoeff:
    """An element a + b*sqrt(d) of Q(sqrt d), with rational a, b."""

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    def _coerce(self, other) -> "QuadCoeff | None":
        if isinstance(other, QuadCoeff):
            return other if other.d == self.d else None
        if isinstance(other, (int, Fraction)):
            return QuadCoeff(Fraction(other), Fraction(0), self.d)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadCoeff(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadCoeff(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadCoeff(
            self.a * o.a + self.d * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self) -> "QuadCoeff":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero coefficient")
        return QuadCoeff(self.a / n, -self.b / n, self.d)

    def sign(self) -> int:
        return surd_sign(self.a, self.b, self.d)

    def __str__(self):
        return f"q({self.a},{self.b})"


class Rationals:
    """The field of rational numbers with exact arithmetic."""

    text = "Q"
    is_real_closed_model = False
    dense_in_real_closure_not_real_closed = True

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def coerce(self, value) -> Fraction:
        return Fraction(value)

    def sign(self, c) -> int:
        c = Fraction(c)
        return 0 if c == 0 else (1 if c > 0 else -1)

    def is_zero(self, c) -> bool:
        return c == 0

    def invert(self, c):
        if c == 0:
            raise ZeroDivisionError("division by zero coefficient")
        return 1 / Fraction(c)

    def nth_root(self, c, n: int):
        return rational_nth_root(Fraction(c), n)

    def is_nth_power(self, c, n: int) -> bool:
        return self.nth_root(c, n) is not None

    def format(self, c) -> str:
        return str(Fraction(c))

    def __eq__(self, other):
        return type(other) is type(self)

    def __hash__(self):
        return hash(type(self).__name__)

    def __repr__(self):
        return self.text


class RationalsAsRealClosedModel(Rationals):
    """Rationals with the n-th power oracle of the real field.

    Arithmetic is exact over Q; only the power queries differ: any positive
    element counts as an even power and any element as an odd power, the way
    a real closed field would answer.  Root extraction still requires an
    exactly representable rational root and raises otherwise.
    """

    text = "real-closed-model"
    is_real_closed_model = True
    dense_in_real_closure_not_real_closed = False

    def is_nth_power(self, c, n: int) -> bool:
        if n % 2 == 1:
            return True
        return Fraction(c) >= 0

    def nth_root(self, c, n: int):
        r = rational_nth_root(Fraction(c), n)
        if r is None and self.is_nth_power(c, n):
            raise UnsupportedOperationError(
                "the modelled real closed field contains this root, "
                "but it is not exactly representable over Q"
            )
        return r


class QuadraticExtension:
    """The real quadratic field Q(sqrt d), embedded in the reals."""

    is_real_closed_model = False
    dense_in_real_closure_not_real_closed = True

    def __init__(self, d: int):
        if not is_square_free(d):
            raise ValueError("radicand must be square-free and >= 2")
        self.d = d

    @property
    def text(self) -> str:
        return f"Q(sqrt({self.d}))"

    def zero(self) -> QuadCoeff:
        return QuadCoeff(Fraction(0), Fraction(0), self.d)

    def one(self) -> QuadCoeff:
        return QuadCoeff(Fraction(1), Fraction(0), self.d)

    def coerce(self, value) -> QuadCoeff:
        if isinstance(value, QuadCoeff):
            if value.d != self.d:
                raise ValueError("coefficient from a different extension")
            return value
        return QuadCoeff(Fraction(value), Fraction(0), self.d)

    def sign(self, c) -> int:
        return self.coerce(c).sign()

    def is_zero(self, c) -> bool:
        return self.coerce(c).is_zero()

    def invert(self, c) -> QuadCoeff:
        return self.coerce(c).inverse()

    def sqrt(self, c) -> QuadCoeff | None:
        """The non-negative square root in Q(sqrt d), if one exists.

        Writing (x + y sqrt d)^2 = a + b sqrt d forces the norm a^2 - d b^2
        to be a rational square s^2, and then x^2 = (a + s)/2 or (a - s)/2.
        """
        c = self.coerce(c)
        if c.is_zero():
            return self.zero()
        if c.sign() < 0:
            return None
        if c.b == 0:
            x = rational_nth_root(c.a, 2)
            if x is not None:
                return QuadCoeff(x, Fraction(0), self.d)
            y2 = c.a / self.d
            y = rational_nth_root(y2, 2)
            if y is not None:
                return QuadCoeff(Fraction(0), y, self.d)
            return None
        s = rational_nth_root(c.norm(), 2)
        if s is None:
            return None
        for x2 in ((c.a + s) / 2, (c.a - s) / 2):
            x = rational_nth_root(x2, 2)
            if x is None or x == 0:
                continue
            root = QuadCoeff(x, c.b / (2 * x), self.d)
            if root * root == c:
                return root if root.sign() > 0 else -root
        return None

    def nth_root(self, c, n: int) -> QuadCoeff | None:
        """n-th roots for n a power of two (iterated square roots); other n
        are served only for coefficients that are embedded rationals."""
        c = self.coerce(c)
        if c.b == 0:
            r = rational_nth_root(c.a, n)
            if r is not None:
                return QuadCoeff(r, Fraction(0), self.d)
            # Q(sqrt d) may still contain the root, fall through for n = 2^k
        m = n
        while m % 2 == 0:
            m //= 2
        if m != 1:
            if c.b == 0:
                return None
            raise UnsupportedOperationError(
                f"n-th roots in {self.text} are supported for n a power of two"
            )
        root = c
        k = n
        while k > 1:
            root = self.sqrt(root)
            if root is None:
                return None
            k //= 2
        return root

    def is_nth_power(self, c, n: int) -> bool:
        return self.nth_root(c, n) is not None

    def format(self, c) -> str:
        c = self.coerce(c)
        if c.b == 0:
            return str(c.a)
        return str(c)

    def __eq__(self, other):
        return isinstance(other, QuadraticExtension) and other.d == self.d

    def __hash__(self):
        return hash(("QuadraticExtension", self.d))

    def __repr__(self):
        return self.text


CoefficientField = Union[Rationals, RationalsAsRealClosedModel, QuadraticExtension]
