"""Truncated Hahn series with exact arithmetic, valuation, ordering, residue,
inversion and Hensel-style n-th roots.

Every series carries an explicit precision bound: the terms below the bound
are asserted exact, nothing is known above it, and any predicate that cannot
be decided from the known terms raises :class:`PrecisionInsufficientError`
instead of guessing.  Literal (polynomial-support) inputs are exact, with
precision ``None`` standing for infinity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import oag
from .coeffs import CoefficientField, Coefficient, QuadraticExtension, Rationals
from .errors import (
    DescriptorMismatchError,
    ExponentNotDivisibleError,
    NotAnNthPowerError,
    PreconditionError,
    PrecisionInsufficientError,
    UndefinedValuationError,
)
from .oag import GroupDescriptor, GroupElement


@dataclass(frozen=True)
class FieldDescriptor:
    """A Hahn field: coefficient field plus ordered abelian value group."""

    coefficient_field: CoefficientField
    value_group: GroupDescriptor

    @property
    def text(self) -> str:
        return f"{self.coefficient_field.text}(({self.value_group.text}))"

    def __repr__(self):
        return self.text


def _min_prec(
    a: Optional[GroupElement], b: Optional[GroupElement]
) -> Optional[GroupElement]:
    if a is None:
        return b
    if b is None:
        return a
    return a if a <= b else b


def _shift_prec(p: Optional[GroupElement], g: GroupElement) -> Optional[GroupElement]:
    return None if p is None else p + g


@dataclass(frozen=True)
class TruncatedSeries:
    """A Hahn series known exactly below ``precision``.

    ``terms`` is a strictly increasing sequence of (exponent, coefficient)
    pairs with nonzero coefficients and all exponents below the precision
    bound; ``precision is None`` means the series is exact.
    """

    field: FieldDescriptor
    terms: tuple
    precision: Optional[GroupElement] = None

    def __post_init__(self):
        prev = None
        for g, c in self.terms:
            if g.descriptor != self.field.value_group:
                raise DescriptorMismatchError("exponent from a different group")
            if prev is not None and not prev < g:
                raise ValueError("terms must be strictly increasing in exponent")
            if self.field.coefficient_field.is_zero(c):
                raise ValueError("terms must have nonzero coefficients")
            if self.precision is not None and not g < self.precision:
                raise ValueError("terms must lie below the precision bound")
            prev = g

    # -- constructors ------------------------------------------------------

    @classmethod
    def _raw(
        cls,
        field: FieldDescriptor,
        terms: tuple,
        precision: Optional[GroupElement],
    ) -> "TruncatedSeries":
        """Skip validation for term lists already in normal form (sorted,
        nonzero, below precision); the factories below guarantee it."""
        s = object.__new__(cls)
        object.__setattr__(s, "field", field)
        object.__setattr__(s, "terms", terms)
        object.__setattr__(s, "precision", precision)
        return s

    @staticmethod
    def make(
        field: FieldDescriptor,
        pairs: Sequence[tuple[GroupElement, object]],
        precision: Optional[GroupElement] = None,
    ) -> "TruncatedSeries":
        """Normalise arbitrary (exponent, coefficient) pairs: coerce, merge
        equal exponents, drop zeros and terms at or above the precision."""
        cf = field.coefficient_field
        acc: dict[GroupElement, object] = {}
        for g, c in pairs:
            c = cf.coerce(c)
            if g in acc:
                acc[g] = acc[g] + c
            else:
                acc[g] = c
        kept = [
            (g, c)
            for g, c in acc.items()
            if not cf.is_zero(c) and (precision is None or g < precision)
        ]
        kept.sort(key=lambda gc: _sort_key(gc[0]))
        return TruncatedSeries._raw(field, tuple(kept), precision)

    # -- basic queries -----------------------------------------------------

    def is_exact_zero(self) -> bool:
        return not self.terms and self.precision is None

    def leading(self) -> tuple[GroupElement, object]:
        if not self.terms:
            raise PrecisionInsufficientError(
                "no known terms: leading data undecidable"
            )
        return self.terms[0]

    def coefficient_at(self, g: GroupElement):
        for e, c in self.terms:
            if e == g:
                return c
        return self.field.coefficient_field.zero()

    def _require_same(self, other: "TruncatedSeries"):
        if self.field != other.field:
            raise DescriptorMismatchError(
                f"series over {self.field.text} and {other.field.text}"
            )

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._require_same(other)
        prec = _min_prec(self.precision, other.precision)
        return TruncatedSeries.make(
            self.field, list(self.terms) + list(other.terms), prec
        )

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(
            self.field, tuple((g, -c) for g, c in self.terms), self.precision
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._require_same(other)
        if not self.terms or not other.terms:
            # no product term is known; sound under-approximation
            return TruncatedSeries(
                self.field, (), _min_prec(self.precision, other.precision)
            )
        vx = self.terms[0][0]
        vy = other.terms[0][0]
        prec = _min_prec(
            _shift_prec(self.precision, vy), _shift_prec(other.precision, vx)
        )
        out = []
        for gx, cx in self.terms:
            for gy, cy in other.terms:
                e = gx + gy
                if prec is not None and not e < prec:
                    break  # other.terms ascend, later products only grow
                out.append((e, cx * cy))
        return TruncatedSeries.make(self.field, out, prec)

    def scale(self, c) -> "TruncatedSeries":
        cf = self.field.coefficient_field
        c = cf.coerce(c)
        if cf.is_zero(c):
            return TruncatedSeries(self.field, (), self.precision)
        return TruncatedSeries(
            self.field, tuple((g, coeff * c) for g, coeff in self.terms), self.precision
        )

    def shift(self, g: GroupElement) -> "TruncatedSeries":
        """Multiply by the monomial t^g (exact)."""
        return TruncatedSeries(
            self.field,
            tuple((e + g, c) for e, c in self.terms),
            _shift_prec(self.precision, g),
        )

    def pow(self, n: int) -> "TruncatedSeries":
        if n < 0:
            raise PreconditionError("pow takes a non-negative exponent")
        result = one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def truncate(self, prec: Optional[GroupElement]) -> "TruncatedSeries":
        """Cap the precision at ``prec`` (never extends knowledge)."""
        newp = _min_prec(self.precision, prec)
        if newp == self.precision:
            return self
        return TruncatedSeries.make(self.field, self.terms, newp)


def _sort_key(g: GroupElement):
    if g.descriptor.family == "surd":
        # total order key: a + b*sqrt(d) sorts by (sign-aware) comparison;
        # fall back to functools-style comparison through coordinates
        return _SurdKey(g)
    return g.coords


class _SurdKey:
    __slots__ = ("g",)

    def __init__(self, g):
        self.g = g

    def __lt__(self, other):
        return self.g < other.g

    def __eq__(self, other):
        return self.g == other.g


# -- constructors ------------------------------------------------------------


def zero(fd: FieldDescriptor) -> TruncatedSeries:
    return TruncatedSeries(fd, ())


def constant(fd: FieldDescriptor, c) -> TruncatedSeries:
    return TruncatedSeries.make(fd, [(fd.value_group.zero(), c)])


def one(fd: FieldDescriptor) -> TruncatedSeries:
    return constant(fd, 1)


def monomial(fd: FieldDescriptor, g: GroupElement, c=1) -> TruncatedSeries:
    return TruncatedSeries.make(fd, [(g, c)])


# -- spec-surface operations --------------------------------------------------


def series_arith(op: str, x: TruncatedSeries, y: TruncatedSeries) -> TruncatedSeries:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise PreconditionError(f"unknown series operation {op!r}")


def valuation(x: TruncatedSeries) -> GroupElement:
    """Exponent of the lowest nonzero term.

    The exact zero has no valuation (the library signals instead of adopting
    a v(0) convention), and a term-free series of finite precision may still
    be a nonzero element, so it raises a precision error.
    """
    if x.terms:
        return x.terms[0][0]
    if x.precision is None:
        raise UndefinedValuationError("valuation of zero undefined")
    raise PrecisionInsufficientError(
        "all known terms vanish below the precision bound"
    )


def sign(x: TruncatedSeries) -> int:
    """Sign of the element: the sign of its lowest-order coefficient."""
    if x.terms:
        return x.field.coefficient_field.sign(x.terms[0][1])
    if x.precision is None:
        return 0
    raise PrecisionInsufficientError(
        "all known terms vanish below the precision bound"
    )


def abs_series(x: TruncatedSeries) -> TruncatedSeries:
    return -x if sign(x) < 0 else x


def cmp_series(x: TruncatedSeries, y: TruncatedSeries) -> int:
    return sign(x - y)


def residue(x: TruncatedSeries):
    """The coefficient at exponent 0 for elements of the valuation ring;
    elements of negative valuation residue to 0 by convention."""
    cf = x.field.coefficient_field
    if x.is_exact_zero():
        return cf.zero()
    v = valuation(x)
    if v.sign() < 0:
        return cf.zero()
    if v.sign() > 0:
        return cf.zero()
    return x.terms[0][1]


def default_target(fd: FieldDescriptor, result_valuation: GroupElement) -> GroupElement:
    """Default target precision: 16 steps past the result's valuation on a
    discrete group, 8 unit steps on a dense one."""
    G = fd.value_group
    lp = oag.least_positive(G)
    if lp is not None:
        return result_valuation + 16 * lp
    return result_valuation + 8 * G.step_unit()


def inverse(
    x: TruncatedSeries, target_precision: Optional[GroupElement] = None
) -> TruncatedSeries:
    """Multiplicative inverse up to the target precision, by geometric
    expansion around the leading term."""
    v = valuation(x)
    cf = x.field.coefficient_field
    c = x.terms[0][1]
    cinv = cf.invert(c)
    lead_inv = monomial(x.field, -v, cinv)
    if len(x.terms) == 1 and x.precision is None:
        return lead_inv
    if target_precision is None:
        target_precision = default_target(x.field, -v)
    # relative precision of the 1/(1+u) expansion; perturbing x above its own
    # precision moves the inverse above precision(x) - 2v, so cap there
    rel = target_precision + v
    if x.precision is not None:
        rel = _min_prec(rel, x.precision - v)
    u = (x.shift(-v).scale(cinv) - one(x.field)).truncate(rel)
    acc = one(x.field).truncate(rel)
    power = -u
    while power.terms:
        acc = acc + power
        power = (power * (-u)).truncate(rel)
    return acc * lead_inv


def nth_root(
    x: TruncatedSeries, n: int, target_precision: Optional[GroupElement] = None
) -> TruncatedSeries:
    """A y with y^n = x up to the target precision, positive when n is even.

    Requires v(x) divisible by n in the value group and the leading
    coefficient an n-th power in the coefficient field; the root of the
    normalised series 1 + u is then lifted by Newton iteration on Y^n - (1+u),
    which converges since the residue characteristic is zero.
    """
    if n < 2:
        raise PreconditionError("n must be at least 2")
    g = valuation(x)
    G = x.field.value_group
    if not g.is_zero() and not oag.is_in_nG(G, g, n):
        raise ExponentNotDivisibleError(
            f"valuation {g.text} is not divisible by {n} in {G.text}"
        )
    h = oag.divide_exact(g, n) if not g.is_zero() else G.zero()
    cf = x.field.coefficient_field
    c = x.terms[0][1]
    if not cf.is_nth_power(c, n):
        raise NotAnNthPowerError(
            f"leading coefficient {cf.format(c)} is not an {n}-th power"
        )
    r = cf.nth_root(c, n)
    if n % 2 == 0 and cf.sign(r) < 0:
        r = -r
    if len(x.terms) == 1 and x.precision is None:
        return monomial(x.field, h, r)
    if target_precision is None:
        target_precision = default_target(x.field, h)
    rel = target_precision - h
    if x.precision is not None:
        rel = _min_prec(rel, x.precision - g)
    w = (x.shift(-g).scale(cf.invert(c))).truncate(rel)  # 1 + u, v(u) > 0
    y = one(x.field).truncate(rel)
    n_const = constant(x.field, n)
    last_v = None
    while True:
        e = y.pow(n) - w
        if not e.terms:
            break
        ev = e.terms[0][0]
        if last_v is not None and not last_v < ev:
            raise RuntimeError("Newton iteration failed to contract")
        last_v = ev
        denom = inverse(n_const * y.pow(n - 1), rel)
        y = (y - e * denom).truncate(rel)
    return y.shift(h).scale(r)
