"""Multivariate rational functions over Q with a weighted monomial valuation
and the generator-shift automorphisms used by the non-definability demo.

The valuation of f is min over monomials of the weight sum, numerator minus
denominator.  This rule is adopted as the definition for this module: it is
faithful for the intended generators because their leading data are
algebraically independent, so distinct monomials never cancel at the
minimum.  It is NOT valid for arbitrary substitutions.

No gcd normalisation is performed; equality is decided by cross
multiplication.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from .errors import PreconditionError
from .report import CheckReport
from .sampling import DEFAULT_SEED, Sampler


def _pad(exps: tuple[int, ...], nvars: int) -> tuple[int, ...]:
    return exps + (0,) * (nvars - len(exps))


def _grlex_key(exps: tuple[int, ...]):
    return (sum(exps), exps)


@dataclass(frozen=True)
class MultiPoly:
    """A polynomial in generators s_0..s_{nvars-1}, stored as a sorted tuple
    of (exponent tuple, nonzero rational coefficient) in graded lex order."""

    nvars: int
    terms: tuple

    @staticmethod
    def from_dict(nvars: int, data: Mapping[tuple[int, ...], Fraction]) -> "MultiPoly":
        items = [
            (_pad(tuple(e), nvars), Fraction(c)) for e, c in data.items() if c != 0
        ]
        items.sort(key=lambda ec: _grlex_key(ec[0]))
        return MultiPoly(nvars, tuple(items))

    @staticmethod
    def zero(nvars: int = 1) -> "MultiPoly":
        return MultiPoly(nvars, ())

    @staticmethod
    def constant(c, nvars: int = 1) -> "MultiPoly":
        return MultiPoly.from_dict(nvars, {(0,) * nvars: Fraction(c)})

    @staticmethod
    def generator(i: int, nvars: Optional[int] = None) -> "MultiPoly":
        n = nvars if nvars is not None else i + 1
        e = [0] * n
        e[i] = 1
        return MultiPoly.from_dict(n, {tuple(e): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def with_nvars(self, nvars: int) -> "MultiPoly":
        if nvars == self.nvars:
            return self
        if nvars < self.nvars:
            raise ValueError("cannot shrink the generator count")
        return MultiPoly.from_dict(nvars, {e: c for e, c in self.terms})

    def _aligned(self, other: "MultiPoly"):
        n = max(self.nvars, other.nvars)
        return self.with_nvars(n), other.with_nvars(n)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(other, self.nvars)
        a, b = self._aligned(other)
        acc = {e: c for e, c in a.terms}
        for e, c in b.terms:
            acc[e] = acc.get(e, Fraction(0)) + c
        return MultiPoly.from_dict(a.nvars, acc)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(other, self.nvars)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MultiPoly(
                self.nvars,
                tuple((e, c * Fraction(other)) for e, c in self.terms)
                if other != 0
                else (),
            )
        a, b = self._aligned(other)
        acc: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in a.terms:
            for e2, c2 in b.terms:
                e = tuple(x + y for x, y in zip(e1, e2))
                acc[e] = acc.get(e, Fraction(0)) + c1 * c2
        return MultiPoly.from_dict(a.nvars, acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.constant(1, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            if n > 1:
                base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._aligned(other)
        return a.terms == b.terms

    def __hash__(self):
        return hash(self.terms)

    def substitute_shift(self, i: int, j: int) -> "MultiPoly":
        """Substitute s_i -> s_i + s_j (i != j), by binomial expansion."""
        if i == j:
            raise PreconditionError("substitution needs distinct generators")
        n = max(self.nvars, i + 1, j + 1)
        acc: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.with_nvars(n).terms:
            ei = e[i]
            for m in range(ei + 1):
                coeff = c * math.comb(ei, m)
                new = list(e)
                new[i] = m
                new[j] = new[j] + (ei - m)
                key = tuple(new)
                acc[key] = acc.get(key, Fraction(0)) + coeff
        return MultiPoly.from_dict(n, acc)

    def evaluate(self, point: Iterable[Fraction]) -> Fraction:
        pt = list(point)
        total = Fraction(0)
        for e, c in self.terms:
            term = c
            for x, k in zip(pt, e):
                if k:
                    term *= x**k
            total += term
        return total

    def derivative(self, i: int) -> "MultiPoly":
        acc: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms:
            if i < len(e) and e[i] > 0:
                new = list(e)
                new[i] -= 1
                acc[tuple(new)] = acc.get(tuple(new), Fraction(0)) + c * e[i]
        return MultiPoly.from_dict(self.nvars, acc)

    @property
    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            mono = "*".join(
                f"s{i}" + (f"^{k}" if k > 1 else "")
                for i, k in enumerate(e)
                if k > 0
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class RatFunc:
    """A quotient of multivariate polynomials; the denominator is nonzero."""

    num: MultiPoly
    den: MultiPoly

    def __post_init__(self):
        if self.den.is_zero():
            raise ZeroDivisionError("zero denominator")
        n = max(self.num.nvars, self.den.nvars)
        object.__setattr__(self, "num", self.num.with_nvars(n))
        object.__setattr__(self, "den", self.den.with_nvars(n))

    @staticmethod
    def from_poly(p: MultiPoly) -> "RatFunc":
        return RatFunc(p, MultiPoly.constant(1, p.nvars))

    @staticmethod
    def constant(c, nvars: int = 1) -> "RatFunc":
        return RatFunc.from_poly(MultiPoly.constant(c, nvars))

    @staticmethod
    def generator(i: int, nvars: Optional[int] = None) -> "RatFunc":
        return RatFunc.from_poly(MultiPoly.generator(i, nvars))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, MultiPoly):
            return RatFunc.from_poly(other)
        return RatFunc.constant(other, self.num.nvars)

    def __add__(self, other):
        o = self._coerce(other)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __eq__(self, other):
        if not isinstance(other, (RatFunc, MultiPoly, int, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        raise TypeError("RatFunc is not hashable (no canonical form)")

    @property
    def text(self) -> str:
        if self.den == MultiPoly.constant(1, self.den.nvars):
            return self.num.text
        return f"({self.num.text}) / ({self.den.text})"


def rf_arith(op: str, f: RatFunc, g: RatFunc) -> RatFunc:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "div":
        return f / g
    raise PreconditionError(f"unknown rational-function operation {op!r}")


@dataclass(frozen=True)
class WeightAssignment:
    """Rational weight of each generator; weights[i] is the valuation of s_i."""

    weights: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "weights", tuple(Fraction(w) for w in self.weights)
        )

    @staticmethod
    def ex1(count: int) -> "WeightAssignment":
        """s_0 -> -1, s_i -> 0: the discrete-value-group example."""
        return WeightAssignment((Fraction(-1),) + (Fraction(0),) * (count - 1))

    @staticmethod
    def ex2(count: int) -> "WeightAssignment":
        """s_0 -> -1, s_i -> 1/i: the dense-value-group example."""
        return WeightAssignment(
            (Fraction(-1),) + tuple(Fraction(1, i) for i in range(1, count))
        )

    @property
    def text(self) -> str:
        return ",".join(f"s{i}={w}" for i, w in enumerate(self.weights))


def _min_monomial_weight(p: MultiPoly, w: WeightAssignment) -> Fraction:
    if p.nvars > len(w.weights):
        raise PreconditionError(
            f"weights cover {len(w.weights)} generators, polynomial uses {p.nvars}"
        )
    best = None
    for e, _ in p.terms:
        total = sum(
            (k * w.weights[i] for i, k in enumerate(e) if k), start=Fraction(0)
        )
        if best is None or total < best:
            best = total
    if best is None:
        raise PreconditionError("the zero polynomial has no weight")
    return best


def weighted_valuation(f: RatFunc, w: WeightAssignment) -> Fraction:
    """v(f) = min monomial weight of the numerator minus the denominator's."""
    if f.is_zero():
        raise PreconditionError("valuation of the zero function undefined")
    return _min_monomial_weight(f.num, w) - _min_monomial_weight(f.den, w)


def automorphism_apply(f: RatFunc, n: int) -> RatFunc:
    """The ring automorphism fixing every generator except s_{n+1}, which is
    sent to s_{n+1} + s_0."""
    return RatFunc(
        f.num.substitute_shift(n + 1, 0), f.den.substitute_shift(n + 1, 0)
    )


def automorphism_invert(f: RatFunc, n: int) -> RatFunc:
    """Inverse substitution s_{n+1} -> s_{n+1} - s_0."""
    def unshift(p: MultiPoly) -> MultiPoly:
        i, j = n + 1, 0
        m = max(p.nvars, i + 1)
        acc: dict[tuple[int, ...], Fraction] = {}
        for e, c in p.with_nvars(m).terms:
            ei = e[i]
            for k in range(ei + 1):
                coeff = c * math.comb(ei, k) * (-1) ** (ei - k)
                new = list(e)
                new[i] = k
                new[j] = new[j] + (ei - k)
                key = tuple(new)
                acc[key] = acc.get(key, Fraction(0)) + coeff
        return MultiPoly.from_dict(m, acc)

    return RatFunc(unshift(f.num), unshift(f.den))


def _sample_ratfunc(sampler: Sampler, nvars: int) -> RatFunc:
    def poly(nonzero: bool) -> MultiPoly:
        while True:
            acc: dict[tuple[int, ...], Fraction] = {}
            for _ in range(sampler.randint(1, 3)):
                e = tuple(sampler.randint(0, 2) for _ in range(nvars))
                acc[e] = acc.get(e, Fraction(0)) + sampler.fraction(bound=9)
            p = MultiPoly.from_dict(nvars, acc)
            if not nonzero or not p.is_zero():
                return p

    return RatFunc(poly(False), poly(True))


def undefinability_demo(
    weights: WeightAssignment,
    n: int,
    sample_count: int = 500,
    seed: int = DEFAULT_SEED,
) -> CheckReport:
    """Run the automorphism demonstration on concrete data.

    Verifies that s_{n+1} lies in the valuation ring while its image under
    the generator-shift automorphism does not, that the automorphism fixes
    s_0..s_n, and that it acts as a ring homomorphism on sampled pairs.  The
    report is a demonstration of the mechanism on concrete data, not a proof
    of non-definability.
    """
    if len(weights.weights) < n + 2:
        raise PreconditionError(
            f"need weights for s_0..s_{n + 1}, got {len(weights.weights)}"
        )
    if not weights.weights[0] < 0:
        raise PreconditionError("the demo requires v(s_0) < 0")
    if any(w < 0 for w in weights.weights[1:]):
        raise PreconditionError("the demo requires v(s_i) >= 0 for i >= 1")

    nvars = len(weights.weights)
    sampler = Sampler(seed)
    s_next = RatFunc.generator(n + 1, nvars)
    v_before = weighted_valuation(s_next, weights)
    image = automorphism_apply(s_next, n)
    v_after = weighted_valuation(image, weights)

    report = CheckReport(
        check="undefinable",
        params={
            "weights": weights.text,
            "n": n,
            "observed_v_s": v_before,
            "observed_v_alpha_s": v_after,
        },
        seed=seed,
        samples=sample_count,
    )
    if v_before < 0:
        report.add_failure("v(s_{n+1})", ">= 0", str(v_before))
    if not v_after < 0:
        report.add_failure("v(alpha(s_{n+1}))", "< 0", str(v_after))
    for i in range(n + 1):
        s_i = RatFunc.generator(i, nvars)
        if automorphism_apply(s_i, n) != s_i:
            report.add_failure(f"alpha(s{i})", f"s{i}", "moved")
    for _ in range(sample_count):
        f = _sample_ratfunc(sampler, nvars)
        g = _sample_ratfunc(sampler, nvars)
        if automorphism_apply(f + g, n) != automorphism_apply(f, n) + automorphism_apply(g, n):
            report.add_failure(
                input=f"f={f.text} g={g.text}",
                expected="alpha(f+g) = alpha(f)+alpha(g)",
                got="mismatch",
            )
        if automorphism_apply(f * g, n) != automorphism_apply(f, n) * automorphism_apply(g, n):
            report.add_failure(
                input=f"f={f.text} g={g.text}",
                expected="alpha(fg) = alpha(f)alpha(g)",
                got="mismatch",
            )
    return report
