"""Valuation layer: the canonical Hahn valuation, its coarsenings by convex
subgroups, membership predicates, comparability and value-group
classification.

A valuation is represented intrinsically by the convex subgroup H of the
canonical value group that it collapses: H trivial is the canonical
valuation, H the full group the trivial one.  Everything the in-scope
formulas touch is such a coarsening.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import hahn, oag
from .errors import DescriptorMismatchError, PreconditionError
from .hahn import FieldDescriptor, TruncatedSeries
from .oag import ConvexSubgroup, GroupDescriptor, GroupElement
from .report import CheckReport
from .sampling import DEFAULT_SEED, Sampler


@dataclass(frozen=True)
class ValuationSpec:
    field: FieldDescriptor
    convex: ConvexSubgroup

    def __post_init__(self):
        if self.convex.descriptor != self.field.value_group:
            raise DescriptorMismatchError(
                "convex subgroup of a different value group"
            )

    @staticmethod
    def canonical(field: FieldDescriptor) -> "ValuationSpec":
        G = field.value_group
        return ValuationSpec(field, ConvexSubgroup(G, G.rank))

    @staticmethod
    def trivial(field: FieldDescriptor) -> "ValuationSpec":
        return ValuationSpec(field, ConvexSubgroup(field.value_group, 0))

    @property
    def is_canonical(self) -> bool:
        return self.convex.is_trivial

    @property
    def text(self) -> str:
        return f"{self.field.text} / H={self.convex.text}"

    def value_group(self) -> GroupDescriptor:
        """The value group of this coarsening, i.e. the quotient by H."""
        return oag.quotient_descriptor(self.field.value_group, self.convex)


@dataclass(frozen=True)
class GroupClassification:
    discrete: bool
    dense: bool
    divisible: bool
    p_regular_not_p_divisible: Optional[int]
    not_closed_in_divisible_hull: Optional[tuple[GroupElement, int]]


def member_O(spec: ValuationSpec, x: TruncatedSeries) -> bool:
    """x lies in the valuation ring iff v(x) >= 0 or v(x) falls in H."""
    if x.field != spec.field:
        raise DescriptorMismatchError("series over a different field")
    if x.is_exact_zero():
        return True
    v = hahn.valuation(x)
    return v.sign() >= 0 or spec.convex.contains(v)


def member_M(spec: ValuationSpec, x: TruncatedSeries) -> bool:
    """x lies in the maximal ideal iff v(x) > 0 and v(x) is not in H."""
    if x.field != spec.field:
        raise DescriptorMismatchError("series over a different field")
    if x.is_exact_zero():
        return True
    v = hahn.valuation(x)
    return v.sign() > 0 and not spec.convex.contains(v)


def compare_coarsenings(a: ValuationSpec, b: ValuationSpec) -> str:
    """'equal', 'a-finer' or 'b-finer'; a smaller convex subgroup means a
    finer valuation, and suffix subgroups are totally ordered by inclusion."""
    if a.field != b.field:
        raise DescriptorMismatchError("specs over different fields")
    ka, kb = a.convex.suffix_start, b.convex.suffix_start
    if ka == kb:
        return "equal"
    return "a-finer" if ka > kb else "b-finer"


def classify_value_group(spec: ValuationSpec) -> GroupClassification:
    """Classify the value group of the coarsening (the quotient by H).

    Whether any lex product of Z/Q lines fails to be closed in its divisible
    hull: none does within this family, so the witness is only produced for
    surd groups, where (1, 0) is not in 2G while 2G is dense.
    """
    q = spec.value_group()
    lp = oag.least_positive(q)
    discrete = lp is not None
    if q.family == "surd":
        witness = (q.element((1, 0)), 2)
        return GroupClassification(
            discrete=False,
            dense=True,
            divisible=False,
            p_regular_not_p_divisible=2,
            not_closed_in_divisible_hull=witness,
        )
    nontrivial = bool(q.components)
    divisible = all(c == "Q" for c in q.components)
    p_reg = None
    if q.components and q.components[-1] == "Z" and all(
        c == "Q" for c in q.components[:-1]
    ):
        p_reg = 2
    return GroupClassification(
        discrete=discrete,
        dense=nontrivial and not discrete,
        divisible=divisible,
        p_regular_not_p_divisible=p_reg,
        not_closed_in_divisible_hull=None,
    )


def vp_spec(spec: ValuationSpec, p: int) -> ValuationSpec:
    """The coarsening collapsing the maximal p-divisible convex subgroup."""
    if not spec.is_canonical:
        raise PreconditionError("vp is defined from the canonical valuation")
    H = oag.max_p_divisible_convex(spec.field.value_group, p)
    return ValuationSpec(spec.field, H)


def _sample_member(sampler: Sampler, spec: ValuationSpec) -> TruncatedSeries:
    """A random element of the valuation ring: either a series whose lowest
    exponent is forced non-negative, or one supported inside H."""
    fd = spec.field
    G = fd.value_group
    use_H = not spec.convex.is_trivial and sampler.randint(0, 2) == 0
    for _ in range(200):
        s = sampler.series(fd)
        if s.is_exact_zero():
            return s
        if use_H and G.family == "lex":
            k = spec.convex.suffix_start
            pairs = [
                (GroupElement(G, tuple([0] * k) + g.coords[k:]), c)
                for g, c in s.terms
            ]
            s = TruncatedSeries.make(fd, pairs)
            if s.is_exact_zero():
                return s
        else:
            v = hahn.valuation(s)
            if v.sign() < 0:
                s = s.shift(-v + abs(sampler.group_element(G)))
        if member_O(spec, s):
            return s
    raise RuntimeError("sampling a valuation-ring member failed")


def convexity_scan(
    spec: ValuationSpec, sample_count: int = 1000, seed: int = DEFAULT_SEED
) -> CheckReport:
    """Sample x < y < z with x, z in O and check that y lands in O as well."""
    sampler = Sampler(seed)
    report = CheckReport(
        check="convexity",
        params={"field": spec.field.text, "subgroup": spec.convex.text},
        seed=seed,
        samples=sample_count,
    )
    for _ in range(sample_count):
        x = _sample_member(sampler, spec)
        z = _sample_member(sampler, spec)
        if hahn.cmp_series(x, z) > 0:
            x, z = z, x
        lam = sampler.fraction(bound=10)
        lam = abs(lam)
        if lam >= 1 or lam == 0:
            lam = Fraction(1, 2)
        y = x + (z - x).scale(lam)
        if not member_O(spec, y):
            report.add_failure(
                input=f"x={hahn_text(x)} z={hahn_text(z)} lam={lam}",
                expected="y in O",
                got="y outside O",
            )
    return report


def hahn_text(x: TruncatedSeries) -> str:
    from .parser import format_series

    return format_series(x)
