"""Ordered abelian value groups and their convex-subgroup structure.

Two families are supported:

* ``lex`` products of integer lines (Z) and rational lines (Q), compared
  lexicographically with index 0 MOST significant.  The convex subgroups of
  such a product are exactly the suffix subgroups (first k coordinates zero).
* ``surd`` groups Z + Z*sqrt(d) for a square-free d >= 2, ordered as real
  numbers.  They are dense, archimedean of rank 1, and not n-divisible for
  any n >= 2.

The trivial group is represented as ``lex[]`` (empty component list); all of
its elements compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal, Optional, Sequence, Union

from .errors import (
    DescriptorMismatchError,
    PreconditionError,
    UnsupportedOperationError,
)
from .exactmath import floor_quadratic, is_square_free, pell_fundamental, surd_sign

Line = Literal["Z", "Q"]
INTEGER_LINE: Line = "Z"
RATIONAL_LINE: Line = "Q"

CoordInput = Union[int, Fraction, str]


@dataclass(frozen=True)
class GroupDescriptor:
    """An ordered abelian group from one of the two supported families."""

    family: Literal["lex", "surd"]
    components: tuple[Line, ...] = ()
    d: int = 0

    def __post_init__(self):
        if self.family == "lex":
            if any(c not in ("Z", "Q") for c in self.components):
                raise ValueError("lex components must be 'Z' or 'Q'")
            if self.d != 0:
                raise ValueError("lex groups carry no radicand")
        elif self.family == "surd":
            if self.components:
                raise ValueError("surd groups carry no component list")
            if not is_square_free(self.d):
                raise ValueError("surd radicand must be square-free and >= 2")
        else:
            raise ValueError(f"unknown family {self.family!r}")
        # descriptors are hashed on every element hash; precompute once
        object.__setattr__(
            self, "_hash", hash((self.family, self.components, self.d))
        )

    def __hash__(self):
        return self._hash

    @staticmethod
    def lex(components: Iterable[str]) -> "GroupDescriptor":
        return GroupDescriptor("lex", tuple(components))

    @staticmethod
    def surd(d: int) -> "GroupDescriptor":
        return GroupDescriptor("surd", (), d)

    @property
    def rank(self) -> int:
        return len(self.components) if self.family == "lex" else 1

    @property
    def is_trivial(self) -> bool:
        return self.family == "lex" and not self.components

    @property
    def text(self) -> str:
        if self.family == "lex":
            return "lex[" + ",".join(self.components) + "]"
        return f"surd({self.d})"

    def element(self, coords: Sequence[CoordInput] | CoordInput) -> "GroupElement":
        if not isinstance(coords, (list, tuple)):
            coords = (coords,)
        return GroupElement(self, tuple(coords))

    def zero(self) -> "GroupElement":
        if self.family == "surd":
            return GroupElement(self, (0, 0))
        return GroupElement(self, (Fraction(0),) * len(self.components))

    def step_unit(self) -> "GroupElement":
        """A canonical small positive element used for default precision steps.

        For a discrete group this is the least positive element; for a dense
        lex product it is the unit vector of the least significant coordinate,
        and for a surd group it is 1.
        """
        if self.family == "surd":
            return GroupElement(self, (1, 0))
        if not self.components:
            return self.zero()
        coords = [Fraction(0)] * len(self.components)
        coords[-1] = Fraction(1)
        return GroupElement(self, tuple(coords))


@dataclass(frozen=True)
class GroupElement:
    """An element of a :class:`GroupDescriptor`, stored in canonical form."""

    descriptor: GroupDescriptor
    coords: tuple

    @classmethod
    def _raw(cls, descriptor: GroupDescriptor, coords: tuple) -> "GroupElement":
        """Skip validation for coordinates already in canonical form;
        arithmetic on canonical elements stays canonical."""
        el = object.__new__(cls)
        object.__setattr__(el, "descriptor", descriptor)
        object.__setattr__(el, "coords", coords)
        return el

    def __post_init__(self):
        if self.descriptor.family == "surd":
            if len(self.coords) != 2:
                raise ValueError("surd elements take integer pairs (a, b)")
            canon_ab = []
            for c in self.coords:
                c = Fraction(c)
                if c.denominator != 1:
                    raise ValueError("surd coordinates must be integers")
                canon_ab.append(int(c))
            object.__setattr__(self, "coords", tuple(canon_ab))
            return
        comps = self.descriptor.components
        if len(self.coords) != len(comps):
            raise ValueError(
                f"expected {len(comps)} coordinates, got {len(self.coords)}"
            )
        canon = []
        for line, c in zip(comps, self.coords):
            c = Fraction(c)
            if line == INTEGER_LINE and c.denominator != 1:
                raise ValueError(f"coordinate {c} is not an integer on a Z line")
            canon.append(c)
        object.__setattr__(self, "coords", tuple(canon))

    def _require_same(self, other: "GroupElement"):
        if self.descriptor != other.descriptor:
            raise DescriptorMismatchError(
                f"elements of {self.descriptor.text} and {other.descriptor.text}"
            )

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._require_same(other)
        return GroupElement._raw(
            self.descriptor, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        self._require_same(other)
        return GroupElement._raw(
            self.descriptor, tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self) -> "GroupElement":
        return GroupElement._raw(self.descriptor, tuple(-a for a in self.coords))

    def __mul__(self, k: int) -> "GroupElement":
        if not isinstance(k, int):
            return NotImplemented
        return GroupElement._raw(self.descriptor, tuple(a * k for a in self.coords))

    __rmul__ = __mul__

    def __abs__(self) -> "GroupElement":
        return -self if self.sign() < 0 else self

    def sign(self) -> int:
        if self.descriptor.family == "surd":
            return surd_sign(self.coords[0], self.coords[1], self.descriptor.d)
        for c in self.coords:
            if c != 0:
                return 1 if c > 0 else -1
        return 0

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def _cmp(self, other: "GroupElement") -> int:
        self._require_same(other)
        if self.descriptor.family == "surd":
            return surd_sign(
                self.coords[0] - other.coords[0],
                self.coords[1] - other.coords[1],
                self.descriptor.d,
            )
        # tuple comparison is lexicographic, exactly the group order
        if self.coords == other.coords:
            return 0
        return -1 if self.coords < other.coords else 1

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    @property
    def text(self) -> str:
        if self.descriptor.family == "surd":
            return f"({self.coords[0]},{self.coords[1]})"
        if len(self.coords) == 1:
            return str(self.coords[0])
        return "[" + ",".join(str(c) for c in self.coords) + "]"

    def __str__(self):
        return self.text


@dataclass(frozen=True)
class ConvexSubgroup:
    """A convex subgroup, identified by the first coordinate index it leaves
    free.

    ``suffix_start == 0`` is the full group, ``suffix_start == rank`` the
    trivial subgroup.  For surd groups (rank 1) the only values are 0 (full)
    and 1 (trivial).
    """

    descriptor: GroupDescriptor
    suffix_start: int

    def __post_init__(self):
        if not 0 <= self.suffix_start <= self.descriptor.rank:
            raise ValueError(
                f"suffix index {self.suffix_start} outside 0..{self.descriptor.rank}"
            )

    @property
    def is_full(self) -> bool:
        return self.suffix_start == 0

    @property
    def is_trivial(self) -> bool:
        return self.suffix_start == self.descriptor.rank

    def contains(self, x: GroupElement) -> bool:
        if x.descriptor != self.descriptor:
            raise DescriptorMismatchError("element of a different group")
        if self.descriptor.family == "surd":
            return self.is_full or x.is_zero()
        return all(c == 0 for c in x.coords[: self.suffix_start])

    @property
    def text(self) -> str:
        if self.descriptor.family == "surd":
            return "trivial" if self.is_trivial else "full"
        return f"suffix k={self.suffix_start}"


def group_cmp(a: GroupElement, b: GroupElement) -> int:
    """Total order, -1/0/+1.  Lex order compares coordinate 0 first; surd
    groups compare as real numbers via an exact sign rule."""
    return a._cmp(b)


def group_add(a: GroupElement, b: GroupElement) -> GroupElement:
    return a + b


def group_neg(a: GroupElement) -> GroupElement:
    return -a


def group_scale(k: int, a: GroupElement) -> GroupElement:
    return a * k


def group_arith(op: str, a: GroupElement, b: GroupElement | int | None = None):
    """Dispatch for the CLI/service layer: op in {add, neg, scale}."""
    if op == "add":
        return a + b
    if op == "neg":
        return -a
    if op == "scale":
        if not isinstance(b, int):
            raise PreconditionError("scale takes an integer factor")
        return a * b
    raise PreconditionError(f"unknown group operation {op!r}")


def is_in_nG(G: GroupDescriptor, x: GroupElement, n: int) -> bool:
    """True iff x = n*y for some y in G."""
    if n < 2:
        raise PreconditionError("n must be at least 2")
    if x.descriptor != G:
        raise DescriptorMismatchError("element of a different group")
    if G.family == "surd":
        return x.coords[0] % n == 0 and x.coords[1] % n == 0
    for line, c in zip(G.components, x.coords):
        if line == INTEGER_LINE and c.numerator % n != 0:
            return False
    return True


def divide_exact(x: GroupElement, n: int) -> GroupElement:
    """The unique y with n*y = x; requires x in nG."""
    if not is_in_nG(x.descriptor, x, n):
        raise PreconditionError(f"{x.text} is not divisible by {n}")
    if x.descriptor.family == "surd":
        return GroupElement(x.descriptor, (x.coords[0] // n, x.coords[1] // n))
    return GroupElement(x.descriptor, tuple(c / n for c in x.coords))


def least_positive(G: GroupDescriptor) -> Optional[GroupElement]:
    """The least positive element, or None when the group is dense or trivial."""
    if G.family == "surd":
        return None
    if not G.components or G.components[-1] != INTEGER_LINE:
        return None
    coords = [Fraction(0)] * len(G.components)
    coords[-1] = Fraction(1)
    return GroupElement(G, tuple(coords))


def first_nonzero_index(x: GroupElement) -> int:
    for i, c in enumerate(x.coords):
        if c != 0:
            return i
    raise PreconditionError("the zero element has no leading coordinate")


def minimal_convex_containing(gamma: GroupElement) -> ConvexSubgroup:
    """The smallest convex subgroup containing gamma (gamma != 0)."""
    if gamma.is_zero():
        raise PreconditionError("gamma must be nonzero")
    G = gamma.descriptor
    if G.family == "surd":
        return ConvexSubgroup(G, 0)
    return ConvexSubgroup(G, first_nonzero_index(gamma))


def delta_gamma(G: GroupDescriptor, gamma: GroupElement, p: int) -> ConvexSubgroup:
    """The maximal convex subgroup containing gamma whose quotient by the
    smallest convex subgroup around gamma is p-divisible.

    On a lex product this is the suffix extending the one generated by gamma
    backwards across rational lines only; on a surd group it is everything.
    """
    if gamma.descriptor != G:
        raise DescriptorMismatchError("gamma belongs to a different group")
    if gamma.sign() <= 0:
        raise PreconditionError("gamma must be positive")
    if G.family == "surd":
        return ConvexSubgroup(G, 0)
    j = first_nonzero_index(gamma)
    while j > 0 and G.components[j - 1] == RATIONAL_LINE:
        j -= 1
    return ConvexSubgroup(G, j)


def formula_member_delta(
    G: GroupDescriptor, x: GroupElement, gamma: GroupElement, p: int
) -> bool:
    """Decide membership of x in {y : [0, p|y|] is covered by [0, p*gamma] + pG}.

    Exact decision procedure for lex products.  An interval [0, beta] with
    beta > 0 forces every element to vanish before the leading coordinate of
    beta and realises, at the integer-line coordinates from there on, every
    residue pattern mod p: the leading coordinate of beta is a multiple of p
    (beta is p times something), so its residue set is already full, and the
    trailing coordinates of an interval element are unconstrained.  The
    covering therefore holds iff no integer line sits strictly between the
    leading coordinates of x and gamma.  Surd groups are dense, so every
    bounded interval is covered and the answer is always True.
    """
    if gamma.descriptor != G or x.descriptor != G:
        raise DescriptorMismatchError("operands belong to a different group")
    if gamma.sign() <= 0:
        raise PreconditionError("gamma must be positive")
    if G.family == "surd":
        return True
    if x.is_zero():
        return True
    kx = first_nonzero_index(x)
    kg = first_nonzero_index(gamma)
    return all(G.components[i] == RATIONAL_LINE for i in range(kx, kg))


def max_p_divisible_convex(G: GroupDescriptor, p: int) -> ConvexSubgroup:
    """The maximal p-divisible convex subgroup: the longest all-rational
    suffix of a lex product, trivial for surd groups."""
    if G.family == "surd":
        return ConvexSubgroup(G, 1)
    j = len(G.components)
    while j > 0 and G.components[j - 1] == RATIONAL_LINE:
        j -= 1
    return ConvexSubgroup(G, j)


def quotient_descriptor(G: GroupDescriptor, C: ConvexSubgroup) -> GroupDescriptor:
    """The group G/C.  Quotients of surd groups are either G itself (C
    trivial) or the trivial group lex[] (C full)."""
    if C.descriptor != G:
        raise DescriptorMismatchError("subgroup of a different group")
    if G.family == "surd":
        return G if C.is_trivial else GroupDescriptor.lex(())
    return GroupDescriptor.lex(G.components[: C.suffix_start])


def project_to_quotient(x: GroupElement, C: ConvexSubgroup) -> GroupElement:
    """The image of x in G/C."""
    q = quotient_descriptor(x.descriptor, C)
    if x.descriptor.family == "surd":
        return x if C.is_trivial else q.zero()
    return GroupElement(q, x.coords[: C.suffix_start])


def _surd_mul(G: GroupDescriptor, u: tuple[int, int], v: tuple[int, int]) -> tuple[int, int]:
    # ring product (a + b sqrt d)(c + e sqrt d); Z[sqrt d] is closed under it
    a, b = u
    c, e = v
    return (a * c + G.d * b * e, a * e + b * c)


def dense_approx_witness(
    G: GroupDescriptor, n: int, tau: GroupElement, eps: GroupElement
) -> GroupElement:
    """An element eta of nG with |tau - eta| < eps, for a surd group.

    Uses the null sequence of inverse powers of the fundamental Pell unit:
    once n*lambda^m < eps, the multiple eta = n*floor(tau / (n*lambda^m)) *
    lambda^m lands within n*lambda^m of tau.  All floors are exact, so the
    construction never fails.
    """
    if G.family != "surd":
        raise UnsupportedOperationError("not a dense family")
    if tau.descriptor != G or eps.descriptor != G:
        raise DescriptorMismatchError("operands belong to a different group")
    if eps.sign() <= 0:
        raise PreconditionError("eps must be positive")
    x, y = pell_fundamental(G.d)
    lam = (x, -y)  # 1/(x + y sqrt d), strictly between 0 and 1
    while group_cmp(GroupElement(G, (n * lam[0], n * lam[1])), eps) >= 0:
        lam = _surd_mul(G, lam, lam)
    la, lb = lam
    ta, tb = tau.coords
    # tau / (n*lam) rationalised by the conjugate; norm(lam) = 1 so the
    # denominator is n^2 > 0
    P = ta * n * la - G.d * tb * n * lb
    Q = tb * n * la - ta * n * lb
    R = n * n * (la * la - G.d * lb * lb)
    k = floor_quadratic(P, Q, G.d, R)
    return GroupElement(G, (n * k * la, n * k * lb))
