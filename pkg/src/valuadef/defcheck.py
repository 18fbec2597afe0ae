"""Executable checks for the explicit defining formulas, run with the exact
witness constructions the arguments provide.

Universally quantified set containments are never decided outright: each
check verifies the claimed biconditional on decided samples and, where the
argument supplies one, constructs an exact counterexample witness and
verifies it by exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import hahn, oag, ovf
from .coeffs import QuadraticExtension, Rationals, RationalsAsRealClosedModel
from .errors import PreconditionError
from .hahn import FieldDescriptor, TruncatedSeries
from .oag import GroupDescriptor, GroupElement
from .ovf import ValuationSpec, classify_value_group, member_M
from .ratfunc import MultiPoly, RatFunc
from .report import CheckReport, format_rational
from .sampling import DEFAULT_SEED, Sampler


def _fmt(x: TruncatedSeries) -> str:
    from .parser import format_series

    return format_series(x)


# ---------------------------------------------------------------------------
# case (i): discrete value group, M_v = { x : |x^2/b| < 1 }


def check_thm_i(
    spec: ValuationSpec,
    b: TruncatedSeries,
    samples: int = 1000,
    seed: int = DEFAULT_SEED,
) -> CheckReport:
    """On each sample x, |x^2/b| < 1 must agree with membership in the
    maximal ideal; b must realise the least positive value of the group."""
    fd = spec.field
    q = spec.value_group()
    lp = oag.least_positive(q)
    if lp is None:
        raise PreconditionError("the value group of the coarsening is not discrete")
    vb = hahn.valuation(b)
    if oag.project_to_quotient(vb, spec.convex) != lp:
        raise PreconditionError("v(b) is not the minimal positive element")

    sampler = Sampler(seed)
    b_inv = hahn.inverse(b)
    one = hahn.one(fd)
    report = CheckReport(
        check="thm-i",
        params={"field": fd.text, "subgroup": spec.convex.text, "b": _fmt(b)},
        seed=seed,
        samples=samples,
    )
    adversarial = [
        hahn.zero(fd),
        one,
        -one,
        b,
        -b,
        b_inv,
        b * b,
        hahn.constant(fd, 2),
        one + b,
        one - b,
    ]
    for i in range(samples):
        x = adversarial[i] if i < len(adversarial) else sampler.series(fd)
        if x.is_exact_zero():
            lhs = True  # |0/b| = 0 < 1
        else:
            s = x * x * b_inv
            lhs = hahn.sign(one - hahn.abs_series(s)) > 0
        rhs = member_M(spec, x)
        if lhs != rhs:
            report.add_failure(
                input=_fmt(x),
                expected=f"|x^2/b|<1 iff x in M (both {rhs})",
                got=f"lhs={lhs} rhs={rhs}",
            )
    return report


# ---------------------------------------------------------------------------
# case (ii): value group not closed in its divisible hull


def select_param_ii(
    spec: ValuationSpec, n: int = 2
) -> tuple[GroupElement, TruncatedSeries]:
    """The classifier's witness gamma (not in nG, with nG dense around it)
    and the positive monomial b = t^gamma."""
    cls = classify_value_group(spec)
    w = cls.not_closed_in_divisible_hull
    if w is None or w[1] != n:
        raise PreconditionError(
            f"no not-closed-in-divisible-hull witness for n={n} in "
            f"{spec.value_group().text}"
        )
    gamma = w[0]
    return gamma, hahn.monomial(spec.field, gamma)


def s_b_member(
    spec: ValuationSpec, b: TruncatedSeries, n: int, x: TruncatedSeries
) -> bool:
    """Membership in S_b = {x : x >= 0 and x^n/b < 1}, evaluated through the
    equivalent valuation form n*v(x) > v(b); the two sides never tie because
    v(b) is outside nG."""
    if x.is_exact_zero():
        return True
    if hahn.sign(x) < 0:
        return False
    gamma = hahn.valuation(b)
    return oag.group_cmp(n * hahn.valuation(x), gamma) > 0


def _sample_s_b(
    sampler: Sampler, fd: FieldDescriptor, gamma: GroupElement, n: int
) -> TruncatedSeries:
    G = fd.value_group
    for _ in range(500):
        g = sampler.group_element(G)
        if oag.group_cmp(n * g, gamma) > 0:
            x = hahn.monomial(fd, g, abs(sampler.fraction(nonzero=True)))
            tail = sampler.series(fd, max_support=2)
            if tail.terms:
                # park the tail strictly above the leading exponent
                x = x + tail.shift(g - hahn.valuation(tail) + G.step_unit())
            if hahn.sign(x) > 0:
                return x
    raise RuntimeError("sampling S_b failed")


def check_thm_ii(
    spec: ValuationSpec,
    b: TruncatedSeries,
    n: int = 2,
    samples: int = 1000,
    seed: int = DEFAULT_SEED,
) -> CheckReport:
    """Verify O_v = { y : y^4 S_b is contained in S_b } on decided samples.

    For v(y) >= 0 the containment is checked on sampled members of S_b.  For
    v(y) < 0 the argument's witness is constructed exactly: a z = t^zeta with
    gamma + v(y) < n*zeta < gamma - v(y) makes z/y^2 a member whose product
    with y^4 is not.
    """
    fd = spec.field
    G = fd.value_group
    gamma = hahn.valuation(b)
    if oag.is_in_nG(G, gamma, n):
        raise PreconditionError("v(b) must lie outside n*G")
    if hahn.sign(b) <= 0:
        raise PreconditionError("b must be positive")

    sampler = Sampler(seed)
    report = CheckReport(
        check="thm-ii",
        params={"field": fd.text, "b": _fmt(b), "n": n},
        seed=seed,
        samples=samples,
    )
    one = hahn.one(fd)
    t_pos = hahn.monomial(fd, abs(sampler.group_element(G)) + G.step_unit())
    adversarial = [
        one,
        hahn.constant(fd, 7),
        t_pos,
        hahn.inverse(t_pos),
        one + t_pos,
    ]
    step = G.step_unit()
    for i in range(samples):
        y = adversarial[i] if i < len(adversarial) else sampler.series(fd, nonzero=True)
        if y.is_exact_zero():
            y = one
        vy = hahn.valuation(y)
        if vy.sign() >= 0:
            for _ in range(3):
                x = _sample_s_b(sampler, fd, gamma, n)
                y4x = (y.truncate(vy + step).pow(4) * x).truncate(
                    4 * vy + hahn.valuation(x) + step
                )
                if not s_b_member(spec, b, n, y4x):
                    report.add_failure(
                        input=f"y={_fmt(y)} x={_fmt(x)}",
                        expected="y^4*x in S_b",
                        got="outside",
                    )
        else:
            eta = oag.dense_approx_witness(G, n, gamma, -vy)
            zeta = oag.divide_exact(eta, n)
            lo = oag.group_cmp(gamma + vy, n * zeta) < 0
            hi = oag.group_cmp(n * zeta, gamma - vy) < 0
            if not (lo and hi):
                report.add_failure(
                    input=f"y={_fmt(y)}",
                    expected="gamma+v(y) < n*zeta < gamma-v(y)",
                    got=f"zeta={zeta.text} lo={lo} hi={hi}",
                    witness=zeta.text,
                )
                continue
            z = hahn.monomial(fd, zeta)
            y_head = y.truncate(vy + step)
            y2_inv = hahn.inverse(y_head * y_head, -2 * vy + step)
            w_in = (z * y2_inv).truncate(zeta - 2 * vy + step)
            w_out = (y_head * y_head * z).truncate(2 * vy + zeta + step)
            if not s_b_member(spec, b, n, w_in):
                report.add_failure(
                    input=f"y={_fmt(y)}",
                    expected="z/y^2 in S_b",
                    got="outside",
                    witness=f"zeta={zeta.text}",
                )
            if s_b_member(spec, b, n, w_out):
                report.add_failure(
                    input=f"y={_fmt(y)}",
                    expected="y^4*(z/y^2) outside S_b",
                    got="member",
                    witness=f"zeta={zeta.text}",
                )
    return report


# ---------------------------------------------------------------------------
# case (iii): residue field not closed in its real closure


@dataclass(frozen=True)
class ThmIIIInstance:
    """A monic integer quadratic X^2 + lin*X + const with irrational real
    roots, exactly one of them inside (a, b), and f(a) < 0 < f(b)."""

    lin: int
    const: int
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        disc = Fraction(self.lin * self.lin - 4 * self.const)
        from .exactmath import rational_nth_root

        if disc <= 0:
            raise PreconditionError("the quadratic must have two real roots")
        if rational_nth_root(disc, 2) is not None:
            raise PreconditionError("the quadratic must have no rational root")
        if not self.a < self.b:
            raise PreconditionError("need a < b")
        if not (self.f_eval(self.a) < 0 < self.f_eval(self.b)):
            raise PreconditionError("need f(a) < 0 < f(b)")

    def f_eval(self, x: Fraction) -> Fraction:
        return x * x + self.lin * x + self.const

    def lift_eval(self, x: TruncatedSeries) -> TruncatedSeries:
        fd = x.field
        return x * x + hahn.constant(fd, self.lin) * x + hahn.constant(fd, self.const)

    @property
    def text(self) -> str:
        parts = ["X^2"]
        if self.lin:
            parts.append(f"{self.lin:+d}X")
        if self.const:
            parts.append(f"{self.const:+d}")
        return "".join(parts)


def default_thm_iii_instance() -> ThmIIIInstance:
    return ThmIIIInstance(lin=0, const=-2, a=Fraction(1), b=Fraction(2))


def residue_sign_witness(
    inst: ThmIIIInstance, eps: Fraction
) -> Fraction:
    """A rational x with a < x < x + eps < b and f(x) < 0 < f(x + eps),
    found by bisecting toward the unique root in (a, b).

    The window (max(a, r - eps), min(r, b - eps)) around the root r is a
    nonempty open interval, so once the bracket is tight enough its midpoint
    verifies exactly.
    """
    eps = Fraction(eps)
    if not (0 < eps < inst.b - inst.a):
        raise PreconditionError("need 0 < eps < b - a")
    lo, hi = inst.a, inst.b
    for _ in range(10_000):
        lower = max(inst.a, hi - eps)
        upper = min(lo, inst.b - eps)
        if lower < upper:
            x = (lower + upper) / 2
            if inst.f_eval(x) < 0 < inst.f_eval(x + eps) and inst.a < x and x + eps < inst.b:
                return x
        mid = (lo + hi) / 2
        if inst.f_eval(mid) < 0:
            lo = mid
        else:
            hi = mid
    raise RuntimeError("bisection failed to localise the root")


def s_set_member(
    spec: ValuationSpec, inst: ThmIIIInstance, x: TruncatedSeries
) -> bool:
    """Membership in S = { x : a0 <= x <= b0 and F(x) < 0 }."""
    fd = spec.field
    a0 = hahn.constant(fd, inst.a)
    b0 = hahn.constant(fd, inst.b)
    if hahn.sign(x - a0) < 0 or hahn.sign(b0 - x) < 0:
        return False
    return hahn.sign(inst.lift_eval(x)) < 0


def _sample_s_set(
    sampler: Sampler, spec: ValuationSpec, inst: ThmIIIInstance
) -> TruncatedSeries:
    fd = spec.field
    G = fd.value_group
    for _ in range(500):
        den = sampler.randint(1, 64)
        q = inst.a + Fraction(sampler.randint(0, den * 4), den * 4) * (inst.b - inst.a)
        if not inst.f_eval(q) < 0:
            continue
        tail = sampler.series(fd, max_support=2)
        x = hahn.constant(fd, q)
        if not tail.is_exact_zero() and tail.terms:
            vt = hahn.valuation(tail)
            x = x + tail.shift(-vt + G.step_unit())
        if s_set_member(spec, inst, x):
            return x
    raise RuntimeError("sampling S failed")


def check_thm_iii(
    spec: ValuationSpec,
    inst: Optional[ThmIIIInstance] = None,
    samples: int = 1000,
    seed: int = DEFAULT_SEED,
) -> CheckReport:
    """Verify y + S is contained in S exactly for the non-negative members of
    the maximal ideal, refuting every other decided sample with an exact
    witness."""
    if inst is None:
        inst = default_thm_iii_instance()
    fd = spec.field
    if not isinstance(fd.coefficient_field, Rationals) or isinstance(
        fd.coefficient_field, RationalsAsRealClosedModel
    ):
        raise PreconditionError(
            "the residue field must be the rational coefficient field"
        )
    if not spec.is_canonical:
        raise PreconditionError("the check runs on the canonical valuation")

    sampler = Sampler(seed)
    report = CheckReport(
        check="thm-iii",
        params={
            "field": fd.text,
            "f": inst.text,
            "a": format_rational(inst.a),
            "b": format_rational(inst.b),
        },
        seed=seed,
        samples=samples,
    )
    G = fd.value_group
    a0 = hahn.constant(fd, inst.a)
    one = hahn.one(fd)
    t_pos = hahn.monomial(fd, abs(sampler.group_element(G)) + G.step_unit())
    adversarial = [
        t_pos,
        -t_pos,
        hahn.constant(fd, Fraction(1, 2)),
        hahn.constant(fd, 2),
        hahn.inverse(t_pos),
        -hahn.inverse(t_pos),
        hahn.zero(fd),
        one + t_pos,
        hahn.constant(fd, inst.b - inst.a),
    ]
    for i in range(samples):
        y = adversarial[i] if i < len(adversarial) else sampler.series(fd)
        if y.is_exact_zero():
            continue  # y = 0 shifts nothing; both sides of the equivalence hold
        vy = hahn.valuation(y)
        sy = hahn.sign(y)
        in_M = member_M(spec, y)
        if in_M and sy >= 0:
            for _ in range(3):
                x = _sample_s_set(sampler, spec, inst)
                if not s_set_member(spec, inst, x + y):
                    report.add_failure(
                        input=f"y={_fmt(y)} x={_fmt(x)}",
                        expected="x+y in S",
                        got="outside",
                    )
            continue
        # the sample is outside {y in M_v, y >= 0}: exhibit a violation
        if sy < 0:
            if s_set_member(spec, inst, a0 + y):
                report.add_failure(
                    input=f"y={_fmt(y)}",
                    expected="a0+y outside S (a0+y < a0)",
                    got="member",
                )
            continue
        if vy.sign() < 0:
            if s_set_member(spec, inst, a0 + y):
                report.add_failure(
                    input=f"y={_fmt(y)}",
                    expected="a0+y outside S (y infinite)",
                    got="member",
                )
            continue
        # v(y) = 0 and y > 0: residue in (0, b-a) admits a sign witness
        r = hahn.residue(y)
        if 0 < r < inst.b - inst.a:
            x_w = residue_sign_witness(inst, r)
            z = hahn.constant(fd, x_w)
            ok_in = s_set_member(spec, inst, z)
            ok_out = not s_set_member(spec, inst, z + y)
            if not (ok_in and ok_out):
                report.add_failure(
                    input=f"y={_fmt(y)}",
                    expected="z in S and z+y outside S",
                    got=f"in={ok_in} out={ok_out}",
                    witness=format_rational(x_w),
                )
        else:
            if s_set_member(spec, inst, a0 + y):
                report.add_failure(
                    input=f"y={_fmt(y)}",
                    expected="a0+y outside S (residue >= b-a)",
                    got="member",
                )
    return report


# ---------------------------------------------------------------------------
# the density example: R defined by "1 + x^4 is a fourth power"


def density_phi_member(x: RatFunc, fd: FieldDescriptor) -> bool:
    """Decide the formula 'there is y with 1 + x^4 = y^4' for a univariate
    rational function x over the coefficient field of fd.

    Nonconstant x never satisfies it (encoded as an axiom of the checker,
    following the cited root-counting lemma); a constant a satisfies it iff
    1 + a^4 is a fourth power in the coefficient field, which for the real
    closed model is automatic.
    """
    if x.num.nvars != 1:
        raise PreconditionError("the formula is evaluated for univariate x")
    cf = fd.coefficient_field
    # constancy: x' = 0, i.e. num' * den == num * den'
    d_num = x.num.derivative(0)
    d_den = x.den.derivative(0)
    if d_num * x.den != x.num * d_den:
        return False
    a = _constant_value(x)
    return cf.is_nth_power(cf.coerce(1 + a**4), 4)


def _constant_value(x: RatFunc) -> Fraction:
    for k in range(0, 50):
        pt = [Fraction(k)]
        if x.den.evaluate(pt) != 0:
            return x.num.evaluate(pt) / x.den.evaluate(pt)
    raise RuntimeError("could not find a point avoiding the denominator zeros")


def density_convex_hull_check(
    fd: FieldDescriptor, samples: int = 1000, seed: int = DEFAULT_SEED
) -> CheckReport:
    """Verify that bounding by constants satisfying the fourth-power formula
    captures exactly the valuation ring: z with v(z) >= 0 is trapped between
    -(|residue(z)|+1) and +(|residue(z)|+1), while z with v(z) < 0 escapes
    every sampled constant."""
    cf = fd.coefficient_field
    if not isinstance(cf, RationalsAsRealClosedModel):
        raise PreconditionError(
            "the hull check needs the real-closed-model coefficient field"
        )
    sampler = Sampler(seed)
    report = CheckReport(
        check="density",
        params={"field": fd.text, "mode": cf.text},
        seed=seed,
        samples=samples,
    )
    for i in range(samples):
        z = sampler.series(fd, max_den=12)
        if i == 0:
            z = hahn.zero(fd)
        if z.is_exact_zero():
            expected_member = True
            c = Fraction(1)
            bounded = _bounded_by(fd, z, c)
            phi_ok = density_phi_member(RatFunc.constant(c), fd) and density_phi_member(
                RatFunc.constant(-c), fd
            )
            member = bounded and phi_ok
        else:
            v = hahn.valuation(z)
            expected_member = v.sign() >= 0
            if expected_member:
                c = abs(hahn.residue(z)) + 1
                bounded = _bounded_by(fd, z, c)
                phi_ok = density_phi_member(
                    RatFunc.constant(c), fd
                ) and density_phi_member(RatFunc.constant(-c), fd)
                member = bounded and phi_ok
            else:
                member = False
                for _ in range(5):
                    c = Fraction(sampler.randint(1, 20))
                    if not density_phi_member(RatFunc.constant(c), fd):
                        continue
                    if _bounded_by(fd, z, c):
                        member = True
                        break
        if member != expected_member:
            report.add_failure(
                input=_fmt(z),
                expected=f"member={expected_member} (v(z) sign rule)",
                got=f"member={member}",
            )
    return report


def _bounded_by(fd: FieldDescriptor, z: TruncatedSeries, c: Fraction) -> bool:
    upper = hahn.constant(fd, c)
    lower = hahn.constant(fd, -c)
    return hahn.sign(upper - z) >= 0 and hahn.sign(z - lower) >= 0


def density_rationals_mode_check(
    fd: FieldDescriptor, bound: int = 50
) -> CheckReport:
    """Over plain Q the fourth-power formula degenerates: among constants
    with numerator and denominator up to the bound, only 0 satisfies it."""
    cf = fd.coefficient_field
    if not isinstance(cf, Rationals) or isinstance(cf, RationalsAsRealClosedModel):
        raise PreconditionError("this mode runs over the plain rationals")
    report = CheckReport(
        check="density",
        params={"field": fd.text, "mode": cf.text, "bound": bound},
        seed=0,
        samples=0,
    )
    count = 0
    for num in range(-bound, bound + 1):
        for den in range(1, bound + 1):
            a = Fraction(num, den)
            if a.numerator != num or a.denominator != den:
                continue  # skip non-reduced duplicates
            count += 1
            got = density_phi_member(RatFunc.constant(a), fd)
            if got != (a == 0):
                report.add_failure(
                    input=str(a),
                    expected=str(a == 0),
                    got=str(got),
                )
    report.samples = count
    return report


# ---------------------------------------------------------------------------
# which sufficient condition applies


def cor32_classifier(spec: ValuationSpec) -> CheckReport:
    """Name every applicable sufficient condition for definability of the
    coarsening: a discrete value group, a value group not closed in its
    divisible hull, a residue field dense in its real closure but not real
    closed, or a p-regular non-p-divisible value group.

    The residue field of a strict coarsening is a Hahn field with a
    nontrivial value group; such a field is not dense in its real closure,
    so the residue-side condition only fires for the canonical valuation.
    """
    cls = classify_value_group(spec)
    cases = []
    if cls.discrete:
        cases.append("thm-i")
    if cls.not_closed_in_divisible_hull is not None:
        cases.append("thm-ii")
    residue_dense_not_rc = (
        spec.is_canonical
        and spec.field.coefficient_field.dense_in_real_closure_not_real_closed
    )
    if residue_dense_not_rc:
        cases.append("thm-iii")
    if cls.p_regular_not_p_divisible is not None:
        cases.append(f"cor-i(p={cls.p_regular_not_p_divisible})")

    report = CheckReport(
        check="cor32",
        params={
            "field": spec.field.text,
            "subgroup": spec.convex.text,
            "cases": ";".join(cases) if cases else "none",
        },
        seed=0,
        samples=len(cases),
    )
    # internal consistency against the classifier
    if cls.discrete and cls.dense:
        report.add_failure("classification", "discrete xor dense", "both")
    if cls.divisible and cls.p_regular_not_p_divisible is not None:
        report.add_failure("classification", "divisible excludes cor-i", "both")
    if "thm-i" in cases and oag.least_positive(spec.value_group()) is None:
        report.add_failure("thm-i", "least positive element exists", "missing")
    return report
