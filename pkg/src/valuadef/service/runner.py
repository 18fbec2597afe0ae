"""Dispatch layer shared by the FastAPI routes and the CLI client.

Every surface (HTTP or terminal) builds a :class:`CheckRequest` and funnels
through :func:`run_check`, so identical configurations produce identical
reports no matter which front end issued them.
"""

from __future__ import annotations

import itertools
import os
from fractions import Fraction

from .. import defcheck, hahn, oag, ovf, ratfunc
from ..errors import ParseError, PreconditionError, UndefinedValuationError
from ..oag import ConvexSubgroup
from ..ovf import ValuationSpec
from ..parser import (
    format_series,
    parse_field_descriptor,
    parse_fraction,
    parse_group_descriptor,
    parse_group_element,
    parse_monic_quadratic,
    parse_series,
)
from ..report import CheckReport
from ..sampling import DEFAULT_SEED
from .schemas import (
    CHECK_NAMES,
    CheckRequest,
    EvalRequest,
    EvalResponse,
    GroupRequest,
    GroupResponse,
)

SEED_ENV_VAR = "VALUADEF_SEED"


def resolve_seed(explicit: int | None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get(SEED_ENV_VAR)
    if env:
        return int(env, 0)
    return DEFAULT_SEED


def eval_expression(req: EvalRequest) -> EvalResponse:
    fd = parse_field_descriptor(req.field)
    x = parse_series(fd, req.expression)
    cf = fd.coefficient_field
    try:
        val = hahn.valuation(x).text
    except UndefinedValuationError:
        val = "undefined"
    s = hahn.sign(x)
    return EvalResponse(
        series=format_series(x),
        valuation=val,
        sign={1: "+", 0: "0", -1: "-"}[s],
        residue=cf.format(hahn.residue(x)),
    )


def group_info(req: GroupRequest) -> GroupResponse:
    G = parse_group_descriptor(req.group)
    fd = hahn.FieldDescriptor(_default_cf(), G)
    spec = ValuationSpec.canonical(fd)
    cls = ovf.classify_value_group(spec)
    lp = oag.least_positive(G)
    witness = cls.not_closed_in_divisible_hull
    resp = GroupResponse(
        group=G.text,
        family=G.family,
        rank=G.rank,
        least_positive=lp.text if lp is not None else None,
        discrete=cls.discrete,
        dense=cls.dense,
        divisible=cls.divisible,
        p_regular_not_p_divisible=cls.p_regular_not_p_divisible,
        not_closed_in_divisible_hull=(
            f"gamma={witness[0].text},n={witness[1]}" if witness else None
        ),
    )
    if req.p is not None:
        resp.max_p_divisible_convex = oag.max_p_divisible_convex(G, req.p).text
    return resp


def _default_cf():
    from ..coeffs import Rationals

    return Rationals()


def _spec_from(req: CheckRequest, default_field: str) -> ValuationSpec:
    fd = parse_field_descriptor(req.field or default_field)
    spec = ValuationSpec.canonical(fd)
    if req.suffix is not None:
        spec = ValuationSpec(fd, ConvexSubgroup(fd.value_group, req.suffix))
    return spec


def run_check(name: str, req: CheckRequest) -> CheckReport:
    if name not in CHECK_NAMES:
        raise PreconditionError(f"unknown check {name!r}; known: {', '.join(CHECK_NAMES)}")
    if req.samples < 1:
        raise PreconditionError("sample count must be at least 1")
    seed = resolve_seed(req.seed)

    if name == "thm-i":
        spec = _spec_from(req, "Q((lex[Z]))")
        b = parse_series(spec.field, req.b or "t^(1)")
        return defcheck.check_thm_i(spec, b, req.samples, seed)

    if name == "thm-ii":
        spec = _spec_from(req, "Q((surd(2)))")
        n = req.n or 2
        if req.b is not None:
            b = parse_series(spec.field, req.b)
        else:
            _, b = defcheck.select_param_ii(spec, n)
        return defcheck.check_thm_ii(spec, b, n, req.samples, seed)

    if name == "thm-iii":
        spec = _spec_from(req, "Q((lex[Z]))")
        lin, const = parse_monic_quadratic(req.f or "X^2-2")
        inst = defcheck.ThmIIIInstance(
            lin=lin,
            const=const,
            a=parse_fraction(req.a or "1"),
            b=parse_fraction(req.b0 or "2"),
        )
        return defcheck.check_thm_iii(spec, inst, req.samples, seed)

    if name == "delta-gamma":
        if req.group is None or req.gamma is None:
            raise PreconditionError("delta-gamma needs --group and --gamma")
        G = parse_group_descriptor(req.group)
        gamma = parse_group_element(G, req.gamma)
        p = req.p or 2
        return _delta_gamma_check(G, gamma, p, seed)

    if name == "vp":
        if req.group is not None:
            G = parse_group_descriptor(req.group)
            fd = hahn.FieldDescriptor(_default_cf(), G)
            spec = ValuationSpec.canonical(fd)
        else:
            spec = _spec_from(req, "Q((lex[Z,Q,Q]))")
        p = req.p or 2
        return _vp_check(spec, p, seed)

    if name == "convexity":
        spec = _spec_from(req, "Q((lex[Z]))")
        if req.suffix is not None:
            return ovf.convexity_scan(spec, req.samples, seed)
        return _convexity_all_coarsenings(spec.field, req.samples, seed)

    if name == "density":
        fd = parse_field_descriptor(req.field or "real-closed-model((lex[Q]))")
        from ..coeffs import RationalsAsRealClosedModel

        if isinstance(fd.coefficient_field, RationalsAsRealClosedModel):
            return defcheck.density_convex_hull_check(fd, req.samples, seed)
        return defcheck.density_rationals_mode_check(fd, bound=50)

    if name == "cor32":
        spec = _spec_from(req, "Q((lex[Z]))")
        return defcheck.cor32_classifier(spec)

    if name == "undefinable":
        n = req.n if req.n is not None else 1
        weights = _parse_weights(req.weights or "ex1", n)
        return ratfunc.undefinability_demo(weights, n, req.samples, seed)

    raise PreconditionError(f"unhandled check {name!r}")  # pragma: no cover


def _parse_weights(text: str, n: int) -> ratfunc.WeightAssignment:
    count = max(n + 2, 4)
    if text == "ex1":
        return ratfunc.WeightAssignment.ex1(count)
    if text == "ex2":
        return ratfunc.WeightAssignment.ex2(count)
    entries: dict[int, Fraction] = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part or not part.startswith("s"):
            raise ParseError(f"weight entries look like s0=-1, got {part!r}", 0)
        idx, val = part[1:].split("=", 1)
        entries[int(idx)] = parse_fraction(val)
    size = max(count, max(entries) + 1 if entries else 0)
    weights = [entries.get(i, Fraction(0)) for i in range(size)]
    return ratfunc.WeightAssignment(tuple(weights))


def _delta_gamma_check(G, gamma, p: int, seed: int) -> CheckReport:
    """Compute the definable convex subgroup and cross-check it against the
    independent formula decision procedure on the integer box [-8, 8]^rank."""
    sub = oag.delta_gamma(G, gamma, p)
    report = CheckReport(
        check="delta-gamma",
        params={
            "group": G.text,
            "gamma": gamma.text,
            "p": p,
            "result": sub.text,
        },
        seed=seed,
        samples=0,
    )
    if G.family == "surd":
        boxes = [(a, b) for a in range(-8, 9) for b in range(-8, 9)]
        for coords in boxes:
            x = G.element(coords)
            agree = oag.formula_member_delta(G, x, gamma, p) == sub.contains(x)
            report.samples += 1
            if not agree:
                report.add_failure(x.text, "formula == subgroup membership", "disagree")
        return report
    for coords in itertools.product(range(-8, 9), repeat=G.rank):
        x = G.element(list(coords))
        member = sub.contains(x)
        formula = oag.formula_member_delta(G, x, gamma, p)
        report.samples += 1
        if member != formula:
            report.add_failure(
                x.text, f"membership {member}", f"formula says {formula}"
            )
    return report


def _vp_check(spec: ValuationSpec, p: int, seed: int) -> CheckReport:
    vp = ovf.vp_spec(spec, p)
    quotient = vp.value_group()
    residual = oag.max_p_divisible_convex(quotient, p)
    report = CheckReport(
        check="vp",
        params={
            "field": spec.field.text,
            "p": p,
            "subgroup": vp.convex.text,
            "quotient_group": quotient.text,
        },
        seed=seed,
        samples=1,
    )
    if not residual.is_trivial:
        report.add_failure(
            input=quotient.text,
            expected="no nontrivial p-divisible convex subgroup",
            got=residual.text,
        )
    return report


def _convexity_all_coarsenings(fd, samples: int, seed: int) -> CheckReport:
    G = fd.value_group
    merged = CheckReport(
        check="convexity",
        params={"field": fd.text, "subgroup": "all coarsenings"},
        seed=seed,
        samples=0,
    )
    per = max(1, samples // (G.rank + 1))
    for k in range(G.rank + 1):
        spec = ValuationSpec(fd, ConvexSubgroup(G, k))
        sub = ovf.convexity_scan(spec, per, seed)
        merged.samples += sub.samples
        for f in sub.failures:
            f.input = f"[{spec.convex.text}] {f.input}"
            merged.failures.append(f)
    return merged
