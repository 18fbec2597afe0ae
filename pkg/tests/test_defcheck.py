from fractions import Fraction

import pytest

from oracles import is_fourth_power_bruteforce
from valuadef import defcheck, hahn, oag
from valuadef.defcheck import (
    ThmIIIInstance,
    check_thm_i,
    check_thm_ii,
    check_thm_iii,
    cor32_classifier,
    default_thm_iii_instance,
    density_convex_hull_check,
    density_phi_member,
    density_rationals_mode_check,
    residue_sign_witness,
    s_b_member,
    s_set_member,
    select_param_ii,
)
from valuadef.errors import PreconditionError
from valuadef.ovf import ValuationSpec, member_M
from valuadef.parser import parse_field_descriptor, parse_series
from valuadef.ratfunc import MultiPoly, RatFunc


def canonical(text):
    return ValuationSpec.canonical(parse_field_descriptor(text))


class TestThmI:
    def test_manual_cases(self):
        spec = canonical("Q((lex[Z]))")
        fd = spec.field
        b = parse_series(fd, "t^(1)")
        b_inv = hahn.inverse(b)
        one = hahn.one(fd)
        for text, expected in [("t^(1)", True), ("1", False), ("t^(-1)", False)]:
            x = parse_series(fd, text)
            s = x * x * b_inv
            lhs = hahn.sign(one - hahn.abs_series(s)) > 0
            assert lhs is expected
            assert member_M(spec, x) is expected

    def test_report_passes(self):
        spec = canonical("Q((lex[Z]))")
        rep = check_thm_i(spec, parse_series(spec.field, "t^(1)"), 300, 89)
        assert rep.verdict == "pass"
        assert rep.samples == 300

    def test_precondition(self):
        spec = canonical("Q((lex[Z]))")
        with pytest.raises(PreconditionError):
            check_thm_i(spec, parse_series(spec.field, "t^(2)"), 10, 1)
        dense = canonical("Q((surd(2)))")
        with pytest.raises(PreconditionError):
            check_thm_i(dense, parse_series(dense.field, "t^((1,0))"), 10, 1)


class TestSelectParamII:
    def test_surd_witness(self):
        for d in (2, 3):
            spec = canonical(f"Q((surd({d})))")
            gamma, b = spec_and_series = select_param_ii(spec, 2)
            assert gamma.coords == (1, 0)
            assert not oag.is_in_nG(spec.field.value_group, gamma, 2)
            assert hahn.valuation(b) == gamma and hahn.sign(b) > 0

    def test_lex_has_no_witness(self):
        with pytest.raises(PreconditionError):
            select_param_ii(canonical("Q((lex[Z]))"), 2)


class TestSBMember:
    def test_exact_surd_comparisons(self):
        spec = canonical("Q((surd(2)))")
        fd = spec.field
        gamma, b = select_param_ii(spec, 2)
        # 2*(sqrt(2)-1) < 1, checked exactly: (-3, 2) is negative
        x1 = parse_series(fd, "t^((-1,1))")
        v2 = 2 * hahn.valuation(x1) - gamma
        assert v2.coords == (-3, 2) and v2.sign() < 0
        assert s_b_member(spec, b, 2, x1) is False
        assert s_b_member(spec, b, 2, parse_series(fd, "t^((1,0))")) is True
        assert s_b_member(spec, b, 2, -parse_series(fd, "t^((1,0))")) is False
        assert s_b_member(spec, b, 2, hahn.zero(fd)) is True


class TestThmII:
    def test_report_passes(self):
        spec = canonical("Q((surd(2)))")
        gamma, b = select_param_ii(spec, 2)
        rep = check_thm_ii(spec, b, 2, 200, 97)
        assert rep.verdict == "pass"

    def test_negative_valuation_witness_inequalities(self):
        # replay the witness construction for y = t^((1,-1)) and verify the
        # two strict inequalities through exact group arithmetic
        spec = canonical("Q((surd(2)))")
        fd = spec.field
        G = fd.value_group
        gamma, b = select_param_ii(spec, 2)
        y = parse_series(fd, "t^((1,-1))")  # v(y) = 1 - sqrt(2) < 0
        vy = hahn.valuation(y)
        assert vy.sign() < 0
        eta = oag.dense_approx_witness(G, 2, gamma, -vy)
        zeta = oag.divide_exact(eta, 2)
        assert oag.group_cmp(gamma + vy, 2 * zeta) < 0
        assert oag.group_cmp(2 * zeta, gamma - vy) < 0
        z = hahn.monomial(fd, zeta)
        w_in = z * hahn.inverse(y * y)
        w_out = y * y * z
        assert s_b_member(spec, b, 2, w_in)
        assert not s_b_member(spec, b, 2, w_out)

    def test_spec_example_zeta(self):
        # the interval bounds from the worked example: 2-sqrt2 < 2(sqrt2-1) < sqrt2
        G = oag.GroupDescriptor.surd(2)
        zeta = G.element((-1, 1))
        gamma = G.element((1, 0))
        vy = G.element((1, -1))
        assert oag.group_cmp(gamma + vy, 2 * zeta) < 0
        assert oag.group_cmp(2 * zeta, gamma - vy) < 0

    def test_precondition_divisible_gamma(self):
        spec = canonical("Q((surd(2)))")
        fd = spec.field
        b = parse_series(fd, "t^((2,0))")
        with pytest.raises(PreconditionError):
            check_thm_ii(spec, b, 2, 10, 1)


class TestResidueSignWitness:
    def test_spec_oracle_values(self):
        # 7/5 is the worked value: 49/25 < 2 < (19/10)^2
        inst = default_thm_iii_instance()
        x = Fraction(7, 5)
        assert inst.f_eval(x) < 0 < inst.f_eval(x + Fraction(1, 2))
        assert inst.f_eval(x) < 0 < inst.f_eval(x + Fraction(1, 10))
        inst3 = ThmIIIInstance(0, -3, Fraction(1), Fraction(2))
        assert inst3.f_eval(Fraction(3, 2)) < 0 < inst3.f_eval(Fraction(2))

    def test_constructed_witnesses(self):
        for inst in (
            default_thm_iii_instance(),
            ThmIIIInstance(0, -3, Fraction(1), Fraction(2)),
            ThmIIIInstance(-1, -1, Fraction(1), Fraction(2)),  # golden ratio
        ):
            for eps in (Fraction(1, 2), Fraction(1, 10), Fraction(9, 10)):
                x = residue_sign_witness(inst, eps)
                assert inst.a < x < x + eps < inst.b
                assert inst.f_eval(x) < 0 < inst.f_eval(x + eps)

    def test_eps_bounds(self):
        with pytest.raises(PreconditionError):
            residue_sign_witness(default_thm_iii_instance(), Fraction(1))

    def test_instance_validation(self):
        with pytest.raises(PreconditionError):
            ThmIIIInstance(0, -4, Fraction(1), Fraction(3))  # rational roots
        with pytest.raises(PreconditionError):
            ThmIIIInstance(0, -2, Fraction(2), Fraction(3))  # f(a) > 0
        with pytest.raises(PreconditionError):
            ThmIIIInstance(0, 2, Fraction(1), Fraction(2))  # no real roots


class TestThmIII:
    def test_report_passes(self):
        rep = check_thm_iii(canonical("Q((lex[Z]))"), None, 300, 101)
        assert rep.verdict == "pass"

    def test_closure_case(self):
        spec = canonical("Q((lex[Z]))")
        fd = spec.field
        inst = default_thm_iii_instance()
        t = parse_series(fd, "t^(1)")
        for x_text in ("1", "7/5", "1 + t^(1)"):
            x = parse_series(fd, x_text)
            assert s_set_member(spec, inst, x)
            assert s_set_member(spec, inst, x + t)

    def test_unit_witness_case(self):
        # y = 1/2: z = 7/5 in S and z + y = 19/10 outside (361/100 > 2)
        spec = canonical("Q((lex[Z]))")
        fd = spec.field
        inst = default_thm_iii_instance()
        z = hahn.constant(fd, Fraction(7, 5))
        y = hahn.constant(fd, Fraction(1, 2))
        assert s_set_member(spec, inst, z)
        assert not s_set_member(spec, inst, z + y)

    def test_negative_sample_leaves_s(self):
        spec = canonical("Q((lex[Z]))")
        fd = spec.field
        inst = default_thm_iii_instance()
        a0 = hahn.constant(fd, inst.a)
        y = -parse_series(fd, "t^(1)")
        assert not s_set_member(spec, inst, a0 + y)

    def test_residue_field_precondition(self):
        with pytest.raises(PreconditionError):
            check_thm_iii(canonical("real-closed-model((lex[Q]))"), None, 10, 1)
        with pytest.raises(PreconditionError):
            check_thm_iii(canonical("Q(sqrt(2))((lex[Z]))"), None, 10, 1)


class TestDensity:
    def test_phi_nonconstant(self):
        rc = parse_field_descriptor("real-closed-model((lex[Q]))")
        s = RatFunc.generator(0, 1)
        assert density_phi_member(s, rc) is False
        # disguised constants still count as constants
        two = (2 * s) / s
        assert density_phi_member(two, rc) is True

    def test_phi_constants(self):
        rc = parse_field_descriptor("real-closed-model((lex[Q]))")
        qf = parse_field_descriptor("Q((lex[Q]))")
        assert density_phi_member(RatFunc.constant(5), rc) is True
        assert density_phi_member(RatFunc.constant(1), qf) is False
        assert density_phi_member(RatFunc.constant(0), qf) is True

    def test_rationals_mode_matches_bruteforce(self):
        qf = parse_field_descriptor("Q((lex[Q]))")
        for num in range(-12, 13):
            for den in range(1, 13):
                a = Fraction(num, den)
                got = density_phi_member(RatFunc.constant(a), qf)
                assert got == is_fourth_power_bruteforce(1 + a**4)

    def test_hull_examples(self):
        rc = parse_field_descriptor("real-closed-model((lex[Q]))")
        z = parse_series(rc, "3 + t^(1/2)")
        four = hahn.constant(rc, 4)
        assert hahn.sign(four - z) > 0 and hahn.sign(z + four) > 0
        escaped = parse_series(rc, "t^(-1/3)")
        assert hahn.sign(hahn.abs_series(escaped) - four) > 0

    def test_hull_report(self):
        rc = parse_field_descriptor("real-closed-model((lex[Q]))")
        rep = density_convex_hull_check(rc, 300, 103)
        assert rep.verdict == "pass"

    def test_rationals_report(self):
        qf = parse_field_descriptor("Q((lex[Q]))")
        rep = density_rationals_mode_check(qf, bound=25)
        assert rep.verdict == "pass"
        assert rep.samples > 0

    def test_hull_requires_model(self):
        with pytest.raises(PreconditionError):
            density_convex_hull_check(parse_field_descriptor("Q((lex[Q]))"), 10, 1)


class TestCor32:
    def test_case_sets(self):
        expected = {
            "Q((lex[Z]))": "thm-i;thm-iii;cor-i(p=2)",
            "Q((surd(2)))": "thm-ii;thm-iii;cor-i(p=2)",
            "real-closed-model((lex[Q]))": "none",
            "Q((lex[Q,Q]))": "thm-iii",
            "Q(sqrt(2))((lex[Z]))": "thm-i;thm-iii;cor-i(p=2)",
        }
        for field, cases in expected.items():
            rep = cor32_classifier(canonical(field))
            assert rep.params["cases"] == cases, field
            assert rep.verdict == "pass"

    def test_consistency_with_classifier(self):
        from valuadef.ovf import classify_value_group

        for field in ("Q((lex[Z]))", "Q((lex[Q,Z]))", "Q((surd(3)))", "Q((lex[Z,Q]))"):
            spec = canonical(field)
            rep = cor32_classifier(spec)
            cls = classify_value_group(spec)
            cases = rep.params["cases"].split(";")
            assert ("thm-i" in cases) == cls.discrete
            assert ("thm-ii" in cases) == (cls.not_closed_in_divisible_hull is not None)
            has_cor_i = any(c.startswith("cor-i") for c in cases)
            assert has_cor_i == (cls.p_regular_not_p_divisible is not None)
