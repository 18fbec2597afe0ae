import itertools
from fractions import Fraction

import pytest

from oracles import (
    delta_formula_sweep,
    exhaustive_dense_witness,
    formula_bruteforce,
    surd_sign_oracle,
)
from valuadef.errors import (
    DescriptorMismatchError,
    PreconditionError,
    UnsupportedOperationError,
)
from valuadef.oag import (
    ConvexSubgroup,
    GroupDescriptor,
    GroupElement,
    delta_gamma,
    dense_approx_witness,
    divide_exact,
    formula_member_delta,
    group_arith,
    group_cmp,
    is_in_nG,
    least_positive,
    max_p_divisible_convex,
    minimal_convex_containing,
    quotient_descriptor,
)
from valuadef.sampling import Sampler

LEX_ZZ = GroupDescriptor.lex(["Z", "Z"])
LEX_ZQ = GroupDescriptor.lex(["Z", "Q"])
LEX_ZQZ = GroupDescriptor.lex(["Z", "Q", "Z"])
SURD2 = GroupDescriptor.surd(2)
SURD3 = GroupDescriptor.surd(3)


class TestCmp:
    def test_first_coordinate_dominates(self):
        assert group_cmp(LEX_ZZ.element([0, 5]), LEX_ZZ.element([1, -100])) < 0

    def test_surd_sign_rule(self):
        # 1 - sqrt(2) < 0 because 1^2 < 2 * 1^2
        assert group_cmp(SURD2.element((1, -1)), SURD2.zero()) < 0

    def test_identity(self):
        assert group_cmp(LEX_ZQZ.zero(), LEX_ZQZ.zero()) == 0

    def test_mismatch(self):
        with pytest.raises(DescriptorMismatchError):
            group_cmp(LEX_ZZ.zero(), LEX_ZQ.zero())

    def test_surd_cmp_matches_oracle_on_box(self):
        for a in range(-5, 6):
            for b in range(-5, 6):
                got = GroupElement(SURD2, (a, b)).sign()
                assert got == surd_sign_oracle(a, b, 2), (a, b)

    def test_trivial_group_all_equal(self):
        triv = GroupDescriptor.lex([])
        assert group_cmp(triv.zero(), triv.zero()) == 0


class TestArith:
    def test_add(self):
        s = group_arith("add", LEX_ZQ.element([1, Fraction(1, 2)]), LEX_ZQ.element([0, Fraction(1, 2)]))
        assert s == LEX_ZQ.element([1, 1])

    def test_neg(self):
        assert group_arith("neg", SURD2.element((3, -2))) == SURD2.element((-3, 2))

    def test_scale(self):
        G = GroupDescriptor.lex(["Z"])
        assert group_arith("scale", G.element([2]), 3) == G.element([6])

    def test_integrality_enforced(self):
        with pytest.raises(ValueError):
            LEX_ZQ.element([Fraction(1, 2), 0])

    def test_order_translation_invariance(self):
        # a < b implies a + c < b + c on 1000 sampled triples per descriptor
        for G in (LEX_ZZ, LEX_ZQZ, SURD2):
            sampler = Sampler(101)
            for _ in range(1000):
                a = sampler.group_element(G)
                b = sampler.group_element(G)
                c = sampler.group_element(G)
                if group_cmp(a, b) < 0:
                    assert group_cmp(a + c, b + c) < 0


class TestDivisibility:
    def test_examples(self):
        assert is_in_nG(LEX_ZQ, LEX_ZQ.element([2, Fraction(1, 3)]), 2)
        assert not is_in_nG(SURD2, SURD2.element((1, 0)), 2)
        assert not is_in_nG(GroupDescriptor.lex(["Z"]), GroupDescriptor.lex(["Z"]).element([3]), 2)

    def test_divide_exact_roundtrip(self):
        x = LEX_ZQ.element([4, Fraction(5, 3)])
        assert divide_exact(x, 2) * 2 == x


class TestLeastPositive:
    def test_discrete(self):
        assert least_positive(LEX_ZZ) == LEX_ZZ.element([0, 1])

    def test_dense_lex(self):
        assert least_positive(LEX_ZQ) is None

    def test_surd_dense_with_small_positive_witness(self):
        assert least_positive(SURD2) is None
        # (sqrt(2)-1)^3 = 5*sqrt(2) - 7 lies strictly inside (0, 1/10)
        x = SURD2.element((-7, 5))
        assert x.sign() > 0
        assert (10 * x).sign() > 0 and group_cmp(10 * x, SURD2.element((1, 0))) < 0


class TestConvexStructure:
    def test_minimal_convex(self):
        assert minimal_convex_containing(LEX_ZQZ.element([0, 0, 3])).suffix_start == 2
        G = GroupDescriptor.lex(["Q", "Z"])
        assert minimal_convex_containing(G.element([1, 0])).suffix_start == 0
        assert minimal_convex_containing(SURD2.element((1, 1))).is_full

    def test_minimal_convex_rejects_zero(self):
        with pytest.raises(PreconditionError):
            minimal_convex_containing(LEX_ZZ.zero())

    def test_delta_gamma_examples(self):
        assert delta_gamma(LEX_ZQZ, LEX_ZQZ.element([0, 0, 3]), 2).suffix_start == 1
        G1 = GroupDescriptor.lex(["Z"])
        assert delta_gamma(G1, G1.element([1]), 3).suffix_start == 0
        G2 = GroupDescriptor.lex(["Q", "Z"])
        assert delta_gamma(G2, G2.element([0, 1]), 3).suffix_start == 0
        assert delta_gamma(SURD2, SURD2.element((1, 1)), 2).is_full

    def test_delta_gamma_rejects_nonpositive(self):
        with pytest.raises(PreconditionError):
            delta_gamma(LEX_ZZ, LEX_ZZ.zero(), 2)
        with pytest.raises(PreconditionError):
            delta_gamma(LEX_ZZ, LEX_ZZ.element([-1, 0]), 2)

    def test_delta_contains_minimal_and_rational_gap(self):
        # Delta_gamma contains <gamma>, and the gap between the two suffixes
        # consists of rational lines only (that quotient is p-divisible)
        sampler = Sampler(7)
        descriptors = [
            GroupDescriptor.lex(list(c))
            for n in (1, 2, 3)
            for c in itertools.product("ZQ", repeat=n)
        ]
        for G in descriptors:
            for _ in range(20):
                gamma = sampler.group_element(G, bound=4)
                if gamma.sign() <= 0:
                    continue
                for p in (2, 3):
                    d = delta_gamma(G, gamma, p)
                    m = minimal_convex_containing(gamma)
                    assert d.suffix_start <= m.suffix_start
                    gap = G.components[d.suffix_start : m.suffix_start]
                    assert all(c == "Q" for c in gap)

    def test_max_p_divisible(self):
        assert max_p_divisible_convex(GroupDescriptor.lex(["Z", "Q", "Q"]), 2).suffix_start == 1
        assert max_p_divisible_convex(LEX_ZZ, 5).is_trivial
        assert max_p_divisible_convex(GroupDescriptor.lex(["Q", "Q"]), 3).is_full
        assert max_p_divisible_convex(SURD2, 2).is_trivial

    def test_max_p_divisible_boundary(self):
        # the returned suffix has no integer line; one step larger does
        for comps in itertools.chain.from_iterable(
            itertools.product("ZQ", repeat=n) for n in (1, 2, 3, 4)
        ):
            G = GroupDescriptor.lex(list(comps))
            for p in (2, 3):
                j = max_p_divisible_convex(G, p).suffix_start
                assert all(c == "Q" for c in G.components[j:])
                if j > 0:
                    assert G.components[j - 1] == "Z"

    def test_quotients(self):
        assert quotient_descriptor(LEX_ZQZ, ConvexSubgroup(LEX_ZQZ, 1)) == GroupDescriptor.lex(["Z"])
        G = GroupDescriptor.lex(["Q", "Z"])
        assert quotient_descriptor(G, ConvexSubgroup(G, 2)) == G
        G1 = GroupDescriptor.lex(["Z"])
        assert quotient_descriptor(G1, ConvexSubgroup(G1, 0)) == GroupDescriptor.lex([])
        assert quotient_descriptor(SURD2, ConvexSubgroup(SURD2, 0)) == GroupDescriptor.lex([])
        assert quotient_descriptor(SURD2, ConvexSubgroup(SURD2, 1)) == SURD2


class TestFormulaMemberDelta:
    def test_examples_against_bruteforce(self):
        gamma = LEX_ZQZ.element([0, 0, 3])
        for coords, expected in [((0, 7, -2), True), ((1, 0, 0), False), ((0, 0, 0), True)]:
            x = LEX_ZQZ.element(list(coords))
            assert formula_member_delta(LEX_ZQZ, x, gamma, 2) is expected
            assert formula_bruteforce(LEX_ZQZ, x, gamma, 2) is expected

    def test_surd_always_true(self):
        assert formula_member_delta(SURD2, SURD2.element((5, -3)), SURD2.element((1, 0)), 3)

    def test_agreement_with_delta_gamma_small_grids(self):
        # exhaustive on <= 2 components, x in the [-8, 8] box
        for comps in itertools.chain.from_iterable(
            itertools.product("ZQ", repeat=n) for n in (1, 2)
        ):
            G = GroupDescriptor.lex(list(comps))
            k = len(comps)
            for gcoords in itertools.product(range(-4, 5), repeat=k):
                gamma = G.element(list(gcoords))
                if gamma.sign() <= 0:
                    continue
                for p in (2, 3):
                    sub = delta_gamma(G, gamma, p)
                    for xcoords in itertools.product(range(-8, 9), repeat=k):
                        x = G.element(list(xcoords))
                        assert formula_member_delta(G, x, gamma, p) == sub.contains(x)

    def test_pure_python_bruteforce_matches_vectorized(self):
        for comps in (("Z",), ("Q",), ("Z", "Q"), ("Q", "Z")):
            G = GroupDescriptor.lex(list(comps))
            k = len(comps)
            for gcoords in itertools.product(range(-2, 3), repeat=k):
                gamma_el = None
                try:
                    gamma_el = G.element(list(gcoords))
                except ValueError:
                    continue
                if gamma_el.sign() <= 0:
                    continue
                xs, member = delta_formula_sweep(comps, gcoords, 2, x_bound=3, box_bound=8)
                for row, m in zip(xs, member):
                    x = G.element([int(v) for v in row])
                    assert formula_bruteforce(G, x, gamma_el, 2) == bool(m)

    def test_sampled_agreement_up_to_four_components(self):
        sampler = Sampler(0xC0FFEE)
        descriptors = [
            GroupDescriptor.lex(list(c))
            for n in (3, 4)
            for c in itertools.product("ZQ", repeat=n)
        ]
        for G in descriptors:
            k = G.rank
            for _ in range(10):
                gamma = G.element([sampler.randint(-4, 4) for _ in range(k)])
                if gamma.sign() <= 0:
                    continue
                for p in (2, 3):
                    sub = delta_gamma(G, gamma, p)
                    for _ in range(30):
                        x = G.element([sampler.randint(-8, 8) for _ in range(k)])
                        assert formula_member_delta(G, x, gamma, p) == sub.contains(x)


class TestDenseApprox:
    def test_spec_instances(self):
        for d in (2, 3):
            G = GroupDescriptor.surd(d)
            tau = G.element((1, 0))
            eps = G.element((-1, 1))  # sqrt(d) - 1 > 0
            eta = dense_approx_witness(G, 2, tau, eps)
            assert is_in_nG(G, eta, 2)
            assert group_cmp(abs(tau - eta), eps) < 0
            # the exhaustive oracle confirms witnesses exist in a small box
            assert exhaustive_dense_witness(d, 2, (1, 0), (-1, 1))

    def test_zero_target(self):
        G = SURD2
        eta = dense_approx_witness(G, 2, G.zero(), G.element((1, 0)))
        assert is_in_nG(G, eta, 2)
        assert group_cmp(abs(eta), G.element((1, 0))) < 0

    def test_postconditions_on_samples(self):
        sampler = Sampler(5)
        for d in (2, 3, 5, 7):
            G = GroupDescriptor.surd(d)
            for _ in range(50):
                tau = sampler.group_element(G)
                eps = sampler.group_element(G)
                if eps.sign() <= 0:
                    continue
                for n in (2, 3):
                    eta = dense_approx_witness(G, n, tau, eps)
                    assert is_in_nG(G, eta, n)
                    assert group_cmp(abs(tau - eta), eps) < 0

    def test_lex_not_dense(self):
        with pytest.raises(UnsupportedOperationError):
            dense_approx_witness(LEX_ZZ, 2, LEX_ZZ.zero(), LEX_ZZ.element([0, 1]))

    def test_rejects_nonpositive_eps(self):
        with pytest.raises(PreconditionError):
            dense_approx_witness(SURD2, 2, SURD2.zero(), SURD2.zero())
