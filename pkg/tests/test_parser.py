from fractions import Fraction

import pytest

from valuadef.coeffs import QuadCoeff, QuadraticExtension, Rationals, RationalsAsRealClosedModel
from valuadef.errors import ParseError
from valuadef.parser import (
    format_series,
    parse_field_descriptor,
    parse_group_descriptor,
    parse_group_element,
    parse_monic_quadratic,
    parse_series,
)
from valuadef.sampling import Sampler


class TestDescriptors:
    def test_groups(self):
        G = parse_group_descriptor("lex[Z,Q,Z]")
        assert G.components == ("Z", "Q", "Z")
        assert parse_group_descriptor("surd(2)").d == 2
        assert parse_group_descriptor("lex[]").is_trivial

    def test_fields(self):
        fd = parse_field_descriptor("Q((lex[Z]))")
        assert isinstance(fd.coefficient_field, Rationals)
        fd2 = parse_field_descriptor("Q(sqrt(2))((lex[Z]))")
        assert isinstance(fd2.coefficient_field, QuadraticExtension)
        assert fd2.coefficient_field.d == 2
        fd3 = parse_field_descriptor("real-closed-model((lex[Q]))")
        assert isinstance(fd3.coefficient_field, RationalsAsRealClosedModel)

    def test_bad_group(self):
        with pytest.raises(ParseError):
            parse_group_descriptor("lex[Z,X]")
        with pytest.raises(ValueError):
            parse_group_descriptor("surd(4)")  # not square-free

    def test_elements(self):
        G = parse_group_descriptor("lex[Z,Q,Z]")
        e = parse_group_element(G, "[1,-2/3,0]")
        assert e.coords == (1, Fraction(-2, 3), 0)
        S = parse_group_descriptor("surd(2)")
        assert parse_group_element(S, "(1,-1)").coords == (1, -1)
        G1 = parse_group_descriptor("lex[Z]")
        assert parse_group_element(G1, "3").coords == (Fraction(3),)
        with pytest.raises(ParseError):
            parse_group_element(G, "[1,2]")  # arity mismatch


class TestSeriesGrammar:
    def test_basic(self):
        fd = parse_field_descriptor("Q((lex[Z]))")
        x = parse_series(fd, "1 - t^(1)")
        assert [(g.coords[0], c) for g, c in x.terms] == [(0, 1), (1, -1)]
        assert x.precision is None

    def test_sorting(self):
        fd = parse_field_descriptor("Q((lex[Z,Q]))")
        x = parse_series(fd, "t^([0,1/2]) + 2")
        assert [(tuple(g.coords), c) for g, c in x.terms] == [
            ((0, 0), 2),
            ((0, Fraction(1, 2)), 1),
        ]

    def test_surd_exponent(self):
        fd = parse_field_descriptor("Q((surd(2)))")
        x = parse_series(fd, "t^((1,-1))")
        assert x.terms[0][0].coords == (1, -1)

    def test_quadratic_coefficients(self):
        fd = parse_field_descriptor("Q(sqrt(2))((lex[Z]))")
        x = parse_series(fd, "q(1,-1)*t^(2) + q(0,1)")
        assert x.terms[0][1] == QuadCoeff(0, 1, 2)
        assert x.terms[1][1] == QuadCoeff(1, -1, 2)

    def test_coefficient_merge_and_cancel(self):
        fd = parse_field_descriptor("Q((lex[Z]))")
        assert parse_series(fd, "t^(1) - t^(1)").terms == ()
        x = parse_series(fd, "2*t^(1) + 3*t^(1)")
        assert x.terms[0][1] == 5

    def test_syntax_error_position(self):
        fd = parse_field_descriptor("Q((lex[Z]))")
        with pytest.raises(ParseError) as exc:
            parse_series(fd, "t^(bad")
        assert exc.value.position == 3

    def test_arity_mismatch(self):
        fd = parse_field_descriptor("Q((lex[Z,Q]))")
        with pytest.raises(ParseError):
            parse_series(fd, "t^(1)")

    def test_precision_marker(self):
        fd = parse_field_descriptor("Q((lex[Z]))")
        x = parse_series(fd, "1 + t^(1) + O(t^(2))")
        assert x.precision == fd.value_group.element([2])

    def test_zero(self):
        fd = parse_field_descriptor("Q((lex[Z]))")
        assert parse_series(fd, "0").is_exact_zero()
        assert format_series(parse_series(fd, "0")) == "0"


class TestRoundTrip:
    @pytest.mark.parametrize(
        "field",
        ["Q((lex[Z]))", "Q((lex[Z,Q]))", "Q((surd(2)))", "Q(sqrt(2))((lex[Z]))"],
    )
    def test_format_parse_roundtrip(self, field):
        fd = parse_field_descriptor(field)
        sampler = Sampler(37)
        for _ in range(200):
            x = sampler.series(fd)
            text = format_series(x)
            assert parse_series(fd, text) == x, text

    def test_finite_precision_roundtrip(self):
        fd = parse_field_descriptor("Q((lex[Z]))")
        x = parse_series(fd, "2 - 3/4*t^(2) + O(t^(5))")
        assert parse_series(fd, format_series(x)) == x


class TestQuadraticParser:
    def test_examples(self):
        assert parse_monic_quadratic("X^2-2") == (0, -2)
        assert parse_monic_quadratic("X^2+3X-1") == (3, -1)
        assert parse_monic_quadratic("X^2 - X + 1") == (-1, 1)
        assert parse_monic_quadratic("X^2") == (0, 0)

    def test_rejects_non_monic(self):
        with pytest.raises(ParseError):
            parse_monic_quadratic("2X^2-1")
        with pytest.raises(ParseError):
            parse_monic_quadratic("X^3-2")
