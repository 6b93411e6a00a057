"""
Unit tests for the polynomial expression parser and printer.
"""
import pytest
from hypothesis import given, settings

from src.cli.expressions import (
    ExpressionParser,
    parse_poly_map,
    parse_polynomial,
    print_canonical,
    read_poly_map,
    tokenize,
    variable_names,
)
from src.cli.session import SessionConfig
from src.utils.errors import DimensionMismatchError, ExpressionParseError
from tests.conftest import poly, polynomials

P5N2 = SessionConfig(p=5, n=2)
P2N1 = SessionConfig(p=2, n=1)
P2N2 = SessionConfig(p=2, n=2)


class TestTokenize:
    """Lexing with source positions."""

    def test_positions(self):
        """Whitespace is skipped; positions point at token starts."""
        tokens = tokenize(" x1 +  22")
        assert [(t.kind, t.text, t.position) for t in tokens] == [
            ("name", "x1", 1),
            ("op", "+", 4),
            ("number", "22", 7),
            ("end", "", 9),
        ]

    def test_unexpected_character(self):
        """Characters outside the grammar are rejected where they occur."""
        with pytest.raises(ExpressionParseError) as excinfo:
            tokenize("x1 $ 2")
        assert excinfo.value.position == 3


class TestParsePolynomial:
    """Grammar and reduction mod p."""

    @pytest.mark.parametrize("text,config,terms", [
        ("x1^2*x2 + 3", P5N2, {(2, 1): 1, (0, 0): 3}),
        ("x + x^2", P2N1, {(1,): 1, (2,): 1}),
        ("7*x", SessionConfig(p=5, n=1), {(1,): 2}),
        ("(x1 + x2)^2", P2N2, {(2, 0): 1, (0, 2): 1}),
        ("x1 - x1", P5N2, {}),
        ("2 - 3*y", P5N2, {(0, 0): 2, (0, 1): 2}),
        ("0", P5N2, {}),
    ])
    def test_examples(self, text, config, terms):
        assert dict(parse_polynomial(text, config).terms) == terms

    def test_aliases_only_up_to_three_variables(self):
        """x, y, z are accepted for n <= 3 only."""
        assert set(variable_names(2)) == {"x1", "x2", "x", "y"}
        assert "x" not in variable_names(4)

    @pytest.mark.parametrize("text,position", [
        ("x1 +", 4),
        ("x3", 0),
        ("2x", 1),
        ("-x", 0),
        ("x1^2^3", 4),
        ("(x1 + x2", 8),
        ("x1^y", 3),
        ("x1 * * x2", 5),
    ])
    def test_error_positions(self, text, position):
        """Errors carry the position of the offending token."""
        with pytest.raises(ExpressionParseError) as excinfo:
            parse_polynomial(text, P5N2)
        assert excinfo.value.position == position

    def test_unknown_variable_message(self):
        with pytest.raises(ExpressionParseError, match="unknown variable 'x3'"):
            parse_polynomial("x1 + x3", P5N2)

    def test_exponent_overflow(self):
        """Exponents above the limit are refused before any power is computed."""
        with pytest.raises(ExpressionParseError) as excinfo:
            ExpressionParser("x^11", 2, 1, max_exponent=10).parse()
        assert excinfo.value.position == 2
        assert ExpressionParser("x^10", 2, 1, max_exponent=10).parse() == poly(2, 1, {(10,): 1})

    def test_exponent_with_thousands_of_digits(self):
        """An exponent too long to convert is still refused at its position."""
        with pytest.raises(ExpressionParseError, match="exceeds the limit") as excinfo:
            parse_polynomial("x^" + "9" * 5000, P2N1)
        assert excinfo.value.position == 2

    def test_leading_zeros_in_exponent(self):
        assert ExpressionParser("x^0003", 5, 1, max_exponent=3).parse() == poly(5, 1, {(3,): 1})

    def test_long_literal_reduced_mod_p(self):
        """Literals of any length are reduced mod p."""
        assert parse_polynomial("1" * 5000 + "*x", SessionConfig(p=3, n=1)) == poly(3, 1, {(1,): 2})
        assert parse_polynomial("10" * 3000, SessionConfig(p=11, n=1)) == poly(11, 1, {(0,): 3})

    def test_non_ascii_digits_rejected(self):
        """Only 0-9 are digits."""
        with pytest.raises(ExpressionParseError) as excinfo:
            parse_polynomial("x + ٣", P5N2)
        assert excinfo.value.position == 4

    def test_exponent_limit_from_environment(self, monkeypatch, reload_config):
        """FJT_MAX_EXPONENT sets the default limit."""
        monkeypatch.setenv("FJT_MAX_EXPONENT", "3")
        reload_config()
        with pytest.raises(ExpressionParseError, match="exceeds the limit 3"):
            parse_polynomial("x^4", P2N1)


class TestPrintCanonical:
    """Canonical printing and the parse/print round trip."""

    def test_zero(self):
        assert print_canonical(poly(3, 2, {})) == "0"

    def test_sum_of_squares(self):
        assert print_canonical(poly(2, 2, {(2, 0): 1, (0, 2): 1})) == "x1^2 + x2^2"

    @settings(max_examples=100)
    @given(polynomials(5, 2, max_degree=5, max_terms=6))
    def test_round_trip(self, f):
        """parse(print(f)) == f."""
        assert parse_polynomial(print_canonical(f), P5N2) == f

    @settings(max_examples=50)
    @given(polynomials(2, 2, max_degree=4, max_terms=5))
    def test_print_is_stable(self, f):
        """print(parse(print(f))) == print(f)."""
        text = print_canonical(f)
        assert print_canonical(parse_polynomial(text, P2N2)) == text


class TestPolyMaps:
    """';'-separated maps and map files."""

    def test_parse_map(self):
        F = parse_poly_map("x1 + x2; x1*x2", P2N2)
        assert str(F) == "x1 + x2; x1*x2"

    def test_component_count(self):
        with pytest.raises(DimensionMismatchError):
            parse_poly_map("x1 + x2", P2N2)

    def test_error_position_in_whole_text(self):
        """Positions in later components count from the start of the text."""
        with pytest.raises(ExpressionParseError) as excinfo:
            parse_poly_map("x1; x2 +", P2N2)
        assert excinfo.value.position == 8

    def test_read_file(self, tmp_path):
        """Comments and blank lines are skipped."""
        path = tmp_path / "map.txt"
        path.write_text("# sum and product\nx1 + x2\n\nx1*x2  # second\n", encoding="utf-8")
        F = read_poly_map(path, P2N2)
        assert str(F) == "x1 + x2; x1*x2"

    def test_read_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            read_poly_map(tmp_path / "absent.txt", P2N2)

    def test_read_invalid_utf8(self, tmp_path):
        """Undecodable bytes are a parse error naming the line and column."""
        path = tmp_path / "map.txt"
        path.write_bytes(b"x1 + x2\nx1 + \xff\n")
        with pytest.raises(ExpressionParseError, match="line 2") as excinfo:
            read_poly_map(path, P2N2)
        assert excinfo.value.position == 5
