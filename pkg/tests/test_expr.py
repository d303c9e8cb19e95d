"""Expression parsing, evaluation, hyper-dual AD and pretty-printing."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from conftest import (
    AD_CORPUS,
    REF_FUNCTION,
    fd_gradient,
    fd_hessian,
    guarded_relative,
    reference_hessian,
)
from signflip.expr import (
    Binary,
    Call,
    DomainError,
    HyperDual,
    Neg,
    Number,
    ParseError,
    UnknownIdentifierError,
    Var,
    VarIndexError,
    evaluate,
    gradient,
    hessian,
    parse,
    to_string,
)
from signflip.linalg import DimensionMismatchError, is_symmetric


class TestParse:
    def test_reference_function_structure(self):
        e = parse(REF_FUNCTION, 3)
        # top level is a chain of +/- over five terms, left-associated
        assert isinstance(e.root, Binary) and e.root.op == "-"
        assert e.n_vars == 3

    def test_unary_minus_binds_looser_than_power(self):
        e = parse("-x1^2", 1)
        assert isinstance(e.root, Neg)
        assert isinstance(e.root.child, Binary) and e.root.child.op == "^"
        assert evaluate(e, [3.0]) == -9.0

    def test_power_right_associative(self):
        e = parse("x1^x2^2", 2)
        assert evaluate(e, [2.0, 3.0]) == 2.0**9

    def test_power_binds_tighter_than_product(self):
        assert evaluate(parse("2*x1^2", 1), [3.0]) == 18.0

    def test_negative_exponent_via_unary(self):
        assert evaluate(parse("2^-2", 1), [0.0]) == 0.25

    def test_number_forms(self):
        e = parse("1e-3 + .5 + 2.5E+1 + 7", 1)
        assert evaluate(e, [0.0]) == 1e-3 + 0.5 + 25.0 + 7.0

    def test_whitespace_insensitive(self):
        a = parse("x1 + 2 * x2", 2)
        b = parse("x1+2*x2", 2)
        assert a.root == b.root

    def test_parentheses_override(self):
        assert evaluate(parse("(x1 + x2)^2", 2), [1.0, 2.0]) == 9.0

    def test_function_calls_nest(self):
        e = parse("sin(cos(exp(x1)))", 1)
        assert evaluate(e, [0.0]) == math.sin(math.cos(1.0))

    def test_var_index_out_of_range(self):
        with pytest.raises(VarIndexError):
            parse("x4", 3)

    @pytest.mark.parametrize("text", ["y1 + 2", "x0", "x01", "tan(x1)", "nan"])
    def test_unknown_identifiers(self, text):
        with pytest.raises(UnknownIdentifierError):
            parse(text, 2)

    @pytest.mark.parametrize(
        "text", ["", "   ", "x1 +", "(x1", "x1)", "x1 x2", "sin x1", "1 + $", "*x1", "x1^"]
    )
    def test_syntax_errors(self, text):
        with pytest.raises(ParseError):
            parse(text, 2)

    def test_error_carries_position(self):
        with pytest.raises(ParseError) as info:
            parse("x1 + $", 1)
        assert info.value.position == 5

    def test_rejects_bad_n_vars(self):
        with pytest.raises(ValueError):
            parse("x1", 0)


class TestEvaluate:
    def test_reference_function_value(self):
        e = parse(REF_FUNCTION, 3)
        assert evaluate(e, [1.0, 1.0, 1.0]) == math.sin(1.0) - 2.0

    def test_simple_sum(self):
        assert evaluate(parse("x1+x2", 2), [2.0, 3.0]) == 5.0

    def test_point_length_checked(self):
        with pytest.raises(DimensionMismatchError):
            evaluate(parse("x1", 1), [1.0, 2.0])

    @pytest.mark.parametrize(
        ("text", "point"),
        [
            ("log(x1)", [0.0]),
            ("log(x1)", [-1.0]),
            ("sqrt(x1)", [-0.5]),
            ("x1/x2", [1.0, 0.0]),
            ("x1^-2", [0.0]),
            ("x1^0.5", [-2.0]),
            ("x1^x2", [-2.0, 0.5]),
        ],
    )
    def test_domain_errors(self, text, point):
        with pytest.raises(DomainError):
            evaluate(parse(text, 2 if "x2" in text else 1), point)

    def test_sqrt_at_zero_evaluates(self):
        assert evaluate(parse("sqrt(x1)", 1), [0.0]) == 0.0

    def test_zero_to_zero_is_one(self):
        assert evaluate(parse("x1^0", 1), [0.0]) == 1.0

    def test_integer_power_of_negative_base(self):
        assert evaluate(parse("x1^3", 1), [-2.0]) == -8.0

    def test_deterministic(self):
        e = parse(REF_FUNCTION, 3)
        p = [0.3, 0.7, 1.9]
        assert evaluate(e, p) == evaluate(e, p)


class TestHyperDual:
    @given(
        st.lists(
            st.floats(min_value=-10, max_value=10, allow_nan=False), min_size=8, max_size=8
        )
    )
    def test_product_rule_identity(self, raw):
        a = HyperDual(*raw[:4])
        b = HyperDual(*raw[4:])
        p = a * b
        assert p.d12 == a.value * b.d12 + a.d1 * b.d2 + a.d2 * b.d1 + a.d12 * b.value

    def test_reciprocal_inverts(self):
        a = HyperDual(2.0, 0.5, -1.5, 0.25)
        one = a * a.reciprocal()
        assert one.value == pytest.approx(1.0, rel=1e-15)
        assert one.d1 == pytest.approx(0.0, abs=1e-15)
        assert one.d2 == pytest.approx(0.0, abs=1e-15)
        assert one.d12 == pytest.approx(0.0, abs=1e-15)

    def test_division_by_zero_value(self):
        with pytest.raises(DomainError):
            HyperDual(1.0, 1.0) / HyperDual(0.0, 1.0)

    def test_float_promotion(self):
        a = HyperDual(3.0, 1.0)
        assert (2.0 + a).value == 5.0
        assert (2.0 * a).d1 == 2.0
        assert (2.0 - a).d1 == -1.0
        assert (1.0 / HyperDual(2.0, 1.0)).d1 == -0.25


class TestGradient:
    def test_reference_first_component(self):
        e = parse(REF_FUNCTION, 3)
        g = gradient(e, [1.0, 1.0, 1.0])
        assert g[0] == pytest.approx(3.0 + math.cos(1.0), rel=1e-15)
        assert g[1] == pytest.approx(-7.0 + math.sin(1.0), rel=1e-15)
        assert g[2] == pytest.approx(0.0, abs=1e-15)

    def test_constant_gradient_zero(self):
        assert np.array_equal(gradient(parse("5", 2), [3.0, 4.0]), np.zeros(2))

    def test_product_rule(self):
        rng = np.random.default_rng(33)
        for _ in range(10):
            a, b = rng.normal(size=2)
            g = gradient(parse("x1*x2", 2), [a, b])
            assert g[0] == b and g[1] == a

    def test_non_integer_power(self):
        g = gradient(parse("x1^2.5", 1), [4.0])
        assert g[0] == pytest.approx(2.5 * 4.0**1.5, rel=1e-15)

    def test_sqrt_derivative_domain(self):
        with pytest.raises(DomainError):
            gradient(parse("sqrt(x1)", 1), [0.0])


class TestHessian:
    def test_reference_hessian(self):
        e = parse(REF_FUNCTION, 3)
        h = hessian(e, [1.0, 1.0, 1.0])
        assert float(np.max(np.abs(h - reference_hessian()))) <= 1e-12

    def test_exact_symmetry(self):
        e = parse("exp(x1*x2) + sin(x1 - x2^2)", 2)
        h = hessian(e, [0.4, -0.7])
        assert is_symmetric(h, 0.0)

    def test_quadratic_constant_hessian(self):
        e = parse("x1^2 + 4*x1*x2", 2)
        expected = np.array([[2.0, 4.0], [4.0, 0.0]])
        for point in ([0.0, 0.0], [3.0, -1.0], [100.0, 7.0]):
            assert_allclose(hessian(e, point), expected, atol=1e-12)

    def test_variable_exponent_mixed_partial(self):
        h = hessian(parse("x1^x2", 2), [2.0, 3.0])
        # d2/dx1 dx2 of x^y is x^(y-1) (1 + y log x)
        assert h[0, 1] == pytest.approx(2.0**2 * (1 + 3 * math.log(2.0)), rel=1e-14)
        assert h[1, 1] == pytest.approx(2.0**3 * math.log(2.0) ** 2, rel=1e-14)

    def test_against_finite_differences_spot(self):
        e = parse(REF_FUNCTION, 3)
        x = np.array([0.7, 1.3, 0.4])
        assert guarded_relative(fd_hessian(e, x), hessian(e, x)) <= 1e-5
        assert guarded_relative(fd_gradient(e, x), gradient(e, x)) <= 1e-7


def ast_strategy(n_vars: int):
    # non-negative literals only: the printer renders parser-produced trees,
    # and the parser never creates negative Number nodes
    leaves = st.one_of(
        st.builds(
            Number,
            st.floats(min_value=0.0, max_value=1e6, allow_nan=False).map(abs),
        ),
        st.builds(Var, st.integers(min_value=1, max_value=n_vars)),
    )

    def extend(children):
        return st.one_of(
            st.builds(Neg, children),
            st.builds(
                Binary,
                st.sampled_from(["+", "-", "*", "/", "^"]),
                children,
                children,
            ),
            st.builds(
                Call, st.sampled_from(["sin", "cos", "exp", "log", "sqrt"]), children
            ),
        )

    return st.recursive(leaves, extend, max_leaves=25)


@settings(max_examples=300, deadline=None)
@given(ast_strategy(3))
def test_print_parse_round_trip(root):
    text = to_string(root)
    assert parse(text, 3).root == root


@settings(max_examples=100, deadline=None)
@given(
    st.floats(min_value=-5, max_value=5, allow_nan=False),
    st.floats(min_value=-5, max_value=5, allow_nan=False),
)
def test_sum_of_squares_identities(a, b):
    e = parse("x1^2 - x2^2", 2)
    forward = evaluate(e, [a, b])
    swapped = evaluate(e, [b, a])
    assert forward == -swapped or (forward == 0.0 and swapped == 0.0)


class TestToString:
    @pytest.mark.parametrize(
        "text",
        [
            REF_FUNCTION,
            "-x1^2",
            "x1^x2^2",
            "2^-2",
            "x1*(x2 + x3)",
            "-(x1*x2)",
            "sqrt(exp(x1))/log(x2 + 3)",
            "x1 - -x2",
            "(x1 + x2)^2",
            "x1^(x2 + 1)",
            "x1 - (x2 - x3)",
            "x1/(x2/x3)",
        ],
    )
    def test_named_round_trips(self, text):
        e = parse(text, 3)
        assert parse(to_string(e), 3).root == e.root

    def test_power_left_operand_parenthesized(self):
        e = parse("(-x1)^2", 1)
        assert to_string(e) == "(-x1)^2.0"
        assert parse(to_string(e), 1).root == e.root
