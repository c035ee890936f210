"""Expression parsing, evaluation to jets, holomorphy residuals."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weylab import expr as ex
from weylab import jets
from weylab.charts import Chart, ExprField, LambdaField, holomorphy_residual, partial_field


def chart2(complex_pair=("x", "y")):
    return Chart(["x", "y"], {"x": [-1, 1], "y": [-1, 1]}, complex_pair=complex_pair)


def chart_xyz():
    return Chart(
        ["x", "y", "z"],
        {"x": [-1, 1], "y": [-1, 1], "z": [0.5, 2]},
        complex_pair=("x", "y"),
    )


class TestParser:
    def test_zeta_square_plus_i(self):
        ast = ex.parse("zeta^2 + i", {"zeta"})
        assert isinstance(ast, ex.Bin) and ast.op == "+"
        assert isinstance(ast.left, ex.Bin) and ast.left.op == "^"
        assert isinstance(ast.right, ex.Imag)

    def test_precedence_and_associativity(self):
        ast = ex.parse("a - b - c", {"a", "b", "c"})
        assert ast.op == "-" and ast.left.op == "-"
        ast = ex.parse("2^3^2", set())
        assert ast.op == "^" and ast.right.op == "^"
        ast = ex.parse("-x^2", {"x"})
        assert isinstance(ast, ex.Neg) and ast.arg.op == "^"

    def test_syntax_error_offset(self):
        with pytest.raises(ex.ParseError) as err:
            ex.parse("1 + $", set())
        assert err.value.offset == 4

    def test_undeclared_identifier(self):
        with pytest.raises(ex.UndeclaredIdentifierError) as err:
            ex.parse("x + bogus", {"x"})
        assert err.value.name == "bogus"

    def test_pretty_roundtrip_examples(self):
        for src in ["zeta^2 + i", "4/(1+x^2+y^2)^2", "-(x - y)*z", "x^-2", "2*x/(3*y)"]:
            declared = {"x", "y", "z", "zeta"}
            once = ex.pretty(ex.parse(src, declared))
            twice = ex.pretty(ex.parse(once, declared))
            assert once == twice

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=40, deadline=None)
    def test_pretty_roundtrip_random(self, seed):
        rng = np.random.default_rng(seed)
        ast = random_ast(rng, depth=4)
        once = ex.pretty(ast)
        twice = ex.pretty(ex.parse(once, {"x", "y", "z", "zeta"}))
        assert once == twice


def random_ast(rng, depth):
    if depth == 0 or rng.random() < 0.25:
        choice = rng.integers(0, 3)
        if choice == 0:
            return ex.Num(float(np.round(rng.uniform(0.1, 4.0), 3)))
        if choice == 1:
            return ex.Var(str(rng.choice(["x", "y", "z"])))
        return ex.Imag()
    kind = rng.integers(0, 3)
    if kind == 0:
        op = str(rng.choice(list("+-*/^")))
        return ex.Bin(op, random_ast(rng, depth - 1), random_ast(rng, depth - 1))
    if kind == 1:
        return ex.Neg(random_ast(rng, depth - 1))
    fn = str(rng.choice(["exp", "sin", "cos", "re", "im", "conj"]))
    return ex.Call(fn, random_ast(rng, depth - 1))


class TestEval:
    def test_simple_polynomial(self):
        f = ExprField(chart2(), "x^2 + y")
        j = f.eval_jet((1.0, 2.0), 1)
        assert j.value == pytest.approx(3.0)
        assert jets.derivative_extract(j, (1, 0)) == pytest.approx(2.0)
        assert jets.derivative_extract(j, (0, 1)) == pytest.approx(1.0)

    def test_stereographic_at_origin(self):
        f = ExprField(chart2(), "4/(1+x^2+y^2)^2")
        assert f.eval_jet((0.0, 0.0), 0).value == pytest.approx(4.0)

    def test_log_at_e(self):
        chart = Chart(["rho"], {"rho": [1, 3]})
        f = ExprField(chart, "log(rho)")
        j = f.eval_jet((math.e,), 1)
        assert j.value == pytest.approx(1.0)
        assert jets.derivative_extract(j, (1,)) == pytest.approx(1.0 / math.e)

    def test_abs2_zeta(self):
        f = ExprField(chart2(), "abs2(zeta)")
        assert f.eval_jet((3.0, 4.0), 0).value == pytest.approx(25.0)

    def test_rationalization_oracle(self):
        # re(1/(z + conj(i*c))) = z / (z^2 + c^2) for real z, c
        chart = Chart(["z"], {"z": [0.5, 2]})
        f = ExprField(chart, "re(1/(z + conj(i*c)))", params={"c": 0.7})
        for z in (0.6, 1.1, 1.9):
            expected = z / (z * z + 0.49)
            assert f.eval_jet((z,), 0).value == pytest.approx(expected, abs=1e-14)

    def test_order_consistency(self):
        f = ExprField(chart2(), "exp(x*sin(y)) / (2 + x)")
        hi = f.eval_jet((0.3, -0.2), 3)
        lo = f.eval_jet((0.3, -0.2), 2)
        assert (hi.truncate(2) - lo).max_abs() < 1e-12

    def test_real_valued_violation(self):
        f = ExprField(chart2(), "i*x")
        with pytest.raises(Exception):
            f.eval_jet((0.5, 0.5), 1)

    def test_imaginary_zeta_combination_is_real(self):
        f = ExprField(chart2(), "im(zeta^2)")
        assert f.eval_jet((0.5, 0.25), 0).value == pytest.approx(2 * 0.5 * 0.25)


class TestHolomorphy:
    def test_polynomial_in_zeta(self):
        f = ExprField(chart2(), "zeta^2 + i", real_valued=False)
        assert holomorphy_residual(f, (0.4, 0.2)) < 1e-12

    def test_conj_residual_is_two(self):
        f = ExprField(chart2(), "conj(zeta)", real_valued=False)
        assert holomorphy_residual(f, (0.9, -0.4)) == pytest.approx(2.0)

    def test_exp_zeta(self):
        f = ExprField(chart2(), "exp(zeta)", real_valued=False)
        assert holomorphy_residual(f, (0.2, -0.3)) < 1e-12


class TestComputedFields:
    def test_partial_field_consistency(self):
        chart = chart_xyz()
        base = ExprField(chart, "exp(x)*sin(2*y) + z^3")
        dfield = partial_field(base, 2)
        assert dfield.derivative_depth == 1
        j = dfield.eval_jet((0.1, 0.2, 1.0), 2)
        assert j.value == pytest.approx(3.0)
        hi = dfield.eval_jet((0.1, 0.2, 1.0), 3)
        assert (hi.truncate(2) - j).max_abs() < 1e-12

    def test_lambda_field_memoizes(self):
        chart = chart_xyz()
        calls = []

        def fn(point, order):
            calls.append((point, order))
            return jets.constant(chart.spec(order), 7.0)

        f = LambdaField(chart, fn, depth=0)
        f.eval_jet((0, 0, 1), 2)
        f.eval_jet((0, 0, 1), 2)
        assert len(calls) == 1
