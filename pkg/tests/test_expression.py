from fractions import Fraction
from unittest import TestCase

from hypothesis import given, settings

from weylstar.errors import ExpressionError
from weylstar.expression import parse_expression
from weylstar.poly import Poly, VarKind
from weylstar.util import I_UNIT

from tests.strategies import gaussians, polys


class TestParseExpression(TestCase):

    def test_symplectic(self):
        p1, q1 = Poly.p(1, 1), Poly.q(1, 1)
        self.assertEqual(parse_expression("p1*q1 + 1/2", 1),
                         p1 * q1 + Fraction(1, 2))
        self.assertEqual(parse_expression("(p1 + q1)^2", 1),
                         p1 ** 2 + p1 * q1 * 2 + q1 ** 2)
        self.assertEqual(parse_expression("p1**2/4", 1),
                         p1 ** 2 / 4)

    def test_plain(self):
        f = parse_expression("x1^3 - i*x2", 2, VarKind.PLAIN)
        self.assertEqual(f, Poly.x(1, 2) ** 3 - Poly.x(2, 2) * I_UNIT)

    def test_constant(self):
        self.assertEqual(parse_expression("3", 2), Poly.constant(3, 2))
        self.assertEqual(parse_expression("i", 1), Poly.constant(I_UNIT, 1))

    def test_unknown_variable(self):
        with self.assertRaises(ExpressionError) as cm:
            parse_expression("p3", 2)
        self.assertEqual(cm.exception.position, 0)
        self.assertIn("unknown variable", cm.exception.message)

        with self.assertRaises(ExpressionError) as cm:
            parse_expression("p1 + q1", 1, VarKind.PLAIN)
        self.assertEqual(cm.exception.position, 0)

    def test_decimal(self):
        with self.assertRaises(ExpressionError) as cm:
            parse_expression("p1 + 0.5", 1)
        self.assertEqual(cm.exception.position, 5)
        self.assertIn("column 5", str(cm.exception))

    def test_stray_character(self):
        with self.assertRaises(ExpressionError) as cm:
            parse_expression("p1 & q1", 1)
        self.assertEqual(cm.exception.position, 3)

    def test_not_polynomial(self):
        for text in ("1/p1", "p1^(1/2)"):
            with self.assertRaises(ExpressionError):
                parse_expression(text, 1)

    def test_syntax(self):
        for text in ("p1 +", "(p1", ""):
            with self.assertRaises(ExpressionError):
                parse_expression(text, 1)

    def test_tensor_rejected(self):
        with self.assertRaises(ExpressionError):
            parse_expression("x1", 1, VarKind.TENSOR)

    @given(polys(n=2, coefficients=gaussians))
    @settings(max_examples=200, deadline=None)
    def test_round_trip(self, f):
        self.assertEqual(parse_expression(str(f), 2), f)
