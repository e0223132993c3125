from fractions import Fraction
from unittest import TestCase

from hypothesis import given, settings

from weylstar.errors import VariableMismatchError
from weylstar.poly import (Poly, VarKind, binomial_expand, component,
                           eval_zero, format_poly, from_json,
                           graded_components, monomial_basis, multiply,
                           parity, partial_derivative,
                           poisson_bracket, rename_kind, split_parity,
                           substitute, to_json, truncate)
from weylstar.util import I_UNIT, ONE, ZERO, parse_scalar

from tests.strategies import gaussians, polys

p1 = Poly.p(1, 1)
q1 = Poly.q(1, 1)


class TestPoly(TestCase):

    def test_format(self):
        self.assertEqual(format_poly(p1 * q1 + Fraction(1, 2)),
                         "p1*q1 + 1/2")
        f = p1 ** 2 * q1 ** 2 - p1 * q1 * 2 + Fraction(1, 2)
        self.assertEqual(format_poly(f), "p1^2*q1^2 - 2*p1*q1 + 1/2")
        self.assertEqual(format_poly(Poly.zero(1)), "0")
        self.assertEqual(format_poly(-q1 + 1), "-q1 + 1")

    def test_format_gaussian(self):
        c = parse_scalar("1/2+i")
        self.assertEqual(format_poly(Poly.constant(c, 1)), "(1/2+i)")
        self.assertEqual(format_poly(p1 * c), "(1/2+i)*p1")
        self.assertEqual(format_poly(p1 * (-I_UNIT)), "-i*p1")
        self.assertEqual(str(Poly.x(2, 2) * 3 - Poly.x(1, 2)),
                         "-x1 + 3*x2")

    def test_glex_order(self):
        f = q1 + p1 + p1 * q1 + 1
        self.assertEqual([e for e, _ in f.items()],
                         [(1, 1), (1, 0), (0, 1), (0, 0)])

    def test_arithmetic(self):
        self.assertEqual((p1 + q1) ** 2, p1 ** 2 + p1 * q1 * 2 + q1 ** 2)
        self.assertEqual(p1 - p1, Poly.zero(1))
        self.assertEqual((p1 * 4) / 2, p1 * 2)
        self.assertTrue((p1 * 0).is_zero())
        self.assertEqual(3 - p1, -(p1 - 3))

    def test_multiply_and_constant_term(self):
        f = p1 * 2 + 3
        self.assertEqual(multiply(f, q1), p1 * q1 * 2 + q1 * 3)
        self.assertEqual(eval_zero(f), ONE * 3)
        self.assertEqual(eval_zero(p1 * q1), ZERO)
        with self.assertRaises(VariableMismatchError):
            multiply(p1, Poly.x(1, 1))

    def test_space_mismatch(self):
        with self.assertRaises(VariableMismatchError):
            _ = p1 + Poly.p(1, 2)
        with self.assertRaises(VariableMismatchError):
            _ = p1 * Poly.x(1, 1)

    def test_degrees(self):
        f = p1 ** 3 + q1 + 2
        self.assertEqual(f.degree(), 3)
        self.assertEqual(f.low_degree(), 0)
        self.assertEqual(f.degrees(), [0, 1, 3])
        self.assertFalse(f.is_homogeneous())
        self.assertEqual(Poly.zero(1).degree(), -1)
        self.assertEqual([d for d, _ in graded_components(f)], [0, 1, 3])
        self.assertEqual(component(f, 3), p1 ** 3)
        self.assertEqual(truncate(f, 1), q1 + 2)

    def test_parity(self):
        self.assertEqual(parity(p1 * q1 + 1), 0)
        self.assertEqual(parity(p1 ** 3 + q1), 1)
        with self.assertRaises(ValueError):
            parity(p1 + 1)
        even, odd = split_parity(p1 ** 2 + p1 + 1)
        self.assertEqual(even, p1 ** 2 + 1)
        self.assertEqual(odd, p1)

    def test_derivatives(self):
        f = p1 ** 3 * q1 ** 2
        self.assertEqual(partial_derivative(f, 0), p1 ** 2 * q1 ** 2 * 3)
        self.assertEqual(partial_derivative(f, 1, 2), p1 ** 3 * 2)
        self.assertTrue(partial_derivative(f, 1, 3).is_zero())
        self.assertEqual(poisson_bracket(p1, q1), Poly.one(1))
        self.assertEqual(poisson_bracket(p1 * q1, p1), -p1)

    def test_monomial_basis(self):
        basis = monomial_basis(1, 2)
        self.assertEqual(basis, [p1 ** 2, p1 * q1, q1 ** 2])
        self.assertEqual(len(monomial_basis(2, 2)), 10)
        self.assertEqual(len(monomial_basis(2, 3, VarKind.PLAIN)), 4)

    def test_substitute(self):
        x = Poly.x(1, 1)
        self.assertEqual(substitute(x ** 2, [x + 1]), x ** 2 + x * 2 + 1)
        self.assertEqual(substitute(p1 * q1, [q1, p1]), p1 * q1)

    def test_binomial_expand(self):
        expanded = binomial_expand(Poly.x(1, 1) ** 2)
        self.assertEqual(expanded.kind, VarKind.TENSOR)
        self.assertEqual(expanded.terms, {(2, 0): ONE, (1, 1): ONE * 2,
                                          (0, 2): ONE})
        self.assertEqual(str(expanded), "x1^2 + 2*x1*x1' + x1'^2")

    def test_rename_kind(self):
        self.assertEqual(rename_kind(q1 ** 2, VarKind.PLAIN),
                         Poly.x(1, 1) ** 2)
        self.assertEqual(rename_kind(Poly.x(1, 1), VarKind.SYMPLECTIC), q1)
        with self.assertRaises(VariableMismatchError):
            rename_kind(p1, VarKind.PLAIN)

    def test_json(self):
        f = p1 * parse_scalar("1/2-3*i") + q1 ** 2 - 1
        data = to_json(f)
        self.assertEqual(data["nvars"], 2)
        self.assertEqual(data["kind"], "symplectic")
        self.assertEqual(data["terms"][0], {"exp": [0, 2], "re": "1",
                                            "im": "0"})
        self.assertEqual(from_json(data), f)

    def test_json_rejects_bad_nvars(self):
        with self.assertRaises(VariableMismatchError):
            from_json({"nvars": 3, "n": 1, "kind": "symplectic",
                       "terms": []})

    @given(polys(n=2), polys(n=2), polys(n=2))
    @settings(max_examples=100, deadline=None)
    def test_ring_axioms(self, f, g, h):
        self.assertEqual((f + g) * h, f * h + g * h)
        self.assertEqual(f * g, g * f)
        self.assertEqual(f - f, Poly.zero(2))

    @given(polys(n=2, coefficients=gaussians))
    @settings(max_examples=50, deadline=None)
    def test_components_sum_to_poly(self, f):
        total = Poly.zero(2)
        for _, part in graded_components(f):
            total = total + part
        self.assertEqual(total, f)
