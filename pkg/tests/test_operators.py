from unittest import TestCase

from hypothesis import given, settings

from weylstar.errors import DegreeBoundError, DomainError
from weylstar.moyal import star
from weylstar.operators import (DiffOpSeries, ElementaryOp, ExpEulerOp,
                                FiniteRankOp, NormalSymbol, ScalingOp,
                                antipode, counit, derivative, diffop_apply,
                                duality_pairing, elementary_expansion,
                                exp_series, hopf_coproduct,
                                hopf_identity_check, identity,
                                linop_from_json, reconstruct_diffop,
                                reconstruction_failures, tensor_multiply,
                                theorem_form, to_normal_symbol,
                                truncated_identity, wmap, wmap_apply)
from weylstar.poly import Poly, VarKind, evaluate
from weylstar.util import ONE, parse_scalar

from tests.strategies import finite_rank_ops, polys

x1 = Poly.x(1, 1)


def plain(exp, n=1, coeff=1):
    return Poly.monomial(exp, n, VarKind.PLAIN, coeff)


class TestHopf(TestCase):

    def test_axioms(self):
        self.assertTrue(hopf_identity_check(4, 1).passed)
        report = hopf_identity_check(3, 2)
        self.assertEqual(report.status, "pass")
        self.assertEqual(report.witnesses, [])

    def test_structure_maps(self):
        f = x1 ** 3 + x1 * 2 + 5
        self.assertEqual(antipode(f), -x1 ** 3 - x1 * 2 + 5)
        self.assertEqual(counit(f), ONE * 5)
        self.assertEqual(tensor_multiply(hopf_coproduct(f)),
                         (x1 * 2) ** 3 + x1 * 4 + 5)

    def test_duality(self):
        f = x1 ** 3 - x1 + 2
        for value in (0, 1, 3, -2):
            self.assertEqual(duality_pairing(f, exp_series([value], 3)),
                             evaluate(f, [value]))
        self.assertEqual(duality_pairing(x1 ** 2, x1 ** 2), ONE * 2)
        self.assertEqual(duality_pairing(x1 ** 2, x1), 0 * ONE)


class TestOperators(TestCase):

    def test_elementary(self):
        op = ElementaryOp((2,), (1,))
        self.assertEqual(op.apply(x1), x1 ** 2)
        self.assertTrue(op.apply(x1 ** 2).is_zero())
        self.assertEqual(op(x1 * 3 + 1), x1 ** 2 * 3)
        with self.assertRaises(DomainError):
            ElementaryOp((1, 0), (1,))

    def test_scaling(self):
        op = ScalingOp(parse_scalar("1/2"), 2)
        f = Poly.x(1, 2) ** 2 * Poly.x(2, 2) + 4
        self.assertEqual(op.apply(f), Poly.x(1, 2) ** 2 * Poly.x(2, 2) / 8 + 4)
        self.assertEqual(identity(2).apply(f), f)

    def test_derivative(self):
        d = derivative(1)
        self.assertEqual(d.apply(x1 ** 3 + x1), x1 ** 2 * 3 + 1)
        with self.assertRaises(DegreeBoundError) as cm:
            d.apply_monomial((40,))
        self.assertEqual(cm.exception.requested, 40)
        self.assertEqual(cm.exception.bound, 32)

    def test_apply_rejects_symplectic(self):
        with self.assertRaises(DomainError):
            identity(1).apply(Poly.p(1, 1))
        with self.assertRaises(DomainError):
            FiniteRankOp(1, {(0,): Poly.p(1, 1)})

    def test_finite_rank_table(self):
        op = FiniteRankOp(1, {(1,): x1 ** 2, (2,): Poly.zero(1, VarKind.PLAIN)})
        self.assertTrue(op.is_finite_rank)
        self.assertEqual(op.finite_table(), {(1,): x1 ** 2})
        with self.assertRaises(DomainError):
            identity(1).finite_table()

    def test_json(self):
        ops = [FiniteRankOp(1, {(1,): x1 ** 2 - 1}),
               ElementaryOp((1, 0), (0, 2)),
               ScalingOp(parse_scalar("1/2+i"), 2),
               ExpEulerOp(parse_scalar("-1"), 1)]
        for op in ops:
            again = linop_from_json(op.to_json())
            self.assertIs(type(again), type(op))
            self.assertEqual(again.to_json(), op.to_json())

    def test_json_rejects(self):
        with self.assertRaises(DomainError):
            linop_from_json({"kind": "special", "name": "Q", "params": []})
        with self.assertRaises(DomainError):
            linop_from_json({"kind": "matrix"})
        with self.assertRaises(DomainError):
            derivative(1).to_json()


class TestReconstruction(TestCase):

    def test_identity(self):
        series = reconstruct_diffop(identity(1), 5)
        self.assertEqual(series.coefficients, {(0,): Poly.one(1, VarKind.PLAIN)})

    def test_derivative(self):
        series = reconstruct_diffop(derivative(1), 5)
        self.assertEqual(series.coefficients, {(1,): Poly.one(1, VarKind.PLAIN)})

    def test_elementary(self):
        series = reconstruct_diffop(ElementaryOp((0,), (1,)), 3)
        self.assertEqual(series.coefficient((1,)), Poly.one(1, VarKind.PLAIN))
        self.assertEqual(series.coefficient((2,)), -x1)
        self.assertEqual(series.coefficient((3,)), x1 ** 2 / 2)
        self.assertTrue(series.coefficient((0,)).is_zero())

    def test_elementary_expansion(self):
        for i in range(3):
            for j in range(3):
                expected = reconstruct_diffop(ElementaryOp((j,), (i,)), 5)
                self.assertEqual(elementary_expansion(i, j, 5).coefficients,
                                 expected.coefficients, (i, j))

    def test_reproduces_operator(self):
        for op in (ElementaryOp((1, 2), (2, 0)), ScalingOp(3, 2),
                   derivative(2, 2)):
            series = reconstruct_diffop(op, 4)
            self.assertEqual(reconstruction_failures(op, series, 4), [])

    def test_truncation(self):
        series = reconstruct_diffop(identity(1), 2)
        with self.assertRaises(DegreeBoundError):
            series.apply(x1 ** 3)
        exact = DiffOpSeries(1, series.coefficients, 2, exact=True)
        self.assertEqual(diffop_apply(exact, x1 ** 3), x1 ** 3)

    def test_degree_bound(self):
        with self.assertRaises(DegreeBoundError):
            reconstruct_diffop(derivative(1, degree_bound=3), 4)

    def test_coproduct_form(self):
        for op in (ElementaryOp((2,), (1,)), ScalingOp(parse_scalar("i")),
                   derivative(1), FiniteRankOp(1, {(0,): x1, (2,): x1 - 3})):
            for k in range(5):
                self.assertEqual(theorem_form(op, (k,)),
                                 op.symbol_coefficient((k,)), (op, k))

    def test_closed_coefficients(self):
        elementary = ElementaryOp((1, 0), (0, 1))
        table = FiniteRankOp(2, elementary.finite_table())
        scaling = ScalingOp(parse_scalar("1/3"), 2)
        rule = truncated_identity(2, 4)
        for index in ((0, 0), (0, 1), (1, 1), (2, 1), (0, 3)):
            self.assertEqual(elementary.symbol_coefficient(index),
                             table.symbol_coefficient(index))
            self.assertEqual(scaling.symbol_coefficient(index),
                             super(ScalingOp, scaling)
                             .symbol_coefficient(index))
            self.assertEqual(rule.symbol_coefficient(index),
                             identity(2).symbol_coefficient(index))

    @given(finite_rank_ops(n=2))
    @settings(max_examples=50, deadline=None)
    def test_finite_rank_reconstruction(self, op):
        series = reconstruct_diffop(op, 4)
        self.assertEqual(reconstruction_failures(op, series, 4), [])


class TestWmap(TestCase):

    def test_action(self):
        p1, q1 = Poly.p(1, 1), Poly.q(1, 1)
        self.assertEqual(wmap_apply(p1 * q1, x1), x1 * 3 / 2)
        self.assertEqual(wmap_apply(p1, x1 ** 3), x1 ** 2 * 3)
        self.assertEqual(wmap_apply(q1, x1), x1 ** 2)
        self.assertEqual(wmap(p1).coefficients,
                         {(1,): Poly.one(1, VarKind.PLAIN)})

    def test_normal_symbol_of_operator(self):
        symbol = to_normal_symbol(ElementaryOp((0,), (1,)), 3)
        self.assertEqual(symbol.alpha((2,)), -Poly.q(1, 1))
        self.assertEqual([len(batch) for batch in symbol.batches()],
                         [1, 1, 1, 1])
        with self.assertRaises(DegreeBoundError):
            wmap_apply(symbol, x1 ** 4)

    def test_alpha_must_be_in_q(self):
        with self.assertRaises(DomainError):
            NormalSymbol(1, {(0,): Poly.p(1, 1)}, 1)

    def test_reconstruction_round_trip(self):
        op = ElementaryOp((1,), (2,))
        symbol = to_normal_symbol(op, 4)
        for k in range(5):
            self.assertEqual(wmap_apply(symbol, x1 ** k),
                             op.apply(x1 ** k), k)

    @given(polys(max_degree=2), polys(max_degree=2),
           polys(max_degree=3, kind=VarKind.PLAIN))
    @settings(max_examples=100, deadline=None)
    def test_homomorphism(self, f, g, h):
        self.assertEqual(wmap_apply(star(f, g), h),
                         wmap_apply(f, wmap_apply(g, h)))
