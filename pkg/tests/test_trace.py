from unittest import TestCase

from hypothesis import given, settings

from weylstar.errors import DomainError
from weylstar.operators import (ElementaryOp, ExpEulerOp, FiniteRankOp,
                                ScalingOp, derivative, identity)
from weylstar.poly import Poly, VarKind
from weylstar.trace import (DEFAULT_POLICY, Accumulator, SeriesResult,
                            SeriesStatus, SummationPolicy,
                            binomial_tail_identity_check,
                            binomial_tail_partial_sums,
                            finite_rank_supertrace, iw_closed_form,
                            iw_numeric, iw_rstr_consistent, max_deviation,
                            monomial_supertrace, monomial_supertrace_direct,
                            rstr, rstr_closed_form, str_wbar)
from weylstar.util import I_UNIT, ONE, ZERO, indices_up_to, parse_scalar

from tests.strategies import finite_rank_ops

x1 = Poly.x(1, 1)


class TestFiniteSupertrace(TestCase):

    def test_table(self):
        op = FiniteRankOp(1, {(0,): x1 + 1, (1,): x1 * 3, (2,): x1})
        self.assertEqual(finite_rank_supertrace(op), -ONE * 2)
        self.assertEqual(finite_rank_supertrace(ElementaryOp((1,), (1,))),
                         -ONE)

    def test_requires_finite_rank(self):
        with self.assertRaises(DomainError):
            finite_rank_supertrace(identity(1))

    def test_monomials(self):
        for q_exp in indices_up_to(3, 2):
            for p_exp in indices_up_to(3, 2):
                self.assertEqual(monomial_supertrace(q_exp, p_exp),
                                 monomial_supertrace_direct(q_exp, p_exp))
        self.assertEqual(monomial_supertrace((1,), (1,)), -ONE / 2)


class TestClosedForms(TestCase):

    def test_scaling(self):
        for n in (1, 2, 3):
            self.assertEqual(rstr_closed_form(identity(n)), ONE / 2 ** n)
        self.assertEqual(rstr_closed_form(ScalingOp(0)), ONE)
        self.assertEqual(rstr_closed_form(ScalingOp(parse_scalar("1/2"), 2)),
                         ONE * 4 / 9)
        self.assertEqual(rstr_closed_form(ExpEulerOp(2)), ONE / 3)

    def test_elementary(self):
        self.assertEqual(rstr_closed_form(ElementaryOp((1,), (1,))), -ONE)
        self.assertEqual(rstr_closed_form(ElementaryOp((1, 1), (1, 1))), ONE)
        self.assertEqual(rstr_closed_form(ElementaryOp((0,), (1,))), ZERO)

    def test_outside_disk(self):
        with self.assertRaises(DomainError):
            rstr_closed_form(ScalingOp(3))
        with self.assertRaises(DomainError):
            rstr_closed_form(ScalingOp(-1))
        with self.assertRaises(DomainError):
            rstr_closed_form(derivative(1))
        with self.assertRaises(DomainError):
            iw_closed_form(ScalingOp(3), 4)
        with self.assertRaises(DomainError):
            iw_closed_form(derivative(1), 4)

    def test_iw_scaling_by_i(self):
        series = iw_closed_form(ScalingOp(I_UNIT), 6)
        pq = Poly.p(1, 1) * Poly.q(1, 1)
        expected = Poly.zero(1)
        factorial = 1
        for k in range(4):
            if k:
                factorial *= k
            expected = expected + (pq ** k).scale(
                (ONE - I_UNIT) * (I_UNIT * 2) ** k / factorial)
        self.assertEqual(series.as_poly(), expected)
        self.assertEqual(series.method, "closed-form")
        self.assertTrue(series.exists)


class TestNumericSeries(TestCase):

    def test_identity(self):
        result = rstr(identity(1))
        self.assertEqual(result.status, SeriesStatus.CONVERGED)
        self.assertEqual(result.value, ONE / 2)
        self.assertEqual(result.terms_used, 27)

    def test_elementary(self):
        result = str_wbar(ElementaryOp((1,), (1,)))
        self.assertEqual(result.status, SeriesStatus.CONVERGED)
        self.assertAlmostEqual(result.approx, -2, delta=1e-9)

        result = str_wbar(ElementaryOp((1, 0), (1, 0)))
        self.assertAlmostEqual(result.approx, -4, delta=1e-9)

        result = rstr(ElementaryOp((2,), (2,)))
        self.assertAlmostEqual(result.approx, 1, delta=1e-9)

    def test_scaling(self):
        self.assertAlmostEqual(rstr(ScalingOp(0)).approx, 1, delta=1e-9)
        for text in ("1/2", "2", "i", "1/2+1/2*i"):
            op = ScalingOp(parse_scalar(text))
            result = rstr(op)
            self.assertEqual(result.status, SeriesStatus.CONVERGED, text)
            closed = rstr_closed_form(op)
            expected = complex(float(closed.x), float(closed.y))
            self.assertAlmostEqual(result.approx, expected, delta=1e-9)

    def test_parity_operator_diverges(self):
        result = rstr(ScalingOp(-1))
        self.assertEqual(result.status, SeriesStatus.DIVERGED)
        self.assertIsNone(result.value)
        self.assertIsNone(result.approx)
        self.assertEqual(result.terms_used, 29)
        self.assertIsNone(result.to_json()["value"])

    def test_element_of_weyl_algebra(self):
        f = Poly.p(1, 1) ** 2 * Poly.q(1, 1) ** 2 + 3
        result = str_wbar(f)
        self.assertEqual(result.status, SeriesStatus.CONVERGED)
        self.assertEqual(result.value, ONE * 3)

    def test_policy_limit(self):
        policy = DEFAULT_POLICY.with_overrides(max_terms=10)
        result = rstr(ScalingOp(parse_scalar("1/2")), policy)
        self.assertEqual(result.status, SeriesStatus.UNDETERMINED)
        self.assertEqual(result.terms_used, 10)
        self.assertIsNotNone(result.value)

    @given(finite_rank_ops())
    @settings(max_examples=30, deadline=None)
    def test_finite_rank_agrees(self, op):
        result = rstr(op)
        self.assertEqual(result.status, SeriesStatus.CONVERGED)
        exact = finite_rank_supertrace(op)
        self.assertAlmostEqual(result.approx,
                               complex(float(exact.x), float(exact.y)),
                               delta=1e-9)


class TestBinomialTail(TestCase):

    def test_partial_sums(self):
        self.assertEqual(binomial_tail_partial_sums((0,), 3),
                         [ONE, ONE * 3 / 2, ONE * 7 / 4])

    def test_check(self):
        report = binomial_tail_identity_check((1,), 10)
        self.assertTrue(report.passed)
        self.assertEqual(report.details["limit"], "4")
        self.assertTrue(binomial_tail_identity_check((1, 2), 8).passed)


class TestInverseWeylTransform(TestCase):

    def test_numeric_matches_closed_form(self):
        ops = [ScalingOp(parse_scalar(text))
               for text in ("0", "1/2", "2", "i")]
        ops += [ElementaryOp((i,), (j,)) for i in range(4) for j in range(4)]
        for op in ops:
            numeric = iw_numeric(op, 10)
            closed = iw_closed_form(op, 10)
            self.assertTrue(numeric.exists, op)
            self.assertLess(max_deviation(numeric, closed), 1e-9, op)

    def test_exp_euler_matches_numeric_sum(self):
        ops = [ExpEulerOp(parse_scalar(text)) for text in ("1/2", "2", "i")]
        ops.append(ExpEulerOp(parse_scalar("1/2"), 2))
        for op in ops:
            numeric = iw_numeric(op, 6)
            closed = iw_closed_form(op, 6)
            self.assertTrue(numeric.exists, op)
            self.assertLess(max_deviation(numeric, closed), 1e-9, op)

    def test_exp_euler_on_unit_circle(self):
        # lambda = e^(i pi/2): tan(pi/4) = 1 and e^(-i pi/4)/cos(pi/4) = 1 - i
        pq = Poly.p(1, 1) * Poly.q(1, 1)
        expected = Poly.one(1) + pq.scale(I_UNIT * 2) - \
            (pq ** 2).scale(ONE * 2)
        series = iw_closed_form(ExpEulerOp(I_UNIT), 4)
        self.assertEqual(series.as_poly(), expected.scale(ONE - I_UNIT))

    def test_consistent_with_rstr(self):
        op = ScalingOp(parse_scalar("1/2"))
        self.assertTrue(iw_rstr_consistent(iw_numeric(op, 4), rstr(op)))
        self.assertTrue(iw_rstr_consistent(iw_closed_form(op, 4), rstr(op)))

    def test_parity_operator(self):
        series = iw_numeric(ScalingOp(-1), 2)
        self.assertFalse(series.exists)
        self.assertEqual(series.status, SeriesStatus.DIVERGED)
        self.assertEqual(series.components[0].status, SeriesStatus.DIVERGED)
        with self.assertRaises(DomainError):
            series.as_poly()
        self.assertFalse(iw_rstr_consistent(series, rstr(ScalingOp(-1))))

    def test_exact_source(self):
        f = Poly.p(1, 1) * Poly.q(1, 1)
        series = iw_numeric(f, 2)
        self.assertTrue(series.exists)
        self.assertEqual(series.as_poly(), f)


class TestAccumulator(TestCase):

    def policy(self, **kwargs):
        return SummationPolicy(burn_in=0, **kwargs)

    def test_converges(self):
        acc = Accumulator(self.policy(convergence_run=2), ZERO)
        self.assertIsNone(acc.add(ONE))
        self.assertIsNone(acc.add(ZERO))
        self.assertEqual(acc.add(ZERO), SeriesStatus.CONVERGED)
        self.assertEqual(acc.total, ONE)
        with self.assertRaises(AssertionError):
            acc.add(ONE)

    def test_diverges(self):
        acc = Accumulator(self.policy(divergence_run=2), ZERO)
        acc.add(ONE)
        self.assertIsNone(acc.add(ONE))
        self.assertEqual(acc.add(ONE), SeriesStatus.DIVERGED)

    def test_magnitude_cap(self):
        acc = Accumulator(self.policy(magnitude_cap=10), ZERO)
        self.assertEqual(acc.add(ONE * 11), SeriesStatus.DIVERGED)

    def test_undetermined(self):
        acc = Accumulator(SummationPolicy(burn_in=100, max_terms=2), ZERO)
        acc.add(ONE)
        self.assertEqual(acc.add(ONE), SeriesStatus.UNDETERMINED)

    def test_exhaust(self):
        acc = Accumulator(DEFAULT_POLICY, ZERO)
        acc.add(ONE)
        acc.exhaust(True)
        self.assertEqual(acc.status, SeriesStatus.CONVERGED)

        acc = Accumulator(DEFAULT_POLICY, ZERO)
        acc.exhaust(False)
        self.assertEqual(acc.status, SeriesStatus.UNDETERMINED)


class TestSeriesResult(TestCase):

    def test_json(self):
        result = SeriesResult(SeriesStatus.CONVERGED, ONE / 2, 3)
        data = result.to_json()
        self.assertEqual(data["value"], "0.5")
        self.assertEqual(data["status"], "converged")
        self.assertEqual(data["policy"]["tol"], 1e-12)
        self.assertEqual(result.scaled(ONE * 2).value, ONE)

    def test_overrides(self):
        policy = DEFAULT_POLICY.with_overrides(tol=None, max_terms=5)
        self.assertEqual(policy.tol, 1e-12)
        self.assertEqual(policy.max_terms, 5)
        self.assertEqual(DEFAULT_POLICY.max_terms, 1000)
