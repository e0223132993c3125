"""
weylstar trace - Supertraces of operators and the formal inverse Weyl
transform.

For an operator ``T`` of ``P`` with normal symbol
``sum_I alpha_I(Q) * P^I``:

- ``Str_Wbar(T) = sum_I Str(alpha_I(Q) * P^I)``
- ``RStr(T) = Str_Wbar(T) / 2^n``, which agrees with the finite supertrace
  on finite rank operators and gives the identity ``1/2^n``
- ``IW(T) = sum_I alpha_I(Q) * P^I`` summed per homogeneous component in
  ``K[[P, Q]]``, with ``RStr(T) = IW(T)(0) / 2^n``

The infinite sums are evaluated numerically: terms are grouped in batches by
``|I|``, partial sums stay exact, and a :class:`SummationPolicy` decides
convergence or divergence from the batch magnitudes. The policy is a
heuristic; results say so.
"""

import enum
import logging
from dataclasses import dataclass, field, replace
from functools import lru_cache
from itertools import count
from math import comb, factorial, prod
from typing import (Any, Callable, Dict, Iterator, List, Optional, Sequence,
                    Tuple, Union)

from weylstar.errors import DegreeBoundError, DomainError
from weylstar.moyal import (kappa, laguerre_poly, star_qp_closed)
from weylstar.operators import (ElementaryOp, ExpEulerOp, LinOp,
                                NormalSymbol, ScalingOp)
from weylstar.poly import (Poly, VarKind, component, format_poly,
                           rename_kind, to_json, truncate)
from weylstar.report import CheckReport
from weylstar.util import (MultiIndex, Scalar, ONE, ZERO, compositions,
                           format_scalar, index_degree, index_factorial,
                           magnitude, norm2, to_complex)

log = logging.getLogger(__name__)

SymbolSource = Union[LinOp, NormalSymbol, Poly]


class SeriesStatus(enum.Enum):
    CONVERGED = "converged"
    DIVERGED = "diverged"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class SummationPolicy:
    """
    When a batched series is declared converged or diverged.

    After ``burn_in`` batches, ``convergence_run`` consecutive batches of
    magnitude below ``tol`` mean convergence and ``divergence_run``
    consecutive non-decreasing batch magnitudes mean divergence, as does a
    partial sum beyond ``magnitude_cap``. Nothing decided after
    ``max_terms`` batches is undetermined.
    """
    tol: float = 1e-12
    max_terms: int = 1000
    convergence_run: int = 3
    divergence_run: int = 5
    burn_in: int = 24
    magnitude_cap: float = 1e12

    def __post_init__(self) -> None:
        assert self.tol > 0, "tol must be positive"
        assert self.max_terms > 0, "max_terms must be positive"

    def with_overrides(self, **kwargs: Any) -> 'SummationPolicy':
        """
        A copy with the given fields replaced; `None` values are ignored.
        """
        return replace(self, **{k: v for k, v in kwargs.items()
                                if v is not None})

    def to_json(self) -> Dict[str, Any]:
        return {"kind": "heuristic", "tol": self.tol,
                "max_terms": self.max_terms,
                "convergence_run": self.convergence_run,
                "divergence_run": self.divergence_run,
                "burn_in": self.burn_in,
                "magnitude_cap": self.magnitude_cap}


DEFAULT_POLICY = SummationPolicy()


def poly_magnitude(f: Poly) -> float:
    """
    The largest coefficient modulus of ``f``.
    """
    return max((magnitude(c) for c in f.terms.values()), default=0.0)


class Accumulator:
    """
    Exact partial sums of one batched series, with the status decided by a
    :class:`SummationPolicy`.
    """

    def __init__(self, policy: SummationPolicy, zero: Any,
                 size: Callable[[Any], float] = magnitude) -> None:
        self.policy = policy
        self.total = zero
        self.size = size
        self.batches = 0
        self.status: Optional[SeriesStatus] = None
        self._small = 0
        self._growing = 0
        self._last: Optional[float] = None

    @property
    def decided(self) -> bool:
        return self.status is not None

    def add(self, value: Any) -> Optional[SeriesStatus]:
        """
        Add one batch and return the status once it is decided.
        """
        assert not self.decided, "series already decided"
        policy = self.policy
        self.total = self.total + value
        self.batches += 1
        batch = self.size(value)

        if self.size(self.total) > policy.magnitude_cap:
            self.status = SeriesStatus.DIVERGED
            return self.status

        if self.batches > policy.burn_in:
            self._small = self._small + 1 if batch < policy.tol else 0
            if batch >= policy.tol and self._last is not None and \
                    batch >= self._last:
                self._growing += 1
            else:
                self._growing = 0

            if self._small >= policy.convergence_run:
                self.status = SeriesStatus.CONVERGED
            elif self._growing >= policy.divergence_run:
                self.status = SeriesStatus.DIVERGED
        self._last = batch

        if self.status is None and self.batches >= policy.max_terms:
            self.status = SeriesStatus.UNDETERMINED
        if self.status is not None:
            log.debug("series %s after %i batches", self.status.value,
                      self.batches)
        return self.status

    def exhaust(self, exact: bool) -> None:
        """
        The source has no more batches: an exact source has been summed
        completely, a truncated one leaves the series undetermined.
        """
        if not self.decided:
            self.status = SeriesStatus.CONVERGED if exact else \
                SeriesStatus.UNDETERMINED


@dataclass
class SeriesResult:
    """
    A numerically summed scalar series. Diverged sums carry no value.
    """
    status: SeriesStatus
    partial: Scalar
    terms_used: int
    policy: SummationPolicy = DEFAULT_POLICY

    @property
    def value(self) -> Optional[Scalar]:
        if self.status is SeriesStatus.DIVERGED:
            return None
        return self.partial

    @property
    def approx(self) -> Optional[complex]:
        value = self.value
        return None if value is None else to_complex(value)

    def scaled(self, factor: Scalar) -> 'SeriesResult':
        return replace(self, partial=self.partial * factor)

    def to_json(self) -> Dict[str, Any]:
        approx = self.approx
        return {
            "status": self.status.value,
            "value": None if approx is None else _format_float(approx),
            "terms_used": self.terms_used,
            "policy": self.policy.to_json(),
        }


def _format_float(value: complex) -> str:
    if not value.imag:
        return "%.17g" % value.real
    return "%.17g%+.17gi" % (value.real, value.imag)


@dataclass
class ComponentResult:
    degree: int
    status: SeriesStatus
    poly: Optional[Poly]
    terms_used: Optional[int] = None

    def to_json(self) -> Dict[str, Any]:
        return {"degree": self.degree, "status": self.status.value,
                "poly": None if self.poly is None else to_json(self.poly),
                "text": None if self.poly is None else format_poly(self.poly),
                "terms_used": self.terms_used}


@dataclass
class GradedSeries:
    """
    A truncated element of ``K[[P, Q]]``, one homogeneous component per
    degree up to ``max_degree``.
    """
    n: int
    max_degree: int
    components: Dict[int, ComponentResult] = field(default_factory=dict)
    method: str = "numeric"
    policy: Optional[SummationPolicy] = None

    @property
    def status(self) -> SeriesStatus:
        statuses = {c.status for c in self.components.values()}
        if SeriesStatus.DIVERGED in statuses:
            return SeriesStatus.DIVERGED
        if SeriesStatus.UNDETERMINED in statuses:
            return SeriesStatus.UNDETERMINED
        return SeriesStatus.CONVERGED

    @property
    def exists(self) -> bool:
        return self.status is SeriesStatus.CONVERGED

    def component(self, degree: int) -> Poly:
        result = self.components[degree]
        if result.poly is None:
            raise DomainError(f"component {degree} is {result.status.value}")
        return result.poly

    def constant_term(self) -> Scalar:
        return self.component(0).coefficient((0,) * (2 * self.n))

    def as_poly(self) -> Poly:
        """
        The sum of all components.

        :raises DomainError: unless every component converged.
        """
        total = Poly.zero(self.n)
        for degree in sorted(self.components):
            total = total + self.component(degree)
        return total

    def to_json(self) -> Dict[str, Any]:
        data = {"n": self.n, "max_degree": self.max_degree,
                "method": self.method, "status": self.status.value,
                "components": [self.components[k].to_json()
                               for k in sorted(self.components)]}
        if self.policy is not None:
            data["policy"] = self.policy.to_json()
        return data


def max_deviation(a: GradedSeries, b: GradedSeries) -> float:
    """
    The largest coefficient difference between two converged series.
    """
    return poly_magnitude(a.as_poly() - b.as_poly())


# Finite rank operators

def finite_rank_supertrace(op: LinOp) -> Scalar:
    """
    ``sum_I (-1)^|I|`` times the coefficient of ``x^I`` in ``T(x^I)``.

    :raises DomainError: unless ``op`` is of finite rank.
    """
    if not op.is_finite_rank:
        raise DomainError("the finite supertrace needs a finite rank operator")
    total = ZERO
    for exp, image in op.finite_table().items():
        coeff = image.coefficient(exp)
        total += coeff if index_degree(exp) % 2 == 0 else -coeff
    return total


@lru_cache(maxsize=None)
def _kappa_qp(j: int, k: int) -> Scalar:
    return kappa(Poly.pq_monomial((0,), (j,)), Poly.pq_monomial((k,), (0,)))


def monomial_supertrace(q_exp: Sequence[int], p_exp: Sequence[int]
                        ) -> Scalar:
    """
    ``Str(Q^J * P^N)``, the product of the one-coordinate values of
    ``kappa``.
    """
    assert len(q_exp) == len(p_exp), "exponents of different lengths"
    result = ONE
    for j, k in zip(q_exp, p_exp):
        result = result * _kappa_qp(j, k)
        if not result:
            break
    return result


def monomial_supertrace_direct(q_exp: Sequence[int], p_exp: Sequence[int]
                               ) -> Scalar:
    """
    ``delta_JN (-1)^|N| N!/2^|N|``.
    """
    if tuple(q_exp) != tuple(p_exp):
        return ZERO
    degree = index_degree(p_exp)
    return ONE * ((-1) ** degree * index_factorial(p_exp)) / 2 ** degree


# Symbol batches

def _symbol_batches(source: SymbolSource
                    ) -> Tuple[int, Iterator[List[Tuple[MultiIndex, Poly]]],
                               bool]:
    """
    ``(n, batches, exact)``: the ``(I, alpha_I(Q))`` pairs of ``source``
    grouped by ``|I|``, and whether running out of batches means the series
    was summed completely.
    """
    if isinstance(source, Poly):
        source = NormalSymbol.from_poly(source)
    if isinstance(source, NormalSymbol):
        return source.n, source.batches(), source.exact

    op = source

    def generate() -> Iterator[List[Tuple[MultiIndex, Poly]]]:
        for total in count():
            try:
                yield [(index, rename_kind(op.symbol_coefficient(index),
                                           VarKind.SYMPLECTIC))
                       for index in compositions(total, op.n)]
            except DegreeBoundError:
                log.debug("%r has no symbol beyond order %i", op, total - 1)
                return

    return op.n, generate(), False


def _batch_supertrace(batch: List[Tuple[MultiIndex, Poly]], n: int) -> Scalar:
    total = ZERO
    for index, alpha in batch:
        for exp, coeff in alpha.terms.items():
            value = monomial_supertrace(exp[n:], index)
            if value:
                total += coeff * value
    return total


def str_wbar(source: SymbolSource,
             policy: SummationPolicy = DEFAULT_POLICY) -> SeriesResult:
    """
    ``sum_I Str(alpha_I(Q) * P^I)``, summed batch by batch over ``|I|``.
    """
    n, batches, exact = _symbol_batches(source)
    acc = Accumulator(policy, ZERO)
    for batch in batches:
        if acc.add(_batch_supertrace(batch, n)) is not None:
            break
    acc.exhaust(exact)
    log.debug("Str_Wbar: %s after %i batches", acc.status.value, acc.batches)
    return SeriesResult(acc.status, acc.total, acc.batches, policy)


def rstr(source: SymbolSource,
         policy: SummationPolicy = DEFAULT_POLICY) -> SeriesResult:
    """
    The renormalized supertrace ``Str_Wbar / 2^n``.
    """
    result = str_wbar(source, policy)
    n = source.n
    return result.scaled(ONE / 2 ** n)


def _require_disk(lam: Scalar) -> None:
    if not norm2(ONE - lam) < 4:
        raise DomainError(
            f"closed form needs |1 - lambda| < 2, lambda = "
            f"{format_scalar(lam)}")


def rstr_closed_form(op: LinOp) -> Scalar:
    """
    ``RStr`` of the operators known in closed form: ``(1/(1+lambda))^n``
    for ``S_lambda``, ``delta_IJ (-1)^|I|`` for ``E_IJ`` and the finite
    supertrace for finite rank operators.

    :raises DomainError: outside ``|1 - lambda| < 2`` or for an operator
        without a closed form.
    """
    if isinstance(op, ScalingOp):
        _require_disk(op.lam)
        return (ONE / (ONE + op.lam)) ** op.n
    if isinstance(op, ElementaryOp):
        if op.out_index != op.in_index:
            return ZERO
        return ONE if index_degree(op.in_index) % 2 == 0 else -ONE
    if op.is_finite_rank:
        return finite_rank_supertrace(op)
    raise DomainError(f"no closed form for {op!r}")


def binomial_tail_partial_sums(index: Sequence[int], batches: int
                               ) -> List[Scalar]:
    """
    ``sum_(|S| <= b) (I+S)!/(I! S!) 2^-|S|`` for ``b < batches``.
    """
    n = len(index)
    sums = []
    total = ZERO
    for b in range(batches):
        batch = sum(prod(comb(i + s, s) for i, s in zip(index, split))
                    for split in compositions(b, n))
        total += ONE * batch / 2 ** b
        sums.append(total)
    return sums


def binomial_tail_identity_check(index: Sequence[int],
                                 batches: int) -> CheckReport:
    """
    The partial sums of ``sum_S (I+S)!/(I! S!) 2^-|S|`` increase towards
    ``2^(|I|+n)``.
    """
    sums = binomial_tail_partial_sums(index, batches)
    limit = ONE * 2 ** (index_degree(index) + len(index))
    increasing = all(to_complex(b).real > to_complex(a).real
                     for a, b in zip(sums, sums[1:]))
    below = all(to_complex(limit - s).real > 0 for s in sums)
    gap = limit - sums[-1] if sums else limit
    details = {"limit": format_scalar(limit), "gap": format_scalar(gap),
               "gap_float": _format_float(to_complex(gap)),
               "partial_sums": [format_scalar(s) for s in sums[:8]]}
    return CheckReport("binomial-tail",
                       {"index": list(index), "batches": batches},
                       increasing and below, [], details)


# Inverse Weyl transform

def _batch_series(batch: List[Tuple[MultiIndex, Poly]], n: int,
                  max_degree: int) -> Poly:
    total = Poly.zero(n)
    for index, alpha in batch:
        for exp, coeff in alpha.terms.items():
            term = truncate(star_qp_closed(exp[n:], index), max_degree)
            if not term.is_zero():
                total = total + term.scale(coeff)
    return total


def iw_numeric(source: SymbolSource, max_degree: int,
               policy: SummationPolicy = DEFAULT_POLICY) -> GradedSeries:
    """
    ``sum_I alpha_I(Q) * P^I`` per homogeneous component of degree at most
    ``max_degree``, each component summed under ``policy``.
    """
    n, batches, exact = _symbol_batches(source)
    accumulators = {k: Accumulator(policy, Poly.zero(n), poly_magnitude)
                    for k in range(max_degree + 1)}
    for batch in batches:
        contribution = _batch_series(batch, n, max_degree)
        for k, acc in accumulators.items():
            if not acc.decided:
                acc.add(component(contribution, k))
        if all(acc.decided for acc in accumulators.values()):
            break
    for acc in accumulators.values():
        acc.exhaust(exact)

    components = {}
    for k, acc in accumulators.items():
        poly = None if acc.status is SeriesStatus.DIVERGED else acc.total
        components[k] = ComponentResult(k, acc.status, poly, acc.batches)
    series = GradedSeries(n, max_degree, components, "numeric", policy)
    log.debug("IW numeric: %s", series.status.value)
    return series


def _exp_truncated(c: Scalar, u: Poly, max_degree: int) -> Poly:
    """
    ``exp(c u)`` up to degree ``max_degree``, for ``u`` homogeneous of
    degree 2.
    """
    result = Poly.zero(u.n)
    power = Poly.one(u.n)
    for k in range(max_degree // 2 + 1):
        result = result + power.scale(c ** k / factorial(k))
        power = truncate(power * u, max_degree)
    return result


def _euler(n: int) -> Poly:
    """
    ``p_1 q_1 + ... + p_n q_n``.
    """
    total = Poly.zero(n)
    for i in range(1, n + 1):
        total = total + Poly.p(i, n) * Poly.q(i, n)
    return total


def _scaling_closed_form(op: ScalingOp, max_degree: int) -> Poly:
    lam = op.lam
    _require_disk(lam)
    n = op.n
    if isinstance(op, ExpEulerOp):
        # tanh(tau/2) and the prefactor from lambda = e^tau
        h = (lam - ONE) / (lam + ONE)
        lead = (ONE - h) ** n
        rate = h * 2
    else:
        lead = (ONE * 2 / (ONE + lam)) ** n
        rate = (lam - ONE) * 2 / (lam + ONE)
    return _exp_truncated(rate, _euler(n), max_degree).scale(lead)


def _elementary_factor(i: int, j: int, coord: int, n: int,
                       max_degree: int) -> Poly:
    pq = Poly.p(coord, n) * Poly.q(coord, n)
    gauss = _exp_truncated(-ONE * 2, pq, max_degree)
    if j <= i:
        lead = ONE * (-1) ** j * 2 ** (i - j + 1)
        shift = Poly.q(coord, n) ** (i - j)
        lag = laguerre_poly(j, i - j, pq.scale(4))
    else:
        lead = ONE * (-1) ** i * 2 ** (j - i + 1) * factorial(i) / \
            factorial(j)
        shift = Poly.p(coord, n) ** (j - i)
        lag = laguerre_poly(i, j - i, pq.scale(4))
    return truncate(truncate(lag * gauss, max_degree) * shift,
                    max_degree).scale(lead)


def _elementary_closed_form(op: ElementaryOp, max_degree: int) -> Poly:
    n = op.n
    result = Poly.one(n)
    for coord, (i, j) in enumerate(zip(op.out_index, op.in_index), start=1):
        factor = _elementary_factor(i, j, coord, n, max_degree)
        result = truncate(result * factor, max_degree)
    return result


def iw_closed_form(op: LinOp, max_degree: int) -> GradedSeries:
    """
    The inverse Weyl transform from its closed form:

    - ``S_lambda``: ``(2/(1+lambda))^n exp(2 (lambda-1)/(lambda+1) u)``
    - ``exp(tau x d/dx)``: ``(1-h)^n exp(2 h u)``, ``h = tanh(tau/2)``
    - ``E_IJ``: a product over coordinates of a generalized Laguerre
      polynomial in ``4 p q`` times ``exp(-2 p q)`` and a power of ``q`` or
      ``p``

    where ``u = p_1 q_1 + ... + p_n q_n``.

    :raises DomainError: outside ``|1 - lambda| < 2`` or for an operator
        without a closed form.
    """
    if isinstance(op, ScalingOp):
        total = _scaling_closed_form(op, max_degree)
    elif isinstance(op, ElementaryOp):
        total = _elementary_closed_form(op, max_degree)
    else:
        raise DomainError(f"no closed form for {op!r}")

    components = {k: ComponentResult(k, SeriesStatus.CONVERGED,
                                     component(total, k))
                  for k in range(max_degree + 1)}
    return GradedSeries(op.n, max_degree, components, "closed-form")


def iw_rstr_consistent(series: GradedSeries, result: SeriesResult,
                       tol: float = 1e-9) -> bool:
    """
    ``IW(T)(0) = 2^n RStr(T)`` for a converged transform and a converged
    supertrace.
    """
    if not series.exists or result.value is None:
        return False
    gap = series.constant_term() - result.value * 2 ** series.n
    return magnitude(gap) < tol
