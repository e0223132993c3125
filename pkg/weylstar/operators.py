"""
weylstar operators - Linear operators on the polynomial module ``P`` and
their differential operator form.

``P = K[x_1..x_n]`` carries the Hopf structure

- coproduct ``D(P)(x, x') = P(x + x')``
- counit ``P -> P(0)``
- antipode ``S(P)(x) = P(-x)``

and the Weyl algebra acts on it with ``p_i`` as ``d/dx_i`` and ``q_i`` as
multiplication by ``x_i``. Every linear operator ``T`` of ``P`` is the
differential operator::

    T = sum_N c_N(x) d^N/dx^N
    c_N = sum_(R <= N) (-1)^|N-R| / (R! (N-R)!) T(x^R) x^(N-R)
"""

import abc
import logging
from collections import defaultdict
from math import factorial
from typing import (Any, Callable, Dict, Iterator, List, Mapping, Optional,
                    Sequence, Tuple, Union)

from weylstar.errors import DegreeBoundError, DomainError
from weylstar.poly import (Poly, VarKind, binomial_expand, eval_zero,
                           from_json, map_exponents, partial_multi,
                           rename_kind, to_json)
from weylstar.report import CheckReport
from weylstar.util import (MultiIndex, Scalar, ScalarLike, ONE, ZERO,
                           add_index, compositions, format_scalar,
                           index_degree, index_factorial, index_le,
                           indices_up_to, parse_scalar, scalar, sub_index,
                           sub_indices)
from weylstar.weyl_oracle import symmetrize

log = logging.getLogger(__name__)


def _plain(exp: Sequence[int], n: int, coeff: ScalarLike = 1) -> Poly:
    return Poly.monomial(tuple(exp), n, VarKind.PLAIN, coeff)


# Hopf structure

def hopf_coproduct(f: Poly) -> Poly:
    """
    ``D(P) = P(x + x')`` in the doubled space ``x1..xn, x1'..xn'``.
    """
    return binomial_expand(f)


def antipode(f: Poly) -> Poly:
    """
    ``S(P)(x) = P(-x)``.
    """
    assert f.kind is VarKind.PLAIN, "the antipode acts on plain polynomials"
    return Poly._raw(f.n, f.kind, {e: -c if sum(e) % 2 else c
                                   for e, c in f.terms.items()})


def counit(f: Poly) -> Scalar:
    return eval_zero(f)


def tensor_multiply(f: Poly) -> Poly:
    """
    ``m(x^A x'^B) = x^(A+B)``, back from the doubled space.
    """
    assert f.kind is VarKind.TENSOR, "expected a doubled-space polynomial"
    n = f.n
    return map_exponents(f, n, VarKind.PLAIN,
                         lambda e: add_index(e[:n], e[n:]))


def tensor_map(f: Poly, left: Callable[[Poly], Poly],
               right: Callable[[Poly], Poly]) -> Poly:
    """
    ``m((left (x) right)(f))`` for a doubled-space ``f``, as a plain
    polynomial.
    """
    assert f.kind is VarKind.TENSOR, "expected a doubled-space polynomial"
    n = f.n
    result = Poly.zero(n, VarKind.PLAIN)
    for exp, coeff in f.terms.items():
        a = left(_plain(exp[:n], n))
        b = right(_plain(exp[n:], n))
        result = result + (a * b).scale(coeff)
    return result


def _triple_coproduct(exp: MultiIndex, first: bool
                      ) -> Dict[Tuple[MultiIndex, MultiIndex, MultiIndex],
                                Scalar]:
    """
    ``(D (x) Id) D(x^N)`` when ``first`` is set, ``(Id (x) D) D(x^N)``
    otherwise, as a map from exponent triples to coefficients.
    """
    n = len(exp)
    out: Dict[Tuple[MultiIndex, MultiIndex, MultiIndex], Scalar] = \
        defaultdict(lambda: ZERO)
    once = binomial_expand(_plain(exp, n))
    for split, c in once.terms.items():
        left, right = split[:n], split[n:]
        target = left if first else right
        for inner, d in binomial_expand(_plain(target, n)).terms.items():
            a, b = inner[:n], inner[n:]
            key = (a, b, right) if first else (left, a, b)
            out[key] += c * d
    return out


def hopf_identity_check(max_degree: int, n: int = 1) -> CheckReport:
    """
    Coassociativity, the counit axiom and the antipode axiom
    ``m (Id (x) S) D = unit counit`` on every monomial of degree at most
    ``max_degree``.
    """
    witnesses: List[Dict[str, Any]] = []
    for exp in indices_up_to(max_degree, n):
        mono = _plain(exp, n)
        if _triple_coproduct(exp, True) != _triple_coproduct(exp, False):
            witnesses.append({"axiom": "coassociativity", "exp": list(exp)})

        delta = hopf_coproduct(mono)
        counit_left = tensor_map(delta, lambda f: Poly.constant(
            counit(f), n, VarKind.PLAIN), lambda f: f)
        counit_right = tensor_map(delta, lambda f: f, lambda f: Poly.constant(
            counit(f), n, VarKind.PLAIN))
        if counit_left != mono or counit_right != mono:
            witnesses.append({"axiom": "counit", "exp": list(exp)})

        expected = Poly.constant(counit(mono), n, VarKind.PLAIN)
        if tensor_map(delta, lambda f: f, antipode) != expected or \
                tensor_map(delta, antipode, lambda f: f) != expected:
            witnesses.append({"axiom": "antipode", "exp": list(exp)})
    return CheckReport("hopf", {"max_degree": max_degree, "n": n},
                       not witnesses, witnesses)


def duality_pairing(f: Poly, g: Poly) -> Scalar:
    """
    ``<x^I, X^J> = delta_IJ I!``, extended bilinearly. ``g`` stands for a
    truncated formal series in ``X`` and is given as a plain polynomial.
    """
    f.check_space(g)
    total = ZERO
    other = g.terms
    for exp, coeff in f.terms.items():
        if exp in other:
            total += coeff * other[exp] * index_factorial(exp)
    return total


def exp_series(point: Sequence[ScalarLike], max_degree: int) -> Poly:
    """
    ``e^(v.X)`` truncated to degree ``max_degree``, so that
    ``<P | e^v> = P(v)`` for ``deg P <= max_degree``.
    """
    n = len(point)
    values = [scalar(v) for v in point]
    terms = {}
    for exp in indices_up_to(max_degree, n):
        coeff = ONE
        for v, e in zip(values, exp):
            coeff = coeff * v ** e
        terms[exp] = coeff / index_factorial(exp)
    return Poly(n, VarKind.PLAIN, terms)


# Operators

class LinOp(abc.ABC):
    """
    A linear operator of ``P`` given by its action on monomials.
    """

    kind = "rule"

    def __init__(self, n: int, degree_bound: Optional[int] = None) -> None:
        assert n >= 1, "n must be positive"
        self.n = n
        self.degree_bound = degree_bound

    @abc.abstractmethod
    def _act(self, exp: MultiIndex) -> Poly:
        pass

    def apply_monomial(self, exp: Sequence[int]) -> Poly:
        """
        ``T(x^exp)``.

        :raises DegreeBoundError: beyond the declared degree bound.
        """
        exp = tuple(exp)
        assert len(exp) == self.n, f"expected {self.n} exponents"
        if self.degree_bound is not None and \
                index_degree(exp) > self.degree_bound:
            raise DegreeBoundError(
                f"operator is only defined up to degree {self.degree_bound}",
                index_degree(exp), self.degree_bound)
        return self._act(exp)

    def apply(self, f: Poly) -> Poly:
        if f.kind is not VarKind.PLAIN or f.n != self.n:
            raise DomainError(
                f"operators act on plain polynomials in {self.n} variables")
        result = Poly.zero(self.n, VarKind.PLAIN)
        for exp, coeff in f.terms.items():
            result = result + self.apply_monomial(exp).scale(coeff)
        return result

    def __call__(self, f: Poly) -> Poly:
        return self.apply(f)

    @property
    def is_finite_rank(self) -> bool:
        return False

    def finite_table(self) -> Dict[MultiIndex, Poly]:
        raise DomainError(f"{self!r} is not of finite rank")

    def symbol_coefficient(self, index: Sequence[int]) -> Poly:
        """
        The coefficient ``c_N`` of ``d^N/dx^N`` in the differential form.
        """
        index = tuple(index)
        n = self.n
        result = Poly.zero(n, VarKind.PLAIN)
        for r in sub_indices(index):
            s = sub_index(index, r)
            image = self.apply_monomial(r)
            if image.is_zero():
                continue
            weight = ONE * (-1) ** index_degree(s) / \
                (index_factorial(r) * index_factorial(s))
            result = result + (image * _plain(s, n)).scale(weight)
        return result

    def to_json(self) -> Dict[str, Any]:
        raise DomainError(f"{self!r} has no JSON form")


class FiniteRankOp(LinOp):
    """
    An operator given by a finite table ``x^I -> T(x^I)``, zero on every
    monomial that is not listed.
    """

    kind = "finite_rank"

    def __init__(self, n: int,
                 table: Optional[Mapping[Sequence[int], Poly]] = None
                 ) -> None:
        super().__init__(n)
        self.table: Dict[MultiIndex, Poly] = {}
        for exp, image in (table or {}).items():
            exp = tuple(exp)
            assert len(exp) == n, f"expected {n} exponents, got {exp}"
            if image.kind is not VarKind.PLAIN or image.n != n:
                raise DomainError(
                    f"image of x^{list(exp)} is not a plain polynomial")
            if not image.is_zero():
                self.table[exp] = image

    def _act(self, exp: MultiIndex) -> Poly:
        return self.table.get(exp, Poly.zero(self.n, VarKind.PLAIN))

    @property
    def is_finite_rank(self) -> bool:
        return True

    def finite_table(self) -> Dict[MultiIndex, Poly]:
        return dict(self.table)

    def symbol_coefficient(self, index: Sequence[int]) -> Poly:
        index = tuple(index)
        n = self.n
        result = Poly.zero(n, VarKind.PLAIN)
        for r, image in self.table.items():
            if not index_le(r, index):
                continue
            s = sub_index(index, r)
            weight = ONE * (-1) ** index_degree(s) / \
                (index_factorial(r) * index_factorial(s))
            result = result + (image * _plain(s, n)).scale(weight)
        return result

    def to_json(self) -> Dict[str, Any]:
        return {"n": self.n, "kind": self.kind,
                "table": [{"in": list(exp), "out": to_json(image)}
                          for exp, image in sorted(self.table.items())]}

    def __repr__(self) -> str:
        return f"FiniteRankOp(n={self.n}, entries={len(self.table)})"


class RuleOp(LinOp):
    """
    An operator given by a rule on monomials, defined up to a declared
    degree bound.
    """

    def __init__(self, n: int, rule: Callable[[MultiIndex], Poly],
                 degree_bound: int, name: str = "rule") -> None:
        super().__init__(n, degree_bound)
        self.rule = rule
        self.name = name

    def _act(self, exp: MultiIndex) -> Poly:
        return self.rule(exp)

    def __repr__(self) -> str:
        return f"RuleOp({self.name}, n={self.n}, bound={self.degree_bound})"


class SpecialOp(LinOp):
    """
    Operators known in closed form, serialized by name and parameters.
    """

    kind = "special"
    name = ""

    @property
    def params(self) -> List[Any]:
        return []

    def to_json(self) -> Dict[str, Any]:
        return {"n": self.n, "kind": self.kind, "name": self.name,
                "params": self.params}


class ElementaryOp(SpecialOp):
    """
    ``E_IJ``: ``x^J -> x^I`` and every other monomial to zero.
    """

    name = "E"

    def __init__(self, out_index: Sequence[int], in_index: Sequence[int]
                 ) -> None:
        if len(out_index) != len(in_index):
            raise DomainError("E needs two multi-indices of equal length")
        super().__init__(len(out_index))
        self.out_index = tuple(out_index)
        self.in_index = tuple(in_index)

    def _act(self, exp: MultiIndex) -> Poly:
        if exp == self.in_index:
            return _plain(self.out_index, self.n)
        return Poly.zero(self.n, VarKind.PLAIN)

    @property
    def is_finite_rank(self) -> bool:
        return True

    def finite_table(self) -> Dict[MultiIndex, Poly]:
        return {self.in_index: _plain(self.out_index, self.n)}

    def symbol_coefficient(self, index: Sequence[int]) -> Poly:
        index = tuple(index)
        if not index_le(self.in_index, index):
            return Poly.zero(self.n, VarKind.PLAIN)
        s = sub_index(index, self.in_index)
        weight = ONE * (-1) ** index_degree(s) / \
            (index_factorial(self.in_index) * index_factorial(s))
        return _plain(add_index(self.out_index, s), self.n, weight)

    @property
    def params(self) -> List[Any]:
        return [list(self.out_index), list(self.in_index)]

    def __repr__(self) -> str:
        return f"ElementaryOp({list(self.out_index)}, {list(self.in_index)})"


class ScalingOp(SpecialOp):
    """
    ``S_lambda``: ``x^K -> lambda^|K| x^K``. ``S_1`` is the identity and
    ``S_-1`` the parity operator.
    """

    name = "S"

    def __init__(self, lam: ScalarLike, n: int = 1) -> None:
        super().__init__(n)
        self.lam = scalar(lam)

    def _act(self, exp: MultiIndex) -> Poly:
        return _plain(exp, self.n, self.lam ** index_degree(exp))

    def symbol_coefficient(self, index: Sequence[int]) -> Poly:
        index = tuple(index)
        weight = (self.lam - ONE) ** index_degree(index) / \
            index_factorial(index)
        return _plain(index, self.n, weight)

    @property
    def params(self) -> List[Any]:
        return [format_scalar(self.lam)]

    def __repr__(self) -> str:
        return f"{type(self).__name__}({format_scalar(self.lam)}, n={self.n})"


class ExpEulerOp(ScalingOp):
    """
    ``exp(tau x d/dx)``, given through the exact value ``lambda = e^tau``.
    It acts as ``S_lambda``; its inverse Weyl transform is written with
    ``tanh(tau/2) = (lambda-1)/(lambda+1)``.
    """

    name = "expEuler"


def identity(n: int = 1) -> ScalingOp:
    return ScalingOp(1, n)


def derivative(i: int, n: int = 1, degree_bound: int = 32) -> RuleOp:
    """
    ``d/dx_i`` (one-based ``i``) as a rule operator.
    """
    assert 1 <= i <= n, f"no variable x{i} among {n}"

    def rule(exp: MultiIndex) -> Poly:
        e = exp[i - 1]
        if not e:
            return Poly.zero(n, VarKind.PLAIN)
        lowered = list(exp)
        lowered[i - 1] -= 1
        return _plain(lowered, n, e)

    return RuleOp(n, rule, degree_bound, f"d/dx{i}")


def linop_from_json(data: Mapping[str, Any]) -> LinOp:
    """
    Read an operator from its JSON form.

    :raises DomainError: on an unknown kind or special name.
    """
    kind = data.get("kind")
    if kind == FiniteRankOp.kind:
        n = int(data["n"])
        table = {tuple(entry["in"]): from_json(entry["out"])
                 for entry in data.get("table", [])}
        return FiniteRankOp(n, table)

    if kind == SpecialOp.kind:
        name = data.get("name")
        params = data.get("params", [])
        n = int(data.get("n", 1))
        if name == ElementaryOp.name:
            return ElementaryOp(params[0], params[1])
        if name == ScalingOp.name:
            return ScalingOp(parse_scalar(str(params[0])), n)
        if name == ExpEulerOp.name:
            return ExpEulerOp(parse_scalar(str(params[0])), n)
        raise DomainError(f"unknown special operator {name!r}")

    raise DomainError(f"unknown operator kind {kind!r}")


# Differential operator form

class DiffOpSeries:
    """
    ``sum_N c_N(x) d^N/dx^N`` with ``|N| <= truncation``. An ``exact``
    series has no terms beyond the truncation.
    """

    def __init__(self, n: int, coefficients: Mapping[MultiIndex, Poly],
                 truncation: int, exact: bool = False) -> None:
        self.n = n
        self.coefficients = {tuple(k): v for k, v in coefficients.items()
                             if not v.is_zero()}
        self.truncation = truncation
        self.exact = exact

    def coefficient(self, index: Sequence[int]) -> Poly:
        return self.coefficients.get(tuple(index),
                                     Poly.zero(self.n, VarKind.PLAIN))

    def apply(self, f: Poly) -> Poly:
        return diffop_apply(self, f)

    def to_json(self) -> Dict[str, Any]:
        return {"n": self.n, "truncation": self.truncation,
                "exact": self.exact,
                "terms": [{"index": list(k), "coefficient": to_json(v)}
                          for k, v in sorted(self.coefficients.items())]}


def _check_truncation(truncation: int, exact: bool, f: Poly) -> None:
    if not exact and f.degree() > truncation:
        raise DegreeBoundError(
            f"series truncated at order {truncation} cannot act on degree "
            f"{f.degree()}", f.degree(), truncation)


def diffop_apply(series: DiffOpSeries, f: Poly) -> Poly:
    """
    Apply a differential operator series to a plain polynomial.

    :raises DegreeBoundError: if ``deg f`` exceeds a non-exact truncation.
    """
    _check_truncation(series.truncation, series.exact, f)
    result = Poly.zero(series.n, VarKind.PLAIN)
    for index, coeff in series.coefficients.items():
        if index_degree(index) > f.degree():
            continue
        derived = partial_multi(f, index)
        if not derived.is_zero():
            result = result + coeff * derived
    return result


def reconstruct_diffop(op: LinOp, max_order: int) -> DiffOpSeries:
    """
    The differential operator form of ``op`` up to order ``max_order``.
    It reproduces ``op`` on every monomial of degree at most ``max_order``.

    :raises DegreeBoundError: if ``op`` is not defined that far.
    """
    coefficients = {}
    for index in indices_up_to(max_order, op.n):
        coeff = op.symbol_coefficient(index)
        if not coeff.is_zero():
            coefficients[index] = coeff
    log.debug("reconstructed %r to order %i: %i terms", op, max_order,
              len(coefficients))
    return DiffOpSeries(op.n, coefficients, max_order)


def theorem_form(op: LinOp, index: Sequence[int]) -> Poly:
    """
    ``1/N! m((T (x) S)(D(x^N)))``, the coefficient ``c_N`` computed through
    the coproduct and the antipode.
    """
    index = tuple(index)
    delta = hopf_coproduct(_plain(index, op.n))
    total = tensor_map(delta, op.apply, antipode)
    return total.scale(ONE / index_factorial(index))


def truncated_identity(n: int, max_degree: int) -> FiniteRankOp:
    """
    The identity restricted to monomials of degree at most ``max_degree``.
    """
    return FiniteRankOp(n, {exp: _plain(exp, n)
                            for exp in indices_up_to(max_degree, n)})


# Normal symbols and the W-map

class NormalSymbol:
    """
    ``sum_I alpha_I(Q) * P^I`` with every ``alpha_I`` a polynomial in
    ``q1..qn``, kept for ``|I| <= truncation``.
    """

    def __init__(self, n: int, alphas: Mapping[MultiIndex, Poly],
                 truncation: int, exact: bool = False) -> None:
        self.n = n
        self.alphas: Dict[MultiIndex, Poly] = {}
        for index, alpha in alphas.items():
            if alpha.is_zero():
                continue
            if any(any(e[:n]) for e in alpha.terms):
                raise DomainError("alpha_I must be a polynomial in Q only")
            self.alphas[tuple(index)] = alpha
        self.truncation = truncation
        self.exact = exact

    @classmethod
    def from_poly(cls, f: Poly) -> 'NormalSymbol':
        """
        The normal symbol of an element of ``W``: the normal ordering of its
        symmetrization.
        """
        n = f.n
        alphas: Dict[MultiIndex, Dict[MultiIndex, Scalar]] = \
            defaultdict(dict)
        for (q_exp, p_exp), coeff in symmetrize(f).terms.items():
            alphas[p_exp][(0,) * n + q_exp] = coeff
        return cls(n, {k: Poly(n, VarKind.SYMPLECTIC, v)
                       for k, v in alphas.items()},
                   max(f.degree(), 0), exact=True)

    def alpha(self, index: Sequence[int]) -> Poly:
        return self.alphas.get(tuple(index), Poly.zero(self.n))

    def batches(self) -> Iterator[List[Tuple[MultiIndex, Poly]]]:
        """
        ``(I, alpha_I)`` pairs grouped by ``|I|``, up to the truncation.
        """
        for total in range(self.truncation + 1):
            yield [(index, self.alpha(index))
                   for index in compositions(total, self.n)]

    def to_json(self) -> Dict[str, Any]:
        return {"n": self.n, "truncation": self.truncation,
                "exact": self.exact,
                "terms": [{"index": list(k), "alpha": to_json(v)}
                          for k, v in sorted(self.alphas.items())]}


def to_normal_symbol(op: LinOp, max_order: int) -> NormalSymbol:
    """
    The normal symbol of ``op``, ``alpha_N(Q) = c_N(Q)``.
    """
    series = reconstruct_diffop(op, max_order)
    return NormalSymbol(op.n, {k: rename_kind(v, VarKind.SYMPLECTIC)
                               for k, v in series.coefficients.items()},
                        max_order)


def wmap(symbol: Union[NormalSymbol, Poly]) -> DiffOpSeries:
    """
    ``W(sum_I alpha_I(Q) * P^I) = sum_I alpha_I(x) d^I/dx^I``.
    """
    if isinstance(symbol, Poly):
        symbol = NormalSymbol.from_poly(symbol)
    return DiffOpSeries(symbol.n,
                        {k: rename_kind(v, VarKind.PLAIN)
                         for k, v in symbol.alphas.items()},
                        symbol.truncation, symbol.exact)


def wmap_apply(symbol: Union[NormalSymbol, Poly], f: Poly) -> Poly:
    """
    The action of a normal symbol, or of an element of ``W``, on a plain
    polynomial.

    :raises DegreeBoundError: when the symbol is truncated below
        ``deg f``.
    """
    return diffop_apply(wmap(symbol), f)


def reconstruction_failures(op: LinOp, series: DiffOpSeries,
                            max_degree: int) -> List[MultiIndex]:
    """
    Monomials of degree at most ``max_degree`` on which ``series`` and
    ``op`` disagree.
    """
    failures = []
    for exp in indices_up_to(max_degree, op.n):
        mono = _plain(exp, op.n)
        if diffop_apply(series, mono) != op.apply_monomial(exp):
            failures.append(exp)
    return failures


def elementary_expansion(i: int, j: int, max_order: int) -> DiffOpSeries:
    """
    ``x^j/i! sum_l (-1)^l x^l/l! d^(i+l)/dx^(i+l)`` for ``x^i -> x^j``.
    """
    coefficients = {}
    for ell in range(max_order - i + 1):
        weight = ONE * (-1) ** ell / (factorial(i) * factorial(ell))
        coefficients[(i + ell,)] = _plain((j + ell,), 1, weight)
    return DiffOpSeries(1, coefficients, max_order)

