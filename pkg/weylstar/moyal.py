"""
weylstar Moyal - The Moyal product on the symmetric algebra, its brackets,
the supertrace and the invariant bilinear forms.

The product is computed from the bidifferential operator acting on
``F (x) G``::

    P(F (x) G) = sum_i dF/dp_i (x) dG/dq_i - dF/dq_i (x) dG/dp_i

    C_k(F, G) = 1/(2^k k!) m(P^k(F (x) G))

    F * G = sum_k t^k C_k(F, G)

The sum is finite: ``C_k`` vanishes once ``k`` exceeds the smaller degree.
"""

import enum
import logging
from collections import defaultdict
from functools import lru_cache
from itertools import permutations
from math import comb, factorial
from typing import Dict, Optional, Sequence, Tuple

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix
from sympy.polys.orthopolys import dup_laguerre

from weylstar.errors import DomainError, VariableMismatchError
from weylstar.poly import (Poly, VarKind, eval_zero, monomial_basis,
                           partial_derivative, poly_sum, split_parity)
from weylstar.util import (MultiIndex, Scalar, ScalarLike, ONE, ZERO,
                           indices_up_to, scalar)

log = logging.getLogger(__name__)

_Tensor = Dict[Tuple[MultiIndex, MultiIndex], Scalar]


class BracketKind(enum.Enum):
    """
    The four bracket flavours built from the Moyal product.
    """
    LIE = "lie"
    """``F*G - G*F``"""
    SUPER = "super"
    """``F*G - (-1)^(fg) G*F``"""
    TWISTED_LIE = "twisted_lie"
    """``F*G - (-1)^f G*F``"""
    TWISTED_SUPER = "twisted_super"
    """``F*G - (-1)^(f(g+1)) G*F``"""

    def sign(self, f: int, g: int) -> int:
        """
        The sign in front of ``G*F`` for parities ``f`` and ``g``.
        """
        if self is BracketKind.LIE:
            exponent = 0
        elif self is BracketKind.SUPER:
            exponent = f * g
        elif self is BracketKind.TWISTED_LIE:
            exponent = f
        else:
            exponent = f * (g + 1)
        return -1 if exponent % 2 else 1


def _require_pair(f: Poly, g: Poly) -> None:
    if f.kind is not VarKind.SYMPLECTIC or g.kind is not VarKind.SYMPLECTIC:
        raise VariableMismatchError(
            "the Moyal product is defined on symplectic polynomials")
    f.check_space(g)


def _tensor(f: Poly, g: Poly) -> _Tensor:
    out: _Tensor = {}
    for e1, c1 in f.terms.items():
        for e2, c2 in g.terms.items():
            out[(e1, e2)] = c1 * c2
    return out


def _dec(exp: MultiIndex, var: int) -> MultiIndex:
    return exp[:var] + (exp[var] - 1,) + exp[var + 1:]


def apply_wp(tensor: _Tensor, n: int) -> _Tensor:
    """
    One application of the bidifferential operator ``P`` to a tensor given
    as a map ``(exp_left, exp_right) -> coefficient``.
    """
    out: _Tensor = defaultdict(lambda: ZERO)
    for (a, b), c in tensor.items():
        for i in range(n):
            pi, qi = i, n + i
            if a[pi] and b[qi]:
                out[(_dec(a, pi), _dec(b, qi))] += c * (a[pi] * b[qi])
            if a[qi] and b[pi]:
                out[(_dec(a, qi), _dec(b, pi))] -= c * (a[qi] * b[pi])
    return {k: v for k, v in out.items() if v}


def _merge(tensor: _Tensor, n: int, weight: Scalar,
           max_degree: Optional[int] = None) -> Dict[MultiIndex, Scalar]:
    out: Dict[MultiIndex, Scalar] = defaultdict(lambda: ZERO)
    for (a, b), c in tensor.items():
        exp = tuple(x + y for x, y in zip(a, b))
        if max_degree is not None and sum(exp) > max_degree:
            continue
        out[exp] += c * weight
    return out


def ck_coefficient(k: int, f: Poly, g: Poly) -> Poly:
    """
    The ``k``-th coefficient ``C_k(F, G)`` of the Moyal product.
    """
    _require_pair(f, g)
    assert k >= 0, "k must be non-negative"
    n = f.n
    tensor = _tensor(f, g)
    for _ in range(k):
        if not tensor:
            break
        tensor = apply_wp(tensor, n)
    weight = ONE / (2 ** k * factorial(k))
    return Poly._raw(n, VarKind.SYMPLECTIC, _merge(tensor, n, weight))


def star(f: Poly, g: Poly, t: ScalarLike = 1,
         max_degree: Optional[int] = None) -> Poly:
    """
    The Moyal product ``F *_t G``.

    :param t: the deformation parameter.
    :param max_degree: if given, terms of degree above it are dropped and
        the ``C_k`` that can only produce such terms are skipped.
    """
    _require_pair(f, g)
    n = f.n
    t = scalar(t)
    tensor = _tensor(f, g)
    total: Dict[MultiIndex, Scalar] = defaultdict(lambda: ZERO)
    low = f.low_degree() + g.low_degree()
    k = 0
    t_power = ONE
    while tensor:
        if max_degree is None or low - 2 * k <= max_degree:
            weight = t_power / (2 ** k * factorial(k))
            for exp, c in _merge(tensor, n, weight, max_degree).items():
                total[exp] += c
        k += 1
        t_power = t_power * t
        if not t_power:
            break
        tensor = apply_wp(tensor, n)
    return Poly._raw(n, VarKind.SYMPLECTIC, total)


def star_chain(factors: Sequence[Poly], t: ScalarLike = 1) -> Poly:
    """
    Left-to-right product ``F_1 * F_2 * ... * F_k``.
    """
    assert factors, "at least one factor is required"
    result = factors[0]
    for factor in factors[1:]:
        result = star(result, factor, t)
    return result


def star_n1_closed(f: Poly, g: Poly, t: ScalarLike = 1) -> Poly:
    """
    The one degree of freedom product from the explicit formula::

        F*G = sum_k t^k/(2^k k!) sum_{r+s=k} (-1)^s C(k,s)
              d^k F/dp^r dq^s * d^k G/dp^s dq^r

    :raises DomainError: unless ``n == 1``.
    """
    _require_pair(f, g)
    if f.n != 1:
        raise DomainError("the explicit formula is for one degree of freedom")
    t = scalar(t)
    result = Poly.zero(1)
    top = min(f.degree(), g.degree())
    for k in range(top + 1):
        inner = Poly.zero(1)
        for s in range(k + 1):
            r = k - s
            df = partial_derivative(partial_derivative(f, 0, r), 1, s)
            dg = partial_derivative(partial_derivative(g, 0, s), 1, r)
            if df.is_zero() or dg.is_zero():
                continue
            inner = inner + (df * dg).scale((-1) ** s * comb(k, s))
        result = result + inner.scale(t ** k / (2 ** k * factorial(k)))
    return result


def bracket(kind: BracketKind, f: Poly, g: Poly) -> Poly:
    """
    The bracket of the given kind. Inputs that are not parity-homogeneous
    are split into even and odd parts, the sign is applied per part and
    the results are summed.
    """
    _require_pair(f, g)
    if kind is BracketKind.LIE:
        return star(f, g) - star(g, f)

    result = Poly.zero(f.n)
    for fp, f_part in enumerate(split_parity(f)):
        if f_part.is_zero():
            continue
        for gp, g_part in enumerate(split_parity(g)):
            if g_part.is_zero():
                continue
            sign = kind.sign(fp, gp)
            result = result + star(f_part, g_part) - \
                star(g_part, f_part).scale(sign)
    return result


def ad(f: Poly, g: Poly) -> Poly:
    return bracket(BracketKind.SUPER, f, g)


def ad_twisted(f: Poly, g: Poly) -> Poly:
    return bracket(BracketKind.TWISTED_SUPER, f, g)


def supertrace(f: Poly) -> Scalar:
    """
    ``Str(F) = F(0)``.
    """
    if f.kind is not VarKind.SYMPLECTIC:
        raise VariableMismatchError("the supertrace is defined on W")
    return eval_zero(f)


def kappa(f: Poly, g: Poly) -> Scalar:
    """
    ``kappa(F, G) = Str(F * G)``.
    """
    return supertrace(star(f, g, max_degree=0))


def b_form(f: Poly, g: Poly) -> Scalar:
    """
    ``B(F, G) = (-1)^(fg+1) kappa(F, G)``, extended over parity parts.
    """
    _require_pair(f, g)
    total = ZERO
    for fp, f_part in enumerate(split_parity(f)):
        for gp, g_part in enumerate(split_parity(g)):
            if f_part.is_zero() or g_part.is_zero():
                continue
            value = kappa(f_part, g_part)
            total += value if (fp * gp) % 2 else -value
    return total


def kappa_gram(degree: int, n: int) -> DomainMatrix:
    """
    Gram matrix of ``kappa`` on the monomial basis of ``S^degree``.
    """
    basis = monomial_basis(n, degree)
    rows = [[kappa(a, b) for b in basis] for a in basis]
    return DomainMatrix(rows, (len(basis), len(basis)), QQ_I)


# Laguerre polynomials and the closed form for q^i * p^j

@lru_cache(maxsize=256)
def laguerre_coefficients(beta: int, alpha: int) -> Tuple[Scalar, ...]:
    """
    Coefficients of ``L_beta^(alpha)``, highest power first.
    """
    assert beta >= 0, "beta must be non-negative"
    coeffs = dup_laguerre(beta, QQ(alpha), QQ)
    return tuple(QQ_I(c, QQ(0)) for c in coeffs)


def laguerre_poly(beta: int, alpha: int, x: Poly) -> Poly:
    """
    The generalized Laguerre polynomial ``L_beta^(alpha)`` evaluated at the
    polynomial ``x``.
    """
    result = Poly.zero(x.n, x.kind)
    for coeff in laguerre_coefficients(beta, alpha):
        result = result * x + coeff
    return result


def star_monomial_closed(i: int, j: int) -> Poly:
    """
    ``q^i * p^j`` for one degree of freedom, in closed form::

        i >= j: (-1)^j j!/2^j L_j^(i-j)(2pq) q^(i-j)
        i <  j: (-1)^i i!/2^i L_i^(j-i)(2pq) p^(j-i)
    """
    two_pq = Poly.pq_monomial((1,), (1,), 2)
    if i >= j:
        lead = ONE * ((-1) ** j * factorial(j)) / 2 ** j
        return laguerre_poly(j, i - j, two_pq) * \
            Poly.pq_monomial((0,), (i - j,), lead)

    lead = ONE * ((-1) ** i * factorial(i)) / 2 ** i
    return laguerre_poly(i, j - i, two_pq) * \
        Poly.pq_monomial((j - i,), (0,), lead)


@lru_cache(maxsize=4096)
def star_qp_closed(q_exp: MultiIndex, p_exp: MultiIndex) -> Poly:
    """
    ``Q^M * P^N``. Factors in distinct coordinates commute under the Moyal
    product, so this is the commutative product of the one-coordinate
    closed forms.
    """
    assert len(q_exp) == len(p_exp), "exponents of different lengths"
    n = len(q_exp)
    result = Poly.one(n)
    for coord, (i, j) in enumerate(zip(q_exp, p_exp)):
        single = star_monomial_closed(i, j)
        lifted = {}
        for (a, b), c in single.terms.items():
            exp = [0] * (2 * n)
            exp[coord] = a
            exp[n + coord] = b
            lifted[tuple(exp)] = c
        result = result * Poly(n, VarKind.SYMPLECTIC, lifted)
    return result


def star_basis_element(index: Sequence[int]) -> Poly:
    """
    ``q_1^i1 * p_1^i1 * ... * q_n^in * p_n^in``.
    """
    return star_qp_closed(tuple(index), tuple(index))


def lemma_power_check(phi: Poly, k: int) -> bool:
    """
    Whether ``phi * ... * phi`` (``k`` factors) equals ``phi^k``.
    """
    assert phi.degrees() in ([1], []), "phi must be homogeneous of degree 1"
    if k == 0:
        return True
    return star_chain([phi] * k) == phi ** k


def symmetric_star(factors: Sequence[Poly]) -> Poly:
    """
    ``1/k! sum_sigma phi_sigma(1) * ... * phi_sigma(k)``.
    """
    assert factors, "at least one factor is required"
    n = factors[0].n
    products = [star_chain(list(order)) for order in permutations(factors)]
    return poly_sum(products, n).scale(ONE / factorial(len(factors)))


def monomial_star_table(n: int, max_degree: int
                        ) -> Dict[Tuple[MultiIndex, MultiIndex], Scalar]:
    """
    ``Str(P^I * Q^J)`` for every pair with ``|I|, |J| <= max_degree``.
    """
    table = {}
    for i_exp in indices_up_to(max_degree, n):
        p_mono = Poly.pq_monomial(i_exp, (0,) * n)
        for j_exp in indices_up_to(max_degree, n):
            q_mono = Poly.pq_monomial((0,) * n, j_exp)
            table[(i_exp, j_exp)] = kappa(p_mono, q_mono)
    log.debug("supertrace table n=%i max_degree=%i: %i entries",
              n, max_degree, len(table))
    return table
