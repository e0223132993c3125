"""
Hypothesis strategies for polynomials and finite rank operators.
"""

from hypothesis import strategies as st
from sympy.polys.domains import QQ_I

from weylstar.operators import FiniteRankOp
from weylstar.poly import Poly, VarKind
from weylstar.util import compositions, indices_up_to, rational

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)

gaussians = st.tuples(rationals, rationals).map(
    lambda t: QQ_I(rational(t[0]), rational(t[1])))


@st.composite
def polys(draw, n: int = 1, max_degree: int = 3,
          kind: VarKind = VarKind.SYMPLECTIC, max_terms: int = 4,
          degree=None, coefficients=rationals) -> Poly:
    """
    Sparse polynomials of bounded degree; ``degree`` makes them
    homogeneous.
    """
    nvars = kind.nvars(n)
    if degree is None:
        exps = list(indices_up_to(max_degree, nvars))
    else:
        exps = list(compositions(degree, nvars))
    chosen = draw(st.lists(st.sampled_from(exps), max_size=max_terms,
                           unique=True))
    return Poly(n, kind, {e: draw(coefficients) for e in chosen})


@st.composite
def finite_rank_ops(draw, n: int = 1, max_degree: int = 2,
                    max_entries: int = 3) -> FiniteRankOp:
    exps = list(indices_up_to(max_degree, n))
    chosen = draw(st.lists(st.sampled_from(exps), min_size=1,
                           max_size=max_entries, unique=True))
    integers = st.integers(min_value=-2, max_value=2)
    table = {}
    for exp in chosen:
        image = draw(polys(n=n, max_degree=max_degree, kind=VarKind.PLAIN,
                           max_terms=2, coefficients=integers))
        table[exp] = image + Poly.monomial(exp, n, VarKind.PLAIN,
                                           draw(integers))
    return FiniteRankOp(n, table)


@st.composite
def parity_polys(draw, n: int = 1, max_degree: int = 4,
                 max_terms: int = 4) -> Poly:
    """
    Parity-homogeneous polynomials, usually spread over several degrees.
    """
    odd = draw(st.integers(min_value=0, max_value=1))
    exps = [e for e in indices_up_to(max_degree, 2 * n) if sum(e) % 2 == odd]
    chosen = draw(st.lists(st.sampled_from(exps), max_size=max_terms,
                           unique=True))
    return Poly(n, VarKind.SYMPLECTIC, {e: draw(rationals) for e in chosen})
