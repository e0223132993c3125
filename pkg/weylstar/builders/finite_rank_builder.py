from typing import Dict, Sequence

from weylstar.errors import DomainError
from weylstar.operators import FiniteRankOp
from weylstar.poly import Poly, VarKind
from weylstar.util import MultiIndex


class FiniteRankOpBuilder:
    """
    Collects the table of a :class:`~weylstar.operators.FiniteRankOp`.
    Mapping the same monomial twice adds the images.
    """

    def __init__(self, n: int = 1):
        self._n = n
        self._table: Dict[MultiIndex, Poly] = {}

    def map(self, in_exponents: Sequence[int],
            out_poly: Poly) -> 'FiniteRankOpBuilder':
        """
        Send ``x^in_exponents`` to ``out_poly``.
        """
        key = tuple(in_exponents)
        if len(key) != self._n:
            raise DomainError(
                f"expected {self._n} exponents, got {list(key)}")
        if out_poly.kind is not VarKind.PLAIN or out_poly.n != self._n:
            raise DomainError("images must be plain polynomials in "
                              f"{self._n} variables")
        if key in self._table:
            out_poly = self._table[key] + out_poly
        self._table[key] = out_poly
        return self

    def build(self) -> FiniteRankOp:
        return FiniteRankOp(self._n, self._table)
