"""
weylstar Engine - Engine class and context manager
"""

from __future__ import annotations

from contextlib import contextmanager
from typing import List, Optional, Union

import weylstar
from weylstar import ops
from weylstar.builders.finite_rank_builder import FiniteRankOpBuilder
from weylstar.builders.series_builder import SeriesRequestBuilder
from weylstar.moyal import BracketKind
from weylstar.operators import DiffOpSeries, LinOp, NormalSymbol
from weylstar.osp import RootDatum
from weylstar.poly import Poly
from weylstar.report import CheckReport
from weylstar.trace import (DEFAULT_POLICY, GradedSeries, SeriesResult,
                            SummationPolicy)
from weylstar.util import Scalar, ScalarLike
from weylstar.weyl_oracle import NormalForm


@contextmanager
def open_engine(*args, **kwargs):
    """
    Open a weylstar engine. Engine will close with the context.

    :param verbose: Audit every operation to stderr.
    :param policy: The default :class:`SummationPolicy` for numeric series.
    """
    engine = Engine(*args, **kwargs)

    try:
        yield engine
    finally:
        engine.close()


class Engine:
    """
    A callable interface for weylstar.

    The Engine exposes every weylstar command as a method, translating call
    arguments into an :class:`~weylstar.ops.Operation`, running it on its
    :class:`~weylstar.Runner` and returning the operation's response. So,
    instead of building an operation, running it and reading its response,
    you can simply call a method on the Engine with parameters, and that
    method returns a value.

    Numeric series use the engine's :class:`SummationPolicy` unless a call
    passes its own.
    """

    runner: weylstar.Runner
    policy: SummationPolicy

    def __init__(self, verbose: bool = False,
                 policy: Optional[SummationPolicy] = None):
        self.runner = weylstar.Runner(verbose=verbose)
        self.policy = policy or DEFAULT_POLICY

    def close(self):
        """
        Close the engine.
        """
        self.runner.close()

    def run(self, op: ops.Operation):
        """
        Run an operation and return its response.
        """
        self.runner.run(op)
        return op.response

    # Products and forms

    def star(self, f: Poly, g: Poly, t: ScalarLike = 1,
             max_degree: Optional[int] = None) -> Poly:
        """
        The Moyal product ``F *_t G``.

        :param max_degree: drop terms above this degree.
        """
        return self.run(ops.Star(f=f, g=g, t=t, max_degree=max_degree))

    def bracket(self, kind: Union[BracketKind, str], f: Poly,
                g: Poly) -> Poly:
        """
        ``F*G - sign G*F`` with the sign of ``kind``: ``lie``, ``super``,
        ``twisted_lie`` or ``twisted_super``.
        """
        return self.run(ops.Bracket(kind=kind, f=f, g=g))

    def supertrace(self, f: Poly) -> Scalar:
        return self.run(ops.Str(f=f))

    def kappa(self, f: Poly, g: Poly) -> Scalar:
        return self.run(ops.Kappa(f=f, g=g))

    def b_form(self, f: Poly, g: Poly) -> Scalar:
        return self.run(ops.Bform(f=f, g=g))

    def symmetrize(self, f: Poly) -> NormalForm:
        """
        The normal-ordered Weyl algebra element of a polynomial.
        """
        return self.run(ops.Rho(f=f))

    # osp(1, 2n)

    def osp_roots(self, n: int = 1) -> List[RootDatum]:
        return self.run(ops.OspRoots(n=n))

    def osp_check(self, check: str, n: int = 1, **params) -> CheckReport:
        """
        Run one of the named structure checks, e.g. ``"a-module"`` with
        ``k=2``.
        """
        return self.run(ops.OspCheck(check=check, n=n, **params))

    def ck_image(self, k: int, l: int, m: int, n: int = 1) -> CheckReport:
        return self.run(ops.CkImage(k=k, l=l, m=m, n=n))

    def clebsch_gordan(self, l: int, m: int) -> CheckReport:
        return self.run(ops.Cg(l=l, m=m))

    # Operators

    def finite_rank_op(self, n: int = 1) -> FiniteRankOpBuilder:
        """
        Returns a builder for a finite rank operator.

        .. sourcecode:: python
           :caption: Building ``E_00 + E_11``

           b = engine.finite_rank_op(n=1)
           b.map([0], Poly.one(1, VarKind.PLAIN))
           b.map([1], Poly.x(1, 1))
           op = b.build()
        """
        return FiniteRankOpBuilder(n=n)

    def reconstruct(self, op: LinOp, max_order: int = 4,
                    normal_symbol: bool = False
                    ) -> Union[DiffOpSeries, NormalSymbol]:
        return self.run(ops.Reconstruct(op=op, max_order=max_order,
                                        normal_symbol=normal_symbol))

    def wmap(self, symbol: Union[Poly, NormalSymbol], target: Poly) -> Poly:
        return self.run(ops.Wmap(symbol=symbol, target=target))

    # Supertraces and inverse Weyl transforms

    def series_request(self, command: str, op: LinOp
                       ) -> SeriesRequestBuilder:
        """
        Returns a builder for a ``strwbar``, ``rstr`` or ``iw`` request.

        .. sourcecode:: python
           :caption: Summing a transform with a looser tolerance

           b = engine.series_request("iw", ScalingOp(QQ_I(0, 1)))
           b.tolerance(1e-10)
           b.max_degree(8)
           series = b.run()
        """
        return SeriesRequestBuilder(engine=self, command=command, op=op)

    def str_wbar(self, op: LinOp, numeric: bool = False,
                 policy: Optional[SummationPolicy] = None
                 ) -> Union[Scalar, SeriesResult]:
        return self.run(ops.Strwbar(op=op, numeric=numeric,
                                    policy=policy or self.policy))

    def rstr(self, op: LinOp, numeric: bool = False,
             policy: Optional[SummationPolicy] = None
             ) -> Union[Scalar, SeriesResult]:
        """
        The renormalized supertrace. Exact for operators with a closed form
        unless ``numeric`` is set.
        """
        return self.run(ops.Rstr(op=op, numeric=numeric,
                                 policy=policy or self.policy))

    def iw(self, op: LinOp, max_degree: int = 6, closed_form: bool = False,
           policy: Optional[SummationPolicy] = None) -> GradedSeries:
        return self.run(ops.Iw(op=op, max_degree=max_degree,
                               closed_form=closed_form,
                               policy=policy or self.policy))
