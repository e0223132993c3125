from typing import Any, Union

from weylstar.operators import ElementaryOp, LinOp, ScalingOp
from weylstar.ops import Operation
from weylstar.poly import format_poly
from weylstar.trace import (DEFAULT_POLICY, GradedSeries, SeriesResult,
                            SeriesStatus, iw_closed_form, iw_numeric, rstr,
                            rstr_closed_form, str_wbar)
from weylstar.util import ONE, Scalar, format_scalar

SeriesValue = Union[Scalar, SeriesResult]


def has_closed_form(op: Any) -> bool:
    return isinstance(op, (ScalingOp, ElementaryOp)) or \
        (isinstance(op, LinOp) and op.is_finite_rank)


class SeriesOperation(Operation[SeriesValue]):
    """
    Base for the supertrace operations. Operators with a closed form get an
    exact value unless ``numeric`` is set; everything else is summed under
    the request's summation policy.
    """

    def policy(self):
        return self.request.get("policy") or DEFAULT_POLICY

    def closed(self) -> bool:
        return not self.request.get("numeric") and \
            has_closed_form(self.request["op"])

    def request_summary(self) -> Any:
        return {"op": repr(self.request["op"]),
                "numeric": bool(self.request.get("numeric")),
                "policy": self.policy().to_json()}

    def to_json(self) -> Any:
        if isinstance(self.response, SeriesResult):
            return self.response.to_json()
        return {"status": SeriesStatus.CONVERGED.value,
                "value": format_scalar(self.response),
                "exact": True}

    def to_text(self) -> str:
        result = self.response
        if not isinstance(result, SeriesResult):
            return format_scalar(result)
        if result.value is None:
            return f"{result.status.value} after {result.terms_used} batches"
        return f"{result.to_json()['value']} " + \
            f"({result.status.value} after {result.terms_used} batches)"

    def response_summary(self) -> Any:
        return self.to_text()

    def exit_code(self) -> int:
        if isinstance(self.response, SeriesResult) and \
                self.response.status is not SeriesStatus.CONVERGED:
            return 3
        return 0


class Strwbar(SeriesOperation):

    def execute(self) -> SeriesValue:
        op = self.request["op"]
        if self.closed():
            return rstr_closed_form(op) * 2 ** op.n
        return str_wbar(op, self.policy())


class Rstr(SeriesOperation):

    def execute(self) -> SeriesValue:
        op = self.request["op"]
        if self.closed():
            return rstr_closed_form(op) * ONE
        return rstr(op, self.policy())


class Iw(Operation[GradedSeries]):
    """
    The inverse Weyl transform, summed numerically unless ``closed_form``
    is set.
    """

    def execute(self) -> GradedSeries:
        op = self.request["op"]
        max_degree = self.request.get("max_degree", 6)
        if self.request.get("closed_form"):
            return iw_closed_form(op, max_degree)
        return iw_numeric(op, max_degree,
                          self.request.get("policy") or DEFAULT_POLICY)

    def request_summary(self) -> Any:
        return {"op": repr(self.request["op"]),
                "max_degree": self.request.get("max_degree", 6),
                "closed_form": bool(self.request.get("closed_form"))}

    def response_summary(self) -> Any:
        return self.response.status.value

    def to_json(self) -> Any:
        return self.response.to_json()

    def to_text(self) -> str:
        series = self.response
        if not series.exists:
            bad = [k for k, c in sorted(series.components.items())
                   if c.status is not SeriesStatus.CONVERGED]
            return f"{series.status.value} (components {bad})"
        return format_poly(series.as_poly())

    def exit_code(self) -> int:
        return 0 if self.response.exists else 3
