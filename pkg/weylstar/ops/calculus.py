from typing import Any, Union

from weylstar.ops import Operation
from weylstar.operators import (DiffOpSeries, NormalSymbol,
                                reconstruct_diffop, to_normal_symbol,
                                wmap_apply)
from weylstar.poly import Poly, format_poly, to_json


class Reconstruct(Operation[Union[DiffOpSeries, NormalSymbol]]):
    """
    The differential operator form of an operator, or its normal symbol
    when ``normal_symbol`` is set.
    """

    def execute(self) -> Union[DiffOpSeries, NormalSymbol]:
        op = self.request["op"]
        max_order = self.request.get("max_order", 4)
        if self.request.get("normal_symbol"):
            return to_normal_symbol(op, max_order)
        return reconstruct_diffop(op, max_order)

    def request_summary(self) -> Any:
        return {"op": repr(self.request["op"]),
                "max_order": self.request.get("max_order", 4),
                "normal_symbol": bool(self.request.get("normal_symbol"))}

    def response_summary(self) -> Any:
        terms = self.response.alphas \
            if isinstance(self.response, NormalSymbol) \
            else self.response.coefficients
        return f"{len(terms)} terms"

    def to_json(self) -> Any:
        return self.response.to_json()

    def to_text(self) -> str:
        if isinstance(self.response, NormalSymbol):
            items = sorted(self.response.alphas.items())
            template = "alpha{index} = {poly}"
        else:
            items = sorted(self.response.coefficients.items())
            template = "c{index} = {poly}"
        if not items:
            return "0"
        return "\n".join(template.format(index=list(k), poly=format_poly(v))
                         for k, v in items)


class Wmap(Operation[Poly]):
    """
    The action of an element of the Weyl algebra on a plain polynomial.
    """

    def execute(self) -> Poly:
        return wmap_apply(self.request["symbol"], self.request["target"])

    def to_json(self) -> Any:
        return to_json(self.response)

    def to_text(self) -> str:
        return format_poly(self.response)
