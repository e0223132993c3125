from typing import Any

from weylstar.moyal import star
from weylstar.ops import Operation
from weylstar.poly import Poly, format_poly, to_json


class Star(Operation[Poly]):

    def execute(self) -> Poly:
        return star(self.request["f"], self.request["g"],
                    self.request.get("t", 1),
                    self.request.get("max_degree"))

    def to_json(self) -> Any:
        return to_json(self.response)

    def to_text(self) -> str:
        return format_poly(self.response)
