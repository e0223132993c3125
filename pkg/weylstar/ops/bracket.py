from typing import Any

from weylstar.moyal import BracketKind, bracket
from weylstar.ops import Operation
from weylstar.poly import Poly, format_poly, to_json


class Bracket(Operation[Poly]):

    def __init__(self, **kwargs) -> None:
        kind = kwargs.get("kind", BracketKind.SUPER)
        if isinstance(kind, str):
            kwargs["kind"] = BracketKind(kind.replace("-", "_"))
        super().__init__(**kwargs)

    def execute(self) -> Poly:
        return bracket(self.request["kind"], self.request["f"],
                       self.request["g"])

    def to_json(self) -> Any:
        return to_json(self.response)

    def to_text(self) -> str:
        return format_poly(self.response)
