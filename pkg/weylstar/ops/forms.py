from typing import Any

from weylstar.moyal import b_form, kappa, supertrace
from weylstar.ops import Operation
from weylstar.util import Scalar, format_scalar


class ScalarOperation(Operation[Scalar]):
    """
    Base for the operations answering with one exact scalar.
    """

    def to_json(self) -> Any:
        return {"value": format_scalar(self.response)}

    def to_text(self) -> str:
        return format_scalar(self.response)


class Str(ScalarOperation):

    def execute(self) -> Scalar:
        return supertrace(self.request["f"])


class Kappa(ScalarOperation):

    def execute(self) -> Scalar:
        return kappa(self.request["f"], self.request["g"])


class Bform(ScalarOperation):

    def execute(self) -> Scalar:
        return b_form(self.request["f"], self.request["g"])
