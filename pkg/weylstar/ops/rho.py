from typing import Any

from weylstar.ops import Operation
from weylstar.weyl_oracle import (NormalForm, format_normal_form,
                                  normal_form_to_json, symmetrize)


class Rho(Operation[NormalForm]):
    """
    The symmetrization of a polynomial, as a normal-ordered element of the
    Weyl algebra.
    """

    def execute(self) -> NormalForm:
        return symmetrize(self.request["f"])

    def response_summary(self) -> Any:
        return format_normal_form(self.response)

    def to_json(self) -> Any:
        return normal_form_to_json(self.response)

    def to_text(self) -> str:
        return format_normal_form(self.response)
