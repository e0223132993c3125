import re
from typing import Any, Dict, Generic, Optional, TypeVar

from weylstar.poly import Poly, format_poly
from weylstar.util import format_scalar

R = TypeVar("R")

_CAMEL = re.compile(r"(?<!^)(?=[A-Z])")


def summarize(value: Any) -> Any:
    """
    A short, JSON-friendly rendering of a request or response value for the
    auditor.
    """
    if isinstance(value, Poly):
        return format_poly(value)
    if isinstance(value, dict):
        return {k: summarize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [summarize(v) for v in value]
    if hasattr(value, "x") and hasattr(value, "y"):
        return format_scalar(value)
    if hasattr(value, "value") and hasattr(value, "name"):
        return value.value
    return value


class Operation(Generic[R]):
    """
    An operation composes a command name with its request parameters and
    its response. The command name is inferred from the class name, so
    ``OspRoots`` runs as ``osp-roots``; most of the time naming a class
    after its command and deriving it from `Operation` is sufficient.

    The runner runs `Operation`s with the Runner.run() method: it calls
    :meth:`execute` and hands the result to :meth:`on_response`.
    """
    request: Dict[str, Any]
    response: Optional[R]

    @classmethod
    def command_name(cls) -> str:
        return _CAMEL.sub("-", cls.__name__).lower()

    def __init__(self, **kwargs) -> None:
        self.request = dict(kwargs)
        self.response = None

    def execute(self) -> R:
        """
        Compute the response from :attr:`request`. Subclasses override.
        """
        raise NotImplementedError(self.command_name())

    def on_response(self, response: R) -> None:
        """
        The runner calls this with the value :meth:`execute` returned.
        """
        self.response = response

    def request_summary(self) -> Any:
        return summarize(self.request)

    def response_summary(self) -> Any:
        return summarize(self.response)

    def to_json(self) -> Any:
        """
        The JSON-compatible form of the response.
        """
        return summarize(self.response)

    def to_text(self) -> str:
        return str(summarize(self.response))

    def exit_code(self) -> int:
        """
        0 for a decided result, 3 for an undetermined or diverged one.
        """
        return 0
