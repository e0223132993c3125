from typing import Any, Dict, Optional

import weylstar
from weylstar import ops
from weylstar.operators import LinOp


class SeriesRequestBuilder:
    """
    Builds a ``strwbar``, ``rstr`` or ``iw`` request and runs it on an
    engine.
    """

    COMMANDS = {"strwbar": ops.Strwbar, "rstr": ops.Rstr, "iw": ops.Iw}

    def __init__(self, engine: 'weylstar.Engine', command: str, op: LinOp):
        assert command in self.COMMANDS, \
            "command must be one of %s" % ", ".join(sorted(self.COMMANDS))
        self._engine = engine
        self._command = command
        self._op = op
        self._overrides: Dict[str, Any] = {}
        self._max_degree = 6
        self._closed_form = False
        self._numeric = False

    def tolerance(self, value: float) -> 'SeriesRequestBuilder':
        self._overrides["tol"] = value
        return self

    def max_terms(self, value: int) -> 'SeriesRequestBuilder':
        self._overrides["max_terms"] = value
        return self

    def burn_in(self, value: int) -> 'SeriesRequestBuilder':
        self._overrides["burn_in"] = value
        return self

    def max_degree(self, value: int) -> 'SeriesRequestBuilder':
        """
        The highest component of an inverse Weyl transform.
        """
        self._max_degree = value
        return self

    def closed_form(self) -> 'SeriesRequestBuilder':
        self._closed_form = True
        self._numeric = False
        return self

    def numeric(self) -> 'SeriesRequestBuilder':
        self._numeric = True
        self._closed_form = False
        return self

    def operation(self) -> ops.Operation:
        policy = self._engine.policy.with_overrides(**self._overrides)
        if self._command == "iw":
            return ops.Iw(op=self._op, max_degree=self._max_degree,
                          closed_form=self._closed_form, policy=policy)
        return self.COMMANDS[self._command](op=self._op,
                                            numeric=self._numeric,
                                            policy=policy)

    def run(self) -> Optional[Any]:
        return self._engine.run(self.operation())
