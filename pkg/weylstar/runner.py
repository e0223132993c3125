"""
weylstar Runner - Runner class, auditor and runner context manager.
"""

import logging
import sys
import time
from contextlib import contextmanager
from typing import Any

from weylstar.errors import WeylStarError
from weylstar.ops import Operation

logger = logging.getLogger("weylstar")


@contextmanager
def open_runner(*args, **kwargs):
    runner = Runner(*args, **kwargs)

    try:
        yield runner
    finally:
        runner.close()


class Auditor:
    """
    The Auditor is used by the runner for reporting-out the status of
    operations as they are run. Records go to the ``weylstar`` logger.
    """

    def __init__(self, enabled: bool) -> None:
        self.command_sn = 1
        self.enabled = enabled
        if enabled:
            self._install_handler()

    @staticmethod
    def _install_handler() -> None:
        if any(getattr(h, "_weylstar_auditor", False)
               for h in logger.handlers):
            return
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(message)s"))
        handler._weylstar_auditor = True  # type: ignore[attr-defined]
        logger.addHandler(handler)
        logger.setLevel(logging.INFO)

    def emit(self, message: str) -> None:
        if self.enabled:
            time_str = time.strftime("[%Y-%m-%d %H:%M:%S]")
            logger.info("%04i%s %s", self.command_sn, time_str, message)

    def run_called(self, command: str) -> None:
        self.emit(f"Started Command {command}")

    def request(self, request: Any) -> None:
        self.emit(f"Request parameters: {request}")

    def response(self, summary: Any) -> None:
        self.emit(f"Response: {summary}")

    def failed(self, error: Exception) -> None:
        self.emit(f"Command failed: {error}")

    def run_returning(self) -> None:
        self.emit("Finished Command")
        self.command_sn += 1


class Runner:
    """
    Runs :class:`Operation` objects and reports on them.

    The Runner class:
        - holds the :class:`Auditor`
        - executes each operation and hands it its response
        - lets library errors through to the caller, after auditing them.
    """

    auditor: Auditor
    is_open: bool

    def __init__(self, verbose: bool = False) -> None:
        self.auditor = Auditor(enabled=verbose)
        self.is_open = True

    def run(self, operation: Operation) -> None:
        """
        Run an operation.

        :raises: :class:`~weylstar.errors.WeylStarError` if the operation
            fails.
        """
        assert self.is_open, "runner is closed"
        self.auditor.run_called(operation.command_name())
        self.auditor.request(operation.request_summary())

        try:
            response = operation.execute()
        except WeylStarError as error:
            self.auditor.failed(error)
            self.auditor.run_returning()
            raise

        operation.on_response(response)
        self.auditor.response(operation.response_summary())
        self.auditor.run_returning()

    def close(self) -> None:
        self.is_open = False
