"""
weylstar report - The outcome record shared by every verification routine
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List


@dataclass
class CheckReport:
    """
    Outcome of one verification, serializable as
    ``{check, parameters, status, witnesses}``. Violations are data, not
    exceptions.
    """
    check: str
    parameters: Dict[str, Any]
    passed: bool
    witnesses: List[Dict[str, Any]] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self) -> Dict[str, Any]:
        data = {
            "check": self.check,
            "parameters": self.parameters,
            "status": self.status,
            "witnesses": self.witnesses,
        }
        if self.details:
            data["details"] = self.details
        return data
