from typing import Any, Callable, Dict, List

from weylstar.errors import DomainError
from weylstar.moyal import BracketKind
from weylstar.ops import Operation
from weylstar.osp import (RootDatum, SubspaceSpec, bracket_degree_image,
                          cartan_and_roots, check_sp_embedding,
                          check_stability, ck_image_rank, clebsch_gordan_n1,
                          cyclic_generation_check, gram_parity_report,
                          highest_weight_check, kappa_block_check,
                          module_generation_check,
                          musson_decomposition_check, roots_check,
                          super_jacobi_check, theta_invariance_check)
from weylstar.poly import Poly
from weylstar.report import CheckReport


class ReportOperation(Operation[CheckReport]):
    """
    Base for the operations answering with a :class:`CheckReport`.
    """

    def response_summary(self) -> Any:
        return self.response.status

    def to_json(self) -> Any:
        return self.response.to_json()

    def to_text(self) -> str:
        report = self.response
        lines = [f"{report.check}: {report.status}"]
        for key, value in sorted(report.details.items()):
            lines.append(f"  {key}: {value}")
        for witness in report.witnesses:
            lines.append(f"  witness: {witness}")
        return "\n".join(lines)


class OspRoots(Operation[List[RootDatum]]):

    def execute(self) -> List[RootDatum]:
        return cartan_and_roots(self.request.get("n", 1))

    def response_summary(self) -> Any:
        return f"{len(self.response)} roots"

    def to_json(self) -> Any:
        return {"n": self.request.get("n", 1),
                "roots": [r.to_json() for r in self.response]}

    def to_text(self) -> str:
        lines = []
        for root in self.response:
            sign = "+" if root.positive else "-"
            weight = ",".join(str(w) for w in root.weight)
            lines.append(f"{sign} ({weight}) {root.label}")
        return "\n".join(lines)


def _highest_weight(n: int, degree: int) -> CheckReport:
    vector = Poly.p(1, n) ** degree
    result = highest_weight_check(vector, n)
    expected = (degree,) + (0,) * (n - 1)
    passed = result.annihilated and result.weight == expected
    return CheckReport("highest-weight", {"n": n, "degree": degree},
                       passed, [], result.to_json())


def _a_generation(n: int, k: int) -> CheckReport:
    return cyclic_generation_check(Poly.p(1, n) ** (2 * k),
                                   SubspaceSpec.a_module(k, n),
                                   BracketKind.SUPER)


def _b_generation(n: int, k: int) -> CheckReport:
    return cyclic_generation_check(Poly.p(1, n) ** (2 * k + 1),
                                   SubspaceSpec.b_module(k, n),
                                   BracketKind.TWISTED_SUPER)


CHECKS: Dict[str, Callable[..., CheckReport]] = {
    "super-jacobi": lambda r: super_jacobi_check(r["n"]),
    "roots": lambda r: roots_check(r["n"]),
    "a-module": lambda r: check_stability(
        SubspaceSpec.a_module(r["k"], r["n"]), BracketKind.SUPER,
        SubspaceSpec.osp(r["n"])),
    "b-module": lambda r: check_stability(
        SubspaceSpec.b_module(r["k"], r["n"]), BracketKind.TWISTED_SUPER,
        SubspaceSpec.osp(r["n"])),
    "a-generation": lambda r: _a_generation(r["n"], r["k"]),
    "b-generation": lambda r: _b_generation(r["n"], r["k"]),
    "highest-weight": lambda r: _highest_weight(r["n"], r["degree"]),
    "image": lambda r: bracket_degree_image(
        r["l"], r["m"], BracketKind(r["kind"].replace("-", "_")),
        r["n"]).report(),
    "sp-embedding": lambda r: check_sp_embedding(r["n"]),
    "theta": lambda r: theta_invariance_check(r["n"]),
    "gram": lambda r: gram_parity_report(r["degree"], r["n"]),
    "kappa-blocks": lambda r: kappa_block_check(r["max_degree"], r["n"]),
    "musson": lambda r: musson_decomposition_check(r["max_degree"], r["n"]),
    "w-generation": lambda r: module_generation_check(r["max_degree"],
                                                       r["n"]),
}


class OspCheck(ReportOperation):
    """
    One of the named structure checks of :data:`CHECKS`.
    """

    def __init__(self, **kwargs) -> None:
        defaults = {"n": 1, "k": 1, "degree": 1, "max_degree": 4,
                    "l": 1, "m": 1, "kind": "super"}
        defaults.update({k: v for k, v in kwargs.items() if v is not None})
        super().__init__(**defaults)

    def execute(self) -> CheckReport:
        name = self.request["check"]
        if name not in CHECKS:
            raise DomainError(f"unknown check {name!r}; expected one of "
                              f"{', '.join(sorted(CHECKS))}")
        return CHECKS[name](self.request)


class CkImage(ReportOperation):

    def execute(self) -> CheckReport:
        r = self.request
        return ck_image_rank(r["k"], r["l"], r["m"], r.get("n", 1))


class Cg(ReportOperation):

    def execute(self) -> CheckReport:
        return clebsch_gordan_n1(self.request["l"], self.request["m"])
