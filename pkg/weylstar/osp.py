"""
weylstar osp - The orthosymplectic Lie superalgebra ``S^1 + S^2`` inside
the Weyl algebra, its root data, and finite-rank verifications of the
module decompositions of the Weyl algebra.

Every check returns a :class:`CheckReport`; violations are data, not
exceptions.
"""

import logging
from dataclasses import dataclass
from math import comb, factorial
from typing import (Any, Callable, Dict, FrozenSet, Iterable, List, Optional,
                    Sequence, Set, Tuple)

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

from weylstar.moyal import (BracketKind, b_form, bracket, ck_coefficient,
                            kappa, kappa_gram, star, supertrace)
from weylstar.poly import (Poly, VarKind, format_poly, monomial_basis,
                           parity, poisson_bracket)
from weylstar.report import CheckReport
from weylstar.util import MultiIndex, Scalar, ONE, ZERO, format_scalar

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SubspaceSpec:
    """
    The direct sum of the homogeneous components ``S^k`` for ``k`` in
    ``degrees``.
    """
    degrees: FrozenSet[int]
    n: int
    label: str = ""

    @classmethod
    def of(cls, degrees: Iterable[int], n: int,
           label: str = "") -> 'SubspaceSpec':
        return cls(frozenset(degrees), n, label)

    @classmethod
    def osp(cls, n: int) -> 'SubspaceSpec':
        """
        ``S^1 + S^2``, a copy of osp(1, 2n).
        """
        return cls.of((1, 2), n, "g")

    @classmethod
    def even_part(cls, n: int) -> 'SubspaceSpec':
        """
        ``S^2``, a copy of sp(2n).
        """
        return cls.of((2,), n, "g0")

    @classmethod
    def a_module(cls, k: int, n: int) -> 'SubspaceSpec':
        """
        ``A_k = S^(2k-1) + S^(2k)``, stable under the adjoint action.
        """
        assert k >= 1, "A_k needs k >= 1"
        return cls.of((2 * k - 1, 2 * k), n, f"A_{k}")

    @classmethod
    def b_module(cls, k: int, n: int) -> 'SubspaceSpec':
        """
        ``B_k = S^(2k) + S^(2k+1)``, stable under the twisted adjoint action.
        """
        assert k >= 0, "B_k needs k >= 0"
        return cls.of((2 * k, 2 * k + 1), n, f"B_{k}")

    def basis(self) -> List[Poly]:
        out: List[Poly] = []
        for degree in sorted(self.degrees):
            out.extend(monomial_basis(self.n, degree))
        return out

    def dimension(self) -> int:
        return sum(comb(d + 2 * self.n - 1, d) for d in self.degrees)

    def contains(self, f: Poly) -> bool:
        return f.kind is VarKind.SYMPLECTIC and f.n == self.n and \
            set(f.degrees()) <= self.degrees

    def describe(self) -> str:
        return self.label or \
            "+".join(f"S^{d}" for d in sorted(self.degrees))


def dim_homogeneous(degree: int, n: int) -> int:
    """
    ``dim S^degree`` in ``2n`` variables.
    """
    if degree < 0:
        return 0
    return comb(degree + 2 * n - 1, degree)


# Exact linear algebra

def _columns(polys: Sequence[Poly]) -> List[MultiIndex]:
    return sorted({e for f in polys for e in f.terms})


def coefficient_matrix(polys: Sequence[Poly],
                       columns: Optional[Sequence[MultiIndex]] = None
                       ) -> DomainMatrix:
    """
    The matrix whose rows are the coefficient vectors of ``polys``. The
    domain is ``QQ`` when every coefficient is real, ``QQ_I`` otherwise.
    """
    if columns is None:
        columns = _columns(polys)
    index = {e: i for i, e in enumerate(columns)}
    real = all(not c.y for f in polys for c in f.terms.values())
    domain = QQ if real else QQ_I
    zero = domain.zero
    rows = []
    for f in polys:
        row = [zero] * len(columns)
        for exp, c in f.terms.items():
            row[index[exp]] = c.x if real else c
        rows.append(row)
    return DomainMatrix(rows, (len(polys), len(columns)), domain)


def span_rank(polys: Sequence[Poly]) -> int:
    """
    The dimension of the linear span of ``polys``, computed exactly.
    """
    polys = [f for f in polys if not f.is_zero()]
    if not polys:
        return 0
    rank = coefficient_matrix(polys).rank()
    log.debug("rank of %i vectors: %i", len(polys), rank)
    return rank


def span_basis(polys: Sequence[Poly]) -> List[Poly]:
    """
    A basis of the span of ``polys`` (the non-zero rows of the reduced
    echelon form).
    """
    polys = [f for f in polys if not f.is_zero()]
    if not polys:
        return []
    n = polys[0].n
    columns = _columns(polys)
    matrix = coefficient_matrix(polys, columns)
    reduced, pivots = matrix.rref()
    domain = matrix.domain
    out = []
    for row in reduced.to_list()[:len(pivots)]:
        terms = {}
        for exp, value in zip(columns, row):
            if value:
                terms[exp] = QQ_I(value, QQ(0)) if domain == QQ else value
        out.append(Poly(n, VarKind.SYMPLECTIC, terms))
    return out


def contains_space(polys: Sequence[Poly], target: Sequence[Poly]) -> bool:
    """
    Whether ``span(target)`` lies inside ``span(polys)``.
    """
    base = span_rank(polys)
    return span_rank(list(polys) + list(target)) == base


# The superalgebra and its roots

def osp_basis(n: int) -> List[Poly]:
    """
    The monomial basis of ``S^1 + S^2``; its dimension is
    ``2n + n(2n+1) = dim osp(1, 2n)``.
    """
    return SubspaceSpec.osp(n).basis()


def cartan_element(i: int, n: int) -> Poly:
    """
    ``H_i = -1/2 [p_i, q_i] = -p_i q_i``.
    """
    return bracket(BracketKind.SUPER, Poly.p(i, n), Poly.q(i, n)) \
        .scale(-ONE / 2)


@dataclass(frozen=True)
class RootDatum:
    vector: Poly
    weight: Tuple[int, ...]
    positive: bool
    label: str

    def verify(self) -> bool:
        """
        Whether ``ad(H_i) vector = weight_i vector`` for every ``i``.
        """
        n = self.vector.n
        return all(
            bracket(BracketKind.SUPER, cartan_element(i, n), self.vector) ==
            self.vector.scale(self.weight[i - 1])
            for i in range(1, n + 1))

    def to_json(self) -> Dict[str, Any]:
        return {"label": self.label, "vector": format_poly(self.vector),
                "weight": list(self.weight), "positive": self.positive}


def _unit(i: int, n: int, sign: int = 1) -> List[int]:
    w = [0] * n
    w[i - 1] += sign
    return w


def cartan_and_roots(n: int) -> List[RootDatum]:
    """
    Root vectors of osp(1, 2n) with their weights in the basis
    ``omega_1..omega_n``: ``p_i`` has root ``omega_i``, ``q_i`` has
    ``-omega_i``, ``[p_i, q_j]`` has ``omega_i - omega_j``, ``[p_i, p_j]``
    has ``omega_i + omega_j`` and ``[q_i, q_j]`` has its negative.
    """
    roots: List[RootDatum] = []
    sup = BracketKind.SUPER
    for i in range(1, n + 1):
        roots.append(RootDatum(Poly.p(i, n), tuple(_unit(i, n)), True,
                               f"p{i}"))
        roots.append(RootDatum(Poly.q(i, n), tuple(_unit(i, n, -1)), False,
                               f"q{i}"))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            w = _unit(i, n)
            w[j - 1] -= 1
            roots.append(RootDatum(bracket(sup, Poly.p(i, n), Poly.q(j, n)),
                                   tuple(w), i < j, f"[p{i},q{j}]"))
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            w = _unit(i, n)
            w[j - 1] += 1
            roots.append(RootDatum(bracket(sup, Poly.p(i, n), Poly.p(j, n)),
                                   tuple(w), True, f"[p{i},p{j}]"))
            roots.append(RootDatum(bracket(sup, Poly.q(i, n), Poly.q(j, n)),
                                   tuple(-x for x in w), False,
                                   f"[q{i},q{j}]"))
    return roots


def fundamental_root_vectors(n: int) -> List[Poly]:
    """
    ``[p_i, q_(i+1)]`` for ``i < n`` and ``p_n``, the root vectors of the
    simple roots ``omega_i - omega_(i+1)`` and ``omega_n``.
    """
    out = [bracket(BracketKind.SUPER, Poly.p(i, n), Poly.q(i + 1, n))
           for i in range(1, n)]
    out.append(Poly.p(n, n))
    return out


def super_jacobi_check(n: int) -> CheckReport:
    """
    ``(-1)^(xz)[X,[Y,Z]] + (-1)^(yx)[Y,[Z,X]] + (-1)^(zy)[Z,[X,Y]] = 0`` on
    every basis triple, and closure of the bracket on ``S^1 + S^2``.
    """
    basis = osp_basis(n)
    sup = BracketKind.SUPER
    spec = SubspaceSpec.osp(n)
    witnesses = []
    for x in basis:
        for y in basis:
            xy = bracket(sup, x, y)
            if not spec.contains(xy):
                witnesses.append({"kind": "closure", "x": format_poly(x),
                                  "y": format_poly(y)})
    for x in basis:
        px = parity(x)
        for y in basis:
            py = parity(y)
            for z in basis:
                pz = parity(z)
                total = \
                    bracket(sup, x, bracket(sup, y, z)) \
                    .scale((-1) ** (px * pz)) + \
                    bracket(sup, y, bracket(sup, z, x)) \
                    .scale((-1) ** (py * px)) + \
                    bracket(sup, z, bracket(sup, x, y)) \
                    .scale((-1) ** (pz * py))
                if not total.is_zero():
                    witnesses.append({"kind": "jacobi",
                                      "x": format_poly(x),
                                      "y": format_poly(y),
                                      "z": format_poly(z)})
    return CheckReport("super-jacobi", {"n": n}, not witnesses, witnesses,
                       {"dimension": len(basis)})


def roots_check(n: int) -> CheckReport:
    witnesses = [r.to_json() for r in cartan_and_roots(n) if not r.verify()]
    return CheckReport("roots", {"n": n}, not witnesses, witnesses)


# Module checks

def check_stability(spec: SubspaceSpec, action: BracketKind,
                    acting: SubspaceSpec) -> CheckReport:
    """
    Whether ``bracket(action, X, F)`` stays in ``spec`` for every basis
    element ``X`` of ``acting`` and ``F`` of ``spec``.
    """
    witnesses = []
    for x in acting.basis():
        for f in spec.basis():
            image = bracket(action, x, f)
            if not spec.contains(image):
                witnesses.append({"x": format_poly(x), "f": format_poly(f),
                                  "image": format_poly(image)})
    params = {"spec": spec.describe(), "n": spec.n,
              "action": action.value, "acting": acting.describe()}
    return CheckReport("stability", params, not witnesses, witnesses)


@dataclass
class HighestWeight:
    weight: Optional[Tuple[Any, ...]]
    annihilated: bool
    action: BracketKind

    def to_json(self) -> Dict[str, Any]:
        return {"weight": None if self.weight is None else
                [w if isinstance(w, int) else format_scalar(w)
                 for w in self.weight],
                "annihilated": self.annihilated,
                "action": self.action.value}


def eigenvalue(operator: Callable[[Poly], Poly], v: Poly) -> Optional[Scalar]:
    """
    The scalar ``c`` with ``operator(v) = c v``, or `None` when ``v`` is
    not an eigenvector.
    """
    assert not v.is_zero(), "the zero vector has no eigenvalue"
    image = operator(v)
    exp, coeff = v.items()[0]
    ratio = image.coefficient(exp) / coeff
    if image != v.scale(ratio):
        return None
    return ratio


def _as_int(value: Scalar) -> Any:
    if not value.y and value.x.denominator == 1:
        return int(value.x.numerator)
    return value


def highest_weight_check(v: Poly, n: Optional[int] = None,
                         action: Optional[BracketKind] = None
                         ) -> HighestWeight:
    """
    The ``H_i``-weights of ``v`` and whether the fundamental positive root
    vectors annihilate it. The default action is the adjoint one for even
    ``v`` and the twisted adjoint one for odd ``v``.
    """
    n = n or v.n
    assert v.n == n, "v lives in a different space"
    if action is None:
        action = BracketKind.SUPER if parity(v) == 0 else \
            BracketKind.TWISTED_SUPER

    weights: List[Any] = []
    for i in range(1, n + 1):
        h = cartan_element(i, n)
        value = eigenvalue(lambda f: bracket(BracketKind.SUPER, h, f), v)
        if value is None:
            weights = []
            break
        weights.append(_as_int(value))

    annihilated = all(bracket(action, x, v).is_zero()
                      for x in fundamental_root_vectors(n))
    return HighestWeight(tuple(weights) if weights else None, annihilated,
                         action)


def cyclic_generation_check(v: Poly, spec: SubspaceSpec,
                            action: BracketKind,
                            acting: Optional[SubspaceSpec] = None,
                            max_rounds: Optional[int] = None
                            ) -> CheckReport:
    """
    Apply the acting basis repeatedly to ``v`` and report whether the
    generated subspace is the whole of ``spec``.
    """
    acting = acting or SubspaceSpec.osp(spec.n)
    generators = acting.basis()
    target = spec.dimension()
    current = span_basis([v])
    rounds = 0
    limit = max_rounds or target + 1
    while rounds < limit:
        rounds += 1
        images = [bracket(action, x, w) for x in generators for w in current]
        grown = span_basis(current + images)
        if len(grown) == len(current):
            break
        current = grown

    escaped = [format_poly(w) for w in current if not spec.contains(w)]
    params = {"vector": format_poly(v), "spec": spec.describe(),
              "n": spec.n, "action": action.value}
    details = {"generated": len(current), "dimension": target,
               "rounds": rounds}
    passed = len(current) == target and not escaped
    witnesses = [{"outside": w} for w in escaped]
    return CheckReport("generation", params, passed, witnesses, details)


# Images of the brackets and of the Moyal coefficients

def predicted_degrees(ell: int, m: int, kind: BracketKind) -> List[int]:
    """
    The homogeneous components reached by ``[S^ell, S^m]`` for the given
    kind: the odd Moyal coefficients contribute when the sign in front of
    ``G*F`` is ``+1``, the even ones when it is ``-1``.
    """
    low = min(ell, m)
    sign = kind.sign(ell % 2, m % 2)
    start = 1 if sign == 1 else 0
    return sorted(ell + m - 2 * k for k in range(start, low + 1, 2))


@dataclass
class DegreeImage:
    ell: int
    m: int
    kind: BracketKind
    n: int
    rank: int
    reached: Dict[int, bool]
    predicted: List[int]

    @property
    def matches(self) -> bool:
        full = sorted(d for d, ok in self.reached.items() if ok)
        return full == self.predicted and all(self.reached.values())

    def report(self) -> CheckReport:
        params = {"l": self.ell, "m": self.m, "kind": self.kind.value,
                  "n": self.n}
        details = {"rank": self.rank,
                   "degrees": {str(d): ok for d, ok in
                               sorted(self.reached.items())},
                   "predicted": self.predicted}
        witnesses = [{"degree": d, "reached": ok}
                     for d, ok in sorted(self.reached.items()) if not ok]
        return CheckReport("image", params, self.matches, witnesses, details)


def bracket_degree_image(ell: int, m: int, kind: BracketKind,
                         n: int = 1) -> DegreeImage:
    """
    Span the brackets of all monomial pairs of ``S^ell x S^m`` and report,
    per degree present, whether that ``S^d`` lies in the span.
    """
    images = [bracket(kind, a, b)
              for a in monomial_basis(n, ell)
              for b in monomial_basis(n, m)]
    images = [f for f in images if not f.is_zero()]
    present: Set[int] = set()
    for f in images:
        present.update(f.degrees())

    rank = span_rank(images)
    reached = {d: contains_space(images, monomial_basis(n, d))
               for d in sorted(present)}
    return DegreeImage(ell, m, kind, n, rank, reached,
                       predicted_degrees(ell, m, kind))


def ck_closed_form(k: int, ell: int, m: int) -> Poly:
    """
    ``C_k(p_1^ell, q_1^m) = k!/2^k C(ell,k) C(m,k) p_1^(ell-k) q_1^(m-k)``.
    """
    if k > min(ell, m):
        return Poly.zero(1)
    coeff = ONE * (factorial(k) * comb(ell, k) * comb(m, k)) / 2 ** k
    return Poly.pq_monomial((ell - k,), (m - k,), coeff)


def ck_image_rank(k: int, ell: int, m: int, n: int = 1) -> CheckReport:
    """
    Whether ``C_k(S^ell, S^m)`` is all of ``S^(ell+m-2k)`` when
    ``k <= min(ell, m)`` and zero otherwise.
    """
    images = [ck_coefficient(k, a, b)
              for a in monomial_basis(n, ell)
              for b in monomial_basis(n, m)]
    rank = span_rank(images)
    expected = dim_homogeneous(ell + m - 2 * k, n) \
        if k <= min(ell, m) else 0
    in_degree = all(f.degrees() in ([], [ell + m - 2 * k]) for f in images)
    params = {"k": k, "l": ell, "m": m, "n": n}
    details = {"rank": rank, "expected": expected}
    return CheckReport("ck-image", params, rank == expected and in_degree,
                       [], details)


def clebsch_gordan_n1(ell: int, m: int) -> CheckReport:
    """
    Rank of ``F x G -> F*G`` on ``S^ell x S^m`` for one degree of freedom;
    bijective onto ``sum_k S^(ell+m-2k)`` when the rank is
    ``(ell+1)(m+1)``.
    """
    images = [star(a, b) for a in monomial_basis(1, ell)
              for b in monomial_basis(1, m)]
    rank = span_rank(images)
    expected = (ell + 1) * (m + 1)
    target = sum(ell + m - 2 * k + 1 for k in range(min(ell, m) + 1))
    params = {"l": ell, "m": m}
    details = {"rank": rank, "expected": expected, "target": target}
    return CheckReport("cg", params, rank == expected == target, [], details)


def musson_decomposition_check(max_degree: int, n: int = 1) -> CheckReport:
    """
    ``[S^2, S^k]`` spans ``S^k`` for ``1 <= k <= max_degree``, and the
    supertrace vanishes on every computed bracket.
    """
    witnesses = []
    ranks = {}
    lie = BracketKind.LIE
    for k in range(1, max_degree + 1):
        images = [bracket(lie, x, f) for x in monomial_basis(n, 2)
                  for f in monomial_basis(n, k)]
        rank = span_rank(images)
        ranks[str(k)] = rank
        if rank != dim_homogeneous(k, n) or \
                any(f.degrees() not in ([], [k]) for f in images):
            witnesses.append({"degree": k, "rank": rank,
                              "dimension": dim_homogeneous(k, n)})
        for f in images:
            if supertrace(f):
                witnesses.append({"degree": k, "trace": format_poly(f)})
                break
    return CheckReport("musson", {"max_degree": max_degree, "n": n},
                       not witnesses, witnesses, {"ranks": ranks})


def module_generation_check(max_degree: int, n: int = 1) -> CheckReport:
    """
    Finite proxies for the structure of ``W`` under ``ad_L`` and the
    twisted ``ad'_L``: ``[W, W]_L`` reaches every ``S^k``,
    ``Str(ad'_L(F)(G)) = 0``, ``ad'_L(S^1)(S^k) = S^(k+1)`` and
    ``ad'_L(S^3)(S^k) = S^(k+3) + S^(k-1)`` for ``k > 1``.
    """
    lie = BracketKind.LIE
    twisted = BracketKind.TWISTED_LIE
    witnesses: List[Dict[str, Any]] = []

    for k in range(1, max_degree + 1):
        images = [bracket(lie, a, b) for a in monomial_basis(n, 2)
                  for b in monomial_basis(n, k)]
        if not contains_space(images, monomial_basis(n, k)):
            witnesses.append({"claim": "ad_L(W)(W)", "degree": k})

    for ell in range(0, max_degree + 1):
        for m in range(0, max_degree + 1 - ell):
            for a in monomial_basis(n, ell):
                for b in monomial_basis(n, m):
                    if supertrace(bracket(twisted, a, b)):
                        witnesses.append({"claim": "Str(ad'_L)",
                                          "f": format_poly(a),
                                          "g": format_poly(b)})

    for k in range(0, max_degree):
        images = [bracket(twisted, a, b) for a in monomial_basis(n, 1)
                  for b in monomial_basis(n, k)]
        if span_rank(images) != dim_homogeneous(k + 1, n) or \
                any(f.degrees() != [k + 1] for f in images):
            witnesses.append({"claim": "ad'_L(S^1)", "degree": k})

    for k in range(2, max_degree + 1):
        images = [bracket(twisted, a, b) for a in monomial_basis(n, 3)
                  for b in monomial_basis(n, k)]
        expected = dim_homogeneous(k + 3, n) + dim_homogeneous(k - 1, n)
        if span_rank(images) != expected:
            witnesses.append({"claim": "ad'_L(S^3)", "degree": k})

    return CheckReport("generation-w", {"max_degree": max_degree, "n": n},
                       not witnesses, witnesses)


def cocycle_xi(f: Poly) -> Poly:
    """
    ``xi(F) = ad'_L(F)(1)``: zero for even ``F`` and ``2F`` for odd ``F``.
    """
    return bracket(BracketKind.TWISTED_LIE, f, Poly.one(f.n))


def cocycle_identity(f: Poly, g: Poly) -> bool:
    """
    ``xi([F,G]_L) = ad'_L(F)(xi(G)) - ad'_L(G)(xi(F))``.
    """
    twisted = BracketKind.TWISTED_LIE
    left = cocycle_xi(bracket(BracketKind.LIE, f, g))
    right = bracket(twisted, f, cocycle_xi(g)) - \
        bracket(twisted, g, cocycle_xi(f))
    return left == right


# The symplectic embedding and the invariant forms

def sp_matrix(x: Poly) -> DomainMatrix:
    """
    The matrix of ``phi -> {X, phi}`` on ``S^1`` in the basis
    ``p_1..p_n, q_1..q_n``; column ``c`` holds the image of basis vector
    ``c``.
    """
    n = x.n
    basis = monomial_basis(n, 1)
    columns = [poisson_bracket(x, b) for b in basis]
    rows = [[col.coefficient(b_exp) for col in columns]
            for b_exp in (next(iter(b.terms)) for b in basis)]
    return DomainMatrix(rows, (2 * n, 2 * n), QQ_I)


def _phi_gram(n: int) -> DomainMatrix:
    basis = monomial_basis(n, 1)
    rows = [[poisson_bracket(a, b).coefficient((0,) * (2 * n)) / 2
             for b in basis] for a in basis]
    return DomainMatrix(rows, (2 * n, 2 * n), QQ_I)


def check_sp_embedding(n: int) -> CheckReport:
    """
    ``X -> ad(X)|S^1`` is a Lie homomorphism from ``S^2`` onto sp(2n) that
    preserves ``Phi(phi, psi) = 1/2 {phi, psi}``.
    """
    basis = monomial_basis(n, 2)
    gram = _phi_gram(n)
    witnesses = []
    matrices = {x: sp_matrix(x) for x in basis}
    for x in basis:
        mx = matrices[x]
        if mx.transpose() * gram + gram * mx != \
                DomainMatrix.zeros((2 * n, 2 * n), QQ_I).to_dense():
            witnesses.append({"kind": "invariance", "x": format_poly(x)})
        for y in basis:
            my = matrices[y]
            xy = bracket(BracketKind.LIE, x, y)
            if xy != poisson_bracket(x, y):
                witnesses.append({"kind": "poisson", "x": format_poly(x),
                                  "y": format_poly(y)})
            if sp_matrix(xy) != mx * my - my * mx:
                witnesses.append({"kind": "homomorphism",
                                  "x": format_poly(x), "y": format_poly(y)})

    flat = []
    for x in basis:
        entries = [e for row in matrices[x].to_list() for e in row]
        flat.append(Poly(4 * n * n, VarKind.PLAIN,
                         {tuple(1 if k == i else 0
                                for k in range(4 * n * n)): e
                          for i, e in enumerate(entries)}))
    rank = span_rank(flat)
    expected = n * (2 * n + 1)
    if rank != expected:
        witnesses.append({"kind": "rank", "rank": rank,
                          "expected": expected})
    return CheckReport("sp-embedding", {"n": n}, not witnesses, witnesses,
                       {"rank": rank})


def theta_invariance_check(n: int) -> CheckReport:
    """
    On ``V = K + S^1`` the form ``Theta = B`` has ``Theta(1, 1) = -1``,
    ``Theta(phi, psi) = 1/2 {phi, psi}``; ``V`` is stable under the twisted
    adjoint action of ``S^1 + S^2`` and ``Theta`` is invariant under it.
    """
    space = [Poly.one(n)] + monomial_basis(n, 1)
    twisted = BracketKind.TWISTED_SUPER
    witnesses: List[Dict[str, Any]] = []
    origin = (0,) * (2 * n)

    if b_form(Poly.one(n), Poly.one(n)) != -ONE:
        witnesses.append({"kind": "theta(1,1)"})
    for a in space[1:]:
        for b in space[1:]:
            if b_form(a, b) != poisson_bracket(a, b).coefficient(origin) / 2:
                witnesses.append({"kind": "theta", "a": format_poly(a),
                                  "b": format_poly(b)})

    v_spec = SubspaceSpec.of((0, 1), n)
    for x in osp_basis(n):
        px = parity(x)
        for a in space:
            pa = parity(a)
            xa = bracket(twisted, x, a)
            if not v_spec.contains(xa):
                witnesses.append({"kind": "stability", "x": format_poly(x),
                                  "a": format_poly(a)})
            for b in space:
                xb = bracket(twisted, x, b)
                total = b_form(xa, b) + b_form(a, xb) * (-1) ** (px * pa)
                if total:
                    witnesses.append({"kind": "invariance",
                                      "x": format_poly(x),
                                      "a": format_poly(a),
                                      "b": format_poly(b)})
    return CheckReport("theta", {"n": n}, not witnesses, witnesses)


def gram_parity_report(ell: int, n: int = 1) -> CheckReport:
    """
    The Gram matrix of ``kappa`` on ``S^ell`` is nonsingular, symmetric for
    even ``ell`` and antisymmetric for odd ``ell``.
    """
    gram = kappa_gram(ell, n)
    size = gram.shape[0]
    symmetric = gram == gram.transpose()
    antisymmetric = gram == -gram.transpose()
    rank = gram.rank()
    expected_symmetric = ell % 2 == 0
    passed = rank == size and \
        (symmetric if expected_symmetric else antisymmetric)
    details = {"size": size, "rank": rank, "symmetric": symmetric,
               "antisymmetric": antisymmetric}
    return CheckReport("gram", {"l": ell, "n": n}, passed, [], details)


def kappa_block_check(max_degree: int, n: int = 1) -> CheckReport:
    """
    ``kappa(S^ell, S^m) = 0`` for ``ell != m <= max_degree``.
    """
    witnesses = []
    bases = {d: monomial_basis(n, d) for d in range(max_degree + 1)}
    for ell in range(max_degree + 1):
        for m in range(max_degree + 1):
            if ell == m:
                continue
            for a in bases[ell]:
                for b in bases[m]:
                    if kappa(a, b):
                        witnesses.append({"f": format_poly(a),
                                          "g": format_poly(b)})
    return CheckReport("kappa-blocks", {"max_degree": max_degree, "n": n},
                       not witnesses, witnesses)


def kappa_invariance_failures(triples: Iterable[Tuple[Poly, Poly, Poly]]
                              ) -> List[Tuple[Poly, Poly, Poly]]:
    """
    Triples of parity-homogeneous polynomials violating
    ``kappa(ad(F)(G), H) + (-1)^(fg) kappa(G, ad(F)(H)) = 0``.
    """
    sup = BracketKind.SUPER
    failures = []
    for f, g, h in triples:
        sign = (-1) ** (parity(f) * parity(g))
        total = kappa(bracket(sup, f, g), h) + \
            kappa(g, bracket(sup, f, h)) * sign
        if total != ZERO:
            failures.append((f, g, h))
    return failures


def b_invariance_failures(triples: Iterable[Tuple[Poly, Poly, Poly]]
                          ) -> List[Tuple[Poly, Poly, Poly]]:
    """
    Triples violating ``B(ad'(A)(F), G) + (-1)^(af) B(F, ad'(A)(G)) = 0``.
    """
    twisted = BracketKind.TWISTED_SUPER
    failures = []
    for a, f, g in triples:
        sign = (-1) ** (parity(a) * parity(f))
        total = b_form(bracket(twisted, a, f), g) + \
            b_form(f, bracket(twisted, a, g)) * sign
        if total != ZERO:
            failures.append((a, f, g))
    return failures
