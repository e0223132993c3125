"""
weylstar Polynomials - Graded multivariate polynomials with exact
Gaussian-rational coefficients.

A :class:`Poly` lives in one of three variable spaces, chosen by its
:class:`VarKind`:

- ``SYMPLECTIC``: the ``2n`` variables ``p1..pn, q1..qn`` of the symmetric
  algebra carrying the Moyal product. Exponent tuples list the ``p``
  exponents first.
- ``PLAIN``: the ``n`` variables ``x1..xn`` of the polynomial module on
  which linear operators act.
- ``TENSOR``: the ``2n`` variables ``x1..xn, x1'..xn'`` of the doubled
  space used by the coproduct.
"""

import enum
from collections import defaultdict
from math import comb
from typing import (Any, Callable, Dict, Iterable, List, Mapping, Optional,
                    Sequence, Tuple)

from sympy.polys.polyerrors import CoercionFailed

from weylstar.errors import VariableMismatchError
from weylstar.util import (MultiIndex, Scalar, ScalarLike, ZERO, ONE,
                           compositions, format_rational, format_scalar,
                           is_real, parse_scalar, scalar, sub_indices)


class VarKind(enum.Enum):
    SYMPLECTIC = "symplectic"
    PLAIN = "plain"
    TENSOR = "tensor"

    def nvars(self, n: int) -> int:
        """
        Number of variables of this kind for ``n`` degrees of freedom.
        """
        if self is VarKind.PLAIN:
            return n
        return 2 * n

    def names(self, n: int) -> List[str]:
        if self is VarKind.SYMPLECTIC:
            return [f"p{i}" for i in range(1, n + 1)] + \
                [f"q{i}" for i in range(1, n + 1)]
        if self is VarKind.PLAIN:
            return [f"x{i}" for i in range(1, n + 1)]
        return [f"x{i}" for i in range(1, n + 1)] + \
            [f"x{i}'" for i in range(1, n + 1)]


class Poly:
    """
    An immutable polynomial stored as a map from exponent tuples to
    non-zero coefficients.
    """

    __slots__ = ("_n", "_kind", "_terms", "_hash")

    def __init__(self, n: int, kind: VarKind = VarKind.SYMPLECTIC,
                 terms: Optional[Mapping[MultiIndex, ScalarLike]] = None
                 ) -> None:
        assert n >= 1, "n must be positive"
        self._n = n
        self._kind = kind
        self._hash: Optional[int] = None
        nvars = kind.nvars(n)
        clean: Dict[MultiIndex, Scalar] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(exp)
            assert len(exp) == nvars, \
                f"exponent {exp} does not have {nvars} entries"
            assert all(e >= 0 for e in exp), \
                f"negative exponent in {exp}"
            value = scalar(coeff)
            if value:
                clean[exp] = value
        self._terms = clean

    @classmethod
    def _raw(cls, n: int, kind: VarKind,
             terms: Dict[MultiIndex, Scalar]) -> 'Poly':
        # terms must already be canonical field elements
        obj = cls.__new__(cls)
        obj._n = n
        obj._kind = kind
        obj._hash = None
        obj._terms = {e: c for e, c in terms.items() if c}
        return obj

    # Constructors

    @classmethod
    def zero(cls, n: int, kind: VarKind = VarKind.SYMPLECTIC) -> 'Poly':
        return cls._raw(n, kind, {})

    @classmethod
    def constant(cls, value: ScalarLike, n: int,
                 kind: VarKind = VarKind.SYMPLECTIC) -> 'Poly':
        return cls(n, kind, {(0,) * kind.nvars(n): value})

    @classmethod
    def one(cls, n: int, kind: VarKind = VarKind.SYMPLECTIC) -> 'Poly':
        return cls.constant(1, n, kind)

    @classmethod
    def monomial(cls, exp: Sequence[int], n: int,
                 kind: VarKind = VarKind.SYMPLECTIC,
                 coeff: ScalarLike = 1) -> 'Poly':
        return cls(n, kind, {tuple(exp): coeff})

    @classmethod
    def variable(cls, index: int, n: int,
                 kind: VarKind = VarKind.SYMPLECTIC) -> 'Poly':
        """
        The degree one monomial of the variable at position ``index``
        (zero-based, in :meth:`VarKind.names` order).
        """
        exp = [0] * kind.nvars(n)
        exp[index] = 1
        return cls.monomial(exp, n, kind)

    @classmethod
    def p(cls, i: int, n: int) -> 'Poly':
        """
        The symplectic variable ``p_i`` (one-based).
        """
        return cls.variable(i - 1, n)

    @classmethod
    def q(cls, i: int, n: int) -> 'Poly':
        """
        The symplectic variable ``q_i`` (one-based).
        """
        return cls.variable(n + i - 1, n)

    @classmethod
    def x(cls, i: int, n: int) -> 'Poly':
        """
        The plain variable ``x_i`` (one-based).
        """
        return cls.variable(i - 1, n, VarKind.PLAIN)

    @classmethod
    def pq_monomial(cls, p_exp: Sequence[int], q_exp: Sequence[int],
                    coeff: ScalarLike = 1) -> 'Poly':
        """
        ``coeff * P^p_exp * Q^q_exp`` in the symplectic space.
        """
        assert len(p_exp) == len(q_exp), "p and q exponents differ in length"
        return cls.monomial(tuple(p_exp) + tuple(q_exp), len(p_exp),
                            VarKind.SYMPLECTIC, coeff)

    # Accessors

    @property
    def n(self) -> int:
        return self._n

    @property
    def kind(self) -> VarKind:
        return self._kind

    @property
    def nvars(self) -> int:
        return self._kind.nvars(self._n)

    @property
    def terms(self) -> Mapping[MultiIndex, Scalar]:
        """
        Read-only view of the term map.
        """
        return dict(self._terms)

    def items(self) -> List[Tuple[MultiIndex, Scalar]]:
        """
        Terms in graded-lex order, highest degree first.
        """
        return sorted(self._terms.items(), key=lambda t: _glex_key(t[0]),
                      reverse=True)

    def coefficient(self, exp: Sequence[int]) -> Scalar:
        return self._terms.get(tuple(exp), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self._terms)

    def degree(self) -> int:
        """
        Total degree; ``-1`` for the zero polynomial.
        """
        return max((sum(e) for e in self._terms), default=-1)

    def low_degree(self) -> int:
        return min((sum(e) for e in self._terms), default=-1)

    def degrees(self) -> List[int]:
        return sorted({sum(e) for e in self._terms})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def same_space(self, other: 'Poly') -> bool:
        return self._n == other._n and self._kind is other._kind

    def check_space(self, other: 'Poly') -> None:
        if not self.same_space(other):
            raise VariableMismatchError(
                f"{self._kind.value}(n={self._n}) and " +
                f"{other._kind.value}(n={other._n}) polynomials cannot be " +
                "combined")

    # Arithmetic

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.same_space(other) and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._n, self._kind,
                               frozenset(self._terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __neg__(self) -> 'Poly':
        return Poly._raw(self._n, self._kind,
                         {e: -c for e, c in self._terms.items()})

    def __add__(self, other: Any) -> 'Poly':
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for exp, coeff in other._terms.items():
            out[exp] = out.get(exp, ZERO) + coeff
        return Poly._raw(self._n, self._kind, out)

    __radd__ = __add__

    def __sub__(self, other: Any) -> 'Poly':
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> 'Poly':
        return (-self) + other

    def __mul__(self, other: Any) -> 'Poly':
        if isinstance(other, Poly):
            return multiply(self, other)
        try:
            value = scalar(other)
        except (TypeError, ValueError, AttributeError, CoercionFailed):
            return NotImplemented
        return self.scale(value)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> 'Poly':
        value = scalar(other)
        if not value:
            raise ZeroDivisionError("polynomial division by zero")
        return self.scale(ONE / value)

    def __pow__(self, exponent: int) -> 'Poly':
        assert exponent >= 0, "negative powers are not polynomials"
        result = Poly.one(self._n, self._kind)
        base = self
        while exponent:
            if exponent & 1:
                result = multiply(result, base)
            exponent >>= 1
            if exponent:
                base = multiply(base, base)
        return result

    def scale(self, value: ScalarLike) -> 'Poly':
        value = scalar(value)
        if not value:
            return Poly.zero(self._n, self._kind)
        return Poly._raw(self._n, self._kind,
                         {e: c * value for e, c in self._terms.items()})

    def _coerce(self, other: Any) -> Optional['Poly']:
        if isinstance(other, Poly):
            self.check_space(other)
            return other
        try:
            return Poly.constant(scalar(other), self._n, self._kind)
        except (TypeError, ValueError, AttributeError, CoercionFailed):
            return None

    def __repr__(self) -> str:
        return f"Poly({self._kind.value}, n={self._n}, {format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


def _glex_key(exp: MultiIndex) -> Tuple[int, MultiIndex]:
    return (sum(exp), exp)


def multiply(f: Poly, g: Poly) -> Poly:
    """
    The commutative product of two polynomials of the same space.

    :raises VariableMismatchError: if the spaces differ.
    """
    f.check_space(g)
    out: Dict[MultiIndex, Scalar] = defaultdict(lambda: ZERO)
    for e1, c1 in f._terms.items():
        for e2, c2 in g._terms.items():
            exp = tuple(a + b for a, b in zip(e1, e2))
            out[exp] += c1 * c2
    return Poly._raw(f.n, f.kind, out)


def partial_derivative(f: Poly, var: int, order: int = 1) -> Poly:
    """
    The ``order``-th partial derivative of ``f`` in the variable at
    (zero-based) position ``var``.
    """
    assert 0 <= var < f.nvars, \
        f"variable index {var} out of range for {f.nvars} variables"
    assert order >= 0, "derivative order must be non-negative"
    if order == 0:
        return f

    out: Dict[MultiIndex, Scalar] = {}
    for exp, coeff in f._terms.items():
        power = exp[var]
        if power < order:
            continue
        falling = 1
        for k in range(order):
            falling *= power - k
        new_exp = exp[:var] + (power - order,) + exp[var + 1:]
        out[new_exp] = coeff * falling
    return Poly._raw(f.n, f.kind, out)


def partial_multi(f: Poly, index: Sequence[int]) -> Poly:
    """
    The mixed derivative ``d^I f / dx^I`` for a multi-index over all
    variables of ``f``.
    """
    assert len(index) == f.nvars, "multi-index length mismatch"
    result = f
    for var, order in enumerate(index):
        if order:
            result = partial_derivative(result, var, order)
            if result.is_zero():
                break
    return result


def _require_symplectic(*polys: Poly) -> None:
    for f in polys:
        if f.kind is not VarKind.SYMPLECTIC:
            raise VariableMismatchError(
                f"expected a symplectic polynomial, got {f.kind.value}")


def poisson_bracket(f: Poly, g: Poly) -> Poly:
    """
    ``{F, G} = sum_i dF/dp_i dG/dq_i - dF/dq_i dG/dp_i``.
    """
    _require_symplectic(f, g)
    f.check_space(g)
    n = f.n
    result = Poly.zero(n)
    for i in range(n):
        result = result + \
            partial_derivative(f, i) * partial_derivative(g, n + i) - \
            partial_derivative(f, n + i) * partial_derivative(g, i)
    return result


def graded_components(f: Poly) -> List[Tuple[int, Poly]]:
    """
    Split ``f`` into homogeneous components, by ascending degree.
    """
    buckets: Dict[int, Dict[MultiIndex, Scalar]] = defaultdict(dict)
    for exp, coeff in f._terms.items():
        buckets[sum(exp)][exp] = coeff
    return [(d, Poly._raw(f.n, f.kind, buckets[d])) for d in sorted(buckets)]


def component(f: Poly, degree: int) -> Poly:
    """
    The homogeneous component of ``f`` of the given degree.
    """
    return Poly._raw(f.n, f.kind, {e: c for e, c in f._terms.items()
                                   if sum(e) == degree})


def truncate(f: Poly, max_degree: int) -> Poly:
    return Poly._raw(f.n, f.kind, {e: c for e, c in f._terms.items()
                                   if sum(e) <= max_degree})


def eval_zero(f: Poly) -> Scalar:
    """
    The constant term ``F(0)``.
    """
    return f.coefficient((0,) * f.nvars)


def evaluate(f: Poly, point: Sequence[ScalarLike]) -> Scalar:
    """
    Evaluate ``f`` at a point given as one scalar per variable.
    """
    assert len(point) == f.nvars, "point has the wrong number of entries"
    values = [scalar(v) for v in point]
    total = ZERO
    for exp, coeff in f._terms.items():
        term = coeff
        for v, e in zip(values, exp):
            if e:
                term = term * v ** e
        total += term
    return total


def parity(f: Poly) -> int:
    """
    The Z/2 parity of a parity-homogeneous polynomial (0 for zero).

    :raises ValueError: if ``f`` mixes even and odd degrees.
    """
    parities = {sum(e) % 2 for e in f._terms}
    if len(parities) > 1:
        raise ValueError("polynomial is not parity-homogeneous")
    return parities.pop() if parities else 0


def split_parity(f: Poly) -> Tuple[Poly, Poly]:
    """
    Split ``f`` into its even and odd parts.
    """
    even = {e: c for e, c in f._terms.items() if sum(e) % 2 == 0}
    odd = {e: c for e, c in f._terms.items() if sum(e) % 2 == 1}
    return Poly._raw(f.n, f.kind, even), Poly._raw(f.n, f.kind, odd)


def monomial_basis(n: int, degree: int,
                   kind: VarKind = VarKind.SYMPLECTIC) -> List[Poly]:
    """
    The monomials of one degree in graded-lex order (``p1^k`` first).
    """
    return [Poly.monomial(exp, n, kind)
            for exp in compositions(degree, kind.nvars(n))]


def substitute(f: Poly, images: Sequence[Poly]) -> Poly:
    """
    Replace every variable of ``f`` by the corresponding polynomial of
    ``images``; the result lives in the space of the images.
    """
    assert len(images) == f.nvars, "one image per variable is required"
    assert images, "at least one image is required"
    target = images[0]
    for img in images[1:]:
        target.check_space(img)

    powers: Dict[Tuple[int, int], Poly] = {}

    def power(var: int, e: int) -> Poly:
        key = (var, e)
        if key not in powers:
            powers[key] = images[var] ** e
        return powers[key]

    result = Poly.zero(target.n, target.kind)
    for exp, coeff in f._terms.items():
        term = Poly.constant(coeff, target.n, target.kind)
        for var, e in enumerate(exp):
            if e:
                term = multiply(term, power(var, e))
        result = result + term
    return result


def map_exponents(f: Poly, n: int, kind: VarKind,
                  fn: Callable[[MultiIndex], MultiIndex]) -> Poly:
    """
    Re-index every term of ``f`` through ``fn`` into another space; terms
    mapping onto the same exponent are added.
    """
    out: Dict[MultiIndex, Scalar] = defaultdict(lambda: ZERO)
    for exp, coeff in f._terms.items():
        out[fn(exp)] += coeff
    return Poly._raw(n, kind, out)


def rename_kind(f: Poly, kind: VarKind) -> Poly:
    """
    Move a polynomial between the plain space ``x1..xn`` and the
    ``q``-part of the symplectic space, ``x_i <-> q_i``.
    """
    n = f.n
    if f.kind is kind:
        return f
    if f.kind is VarKind.PLAIN and kind is VarKind.SYMPLECTIC:
        return map_exponents(f, n, kind, lambda e: (0,) * n + e)
    if f.kind is VarKind.SYMPLECTIC and kind is VarKind.PLAIN:
        if any(any(e[:n]) for e in f._terms):
            raise VariableMismatchError(
                "only polynomials in q1..qn can be read as plain polynomials")
        return map_exponents(f, n, kind, lambda e: e[n:])
    raise VariableMismatchError(
        f"cannot rename {f.kind.value} polynomial to {kind.value}")


def binomial_expand(f: Poly) -> Poly:
    """
    ``f(x + x')`` in the doubled space, for a plain ``f``.
    """
    assert f.kind is VarKind.PLAIN, "expected a plain polynomial"
    n = f.n
    out: Dict[MultiIndex, Scalar] = defaultdict(lambda: ZERO)
    for exp, coeff in f._terms.items():
        for split in sub_indices(exp):
            weight = 1
            for e, r in zip(exp, split):
                weight *= comb(e, r)
            rest = tuple(e - r for e, r in zip(exp, split))
            out[split + rest] += coeff * weight
    return Poly._raw(n, VarKind.TENSOR, out)


# Text and JSON

def _format_monomial(exp: MultiIndex, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, exp):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(f: Poly) -> str:
    """
    Render ``f`` in graded-lex order, highest degree first, e.g.
    ``p1^2*q1^2 - 2*p1*q1 + 1/2``.
    """
    if f.is_zero():
        return "0"

    names = f.kind.names(f.n)
    chunks: List[str] = []
    for exp, coeff in f.items():
        mono = _format_monomial(exp, names)
        negative = (coeff.x < 0 if is_real(coeff) else
                    (not coeff.x and coeff.y < 0))
        if negative:
            coeff = -coeff

        if not mono:
            text = format_scalar(coeff)
            if not is_real(coeff) and coeff.x:
                text = f"({text})"
        elif coeff == ONE:
            text = mono
        elif is_real(coeff) or not coeff.x:
            text = f"{format_scalar(coeff)}*{mono}"
        else:
            text = f"({format_scalar(coeff)})*{mono}"

        if not chunks:
            chunks.append(f"-{text}" if negative else text)
        else:
            chunks.append(f"- {text}" if negative else f"+ {text}")

    return " ".join(chunks)


def to_json(f: Poly) -> Dict[str, Any]:
    """
    Canonical JSON-compatible form, terms in graded-lex order.
    """
    return {
        "nvars": f.nvars,
        "n": f.n,
        "kind": f.kind.value,
        "terms": [{"exp": list(exp),
                   "re": _json_rational(c.x),
                   "im": _json_rational(c.y)} for exp, c in f.items()]
    }


def _json_rational(value: Any) -> str:
    return format_rational(value)


def from_json(data: Mapping[str, Any]) -> Poly:
    """
    Inverse of :func:`to_json`. ``n`` may be omitted, it is then derived
    from ``nvars`` and ``kind``.
    """
    kind = VarKind(data["kind"])
    nvars = int(data["nvars"])
    n = int(data.get("n", nvars if kind is VarKind.PLAIN else nvars // 2))
    if kind.nvars(n) != nvars:
        raise VariableMismatchError(
            f"nvars={nvars} does not fit a {kind.value} space with n={n}")

    terms = {}
    for term in data.get("terms", []):
        re_part = parse_scalar(term.get("re", "0"))
        im_part = parse_scalar(term.get("im", "0"))
        terms[tuple(term["exp"])] = re_part + im_part * scalar("i")
    return Poly(n, kind, terms)


def poly_sum(polys: Iterable[Poly], n: int,
             kind: VarKind = VarKind.SYMPLECTIC) -> Poly:
    out: Dict[MultiIndex, Scalar] = defaultdict(lambda: ZERO)
    for f in polys:
        assert f.n == n and f.kind is kind, "mixed spaces in sum"
        for exp, coeff in f._terms.items():
            out[exp] += coeff
    return Poly._raw(n, kind, out)
