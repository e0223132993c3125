"""
weylstar Weyl Oracle - The Weyl algebra modelled directly by its relations
``p_i q_j - q_j p_i = delta_ij``, in the normal-ordered basis ``q^I p^J``.

This model shares no code with :mod:`weylstar.moyal`; the symmetrization
map carries the Moyal product over to it, which makes it a ground truth
for the Moyal kernel.
"""

import random
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import (Any, Dict, List, Mapping, Optional, Sequence,
                    Tuple)

from weylstar.errors import VariableMismatchError
from weylstar.poly import Poly, VarKind
from weylstar.util import (MultiIndex, Scalar, ScalarLike, ONE, ZERO,
                           format_rational, format_scalar, parse_scalar,
                           scalar, sub_indices)

_Key = Tuple[MultiIndex, MultiIndex]

Letter = Tuple[str, int]
"""
A generator, ``("p", i)`` or ``("q", i)`` with a one-based index.
"""


class NormalForm:
    """
    An element ``sum c_IJ q^I p^J`` of the Weyl algebra, all ``q`` to the
    left of all ``p``.
    """

    __slots__ = ("_n", "_terms")

    def __init__(self, n: int,
                 terms: Optional[Mapping[_Key, ScalarLike]] = None) -> None:
        assert n >= 1, "n must be positive"
        self._n = n
        clean: Dict[_Key, Scalar] = {}
        for (q_exp, p_exp), coeff in (terms or {}).items():
            assert len(q_exp) == n and len(p_exp) == n, \
                "exponents must have n entries"
            value = scalar(coeff)
            if value:
                clean[(tuple(q_exp), tuple(p_exp))] = value
        self._terms = clean

    @classmethod
    def _raw(cls, n: int, terms: Mapping[_Key, Scalar]) -> 'NormalForm':
        obj = cls.__new__(cls)
        obj._n = n
        obj._terms = {k: c for k, c in terms.items() if c}
        return obj

    @classmethod
    def one(cls, n: int) -> 'NormalForm':
        zero = (0,) * n
        return cls._raw(n, {(zero, zero): ONE})

    @classmethod
    def generator(cls, letter: Letter, n: int) -> 'NormalForm':
        name, i = letter
        exp = tuple(1 if k == i - 1 else 0 for k in range(n))
        zero = (0,) * n
        if name == "q":
            return cls._raw(n, {(exp, zero): ONE})
        return cls._raw(n, {(zero, exp): ONE})

    @classmethod
    def qp(cls, q_exp: Sequence[int], p_exp: Sequence[int],
           coeff: ScalarLike = 1) -> 'NormalForm':
        return cls(len(q_exp), {(tuple(q_exp), tuple(p_exp)): coeff})

    @property
    def n(self) -> int:
        return self._n

    @property
    def terms(self) -> Dict[_Key, Scalar]:
        return dict(self._terms)

    def items(self) -> List[Tuple[_Key, Scalar]]:
        return sorted(self._terms.items(),
                      key=lambda t: (sum(t[0][0]) + sum(t[0][1]),
                                     t[0][1], t[0][0]),
                      reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((sum(q) + sum(p) for q, p in self._terms), default=-1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NormalForm):
            return NotImplemented
        return self._n == other._n and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._n, frozenset(self._terms.items())))

    def __add__(self, other: 'NormalForm') -> 'NormalForm':
        _check(self, other)
        out = dict(self._terms)
        for key, coeff in other._terms.items():
            out[key] = out.get(key, ZERO) + coeff
        return NormalForm._raw(self._n, out)

    def __neg__(self) -> 'NormalForm':
        return NormalForm._raw(self._n,
                               {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: 'NormalForm') -> 'NormalForm':
        return self + (-other)

    def __mul__(self, other: Any) -> 'NormalForm':
        if isinstance(other, NormalForm):
            return oracle_multiply(self, other)
        value = scalar(other)
        return NormalForm._raw(self._n,
                               {k: c * value for k, c in self._terms.items()})

    def __rmul__(self, other: Any) -> 'NormalForm':
        value = scalar(other)
        return NormalForm._raw(self._n,
                               {k: value * c for k, c in self._terms.items()})

    def __repr__(self) -> str:
        return f"NormalForm(n={self._n}, {format_normal_form(self)!r})"

    def __str__(self) -> str:
        return format_normal_form(self)


def _check(a: NormalForm, b: NormalForm) -> None:
    if a.n != b.n:
        raise VariableMismatchError(
            f"Weyl algebra elements with n={a.n} and n={b.n} cannot be " +
            "combined")


@dataclass(frozen=True)
class Word:
    """
    An element of the free monoid on ``p1..pn, q1..qn``.
    """
    letters: Tuple[Letter, ...] = ()

    @classmethod
    def parse(cls, text: str) -> 'Word':
        """
        Parse a space separated word such as ``"p1 p1 q1"``.
        """
        letters = []
        for token in text.split():
            assert token[0] in "pq" and token[1:].isdigit(), \
                f"not a generator: {token!r}"
            letters.append((token[0], int(token[1:])))
        return cls(tuple(letters))

    def n(self) -> int:
        return max((i for _, i in self.letters), default=1)

    def __add__(self, other: 'Word') -> 'Word':
        return Word(self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return " ".join(f"{name}{i}" for name, i in self.letters)


# Multiplication on the normal-ordered basis

def _commute(p_exp: MultiIndex, q_exp: MultiIndex
             ) -> List[Tuple[MultiIndex, MultiIndex, int]]:
    # p^J q^K = sum_M prod_i C(j_i, m_i) C(k_i, m_i) m_i! q^(K-M) p^(J-M)
    bound = tuple(min(j, k) for j, k in zip(p_exp, q_exp))
    out = []
    for m in sub_indices(bound):
        weight = 1
        for j, k, mi in zip(p_exp, q_exp, m):
            weight *= comb(j, mi) * comb(k, mi) * factorial(mi)
        out.append((tuple(k - mi for k, mi in zip(q_exp, m)),
                    tuple(j - mi for j, mi in zip(p_exp, m)),
                    weight))
    return out


def oracle_multiply(a: NormalForm, b: NormalForm) -> NormalForm:
    """
    The product in the Weyl algebra, computed by moving each ``p^J`` of
    the left factor past each ``q^K`` of the right factor.
    """
    _check(a, b)
    out: Dict[_Key, Scalar] = defaultdict(lambda: ZERO)
    for (qi, pj), c1 in a._terms.items():
        for (qk, pl), c2 in b._terms.items():
            coeff = c1 * c2
            for q_rest, p_rest, weight in _commute(pj, qk):
                key = (tuple(x + y for x, y in zip(qi, q_rest)),
                       tuple(x + y for x, y in zip(p_rest, pl)))
                out[key] += coeff * weight
    return NormalForm._raw(a.n, out)


def lie_bracket(a: NormalForm, b: NormalForm) -> NormalForm:
    return oracle_multiply(a, b) - oracle_multiply(b, a)


# Word rewriting

def _collect(word: Tuple[Letter, ...], n: int) -> _Key:
    q_exp = [0] * n
    p_exp = [0] * n
    for name, i in word:
        if name == "q":
            q_exp[i - 1] += 1
        else:
            p_exp[i - 1] += 1
    return tuple(q_exp), tuple(p_exp)


def _redexes(word: Tuple[Letter, ...]) -> List[int]:
    return [k for k in range(len(word) - 1)
            if word[k][0] == "p" and word[k + 1][0] == "q"]


def normal_order_word(word: Word, n: Optional[int] = None,
                      strategy: str = "leftmost",
                      seed: Optional[int] = None) -> NormalForm:
    """
    Normal-order a word by rewriting ``p_i q_j -> q_j p_i + delta_ij``
    until no ``p`` stands left of a ``q``.

    :param strategy: which redex to rewrite first: ``"leftmost"``,
        ``"rightmost"`` or ``"random"`` (seeded with ``seed``).
    """
    assert strategy in ("leftmost", "rightmost", "random"), \
        f"unknown strategy {strategy!r}"
    n = n or word.n()
    rng = random.Random(seed)
    pending: Dict[Tuple[Letter, ...], int] = {word.letters: 1}
    done: Dict[_Key, int] = defaultdict(int)

    while pending:
        current, coeff = pending.popitem()
        spots = _redexes(current)
        if not spots:
            done[_collect(current, n)] += coeff
            continue

        if strategy == "leftmost":
            k = spots[0]
        elif strategy == "rightmost":
            k = spots[-1]
        else:
            k = rng.choice(spots)

        left, right = current[:k], current[k + 2:]
        p_letter, q_letter = current[k], current[k + 1]
        swapped = left + (q_letter, p_letter) + right
        pending[swapped] = pending.get(swapped, 0) + coeff
        if p_letter[1] == q_letter[1]:
            shorter = left + right
            pending[shorter] = pending.get(shorter, 0) + coeff
        for key in (swapped, left + right):
            if pending.get(key) == 0:
                del pending[key]

    return NormalForm(n, {k: c for k, c in done.items() if c})


def normal_order(word: Word, n: Optional[int] = None) -> NormalForm:
    """
    The normal form of a word, computed as the product of its letters.
    """
    n = n or word.n()
    result = NormalForm.one(n)
    for letter in word.letters:
        result = oracle_multiply(result, NormalForm.generator(letter, n))
    return result


# Symmetrization

@lru_cache(maxsize=None)
def _arrangement_sum(a: int, b: int) -> Tuple[Tuple[_Key, Scalar], ...]:
    # sum of all words with a letters p and b letters q, one coordinate
    if a == 0 and b == 0:
        return ((((0,), (0,)), ONE),)

    total = NormalForm(1)
    if a:
        rest = NormalForm._raw(1, dict(_arrangement_sum(a - 1, b)))
        total = total + oracle_multiply(NormalForm.qp((0,), (1,)), rest)
    if b:
        rest = NormalForm._raw(1, dict(_arrangement_sum(a, b - 1)))
        total = total + oracle_multiply(NormalForm.qp((1,), (0,)), rest)
    return tuple(total.terms.items())


def _symmetrize_single(a: int, b: int) -> NormalForm:
    words = comb(a + b, a)
    return NormalForm._raw(1, dict(_arrangement_sum(a, b))) * (ONE / words)


def _lift(form: NormalForm, coord: int, n: int) -> NormalForm:
    out = {}
    for (q_exp, p_exp), c in form._terms.items():
        q_full = [0] * n
        p_full = [0] * n
        q_full[coord] = q_exp[0]
        p_full[coord] = p_exp[0]
        out[(tuple(q_full), tuple(p_full))] = c
    return NormalForm._raw(n, out)


@lru_cache(maxsize=4096)
def symmetrize_monomial(exp: MultiIndex) -> NormalForm:
    """
    ``rho`` of one symplectic monomial, given by its exponent tuple.

    Generators in distinct coordinates commute, so ``rho`` factors over
    coordinates; each factor averages the ``C(a+b, a)`` distinct
    arrangements of ``p^a q^b``.
    """
    n = len(exp) // 2
    result = NormalForm.one(n)
    for coord in range(n):
        a, b = exp[coord], exp[n + coord]
        if a or b:
            result = oracle_multiply(
                result, _lift(_symmetrize_single(a, b), coord, n))
    return result


def symmetrize(f: Poly) -> NormalForm:
    """
    The symmetrization map ``rho(phi_1...phi_k) = 1/k! sum_sigma
    phi_sigma(1)...phi_sigma(k)``.
    """
    if f.kind is not VarKind.SYMPLECTIC:
        raise VariableMismatchError("only symplectic polynomials symmetrize")
    result = NormalForm(f.n)
    for exp, coeff in f.terms.items():
        result = result + symmetrize_monomial(exp) * coeff
    return result


def unsymmetrize(a: NormalForm) -> Poly:
    """
    The inverse of :func:`symmetrize`, by descending degree: the top
    component of ``rho(q^I p^J)`` is ``q^I p^J`` itself.
    """
    n = a.n
    remaining = a
    result: Dict[MultiIndex, Scalar] = {}
    while not remaining.is_zero():
        top = remaining.degree()
        correction = NormalForm(n)
        for (q_exp, p_exp), coeff in remaining._terms.items():
            if sum(q_exp) + sum(p_exp) != top:
                continue
            exp = p_exp + q_exp
            result[exp] = result.get(exp, ZERO) + coeff
            correction = correction + symmetrize_monomial(exp) * coeff
        remaining = remaining - correction
    return Poly(n, VarKind.SYMPLECTIC, result)


def star_via_symmetrization(f: Poly, g: Poly) -> Poly:
    """
    ``rho^-1(rho(F) rho(G))``.
    """
    f.check_space(g)
    return unsymmetrize(oracle_multiply(symmetrize(f), symmetrize(g)))


# Text and JSON

def format_normal_form(a: NormalForm) -> str:
    if a.is_zero():
        return "0"
    chunks = []
    for (q_exp, p_exp), coeff in a.items():
        factors = []
        for name, exps in (("q", q_exp), ("p", p_exp)):
            for i, e in enumerate(exps, 1):
                if e == 1:
                    factors.append(f"{name}{i}")
                elif e > 1:
                    factors.append(f"{name}{i}^{e}")
        mono = "*".join(factors)
        text = format_scalar(coeff)
        if "+" in text[1:] or "-" in text[1:]:
            text = f"({text})"
        if mono and coeff == ONE:
            text = mono
        elif mono and coeff == -ONE:
            text = f"-{mono}"
        elif mono:
            text = f"{text}*{mono}"
        chunks.append(text)
    return " + ".join(chunks).replace("+ -", "- ")


def normal_form_to_json(a: NormalForm) -> Dict[str, Any]:
    return {
        "n": a.n,
        "terms": [{"q": list(q_exp), "p": list(p_exp),
                   "re": format_rational(c.x), "im": format_rational(c.y)}
                  for (q_exp, p_exp), c in a.items()]
    }


def normal_form_from_json(data: Mapping[str, Any]) -> NormalForm:
    terms = {}
    for term in data.get("terms", []):
        value = parse_scalar(term.get("re", "0")) + \
            parse_scalar(term.get("im", "0")) * scalar("i")
        terms[(tuple(term["q"]), tuple(term["p"]))] = value
    return NormalForm(int(data["n"]), terms)

