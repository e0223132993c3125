"""
weylstar Utilities - Exact scalar helpers and multi-index arithmetic
"""

import re
from fractions import Fraction
from math import factorial, prod
from typing import Any, Iterator, Sequence, Tuple, Union

from sympy import Expr, Rational
from sympy.polys.domains import QQ, QQ_I

Scalar = Any
"""
An element of the Gaussian rational field :data:`sympy.polys.domains.QQ_I`.
"""

ScalarLike = Union[int, Fraction, str, Rational, Expr, Scalar]

MultiIndex = Tuple[int, ...]

ZERO = QQ_I.zero
ONE = QQ_I.one
I_UNIT = QQ_I(QQ(0), QQ(1))

_RATIONAL = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    r"^\s*(?:(?P<re>%s)\s*)?(?:(?P<sign>[+-])?\s*(?:(?P<im>\d+(?:/\d+)?)"
    r"\s*\*\s*)?(?P<unit>i))?\s*$" % _RATIONAL)


def rational(value: Union[int, Fraction, str]) -> Any:
    """
    An element of :data:`QQ` from an `int`, a :class:`~fractions.Fraction`
    or a string ``"a/b"``.
    """
    frac = Fraction(value)
    return QQ(frac.numerator, frac.denominator)


def scalar(value: ScalarLike) -> Scalar:
    """
    Coerce ``value`` into the coefficient field.

    Accepts integers, fractions, the strings understood by
    :func:`parse_scalar`, sympy numbers (``sympy.I`` included) and field
    elements, which are returned unchanged.
    """
    if isinstance(value, str):
        return parse_scalar(value)
    if isinstance(value, (int, Fraction)):
        return QQ_I(rational(value), QQ(0))
    if isinstance(value, Expr):
        return QQ_I.from_sympy(value)
    if QQ_I.of_type(value):
        return value
    if QQ.of_type(value):
        return QQ_I(value, QQ(0))

    return QQ_I.convert(value)


def parse_scalar(text: str) -> Scalar:
    """
    Parse a scalar written as ``"a/b"``, ``"c/d*i"`` or ``"a/b+c/d*i"``.

    :raises ValueError: if ``text`` is not of one of these shapes.
    """
    match = _SCALAR_RE.match(text)
    if match is None or (match.group("re") is None and
                         match.group("unit") is None):
        raise ValueError(f"not an exact scalar: {text!r}")

    re_part = rational(match.group("re") or 0)
    im_part = QQ(0)
    if match.group("unit") is not None:
        im_part = rational(match.group("im") or 1)
        if match.group("sign") == "-":
            im_part = -im_part
        elif match.group("sign") is None and match.group("re") is not None:
            raise ValueError(f"not an exact scalar: {text!r}")

    return QQ_I(re_part, im_part)


def format_rational(value: Any) -> str:
    """
    Render a rational as ``"a"`` or ``"a/b"``.
    """
    num, den = int(value.numerator), int(value.denominator)
    if den == 1:
        return str(num)
    return f"{num}/{den}"


def format_scalar(value: Scalar) -> str:
    """
    Render a scalar as ``"a/b"``, ``"c/d*i"`` or ``"a/b+c/d*i"``.
    """
    re_part, im_part = value.x, value.y
    if not im_part:
        return format_rational(re_part)

    if im_part == 1:
        im_text = "i"
    elif im_part == -1:
        im_text = "-i"
    else:
        im_text = format_rational(im_part) + "*i"

    if not re_part:
        return im_text

    sign = "" if im_text.startswith("-") else "+"
    return format_rational(re_part) + sign + im_text


def is_real(value: Scalar) -> bool:
    return not value.y


def norm2(value: Scalar) -> Any:
    """
    The exact squared modulus ``a^2 + b^2`` as an element of :data:`QQ`.
    """
    return value.x * value.x + value.y * value.y


def to_complex(value: Scalar) -> complex:
    """
    Convert a field element to a binary64 complex number.
    """
    return complex(int(value.x.numerator) / int(value.x.denominator),
                   int(value.y.numerator) / int(value.y.denominator))


def magnitude(value: Scalar) -> float:
    return abs(to_complex(value))


def index_degree(index: Sequence[int]) -> int:
    """
    The total degree ``|I|`` of a multi-index.
    """
    return sum(index)


def index_factorial(index: Sequence[int]) -> int:
    """
    The multi-index factorial ``I! = i_1! i_2! ... i_n!``.
    """
    return prod(factorial(i) for i in index)


def add_index(a: Sequence[int], b: Sequence[int]) -> MultiIndex:
    return tuple(x + y for x, y in zip(a, b))


def sub_index(a: Sequence[int], b: Sequence[int]) -> MultiIndex:
    return tuple(x - y for x, y in zip(a, b))


def index_le(a: Sequence[int], b: Sequence[int]) -> bool:
    """
    Componentwise order ``a <= b``.
    """
    return all(x <= y for x, y in zip(a, b))


def compositions(total: int, parts: int) -> Iterator[MultiIndex]:
    """
    Every multi-index with ``parts`` entries summing to ``total``, in
    descending lexicographic order.
    """
    if parts == 0:
        if total == 0:
            yield ()
        return

    if parts == 1:
        yield (total,)
        return

    for head in range(total, -1, -1):
        for tail in compositions(total - head, parts - 1):
            yield (head,) + tail


def indices_up_to(degree: int, parts: int) -> Iterator[MultiIndex]:
    """
    Every multi-index with ``parts`` entries and ``|I| <= degree``, by
    ascending total degree.
    """
    for total in range(degree + 1):
        yield from compositions(total, parts)


def sub_indices(bound: Sequence[int]) -> Iterator[MultiIndex]:
    """
    Every multi-index ``R`` with ``R <= bound`` componentwise.
    """
    if len(bound) == 0:
        yield ()
        return

    for head in range(bound[0] + 1):
        for tail in sub_indices(bound[1:]):
            yield (head,) + tail
