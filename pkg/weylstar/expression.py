"""
weylstar expressions - Reading polynomials from text.

The grammar is ordinary arithmetic on the variables of one space (``p1..pn,
q1..qn`` or ``x1..xn``) with ``+ - * / ^``, parentheses, integer and ``a/b``
literals and the imaginary unit ``i``. ``*`` is always the commutative
product; the Moyal product has its own command.
"""

import re
from tokenize import TokenError
from typing import Dict

from sympy import I, Integer, Symbol
from sympy import Poly as SympyPoly
from sympy.parsing.sympy_parser import (convert_xor, parse_expr,
                                        standard_transformations)
from sympy.polys.domains import QQ_I
from sympy.polys.polyerrors import (CoercionFailed, GeneratorsNeeded,
                                    PolynomialError)

from weylstar.errors import ExpressionError
from weylstar.poly import Poly, VarKind

_IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_DECIMAL = re.compile(r"\d*\.\d*")
_ALLOWED = re.compile(r"[A-Za-z_0-9\s+\-*/^()]*")
_TRANSFORMATIONS = standard_transformations + (convert_xor,)


def _scan(text: str, names: Dict[str, Symbol]) -> None:
    """
    Reject what the arithmetic parser must never see: unknown names,
    decimals and stray characters.
    """
    for match in _DECIMAL.finditer(text):
        if match.group() not in ("", "."):
            raise ExpressionError(text, match.start(),
                                  "decimal literals are not exact")
    for index, char in enumerate(text):
        if not _ALLOWED.fullmatch(char):
            raise ExpressionError(text, index, f"unexpected {char!r}")
    for match in _IDENTIFIER.finditer(text):
        word = match.group()
        if word != "i" and word not in names:
            raise ExpressionError(text, match.start(),
                                  f"unknown variable {word!r}")


def parse_expression(text: str, n: int,
                     kind: VarKind = VarKind.SYMPLECTIC) -> Poly:
    """
    Parse ``text`` into a polynomial of the given space.

    :raises ExpressionError: on a syntax error, an unknown variable or a
        non-polynomial expression.
    """
    if kind is VarKind.TENSOR:
        raise ExpressionError(text, None,
                              "doubled-space polynomials cannot be parsed")
    if not text.strip():
        raise ExpressionError(text, 0, "empty expression")

    names = {name: Symbol(name) for name in kind.names(n)}
    _scan(text, names)
    local: Dict[str, object] = dict(names)
    local["i"] = I

    try:
        expr = parse_expr(text, local_dict=local,
                          global_dict={"Integer": Integer,
                                       "Symbol": Symbol},
                          transformations=_TRANSFORMATIONS)
    except (SyntaxError, TokenError) as error:
        offset = getattr(error, "offset", None)
        position = offset - 1 if isinstance(offset, int) and offset else None
        raise ExpressionError(text, position, "syntax error") from error
    except (TypeError, ZeroDivisionError) as error:
        raise ExpressionError(text, None, str(error)) from error

    gens = [names[name] for name in kind.names(n)]
    try:
        poly = SympyPoly(expr, *gens, domain=QQ_I)
    except (PolynomialError, CoercionFailed, GeneratorsNeeded) as error:
        raise ExpressionError(text, None, "not a polynomial") from error

    return Poly(n, kind, poly.as_dict(native=True))
