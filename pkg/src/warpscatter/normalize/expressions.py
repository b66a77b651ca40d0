"""Whitelisted coefficient expressions in t and z, compiled to vectorized numpy callables."""

import re
from tokenize import TokenError
from typing import Callable, NamedTuple, Sequence

import numpy as np
import sympy as sp
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from warpscatter.core.errors import SpecError

from .constants import (
    ALLOWED_FUNCTIONS,
    ERROR_EXPRESSION,
    ERROR_EXPRESSION_CHARS,
    ERROR_EXPRESSION_FUNCTION,
    ERROR_EXPRESSION_SYMBOLS,
)

_CHARS = re.compile(r"^[0-9A-Za-z_+\-*/^().\s]*$")
_ATTRIBUTE = re.compile(r"[A-Za-z_)]\s*\.")
_TRANSFORMS = standard_transformations + (convert_xor,)


class Coefficient(NamedTuple):
    """A compiled coefficient: value(t, z...) and its partial derivatives in (t, z1, ..., zd)."""

    value: Callable[..., np.ndarray]
    gradient: tuple[Callable[..., np.ndarray], ...]


def variables(dim: int) -> tuple[sp.Symbol, ...]:
    """(t, z) for a one-dimensional cross-section chart, (t, z1, ..., zd) otherwise."""
    t = sp.Symbol("t", real=True)
    if dim == 1:
        return (t, sp.Symbol("z", real=True))
    return (t, *sp.symbols(f"z1:{dim + 1}", real=True))


def parse_coefficient(text: str, allowed: Sequence[sp.Symbol]) -> sp.Expr:
    """
    Parse one coefficient expression.

    The grammar is numbers, the allowed variables, + - * / and ^ or **,
    parentheses, pi and the functions in ALLOWED_FUNCTIONS.

    Raises:
        SpecError: Unknown characters, names or functions, or a syntax error.
    """
    text = str(text)
    if not _CHARS.match(text) or "__" in text or _ATTRIBUTE.search(text):
        raise SpecError(ERROR_EXPRESSION_CHARS.format(expr=text))
    local_dict = {s.name: s for s in allowed}
    global_dict = {
        "Integer": sp.Integer,
        "Float": sp.Float,
        "Rational": sp.Rational,
        "Symbol": sp.Symbol,
        "Function": sp.Function,
        "pi": sp.pi,
    }
    global_dict.update({name: getattr(sp, name) for name in ALLOWED_FUNCTIONS})
    try:
        expr = parse_expr(text, local_dict=local_dict, global_dict=global_dict, transformations=_TRANSFORMS)
    except (SyntaxError, TokenError, TypeError, ValueError, AttributeError, sp.SympifyError) as e:
        raise SpecError(ERROR_EXPRESSION.format(expr=text, error=e)) from e
    if not isinstance(expr, sp.Expr):
        raise SpecError(ERROR_EXPRESSION.format(expr=text, error="not a scalar expression"))

    for call in expr.atoms(sp.Function):
        name = type(call).__name__
        if name not in ALLOWED_FUNCTIONS:
            raise SpecError(ERROR_EXPRESSION_FUNCTION.format(expr=text, name=name))
    unknown = sorted(s.name for s in expr.free_symbols if s not in set(allowed))
    if unknown:
        raise SpecError(
            ERROR_EXPRESSION_SYMBOLS.format(
                expr=text, names=", ".join(unknown), allowed=", ".join(s.name for s in allowed)
            )
        )
    return expr


def _vectorized(expr: sp.Expr, symbols: Sequence[sp.Symbol]) -> Callable[..., np.ndarray]:
    f = sp.lambdify(symbols, expr, modules="numpy")

    def evaluate(*args):
        shape = np.broadcast_shapes(*(np.shape(a) for a in args))
        return np.broadcast_to(np.asarray(f(*args), dtype=float), shape)

    return evaluate


def compile_coefficient(expr: sp.Expr, symbols: Sequence[sp.Symbol]) -> Coefficient:
    """Lambdify an expression and its exact first derivatives in every variable."""
    return Coefficient(
        value=_vectorized(expr, symbols),
        gradient=tuple(_vectorized(sp.diff(expr, s), symbols) for s in symbols),
    )
