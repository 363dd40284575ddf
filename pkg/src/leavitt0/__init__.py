"""Exact symbolic toolkit for the degree-zero part of Leavitt algebras."""

from .freealg import (
    EMPTY,
    RATIONALS,
    Letter,
    Poly,
    PrimeField,
    Rationals,
    e,
    eps,
    format_poly,
    format_word,
    parse_poly,
    parse_word,
    sig,
    sigh,
    x,
    y,
)
from .leavitt import LeavittAlgebra, LeavittSpec

__version__ = "0.1.0"
