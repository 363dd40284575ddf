"""Exact scalars, generator letters, words and free-algebra polynomials.

Everything downstream (reduction systems, the Leavitt algebra, the
presented algebras) computes over the data defined here:

* a scalar field, either arbitrary-precision rationals or a prime field,
* letters ``x(i,j)``, ``y(j,i)``, ``e(p,k,l,i,j)`` and the Bergman-
  presentation letters ``eps/sig/sigh(p,q,i,j)``,
* words = tuples of letters, ordered length-first then lexicographically,
* polynomials = finite maps word -> scalar with no stored zeros.

All values are immutable; no floating point is used anywhere.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import NamedTuple

__all__ = [
    "RATIONALS",
    "Letter",
    "Poly",
    "PrimeField",
    "Rationals",
    "EMPTY",
    "concat",
    "e",
    "eps",
    "find_subword",
    "format_poly",
    "format_word",
    "is_prefix",
    "is_subword",
    "is_suffix",
    "parse_poly",
    "parse_word",
    "sig",
    "sigh",
    "word_key",
    "x",
    "y",
]


# ---------------------------------------------------------------------------
# scalar backends
# ---------------------------------------------------------------------------

class Rationals:
    """Field of exact rationals; elements are `fractions.Fraction` values."""

    name = "rat"

    zero = Fraction(0)
    one = Fraction(1)

    def of(self, value):
        if isinstance(value, ModElement):
            raise TypeError("cannot coerce a prime-field element to a rational")
        return Fraction(value)

    def parse(self, text):
        return Fraction(text.strip())

    def format(self, value):
        return str(value)

    def __repr__(self):
        return "Rationals()"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Rationals")


RATIONALS = Rationals()


class ModElement(NamedTuple):
    """Least non-negative residue mod a prime; supports ring arithmetic."""

    value: int
    q: int

    def __add__(self, other):
        other = self._coerce(other)
        return ModElement((self.value + other.value) % self.q, self.q)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return ModElement((self.value - other.value) % self.q, self.q)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return ModElement((self.value * other.value) % self.q, self.q)

    __rmul__ = __mul__

    def __neg__(self):
        return ModElement(-self.value % self.q, self.q)

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other % self.q
        if isinstance(other, ModElement):
            return self.q == other.q and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.q))

    def _coerce(self, other):
        if isinstance(other, ModElement):
            if other.q != self.q:
                raise ValueError("mixed prime fields")
            return other
        if isinstance(other, int):
            return ModElement(other % self.q, self.q)
        return NotImplemented

    def __str__(self):
        return str(self.value)


class PrimeField:
    """Prime field Z/q; a faster exact backend than rationals."""

    def __init__(self, q):
        if q < 2 or any(q % d == 0 for d in range(2, int(q ** 0.5) + 1)):
            raise ValueError(f"modulus {q} is not prime")
        self.q = q
        self.name = f"mod:{q}"
        self.zero = ModElement(0, q)
        self.one = ModElement(1, q)

    def of(self, value):
        if isinstance(value, ModElement):
            if value.q != self.q:
                raise ValueError("mixed prime fields")
            return value
        if isinstance(value, Fraction):
            den = pow(value.denominator % self.q, self.q - 2, self.q)
            return ModElement(value.numerator * den % self.q, self.q)
        return ModElement(int(value) % self.q, self.q)

    def parse(self, text):
        return self.of(Fraction(text.strip()))

    def format(self, value):
        return str(self.of(value).value)

    def __repr__(self):
        return f"PrimeField({self.q})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.q == self.q

    def __hash__(self):
        return hash(("PrimeField", self.q))


def field_from_name(name):
    """Resolve a backend name, `rat` or `mod:q`, to a field object."""
    if name == "rat":
        return RATIONALS
    if name.startswith("mod:"):
        return PrimeField(int(name[4:]))
    raise ValueError(f"unknown scalar backend {name!r}")


# ---------------------------------------------------------------------------
# letters and words
# ---------------------------------------------------------------------------

_FAMILIES = ("x", "y", "e", "eps", "sig", "sigh")
_ARITY = {"x": 2, "y": 2, "e": 5, "eps": 4, "sig": 4, "sigh": 4}


class Letter(NamedTuple):
    """A generator letter: family rank plus integer index payload.

    Tuple comparison gives the fixed total order on letters (family
    first, then indices lexicographically).
    """

    rank: int
    idx: tuple

    @property
    def family(self):
        return _FAMILIES[self.rank]

    def __str__(self):
        return f"{self.family}({','.join(map(str, self.idx))})"


def _letter(family, idx):
    if len(idx) != _ARITY[family]:
        raise ValueError(f"{family}-letter takes {_ARITY[family]} indices, got {len(idx)}")
    if any(not isinstance(i, int) or i < 1 for i in idx):
        raise ValueError(f"letter indices must be positive integers, got {idx}")
    return Letter(_FAMILIES.index(family), tuple(idx))


def x(i, j):
    """The letter x_{ij} (row i of X, column j)."""
    return _letter("x", (i, j))


def y(j, i):
    """The letter y_{ji} (row j of Y, column i)."""
    return _letter("y", (j, i))


def e(p, k, l, i, j):
    """The letter e^{p,k,l}_{ij}, an entry of an m^p-by-m^p symbol matrix."""
    return _letter("e", (p, k, l, i, j))


def eps(p, q, i, j):
    """Entry (i,j) of the idempotent symbol matrix eps^{p,q}."""
    return _letter("eps", (p, q, i, j))


def sig(p, q, i, j):
    """Entry (i,j) of the shift symbol matrix sig^{p,q}."""
    return _letter("sig", (p, q, i, j))


def sigh(p, q, i, j):
    """Entry (i,j) of the reverse-shift symbol matrix sigh^{p,q}."""
    return _letter("sigh", (p, q, i, j))


#: The empty word, identity of the free monoid.
EMPTY = ()


def concat(u, v):
    """Concatenation in the free monoid."""
    return u + v


def is_prefix(u, w):
    return w[: len(u)] == u


def is_suffix(u, w):
    return len(u) <= len(w) and w[len(w) - len(u):] == u


def find_subword(w, u, start=0):
    """Index of the leftmost occurrence of u inside w, or -1."""
    if not u:
        return start if start <= len(w) else -1
    for i in range(start, len(w) - len(u) + 1):
        if w[i : i + len(u)] == u:
            return i
    return -1


def is_subword(u, w):
    return find_subword(w, u) >= 0


def word_key(w):
    """Sort key for the fixed word order: length first, then letter-lex."""
    return (len(w), w)


def format_word(w):
    if not w:
        return "1"
    return " ".join(str(letter) for letter in w)


_LETTER_RE = re.compile(r"([a-z]+)\(([0-9,\s]+)\)")


def parse_letter(text):
    m = _LETTER_RE.fullmatch(text.strip())
    if not m:
        raise ValueError(f"cannot parse letter {text!r}")
    family, payload = m.group(1), m.group(2)
    if family not in _FAMILIES:
        raise ValueError(f"unknown letter family {family!r}")
    return _letter(family, tuple(int(s) for s in payload.split(",")))


def parse_word(text):
    """Parse the space-separated text form of a word; `1` is the empty word."""
    text = text.strip()
    if text == "1" or not text:
        return EMPTY
    return tuple(parse_letter(tok) for tok in text.split())


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

class Poly:
    """Finite scalar combination of words; the free-algebra element type.

    `terms` maps words to nonzero field elements.  Iteration helpers walk
    the terms in the fixed word order, so printing is canonical.
    """

    __slots__ = ("field", "terms")

    def __init__(self, field, terms=None):
        self.field = field
        self.terms = dict(terms) if terms else {}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, field):
        return cls(field)

    @classmethod
    def word(cls, field, w, coeff=1):
        c = field.of(coeff)
        return cls(field, {tuple(w): c} if c else None)

    @classmethod
    def scalar(cls, field, value):
        return cls.word(field, EMPTY, value)

    @classmethod
    def from_terms(cls, field, pairs):
        terms = {}
        for w, c in pairs:
            c = field.of(c)
            acc = terms.get(w)
            total = c if acc is None else acc + c
            if total:
                terms[w] = total
            elif acc is not None:
                del terms[w]
        return cls(field, terms)

    # -- queries -----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def coeff(self, w):
        return self.terms.get(tuple(w), self.field.zero)

    def support(self):
        """Words with nonzero coefficient, in the fixed word order."""
        return sorted(self.terms, key=word_key)

    def sorted_items(self):
        return [(w, self.terms[w]) for w in self.support()]

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other):
        if self.field != other.field:
            raise ValueError("polynomials over different scalar fields")

    def __add__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            acc = terms.get(w)
            total = c if acc is None else acc + c
            if total:
                terms[w] = total
            elif acc is not None:
                del terms[w]
        return Poly(self.field, terms)

    def __neg__(self):
        return Poly(self.field, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            self._check(other)
            terms = {}
            for u, cu in self.terms.items():
                for v, cv in other.terms.items():
                    w = u + v
                    c = cu * cv
                    acc = terms.get(w)
                    total = c if acc is None else acc + c
                    if total:
                        terms[w] = total
                    elif acc is not None:
                        del terms[w]
            return Poly(self.field, terms)
        return self.scale(other)

    def __rmul__(self, other):
        # scalars commute with everything, so left and right agree
        return self.scale(other)

    def scale(self, value):
        c = self.field.of(value)
        if not c:
            return Poly(self.field)
        return Poly(self.field, {w: c * cw for w, cw in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.field, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


def format_poly(p):
    """Canonical text form: terms ascending, `c*word`, bare scalar for ``1``."""
    if p.is_zero():
        return "0"
    field = p.field
    parts = []
    for idx, (w, c) in enumerate(p.sorted_items()):
        text = field.format(c)
        negative = text.startswith("-")
        mag = text[1:] if negative else text
        body = mag if not w else f"{mag}*{format_word(w)}"
        if idx == 0:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(parts)


def parse_poly(field, text):
    """Parse the `c1*w1 + c2*w2` text form back into a polynomial."""
    text = text.strip()
    if text == "0" or not text:
        return Poly.zero(field)
    # split into signed chunks; +/- never occur inside letter parentheses
    chunks = re.split(r"\s*([+-])\s*", text)
    if chunks[0] == "":
        chunks = chunks[1:]
    if chunks and chunks[0] in "+-":
        signs = [chunks[0]]
        bodies = chunks[1::2]
        signs += chunks[2::2]
    else:
        signs = ["+"] + chunks[1::2]
        bodies = chunks[0::2]
    if len(signs) != len(bodies):
        raise ValueError(f"cannot parse polynomial {text!r}")
    pairs = []
    for sign, body in zip(signs, bodies):
        body = body.strip()
        if not body:
            raise ValueError(f"cannot parse polynomial {text!r}")
        if "*" in body:
            coeff_text, word_text = body.split("*", 1)
            coeff = field.parse(coeff_text)
            w = parse_word(word_text)
        elif body[0].isdigit():
            coeff = field.parse(body)
            w = EMPTY
        else:
            coeff = field.one
            w = parse_word(body)
        if sign == "-":
            coeff = -coeff
        pairs.append((w, coeff))
    return Poly.from_terms(field, pairs)
