"""The monoid of rectangular matrices of sizes n^i-by-n^j under the
inflation product.

For a fixed base n, matrices of all shapes n^i x n^j form a monoid: to
multiply A (n^i x n^j) by B (n^k x n^l), the factor with the smaller
inner exponent is inflated block-diagonally until the inner sizes agree,
then the ordinary matrix product is taken.  The identity is the 1x1
matrix (1).

Entries live in a pluggable ring so the same machinery works over plain
polynomials, over a reduction-system quotient (entry products are
composed with the normal form), or over bare scalars.
"""

from __future__ import annotations

from .freealg import EMPTY, Poly

__all__ = [
    "FreeRing",
    "QuotientRing",
    "ScalarRing",
    "StarMatrix",
    "ceil_div",
    "entry_formula",
    "mod_index",
    "oplus",
    "star",
]

MAX_EXPONENT = 12


# ---------------------------------------------------------------------------
# entry rings
# ---------------------------------------------------------------------------

class FreeRing:
    """Free-algebra entries: polynomial arithmetic, no reduction."""

    def __init__(self, field):
        self.field = field

    def zero(self):
        return Poly.zero(self.field)

    def one(self):
        return Poly.word(self.field, EMPTY)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a.is_zero()


class QuotientRing(FreeRing):
    """Entries in the algebra presented by a reduction system: products
    are reduced to normal form."""

    def __init__(self, system):
        super().__init__(system.field)
        self.system = system

    def mul(self, a, b):
        return self.system.mul(a, b)

    def reduce(self, a):
        return self.system.normal_form(a)


class ScalarRing:
    """Bare field elements as entries."""

    def __init__(self, field):
        self.field = field

    def zero(self):
        return self.field.zero

    def one(self):
        return self.field.one

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return not a


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

class StarMatrix:
    """An n^i-by-n^j matrix over a ring, a member of the star monoid."""

    __slots__ = ("base", "iexp", "jexp", "ring", "rows")

    def __init__(self, base, iexp, jexp, rows, ring):
        if base < 1:
            raise ValueError("base must be >= 1")
        if not (0 <= iexp <= MAX_EXPONENT and 0 <= jexp <= MAX_EXPONENT):
            raise ValueError(f"exponents must lie in 0..{MAX_EXPONENT}")
        self.base = base
        self.iexp = iexp
        self.jexp = jexp
        self.ring = ring
        self.rows = tuple(tuple(row) for row in rows)
        if len(self.rows) != base**iexp or any(
            len(row) != base**jexp for row in self.rows
        ):
            raise ValueError(
                f"shape mismatch: want {base**iexp}x{base**jexp}, got "
                f"{len(self.rows)}x{len(self.rows[0]) if self.rows else 0}"
            )

    @property
    def shape(self):
        return (self.base**self.iexp, self.base**self.jexp)

    def entry(self, i, j):
        """One-based entry access."""
        return self.rows[i - 1][j - 1]

    @classmethod
    def identity(cls, base, ring):
        """The 1x1 identity of the star monoid."""
        return cls(base, 0, 0, ((ring.one(),),), ring)

    @classmethod
    def from_entries(cls, base, iexp, jexp, entry_fn, ring):
        rows = [
            [entry_fn(i, j) for j in range(1, base**jexp + 1)]
            for i in range(1, base**iexp + 1)
        ]
        return cls(base, iexp, jexp, rows, ring)

    @classmethod
    def zero(cls, base, iexp, jexp, ring):
        return cls.from_entries(base, iexp, jexp, lambda i, j: ring.zero(), ring)

    def __add__(self, other):
        self._check_base(other)
        if (self.iexp, self.jexp) != (other.iexp, other.jexp):
            raise ValueError("sum of star matrices needs equal shapes")
        ring = self.ring
        rows = [
            [ring.add(a, b) for a, b in zip(r1, r2)]
            for r1, r2 in zip(self.rows, other.rows)
        ]
        return StarMatrix(self.base, self.iexp, self.jexp, rows, ring)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        ring = self.ring
        rows = [[ring.neg(a) for a in row] for row in self.rows]
        return StarMatrix(self.base, self.iexp, self.jexp, rows, ring)

    def __eq__(self, other):
        return (
            isinstance(other, StarMatrix)
            and self.base == other.base
            and (self.iexp, self.jexp) == (other.iexp, other.jexp)
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.base, self.iexp, self.jexp, self.rows))

    def __repr__(self):
        return f"<StarMatrix {self.shape[0]}x{self.shape[1]} base {self.base}>"

    def is_zero(self):
        ring = self.ring
        return all(ring.is_zero(a) for row in self.rows for a in row)

    def _check_base(self, other):
        if not isinstance(other, StarMatrix):
            raise TypeError("expected a StarMatrix")
        if self.base != other.base:
            raise ValueError("star matrices over different bases")

    def matmul(self, other):
        """Ordinary matrix product; inner dimensions must already agree."""
        self._check_base(other)
        if self.jexp != other.iexp:
            raise ValueError("inner shapes do not match")
        ring = self.ring
        cols = list(zip(*other.rows))
        rows = []
        for r in self.rows:
            out = []
            for c in cols:
                acc = ring.zero()
                for a, b in zip(r, c):
                    if ring.is_zero(a) or ring.is_zero(b):
                        continue
                    acc = ring.add(acc, ring.mul(a, b))
                out.append(acc)
            rows.append(out)
        return StarMatrix(self.base, self.iexp, other.jexp, rows, ring)


def oplus(a, t):
    """Block diagonal sum of t copies of a (zeroes elsewhere).

    The result is t*rows x t*cols; for t = n^d this stays inside the
    star monoid, raising both exponents by d.
    """
    if t < 1:
        raise ValueError("need at least one copy")
    if t == 1:
        return a
    d = _exponent_of(t, a.base)
    ring = a.ring
    nrows, ncols = a.shape
    zero = ring.zero()
    rows = []
    for block in range(t):
        for r in a.rows:
            rows.append(
                (zero,) * (block * ncols) + tuple(r) + (zero,) * ((t - 1 - block) * ncols)
            )
    return StarMatrix(a.base, a.iexp + d, a.jexp + d, rows, ring)


def _exponent_of(t, base):
    d = 0
    while base**d < t:
        d += 1
    if base**d != t:
        raise ValueError(f"{t} is not a power of base {base}")
    return d


def star(a, b):
    """The inflation product: pad the smaller inner side block-diagonally,
    then multiply."""
    a._check_base(b)
    j, k = a.jexp, b.iexp
    if j <= k:
        return oplus(a, a.base ** (k - j)).matmul(b)
    return a.matmul(oplus(b, a.base ** (j - k)))


def star_all(factors):
    acc = None
    for f in factors:
        acc = f if acc is None else star(acc, f)
    if acc is None:
        raise ValueError("empty star product")
    return acc


# ---------------------------------------------------------------------------
# index helpers and the closed-form entry of column/row products
# ---------------------------------------------------------------------------

def mod_index(n, i):
    """One-based residue: the unique b in 1..n with i = a*n + b, a >= 0."""
    if i < 1:
        raise ValueError("index must be positive")
    return (i - 1) % n + 1


def ceil_div(i, d):
    """Smallest integer at least i/d."""
    if d < 1:
        raise ValueError("divisor must be positive")
    return -(-i // d)


def entry_formula(columns, rows, i, j, ring, base):
    """Entry (i,j) of the star product u(k) * ... * u(1) * v(1) * ... * v(k)
    built from n x 1 columns u(r) and 1 x n rows v(r).

    `columns` and `rows` list u(1)..u(k) and v(1)..v(k) as sequences of
    ring elements of length `base`; the product has shape n^k x n^k.
    """
    k = len(columns)
    if len(rows) != k or k < 1:
        raise ValueError("need equally many columns and rows, at least one")
    n = base
    if not (1 <= i <= n**k and 1 <= j <= n**k):
        raise ValueError("entry indices out of range")
    factors = []
    for r in range(k, 0, -1):
        factors.append(columns[r - 1][mod_index(n, ceil_div(i, n ** (k - r))) - 1])
    for r in range(1, k + 1):
        factors.append(rows[r - 1][mod_index(n, ceil_div(j, n ** (k - r))) - 1])
    acc = factors[0]
    for f in factors[1:]:
        acc = ring.mul(acc, f)
    return acc


def column_matrix(base, entries, ring):
    """An n x 1 star matrix from a sequence of entries."""
    return StarMatrix(base, 1, 0, [(a,) for a in entries], ring)


def row_matrix(base, entries, ring):
    """A 1 x n star matrix from a sequence of entries."""
    return StarMatrix(base, 0, 1, [tuple(entries)], ring)
