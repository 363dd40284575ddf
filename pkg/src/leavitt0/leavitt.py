"""The Leavitt algebra of type (m,n): generators, reduction system,
grading and linear bases.

The algebra is generated by letters x(i,j) and y(j,i) subject to the row
and column relations that make the m x n matrix X and the n x m matrix Y
mutually inverse.  Orienting those relations at the highest column/row
index gives a reduction system whose irreducible words form a linear
basis; multiplication is concatenation followed by reduction to normal
form.  Degrees count x-letters minus y-letters.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .freealg import EMPTY, RATIONALS, Poly, word_key, x, y
from .rewriting import ReductionSystem, Rule, WeightSpec
from .starmat import QuotientRing

__all__ = [
    "LeavittAlgebra",
    "LeavittSpec",
    "build_system_S",
    "check_xy_identities",
    "decompose",
    "degree",
    "enumerate_irreducible",
    "strong_grading_witness",
]


@dataclass(frozen=True)
class LeavittSpec:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("both module ranks must be positive")


def _letter_weight(letter):
    # both families weigh i+j; ties in length are broken by this sum
    return letter.idx[0] + letter.idx[1]


def build_system_S(spec, field=None):
    """The m^2 + n^2 rules rewriting the highest inner index away.

    Kind (i):  x(i,n) y(n,i') -> delta_{ii'} - sum_{j<n} x(i,j) y(j,i')
    Kind (ii): y(j,m) x(m,j') -> delta_{jj'} - sum_{i<m} y(j,i) x(i,j')
    """
    field = field or RATIONALS
    m, n = spec.m, spec.n
    rules = []
    for i in range(1, m + 1):
        for i2 in range(1, m + 1):
            pairs = [((x(i, j), y(j, i2)), -1) for j in range(1, n)]
            if i == i2:
                pairs.append((EMPTY, 1))
            rules.append(
                Rule((x(i, n), y(n, i2)), Poly.from_terms(field, pairs))
            )
    for j in range(1, n + 1):
        for j2 in range(1, n + 1):
            pairs = [((y(j, i), x(i, j2)), -1) for i in range(1, m)]
            if j == j2:
                pairs.append((EMPTY, 1))
            rules.append(
                Rule((y(j, m), x(m, j2)), Poly.from_terms(field, pairs))
            )
    return ReductionSystem(
        alphabet=f"x/y letters of type ({m},{n})",
        rules=rules,
        weights=WeightSpec(_letter_weight),
        field=field,
    )


class LeavittAlgebra:
    """Bundles a type (m,n), a scalar field and the reduction system."""

    def __init__(self, m, n, field=None):
        self.spec = LeavittSpec(m, n)
        self.m = m
        self.n = n
        self.field = field or RATIONALS
        self.system = build_system_S(self.spec, self.field)
        self.forbidden = frozenset(self.system.by_lhs)
        self.letters = tuple(
            sorted(
                [x(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
                + [y(j, i) for j in range(1, n + 1) for i in range(1, m + 1)]
            )
        )
        self._basis_cache = {}

    def __repr__(self):
        return f"LeavittAlgebra({self.m}, {self.n})"

    # validated letter constructors
    def x(self, i, j):
        if not (1 <= i <= self.m and 1 <= j <= self.n):
            raise ValueError(f"x({i},{j}) out of range for type ({self.m},{self.n})")
        return x(i, j)

    def y(self, j, i):
        if not (1 <= j <= self.n and 1 <= i <= self.m):
            raise ValueError(f"y({j},{i}) out of range for type ({self.m},{self.n})")
        return y(j, i)

    def check_word(self, w):
        for letter in w:
            fam = letter.family
            if fam == "x":
                self.x(*letter.idx)
            elif fam == "y":
                self.y(*letter.idx)
            else:
                raise ValueError(f"letter {letter} is not an x/y generator")
        return w

    @property
    def one(self):
        return Poly.word(self.field, EMPTY)

    def word(self, w, coeff=1):
        return Poly.word(self.field, w, coeff)

    def nf(self, p):
        return self.system.normal_form(p)

    def mul(self, a, b):
        """Multiplication in the algebra: concatenate, then reduce."""
        return self.system.mul(a, b)

    @property
    def ring(self):
        """Entry ring for star matrices over this algebra."""
        return QuotientRing(self.system)


# ---------------------------------------------------------------------------
# grading
# ---------------------------------------------------------------------------

def degree(w):
    """Sum of letter degrees: +1 per x-letter, -1 per y-letter."""
    d = 0
    for letter in w:
        fam = letter.family
        if fam == "x":
            d += 1
        elif fam == "y":
            d -= 1
        else:
            raise ValueError(f"letter {letter} has no x/y degree")
    return d


def decompose(p):
    """Split a polynomial into its homogeneous parts, keyed by degree."""
    parts = {}
    for w, c in p.terms.items():
        parts.setdefault(degree(w), {})[w] = c
    return {d: Poly(p.field, terms) for d, terms in sorted(parts.items())}


# ---------------------------------------------------------------------------
# identity and grading witnesses
# ---------------------------------------------------------------------------

class IdentityReport(NamedTuple):
    name: str
    checked: int
    mismatches: tuple

    @property
    def ok(self):
        return not self.mismatches

    def to_json(self):
        return {
            "check": self.name,
            "instances": self.checked,
            "ok": self.ok,
            "mismatches": [
                {"where": where, "value": str(value)} for where, value in self.mismatches
            ],
        }


def check_xy_identities(alg):
    """Verify X·Y = I_m and Y·X = I_n entrywise in the algebra."""
    mismatches = []
    checked = 0
    for i in range(1, alg.m + 1):
        for i2 in range(1, alg.m + 1):
            total = Poly.from_terms(
                alg.field, [((x(i, j), y(j, i2)), 1) for j in range(1, alg.n + 1)]
            )
            got = alg.nf(total)
            want = alg.one if i == i2 else Poly.zero(alg.field)
            checked += 1
            if got != want:
                mismatches.append((f"XY[{i},{i2}]", got))
    for j in range(1, alg.n + 1):
        for j2 in range(1, alg.n + 1):
            total = Poly.from_terms(
                alg.field, [((y(j, i), x(i, j2)), 1) for i in range(1, alg.m + 1)]
            )
            got = alg.nf(total)
            want = alg.one if j == j2 else Poly.zero(alg.field)
            checked += 1
            if got != want:
                mismatches.append((f"YX[{j},{j2}]", got))
    return IdentityReport("XY=I_m, YX=I_n", checked, tuple(mismatches))


def strong_grading_witness(alg, k):
    """Build the two witness sums in degrees (+k)·(-k) and (-k)·(+k) and
    verify both reduce to 1."""
    if k < 1:
        raise ValueError("witness degree must be positive")
    field = alg.field
    pos = []
    for js in _tuples(alg.n, k):
        w = tuple(x(1, j) for j in js) + tuple(y(j, 1) for j in reversed(js))
        pos.append((w, 1))
    neg = []
    for is_ in _tuples(alg.m, k):
        w = tuple(y(1, i) for i in is_) + tuple(x(i, 1) for i in reversed(is_))
        neg.append((w, 1))
    got_pos = alg.nf(Poly.from_terms(field, pos))
    got_neg = alg.nf(Poly.from_terms(field, neg))
    mismatches = []
    if got_pos != alg.one:
        mismatches.append((f"L_{k}·L_{-k}", got_pos))
    if got_neg != alg.one:
        mismatches.append((f"L_{-k}·L_{k}", got_neg))
    return IdentityReport(f"strong grading witnesses, k={k}", 2, tuple(mismatches))


def _tuples(bound, k):
    if k == 0:
        yield ()
        return
    for rest in _tuples(bound, k - 1):
        for v in range(1, bound + 1):
            yield rest + (v,)


# ---------------------------------------------------------------------------
# irreducible words
# ---------------------------------------------------------------------------

def enumerate_irreducible(alg, max_len, degree_filter=None):
    """All words of length <= max_len avoiding every forbidden subword,
    optionally restricted to one degree.

    Results are cached per algebra and returned in the fixed word order.
    Forbidden words all have length two, so a word is irreducible exactly
    when no adjacent letter pair is forbidden.
    """
    key = (max_len, degree_filter)
    cached = alg._basis_cache.get(key)
    if cached is not None:
        return cached
    forbidden = alg.forbidden
    letters = alg.letters
    out = []

    def extend(w, d):
        if degree_filter is None or d == degree_filter:
            out.append(w)
        remaining = max_len - len(w)
        if remaining == 0:
            return
        for letter in letters:
            if w and (w[-1], letter) in forbidden:
                continue
            d2 = d + (1 if letter.family == "x" else -1)
            if degree_filter is not None and abs(d2 - degree_filter) > remaining - 1:
                continue
            extend(w + (letter,), d2)

    extend(EMPTY, 0)
    out.sort(key=word_key)
    result = tuple(out)
    alg._basis_cache[key] = result
    return result
