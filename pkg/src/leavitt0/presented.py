"""Presented algebras on matrix-symbol generators, their reduction
systems, the embedding into the Leavitt algebra, and Bergman graphs.

Two presentations are handled, both on families of m^p-by-m^p symbol
matrices e^{p,k,l} (1 <= k,l <= n, p up to a truncation z):

* the full algebra: products within one level contract like matrix
  units in k,l, and the level-p diagonal sums to the inflated level
  p-1 identity;
* the Bergman variant: the same data restricted to |k - l| <= 1, with
  the product relation limited accordingly.

Both presentations are oriented into reduction systems in the same
style as the Leavitt system: highest row/column index rewritten away,
with the level-(p-1) identity relation substituting the extreme
diagonal symbol.  The entrywise embedding into the degree-zero part of
the Leavitt algebra sends e^{p,k,l} to a star product of generator
columns and rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .freealg import EMPTY, RATIONALS, Poly, e as e_letter, format_word, x, y
from .rewriting import ReductionSystem, Rule, WeightSpec
from .starmat import (
    FreeRing,
    QuotientRing,
    StarMatrix,
    column_matrix,
    oplus,
    row_matrix,
    star,
    star_all,
)
from .zerocomp import dxy_member, is_admissible

__all__ = [
    "AAlgebra",
    "BAlgebra",
    "BergmanGraph",
    "ab_iso_report",
    "b_collapse_n1",
    "bergman_generator_map",
    "build_bergman_graph",
    "build_system_T",
    "check_phi_on_irreducibles",
    "phi_letter",
    "phi_word",
    "verify_matrix_relations",
]


# ---------------------------------------------------------------------------
# reduction systems
# ---------------------------------------------------------------------------

def _weight_rows(letter):
    return letter.idx[3] + letter.idx[4]


def _weight_level(letter):
    return letter.idx[0] + letter.idx[1] + letter.idx[2]


def _diagonal_block(i, j, size):
    """Block coordinates of (i,j) in a diagonal of blocks of the given
    size: (t, r, s) with i = t*size + r, j = t*size + s, or None."""
    ti, r = divmod(i - 1, size)
    tj, s = divmod(j - 1, size)
    if ti != tj:
        return None
    return ti, r + 1, s + 1


def _level_rules(field, m, n, p, letters):
    """Same-level rules: boundary contraction and the extreme diagonal
    symbol; `letters` filters which (k,l) pairs exist."""
    rules = []
    mp = m**p
    kl = [(k, l) for k in range(1, n + 1) for l in range(1, n + 1) if letters(k, l)]
    for k, l in kl:
        for k2, l2 in kl:
            contracts = l == k2 and letters(k, l2)
            if l == k2 and not letters(k, l2):
                continue  # no relation: the product is a genuine new element
            for i in range(1, mp + 1):
                for j in range(1, mp + 1):
                    pairs = [
                        ((e_letter(p, k, l, i, r), e_letter(p, k2, l2, r, j)), -1)
                        for r in range(1, mp)
                    ]
                    if contracts:
                        pairs.append(((e_letter(p, k, l2, i, j),), 1))
                    rules.append(
                        Rule(
                            (e_letter(p, k, l, i, mp), e_letter(p, k2, l2, mp, j)),
                            Poly.from_terms(field, pairs),
                        )
                    )
    if letters(n, n):
        size = m ** (p - 1)
        for i in range(1, mp + 1):
            for j in range(1, mp + 1):
                pairs = [
                    ((e_letter(p, k, k, i, j),), -1)
                    for k in range(1, n)
                    if letters(k, k)
                ]
                block = _diagonal_block(i, j, size)
                if block is not None:
                    t, r, s = block
                    base = EMPTY if p == 1 else (e_letter(p - 1, 1, 1, r, s),)
                    pairs.append((base, 1))
                rules.append(
                    Rule((e_letter(p, n, n, i, j),), Poly.from_terms(field, pairs))
                )
    return rules


def _cross_rules(field, m, p, p2, n, letters):
    """Rules for adjacent levels p < p2: a level-p symbol meeting the
    matching block boundary of a level-p2 symbol either shifts the block
    index (identity symbol) or annihilates (trailing index not 1)."""
    rules = []
    mp, mp2 = m**p, m**p2
    kl = [(k, l) for k in range(1, n + 1) for l in range(1, n + 1) if letters(k, l)]
    for k2, l2 in kl:
        for t in range(m ** (p2 - p)):
            for i in range(1, mp + 1):
                for j in range(1, mp2 + 1):
                    # low level acting on the left
                    for k, l in kl:
                        if (k, l) != (1, 1) and l == 1:
                            continue  # no relation for (k,1), k != 1
                        pairs = [
                            (
                                (
                                    e_letter(p, k, l, i, r),
                                    e_letter(p2, k2, l2, t * mp + r, j),
                                ),
                                -1,
                            )
                            for r in range(1, mp)
                        ]
                        if (k, l) == (1, 1):
                            pairs.append(((e_letter(p2, k2, l2, t * mp + i, j),), 1))
                        rules.append(
                            Rule(
                                (
                                    e_letter(p, k, l, i, mp),
                                    e_letter(p2, k2, l2, (t + 1) * mp, j),
                                ),
                                Poly.from_terms(field, pairs),
                            )
                        )
    for k, l in kl:
        for t in range(m ** (p2 - p)):
            for i in range(1, mp2 + 1):
                for j in range(1, mp + 1):
                    # low level acting on the right
                    for k2, l2 in kl:
                        if (k2, l2) != (1, 1) and k2 == 1:
                            continue  # no relation for (1,l'), l' != 1
                        pairs = [
                            (
                                (
                                    e_letter(p2, k, l, i, t * mp + r),
                                    e_letter(p, k2, l2, r, j),
                                ),
                                -1,
                            )
                            for r in range(1, mp)
                        ]
                        if (k2, l2) == (1, 1):
                            pairs.append(((e_letter(p2, k, l, i, t * mp + j),), 1))
                        rules.append(
                            Rule(
                                (
                                    e_letter(p2, k, l, i, (t + 1) * mp),
                                    e_letter(p, k2, l2, mp, j),
                                ),
                                Poly.from_terms(field, pairs),
                            )
                        )
    return rules


def _build_system(m, n, z, field, letters, label):
    rules = []
    for p in range(1, z + 1):
        rules.extend(_level_rules(field, m, n, p, letters))
    for p in range(1, z + 1):
        for p2 in range(p + 1, z + 1):
            rules.extend(_cross_rules(field, m, p, p2, n, letters))
    return ReductionSystem(
        alphabet=label,
        rules=rules,
        weights=WeightSpec(_weight_rows, _weight_level),
        field=field,
    )


def build_system_T(spec, field=None):
    """All six rule families for levels up to the truncation."""
    field = field or RATIONALS
    return _build_system(
        spec.m,
        spec.n,
        spec.z,
        field,
        lambda k, l: True,
        f"matrix symbols of type ({spec.m},{spec.n}), levels <= {spec.z}",
    )


@dataclass(frozen=True)
class ASpec:
    m: int
    n: int
    z: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1 or self.z < 1:
            raise ValueError("type parameters and truncation must be positive")


class _PresentedAlgebra:
    kind = "full"

    def __init__(self, m, n, z, field=None):
        self.spec = ASpec(m, n, z)
        self.m, self.n, self.z = m, n, z
        self.field = field or RATIONALS
        self.system = self._build()

    def _letters(self, k, l):
        return True

    def _build(self):
        return _build_system(
            self.m, self.n, self.z, self.field, self._letters,
            f"{self.kind} matrix symbols of type ({self.m},{self.n}), levels <= {self.z}",
        )

    def __repr__(self):
        return f"{type(self).__name__}({self.m}, {self.n}, {self.z})"

    def e(self, p, k, l, i, j):
        if not 1 <= p <= self.z:
            raise ValueError(f"level {p} outside 1..{self.z}")
        if not (1 <= k <= self.n and 1 <= l <= self.n and self._letters(k, l)):
            raise ValueError(f"no symbol e^{{{p},{k},{l}}} in this presentation")
        if not (1 <= i <= self.m**p and 1 <= j <= self.m**p):
            raise ValueError(f"entry ({i},{j}) outside the m^p = {self.m**p} range")
        return e_letter(p, k, l, i, j)

    def letters(self, p_cap=None):
        cap = self.z if p_cap is None else min(p_cap, self.z)
        out = []
        for p in range(1, cap + 1):
            for k in range(1, self.n + 1):
                for l in range(1, self.n + 1):
                    if not self._letters(k, l):
                        continue
                    for i in range(1, self.m**p + 1):
                        for j in range(1, self.m**p + 1):
                            out.append(e_letter(p, k, l, i, j))
        return sorted(out)

    @property
    def ring(self):
        return QuotientRing(self.system)

    def nf(self, p):
        return self.system.normal_form(p)

    def e_matrix(self, p, k, l, ring=None):
        """The m^p-by-m^p symbol matrix, or the 1x1 identity at level 0."""
        ring = ring or self.ring
        if p == 0:
            if (k, l) != (1, 1):
                raise ValueError("level 0 has only the identity symbol")
            return StarMatrix.identity(self.m, ring)
        self.e(p, k, l, 1, 1)
        return StarMatrix.from_entries(
            self.m,
            p,
            p,
            lambda i, j: Poly.word(self.field, (e_letter(p, k, l, i, j),)),
            ring,
        )


class AAlgebra(_PresentedAlgebra):
    """The full presentation: all pairs (k,l)."""

    kind = "full"


class BAlgebra(_PresentedAlgebra):
    """The Bergman variant: only symbols with |k - l| <= 1."""

    kind = "band"

    def _letters(self, k, l):
        return abs(k - l) <= 1


# ---------------------------------------------------------------------------
# relation verification
# ---------------------------------------------------------------------------

class RelationReport(NamedTuple):
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
            "mismatches": list(self.mismatches),
        }


def _matrices_equal(ring, got, want):
    for r1, r2 in zip(got.rows, want.rows):
        for a, b in zip(r1, r2):
            delta = ring.add(a, ring.neg(b))
            if hasattr(ring, "reduce"):
                delta = ring.reduce(delta)
            if not ring.is_zero(delta):
                return False
    return True


def verify_matrix_relations(alg):
    """Both defining relation families, plus the four derived star
    relations between different levels, checked entrywise."""
    ring = alg.ring
    m, n, z = alg.m, alg.n, alg.z
    mismatches = []
    checked = 0

    def expect(tag, got, want):
        nonlocal checked
        checked += 1
        if not _matrices_equal(ring, got, want):
            mismatches.append(tag)

    for p in range(1, z + 1):
        mats = {
            (k, l): alg.e_matrix(p, k, l, ring)
            for k in range(1, n + 1)
            for l in range(1, n + 1)
            if alg._letters(k, l)
        }
        for (k, l), a in mats.items():
            for (k2, l2), b in mats.items():
                if l == k2 and not alg._letters(k, l2):
                    continue
                want = (
                    mats[(k, l2)]
                    if l == k2
                    else StarMatrix.zero(m, p, p, ring)
                )
                expect(f"product p={p} ({k},{l})({k2},{l2})", a.matmul(b), want)
        total = None
        for k in range(1, n + 1):
            if not alg._letters(k, k):
                continue
            total = mats[(k, k)] if total is None else total + mats[(k, k)]
        expect(
            f"diagonal sum p={p}",
            total,
            oplus(alg.e_matrix(p - 1, 1, 1, ring), m),
        )

    pairs = [
        (k, l)
        for k in range(1, n + 1)
        for l in range(1, n + 1)
        if alg._letters(k, l)
    ]
    for p in range(1, z + 1):
        for p2 in range(p + 1, z + 1):
            low_id = alg.e_matrix(p, 1, 1, ring)
            for k2, l2 in pairs:
                high = alg.e_matrix(p2, k2, l2, ring)
                expect(
                    f"identity from the left p={p},p'={p2} ({k2},{l2})",
                    star(low_id, high),
                    high,
                )
                expect(
                    f"identity from the right p'={p2},p={p} ({k2},{l2})",
                    star(high, low_id),
                    high,
                )
                for k, l in pairs:
                    if l != 1:
                        expect(
                            f"zero from the left p={p},p'={p2} ({k},{l})({k2},{l2})",
                            star(alg.e_matrix(p, k, l, ring), high),
                            StarMatrix.zero(m, p2, p2, ring),
                        )
                    if k != 1:
                        expect(
                            f"zero from the right p'={p2},p={p} ({k2},{l2})({k},{l})",
                            star(high, alg.e_matrix(p, k, l, ring)),
                            StarMatrix.zero(m, p2, p2, ring),
                        )
    return RelationReport(
        f"matrix relations at ({m},{n},{z})", checked, tuple(mismatches)
    )


# ---------------------------------------------------------------------------
# the embedding into the Leavitt algebra
# ---------------------------------------------------------------------------

def _x_column(alg_l, j, ring):
    return column_matrix(
        alg_l.m,
        [Poly.word(alg_l.field, (x(i, j),)) for i in range(1, alg_l.m + 1)],
        ring,
    )


def _y_row(alg_l, j, ring):
    return row_matrix(
        alg_l.m,
        [Poly.word(alg_l.field, (y(j, i),)) for i in range(1, alg_l.m + 1)],
        ring,
    )


def phi_matrix(alg_l, p, k, l):
    """The star product of p-1 first columns, the k-th column, the l-th
    row and p-1 first rows: an m^p x m^p matrix of single words."""
    ring = FreeRing(alg_l.field)
    factors = (
        [_x_column(alg_l, 1, ring)] * (p - 1)
        + [_x_column(alg_l, k, ring)]
        + [_y_row(alg_l, l, ring)]
        + [_y_row(alg_l, 1, ring)] * (p - 1)
    )
    return star_all(factors)


def phi_letter(alg_l, p, k, l, i, j):
    """Image of one matrix symbol entry: always a single word."""
    entry = phi_matrix(alg_l, p, k, l).entry(i, j)
    words = list(entry.terms)
    if len(words) != 1 or entry.terms[words[0]] != alg_l.field.one:
        raise AssertionError("embedding image is not a single word")
    return words[0]


def phi_word(alg_l, w):
    """Image of a word in the matrix symbols: concatenation of letter
    images."""
    out = []
    for letter in w:
        if letter.family != "e":
            raise ValueError(f"letter {letter} is not a matrix symbol")
        p, k, l, i, j = letter.idx
        out.extend(phi_letter(alg_l, p, k, l, i, j))
    return tuple(out)


class PhiReport(NamedTuple):
    words_checked: int
    images: int
    all_admissible: bool
    all_members: bool
    all_distinct: bool

    @property
    def ok(self):
        return self.all_admissible and self.all_members and self.all_distinct

    def to_json(self):
        return {
            "irreducible_words": self.words_checked,
            "distinct_images": self.images,
            "all_admissible": self.all_admissible,
            "all_in_admissible_basis": self.all_members,
            "all_distinct": self.all_distinct,
        }


def check_phi_on_irreducibles(alg_a, alg_l, max_len=2, p_cap=2):
    """Map every irreducible symbol word within the bounds and check the
    images are admissible, satisfy the basis membership conditions, and
    are pairwise distinct."""
    letters = alg_a.letters(p_cap)
    system = alg_a.system
    words = [EMPTY]
    frontier = [EMPTY]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for letter in letters:
                w2 = w + (letter,)
                if system.is_irreducible_word(w2):
                    nxt.append(w2)
        words.extend(nxt)
        frontier = nxt
    images = set()
    all_admissible = all_members = True
    for w in words:
        img = phi_word(alg_l, w)
        images.add(img)
        if not is_admissible(img):
            all_admissible = False
        elif not dxy_member(alg_l, img):
            all_members = False
    return PhiReport(
        len(words), len(images), all_admissible, all_members, len(images) == len(words)
    )


# ---------------------------------------------------------------------------
# the band presentation vs the full one
# ---------------------------------------------------------------------------

def ab_iso_report(m, n, z, field=None):
    """Check the two generator translations compose to the identity.

    Full -> band sends e^{p,k,l} with |k-l| > 1 to a product of band
    symbols stepping k towards l; band -> full is symbol-for-symbol.  The
    composite on full generators is verified by reducing the product
    chain; the other composite is the identity branch by definition.
    """
    alg = AAlgebra(m, n, z, field)
    ring = alg.ring
    mismatches = []
    checked = 0
    for p in range(1, z + 1):
        for k in range(1, n + 1):
            for l in range(1, n + 1):
                checked += 1
                if abs(k - l) <= 1:
                    continue  # translation fixes the symbol; nothing to reduce
                step = -1 if k > l else 1
                chain = [
                    alg.e_matrix(p, a, a + step, ring)
                    for a in range(k, l, step)
                ]
                got = chain[0]
                for mat in chain[1:]:
                    got = got.matmul(mat)
                if not _matrices_equal(ring, got, alg.e_matrix(p, k, l, ring)):
                    mismatches.append(f"chain for ({p},{k},{l})")
    return RelationReport(
        f"band/full generator translation at ({m},{n},{z})", checked, tuple(mismatches)
    )


# ---------------------------------------------------------------------------
# Bergman graphs
# ---------------------------------------------------------------------------

class BergmanGraph(NamedTuple):
    """Vertices v(p,q), one blue hyperedge per level (m parallel sources
    at the previous level's first vertex, ranges across the level), and
    red edges stepping q to q+1 within a level."""

    m: int
    n: int
    z: int
    vertices: tuple
    blue: tuple  # (name, sources, ranges)
    red: tuple  # (name, source, target)

    def to_json(self):
        return {
            "m": self.m,
            "n": self.n,
            "z": self.z,
            "vertices": list(self.vertices),
            "blue_hyperedges": [
                {"name": name, "sources": list(src), "ranges": list(rng)}
                for name, src, rng in self.blue
            ],
            "red_edges": [
                {"name": name, "source": src, "target": dst}
                for name, src, dst in self.red
            ],
        }


def _v(p, q):
    return f"v({p},{q})"


def build_bergman_graph(m, n, z):
    if m < 1 or n < 1 or z < 1:
        raise ValueError("graph parameters must be positive")
    if n == 1:
        return BergmanGraph(m, n, z, (_v(0, 1),), (), ())
    vertices = [_v(0, 1)]
    for p in range(1, z + 1):
        vertices.extend(_v(p, q) for q in range(1, n + 1))
    blue = tuple(
        (f"g{p}", (_v(p - 1, 1),) * m, tuple(_v(p, q) for q in range(1, n + 1)))
        for p in range(1, z + 1)
    )
    red = tuple(
        (f"h({p},{q})", _v(p, q), _v(p, q + 1))
        for p in range(1, z + 1)
        for q in range(1, n)
    )
    return BergmanGraph(m, n, z, tuple(vertices), blue, red)


# ---------------------------------------------------------------------------
# generator map of the graph presentation, and the n = 1 collapse
# ---------------------------------------------------------------------------

def bergman_generator_map(m, n, z, field=None):
    """Verify every relation of the graph presentation under the
    substitution eps -> e^{p,q,q}, sig -> e^{p,q,q+1}, sigh -> e^{p,q+1,q},
    by reducing entrywise in the band presentation."""
    if n < 2:
        raise ValueError("the graph presentation needs n >= 2")
    alg = BAlgebra(m, n, z, field)
    ring = alg.ring
    mismatches = []
    checked = 0

    def eps_mat(p, q):
        if p == 0:
            return StarMatrix.identity(m, ring)
        if q < n:
            return alg.e_matrix(p, q, q, ring)
        total = oplus(eps_mat(p - 1, 1), m)
        for q2 in range(1, n):
            total = total - alg.e_matrix(p, q2, q2, ring)
        return total

    def expect(tag, got, want):
        nonlocal checked
        checked += 1
        if not _matrices_equal(ring, got, want):
            mismatches.append(tag)

    for p in range(1, z + 1):
        frame = oplus(eps_mat(p - 1, 1), m)
        for q in range(1, n):
            epq = eps_mat(p, q)
            sig = alg.e_matrix(p, q, q + 1, ring)
            sigh = alg.e_matrix(p, q + 1, q, ring)
            expect(f"frame p={p} q={q}", frame.matmul(epq).matmul(frame), epq)
            for q2 in range(1, n):
                want = epq if q == q2 else StarMatrix.zero(m, p, p, ring)
                expect(f"idempotents p={p} ({q},{q2})",
                       epq.matmul(eps_mat(p, q2)), want)
            expect(f"sig frame p={p} q={q}",
                   epq.matmul(sig).matmul(eps_mat(p, q + 1)), sig)
            expect(f"sigh frame p={p} q={q}",
                   eps_mat(p, q + 1).matmul(sigh).matmul(epq), sigh)
            expect(f"sig sigh p={p} q={q}", sig.matmul(sigh), epq)
            expect(f"sigh sig p={p} q={q}", sigh.matmul(sig), eps_mat(p, q + 1))
        # the derived top idempotent agrees with the extreme symbol
        expect(f"derived idempotent p={p}",
               alg.e_matrix(p, n, n, ring), eps_mat(p, n))
    return RelationReport(
        f"graph presentation generator map at ({m},{n},{z})", checked, tuple(mismatches)
    )


def b_collapse_n1(m, z, field=None):
    """With one column the band presentation collapses to the scalars:
    every symbol entry reduces to 0 or 1."""
    alg = BAlgebra(m, 1, z, field)
    field = alg.field
    mismatches = []
    checked = 0
    for p in range(1, z + 1):
        for i in range(1, m**p + 1):
            for j in range(1, m**p + 1):
                checked += 1
                got = alg.nf(Poly.word(field, (e_letter(p, 1, 1, i, j),)))
                want = Poly.scalar(field, 1 if i == j else 0)
                if got != want:
                    mismatches.append(f"entry ({p},{i},{j}) -> {got}")
    return RelationReport(f"collapse at ({m},1,{z})", checked, tuple(mismatches))
