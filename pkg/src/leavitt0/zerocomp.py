"""Word combinatorics of the degree-zero component.

Every degree-zero word factors uniquely into prime words (no proper
degree-zero prefix); primes starting with an x-letter and ending with a
y-letter span one free factor, their mirror images the other.  This
module implements, for the xy side:

* prime factorization, classification and the run-length type criterion
  for primality,
* the block decomposition of products of prime xy words: sizes k_i with
  boundary surpluses r_i, and enumeration of all irreducible words in a
  block,
* the completion (insert y(1,m)^r x(m,1)^r to even out every block) and
  the transformation (insert the same blocks inside each prime factor to
  push all non-unit column/row indices into one slot per factor),
* signatures, admissible words, chains/cochains and the skeleton,
* wild adjacencies and the sufficiency test for membership in the
  admissible-word basis, together with a constructive source witness,
* base-change matrices of the completion and transformation maps on a
  block, and streaming unitriangularity checks for large blocks.

Functions that need the ambient type (m,n) take the `LeavittAlgebra`
as first argument; purely combinatorial ones take only the word.
"""

from __future__ import annotations

import random
from typing import NamedTuple

from .freealg import EMPTY, Poly, format_word, word_key, x, y
from .leavitt import degree

__all__ = [
    "BaseChange",
    "SkeletonDecomposition",
    "base_change_block",
    "block_of",
    "classify_prime",
    "completion",
    "cxy_member",
    "dxy_member",
    "dxy_source",
    "enumerate_bxy_block",
    "enumerate_cxy_block",
    "express_in_cbasis",
    "f_poly",
    "g_poly",
    "is_admissible",
    "is_ordered",
    "is_prime_by_type",
    "is_prime_word",
    "prime_factorize",
    "signature",
    "skeleton",
    "skeleton_type",
    "swap_side",
    "transformation",
    "wild_indices",
    "word_type",
]


# ---------------------------------------------------------------------------
# primes, types, blocks
# ---------------------------------------------------------------------------

def prime_factorize(w):
    """Cut a degree-zero word at every proper prefix of degree zero.

    The pieces are the unique prime factorization; the empty word gives [].
    """
    if degree(w) != 0:
        raise ValueError(f"word {format_word(w)} has nonzero degree")
    factors = []
    d = 0
    start = 0
    for i, letter in enumerate(w):
        d += 1 if letter.family == "x" else -1
        if d == 0:
            factors.append(w[start : i + 1])
            start = i + 1
    return factors


def is_prime_word(w):
    """Nonempty, degree zero, and no proper degree-zero prefix."""
    if not w or degree(w) != 0:
        return False
    d = 0
    for letter in w[:-1]:
        d += 1 if letter.family == "x" else -1
        if d == 0:
            return False
    return True


def classify_prime(w):
    """`xy` or `yx` according to the first letter; input must be prime."""
    if not is_prime_word(w):
        raise ValueError(f"word {format_word(w)} is not prime")
    return "xy" if w[0].family == "x" else "yx"


def _runs(w):
    runs = []
    for letter in w:
        fam = letter.family
        if runs and runs[-1][0] == fam:
            runs[-1][1] += 1
        else:
            runs.append([fam, 1])
    return runs


def word_type(w):
    """Run-length tuple of the alternating x/y blocks of an xy or yx word."""
    if not w:
        raise ValueError("the empty word has no type")
    runs = _runs(w)
    first, last = w[0].family, w[-1].family
    if degree(w) != 0 or first == last or {first, last} != {"x", "y"}:
        raise ValueError(f"word {format_word(w)} is not an xy or yx word")
    return tuple(n for _, n in runs)


def is_prime_by_type(t):
    """Decide primality from the type alone.

    A type is prime iff it can be written as
    (k_1-r_0, k_1-r_1, k_2-r_1, ..., k_p-r_{p-1}, k_p-r_p) with r_0=r_p=0
    and 0 < r_i < min(k_i, k_{i+1}) in between; the k_i and r_i are forced,
    so this is a linear scan.
    """
    if len(t) < 2 or len(t) % 2 != 0:
        return False
    p = len(t) // 2
    ks, rs = [], [0]
    for i in range(1, p + 1):
        k_i = t[2 * i - 2] + rs[i - 1]
        ks.append(k_i)
        rs.append(k_i - t[2 * i - 1])
    if rs[p] != 0 or any(k < 1 for k in ks):
        return False
    return all(0 < rs[i] < min(ks[i - 1], ks[i]) for i in range(1, p))


def block_data(w):
    """Block sizes and boundary surpluses of a word in the xy submonoid.

    Returns (ks, rs): the word has x-runs of sizes k_i - r_{i-1} and
    y-runs of sizes k_i - r_i, with every surplus r_i >= 0 and r_0 =
    r_p = 0.  Raises if the word is not a product of prime xy words.
    """
    if not w:
        return (), ()
    bad = ValueError(f"word {format_word(w)} is not a product of prime xy words")
    if w[0].family != "x":
        raise bad
    runs = _runs(w)
    if len(runs) % 2 != 0:
        raise bad
    ks, rs = [], []
    surplus = 0
    for i in range(0, len(runs), 2):
        if runs[i][0] != "x" or runs[i + 1][0] != "y":
            raise bad
        a, b = runs[i][1], runs[i + 1][1]
        ks.append(a + surplus)
        surplus += a - b
        if surplus < 0:
            raise bad
        rs.append(surplus)
    if surplus != 0:
        raise bad
    return tuple(ks), tuple(rs)


def block_of(w):
    return block_data(w)[0]


def is_ordered(w):
    """True when every prime factor has as many x-letters as y-letters in
    a single run each, i.e. all boundary surpluses vanish."""
    try:
        _, rs = block_data(w)
    except ValueError:
        return False
    return all(r == 0 for r in rs)


# ---------------------------------------------------------------------------
# block enumeration
# ---------------------------------------------------------------------------

def _surplus_choices(ks):
    """All admissible boundary surpluses 0 <= r_i < min(k_i, k_{i+1})."""
    if len(ks) <= 1:
        yield (0,) * max(len(ks) - 1, 0)
        return
    ranges = [range(min(ks[i], ks[i + 1])) for i in range(len(ks) - 1)]

    def rec(i):
        if i == len(ranges):
            yield ()
            return
        for tail in rec(i + 1):
            for r in ranges[i]:
                yield (r,) + tail

    yield from rec(0)


def type_from_block(ks, rs):
    """The run profile of the block (ks) with surpluses (rs)."""
    rs = (0,) + tuple(rs) + (0,)
    out = []
    for i, k in enumerate(ks):
        out.append(k - rs[i])
        out.append(k - rs[i + 1])
    return tuple(out)


def _run_letters(alg, fam):
    if fam == "x":
        return [x(i, j) for i in range(1, alg.m + 1) for j in range(1, alg.n + 1)]
    return [y(j, i) for j in range(1, alg.n + 1) for i in range(1, alg.m + 1)]


def _family_pattern(t):
    fams = []
    for i, run in enumerate(t):
        fams.extend(["x" if i % 2 == 0 else "y"] * run)
    return fams


def words_of_type(alg, t):
    """All irreducible words with the given xy run profile."""
    fams = _family_pattern(t)
    forbidden = alg.forbidden
    xs = sorted(_run_letters(alg, "x"))
    ys = sorted(_run_letters(alg, "y"))
    out = []

    def extend(w, pos):
        if pos == len(fams):
            out.append(w)
            return
        for letter in xs if fams[pos] == "x" else ys:
            if w and (w[-1], letter) in forbidden:
                continue
            extend(w + (letter,), pos + 1)

    extend(EMPTY, 0)
    return out


def count_words_of_type(alg, t):
    """Exact count of `words_of_type` without enumeration (letter DP)."""
    fams = _family_pattern(t)
    if not fams:
        return 1
    forbidden = alg.forbidden
    letters = {"x": sorted(_run_letters(alg, "x")), "y": sorted(_run_letters(alg, "y"))}
    state = {letter: 1 for letter in letters[fams[0]]}
    for fam in fams[1:]:
        nxt = {}
        for letter in letters[fam]:
            nxt[letter] = sum(
                c for prev, c in state.items() if (prev, letter) not in forbidden
            )
        state = nxt
    return sum(state.values())


def sample_words_of_type(alg, t, count, rng):
    """Deterministic rejection sampling of irreducible words of a profile."""
    fams = _family_pattern(t)
    forbidden = alg.forbidden
    letters = {"x": sorted(_run_letters(alg, "x")), "y": sorted(_run_letters(alg, "y"))}
    out = []
    guard = 0
    while len(out) < count:
        guard += 1
        if guard > 1000 * count + 1000:
            break
        w = tuple(rng.choice(letters[fam]) for fam in fams)
        if any((w[i], w[i + 1]) in forbidden for i in range(len(w) - 1)):
            continue
        out.append(w)
    return out


def enumerate_bxy_block(alg, ks):
    """All irreducible products of prime xy words in the block (ks),
    sorted by length then lexicographically."""
    if not ks:
        return (EMPTY,)
    words = []
    for rs in _surplus_choices(ks):
        words.extend(words_of_type(alg, type_from_block(ks, rs)))
    words.sort(key=word_key)
    return tuple(words)


# ---------------------------------------------------------------------------
# completion and the helper sums that witness it
# ---------------------------------------------------------------------------

def completion(alg, w):
    """Insert y(1,m)^{r_i} x(m,1)^{r_i} after the i-th y-run, producing the
    ordered word of the same block; ordered input returns itself."""
    ks, rs = block_data(w)
    if not ks:
        return w
    m = alg.m
    runs = _runs(w)
    out = []
    pos = 0
    for i, k in enumerate(ks):
        take = runs[2 * i][1] + runs[2 * i + 1][1]
        out.extend(w[pos : pos + take])
        pos += take
        if i < len(ks) - 1 and rs[i]:
            out.extend([y(1, m)] * rs[i])
            out.extend([x(m, 1)] * rs[i])
    return tuple(out)


def f_poly(alg, t):
    """The degree-zero sum that equals 1 and whose highest term is
    y(1,m)^t x(m,1)^t; f(0) is the empty word."""
    if t < 0:
        raise ValueError("need t >= 0")
    m = alg.m
    field = alg.field
    pairs = [(tuple([y(1, m)] * t + [x(m, 1)] * t), 1)]
    for s in range(t):
        for j in range(1, m):
            w = tuple([y(1, m)] * s + [y(1, j), x(j, 1)] + [x(m, 1)] * s)
            pairs.append((w, 1))
    return Poly.from_terms(field, pairs)


def g_poly(alg, t):
    """The full inverse-pair sum of depth t; equals 1 in the algebra."""
    if t < 1:
        raise ValueError("need t >= 1")
    m = alg.m
    pairs = []

    def rec(js):
        if len(js) == t:
            w = tuple(y(1, j) for j in js) + tuple(x(j, 1) for j in reversed(js))
            pairs.append((w, 1))
            return
        for j in range(1, m + 1):
            rec(js + (j,))

    rec(())
    return Poly.from_terms(alg.field, pairs)


# ---------------------------------------------------------------------------
# signatures, admissible words, transformation
# ---------------------------------------------------------------------------

def _ordered_factors(w):
    factors = prime_factorize(w)
    data = []
    for f in factors:
        if f[0].family != "x":
            raise ValueError(f"factor {format_word(f)} is not an xy word")
        p = len(f) // 2
        if any(z.family != "x" for z in f[:p]) or any(z.family != "y" for z in f[p:]):
            raise ValueError(f"word {format_word(w)} is not ordered")
        xcols = tuple(z.idx[1] for z in f[:p])
        yfirsts = tuple(z.idx[0] for z in f[p:])
        data.append((f, p, xcols, yfirsts))
    return data


def signature(w):
    """Per prime factor, the x column indices in reading order followed by
    the y first indices in reading order; input must be ordered."""
    return tuple((xcols, yfirsts) for _, _, xcols, yfirsts in _ordered_factors(w))


def is_admissible(w):
    """Ordered, and per factor only the last x column index and the first
    y first-index may differ from 1."""
    if not is_ordered(w):
        return False
    for _, _, xcols, yfirsts in _ordered_factors(w):
        if any(c != 1 for c in xcols[:-1]) or any(r != 1 for r in yfirsts[1:]):
            return False
    return True


def transformation(alg, w):
    """Insert y(1,m)^t x(m,1)^t around offending indices inside each prime
    factor, producing an admissible word; admissible input returns itself."""
    if not is_ordered(w):
        raise ValueError(f"word {format_word(w)} is not ordered")
    m = alg.m
    out = []
    for f, p, xcols, yfirsts in _ordered_factors(w):
        for t in range(1, p + 1):
            out.append(f[t - 1])
            if t < p and xcols[t - 1] != 1:
                out.extend([y(1, m)] * t)
                out.extend([x(m, 1)] * t)
        out.append(f[p])
        for idx in range(1, p):
            t = p - idx
            if yfirsts[idx] != 1:
                out.extend([y(1, m)] * t)
                out.extend([x(m, 1)] * t)
            out.append(f[p + idx])
    return tuple(out)


# ---------------------------------------------------------------------------
# chains, cochains, the skeleton
# ---------------------------------------------------------------------------

class SkeletonDecomposition(NamedTuple):
    """Segments of an ordered word: kept prime factors and the removed
    maximal compatible chains/cochains, in reading order."""

    word: tuple
    segments: tuple  # (kind, word) with kind in {"factor", "chain", "cochain"}

    @property
    def skeleton(self):
        return tuple(
            letter
            for kind, piece in self.segments
            if kind == "factor"
            for letter in piece
        )

    @property
    def removed(self):
        return tuple((kind, piece) for kind, piece in self.segments if kind != "factor")

    def reassembled(self):
        return tuple(letter for _, piece in self.segments for letter in piece)


def _chainable(p, xcols, yfirsts):
    return (
        all(c == 1 for c in xcols[:-1])
        and xcols[-1] > 1
        and all(r == 1 for r in yfirsts)
    )


def _cochainable(p, xcols, yfirsts):
    return (
        all(c == 1 for c in xcols)
        and yfirsts[0] > 1
        and all(r == 1 for r in yfirsts[1:])
    )


def skeleton(alg, w):
    """Remove all maximal compatible chains and cochains.

    A chain is a consecutive run of factors with strictly increasing
    sizes, unit y-indices and a single non-unit x column index at the
    end of each factor; it is compatible when the following factor is
    strictly bigger and starts with enough unit columns to absorb it.
    Cochains are the mirror image, absorbed by the preceding factor.
    """
    if not is_ordered(w):
        raise ValueError(f"word {format_word(w)} is not ordered")
    data = _ordered_factors(w)
    q = len(data)
    sizes = [p for _, p, _, _ in data]
    chain_ok = [_chainable(p, xc, yf) for _, p, xc, yf in data]
    cochain_ok = [_cochainable(p, xc, yf) for _, p, xc, yf in data]

    def absorbs_right(g, s):
        # factor g can follow a chain whose largest factor has size s
        _, p, xcols, _ = data[g]
        return p > s and all(c == 1 for c in xcols[:s])

    def absorbs_left(g, s):
        # factor g can precede a cochain whose first factor has size s
        _, p, _, yfirsts = data[g]
        return p > s and all(r == 1 for r in yfirsts[p - s:])

    removed = {}
    for a in range(q):
        if not chain_ok[a] or (a > 0 and chain_ok[a - 1] and sizes[a - 1] < sizes[a]):
            continue
        b = a
        while (
            b + 1 < q
            and chain_ok[b + 1]
            and sizes[b + 1] > sizes[b]
            and b + 2 < q
            and absorbs_right(b + 2, sizes[b + 1])
        ):
            b += 1
        if b + 1 < q and absorbs_right(b + 1, sizes[b]):
            for i in range(a, b + 1):
                removed[i] = "chain"
    for b in range(q - 1, -1, -1):
        if not cochain_ok[b] or (
            b + 1 < q and cochain_ok[b + 1] and sizes[b + 1] < sizes[b]
        ):
            continue
        a = b
        while (
            a - 1 >= 0
            and cochain_ok[a - 1]
            and sizes[a - 1] > sizes[a]
            and a - 2 >= 0
            and absorbs_left(a - 2, sizes[a - 1])
        ):
            a -= 1
        if a - 1 >= 0 and absorbs_left(a - 1, sizes[a]):
            for i in range(a, b + 1):
                if removed.get(i) == "chain":
                    raise AssertionError("chain and cochain overlap")
                removed[i] = "cochain"
    segments = []
    i = 0
    while i < q:
        kind = removed.get(i, "factor")
        if kind == "factor":
            segments.append(("factor", data[i][0]))
            i += 1
            continue
        piece = []
        while i < q and removed.get(i) == kind:
            piece.extend(data[i][0])
            i += 1
        segments.append((kind, tuple(piece)))
    return SkeletonDecomposition(w, tuple(segments))


def skeleton_type(alg, w):
    """Sizes of the prime factors that survive skeleton extraction."""
    dec = skeleton(alg, w)
    return tuple(
        len(piece) // 2 for kind, piece in dec.segments if kind == "factor"
    )


# ---------------------------------------------------------------------------
# wild adjacencies and the admissible-basis membership test
# ---------------------------------------------------------------------------

def wild_indices(alg, w):
    """1-based positions s where the last min(p_s, p_{s+1}) y column
    indices of factor s and the first as many x row indices of factor
    s+1 all equal m."""
    data = _ordered_factors(w)
    m = alg.m
    wild = set()
    for s in range(len(data) - 1):
        f1, p1, _, _ = data[s]
        f2, p2, _, _ = data[s + 1]
        window = min(p1, p2)
        ycols = [z.idx[1] for z in f1[len(f1) - window:]]
        xrows = [z.idx[0] for z in f2[:window]]
        if all(v == m for v in ycols) and all(v == m for v in xrows):
            wild.add(s + 1)
    return wild


def dxy_member(alg, w):
    """Sufficient conditions for an admissible word to lie in the
    transformed-completion basis: no factor carries the extreme index
    pair (n,n), and every wild adjacency steps strictly up with trailing
    unit index or strictly down with leading unit index.

    Returns a one-sided certificate: True guarantees membership.
    """
    if not is_admissible(w):
        raise ValueError(f"word {format_word(w)} is not admissible")
    data = _ordered_factors(w)
    n = alg.n
    ks = [xcols[-1] for _, _, xcols, _ in data]
    ls = [yfirsts[0] for _, _, _, yfirsts in data]
    ps = [p for _, p, _, _ in data]
    if any((k, l) == (n, n) for k, l in zip(ks, ls)):
        return False
    for s in wild_indices(alg, w):
        i = s - 1
        up = ps[i] < ps[i + 1] and ks[i] != 1 and ls[i] == 1
        down = ps[i] > ps[i + 1] and ks[i + 1] == 1 and ls[i + 1] != 1
        if not (up or down):
            return False
    return True


def _strip_wild_blocks(alg, w):
    """Delete the all-m balanced window at every wild adjacency (the
    transformation-inverse step)."""
    data = _ordered_factors(w)
    wild = wild_indices(alg, w)
    out = []
    for s, (f, p, _, _) in enumerate(data, start=1):
        head = 0
        tail = len(f)
        if s - 1 in wild:
            head = min(data[s - 2][1], p)
        if s in wild:
            tail -= min(p, data[s][1])
        out.extend(f[head:tail])
    return tuple(out)


def _strip_balanced_blocks(alg, w):
    """Delete every maximal y(1,m)^r x(m,1)^r segment (the
    completion-inverse step)."""
    m = alg.m
    ym, xm = y(1, m), x(m, 1)
    out = list(w)
    changed = True
    while changed:
        changed = False
        for i in range(len(out) - 1):
            if out[i] == ym and out[i + 1] == xm:
                a = i
                while a > 0 and out[a - 1] == ym:
                    a -= 1
                b = i + 1
                while b + 1 < len(out) and out[b + 1] == xm:
                    b += 1
                r = min(i - a + 1, b - i)
                del out[i - r + 1 : i + r + 1]
                changed = True
                break
    return tuple(out)


def cxy_member(alg, w):
    """True when w is the completion of an irreducible block word."""
    try:
        if not is_ordered(w):
            return False
        u = _strip_balanced_blocks(alg, w)
        block_data(u)
    except ValueError:
        return False
    return alg.system.is_irreducible_word(u) and completion(alg, u) == w


def completion_source(alg, w):
    """The unique irreducible word whose completion is w, or None."""
    try:
        u = _strip_balanced_blocks(alg, w)
        block_data(u)
    except ValueError:
        return None
    if alg.system.is_irreducible_word(u) and completion(alg, u) == w:
        return u
    return None


def dxy_source(alg, w):
    """Constructive witness for `dxy_member`: the irreducible word u with
    transformation(completion(u)) == w, or None if the reconstruction
    fails."""
    if not is_admissible(w):
        raise ValueError(f"word {format_word(w)} is not admissible")
    try:
        v = _strip_wild_blocks(alg, w)
        if not is_ordered(v) or transformation(alg, v) != w:
            return None
        u = _strip_balanced_blocks(alg, v)
        block_data(u)
    except ValueError:
        return None
    if not alg.system.is_irreducible_word(u):
        return None
    if completion(alg, u) != v:
        return None
    return u


# ---------------------------------------------------------------------------
# the ordered-word basis per block, and coordinates in it
# ---------------------------------------------------------------------------

def _chain_decorations(k):
    """Strictly increasing tuples from {1..k-1} (possible chain sizes)."""
    out = [()]
    for size in range(1, k):
        out = out + [t + (size,) for t in out if not t or t[-1] < size]
    return [tuple(t) for t in out]


def enumerate_cxy_block(alg, ks):
    """All completions whose skeleton has factor sizes (ks).

    Sources are block words whose sizes interleave (ks) with chain sizes
    before and cochain sizes after each entry; completions are filtered
    by their actual skeleton type.
    """
    if not ks:
        return (EMPTY,)
    source_blocks = {()}
    for k in ks:
        decorated = set()
        ups = _chain_decorations(k)
        downs = [tuple(reversed(t)) for t in ups]
        for prefix in source_blocks:
            for up in ups:
                for down in downs:
                    decorated.add(prefix + up + (k,) + down)
        source_blocks = decorated
    seen = {}
    for kappa in sorted(source_blocks):
        for u in enumerate_bxy_block(alg, kappa):
            w = completion(alg, u)
            if w not in seen and skeleton_type(alg, w) == tuple(ks):
                seen[w] = u
    return tuple(sorted(seen, key=word_key))


class IntegrityError(RuntimeError):
    """A base-change column left its block; the basis machinery is broken."""


def _bxy_key(w):
    ks = block_of(w)
    return (len(ks), ks, len(w), w)


def express_in_cbasis(alg, p):
    """Coordinates of a reduced element in the ordered-word basis.

    Peels the least irreducible support word b (block-major order),
    subtracts that coefficient times the normal form of the completion
    of b, and repeats; each step strictly raises the minimum because the
    completion's normal form is b plus larger words of b's block.
    """
    field = alg.field
    system = alg.system
    work = dict(p.terms)
    coords = {}
    guard = 0
    while work:
        guard += 1
        if guard > 10**6:
            raise IntegrityError("basis expansion did not terminate")
        b = min(work, key=_bxy_key)
        c = work[b]
        v = completion(alg, b)
        nfv = system.normal_form_word(v)
        if nfv.get(b) != field.one:
            raise IntegrityError(
                f"completion of {format_word(b)} is not unitriangular"
            )
        coords[v] = c
        for w2, c2 in nfv.items():
            total = work.get(w2, field.zero) - c * c2
            if total:
                work[w2] = total
            elif w2 in work:
                del work[w2]
    return coords


class BaseChange(NamedTuple):
    block: tuple
    mapping: str
    basis: tuple
    matrix: dict  # (row_word, col_word) -> coefficient
    unitriangular: bool

    def column(self, w):
        return {row: c for (row, col), c in self.matrix.items() if col == w}


def base_change_block(alg, ks, mapping="completion"):
    """Matrix of the completion or transformation map on one block.

    Basis words are ordered by length then lexicographically; the column
    of w expresses the reduced image of w in the block basis.  Support
    escaping the block raises IntegrityError.
    """
    ks = tuple(ks)
    field = alg.field
    matrix = {}
    unitriangular = True
    if mapping == "completion":
        basis = enumerate_bxy_block(alg, ks)
        for w in basis:
            col = alg.system.normal_form_word(completion(alg, w))
            for row, c in col.items():
                if block_of(row) != ks:
                    raise IntegrityError(
                        f"completion column of {format_word(w)} leaves block {ks}"
                    )
                matrix[(row, w)] = c
            unitriangular &= _column_unitriangular(col, w, word_key)
    elif mapping == "transformation":
        basis = enumerate_cxy_block(alg, ks)
        for w in basis:
            image = alg.nf(Poly.word(field, transformation(alg, w)))
            col = express_in_cbasis(alg, image)
            for row, c in col.items():
                if skeleton_type(alg, row) != ks:
                    raise IntegrityError(
                        f"transformation column of {format_word(w)} leaves block {ks}"
                    )
                matrix[(row, w)] = c
            unitriangular &= _column_unitriangular(col, w, word_key)
    else:
        raise ValueError(f"unknown base-change map {mapping!r}")
    return BaseChange(ks, mapping, basis, matrix, unitriangular)


def _column_unitriangular(col, w, key):
    one_ok = col.get(w) == 1
    return one_ok and all(row == w or key(row) > key(w) for row in col)


# ---------------------------------------------------------------------------
# streaming unitriangularity checks (for blocks too large to materialize)
# ---------------------------------------------------------------------------

class BlockCheck(NamedTuple):
    block: tuple
    mapping: str
    total: int
    fixed: int
    verified: int
    sampled: bool
    failures: tuple

    @property
    def ok(self):
        return not self.failures


def check_completion_block(alg, ks, limit=None, seed=0):
    """Verify the completion columns of one block are unitriangular.

    Ordered words are fixed points (their columns are identity by
    construction) and are only counted.  Moved words are checked
    exhaustively, or on a seeded sample when their number exceeds
    `limit`.
    """
    ks = tuple(ks)
    total = fixed = verified = 0
    sampled = False
    failures = []
    rng = random.Random(seed)
    moved_types = []
    for rs in _surplus_choices(ks):
        t = type_from_block(ks, rs)
        count = count_words_of_type(alg, t)
        total += count
        if all(r == 0 for r in rs):
            fixed += count
        else:
            moved_types.append((t, count))
    moved_total = sum(c for _, c in moved_types)
    budget = limit if limit is not None else moved_total

    def check(w):
        col = alg.system.normal_form_word(completion(alg, w))
        if col.get(w) != alg.field.one:
            return f"diagonal of {format_word(w)} is not 1"
        kw = word_key(w)
        for row in col:
            if row != w and word_key(row) <= kw:
                return f"column of {format_word(w)} has entry at {format_word(row)}"
            if block_of(row) != ks:
                return f"column of {format_word(w)} leaves the block"
        return None

    for t, count in moved_types:
        if moved_total <= budget:
            words = words_of_type(alg, t)
        else:
            sampled = True
            share = max(1, budget * count // max(moved_total, 1))
            words = sample_words_of_type(alg, t, min(share, count), rng)
        for w in words:
            verified += 1
            err = check(w)
            if err:
                failures.append(err)
    return BlockCheck(ks, "completion", total, fixed, verified, sampled, tuple(failures))


def check_transformation_block(alg, ks, source_slack=2, limit=None, seed=0):
    """Verify transformation columns over one ordered-word block.

    Covers the block members whose completion source has total size at
    most sum(ks) + source_slack; admissible words are fixed points and
    only counted.  Sampling applies per source profile when counts
    exceed `limit`.
    """
    ks = tuple(ks)
    field = alg.field
    rng = random.Random(seed)
    total = fixed = verified = 0
    sampled = False
    failures = []
    cap = sum(ks) + source_slack

    source_blocks = {()}
    for k in ks:
        decorated = set()
        ups = _chain_decorations(k)
        downs = [tuple(reversed(t)) for t in ups]
        for prefix in source_blocks:
            for up in ups:
                for down in downs:
                    kappa = prefix + up + (k,) + down
                    if sum(kappa) <= cap:
                        decorated.add(kappa)
        source_blocks = decorated

    def check(w):
        image = alg.nf(Poly.word(field, transformation(alg, w)))
        col = express_in_cbasis(alg, image)
        if col.get(w) != field.one:
            return f"diagonal of {format_word(w)} is not 1"
        kw = word_key(w)
        for row in col:
            if row != w and word_key(row) <= kw:
                return f"column of {format_word(w)} has entry at {format_word(row)}"
            if skeleton_type(alg, row) != ks:
                return f"column of {format_word(w)} leaves the block"
        return None

    seen = set()
    for kappa in sorted(source_blocks):
        per_type = []
        for rs in _surplus_choices(kappa):
            t = type_from_block(kappa, rs)
            per_type.append((t, count_words_of_type(alg, t)))
        kappa_total = sum(c for _, c in per_type)
        exhaustive = limit is None or kappa_total <= limit
        for t, count in per_type:
            if exhaustive:
                words = words_of_type(alg, t)
            else:
                sampled = True
                share = max(1, (limit * count) // max(kappa_total, 1))
                words = sample_words_of_type(alg, t, min(share, count), rng)
            for u in words:
                w = completion(alg, u)
                if w in seen or skeleton_type(alg, w) != ks:
                    continue
                seen.add(w)
                total += 1
                if is_admissible(w):
                    fixed += 1
                    continue
                verified += 1
                err = check(w)
                if err:
                    failures.append(err)
    return BlockCheck(
        ks, "transformation", total, fixed, verified, sampled, tuple(failures)
    )


# ---------------------------------------------------------------------------
# the xy/yx side exchange
# ---------------------------------------------------------------------------

def swap_side(w):
    """Exchange letter families keeping indices: the isomorphism between
    the xy side of type (m,n) and the yx side of type (n,m)."""
    out = []
    for letter in w:
        if letter.family == "x":
            out.append(y(*letter.idx))
        elif letter.family == "y":
            out.append(x(*letter.idx))
        else:
            raise ValueError(f"letter {letter} is not an x/y generator")
    return tuple(out)
