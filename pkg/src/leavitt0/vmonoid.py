"""Commutative monoid presentations and the invariant-basis-number check.

Presentations are finite generator lists with relations between
non-negative integer combinations (multisets) of generators.  The
toolkit builds the presentation attached to a Bergman graph (one
generator per vertex, one relation per hyperedge and per edge), removes
redundant generators, glues two presentations along elements, explores
the congruence by breadth-first search, and certifies rank separation
through the exact monoid homomorphism v_p -> (m/n)^p.
"""

from __future__ import annotations

import json
from collections import deque
from fractions import Fraction
from typing import NamedTuple

__all__ = [
    "IbnCertificate",
    "Presentation",
    "ReachResult",
    "chain_presentation",
    "ibn_certificate",
    "presentations_match",
    "pushout",
    "reachable",
    "rename",
    "tietze_reduce",
    "vmonoid_of_bergman",
]


def _canon(element):
    """Multisets are dicts generator -> positive count."""
    out = {}
    for g, c in element.items():
        if c < 0:
            raise ValueError(f"negative count for generator {g!r}")
        if c:
            out[g] = c
    return out


def _key(element):
    return tuple(sorted(element.items()))


def _add(a, b):
    out = dict(a)
    for g, c in b.items():
        out[g] = out.get(g, 0) + c
    return out


def _sub(a, b):
    """a - b, or None when b is not contained in a."""
    out = dict(a)
    for g, c in b.items():
        have = out.get(g, 0)
        if have < c:
            return None
        if have == c:
            del out[g]
        else:
            out[g] = have - c
    return out


class Presentation(NamedTuple):
    generators: tuple
    relations: tuple  # pairs of element dicts

    def validate(self):
        gens = set(self.generators)
        for lhs, rhs in self.relations:
            for side in (lhs, rhs):
                missing = set(side) - gens
                if missing:
                    raise ValueError(f"relation uses undeclared generators {missing}")
        return self

    def relation_keys(self):
        return sorted(
            tuple(sorted((_key(l), _key(r)))) for l, r in self.relations
        )

    def to_json(self):
        return {
            "generators": list(self.generators),
            "relations": [[dict(l), dict(r)] for l, r in self.relations],
        }

    @classmethod
    def from_json(cls, data):
        gens = tuple(data["generators"])
        rels = tuple(
            (_canon(l), _canon(r)) for l, r in data["relations"]
        )
        return cls(gens, rels).validate()


def presentation(generators, relations):
    return Presentation(
        tuple(generators),
        tuple((_canon(l), _canon(r)) for l, r in relations),
    ).validate()


def presentations_match(p1, p2):
    """Isomorphism by generator matching: pair the sorted generator lists
    and compare the induced relation sets."""
    if len(p1.generators) != len(p2.generators):
        return False
    mapping = dict(zip(sorted(p1.generators), sorted(p2.generators)))
    renamed = rename(p1, mapping)
    return renamed.relation_keys() == p2.relation_keys()


def rename(p, mapping):
    gens = tuple(mapping.get(g, g) for g in p.generators)
    if len(set(gens)) != len(gens):
        raise ValueError("renaming collapses generators")
    rels = tuple(
        (
            {mapping.get(g, g): c for g, c in l.items()},
            {mapping.get(g, g): c for g, c in r.items()},
        )
        for l, r in p.relations
    )
    return Presentation(gens, rels)


# ---------------------------------------------------------------------------
# construction from a Bergman graph
# ---------------------------------------------------------------------------

def vmonoid_of_bergman(graph):
    """One generator per vertex; each blue hyperedge equates m copies of
    its source with the sum of its ranges, each red edge equates its two
    endpoints."""
    relations = []
    for _, sources, ranges in graph.blue:
        lhs = {}
        for v in sources:
            lhs[v] = lhs.get(v, 0) + 1
        rhs = {}
        for v in ranges:
            rhs[v] = rhs.get(v, 0) + 1
        relations.append((lhs, rhs))
    for _, src, dst in graph.red:
        relations.append(({src: 1}, {dst: 1}))
    return presentation(graph.vertices, relations)


# ---------------------------------------------------------------------------
# Tietze reduction
# ---------------------------------------------------------------------------

def _substitute(element, gen, value):
    count = element.get(gen)
    if not count:
        return dict(element)
    out = {g: c for g, c in element.items() if g != gen}
    for g, c in value.items():
        out[g] = out.get(g, 0) + c * count
    return out


def tietze_reduce(p):
    """Repeatedly remove a generator that some relation equates with an
    expression not involving it, substituting the expression everywhere.

    The left side of the first eligible relation is eliminated first, so
    `a = b` removes a and keeps b.  Trivial relations are dropped.
    """
    gens = list(p.generators)
    rels = [(dict(l), dict(r)) for l, r in p.relations]
    while True:
        victim = None
        for idx, (lhs, rhs) in enumerate(rels):
            for side, other in ((lhs, rhs), (rhs, lhs)):
                if len(side) == 1:
                    (g, c), = side.items()
                    if c == 1 and g not in other:
                        victim = (idx, g, other)
                        break
            if victim:
                break
        if not victim:
            break
        idx, g, value = victim
        del rels[idx]
        rels = [
            (_substitute(l, g, value), _substitute(r, g, value)) for l, r in rels
        ]
        rels = [(l, r) for l, r in rels if l != r]
        gens.remove(g)
    return presentation(gens, rels)


# ---------------------------------------------------------------------------
# pushouts
# ---------------------------------------------------------------------------

def pushout(p1, p2, glue=()):
    """Disjoint union of generators and relations plus one relation per
    glue pair (an element of each side)."""
    overlap = set(p1.generators) & set(p2.generators)
    if overlap:
        raise ValueError(f"generator names collide: {sorted(overlap)}")
    gens = p1.generators + p2.generators
    rels = list(p1.relations) + list(p2.relations)
    for left, right in glue:
        rels.append((_canon(left), _canon(right)))
    return presentation(gens, rels)


def chain_presentation(m, n, z, prefix="v", start=0):
    """The target shape: generators v_start..v_{start+z} with
    m*v_{p-1} = n*v_p at each step."""
    gens = [f"{prefix}{p}" for p in range(start, start + z + 1)]
    rels = [
        ({f"{prefix}{p - 1}": m}, {f"{prefix}{p}": n})
        for p in range(start + 1, start + z + 1)
    ]
    return presentation(gens, rels)


# ---------------------------------------------------------------------------
# reachability
# ---------------------------------------------------------------------------

class ReachResult(NamedTuple):
    status: str  # yes | no-within-depth | inconclusive
    depth_reached: int
    states_explored: int

    @property
    def found(self):
        return self.status == "yes"

    def to_json(self):
        return dict(self._asdict())


def reachable(p, a, b, depth, max_states=200_000):
    """Breadth-first closure of `a` under two-sided relation application.

    Relations apply to sub-multisets: any occurrence of one side inside
    the state may be traded for the other side.  Exceeding the state
    budget is reported as inconclusive, never as a refutation.
    """
    a, b = _canon(a), _canon(b)
    start, goal = _key(a), _key(b)
    if start == goal:
        return ReachResult("yes", 0, 1)
    moves = []
    for lhs, rhs in p.relations:
        moves.append((lhs, rhs))
        moves.append((rhs, lhs))
    seen = {start}
    frontier = deque([(a, 0)])
    explored = 1
    while frontier:
        state, d = frontier.popleft()
        if d == depth:
            continue
        for take, give in moves:
            rest = _sub(state, take)
            if rest is None:
                continue
            nxt = _add(rest, give)
            key = _key(nxt)
            if key in seen:
                continue
            if key == goal:
                return ReachResult("yes", d + 1, explored + 1)
            seen.add(key)
            explored += 1
            if explored > max_states:
                return ReachResult("inconclusive", d + 1, explored)
            frontier.append((nxt, d + 1))
    return ReachResult("no-within-depth", depth, explored)


# ---------------------------------------------------------------------------
# the IBN certificate
# ---------------------------------------------------------------------------

class IbnCertificate(NamedTuple):
    m: int
    n: int
    k: int
    l: int
    window: int
    relations_respected: bool
    mu_k: Fraction
    mu_l: Fraction

    @property
    def separated(self):
        return self.relations_respected and self.mu_k != self.mu_l

    @property
    def verdict(self):
        if self.k == self.l:
            return "equal-ranks"
        return "distinct" if self.separated else "no-certificate"

    def to_json(self):
        return {
            "m": self.m,
            "n": self.n,
            "k": self.k,
            "l": self.l,
            "window": self.window,
            "relations_respected": self.relations_respected,
            "mu_k": str(self.mu_k),
            "mu_l": str(self.mu_l),
            "verdict": self.verdict,
        }


def ibn_certificate(m, n, k, l, window=3):
    """Evaluate v_p -> (m/n)^p on the two-sided chain presentation.

    Every relation m*v_p = n*v_{p+1} maps to the exact rational identity
    m*(m/n)^p = n*(m/n)^{p+1}; the images of k*v_0 and l*v_0 are k and l,
    so distinct ranks are never congruent.
    """
    if k < 1 or l < 1:
        raise ValueError("ranks must be positive")
    mu = {p: Fraction(m, n) ** p for p in range(-window, window + 1)}
    respected = all(
        m * mu[p] == n * mu[p + 1] for p in range(-window, window)
    )
    return IbnCertificate(m, n, k, l, window, respected, k * mu[0], l * mu[0])


def presentation_json(p):
    return json.dumps(p.to_json(), sort_keys=True, indent=2)
