"""Generic reduction machinery for free algebras.

A reduction system is a set of rules ``lhs -> rhs`` where the left side is
a nonempty word and the right side a polynomial.  Rules act inside any
word context, replacing a factor equal to ``lhs`` by ``rhs``.  The module
provides

* termination checking against a length-then-weight semigroup order,
* single-step reduction and normal forms (with an iteration budget),
* enumeration of overlap and inclusion ambiguities between rule left
  sides, and
* the diamond check: reduce both branches of every ambiguity to normal
  form and compare.

Systems are immutable after construction; normal forms of words are
memoised per strategy on the system object.
"""

from __future__ import annotations

import json
from typing import Callable, NamedTuple, Optional

from .freealg import Poly, format_poly, format_word, word_key

__all__ = [
    "Ambiguity",
    "DiamondEntry",
    "DiamondReport",
    "NonTermination",
    "OrderReport",
    "ReductionSystem",
    "Rule",
    "WeightSpec",
    "dump_rules",
]


class Rule(NamedTuple):
    lhs: tuple
    rhs: Poly

    def __str__(self):
        return f"{format_word(self.lhs)} -> {format_poly(self.rhs)}"


class WeightSpec(NamedTuple):
    """One or two positive letter weights, compared after word length."""

    primary: Callable
    secondary: Optional[Callable] = None

    def key(self, w):
        first = sum(self.primary(z) for z in w)
        if self.secondary is None:
            return (len(w), first)
        return (len(w), first, sum(self.secondary(z) for z in w))


class NonTermination(RuntimeError):
    """Raised when a normal-form computation exceeds its step budget."""


class Ambiguity(NamedTuple):
    """An overlap (w1 = a·b, w2 = b·c) or inclusion (w1 = b inside w2 = a·b·c)."""

    kind: str
    rule1: Rule
    rule2: Rule
    a: tuple
    b: tuple
    c: tuple

    @property
    def witness(self):
        """The shortest word on which both rules act."""
        return self.a + self.b + self.c


class OrderReport(NamedTuple):
    violations: tuple

    @property
    def ok(self):
        return not self.violations

    def to_json(self):
        return {
            "compatible": self.ok,
            "violations": [
                {"rule": str(rule), "monomial": format_word(mon)}
                for rule, mon in self.violations
            ],
        }


class DiamondEntry(NamedTuple):
    ambiguity: Ambiguity
    nf1: Poly
    nf2: Poly

    @property
    def resolved(self):
        return self.nf1 == self.nf2

    def to_json(self):
        amb = self.ambiguity
        return {
            "kind": amb.kind,
            "lhs1": format_word(amb.rule1.lhs),
            "lhs2": format_word(amb.rule2.lhs),
            "witness": format_word(amb.witness),
            "branch1_nf": format_poly(self.nf1),
            "branch2_nf": format_poly(self.nf2),
            "resolved": self.resolved,
        }


class DiamondReport(NamedTuple):
    entries: tuple

    @property
    def ok(self):
        return all(entry.resolved for entry in self.entries)

    @property
    def failures(self):
        return [entry for entry in self.entries if not entry.resolved]

    def to_json(self):
        return [entry.to_json() for entry in self.entries]


class ReductionSystem:
    """An alphabet description, a rule list and a termination weight spec."""

    def __init__(self, alphabet, rules, weights, field, max_steps=10**7):
        self.alphabet = alphabet
        self.rules = tuple(rules)
        self.weights = weights
        self.field = field
        self.max_steps = max_steps
        self.by_lhs = {}
        for rule in self.rules:
            if not rule.lhs:
                raise ValueError("rule with empty left side")
            if rule.lhs in self.by_lhs:
                raise ValueError(f"duplicate rule left side {format_word(rule.lhs)}")
            self.by_lhs[rule.lhs] = rule
        self.lhs_lengths = tuple(sorted({len(w) for w in self.by_lhs}))
        self._nf_cache = {"leftmost": {}, "rightmost": {}}

    def __repr__(self):
        return f"<ReductionSystem {self.alphabet}: {len(self.rules)} rules>"

    # -- single steps -------------------------------------------------------

    def find_redex(self, w, occurrence="leftmost"):
        """First (position, rule) whose lhs occurs in w, or None.

        Positions are scanned left to right (or right to left); at a fixed
        position shorter left sides win.
        """
        positions = range(len(w))
        if occurrence == "rightmost":
            positions = reversed(positions)
        for i in positions:
            for length in self.lhs_lengths:
                if i + length > len(w):
                    break
                rule = self.by_lhs.get(w[i : i + length])
                if rule is not None:
                    return i, rule
        return None

    def is_irreducible_word(self, w):
        return self.find_redex(w) is None

    def reduce_once(self, p, occurrence="leftmost"):
        """One reduction applied to the lowest reducible term of p.

        Returns ``(result, changed)``; irreducible input comes back
        unchanged with ``changed`` false.
        """
        for w in p.support():
            hit = self.find_redex(w, occurrence)
            if hit is None:
                continue
            i, rule = hit
            coeff = p.terms[w]
            prefix, suffix = w[:i], w[i + len(rule.lhs):]
            expansion = Poly.from_terms(
                self.field,
                [(prefix + mon + suffix, coeff * c) for mon, c in rule.rhs.terms.items()],
            )
            return p - Poly(self.field, {w: coeff}) + expansion, True
        return p, False

    # -- normal forms ---------------------------------------------------------

    def normal_form_word(self, w, occurrence="leftmost"):
        """Normal form of a single word as a terms dict, memoised.

        The fixed strategy rewrites the chosen occurrence once and recurses
        linearly over the resulting monomials; with a terminating system
        this is the reduction fixed point.
        """
        cache = self._nf_cache[occurrence]
        hit = cache.get(w)
        if hit is not None:
            return hit
        steps = 0
        stack = [w]
        while stack:
            top = stack[-1]
            if top in cache:
                stack.pop()
                continue
            redex = self.find_redex(top, occurrence)
            if redex is None:
                cache[top] = {top: self.field.one}
                stack.pop()
                continue
            steps += 1
            if steps > self.max_steps:
                raise NonTermination(
                    f"normal form of {format_word(w)} exceeded {self.max_steps} steps"
                )
            i, rule = redex
            prefix, suffix = top[:i], top[i + len(rule.lhs):]
            parts = {mon: prefix + mon + suffix for mon in rule.rhs.terms}
            missing = [pw for pw in parts.values() if pw not in cache]
            if missing:
                stack.extend(missing)
                continue
            acc = {}
            for mon, c in rule.rhs.terms.items():
                for w2, c2 in cache[parts[mon]].items():
                    prev = acc.get(w2)
                    total = c * c2 if prev is None else prev + c * c2
                    if total:
                        acc[w2] = total
                    elif prev is not None:
                        del acc[w2]
            cache[top] = acc
            stack.pop()
        return cache[w]

    def normal_form(self, p, occurrence="leftmost"):
        """The reduction fixed point of p (linear over terms)."""
        acc = {}
        for w, c in p.terms.items():
            for w2, c2 in self.normal_form_word(w, occurrence).items():
                prev = acc.get(w2)
                total = c * c2 if prev is None else prev + c * c2
                if total:
                    acc[w2] = total
                elif prev is not None:
                    del acc[w2]
        return Poly(self.field, acc)

    def mul(self, a, b):
        """Product followed by reduction; the quotient-algebra multiplication."""
        return self.normal_form(a * b)

    # -- order compatibility ---------------------------------------------------

    def word_less(self, u, v):
        """Strictly below in the length-then-weights partial order.

        Words of equal length and equal weights are incomparable, which is
        fine: compatibility only needs rhs monomials strictly below the lhs.
        """
        return self.weights.key(u) < self.weights.key(v)

    def check_compatible_order(self):
        """Check every rhs monomial sits strictly below its rule's lhs."""
        violations = []
        for rule in self.rules:
            lhs_key = self.weights.key(rule.lhs)
            for mon in rule.rhs.terms:
                if not self.weights.key(mon) < lhs_key:
                    violations.append((rule, mon))
        violations.sort(key=lambda pair: (word_key(pair[0].lhs), word_key(pair[1])))
        return OrderReport(tuple(violations))

    # -- ambiguities and the diamond check --------------------------------------

    def find_ambiguities(self):
        """All overlap and inclusion ambiguities among rule left sides."""
        ambiguities = []
        by_prefix = {}
        for rule in self.rules:
            w = rule.lhs
            for cut in range(1, len(w)):
                by_prefix.setdefault(w[:cut], []).append(rule)
        for rule1 in self.rules:
            w1 = rule1.lhs
            # overlaps: a nonempty proper suffix of w1 is a proper prefix of w2
            for cut in range(1, len(w1)):
                b = w1[cut:]
                for rule2 in by_prefix.get(b, ()):
                    ambiguities.append(
                        Ambiguity("overlap", rule1, rule2, w1[:cut], b, rule2.lhs[len(b):])
                    )
            # inclusions: w2 occurs properly inside w1
            for i in range(len(w1)):
                for length in self.lhs_lengths:
                    if length >= len(w1):
                        break
                    if i + length > len(w1):
                        break
                    rule2 = self.by_lhs.get(w1[i : i + length])
                    if rule2 is not None:
                        ambiguities.append(
                            Ambiguity(
                                "inclusion",
                                rule2,
                                rule1,
                                w1[:i],
                                rule2.lhs,
                                w1[i + length:],
                            )
                        )
        ambiguities.sort(
            key=lambda amb: (amb.kind, word_key(amb.witness), amb.rule1.lhs, amb.rule2.lhs)
        )
        return ambiguities

    def resolve(self, amb):
        """Reduce both branches of one ambiguity to normal form."""
        if amb.kind == "overlap":
            branch1 = amb.rule1.rhs * Poly.word(self.field, amb.c)
            branch2 = Poly.word(self.field, amb.a) * amb.rule2.rhs
        else:
            branch1 = (
                Poly.word(self.field, amb.a)
                * amb.rule1.rhs
                * Poly.word(self.field, amb.c)
            )
            branch2 = amb.rule2.rhs
        return DiamondEntry(amb, self.normal_form(branch1), self.normal_form(branch2))

    def check_diamond(self, ambiguities=None):
        """Resolve every ambiguity; an all-resolved report certifies
        confluence of the (truncated) rule set."""
        if ambiguities is None:
            ambiguities = self.find_ambiguities()
        return DiamondReport(tuple(self.resolve(amb) for amb in ambiguities))


def dump_rules(system):
    """One rule per line, `LHS -> POLY` in the standard text format."""
    return "\n".join(str(rule) for rule in system.rules)


def diamond_json(report):
    return json.dumps(report.to_json(), sort_keys=True, indent=2)
