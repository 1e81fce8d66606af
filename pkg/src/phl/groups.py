"""Small finite groups and their subgroup structure.

Just enough group theory to drive the one-sorted action examples: explicit
multiplication tables, subgroup enumeration by closure, and subconjugacy
(some conjugate of H lands inside K), which is the hom-existence relation
between transitive actions G/H -> G/K.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass


@dataclass
class FiniteGroup:
    name: str
    elements: tuple
    table: dict  # (a, b) -> a*b

    def mul(self, a, b):
        return self.table[(a, b)]

    def identity(self):
        for e in self.elements:
            if all(self.mul(e, x) == x and self.mul(x, e) == x for x in self.elements):
                return e
        raise ValueError(f"group '{self.name}' has no identity")

    def inverse(self, a):
        e = self.identity()
        for b in self.elements:
            if self.mul(a, b) == e:
                return b
        raise ValueError(f"'{a}' has no inverse in '{self.name}'")


def _check_group(G: FiniteGroup) -> FiniteGroup:
    for a, b in itertools.product(G.elements, repeat=2):
        if G.table[(a, b)] not in G.elements:
            raise ValueError("table leaves the carrier")
    for a, b, c in itertools.product(G.elements, repeat=3):
        if G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c)):
            raise ValueError("table is not associative")
    G.identity()
    for a in G.elements:
        G.inverse(a)
    return G


def trivial_group() -> FiniteGroup:
    return FiniteGroup("triv", ("e",), {("e", "e"): "e"})


def cyclic_group(n: int, name: str = "") -> FiniteGroup:
    els = tuple("e" if i == 0 else f"g{i}" for i in range(n))
    table = {
        (els[i], els[j]): els[(i + j) % n]
        for i in range(n)
        for j in range(n)
    }
    return _check_group(FiniteGroup(name or f"c{n}", els, table))


def symmetric_3() -> FiniteGroup:
    """S3 presented by permutations of three points."""
    perms = list(itertools.permutations(range(3)))
    names = {}
    for p in perms:
        if p == (0, 1, 2):
            names[p] = "e"
        elif p == (1, 2, 0):
            names[p] = "r"
        elif p == (2, 0, 1):
            names[p] = "rr"
        elif p == (1, 0, 2):
            names[p] = "s"
        elif p == (0, 2, 1):
            names[p] = "sr"
        else:
            names[p] = "srr"
    compose = lambda p, q: tuple(p[q[i]] for i in range(3))
    table = {(names[p], names[q]): names[compose(p, q)] for p in perms for q in perms}
    order = ("e", "r", "rr", "s", "sr", "srr")
    return _check_group(FiniteGroup("s3", order, table))


def is_subgroup(G: FiniteGroup, subset: frozenset) -> bool:
    if G.identity() not in subset:
        return False
    for a, b in itertools.product(subset, repeat=2):
        if G.mul(a, b) not in subset:
            return False
    return True  # finite and closed under multiplication implies closed under inverse


def all_subgroups(G: FiniteGroup) -> list:
    """All subgroups, smallest first, in a deterministic order."""
    e = G.identity()
    rest = [x for x in G.elements if x != e]
    out = []
    for r in range(len(rest) + 1):
        for extra in itertools.combinations(rest, r):
            cand = frozenset((e,) + extra)
            if is_subgroup(G, cand):
                out.append(cand)
    return out


def conjugate_subgroup(G: FiniteGroup, g, H: frozenset) -> frozenset:
    gi = G.inverse(g)
    return frozenset(G.mul(G.mul(g, h), gi) for h in H)


def subconjugate(G: FiniteGroup, H: frozenset, K: frozenset) -> bool:
    """Some conjugate of H is contained in K."""
    return any(conjugate_subgroup(G, g, H) <= K for g in G.elements)


def cosets(G: FiniteGroup, H: frozenset) -> list:
    """Left cosets gH in a deterministic order (by first representative)."""
    seen = []
    for g in G.elements:
        c = frozenset(G.mul(g, h) for h in H)
        if c not in seen:
            seen.append(c)
    return seen


def subgroup_label(G: FiniteGroup, H: frozenset) -> str:
    members = [x for x in G.elements if x in H]
    return "{" + ",".join(members) + "}"
