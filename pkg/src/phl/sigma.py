"""Connected-component posets of model families.

Hom-existence between finitely many structures is a preorder (a quiver with
loops whose edges compose); condensing its strongly connected components
yields a finite poset.  The lattice of lower sets of that poset is what
families of models see, the subgroup side of the action examples gives an
independent route to the same posets, and the probe for the
ascending-chain condition asks whether some tail of a chain is mutually
connected.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .groups import (
    FiniteGroup,
    all_subgroups,
    subconjugate,
    subgroup_label,
)
from .homsearch import hom_exists
from .structures import ChainRecipe
from .syntax import BudgetError


@dataclass
class HomQuiver:
    labels: list
    edges: list  # adjacency matrix of bools, loops included


def build_hom_quiver(structures: list, labels: Optional[list] = None) -> HomQuiver:
    n = len(structures)
    labels = list(labels) if labels is not None else [
        X.name or f"m{i}" for i, X in enumerate(structures)
    ]
    edges = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                edges[i][j] = True
            else:
                edges[i][j] = hom_exists(structures[i], structures[j])
    return HomQuiver(labels, edges)


@dataclass
class SigmaPoset:
    labels: list  # one label per component
    components: list  # tuples of vertex indices
    leq: frozenset  # pairs (i, j) of component indices, reflexive and transitive

    def __len__(self):
        return len(self.components)

    def rel(self) -> set:
        return set(self.leq)


def _tarjan(edges: list) -> list:
    """Strongly connected components; vertices visited in index order."""
    n = len(edges)
    index = {}
    low = {}
    stack = []
    onstack = set()
    out = []
    counter = itertools.count()

    def strongconnect(v):
        index[v] = low[v] = next(counter)
        stack.append(v)
        onstack.add(v)
        for w in range(n):
            if not edges[v][w] or w == v:
                continue
            if w not in index:
                strongconnect(w)
                low[v] = min(low[v], low[w])
            elif w in onstack:
                low[v] = min(low[v], index[w])
        if low[v] == index[v]:
            comp = []
            while True:
                w = stack.pop()
                onstack.discard(w)
                comp.append(w)
                if w == v:
                    break
            out.append(tuple(sorted(comp)))

    for v in range(n):
        if v not in index:
            strongconnect(v)
    return out


def condense_sigma(quiver: HomQuiver) -> SigmaPoset:
    """Poset of strongly connected components, ordered by reachability.

    The input edges need not be transitively closed; reachability supplies
    the missing composites.
    """
    comps = sorted(_tarjan(quiver.edges), key=lambda c: c[0])
    comp_of = {}
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    m = len(comps)
    reach = [[False] * m for _ in range(m)]
    for ci in range(m):
        reach[ci][ci] = True
    for v in range(len(quiver.edges)):
        for w in range(len(quiver.edges)):
            if quiver.edges[v][w]:
                reach[comp_of[v]][comp_of[w]] = True
    for k in range(m):
        for i in range(m):
            if reach[i][k]:
                for j in range(m):
                    if reach[k][j]:
                        reach[i][j] = True
    leq = frozenset((i, j) for i in range(m) for j in range(m) if reach[i][j])
    labels = ["[" + ",".join(str(quiver.labels[v]) for v in comp) + "]" for comp in comps]
    return SigmaPoset(labels, comps, leq)


def sigma_of_structures(structures: list, labels: Optional[list] = None) -> SigmaPoset:
    return condense_sigma(build_hom_quiver(structures, labels))


# ---------------------------------------------------------------------------
# poset utilities


def is_chain(P: SigmaPoset) -> bool:
    n = len(P)
    return all((i, j) in P.leq or (j, i) in P.leq for i in range(n) for j in range(n))


def poset_iso(P: SigmaPoset, Q: SigmaPoset, budget: int = 200000) -> bool:
    """Backtracking isomorphism test; candidates are pruned by up/down
    degree so only same-signature elements are ever matched."""
    n = len(P)
    if n != len(Q):
        return False

    def degrees(R):
        return [
            (sum(1 for j in range(n) if (i, j) in R.leq),
             sum(1 for j in range(n) if (j, i) in R.leq))
            for i in range(n)
        ]

    dp, dq = degrees(P), degrees(Q)
    if sorted(dp) != sorted(dq):
        return False
    candidates = [[j for j in range(n) if dq[j] == dp[i]] for i in range(n)]
    image = [-1] * n
    used = [False] * n
    steps = 0

    def place(i):
        nonlocal steps
        if i == n:
            return True
        for j in candidates[i]:
            if used[j]:
                continue
            steps += 1
            if steps > budget:
                raise BudgetError(f"poset isomorphism search past {budget} steps")
            if any(((a, i) in P.leq) != ((image[a], j) in Q.leq)
                   or ((i, a) in P.leq) != ((j, image[a]) in Q.leq)
                   for a in range(i)):
                continue
            image[i] = j
            used[j] = True
            if place(i + 1):
                return True
            used[j] = False
            image[i] = -1
        return False

    return place(0)


def poset_product(P: SigmaPoset, Q: SigmaPoset) -> SigmaPoset:
    pairs = [(i, j) for i in range(len(P)) for j in range(len(Q))]
    leq = frozenset(
        (a, b)
        for a, (i, j) in enumerate(pairs)
        for b, (k, l) in enumerate(pairs)
        if (i, k) in P.leq and (j, l) in Q.leq
    )
    labels = [f"({P.labels[i]},{Q.labels[j]})" for i, j in pairs]
    return SigmaPoset(labels, [(a,) for a in range(len(pairs))], leq)


def quiver_tensor(A: HomQuiver, B: HomQuiver) -> HomQuiver:
    """Product quiver: pairs with componentwise edges."""
    pairs = [(i, j) for i in range(len(A.labels)) for j in range(len(B.labels))]
    labels = [f"({A.labels[i]},{B.labels[j]})" for i, j in pairs]
    edges = [
        [A.edges[i][k] and B.edges[j][l] for (k, l) in pairs]
        for (i, j) in pairs
    ]
    return HomQuiver(labels, edges)


def sub_poset(P: SigmaPoset, keep: list) -> SigmaPoset:
    idx = {c: i for i, c in enumerate(keep)}
    leq = frozenset((idx[a], idx[b]) for (a, b) in P.leq if a in idx and b in idx)
    return SigmaPoset([P.labels[c] for c in keep], [P.components[c] for c in keep], leq)


# ---------------------------------------------------------------------------
# lower sets


def lower_sets(P: SigmaPoset) -> list:
    """All lower sets, smallest first; guarded against blowup."""
    n = len(P)
    if n > 20:
        raise BudgetError(f"lower set enumeration over 2^{n} subsets")
    down = [frozenset(j for j in range(n) if (j, i) in P.leq) for i in range(n)]
    out = []
    for mask in range(1 << n):
        S = frozenset(i for i in range(n) if mask >> i & 1)
        if all(down[i] <= S for i in S):
            out.append(S)
    out.sort(key=lambda S: (len(S), sorted(S)))
    return out


def maximal_elements(P: SigmaPoset, S: frozenset) -> frozenset:
    """Generators of a lower set: its maximal elements."""
    return frozenset(
        i for i in S
        if not any(j != i and (i, j) in P.leq for j in S)
    )


@dataclass
class LowerSetLattice:
    base: SigmaPoset
    sets: list  # lower sets as frozensets of base component indices
    poset: SigmaPoset  # the lattice, ordered by inclusion

    def generators(self, idx: int) -> frozenset:
        return maximal_elements(self.base, self.sets[idx])


def lower_set_lattice(P: SigmaPoset) -> LowerSetLattice:
    sets = lower_sets(P)
    leq = frozenset(
        (a, b) for a, S in enumerate(sets) for b, T in enumerate(sets) if S <= T
    )
    labels = [
        "{" + ",".join(P.labels[i] for i in sorted(S)) + "}" for S in sets
    ]
    lattice = SigmaPoset(labels, [(a,) for a in range(len(sets))], leq)
    return LowerSetLattice(P, sets, lattice)


# ---------------------------------------------------------------------------
# ascending chain probe


@dataclass
class AccResult:
    stabilized: bool
    stage: Optional[int]
    horizon: int
    witness: Optional[tuple]  # (m, n) with no hom from stage m to stage n

    def describe(self) -> str:
        if self.stabilized:
            return f"stabilized at stage {self.stage} (horizon {self.horizon})"
        m, n = self.witness
        return (f"no stabilization up to horizon {self.horizon}: "
                f"no homomorphism from stage {m} to stage {n}")


def acc_probe(chain: ChainRecipe, horizon: int) -> AccResult:
    """Search for a tail of the chain that is mutually connected.

    Reports the least N < horizon such that every pair of stages in
    [N, horizon] has homomorphisms both ways; N = horizon would be vacuous,
    so failing that the verdict is no-stabilization with a concrete
    unconnected pair from the inspected tail.
    """
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    stages = [chain.structure_at(n) for n in range(horizon + 1)]
    conn = [[True] * (horizon + 1) for _ in range(horizon + 1)]
    for m in range(horizon + 1):
        for n in range(horizon + 1):
            if m != n:
                conn[m][n] = hom_exists(stages[m], stages[n])
    for N in range(horizon):
        if all(conn[m][n] for m in range(N, horizon + 1) for n in range(N, horizon + 1)):
            return AccResult(True, N, horizon, None)
    for m in range(horizon - 1, horizon + 1):
        for n in range(horizon - 1, horizon + 1):
            if not conn[m][n]:
                return AccResult(False, None, horizon, (m, n))
    raise AssertionError("unreachable: tail connected but no stage accepted")


# ---------------------------------------------------------------------------
# families of objects


@dataclass
class FamReport:
    computed: SigmaPoset
    expected: SigmaPoset
    iso: bool
    note: str


def fam_quiver(base: HomQuiver, m: int) -> HomQuiver:
    """Families of at most m base vertices; a family maps into another when
    each member maps to some member of the target (the empty family maps
    everywhere)."""
    n = len(base.labels)
    fams = []
    for r in range(min(m, n) + 1):
        fams.extend(itertools.combinations(range(n), r))
    labels = ["{" + ",".join(str(base.labels[i]) for i in S) + "}" for S in fams]
    edges = [
        [all(any(base.edges[a][b] for b in T) for a in S) for T in fams]
        for S in fams
    ]
    return HomQuiver(labels, edges)


def verify_fam_theorem(base: HomQuiver, m: int) -> FamReport:
    """sigma of bounded families against lower sets of sigma of the base.

    Families of size at most m condense onto the lower sets of the base
    poset that are generated by at most m elements; when m is at least the
    width of the base poset that is the whole lower set lattice.
    """
    computed = condense_sigma(fam_quiver(base, m))
    base_poset = condense_sigma(base)
    lattice = lower_set_lattice(base_poset)
    keep = [
        i for i, S in enumerate(lattice.sets)
        if len(maximal_elements(base_poset, S)) <= m
    ]
    expected = sub_poset(lattice.poset, keep)
    ok = poset_iso(computed, expected)
    note = (f"families of size <= {m} over {len(base.labels)} vertices; "
            f"expected {len(expected)} lower sets")
    return FamReport(computed, expected, ok, note)


# ---------------------------------------------------------------------------
# subgroup side of the action examples


def subgroup_category(G: FiniteGroup) -> tuple:
    """Quiver of subgroups with an edge H -> K when some conjugate of H lies
    in K; this mirrors equivariant maps between the transitive actions on
    cosets, so its condensation is the conjugacy-class poset."""
    subs = all_subgroups(G)
    labels = [subgroup_label(G, H) for H in subs]
    edges = [[subconjugate(G, H, K) for K in subs] for H in subs]
    return HomQuiver(labels, edges), subs


@dataclass
class GsetReport:
    group: str
    k: int
    representatives: int
    components: int
    iso: bool
    note: str


def gset_sigma_check(G: FiniteGroup, k: int) -> GsetReport:
    """Dual-route check for action models bounded by k.

    Model side: one representative per realizable set of orbit types (a
    disjoint union with one orbit per conjugacy class), compared by honest
    homomorphism search.  Subgroup side: lower sets of the conjugacy-class
    poset.  The two posets must agree whenever k admits one orbit of every
    class, since any bounded model is a sum of orbits and maps exactly onto
    the down-closure of its orbit types.
    """
    from .corpus import gset_orbit_structure, gset_theory
    from .structures import disjoint_union, is_model

    theory = gset_theory(G)
    quiver, subs = subgroup_category(G)
    class_poset = condense_sigma(quiver)
    # one representative subgroup per conjugacy class, largest orbits first
    class_reps = [subs[comp[0]] for comp in class_poset.components]
    weights = [len(G.elements) // len(H) for H in class_reps]
    if sum(weights) > k:
        raise BudgetError(
            f"bound {k} cannot realize one orbit of every class (needs {sum(weights)})")
    reps = []
    labels = []
    for mask in range(1 << len(class_reps)):
        chosen = [i for i in range(len(class_reps)) if mask >> i & 1]
        if sum(weights[i] for i in chosen) > k:
            continue
        orbits = [gset_orbit_structure(G, class_reps[i], tag=i) for i in chosen]
        X, _ = disjoint_union(theory, orbits, name="+".join(str(i) for i in chosen))
        assert is_model(X), "orbit sums must satisfy the action axioms"
        reps.append(X)
        labels.append("{" + ",".join(class_poset.labels[i] for i in chosen) + "}")
    model_poset = sigma_of_structures(reps, labels)
    lattice = lower_set_lattice(class_poset)
    # a lower set is realizable when one orbit per generator fits in the bound
    keep = [
        i for i, S in enumerate(lattice.sets)
        if sum(weights[j] for j in maximal_elements(class_poset, S)) <= k
    ]
    expected = sub_poset(lattice.poset, keep)
    ok = poset_iso(model_poset, expected)
    note = (f"{len(reps)} representatives of orbit-type sets within bound {k}; "
            f"subgroup side has {len(expected)} realizable lower sets")
    return GsetReport(G.name, k, len(reps), len(model_poset), ok, note)
