"""Bounded model universes and closure operators on classes of models.

A universe holds, up to isomorphism, every model of a theory whose carriers
all stay within a size bound k.  Classes of members are closed under three
operators: finite products (with the empty product, the terminal model),
closed substructures, and images of local retractions.  Everything is
computed inside the bounded universe, so fixpoints certify closure at the
inspected scale, nothing beyond it; the chain examples show how a colimit
can escape a bounded fixpoint.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import os
import random
from dataclasses import dataclass, field
from typing import Optional

from .homsearch import enumerate_homs, iter_homs, local_retraction_check
from .structures import (
    PartialStructure,
    canonical_key,
    is_closed_mono,
    is_surjective,
    product,
    reduct,
    reduct_hom,
    sequent_witness,
    structure_from_json,
    structure_size,
    structure_to_json,
)
from .syntax import (
    BudgetError,
    Sequent,
    Theory,
    TheoryMorphism,
    print_theory,
    sequent_symbols,
    translate_sequent,
    validate_morphism,
)


@dataclass
class ModelUniverse:
    theory: Theory
    k: int
    members: list
    keys: list
    index: dict = field(default_factory=dict)
    _hom_lists: dict = field(default_factory=dict, repr=False)
    _closed_sub: dict = field(default_factory=dict, repr=False)
    _locret: dict = field(default_factory=dict, repr=False)

    def __len__(self):
        return len(self.members)

    def homs(self, i: int, j: int) -> list:
        if (i, j) not in self._hom_lists:
            self._hom_lists[(i, j)] = enumerate_homs(self.members[i], self.members[j])
        return self._hom_lists[(i, j)]


def theory_hash(theory: Theory) -> str:
    return hashlib.sha256(print_theory(theory).encode()).hexdigest()[:16]


def enumerate_models(theory: Theory, k: int, cache_dir: Optional[str] = None,
                     visit_budget: int = 40_000_000) -> ModelUniverse:
    """All models with every carrier of size at most k, up to isomorphism.

    Tables are assigned symbol by symbol in declaration order and an axiom is
    checked as soon as all its symbols are assigned, so totality and the like
    prune early.  Members are deduplicated by canonical key and sorted by
    size, making the universe deterministic.
    """
    if cache_dir is not None:
        cached = load_universe(theory, k, cache_dir)
        if cached is not None:
            return cached
    sig = theory.signature
    symbols = [("fn", f) for f in sig.functions] + [("rel", r) for r in sig.relations]
    stage_axioms = {i: [] for i in range(len(symbols) + 1)}
    for seq in theory.axioms:
        fns, rels = sequent_symbols(seq)
        need = fns | rels
        stage = 0
        for i, (_, name) in enumerate(symbols):
            if name in need:
                stage = i + 1
        stage_axioms[stage].append(seq)

    found = {}
    order = []
    visits = 0

    def tables_for(X, kind, name):
        if kind == "fn":
            argsorts, result = sig.functions[name]
            argspace = list(itertools.product(*(X.carrier(s) for s in argsorts)))
            choices = (None,) + X.carrier(result)
            for values in itertools.product(choices, repeat=len(argspace)):
                yield {args: v for args, v in zip(argspace, values) if v is not None}
        else:
            argsorts = sig.relations[name]
            tuplespace = list(itertools.product(*(X.carrier(s) for s in argsorts)))
            for flags in itertools.product((False, True), repeat=len(tuplespace)):
                yield {t for t, f in zip(tuplespace, flags) if f}

    def assign(X, i):
        nonlocal visits
        if i == len(symbols):
            key = canonical_key(X)
            if key not in found:
                found[key] = PartialStructure(
                    theory,
                    dict(X.carriers),
                    {f: dict(t) for f, t in X.functions.items()},
                    {r: set(t) for r, t in X.relations.items()},
                )
                order.append(key)
            return
        kind, name = symbols[i]
        for table in tables_for(X, kind, name):
            visits += 1
            if visits > visit_budget:
                raise BudgetError(
                    f"model enumeration for '{theory.name}' at k={k} exceeded "
                    f"{visit_budget} candidate tables")
            if kind == "fn":
                X.functions[name] = table
            else:
                X.relations[name] = table
            if all(sequent_witness(X, seq) is None for seq in stage_axioms[i + 1]):
                assign(X, i + 1)
        if kind == "fn":
            X.functions[name] = {}
        else:
            X.relations[name] = set()

    for sizes in itertools.product(range(k + 1), repeat=len(sig.sorts)):
        carriers = {s: tuple(str(x) for x in range(n)) for s, n in zip(sig.sorts, sizes)}
        X = PartialStructure(theory, carriers, {f: {} for f in sig.functions},
                             {r: set() for r in sig.relations})
        if any(sequent_witness(X, seq) is not None for seq in stage_axioms[0]):
            continue
        assign(X, 0)

    order.sort(key=lambda key: (structure_size(found[key]), key))
    members = []
    keys = []
    index = {}
    for pos, key in enumerate(order):
        X = found[key]
        X.name = f"{theory.name}#{pos}"
        members.append(X)
        keys.append(key)
        index[key] = pos
    U = ModelUniverse(theory, k, members, keys, index)
    if cache_dir is not None:
        save_universe(U, cache_dir)
    return U


# ---------------------------------------------------------------------------
# universe cache


def universe_cache_path(theory: Theory, k: int, cache_dir: str) -> str:
    return os.path.join(cache_dir, f"{theory.name}-{theory_hash(theory)}-k{k}.jsonl")


def save_universe(U: ModelUniverse, cache_dir: str) -> str:
    os.makedirs(cache_dir, exist_ok=True)
    path = universe_cache_path(U.theory, U.k, cache_dir)
    with open(path, "w") as fh:
        fh.write(json.dumps({"theory": U.theory.name, "hash": theory_hash(U.theory),
                             "k": U.k, "members": len(U.members)}) + "\n")
        for key, X in zip(U.keys, U.members):
            fh.write(json.dumps({"key": key, "structure": structure_to_json(X)},
                                sort_keys=True) + "\n")
    return path


def load_universe(theory: Theory, k: int, cache_dir: str) -> Optional[ModelUniverse]:
    path = universe_cache_path(theory, k, cache_dir)
    if not os.path.exists(path):
        return None
    with open(path) as fh:
        lines = [json.loads(line) for line in fh if line.strip()]
    head = lines[0]
    if head.get("hash") != theory_hash(theory) or head.get("k") != k:
        return None
    members = []
    keys = []
    index = {}
    for row in lines[1:]:
        X = structure_from_json(row["structure"], theory)
        X.name = f"{theory.name}#{len(members)}"
        index[row["key"]] = len(members)
        members.append(X)
        keys.append(row["key"])
    return ModelUniverse(theory, k, members, keys, index)


# ---------------------------------------------------------------------------
# classes of members


@dataclass(frozen=True)
class ModelClass:
    universe: ModelUniverse
    indices: frozenset

    def members(self) -> list:
        return [self.universe.members[i] for i in sorted(self.indices)]

    def with_indices(self, indices) -> "ModelClass":
        return ModelClass(self.universe, frozenset(indices))


def class_of(universe: ModelUniverse, structures: list) -> ModelClass:
    idx = set()
    for X in structures:
        key = canonical_key(X)
        if key not in universe.index:
            raise ValueError(f"structure '{X.name}' is not a member of the universe")
        idx.add(universe.index[key])
    return ModelClass(universe, frozenset(idx))


def definable_class(universe: ModelUniverse, sequents: list) -> ModelClass:
    idx = frozenset(
        i for i, X in enumerate(universe.members)
        if all(sequent_witness(X, seq) is None for seq in sequents)
    )
    return ModelClass(universe, idx)


# ---------------------------------------------------------------------------
# closure operators


def closure_P(mc: ModelClass, arity_cap: int = 4) -> ModelClass:
    """Close under finite products that stay inside the universe bound.

    Products are formed directly at every arity up to the cap, because in a
    multi-sorted universe the factors of a bounded n-ary product need not
    have bounded intermediate products.  The empty product is the terminal
    model and is always added.
    """
    U = mc.universe
    S = set(mc.indices)
    terminal = product(U.theory, [])
    t_key = canonical_key(terminal)
    if t_key not in U.index:
        raise AssertionError("terminal structure missing from the universe")
    S.add(U.index[t_key])
    changed = True
    while changed:
        changed = False
        base = sorted(S)
        for r in range(2, arity_cap + 1):
            for combo in itertools.combinations_with_replacement(base, r):
                factors = [U.members[i] for i in combo]
                if any(
                    _size_product(factors, s) > U.k
                    for s in U.theory.signature.sorts
                ):
                    continue
                P = product(U.theory, factors)
                key = canonical_key(P)
                idx = U.index.get(key)
                assert idx is not None, "bounded product of models must be a model"
                if idx not in S:
                    S.add(idx)
                    changed = True
    return mc.with_indices(S)


def _size_product(factors: list, sort: str) -> int:
    n = 1
    for F in factors:
        n *= len(F.carrier(sort))
    return n


def closed_sub_edge(U: ModelUniverse, i: int, j: int) -> bool:
    """Does member i embed into member j as a closed substructure?"""
    if (i, j) not in U._closed_sub:
        found = False
        for h in iter_homs(U.members[i], U.members[j], injective=True):
            if is_closed_mono(h):
                found = True
                break
        U._closed_sub[(i, j)] = found
    return U._closed_sub[(i, j)]


def closure_Sc(mc: ModelClass) -> ModelClass:
    U = mc.universe
    S = set(mc.indices)
    changed = True
    while changed:
        changed = False
        for i in range(len(U.members)):
            if i in S:
                continue
            if any(closed_sub_edge(U, i, j) for j in sorted(S)):
                S.add(i)
                changed = True
    return mc.with_indices(S)


def locret_edge(U: ModelUniverse, i: int, j: int,
                rho: Optional[TheoryMorphism] = None) -> bool:
    """Does some homomorphism member i -> member j pass the local
    retraction probes?  Probes are the whole universe (its reducts, when a
    theory morphism is supplied)."""
    cache_key = (i, j, rho.name if rho is not None else None)
    if cache_key not in U._locret:
        if rho is None:
            probes = U.members
        else:
            probes = [reduct(rho, X) for X in U.members]
        found = None
        for p in U.homs(i, j):
            q = p if rho is None else reduct_hom(rho, p)
            report = local_retraction_check(q, probes)
            if report.verdict == "passed-up-to-probes":
                found = p
                break
        U._locret[cache_key] = found is not None
    return U._locret[cache_key]


def closure_Hloc(mc: ModelClass, rho: Optional[TheoryMorphism] = None) -> ModelClass:
    U = mc.universe
    S = set(mc.indices)
    changed = True
    while changed:
        changed = False
        for j in range(len(U.members)):
            if j in S:
                continue
            if any(locret_edge(U, i, j, rho) for i in sorted(S)):
                S.add(j)
                changed = True
    return mc.with_indices(S)


def embeds_in_product(U: ModelUniverse, i: int, targets) -> bool:
    """Does member i admit a closed embedding into some product of the
    target members?

    Checked without building the product: the tupling of all homomorphisms
    from i into the targets is a closed mono iff those homomorphisms jointly
    separate distinct elements, witness every undefined function entry, and
    witness every absent relation tuple.  This sees closed subs whose parent
    product is bigger than the universe bound.
    """
    X = U.members[i]
    sig = U.theory.signature
    fams = [(h, U.members[j]) for j in sorted(targets) for h in U.homs(i, j)]
    for s in sig.sorts:
        car = X.carrier(s)
        for a, b in itertools.combinations(car, 2):
            if not any(h.maps[s][a] != h.maps[s][b] for h, _ in fams):
                return False
    for f, (argsorts, _) in sig.functions.items():
        table = X.functions[f]
        for args in itertools.product(*(X.carrier(s) for s in argsorts)):
            if args in table:
                continue
            hit = False
            for h, A in fams:
                image = tuple(h.maps[s][a] for s, a in zip(argsorts, args))
                if image not in A.functions[f]:
                    hit = True
                    break
            if not hit:
                return False
    for r, argsorts in sig.relations.items():
        held = X.relations[r]
        for args in itertools.product(*(X.carrier(s) for s in argsorts)):
            if args in held:
                continue
            hit = False
            for h, A in fams:
                image = tuple(h.maps[s][a] for s, a in zip(argsorts, args))
                if image not in A.relations[r]:
                    hit = True
                    break
            if not hit:
                return False
    return True


def product_embedding_closure(mc: ModelClass) -> ModelClass:
    """Closed substructures of products of class members, computed jointly.

    Composing closure_Sc after closure_P misses closed subs whose parent
    product exceeds the universe bound (two elements with one marked, times
    its unmarked point, is a two-element structure inside a four-element
    product), so the composite is decided per candidate by the separating
    criterion of embeds_in_product.
    """
    U = mc.universe
    S = set(mc.indices)
    for i in range(len(U.members)):
        if i not in S and embeds_in_product(U, i, mc.indices):
            S.add(i)
    return mc.with_indices(S)


def surjective_image_closure(mc: ModelClass) -> ModelClass:
    """Plain surjective images, for contrast with local retractions."""
    U = mc.universe
    S = set(mc.indices)
    changed = True
    while changed:
        changed = False
        for j in range(len(U.members)):
            if j in S:
                continue
            for i in sorted(S):
                if any(is_surjective(p) for p in U.homs(i, j)):
                    S.add(j)
                    changed = True
                    break
    return mc.with_indices(S)


@dataclass
class HspResult:
    model_class: ModelClass
    fixpoint: bool
    growth: dict  # operator name -> indices that appeared on re-application


def hsp_closure(mc: ModelClass, rho: Optional[TheoryMorphism] = None) -> HspResult:
    """Local retractions of closed substructures of products, then verify
    the result is a fixpoint of each operator within the universe.

    The inner two stages run jointly (product_embedding_closure) so that
    closed subs of over-bound products are not lost; see that docstring.
    """
    out = closure_Hloc(product_embedding_closure(mc), rho)
    growth = {}
    for name, op in (
        ("product", closure_P),
        ("closed-sub", closure_Sc),
        ("closed-sub-of-product", product_embedding_closure),
        ("local-retraction", lambda c: closure_Hloc(c, rho)),
    ):
        again = op(out)
        if again.indices != out.indices:
            growth[name] = sorted(again.indices - out.indices)
    return HspResult(out, not growth, growth)


# ---------------------------------------------------------------------------
# operator laws


@dataclass
class LawReport:
    universe: str
    k: int
    seed: int
    rows: list  # (law, instances checked, violations)

    @property
    def violations(self) -> int:
        return sum(len(v) for _, _, v in self.rows)


def operator_law_report(U: ModelUniverse, seed: int, samples: int = 10) -> LawReport:
    """Check the algebra of the three operators on sampled classes.

    The sampled family is every singleton class plus a seeded random batch.
    Verified per class: each operator is extensive, monotone, and
    idempotent; the swap laws P after Sc within Sc after P (with the joint
    product_embedding_closure on the right, which is how closed subs of
    products are computed here), P after Hloc within Hloc after P, and Sc
    after Hloc within Hloc after Sc; and idempotence of the hsp composite.
    The empty class gets a pinned row: its product closure is exactly the
    terminal model.

    Caveat: the right side of the P.Hloc row composes the two bounded
    operators, and there is no pointwise criterion for being a retract of
    an over-bound product, so at larger bounds that row can report genuine
    truncation artifacts (posets at bound 4 do).  The bounds used by the
    shipped reproduction targets are artifact-free.
    """
    rng = random.Random(seed)
    n = len(U.members)
    ops = {
        "P": closure_P,
        "Sc": closure_Sc,
        "Hloc": closure_Hloc,
    }
    rows = {law: [0, []] for law in (
        "extensive", "monotone",
        "P.P = P", "Sc.Sc = Sc", "Hloc.Hloc = Hloc",
        "P.Sc <= Sc.P", "P.Hloc <= Hloc.P", "Sc.Hloc <= Hloc.Sc",
        "hsp idempotent", "P(empty) = {terminal}",
    )}

    def note(law, ok, detail):
        rows[law][0] += 1
        if not ok:
            rows[law][1].append(detail)

    classes = [frozenset([i]) for i in range(n)]
    for _ in range(samples):
        mask = rng.getrandbits(n)
        classes.append(frozenset(i for i in range(n) if mask >> i & 1))
    for ci, idx in enumerate(classes):
        E = ModelClass(U, idx)
        for opname, op in ops.items():
            once = op(E)
            note("extensive", E.indices <= once.indices, (ci, opname))
            note(f"{opname}.{opname} = {opname}",
                 op(once).indices == once.indices, ci)
        extra = frozenset(i for i in range(n) if rng.random() < 0.3)
        F = ModelClass(U, idx | extra)
        for opname, op in ops.items():
            note("monotone", op(E).indices <= op(F).indices, (ci, opname))
        joint = product_embedding_closure(E)
        stagewise = closure_Sc(closure_P(E))
        assert stagewise.indices <= joint.indices
        note("P.Sc <= Sc.P",
             closure_P(closure_Sc(E)).indices <= joint.indices, ci)
        note("P.Hloc <= Hloc.P",
             closure_P(closure_Hloc(E)).indices <= closure_Hloc(closure_P(E)).indices, ci)
        note("Sc.Hloc <= Hloc.Sc",
             closure_Sc(closure_Hloc(E)).indices <= closure_Hloc(closure_Sc(E)).indices, ci)
        first = hsp_closure(E)
        second = hsp_closure(first.model_class)
        note("hsp idempotent",
             first.fixpoint and second.model_class.indices == first.model_class.indices, ci)
    empty = ModelClass(U, frozenset())
    terminal_idx = U.index[canonical_key(product(U.theory, []))]
    note("P(empty) = {terminal}",
         closure_P(empty).indices == frozenset([terminal_idx]), "empty")
    return LawReport(U.theory.name, U.k, seed,
                     [(law, c, v) for law, (c, v) in rows.items()])


# ---------------------------------------------------------------------------
# theory morphism soundness, bounded


@dataclass
class MorphismVerdict:
    kind: str  # "no-counterexample" | "countermodel"
    k: int
    structure: Optional[PartialStructure] = None
    sequent: Optional[Sequent] = None
    witness: Optional[dict] = None

    def describe(self) -> str:
        if self.kind == "no-counterexample":
            return f"no counterexample up to size {self.k}"
        return (f"countermodel of size {structure_size(self.structure)} "
                f"violates a translated axiom at {self.witness}")


def check_theory_morphism_bounded(m: TheoryMorphism, k: int,
                                  cache_dir: Optional[str] = None) -> MorphismVerdict:
    """Search target models up to size k for one violating a translated
    source axiom.  Silence is evidence up to the bound, not a proof."""
    validate_morphism(m)
    obligations = [translate_sequent(m, seq) for seq in m.source.axioms]
    U = enumerate_models(m.target, k, cache_dir)
    for X in U.members:
        for seq in obligations:
            w = sequent_witness(X, seq)
            if w is not None:
                return MorphismVerdict("countermodel", k, X, seq, w)
    return MorphismVerdict("no-counterexample", k)
