"""Finite partial structures and their Horn semantics.

A structure carries, per sort, a finite tuple of labels, per function symbol a
partial table (dict from argument tuples to values) and per relation symbol a
set of tuples.  Formula evaluation follows the partial reading: a compound
term is defined only when all arguments are and the table has an entry, a
relation atom holds only when its arguments are defined, and an equation holds
only when both sides are defined and equal.  Conjunction intersects and `top`
is the full product, so over the empty context `top` is inhabited by the empty
tuple and a sequent like `top |- def(c())` rules out the empty structure.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from .syntax import (
    And,
    App,
    BudgetError,
    Eq,
    Formula,
    RelAtom,
    Sequent,
    Theory,
    TheoryMorphism,
    Top,
    ValidationError,
    Var,
)


@dataclass
class PartialStructure:
    theory: Theory
    carriers: dict  # sort -> tuple of labels
    functions: dict = field(default_factory=dict)  # fn -> {args tuple: value}
    relations: dict = field(default_factory=dict)  # rel -> set of tuples
    name: str = ""

    def carrier(self, sort) -> tuple:
        return self.carriers.get(sort, ())


def make_structure(theory: Theory, carriers: dict, functions=None, relations=None,
                   name: str = "") -> PartialStructure:
    sig = theory.signature
    X = PartialStructure(
        theory,
        {s: tuple(carriers.get(s, ())) for s in sig.sorts},
        {f: dict((functions or {}).get(f, {})) for f in sig.functions},
        {r: set(map(tuple, (relations or {}).get(r, ()))) for r in sig.relations},
        name,
    )
    validate_structure(X)
    return X


def validate_structure(X: PartialStructure) -> None:
    sig = X.theory.signature
    for s in sig.sorts:
        c = X.carrier(s)
        if len(set(c)) != len(c):
            raise ValidationError(f"carrier of sort '{s}' repeats a label")
    for f, (argsorts, result) in sig.functions.items():
        for args, val in X.functions.get(f, {}).items():
            if len(args) != len(argsorts):
                raise ValidationError(f"entry of '{f}' has wrong arity")
            for a, s in zip(args, argsorts):
                if a not in X.carrier(s):
                    raise ValidationError(f"entry of '{f}' uses '{a}' outside sort '{s}'")
            if val not in X.carrier(result):
                raise ValidationError(f"value of '{f}' lies outside sort '{result}'")
    for r, argsorts in sig.relations.items():
        for args in X.relations.get(r, ()):
            if len(args) != len(argsorts):
                raise ValidationError(f"tuple in '{r}' has wrong arity")
            for a, s in zip(args, argsorts):
                if a not in X.carrier(s):
                    raise ValidationError(f"tuple in '{r}' uses '{a}' outside sort '{s}'")


def structure_size(X: PartialStructure) -> int:
    return sum(len(X.carrier(s)) for s in X.theory.signature.sorts)


def max_carrier(X: PartialStructure) -> int:
    sizes = [len(X.carrier(s)) for s in X.theory.signature.sorts]
    return max(sizes) if sizes else 0


# ---------------------------------------------------------------------------
# evaluation


def eval_term(X: PartialStructure, env: dict, term) -> Optional[object]:
    """Value of a term, or None when undefined."""
    if isinstance(term, Var):
        return env[term.name]
    vals = []
    for a in term.args:
        v = eval_term(X, env, a)
        if v is None:
            return None
        vals.append(v)
    return X.functions.get(term.func, {}).get(tuple(vals))


def satisfies(X: PartialStructure, env: dict, formula: Formula) -> bool:
    if isinstance(formula, Top):
        return True
    if isinstance(formula, And):
        return satisfies(X, env, formula.lhs) and satisfies(X, env, formula.rhs)
    if isinstance(formula, RelAtom):
        vals = []
        for a in formula.args:
            v = eval_term(X, env, a)
            if v is None:
                return False
            vals.append(v)
        return tuple(vals) in X.relations.get(formula.rel, ())
    l = eval_term(X, env, formula.lhs)
    if l is None:
        return False
    r = eval_term(X, env, formula.rhs)
    return r is not None and l == r


def context_envs(X: PartialStructure, context: tuple) -> Iterator[tuple]:
    """All assignments of carrier elements to the context, in carrier order."""
    return itertools.product(*(X.carrier(s) for _, s in context))


def eval_formula(X: PartialStructure, context: tuple, formula: Formula) -> frozenset:
    """Subset of the context product where the formula holds."""
    names = [v for v, _ in context]
    out = []
    for vals in context_envs(X, context):
        if satisfies(X, dict(zip(names, vals)), formula):
            out.append(vals)
    return frozenset(out)


def sequent_witness(X: PartialStructure, seq: Sequent) -> Optional[dict]:
    """First environment satisfying the premise but not the conclusion."""
    names = [v for v, _ in seq.context]
    for vals in context_envs(X, seq.context):
        env = dict(zip(names, vals))
        if satisfies(X, env, seq.premise) and not satisfies(X, env, seq.conclusion):
            return env
    return None


def sequent_valid(X: PartialStructure, seq: Sequent) -> bool:
    return sequent_witness(X, seq) is None


def failing_axiom(X: PartialStructure) -> Optional[tuple]:
    for seq in X.theory.axioms:
        w = sequent_witness(X, seq)
        if w is not None:
            return seq, w
    return None


def is_model(X: PartialStructure) -> bool:
    return failing_axiom(X) is None


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass
class Homomorphism:
    source: PartialStructure
    target: PartialStructure
    maps: dict  # sort -> {label: label}
    name: str = ""

    def apply(self, sort, label):
        return self.maps[sort][label]


def identity_hom(X: PartialStructure) -> Homomorphism:
    return Homomorphism(X, X, {s: {a: a for a in X.carrier(s)}
                               for s in X.theory.signature.sorts}, "id")


def compose(g: Homomorphism, f: Homomorphism) -> Homomorphism:
    maps = {}
    for s in f.source.theory.signature.sorts:
        maps[s] = {a: g.maps[s][b] for a, b in f.maps[s].items()}
    return Homomorphism(f.source, g.target, maps)


def hom_violation(h: Homomorphism) -> Optional[str]:
    """None when h is a homomorphism, else a reason with a witness."""
    X, Y = h.source, h.target
    sig = X.theory.signature
    for s in sig.sorts:
        m = h.maps.get(s, {})
        for a in X.carrier(s):
            if a not in m:
                return f"no image for '{a}' of sort '{s}'"
            if m[a] not in Y.carrier(s):
                return f"image of '{a}' lies outside the target carrier of '{s}'"
    for f, (argsorts, result) in sig.functions.items():
        for args, val in X.functions.get(f, {}).items():
            mapped = tuple(h.maps[s][a] for s, a in zip(argsorts, args))
            got = Y.functions.get(f, {}).get(mapped)
            if got is None:
                return f"'{f}' undefined at image of {args}"
            if got != h.maps[result][val]:
                return f"'{f}' not preserved at {args}"
    for r, argsorts in sig.relations.items():
        for args in X.relations.get(r, ()):
            mapped = tuple(h.maps[s][a] for s, a in zip(argsorts, args))
            if mapped not in Y.relations.get(r, set()):
                return f"'{r}' not preserved at {args}"
    return None


def is_homomorphism(h: Homomorphism) -> bool:
    return hom_violation(h) is None


def is_injective(h: Homomorphism) -> bool:
    for s in h.source.theory.signature.sorts:
        vals = list(h.maps[s].values())
        if len(set(vals)) != len(vals):
            return False
    return True


def is_surjective(h: Homomorphism) -> bool:
    for s in h.source.theory.signature.sorts:
        if set(h.maps[s].values()) != set(h.target.carrier(s)):
            return False
    return True


def is_closed_mono(h: Homomorphism) -> bool:
    """Injective homomorphism reflecting definedness and relations.

    Whenever a function is defined at the image tuple or the image tuple is
    related in the target, the same must already hold in the source.
    """
    if not is_injective(h):
        return False
    X, Y = h.source, h.target
    sig = X.theory.signature
    for f, (argsorts, _) in sig.functions.items():
        table = X.functions.get(f, {})
        for args in itertools.product(*(X.carrier(s) for s in argsorts)):
            mapped = tuple(h.maps[s][a] for s, a in zip(argsorts, args))
            if mapped in Y.functions.get(f, {}) and args not in table:
                return False
    for r, argsorts in sig.relations.items():
        held = X.relations.get(r, set())
        for args in itertools.product(*(X.carrier(s) for s in argsorts)):
            mapped = tuple(h.maps[s][a] for s, a in zip(argsorts, args))
            if mapped in Y.relations.get(r, set()) and args not in held:
                return False
    return True


def inverse_hom(h: Homomorphism) -> Optional[Homomorphism]:
    """Inverse map when h is bijective on every carrier; not validated."""
    maps = {}
    for s in h.source.theory.signature.sorts:
        m = h.maps[s]
        if len(set(m.values())) != len(m) or set(m.values()) != set(h.target.carrier(s)):
            return None
        maps[s] = {b: a for a, b in m.items()}
    return Homomorphism(h.target, h.source, maps)


def is_iso(h: Homomorphism) -> bool:
    if hom_violation(h) is not None:
        return False
    inv = inverse_hom(h)
    return inv is not None and hom_violation(inv) is None


# ---------------------------------------------------------------------------
# canonical forms


def canonical_key(X: PartialStructure, budget: int = 500000) -> str:
    """Lexicographically least encoding over all relabelings per sort.

    Structures of the same theory are isomorphic exactly when their keys
    agree.  Cost grows with the product of carrier factorials; guarded.
    """
    sig = X.theory.signature
    sorted_sorts = list(sig.sorts)
    total = 1
    for s in sorted_sorts:
        n = len(X.carrier(s))
        for i in range(2, n + 1):
            total *= i
        if total > budget:
            raise BudgetError(f"canonical key over {total}+ relabelings")
    best = None
    perms_per_sort = [
        [dict(zip(X.carrier(s), perm)) for perm in
         itertools.permutations(range(len(X.carrier(s))))]
        for s in sorted_sorts
    ]
    for combo in itertools.product(*perms_per_sort):
        relabel = dict(zip(sorted_sorts, combo))
        parts = [tuple(len(X.carrier(s)) for s in sorted_sorts)]
        for f, (argsorts, result) in sig.functions.items():
            entries = sorted(
                (tuple(relabel[s][a] for s, a in zip(argsorts, args)), relabel[result][val])
                for args, val in X.functions.get(f, {}).items()
            )
            parts.append(tuple(entries))
        for r, argsorts in sig.relations.items():
            tuples = sorted(
                tuple(relabel[s][a] for s, a in zip(argsorts, args))
                for args in X.relations.get(r, set())
            )
            parts.append(tuple(tuples))
        enc = repr(parts)
        if best is None or enc < best:
            best = enc
    return best if best is not None else repr([()])


def is_isomorphic(X: PartialStructure, Y: PartialStructure) -> bool:
    if X.theory.signature is not Y.theory.signature and X.theory.name != Y.theory.name:
        return False
    for s in X.theory.signature.sorts:
        if len(X.carrier(s)) != len(Y.carrier(s)):
            return False
    return canonical_key(X) == canonical_key(Y)


# ---------------------------------------------------------------------------
# limits, colimits, reducts


def product(theory: Theory, factors: list, name: str = "") -> PartialStructure:
    """Finite product; the empty product is the one-point total structure."""
    sig = theory.signature
    if not factors:
        carriers = {s: ("pt",) for s in sig.sorts}
        functions = {
            f: {args: "pt" for args in itertools.product(*(("pt",) for _ in argsorts))}
            for f, (argsorts, _) in sig.functions.items()
        }
        relations = {
            r: {args for args in itertools.product(*(("pt",) for _ in argsorts))}
            for r, argsorts in sig.relations.items()
        }
        return PartialStructure(theory, carriers, functions, relations, name or "pt")
    carriers = {
        s: tuple(itertools.product(*(F.carrier(s) for F in factors)))
        for s in sig.sorts
    }
    functions = {}
    for f, (argsorts, result) in sig.functions.items():
        table = {}
        for args in itertools.product(*(carriers[s] for s in argsorts)):
            # args is a tuple of product elements; slice per factor
            vals = []
            for i, F in enumerate(factors):
                entry = tuple(a[i] for a in args)
                v = F.functions.get(f, {}).get(entry)
                if v is None:
                    break
                vals.append(v)
            else:
                table[args] = tuple(vals)
        functions[f] = table
    relations = {}
    for r, argsorts in sig.relations.items():
        held = set()
        for args in itertools.product(*(carriers[s] for s in argsorts)):
            if all(tuple(a[i] for a in args) in F.relations.get(r, set())
                   for i, F in enumerate(factors)):
                held.add(args)
        relations[r] = held
    return PartialStructure(theory, carriers, functions, relations, name)


def projection(P: PartialStructure, factors: list, i: int) -> Homomorphism:
    maps = {s: {a: a[i] for a in P.carrier(s)} for s in P.theory.signature.sorts}
    return Homomorphism(P, factors[i], maps, f"proj{i}")


def pullback(p: Homomorphism, q: Homomorphism) -> tuple:
    """Pullback of p: A -> C and q: B -> C with its two projections."""
    if p.target is not q.target:
        raise ValidationError("pullback needs a shared codomain")
    A, B = p.source, q.source
    theory = A.theory
    sig = theory.signature
    carriers = {
        s: tuple((a, b) for a in A.carrier(s) for b in B.carrier(s)
                 if p.maps[s][a] == q.maps[s][b])
        for s in sig.sorts
    }
    functions = {}
    for f, (argsorts, result) in sig.functions.items():
        table = {}
        for args in itertools.product(*(carriers[s] for s in argsorts)):
            va = A.functions.get(f, {}).get(tuple(a for a, _ in args))
            vb = B.functions.get(f, {}).get(tuple(b for _, b in args))
            if va is not None and vb is not None:
                table[args] = (va, vb)
        functions[f] = table
    relations = {}
    for r, argsorts in sig.relations.items():
        relations[r] = {
            args
            for args in itertools.product(*(carriers[s] for s in argsorts))
            if tuple(a for a, _ in args) in A.relations.get(r, set())
            and tuple(b for _, b in args) in B.relations.get(r, set())
        }
    P = PartialStructure(theory, carriers, functions, relations, "pullback")
    p1 = Homomorphism(P, A, {s: {x: x[0] for x in P.carrier(s)} for s in sig.sorts})
    p2 = Homomorphism(P, B, {s: {x: x[1] for x in P.carrier(s)} for s in sig.sorts})
    return P, p1, p2


def reduct(m: TheoryMorphism, Y: PartialStructure, name: str = "") -> PartialStructure:
    """Pull a target-theory structure back along a theory morphism."""
    if Y.theory.name != m.target.name:
        raise ValidationError("reduct expects a structure of the morphism's target theory")
    src = m.source.signature
    carriers = {s: Y.carrier(m.sort_map[s]) for s in src.sorts}
    functions = {f: dict(Y.functions.get(m.fn_map[f], {})) for f in src.functions}
    relations = {r: set(Y.relations.get(m.rel_map[r], set())) for r in src.relations}
    return PartialStructure(m.source, carriers, functions, relations,
                            name or f"{Y.name}|{m.name}")


def reduct_hom(m: TheoryMorphism, h: Homomorphism) -> Homomorphism:
    """A homomorphism of target-theory structures, seen through the reduct."""
    src = reduct(m, h.source)
    tgt = reduct(m, h.target)
    maps = {s: dict(h.maps[m.sort_map[s]]) for s in m.source.signature.sorts}
    return Homomorphism(src, tgt, maps, h.name)


def disjoint_union(theory: Theory, parts: list, name: str = "") -> tuple:
    """Tagged union with its coprojections.

    Only sound as a coproduct for theories flagged coproduct_by_disjoint_union
    (operations never mix components and no axiom forces cross-component
    structure); refused otherwise.
    """
    if "coproduct_by_disjoint_union" not in theory.flags:
        raise ValidationError(
            f"theory '{theory.name}' does not declare coproduct_by_disjoint_union")
    sig = theory.signature
    carriers = {
        s: tuple((i, a) for i, P in enumerate(parts) for a in P.carrier(s))
        for s in sig.sorts
    }
    functions = {}
    for f, (argsorts, result) in sig.functions.items():
        table = {}
        for i, P in enumerate(parts):
            for args, val in P.functions.get(f, {}).items():
                table[tuple((i, a) for a in args)] = (i, val)
        functions[f] = table
    relations = {}
    for r, argsorts in sig.relations.items():
        relations[r] = {
            tuple((i, a) for a in args)
            for i, P in enumerate(parts)
            for args in P.relations.get(r, set())
        }
    X = PartialStructure(theory, carriers, functions, relations, name)
    cops = [
        Homomorphism(P, X, {s: {a: (i, a) for a in P.carrier(s)} for s in sig.sorts},
                     f"inj{i}")
        for i, P in enumerate(parts)
    ]
    return X, cops


# ---------------------------------------------------------------------------
# chains


@dataclass
class ChainRecipe:
    """An omega-chain given by stage and connector builders.

    stable_from marks a stage from which the recipe guarantees all connectors
    are identities up to isomorphism; the inspected window can then certify an
    exact colimit instead of a bounded observation.
    """

    name: str
    theory: Theory
    structure_at: Callable[[int], PartialStructure]
    connector_at: Callable[[int], Homomorphism]  # stage n -> hom X_n -> X_{n+1}
    stable_from: Optional[int] = None
    description: str = ""


@dataclass
class ColimitResult:
    kind: str  # "exact" | "stable-within" | "not-stable"
    stage: Optional[int]
    structure: Optional[PartialStructure]
    note: str


def chain_colimit(recipe: ChainRecipe, horizon: int) -> ColimitResult:
    """Colimit of the chain as witnessed on stages 0..horizon.

    Reports an exact colimit when the recipe declares stabilization and the
    window confirms it, a bounded observation when connectors turn into
    isomorphisms inside the window, and not-stable otherwise.
    """
    if horizon < 1:
        raise ValidationError("horizon must be at least 1")
    stages = [recipe.structure_at(n) for n in range(horizon + 1)]
    conns = []
    for n in range(horizon):
        h = recipe.connector_at(n)
        bad = hom_violation(h)
        if bad is not None:
            raise ValidationError(f"connector {n} of '{recipe.name}' is not a homomorphism: {bad}")
        conns.append(h)
    iso_from = horizon
    for n in range(horizon - 1, -1, -1):
        if is_iso(conns[n]):
            iso_from = n
        else:
            break
    if recipe.stable_from is not None and recipe.stable_from <= horizon - 1:
        if iso_from <= recipe.stable_from:
            return ColimitResult(
                "exact", recipe.stable_from, stages[recipe.stable_from],
                f"declared stable from stage {recipe.stable_from}, confirmed on the window")
        return ColimitResult(
            "not-stable", None, None,
            f"declared stable from stage {recipe.stable_from} but a later connector is not an isomorphism")
    if iso_from <= horizon - 1:
        return ColimitResult(
            "stable-within", iso_from, stages[iso_from],
            f"connectors are isomorphisms from stage {iso_from} through stage {horizon}")
    return ColimitResult(
        "not-stable", None, None,
        f"no stabilization among stages 0..{horizon}")


# ---------------------------------------------------------------------------
# JSON interchange


def _label_str(label) -> str:
    if isinstance(label, str):
        return label
    if isinstance(label, tuple):
        return "(" + ",".join(_label_str(x) for x in label) + ")"
    return str(label)


def structure_to_json(X: PartialStructure) -> dict:
    sig = X.theory.signature
    return {
        "signature": X.theory.name,
        "name": X.name,
        "carriers": {s: [_label_str(a) for a in X.carrier(s)] for s in sig.sorts},
        "functions": {
            f: sorted([_label_str(a) for a in args] + [_label_str(val)]
                      for args, val in X.functions.get(f, {}).items())
            for f in sig.functions
        },
        "relations": {
            r: sorted([_label_str(a) for a in args] for args in X.relations.get(r, set()))
            for r in sig.relations
        },
    }


def structure_from_json(d: dict, theory: Theory) -> PartialStructure:
    if d.get("signature") != theory.name:
        raise ValidationError(
            f"structure is for signature '{d.get('signature')}', expected '{theory.name}'")
    sig = theory.signature
    functions = {}
    for f, (argsorts, _) in sig.functions.items():
        table = {}
        for row in d.get("functions", {}).get(f, []):
            if len(row) != len(argsorts) + 1:
                raise ValidationError(f"row of '{f}' has wrong length")
            table[tuple(row[:-1])] = row[-1]
        functions[f] = table
    relations = {}
    for r, argsorts in sig.relations.items():
        relations[r] = {tuple(row) for row in d.get("relations", {}).get(r, [])}
    X = PartialStructure(
        theory,
        {s: tuple(d.get("carriers", {}).get(s, ())) for s in sig.sorts},
        functions,
        relations,
        d.get("name", ""),
    )
    validate_structure(X)
    return X


def load_structure(path: str, theory: Theory) -> PartialStructure:
    with open(path) as fh:
        return structure_from_json(json.load(fh), theory)


def save_structure(path: str, X: PartialStructure) -> None:
    with open(path, "w") as fh:
        json.dump(structure_to_json(X), fh, indent=2, sort_keys=True)
        fh.write("\n")
