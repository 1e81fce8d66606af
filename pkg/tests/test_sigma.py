import pytest

from phl.corpus import (
    antichain_poset,
    chain_poset,
    get_chain,
    m_lattice,
    ordinal_U,
    set_of,
    urel_of,
)
from phl.groups import cyclic_group, symmetric_3, trivial_group
from phl.sigma import (
    HomQuiver,
    acc_probe,
    build_hom_quiver,
    condense_sigma,
    fam_quiver,
    gset_sigma_check,
    is_chain,
    lower_set_lattice,
    lower_sets,
    maximal_elements,
    poset_iso,
    poset_product,
    quiver_tensor,
    sigma_of_structures,
    sub_poset,
    subgroup_category,
    verify_fam_theorem,
)
from phl.syntax import BudgetError


def quiver(labels, arcs):
    n = len(labels)
    edges = [[i == j or (labels[i], labels[j]) in arcs for j in range(n)]
             for i in range(n)]
    return HomQuiver(list(labels), edges)


def test_condensation_merges_cycles():
    q = quiver("abc", {("a", "b"), ("b", "a"), ("b", "c")})
    P = condense_sigma(q)
    assert len(P) == 2
    assert sorted(len(c) for c in P.components) == [1, 2]
    # the merged component sits below c
    big = next(i for i, c in enumerate(P.components) if len(c) == 2)
    small = 1 - big
    assert (big, small) in P.leq and (small, big) not in P.leq


def test_condensation_closes_reachability_transitively():
    q = quiver("abcd", {("a", "b"), ("b", "c"), ("c", "d")})
    P = condense_sigma(q)
    assert len(P) == 4
    assert len(P.leq) == 4 + 6  # reflexive pairs plus the full chain order


def test_sigma_of_structures_matches_hom_direction():
    # marks force direction: marked points reach unmarked targets, not back
    structures = [urel_of(1, []), urel_of(1, ["0"]), urel_of(2, ["0"])]
    P = sigma_of_structures(structures, ["plain", "dot", "dot+pt"])
    assert len(P) == 2
    idx = {lbl: i for i, lbl in enumerate(P.labels)}
    marked = idx["[dot,dot+pt]"]
    plain = idx["[plain]"]
    assert (plain, marked) in P.leq
    assert (marked, plain) not in P.leq
    # all nonempty posets are mutually connected, so they condense to a point
    Q = sigma_of_structures([chain_poset(1), chain_poset(2), antichain_poset(2)])
    assert len(Q) == 1


def test_is_chain_and_poset_iso():
    chain = condense_sigma(quiver("abc", {("a", "b"), ("b", "c")}))
    anti = condense_sigma(quiver("abc", set()))
    assert is_chain(chain)
    assert not is_chain(anti)
    assert poset_iso(chain, condense_sigma(quiver("xyz", {("x", "y"), ("y", "z")})))
    assert not poset_iso(chain, anti)
    # same size and degree multiset but different shape: N poset vs 2+2 chain sum
    n_poset = condense_sigma(quiver("abcd", {("a", "c"), ("b", "c"), ("b", "d")}))
    two_plus_two = condense_sigma(quiver("abcd", {("a", "c"), ("b", "d")}))
    assert not poset_iso(n_poset, two_plus_two)


def test_poset_iso_budget_raises():
    big = condense_sigma(quiver("abcdefghij", set()))
    with pytest.raises(BudgetError):
        poset_iso(big, big, budget=3)


def test_lower_sets_counts():
    two_chain = condense_sigma(quiver("ab", {("a", "b")}))
    assert len(lower_sets(two_chain)) == 3
    for n in range(1, 5):
        anti = condense_sigma(quiver("abcd"[:n], set()))
        assert len(lower_sets(anti)) == 2 ** n


def test_lower_set_lattice_is_ordered_by_inclusion():
    P = condense_sigma(quiver("abc", {("a", "b")}))
    lat = lower_set_lattice(P)
    sets = lat.sets
    for i, S in enumerate(sets):
        for j, T in enumerate(sets):
            assert ((i, j) in lat.poset.leq) == (S <= T)


def test_maximal_elements_generate():
    P = condense_sigma(quiver("abc", {("a", "c"), ("b", "c")}))
    full = frozenset(range(len(P)))
    tops = maximal_elements(P, full)
    assert len(tops) == 1  # everything below c


def test_poset_product_agrees_with_quiver_tensor():
    A = quiver("ab", {("a", "b")})
    B = quiver("xy", {("x", "y")})
    via_tensor = condense_sigma(quiver_tensor(A, B))
    via_product = poset_product(condense_sigma(A), condense_sigma(B))
    assert poset_iso(via_tensor, via_product)


def test_acc_probe_finds_unstable_lattice_chain():
    res = acc_probe(get_chain("lattice-chain"), 4)
    assert not res.stabilized
    assert res.witness == (4, 3)
    assert "no homomorphism from stage 4 to stage 3" in res.describe()


def test_acc_probe_stabilizes_constant_chain():
    res = acc_probe(get_chain("constant-set"), 5)
    assert res.stabilized and res.stage == 0


def test_acc_probe_reports_least_stable_stage():
    res = acc_probe(get_chain("ordinal-chain-2"), 6)
    assert res.stabilized
    assert res.stage == 3  # truncation freezes the chain from stage 3 on


def test_ordinal_stage_sigma_is_a_chain():
    fam = [ordinal_U(3, a) for a in range(4)]
    P = sigma_of_structures(fam)
    assert len(P) == 4 and is_chain(P)


def test_fam_theorem_on_small_quivers():
    for q, m in [(quiver("a", set()), 2),
                 (quiver("ab", set()), 2),
                 (quiver("abc", {("a", "b"), ("b", "c")}), 1),
                 (quiver("abcd", {("a", "c"), ("b", "c"), ("b", "d")}), 2)]:
        rep = verify_fam_theorem(q, m)
        assert rep.iso, rep.note


def test_fam_quiver_includes_empty_family():
    q = quiver("ab", set())
    fq = fam_quiver(q, 1)
    assert len(fq.labels) == 3  # {}, {a}, {b}
    empty = fq.labels.index("{}")
    assert all(fq.edges[empty][j] for j in range(3))


def test_subgroup_category_shapes():
    q1, subs1 = subgroup_category(trivial_group())
    assert len(subs1) == 1
    q2, subs2 = subgroup_category(cyclic_group(2))
    assert len(subs2) == 2
    q4, subs4 = subgroup_category(cyclic_group(4))
    assert len(subs4) == 3
    assert is_chain(condense_sigma(q4))
    qs3, subs_s3 = subgroup_category(symmetric_3())
    assert len(subs_s3) == 6
    # conjugate order-2 subgroups collapse into one class
    P = condense_sigma(qs3)
    assert len(P) == 4


def test_gset_sigma_check_small_groups():
    for G, k, expect in [(trivial_group(), 2, 2),
                         (cyclic_group(2), 4, 3),
                         (cyclic_group(4), 12, 4),
                         (symmetric_3(), 24, 6)]:
        rep = gset_sigma_check(G, k)
        assert rep.iso, (rep.group, rep.note)
        assert rep.components == expect
