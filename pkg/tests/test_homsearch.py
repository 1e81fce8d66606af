import itertools

from phl.corpus import (
    chain_poset,
    cycle_endo,
    endo_primes,
    get_theory,
    m_lattice,
    nset_structure,
    presheaf_L,
    set_of,
    urel_of,
)
from phl.homsearch import (
    enumerate_homs,
    exact_local_retraction,
    find_hom,
    find_section,
    hom_exists,
    local_retraction_check,
)
from phl.structures import Homomorphism, compose, hom_violation, is_surjective


def brute_force_homs(X, Y):
    """All structure maps checked directly, no propagation or pruning."""
    sorts = X.theory.signature.sorts
    per_sort = []
    for s in sorts:
        dom, cod = X.carrier(s), Y.carrier(s)
        per_sort.append([dict(zip(dom, choice))
                         for choice in itertools.product(cod, repeat=len(dom))])
    out = []
    for combo in itertools.product(*per_sort):
        h = Homomorphism(X, Y, dict(zip(sorts, combo)))
        if hom_violation(h) is None:
            out.append(h)
    return out


def test_hom_counts_match_brute_force():
    cases = [
        (chain_poset(2), chain_poset(3)),
        (chain_poset(3), chain_poset(2)),
        (urel_of(2, ["0"]), urel_of(3, ["1", "2"])),
        (cycle_endo(2), cycle_endo(3)),
        (cycle_endo(3), cycle_endo(2)),
        (m_lattice(2), m_lattice(3)),
        (presheaf_L(1), presheaf_L(2)),
    ]
    for X, Y in cases:
        fast = enumerate_homs(X, Y)
        slow = brute_force_homs(X, Y)
        assert len(fast) == len(slow), (X.name, Y.name)
        assert {tuple(sorted((s, tuple(sorted(m.items()))) for s, m in h.maps.items()))
                for h in fast} == \
               {tuple(sorted((s, tuple(sorted(m.items()))) for s, m in h.maps.items()))
                for h in slow}


def test_every_returned_map_is_a_homomorphism():
    for h in enumerate_homs(m_lattice(2), m_lattice(4)):
        assert hom_violation(h) is None


def test_no_hom_between_prime_cycles():
    assert not hom_exists(cycle_endo(2), cycle_endo(5))
    assert not hom_exists(cycle_endo(5), cycle_endo(2))
    assert hom_exists(cycle_endo(2), cycle_endo(2))


def test_injective_mode_only_returns_embeddings():
    homs = enumerate_homs(chain_poset(2), chain_poset(4), injective=True)
    assert homs
    for h in homs:
        vals = list(h.maps["el"].values())
        assert len(set(vals)) == len(vals)
    assert not enumerate_homs(chain_poset(4), chain_poset(2), injective=True)


def test_restrict_prunes_candidates():
    X, Y = chain_poset(2), chain_poset(3)
    pinned = {("el", "0"): ("2",)}
    for h in enumerate_homs(X, Y, restrict=pinned):
        assert h.maps["el"]["0"] == "2"
    # monotone maps from a 2-chain fixing bottom at the top: only constant-2
    assert len(enumerate_homs(X, Y, restrict=pinned)) == 1


def test_find_section_of_a_collapse():
    two, one = set_of(2), set_of(1)
    p = Homomorphism(two, one, {"el": {"0": "0", "1": "0"}})
    s = find_section(p)
    assert s is not None
    assert compose(p, s).maps["el"] == {"0": "0"}
    # inclusions are not split epis
    inc = Homomorphism(one, two, {"el": {"0": "0"}})
    assert find_section(inc) is None


def test_local_retraction_full_probe_set_equals_retract():
    """With the codomain among the probes the check forces a section."""
    two, one = set_of(2), set_of(1)
    p = Homomorphism(two, one, {"el": {"0": "0", "1": "0"}})
    rep = local_retraction_check(p, [one, two])
    assert rep.verdict == "passed-up-to-probes"
    assert rep.exact is True and rep.exact_rule == "surjection"
    inc = Homomorphism(one, two, {"el": {"0": "0"}})
    rep2 = local_retraction_check(inc, [one, two])
    assert rep2.verdict == "failed"
    assert rep2.exact is False
    assert rep2.witness_probe is not None and rep2.witness_map is not None


def test_exact_rule_for_plain_sets_is_surjectivity():
    three, two = set_of(3), set_of(2)
    p = Homomorphism(three, two, {"el": {"0": "0", "1": "1", "2": "1"}})
    assert exact_local_retraction(p) == (True, "surjection")
    q = Homomorphism(two, three, {"el": {"0": "0", "1": "1"}})
    assert exact_local_retraction(q) == (False, "surjection")


def test_exact_rule_refuses_constant_merges():
    X = nset_structure(3, 2, ("0", "1", "1"))
    Y = nset_structure(3, 1, ("0", "0", "0"))
    p = Homomorphism(X, Y, {"el": {"0": "0", "1": "0"}})
    assert is_surjective(p)
    verdict, rule = exact_local_retraction(p)
    assert verdict is False and rule == "surjection-no-constant-merge"
    # identity on the merged target is still fine: constants already equal
    verdict2, _ = exact_local_retraction(
        Homomorphism(Y, Y, {"el": {"0": "0"}}))
    assert verdict2 is True


def test_theories_without_exact_rule_report_none():
    p = Homomorphism(chain_poset(2), chain_poset(2),
                     {"el": {"0": "0", "1": "1"}})
    assert exact_local_retraction(p) == (None, None)


def test_enumerate_limit_stops_early():
    homs = enumerate_homs(set_of(3), set_of(3), limit=5)
    assert len(homs) == 5


def test_backward_maps_out_of_growing_lattices_fail():
    # dropping a lattice stage cannot keep meets and joins consistent
    assert find_hom(m_lattice(3), m_lattice(2)) is None
    assert find_hom(endo_primes(2), endo_primes(1)) is None
