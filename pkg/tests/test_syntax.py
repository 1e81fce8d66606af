import pytest

from phl.corpus import get_morphism, get_theory, ordered_semiring
from phl.parser import parse_sequents, parse_theory
from phl.syntax import (
    And,
    App,
    Eq,
    RelAtom,
    Sequent,
    TOP,
    ValidationError,
    Var,
    and_parts,
    bisequent,
    check_relative_judgment,
    compile_relative_theory,
    conj,
    def_of,
    extended_signature,
    morphism_obligations,
    print_formula,
    print_sequent,
    print_theory,
    translate_formula,
    translate_sequent,
    validate_morphism,
    validate_sequent,
    validate_theory,
    term_sort,
)


def test_def_sugar_is_self_equality():
    t = App("f", (Var("x"),))
    assert def_of(t) == Eq(t, t)
    assert print_formula(def_of(t)) == "def(f(x))"


def test_conj_right_nested_and_parts_flatten():
    a, b = RelAtom("r", (Var("x"),)), Eq(Var("x"), Var("y"))
    f = conj(a, b, TOP)  # redundant top is dropped
    assert f == And(a, b)
    assert and_parts(And(a, And(b, TOP))) == [a, b]
    assert and_parts(TOP) == []
    assert conj() == TOP
    assert conj(a) == a


def test_bisequent_unfolds_to_two_sequents():
    ctx = (("x", "el"),)
    lhs, rhs = def_of(Var("x")), RelAtom("mark", (Var("x"),))
    fwd, bwd = bisequent(ctx, lhs, rhs)
    assert fwd == Sequent(ctx, lhs, rhs)
    assert bwd == Sequent(ctx, rhs, lhs)


def test_constants_print_with_parens():
    th = get_theory("pointed")
    axiom = th.axioms[0]
    assert "pt()" in print_sequent(axiom)


def test_term_sort_and_validation_errors():
    sig = get_theory("arrow").signature
    env = {"x": "a"}
    assert term_sort(App("f", (Var("x"),)), sig, env) == "b"
    with pytest.raises(ValidationError):
        term_sort(App("f", (Var("z"),)), sig, env)
    with pytest.raises(ValidationError):
        validate_sequent(
            Sequent((("x", "a"),), TOP, Eq(Var("x"), App("f", (Var("x"),)))),
            sig)  # sort mismatch across =


def test_validate_theory_rejects_unknown_sort():
    th = get_theory("set")
    broken = Sequent((("x", "nosuch"),), TOP, TOP)
    bad = type(th)(th.name, th.signature, th.axioms + (broken,), th.flags)
    with pytest.raises(ValidationError):
        validate_theory(bad)


def test_print_theory_round_trips_whole_corpus():
    from phl.corpus import theory_names
    for name in theory_names():
        th = get_theory(name)
        text = print_theory(th)
        assert print_theory(parse_theory(text)) == text


def test_translate_commutes_with_conjunction():
    rho = get_morphism("pos-to-brel")
    x, y = Var("x"), Var("y")
    phi = RelAtom("leq", (x, y))
    psi = Eq(x, y)
    both = translate_formula(rho, And(phi, psi))
    assert both == And(translate_formula(rho, phi),
                       translate_formula(rho, psi))


def test_morphism_obligations_are_translated_axioms():
    rho = get_morphism("pos-to-brel")
    obs = morphism_obligations(rho)
    assert len(obs) == len(rho.source.axioms)
    assert obs == tuple(translate_sequent(rho, s) for s in rho.source.axioms)
    validate_morphism(rho)


def test_identity_morphism_translates_to_itself():
    rho = get_morphism("pos-id")
    seq = rho.source.axioms[0]
    assert translate_sequent(rho, seq) == seq


def test_relative_judgments_all_admissible():
    rt = ordered_semiring()
    assert len(rt.judgments) == 8
    assert all(check_relative_judgment(rt, j) for j in rt.judgments)


def test_relative_judgment_rejects_op_in_premise():
    rt = ordered_semiring()
    ext = extended_signature(rt)
    bad = parse_sequents(
        "[a : el, b : el] plus(a, b) = a |- leq(b, a);", ext)[0]
    assert not check_relative_judgment(rt, bad)


def test_relative_judgment_invariant_under_renaming():
    rt = ordered_semiring()
    ext = extended_signature(rt)
    a = parse_sequents("[a : el, b : el] leq(a, b) |- plus(a, ominus(b, a)) = b;",
                       ext)[0]
    b = parse_sequents("[u : el, v : el] leq(u, v) |- plus(u, ominus(v, u)) = v;",
                       ext)[0]
    assert check_relative_judgment(rt, a) == check_relative_judgment(rt, b) is True


def test_compiled_relative_theory_validates():
    rt = ordered_semiring()
    th = compile_relative_theory(rt)
    validate_theory(th)
    # every op contributes a definedness bisequent pair
    assert len(th.axioms) == len(rt.base.axioms) + 2 * len(rt.ops) + len(rt.judgments)
    text = print_theory(th)
    assert print_theory(parse_theory(text)) == text
