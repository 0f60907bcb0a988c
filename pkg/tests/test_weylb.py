"""Signed permutations, diagrams, roots and involution statistics."""

import pytest

import oracles as O
from spindual.weylb import (
    COMPLEX,
    IMAGINARY,
    REAL,
    InfChar,
    Involution,
    SignedPerm,
    WeylError,
    act_on_vector,
    centralizer_factor_orders,
    class_size,
    compose,
    conjugacy_invariants,
    dualize_involution,
    identity,
    integral_simple_roots,
    list_involutions,
    minus_one,
    num_conjugacy_classes,
    parse_diagram,
    reduced_word,
    reflection,
    render_diagram,
    root_type,
    stats,
    tokenize,
    weyl_order,
)


def to_oracle(w):
    return tuple(((-1) ** w.bits[w.perm[i]], w.perm[i]) for i in range(w.n))


def test_diagram_examples():
    th = SignedPerm((0, 0, 0, 1), (0, 2, 1, 3))
    assert render_diagram(th) == "+ 3 2 -"
    assert act_on_vector(th, (1, 2, 3, 4)) == (1, 3, 2, -4)
    th2 = SignedPerm((1, 1, 1, 0), (0, 2, 1, 3))
    assert render_diagram(th2) == "- (3) (2) +"
    assert render_diagram(identity(2)) == "+ +"


def test_parse_roundtrip_and_compact_input():
    for n in (1, 2, 3, 4):
        for th in list_involutions(n):
            assert parse_diagram(render_diagram(th)) == th
    assert parse_diagram("21") == parse_diagram("2 1")
    assert parse_diagram("(2)(1)") == parse_diagram("(2) (1)")
    assert parse_diagram("+-") == parse_diagram("+ -")


@pytest.mark.parametrize("bad", ["1 2", "2 2", "3 1", "+ x", "(2) 1", ""])
def test_parse_rejects(bad):
    with pytest.raises(WeylError):
        parse_diagram(bad)


def test_tokenize_multidigit():
    assert tokenize("+ 10 + + + + + + + 2") == ["+", "10", "+", "+", "+", "+", "+", "+", "+", "2"]


def test_compose_examples():
    th = parse_diagram("+ 3 2 -")
    assert compose(th, th) == identity(4)
    s = reflection((1, -1))
    assert compose(s, s) == identity(2)
    w = compose(reflection((1, 0)), reflection((0, 1)))
    assert act_on_vector(w, (1, 2)) == (-1, -2)


def test_dualize():
    assert str(dualize_involution(parse_diagram("+ 3 2 -"))) == "- (3) (2) +"
    assert dualize_involution(identity(3)) == Involution.of(minus_one(3))
    for th in list_involutions(3):
        assert dualize_involution(dualize_involution(th)) == th


def test_root_type_examples():
    th = parse_diagram("+ -")
    assert root_type(th, (1, 0)) == IMAGINARY
    assert root_type(th, (0, 1)) == REAL
    assert root_type(th, (1, -1)) == COMPLEX


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_involutions_match_brute_force(n):
    ours = {to_oracle(t) for t in list_involutions(n)}
    assert ours == set(O.involutions(n))
    classes = O.conjugacy_classes(n)
    assert num_conjugacy_classes(n) == len(classes)
    for cl in classes:
        rep = next(iter(cl))
        th = next(t for t in list_involutions(n) if to_oracle(t) == rep)
        n_c, n_s = conjugacy_invariants(th)
        assert class_size(n, n_c, n_s) == len(cl)
        assert all(conjugacy_invariants(t) == (n_c, n_s) for t in list_involutions(n) if to_oracle(t) in cl)


def test_involution_counts():
    assert len(list_involutions(1)) == 2
    assert len(list_involutions(2)) == 6
    assert num_conjugacy_classes(2) == 4
    assert num_conjugacy_classes(4) == 9
    assert class_size(4, 0, 4) == 1
    assert class_size(4, 2, 1) == 24
    assert class_size(2, 2, 0) == 2


def test_class_invariants_and_centralizers():
    assert conjugacy_invariants(parse_diagram("+ 3 2 -")) == (2, 1)
    assert conjugacy_invariants(identity(4)) == (0, 4)
    assert conjugacy_invariants(parse_diagram("2 1")) == conjugacy_invariants(parse_diagram("(2)(1)"))
    assert centralizer_factor_orders(identity(2)) == (8, 1, 1)
    assert centralizer_factor_orders(parse_diagram("2 1")) == (2, 2, 1)
    th = parse_diagram("+ 3 2 -")
    a, b, c = centralizer_factor_orders(th)
    # the centralizer has order |W| / |class|; its factors multiply to that up to the swap symmetry
    cent = weyl_order(4) // class_size(4, *conjugacy_invariants(th))
    assert cent % (a * b * c) == 0


def test_lengths():
    assert stats(minus_one(2)).length == 3
    assert stats(parse_diagram("2 1")).length == 1
    assert stats(parse_diagram("(2)(1)")).length == 2
    for n in (1, 2, 3, 4):
        top = n * (n + 1) // 2
        for th in list_involutions(n):
            assert stats(th).length + stats(dualize_involution(th)).length == top


def test_stats_with_lambda():
    st = stats(identity(2), InfChar.parse("3/2,1"))
    assert (st.n_int, st.n_half, st.sym) == (1, 1, 1)


def test_reduced_word_matches_coxeter_length():
    for w in O.all_signed_perms(3):
        bits = [0] * 3
        for i, (s, j) in enumerate(w):
            bits[j] = 0 if s > 0 else 1
        sp = SignedPerm(tuple(bits), tuple(j for _, j in w))
        word = reduced_word(sp)
        assert len(word) == O.coxeter_length(w)
        prod = identity(3)
        for a in word:
            prod = compose(prod, reflection(a))
        assert prod == sp


def test_infchar_parsing():
    lam = InfChar.parse("3/2,1")
    assert lam.twice == (3, 2)
    assert InfChar.parse("1.5,1") == lam
    with pytest.raises(WeylError):
        InfChar.parse("1,1")
    with pytest.raises(WeylError):
        InfChar.parse("1,2")
    with pytest.raises((WeylError, ValueError)):
        InfChar.parse("1/3,1")
    assert integral_simple_roots(InfChar.parse("5/2,2,3/2,1")) == ((1, 0, -1, 0), (0, 1, 0, -1), (0, 0, 1, 0), (0, 0, 0, 1))


def test_involution_validation():
    with pytest.raises(WeylError):
        Involution((0, 0, 0), (1, 2, 0))
