"""Gradings, Cayley transforms on pairs, supportability and central characters."""

from itertools import product

import pytest

import oracles as O
from spindual.gradings import (
    AbstractBigrading,
    GradingError,
    ImGrading,
    RealForm,
    ReGrading,
    cayley_pair,
    central_char,
    central_char_from_eta,
    check_grading_axioms,
    cross_grading,
    derive_eta,
    dual_bigrading,
    dual_group,
    eval_grading,
    is_supportable,
    parse_grading,
    real_form,
    supportable_gradings,
)
from spindual.params import canonical_rep
from spindual.weylb import (
    InfChar,
    Involution,
    compose,
    identity,
    list_involutions,
    minus_one,
    parse_diagram,
    positive_roots,
    reflection,
    root_type,
)

LAM = InfChar.parse("3/2,1")


def I2():
    return Involution.of(identity(2))


def test_eval_grading_examples():
    eps = parse_grading(I2(), "⊕ +")
    assert (eps((1, 0)), eps((0, 1)), eps((1, -1))) == (1, 0, 1)
    eta = ReGrading(Involution.of(minus_one(2)), frozenset(), LAM)
    assert eta((1, 1)) == 1
    assert eta((1, -1)) == 1
    th = Involution.of(parse_diagram("+ -"))
    with pytest.raises(GradingError):
        eval_grading(ReGrading(th, frozenset(), LAM), (1, 0))
    with pytest.raises(GradingError):
        eval_grading(ImGrading(parse_diagram("+ -"), frozenset()), (0, 1))


def test_grading_axioms_hold():
    for th in list_involutions(3):
        imag = th.imaginary_coords
        for mask in range(1 << len(imag)):
            eps = ImGrading(th, frozenset(imag[i] for i in range(len(imag)) if mask >> i & 1))
            assert check_grading_axioms(eps)
            assert parse_grading(th, eps.render()) == eps
        for chi in (1, -1):
            assert check_grading_axioms(derive_eta(th, chi, InfChar.parse("5/2,2,1/2")))


def test_grading_rejects_non_imaginary():
    with pytest.raises(GradingError):
        ImGrading(parse_diagram("+ -"), frozenset({1}))
    with pytest.raises(GradingError):
        parse_grading(I2(), "+ -")
    assert parse_grading(I2(), "n+") == parse_grading(I2(), "⊕ +")


def test_cross_grading_examples():
    eps = parse_grading(I2(), "⊕ +")
    assert cross_grading(identity(2), eps) == eps
    assert cross_grading(reflection((1, -1)), eps).render() == "+ ⊕"
    th = Involution.of(identity(3))
    eps = parse_grading(th, "⊕ + +")
    assert cross_grading(reflection((0, 1, -1)), eps) == eps  # compact root


def test_cross_grading_composes():
    th = Involution.of(identity(3))
    eps = parse_grading(th, "⊕ ⊕ +")
    for a in [(1, -1, 0), (0, 1, -1), (0, 0, 1)]:
        for b in [(1, 0, -1), (1, 1, 0)]:
            lhs = cross_grading(compose(reflection(a), reflection(b)), eps)
            rhs = cross_grading(reflection(a), cross_grading(reflection(b), eps))
            assert lhs == rhs


def test_cayley_pair_examples():
    eps = parse_grading(I2(), "⊕ +")
    th2, eps2 = cayley_pair(I2(), eps, (1, 0))
    assert str(th2) == "- +"
    assert eps2((0, 1)) == 1
    eps = parse_grading(I2(), "⊕ +")
    th3, _ = cayley_pair(I2(), eps, (1, -1))
    assert str(th3) == "2 1"
    with pytest.raises(GradingError):
        cayley_pair(I2(), eps, (0, 1))


def test_real_form_examples():
    assert real_form(I2(), parse_grading(I2(), "⊕ +")) == RealForm(3, 2)
    m1 = Involution.of(minus_one(2))
    assert real_form(m1, ImGrading(m1, frozenset())) == RealForm(3, 2)
    for q in range(1, 5):
        bits = tuple(1 if i < q else 0 for i in range(4))
        th = Involution(bits, tuple(range(4)))
        # maximally split: the remaining coordinates are noncompact when q is odd
        nc = frozenset(range(q, 4)) if q % 2 else frozenset()
        if q % 2 == 0 or q == 4:
            assert real_form(th, ImGrading(th, nc)) == RealForm(9 - q, q)
    with pytest.raises(GradingError):
        RealForm(2, 3)


def test_real_form_is_cayley_invariant():
    for th in list_involutions(3):
        imag = th.imaginary_coords
        for mask in range(1 << len(imag)):
            eps = ImGrading(th, frozenset(imag[i] for i in range(len(imag)) if mask >> i & 1))
            form = real_form(th, eps)
            for a in positive_roots(3):
                if root_type(th, a) == "imaginary" and eps(a) == 1:
                    assert real_form(*cayley_pair(th, eps, a)) == form


def test_supportable_examples():
    assert not is_supportable(I2(), parse_grading(I2(), "+ +"), LAM)
    assert is_supportable(I2(), parse_grading(I2(), "⊕ +"), LAM)
    sw = Involution.of(parse_diagram("2 1"))
    assert is_supportable(sw, ImGrading(sw, frozenset()), LAM)
    assert len(supportable_gradings(identity(2), LAM)) == 2


@pytest.mark.parametrize("n", [2, 3, 4])
def test_supportable_matches_coordinate_rule(n):
    for pattern in product((0, 1), repeat=n):
        lam = canonical_rep(pattern)
        for th in list_involutions(n):
            ot = tuple(((-1) ** th.bits[th.perm[i]], th.perm[i]) for i in range(n))
            imag = th.imaginary_coords
            for mask in range(1 << len(imag)):
                nc = frozenset(imag[i] for i in range(len(imag)) if mask >> i & 1)
                want = O.supportable(ot, nc, lam.twice)
                assert is_supportable(th, ImGrading(th, nc), lam) == want


def test_central_char_examples():
    th = Involution.of(parse_diagram("+ -"))
    assert central_char(th, ImGrading(th, frozenset({0})), LAM) == 1
    th = Involution.of(parse_diagram("- +"))
    assert central_char(th, ImGrading(th, frozenset({1})), LAM) == -1
    th = Involution.of(parse_diagram("2 1"))
    with pytest.raises(GradingError):
        central_char(th, ImGrading(th, frozenset()), LAM)


def test_derive_eta_examples():
    m1 = Involution.of(minus_one(2))
    eta = derive_eta(m1, 1, LAM)
    assert eta((0, 1)) == 0
    assert eta((1, 0)) == 1
    assert (eta.n_p, eta.n_np) == (1, 1)
    assert central_char_from_eta(eta) == 1
    with pytest.raises(GradingError):
        derive_eta(m1, 0, LAM)


def test_dual_bigrading_and_group():
    m1 = Involution.of(minus_one(2))
    b = AbstractBigrading.build(m1, ImGrading(m1, frozenset()), LAM, chi=1)
    assert dual_group(b) == RealForm(3, 2)
    d = dual_bigrading(b)
    assert d.theta == Involution.of(identity(2))
    assert d.eps.noncompact == b.eta.parity
    assert dual_bigrading(d) == b
    assert central_char(d.theta, d.eps, LAM) == -1
    m4 = Involution.of(minus_one(4))
    lam4 = InfChar.parse("7/2,3,3/2,1")
    b4 = AbstractBigrading.build(m4, ImGrading(m4, frozenset()), lam4, chi=1)
    assert (b4.eta.n_p, b4.eta.n_np) == (2, 2)
    assert dual_group(b4) == RealForm(5, 4)
    b3 = AbstractBigrading.build(Involution.of(minus_one(3)), ImGrading(Involution.of(minus_one(3)), frozenset()), InfChar.parse("5/2,2,1"), chi=1)
    with pytest.raises(GradingError):
        dual_group(b3)
