"""Fibers over an involution: the m-calculus, types and orbit counts."""

import pytest

import oracles as O
from spindual.gradings import ImGrading, parse_grading
from spindual.korbits import (
    FiberError,
    FiberPoint,
    cross_fiber,
    enumerate_fiber,
    fiber_order,
    genuine_fiber_order,
    m_theta,
    mclass_label,
    nci_type,
)
from spindual.mlattice import madd, m_of_root, mzero
from spindual.weylb import InfChar, identity, list_involutions, minus_one, parse_diagram

A1, A2, A3, B = (1, -1, 0, 0), (0, 1, -1, 0), (0, 0, 1, -1), (0, 0, 0, 1)


@pytest.fixture(scope="module")
def spin54_base():
    th = identity(4)
    return FiberPoint.base(parse_grading(th, "+ + ⊕ ⊕"))


def all_gradings(th):
    imag = th.imaginary_coords
    for mask in range(1 << len(imag)):
        yield ImGrading(th, frozenset(imag[i] for i in range(len(imag)) if mask >> i & 1))


def test_m_theta_examples(spin54_base):
    assert m_theta(spin54_base, []) == mzero(4)
    assert m_theta(spin54_base, [A2]) == m_of_root(A2)
    assert m_theta(spin54_base, [A1, A2]) == madd(m_of_root(A1), m_of_root(A2))


def test_cross_fiber_examples(spin54_base):
    table = enumerate_fiber(identity(4), spin54_base.grading)
    row0 = table.index_of(mzero(4))
    assert table.rows[row0].images[0] == row0  # alpha_1 fixes orbit 0
    one = cross_fiber(spin54_base, [A2])
    assert table.rows[row0].images[1] == table.index_of(one.mclass)
    two = cross_fiber(spin54_base, [B])
    assert two.mclass == m_of_root(B)
    with pytest.raises(FiberError):
        cross_fiber(FiberPoint.base(ImGrading(minus_one(2), frozenset())), [(1, 0)])


def test_nci_types():
    th = parse_diagram("+ -")
    pt = FiberPoint.base(ImGrading(th, frozenset({0})))
    assert nci_type(pt, (1, 0)) == "II"
    pt = FiberPoint.base(ImGrading(identity(2), frozenset({0})))
    assert nci_type(pt, (1, 0)) == "I"
    assert nci_type(pt, (1, 1)) == "I"
    th = parse_diagram("(2)(1)")
    pt = FiberPoint.base(ImGrading(th, frozenset()))
    assert nci_type(pt, (1, -1)) == "I"
    with pytest.raises(FiberError):
        nci_type(FiberPoint.base(ImGrading(identity(2), frozenset())), (1, 0))


def test_fiber_order_examples():
    assert fiber_order(identity(4), ImGrading(identity(4), frozenset({2, 3}))) == 12
    th = parse_diagram("+ -")
    assert fiber_order(th, ImGrading(th, frozenset({0}))) == 1
    th = parse_diagram("(2)(1)")
    assert fiber_order(th, ImGrading(th, frozenset())) == 2
    # the compact form has a single orbit
    assert fiber_order(identity(2), ImGrading(identity(2), frozenset())) == 1


def test_fiber_order_one_noncompact_rank_two():
    # two rows per choice of the noncompact coordinate, so 2 * C(2, 1)
    th = identity(2)
    eps = parse_grading(th, "⊕ +")
    assert len(enumerate_fiber(th, eps)) == fiber_order(th, eps) == 4


def test_genuine_fiber_order_examples():
    lam = InfChar.parse("3/2,1")
    assert genuine_fiber_order(identity(2), lam) == 4
    assert genuine_fiber_order(minus_one(2), lam) == 1
    assert genuine_fiber_order(parse_diagram("+ -"), lam) == 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_fiber_sizes_match_oracle(n):
    for th in list_involutions(n):
        ot = tuple(((-1) ** th.bits[th.perm[i]], th.perm[i]) for i in range(n))
        for eps in all_gradings(th):
            size = len(enumerate_fiber(th, eps))
            assert size == O.fiber_size(ot, eps.noncompact), (str(th), eps.render())
            assert size == fiber_order(th, eps)


def test_spin54_fiber_gradings(spin54_base):
    table = enumerate_fiber(identity(4), spin54_base.grading)
    assert len(table) == 12
    counts = {}
    for row in table.rows:
        counts[row.grading.render()] = counts.get(row.grading.render(), 0) + 1
    assert len(counts) == 6 and set(counts.values()) == {2}


def test_enumerate_fiber_rejects_foreign_grading():
    with pytest.raises(FiberError):
        enumerate_fiber(identity(2), ImGrading(parse_diagram("+ -"), frozenset()))


def test_mclass_label():
    assert mclass_label((0, 0, 0, 0)) == "e"
    assert mclass_label((1, 0, 0, 1)) == "m(a1) m(b)"
