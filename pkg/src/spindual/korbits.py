"""Fibers of orbits over an involution via the m-calculus.

Points of the fiber over ``theta`` are formal symbols ``m(w) . O`` with
``w`` in the Weyl group of the imaginary roots and ``m(w)`` a class in
``A-(-theta) / A+-(-theta)``.  For a word ``w = s_{a_t} ... s_{a_1}`` (``a_1``
applied first)

    m(w) = sum_k eps_k(a_k) m_{a_k},   eps_k = (s_{a_{k-1}} ... s_{a_1}) x eps,

so the whole fiber is reached by a breadth-first search over the simple
imaginary reflections.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .gradings import ImGrading, cross_grading, eval_grading
from .mlattice import madd, m_of_root, mzero, quotient_class, sublattices
from .weylb import (
    IMAGINARY,
    InfChar,
    Involution,
    dualize_involution,
    imaginary_simple_roots,
    reflection,
    root_type,
    stats,
)


class FiberError(ValueError):
    """Raised on invalid fiber input."""


@dataclass(frozen=True)
class FiberPoint:
    """The symbol ``m . O`` over the base orbit ``O`` with grading ``base_grading``.

    ``grading`` is the transported grading of the point.
    """

    theta: Involution
    base_grading: ImGrading
    mclass: tuple
    grading: ImGrading

    @classmethod
    def base(cls, eps: ImGrading) -> "FiberPoint":
        theta = eps.theta
        return cls(theta, eps, mzero(theta.n), eps)


def _check_imaginary(theta: Involution, alpha) -> tuple:
    alpha = tuple(alpha)
    if root_type(theta, alpha) != IMAGINARY:
        raise FiberError(f"{alpha} is not imaginary for {theta}")
    return alpha


def _step(point: FiberPoint, alpha: tuple) -> FiberPoint:
    """Apply the reflection in an imaginary root ``alpha`` to a fiber point."""
    tau = dualize_involution(point.theta)
    val = eval_grading(point.grading, alpha)
    m = point.mclass
    if val:
        m = quotient_class(madd(m, m_of_root(alpha)), tau)
    new_grading = cross_grading(reflection(alpha), point.grading)
    return FiberPoint(point.theta, point.base_grading, m, new_grading)


def m_theta(base: FiberPoint, word: Sequence[Sequence[int]]) -> tuple:
    """Coset ``m(w)`` for ``w`` written as a word, leftmost letter applied last.

    Raises
    ------
    FiberError
        If a letter is not imaginary for ``theta``.
    """
    return cross_fiber(base, word).mclass


def cross_fiber(point: FiberPoint, word: Sequence[Sequence[int]]) -> FiberPoint:
    """Cross action of ``w`` (a word in imaginary roots) on a fiber point."""
    cur = point
    for alpha in reversed(list(word)):
        cur = _step(cur, _check_imaginary(point.theta, alpha))
    return cur


def nci_type(point: FiberPoint, alpha: Sequence[int]) -> str:
    """Type ``"I"`` or ``"II"`` of a noncompact imaginary root.

    Raises
    ------
    FiberError
        If ``alpha`` is not noncompact imaginary for the point's grading.
    """
    alpha = _check_imaginary(point.theta, alpha)
    if eval_grading(point.grading, alpha) != 1:
        raise FiberError(f"{alpha} is compact")
    tau = dualize_involution(point.theta)
    split = sublattices(tau)
    return "II" if m_of_root(alpha) in split.a_pm else "I"


def fiber_order(theta: Involution, eps: ImGrading) -> int:
    """Closed form ``2^{1 - r_b} C(n_s, n_n)``.

    The closed form is stated for noncompact real forms; the compact form
    (``theta = I`` with every root compact) has a single orbit.
    """
    st = stats(theta)
    if st.n_s == theta.n and eps.n_n == 0:
        return 1
    return 2 ** (1 - st.r_b) * math.comb(st.n_s, eps.n_n)


def genuine_fiber_order(theta: Involution, lam: InfChar) -> int:
    """Closed form ``2^{1 - r_b} 2^{sym}``, or 0 if no supportable triple exists."""
    from .gradings import supportable_gradings

    theta = Involution.of(theta)
    if not supportable_gradings(theta, lam):
        return 0
    st = stats(theta, lam)
    return 2 ** (1 - st.r_b) * 2 ** st.sym


@dataclass(frozen=True)
class FiberRow:
    index: int
    mclass: tuple
    grading: ImGrading
    images: tuple


@dataclass(frozen=True)
class FiberTable:
    """Fiber rows with images under the simple imaginary reflections."""

    theta: Involution
    base_grading: ImGrading
    generators: tuple
    rows: tuple

    def __len__(self) -> int:
        return len(self.rows)

    def index_of(self, mclass: tuple) -> int:
        for r in self.rows:
            if r.mclass == tuple(mclass):
                return r.index
        raise KeyError(mclass)


def enumerate_fiber(theta: Involution, eps: ImGrading) -> FiberTable:
    """Breadth-first enumeration of the fiber containing the base orbit of ``eps``.

    Rows are sorted by the canonical bit vector of their coset.

    Raises
    ------
    FiberError
        If the grading belongs to another involution, or if two words with the
        same coset produce different gradings.
    """
    theta = Involution.of(theta)
    if eps.theta != theta:
        raise FiberError("grading does not belong to theta")
    gens = imaginary_simple_roots(theta)
    start = FiberPoint.base(eps)
    seen = {start.mclass: start}
    queue = deque([start])
    edges = {}
    while queue:
        pt = queue.popleft()
        imgs = []
        for alpha in gens:
            nxt = _step(pt, alpha)
            old = seen.get(nxt.mclass)
            if old is None:
                seen[nxt.mclass] = nxt
                queue.append(nxt)
            elif old.grading != nxt.grading:
                raise FiberError("coset determines two different gradings")
            imgs.append(nxt.mclass)
        edges[pt.mclass] = imgs
    order = sorted(seen)
    index = {m: k for k, m in enumerate(order)}
    rows = tuple(
        FiberRow(index[m], m, seen[m].grading, tuple(index[x] for x in edges[m]))
        for m in order
    )
    return FiberTable(theta, eps, tuple(gens), rows)


def mclass_label(mclass: Sequence[int]) -> str:
    """Human label such as ``m(a1) m(a2) m(b)``; ``e`` for the identity."""
    n = len(mclass)
    names = [f"m(a{i + 1})" for i in range(n - 1)] + ["m(b)"]
    parts = [names[i] for i in range(n) if mclass[i]]
    return " ".join(parts) if parts else "e"
