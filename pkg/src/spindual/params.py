"""Genuine parameters as combinatorial data, their operations and the map psi.

A parameter is ``(theta, eps, chi, fiber, pc, kappa)``.  For involutions of
even parity (``n_s`` and ``n_r`` both even) each ``(theta, eps, chi)`` carries
two parameters, told apart by the bit ``pc``; it records the sign of the
genuine character on the almost central element ``z``.  The principal-class
label is

    bit = pc  XOR  [chi = -1 and f_theta odd],

the ``chi^{f_theta}`` correction comparing ``z`` on the given Cartan with
its value after transport to the evenly split one.

Operations change the principal-class bit by the following rules (only for
even parity; odd parity carries no bit):

=====================================  ===============================
integral cross action ``s_alpha``      bit flips iff
=====================================  ===============================
compact imaginary ``alpha``            never
noncompact imaginary, short            always
real ``alpha``                         ``eta(alpha) = 1``
complex, short, on coordinate ``i``    ``kappa_i`` half-integral
complex, long                          never
=====================================  ===============================

An extended cross action through a long simple nonintegral root moves to the
family member ``kappa''`` with the pattern of ``s_alpha kappa`` and flips the
bit iff ``sum(s_alpha kappa'' - kappa)`` is odd; this offset depends on the
infinitesimal characters only.  Long Cayley transforms keep the bit; a short
Cayley transform into an even-parity involution produces both bits.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .gradings import (
    AbstractBigrading,
    GradingError,
    ImGrading,
    RealForm,
    cayley_pair,
    central_char,
    cross_grading,
    derive_eta,
    dual_group,
    eval_grading,
    is_supportable,
    real_form,
    supportable_gradings,
)
from .weylb import (
    IMAGINARY,
    REAL,
    InfChar,
    Involution,
    act_on_vector,
    compose,
    conjugate,
    dualize_involution,
    integral_simple_roots,
    is_long,
    list_involutions,
    positive_form,
    reduced_word,
    reflection,
    root_type,
    simple_roots,
    stats,
)


class ParamError(ValueError):
    """Raised on invalid parameter data or inapplicable operations."""


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------


def canonical_rep(pattern: Sequence[int]) -> InfChar:
    """Smallest regular dominant vector with a given fractional pattern.

    Built from the last coordinate upward: each coordinate is the least
    positive value of the required type exceeding the one after it.
    """
    twice = []
    prev = 0
    for bit in reversed(pattern):
        v = prev + 1
        if v % 2 != bit:
            v += 1
        twice.append(v)
        prev = v
    return InfChar(tuple(reversed(twice)))


@dataclass(frozen=True)
class Family:
    """Canonical representatives of the fractional patterns in the W-orbit of ``lam``."""

    members: tuple

    def index(self, kappa: InfChar) -> int:
        try:
            return self.members.index(kappa)
        except ValueError:
            raise ParamError(f"{kappa} is not a family member") from None

    def for_pattern(self, pattern: Sequence[int]) -> InfChar:
        return canonical_rep(pattern)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def family(lam: InfChar) -> Family:
    patterns = sorted(set(itertools.permutations(lam.pattern)), reverse=True)
    return Family(tuple(canonical_rep(p) for p in patterns))


def moved_kappa(kappa: InfChar, alpha: Sequence[int]) -> InfChar:
    """Family member carrying the pattern of ``s_alpha kappa``."""
    img = act_on_vector(reflection(alpha), kappa.twice)
    return canonical_rep(tuple(abs(x) % 2 for x in img))


def family_offset(kappa: InfChar, alpha: Sequence[int]) -> tuple:
    """``delta = s_alpha kappa'' - kappa`` (an element of the root lattice)."""
    k2 = moved_kappa(kappa, alpha)
    img = act_on_vector(reflection(alpha), k2.twice)
    diff = [a - b for a, b in zip(img, kappa.twice)]
    if any(d % 2 for d in diff):  # pragma: no cover - patterns agree by construction
        raise ParamError("family offset is not in the root lattice")
    return tuple(d // 2 for d in diff)


# ---------------------------------------------------------------------------
# parameters
# ---------------------------------------------------------------------------


def _parity_even(theta: Involution) -> bool:
    st = stats(theta)
    return st.n_s % 2 == 0 and st.n_r % 2 == 0


def _chi_shift(theta: Involution, chi: int) -> int:
    return int(chi == -1 and stats(theta).f_theta % 2 == 1)


@dataclass(frozen=True)
class PrincipalClassLabel:
    chi: int
    bit: int


@dataclass(frozen=True)
class GenuineParam:
    """Combinatorial datum of a genuine parameter.

    Parameters
    ----------
    theta : Involution
    eps : ImGrading
    chi : int
        Central character sign.
    fiber : int
        Orbit label within the fiber over ``(theta, eps)``: equal to ``pc``
        when there are no real coordinates (two orbits), otherwise 0.
    pc : int
        Sign bit of the character on ``z``; 0 for odd parity.
    kappa : InfChar
    """

    theta: Involution
    eps: ImGrading
    chi: int
    fiber: int
    pc: int
    kappa: InfChar

    @property
    def n(self) -> int:
        return self.theta.n

    @property
    def even_parity(self) -> bool:
        return _parity_even(self.theta)

    @property
    def length(self) -> int:
        return stats(self.theta).length

    @property
    def eta(self):
        return derive_eta(self.theta, self.chi, self.kappa)

    @property
    def real_form(self) -> RealForm:
        return real_form(self.theta, self.eps)

    @property
    def bigrading(self) -> AbstractBigrading:
        return AbstractBigrading(self.theta, self.eps, self.eta, self.kappa)

    @property
    def pbit(self) -> int | None:
        """Principal-class bit, or ``None`` for odd parity."""
        if not self.even_parity:
            return None
        return self.pc ^ _chi_shift(self.theta, self.chi)

    def key(self) -> tuple:
        return (
            str(self.theta),
            tuple(sorted(self.eps.noncompact)),
            -self.chi,
            self.fiber,
            self.pc,
            tuple(-t for t in self.kappa.twice),
        )

    def sort_key(self) -> tuple:
        return (self.length,) + self.key()

    def to_record(self) -> dict:
        rec = {
            "theta": str(self.theta),
            "grading": self.eps.render(),
            "noncompact": [i + 1 for i in sorted(self.eps.noncompact)],
            "chi": self.chi,
            "fiber": self.fiber,
            "pc": self.pc,
            "kappa": str(self.kappa),
            "length": self.length,
            "real_form": [self.real_form.p, self.real_form.q],
        }
        if self.n % 2 == 0:
            dg = dual_group(self.bigrading)
            rec["dual_form"] = [dg.p, dg.q]
        return rec

    def __str__(self) -> str:
        return f"[{self.eps.render()} | chi={self.chi:+d} pc={self.pc} @ {self.kappa}]"


def make_param(theta: Involution, eps: ImGrading, chi: int, pbit: int, kappa: InfChar) -> GenuineParam:
    """Build a parameter from its principal-class bit, validating the data.

    Raises
    ------
    ParamError
        If the triple is not supportable or the central character disagrees
        with the imaginary grading.
    """
    theta = Involution.of(theta)
    if chi not in (1, -1):
        raise ParamError("chi must be +1 or -1")
    if not is_supportable(theta, eps, kappa):
        raise ParamError(f"{eps.render()} is not supportable at {kappa}")
    if theta.imaginary_coords and central_char(theta, eps, kappa) != chi:
        raise ParamError("central character disagrees with the grading")
    if _parity_even(theta):
        pc = (pbit or 0) ^ _chi_shift(theta, chi)
    else:
        pc = 0
    fiber = pc if not theta.real_coords else 0
    return GenuineParam(theta, eps, chi, fiber, pc, kappa)


def params_over(theta: Involution, form: RealForm, kappa: InfChar, chi: int | None = None) -> list:
    """All parameters over ``theta`` for the real form at ``kappa``."""
    out = []
    for eps in supportable_gradings(theta, kappa):
        if real_form(theta, eps) != form:
            continue
        if theta.imaginary_coords:
            chis = [central_char(theta, eps, kappa)]
        else:
            chis = [1, -1]
        for c in chis:
            if chi is not None and c != chi:
                continue
            bits = (0, 1) if _parity_even(theta) else (0,)
            for b in bits:
                out.append(make_param(theta, eps, c, b, kappa))
    return out


def enumerate_params(p: int, q: int, lam: InfChar, chi: int | None = None) -> list:
    """All genuine parameters of ``Spin(p, q)`` at ``lam`` (optionally with fixed ``chi``).

    Raises
    ------
    ParamError
        If ``(p, q)`` is not a real form of rank ``lam.n``.
    """
    try:
        form = RealForm(p, q)
    except GradingError as exc:
        raise ParamError(str(exc)) from exc
    if form.n != lam.n:
        raise ParamError(f"Spin({p},{q}) has rank {form.n}, lambda has rank {lam.n}")
    out = []
    for theta in list_involutions(lam.n):
        out.extend(params_over(theta, form, lam, chi))
    return sorted(out, key=GenuineParam.sort_key)


# ---------------------------------------------------------------------------
# cross actions
# ---------------------------------------------------------------------------


def _cross_flip(gamma: GenuineParam, alpha: tuple) -> int:
    kind = root_type(gamma.theta, alpha)
    if kind == IMAGINARY:
        return int(not is_long(alpha) and eval_grading(gamma.eps, alpha) == 1)
    if kind == REAL:
        return eval_grading(gamma.eta, alpha)
    if is_long(alpha):
        return 0
    i = next(k for k, x in enumerate(alpha) if x)
    return int(not gamma.kappa.is_integral_coord(i))


def _transport(gamma: GenuineParam, alpha: tuple, kappa: InfChar, flip: int) -> GenuineParam:
    s = reflection(alpha)
    theta = Involution.of(conjugate(s, gamma.theta))
    eps = cross_grading(s, gamma.eps)
    pbit = None if gamma.pbit is None else gamma.pbit ^ flip
    return make_param(theta, eps, gamma.chi, pbit, kappa)


@lru_cache(maxsize=1 << 16)
def _simple_cross(gamma: GenuineParam, alpha: tuple) -> GenuineParam:
    """Cross action by a simple root: integral rule or extended rule."""
    if gamma.kappa.is_integral_root(alpha):
        return _transport(gamma, alpha, gamma.kappa, _cross_flip(gamma, alpha))
    if not is_long(alpha):  # pragma: no cover - short roots are integral here
        raise ParamError("short roots are always integral")
    k2 = moved_kappa(gamma.kappa, alpha)
    flip = sum(family_offset(gamma.kappa, alpha)) % 2
    return _transport(gamma, alpha, k2, flip)


def weyl_cross(word: Sequence[Sequence[int]], gamma: GenuineParam) -> GenuineParam:
    """Act by a word in the simple roots (leftmost letter applied last)."""
    simples = set(simple_roots(gamma.n))
    cur = gamma
    for alpha in reversed(list(word)):
        alpha = tuple(alpha)
        if alpha not in simples:
            raise ParamError(f"{alpha} is not a simple root")
        cur = _simple_cross(cur, alpha)
    return cur


def cross_param(alpha: Sequence[int], gamma: GenuineParam) -> GenuineParam:
    """Integral cross action ``s_alpha x gamma``.

    Integral-simple roots use the direct rule; other integral roots act
    through a reduced word of ``s_alpha`` in the simple roots.

    Raises
    ------
    ParamError
        If ``alpha`` is not integral.
    """
    alpha = positive_form(alpha)
    if not gamma.kappa.is_integral_root(alpha):
        raise ParamError(f"{alpha} is not integral at {gamma.kappa}")
    if alpha in integral_simple_roots(gamma.kappa):
        return _transport(gamma, alpha, gamma.kappa, _cross_flip(gamma, alpha))
    return weyl_cross(reduced_word(reflection(alpha)), gamma)


def ext_cross_param(alpha: Sequence[int], gamma: GenuineParam) -> GenuineParam:
    """Extended cross action through a long nonintegral root.

    Raises
    ------
    ParamError
        If ``alpha`` is short or integral.
    """
    alpha = positive_form(alpha)
    if not is_long(alpha):
        raise ParamError("extended cross action needs a long root")
    if gamma.kappa.is_integral_root(alpha):
        raise ParamError(f"{alpha} is integral at {gamma.kappa}; use cross_param")
    if alpha in simple_roots(gamma.n):
        return _simple_cross(gamma, alpha)
    return weyl_cross(reduced_word(reflection(alpha)), gamma)


# ---------------------------------------------------------------------------
# Cayley transforms
# ---------------------------------------------------------------------------


def cayley_up(gamma: GenuineParam, alpha: Sequence[int]) -> list:
    """Cayley transform through a noncompact imaginary root (one or two parameters).

    Raises
    ------
    ParamError
        If ``alpha`` is not noncompact imaginary.
    """
    return list(_cayley_up(gamma, positive_form(alpha)))


def cayley_down(gamma: GenuineParam, alpha: Sequence[int]) -> list:
    """Inverse Cayley transform through a real root; empty iff parity fails.

    Raises
    ------
    ParamError
        If ``alpha`` is not real.
    """
    return list(_cayley_down(gamma, positive_form(alpha)))


@lru_cache(maxsize=1 << 16)
def _cayley_up(gamma: GenuineParam, alpha: tuple) -> tuple:
    if root_type(gamma.theta, alpha) != IMAGINARY or eval_grading(gamma.eps, alpha) != 1:
        raise ParamError(f"{alpha} is not noncompact imaginary for {gamma.theta}")
    theta2, eps2 = cayley_pair(gamma.theta, gamma.eps, alpha)
    if not _parity_even(theta2):
        bits = [None]
    elif gamma.pbit is not None:
        bits = [gamma.pbit]
    else:
        bits = [0, 1]
    out = [make_param(theta2, eps2, gamma.chi, b, gamma.kappa) for b in bits]
    return tuple(sorted(out, key=GenuineParam.sort_key))


@lru_cache(maxsize=1 << 16)
def _cayley_down(gamma: GenuineParam, alpha: tuple) -> tuple:
    if root_type(gamma.theta, alpha) != REAL:
        raise ParamError(f"{alpha} is not real for {gamma.theta}")
    if eval_grading(gamma.eta, alpha) == 0:
        return ()
    theta2 = Involution.of(compose(reflection(alpha), gamma.theta))
    out = []
    for cand in params_over(theta2, gamma.real_form, gamma.kappa, gamma.chi):
        if eval_grading(cand.eps, alpha) != 1:
            continue
        if gamma in _cayley_up(cand, alpha):
            out.append(cand)
    return tuple(sorted(out, key=GenuineParam.sort_key))


# ---------------------------------------------------------------------------
# principal classes and psi
# ---------------------------------------------------------------------------


def principal_class(gamma: GenuineParam) -> PrincipalClassLabel:
    """Principal-class label ``(chi, bit)`` of an even-parity parameter.

    The stored ``pc`` is the sign bit of the character on ``z`` for the
    Cartan of ``theta``; moving to the evenly split Cartan multiplies that
    value by ``chi^{f_theta}``.

    Raises
    ------
    ParamError
        If ``theta`` is not of even parity.
    """
    if not gamma.even_parity:
        raise ParamError(f"{gamma.theta} is not of even parity")
    return PrincipalClassLabel(gamma.chi, gamma.pc ^ _chi_shift(gamma.theta, gamma.chi))


def psi(gamma: GenuineParam) -> GenuineParam:
    """Image of ``gamma`` in the dual group.

    The bigrading is dualized, ``chi`` becomes ``-chi`` and the
    principal-class bit is kept.

    Raises
    ------
    ParamError
        If the rank is odd or the dual data are inconsistent.
    """
    if gamma.n % 2:
        raise ParamError("psi is defined only for even rank")
    dtheta = dualize_involution(gamma.theta)
    eps = ImGrading(dtheta, gamma.eta.parity)
    chi = -gamma.chi
    if dtheta.imaginary_coords and central_char(dtheta, eps, gamma.kappa) != chi:
        raise ParamError("dual central character is not opposite")  # pragma: no cover
    return make_param(dtheta, eps, chi, gamma.pbit, gamma.kappa)


def dual_form_of(gamma: GenuineParam) -> RealForm:
    return dual_group(gamma.bigrading)


# ---------------------------------------------------------------------------
# closed-form counts
# ---------------------------------------------------------------------------


def param_count(theta: Involution, lam: InfChar) -> int:
    """Closed form ``2^{2 + sym - i_b - r_b r_p}`` for one real form, both ``chi``."""
    st = stats(theta, lam)
    return 2 ** (2 + st.sym - st.i_b - st.r_b * st.r_p)


def param_count_chi(theta: Involution) -> int:
    """Closed form ``2^{1 - r_b r_p}`` for one real form and one ``chi``."""
    st = stats(theta)
    return 2 ** (1 - st.r_b * st.r_p)
