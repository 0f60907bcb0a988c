"""Imaginary and real gradings, supportability, real forms and central characters.

Gradings are stored by their values on short roots.  Values on long roots
follow from additivity, except for long roots built from a swapped pair of
coordinates, which are forced: a long imaginary root of that shape is always
noncompact, and a long real root of that shape is graded by the parity rule.

Central characters are recorded as a sign ``chi`` in ``{+1, -1}``.  With
``g_i = +1`` for a half-integral coordinate and ``-1`` for an integral one,
the value of a genuine character on the lift of a short root class is

* ``+g_i`` for a short imaginary root on coordinate ``i``;
* ``-g_i (-1)^{eta(e_i)}`` for a short real root on coordinate ``i``,

and ``chi = (-1)^{n_r}`` times the value on a short compact imaginary or
short real root (equivalently ``(-1)^{n_r + 1}`` times the value on a short
noncompact imaginary root).  The sign ``(-1)^{n_r}`` tracks how the fixed
central element compares with the short root lifts on a Cartan with ``n_r``
real coordinates; it flips with each short Cayley transform.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .weylb import (
    COMPLEX,
    IMAGINARY,
    REAL,
    InfChar,
    Involution,
    SignedPerm,
    WeylError,
    act_on_vector,
    all_roots,
    compose,
    conjugate,
    coroot,
    dualize_involution,
    inverse,
    is_long,
    pairing,
    positive_roots,
    reflection,
    root_type,
    stats,
    tokenize,
)


class GradingError(ValueError):
    """Raised on invalid grading data or undetermined quantities."""


def _nonzero(alpha) -> list:
    return [i for i, x in enumerate(alpha) if x]


# ---------------------------------------------------------------------------
# imaginary gradings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ImGrading:
    """Grading of the imaginary roots of ``theta``.

    Parameters
    ----------
    theta : Involution
    noncompact : frozenset of int
        0-based imaginary coordinates ``i`` with ``e_i`` noncompact.
    """

    theta: Involution
    noncompact: frozenset

    def __post_init__(self):
        theta = Involution.of(self.theta)
        object.__setattr__(self, "theta", theta)
        nc = frozenset(int(i) for i in self.noncompact)
        object.__setattr__(self, "noncompact", nc)
        bad = nc - set(theta.imaginary_coords)
        if bad:
            raise GradingError(f"coordinates {sorted(bad)} are not imaginary for {theta}")

    @property
    def n_n(self) -> int:
        return len(self.noncompact)

    @property
    def n_cp(self) -> int:
        return len(self.theta.imaginary_coords) - self.n_n

    def __call__(self, alpha) -> int:
        return eval_grading(self, alpha)

    def render(self) -> str:
        """Diagram with ``⊕`` marking noncompact imaginary coordinates."""
        return render_grading(self.theta, self.noncompact, mark="⊕")

    def key(self) -> tuple:
        return tuple(sorted(self.noncompact))


@dataclass(frozen=True)
class ReGrading:
    """Grading of the real roots of ``theta`` relative to ``lam``.

    Parameters
    ----------
    theta : Involution
    parity : frozenset of int
        0-based real coordinates ``i`` with ``eta(e_i) = 1``.
    lam : InfChar
    """

    theta: Involution
    parity: frozenset
    lam: InfChar

    def __post_init__(self):
        theta = Involution.of(self.theta)
        object.__setattr__(self, "theta", theta)
        par = frozenset(int(i) for i in self.parity)
        object.__setattr__(self, "parity", par)
        bad = par - set(theta.real_coords)
        if bad:
            raise GradingError(f"coordinates {sorted(bad)} are not real for {theta}")
        if self.lam.n != theta.n:
            raise GradingError("rank mismatch")

    @property
    def n_p(self) -> int:
        return len(self.parity)

    @property
    def n_np(self) -> int:
        return len(self.theta.real_coords) - self.n_p

    def __call__(self, alpha) -> int:
        return eval_grading(self, alpha)


def render_grading(theta: Involution, marked: Iterable[int], mark: str = "⊕") -> str:
    toks = []
    marked = set(marked)
    for i in range(theta.n):
        s, j = theta.image(i)
        if j == i:
            if s > 0:
                toks.append(mark if i in marked else "+")
            else:
                toks.append("-")
        elif s > 0:
            toks.append(str(j + 1))
        else:
            toks.append(f"({j + 1})")
    return " ".join(toks)


def parse_grading(theta: Involution, text: str) -> ImGrading:
    """Parse a grading diagram such as ``"+ + ⊕ ⊕"`` or ``"++nn"``.

    Imaginary positions carry ``+`` (compact) or ``⊕``/``n`` (noncompact);
    other positions must repeat the tokens of ``theta``'s diagram.

    Raises
    ------
    GradingError
        If the text does not match ``theta``.
    """
    try:
        toks = tokenize(text, extra="⊕n")
    except WeylError as exc:
        raise GradingError(str(exc)) from exc
    if len(toks) != theta.n:
        raise GradingError(f"grading {text!r} has wrong length for rank {theta.n}")
    base = render_diagram_tokens(theta)
    nc = set()
    for i, (tok, ref) in enumerate(zip(toks, base)):
        if ref == "+":
            if tok in ("⊕", "n"):
                nc.add(i)
            elif tok != "+":
                raise GradingError(f"position {i + 1}: expected +/⊕, got {tok!r}")
        elif tok.replace("−", "-") != ref:
            raise GradingError(f"position {i + 1}: expected {ref!r}, got {tok!r}")
    return ImGrading(theta, frozenset(nc))


def render_diagram_tokens(theta: Involution) -> list:
    return render_grading(theta, ()).split(" ")


def eval_grading(g, alpha: Sequence[int]) -> int:
    """Value of an imaginary or real grading on a root of its kind.

    Raises
    ------
    GradingError
        If ``alpha`` is of the wrong kind.
    """
    theta = g.theta
    alpha = tuple(alpha)
    kind = root_type(theta, alpha)
    want = IMAGINARY if isinstance(g, ImGrading) else REAL
    if kind != want:
        raise GradingError(f"{alpha} is {kind}, not {want}, for {theta}")
    idx = _nonzero(alpha)
    if isinstance(g, ImGrading):
        if len(idx) == 1:
            return int(idx[0] in g.noncompact)
        i, j = idx
        if theta.coord_kind(i) == "+" and theta.coord_kind(j) == "+":
            return (int(i in g.noncompact) + int(j in g.noncompact)) % 2
        return 1  # sum of two swapped short complex roots
    if len(idx) == 1:
        return int(idx[0] in g.parity)
    return int(g.lam.pair_twice(alpha) % 2 == 1)


def check_grading_axioms(g) -> bool:
    """Verify ``g(a+b) = g(a) + g(b)`` on all triples of roots of the grading's kind."""
    theta = g.theta
    kind = IMAGINARY if isinstance(g, ImGrading) else REAL
    roots = [a for a in all_roots(theta.n) if root_type(theta, a) == kind]
    rset = set(roots)
    for a in roots:
        if eval_grading(g, a) != eval_grading(g, tuple(-x for x in a)):
            return False
        for b in roots:
            c = tuple(x + y for x, y in zip(a, b))
            if c in rset and eval_grading(g, c) != (eval_grading(g, a) + eval_grading(g, b)) % 2:
                return False
    return True


# ---------------------------------------------------------------------------
# cross action and Cayley transforms on pairs
# ---------------------------------------------------------------------------


def cross_grading(w: SignedPerm, eps: ImGrading) -> ImGrading:
    """``w x eps``: the grading ``beta -> eps(w^{-1} beta)`` of ``w theta w^{-1}``."""
    new_theta = Involution.of(conjugate(w, eps.theta))
    winv = inverse(w)
    nc = set()
    for j in new_theta.imaginary_coords:
        _, i = winv.image(j)
        if i in eps.noncompact:
            nc.add(j)
    return ImGrading(new_theta, frozenset(nc))


def cayley_pair(theta: Involution, eps: ImGrading, alpha: Sequence[int]) -> tuple:
    """Cayley transform of the pair ``(theta, eps)`` through noncompact imaginary ``alpha``.

    Returns
    -------
    tuple
        ``(s_alpha theta, eps')`` where ``eps'(beta) = eps(beta) + 1`` if
        ``alpha + beta`` is a root, ``eps(beta)`` otherwise.

    Raises
    ------
    GradingError
        If ``alpha`` is not noncompact imaginary.
    """
    alpha = tuple(alpha)
    if root_type(theta, alpha) != IMAGINARY or eval_grading(eps, alpha) != 1:
        raise GradingError(f"{alpha} is not noncompact imaginary for {theta}")
    new_theta = Involution.of(compose(reflection(alpha), theta))
    roots = set(all_roots(theta.n))
    nc = set()
    for i in new_theta.imaginary_coords:
        beta = tuple(1 if k == i else 0 for k in range(theta.n))
        val = eval_grading(eps, beta)
        if tuple(a + b for a, b in zip(alpha, beta)) in roots:
            val ^= 1
        if val:
            nc.add(i)
    return new_theta, ImGrading(new_theta, frozenset(nc))


# ---------------------------------------------------------------------------
# real forms and supportability
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class RealForm:
    """``Spin(p, q)`` with ``p + q`` odd and ``p > q >= 0``."""

    p: int
    q: int

    def __post_init__(self):
        if (self.p + self.q) % 2 == 0 or self.q < 0 or self.p <= self.q:
            raise GradingError(f"invalid real form ({self.p},{self.q})")

    @property
    def n(self) -> int:
        return (self.p + self.q - 1) // 2

    def __str__(self) -> str:
        return f"Spin({self.p},{self.q})"


def _form_from_counts(a: int, b: int, rest: int) -> RealForm:
    p = 2 * max(a, b) + rest + int(a <= b)
    q = 2 * min(a, b) + rest + int(a > b)
    return RealForm(p, q)


def real_form(theta: Involution, eps: ImGrading) -> RealForm:
    """Real form determined by an abstract pair."""
    st = stats(theta)
    return _form_from_counts(eps.n_n, eps.n_cp, st.n_r + st.n_c)


@lru_cache(maxsize=None)
def is_supportable(theta: Involution, eps: ImGrading, lam: InfChar) -> bool:
    """Integrality test on long imaginary and long complex roots."""
    for alpha in positive_roots(theta.n):
        if not is_long(alpha):
            continue
        kind = root_type(theta, alpha)
        if kind == IMAGINARY:
            integral = lam.pair_twice(coroot(alpha)) % 2 == 0
            if integral != (eval_grading(eps, alpha) == 0):
                return False
        elif kind == COMPLEX:
            ta = act_on_vector(theta, alpha)
            v = tuple(a + b for a, b in zip(coroot(alpha), coroot(ta)))
            integral = lam.pair_twice(v) % 2 == 0
            if integral != (pairing(alpha, coroot(ta)) == 0):
                return False
    return True


def supportable_gradings(theta: Involution, lam: InfChar) -> list:
    """All supportable imaginary gradings of ``theta``, by brute force over subsets."""
    theta = Involution.of(theta)
    imag = theta.imaginary_coords
    out = []
    for mask in range(1 << len(imag)):
        nc = frozenset(imag[k] for k in range(len(imag)) if (mask >> k) & 1)
        eps = ImGrading(theta, nc)
        if is_supportable(theta, eps, lam):
            out.append(eps)
    return out


# ---------------------------------------------------------------------------
# central characters and real gradings
# ---------------------------------------------------------------------------


def _g(lam: InfChar, i: int) -> int:
    return -1 if lam.is_integral_coord(i) else 1


def central_char(theta: Involution, eps: ImGrading, lam: InfChar) -> int:
    """Central character determined by a short imaginary root.

    Raises
    ------
    GradingError
        If there is no short imaginary root (the character then depends on a
        real grading, or is free when every short root is complex), or if the
        short imaginary roots give inconsistent answers.
    """
    imag = theta.imaginary_coords
    if not imag:
        raise GradingError(f"central character undetermined by eps for {theta}")
    nr = len(theta.real_coords)
    values = set()
    for i in imag:
        sign = _g(lam, i) * (-1) ** nr
        if i in eps.noncompact:
            sign = -sign
        values.add(sign)
    if len(values) != 1:
        raise GradingError("short imaginary roots give inconsistent central characters")
    return values.pop()


def central_char_from_eta(eta: ReGrading) -> int:
    """Central character determined by a short real root.

    Raises
    ------
    GradingError
        If there is no short real root or the values disagree.
    """
    theta, lam = eta.theta, eta.lam
    real = theta.real_coords
    if not real:
        raise GradingError(f"no short real root for {theta}")
    nr = len(real)
    values = set()
    for i in real:
        gamma = -_g(lam, i) * (-1) ** int(i in eta.parity)
        values.add(gamma * (-1) ** nr)
    if len(values) != 1:
        raise GradingError("short real roots give inconsistent central characters")
    return values.pop()


def derive_eta(theta: Involution, chi_or_eps, lam: InfChar) -> ReGrading:
    """Real grading attached to a central character (or to an imaginary grading).

    Raises
    ------
    GradingError
        If the central character cannot be determined.
    """
    if isinstance(chi_or_eps, ImGrading):
        chi = central_char(theta, chi_or_eps, lam)
    else:
        chi = int(chi_or_eps)
        if chi not in (1, -1):
            raise GradingError("central character must be +1 or -1")
    real = theta.real_coords
    t = chi * (-1) ** len(real)
    parity = set()
    for i in real:
        if lam.is_integral_coord(i):
            if t == -1:
                parity.add(i)
        elif t == 1:
            parity.add(i)
    return ReGrading(theta, frozenset(parity), lam)


# ---------------------------------------------------------------------------
# bigradings and duality
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AbstractBigrading:
    """``(theta, eps, eta, lam)`` with ``eps`` and ``eta`` of opposite kind."""

    theta: Involution
    eps: ImGrading
    eta: ReGrading
    lam: InfChar

    def __post_init__(self):
        if self.eps.theta != self.theta or self.eta.theta != self.theta:
            raise GradingError("gradings belong to a different involution")
        if not is_supportable(self.theta, self.eps, self.lam):
            raise GradingError("bigrading is not supportable")

    @classmethod
    def build(cls, theta: Involution, eps: ImGrading, lam: InfChar, chi: int | None = None):
        """Attach the real grading; ``chi`` is needed only when ``theta`` has no short imaginary root."""
        if theta.imaginary_coords:
            chi_eps = central_char(theta, eps, lam)
            if chi is not None and chi != chi_eps:
                raise GradingError("central character disagrees with the imaginary grading")
            chi = chi_eps
        elif chi is None:
            raise GradingError("central character must be supplied")
        return cls(theta, eps, derive_eta(theta, chi, lam), lam)

    def to_record(self) -> dict:
        return {
            "theta": str(self.theta),
            "noncompact": [i + 1 for i in sorted(self.eps.noncompact)],
            "parity": [i + 1 for i in sorted(self.eta.parity)],
            "twice_lambda": list(self.lam.twice),
        }


def dual_bigrading(b: AbstractBigrading) -> AbstractBigrading:
    """``(-theta, eta, eps, lam)`` with the gradings exchanging roles."""
    dtheta = dualize_involution(b.theta)
    eps = ImGrading(dtheta, b.eta.parity)
    eta = ReGrading(dtheta, b.eps.noncompact, b.lam)
    return AbstractBigrading(dtheta, eps, eta, b.lam)


def dual_group(b: AbstractBigrading) -> RealForm:
    """Dual real form ``(p^vee, q^vee)``.

    Raises
    ------
    GradingError
        If the rank is odd.
    """
    if b.theta.n % 2:
        raise GradingError("dual group is defined only for even rank")
    st = stats(b.theta)
    return _form_from_counts(b.eta.n_p, b.eta.n_np, st.n_s + st.n_c)
