"""Coroot lattice modulo two, eigenlattice quotients and the cover group.

Elements of ``M = L(R^vee) / 2 L(R^vee)`` are bit tuples over the simple
coroot basis ``(alpha_1^vee, ..., alpha_{n-1}^vee, beta^vee = 2 e_n)``.  The
nonabelian cover is modelled by pairs ``(bits, sign)`` in the canonical form

    sign * g_1^{b_1} g_2^{b_2} ... g_n^{b_n}

where ``g_i`` is the chosen lift of the ``i``-th simple coroot class.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .weylb import (
    Involution,
    SignedPerm,
    WeylError,
    act_on_vector,
    compose,
    coroot,
    is_long,
    long_root,
    reflection,
    stats,
)

# ---------------------------------------------------------------------------
# coordinates
# ---------------------------------------------------------------------------


def to_simple_coroot_coords(c: Sequence[int]) -> tuple:
    """Express an element of the coroot lattice (in ``e``-coordinates) over simple coroots.

    Raises
    ------
    WeylError
        If ``c`` is not in the coroot lattice (coordinate sum odd).
    """
    n = len(c)
    total = sum(c)
    if total % 2:
        raise WeylError(f"{tuple(c)} is not in the coroot lattice")
    out = []
    acc = 0
    for i in range(n - 1):
        acc += c[i]
        out.append(acc)
    out.append(total // 2)
    return tuple(out)


def from_simple_coroot_coords(a: Sequence[int]) -> tuple:
    n = len(a)
    c = [0] * n
    prev = 0
    for i in range(n - 1):
        c[i] = a[i] - prev
        prev = a[i]
    c[n - 1] = 2 * a[n - 1] - prev
    return tuple(c)


@lru_cache(maxsize=None)
def _action_matrix(theta: SignedPerm) -> tuple:
    """Matrix of ``theta`` on the coroot lattice in simple coroot coordinates (columns)."""
    n = theta.n
    cols = []
    for k in range(n):
        basis = [0] * n
        basis[k] = 1
        img = act_on_vector(theta, from_simple_coroot_coords(basis))
        cols.append(to_simple_coroot_coords(img))
    return tuple(tuple(cols[k][i] for k in range(n)) for i in range(n))


# ---------------------------------------------------------------------------
# exact integer kernels
# ---------------------------------------------------------------------------


def integer_kernel(rows: Sequence[Sequence[int]]) -> list:
    """Basis of ``{x in Z^n : A x = 0}`` by unimodular column reduction.

    The matrix ``A`` is reduced to column echelon form ``A U = [H | 0]`` with
    ``U`` unimodular; the columns of ``U`` matching zero columns of ``A U``
    form a basis of the integer kernel, which is therefore saturated.
    """
    a = [list(r) for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(dst, src, k):
        # column dst -= k * column src
        for r in a:
            r[dst] -= k * r[src]
        for r in u:
            r[dst] -= k * r[src]

    def swap(c1, c2):
        for r in a:
            r[c1], r[c2] = r[c2], r[c1]
        for r in u:
            r[c1], r[c2] = r[c2], r[c1]

    pivot_col = 0
    for i in range(m):
        if pivot_col >= n:
            break
        while True:
            nz = [j for j in range(pivot_col, n) if a[i][j] != 0]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(a[i][j]))
            swap(pivot_col, j0)
            done = True
            for j in range(pivot_col + 1, n):
                if a[i][j]:
                    colop(j, pivot_col, a[i][j] // a[i][pivot_col])
                    if a[i][j]:
                        done = False
            if done:
                pivot_col += 1
                break
    return [tuple(u[r][j] for r in range(n)) for j in range(pivot_col, n)]


# ---------------------------------------------------------------------------
# F2 linear algebra
# ---------------------------------------------------------------------------


def _to_mask(bits: Sequence[int]) -> int:
    return sum((b & 1) << i for i, b in enumerate(bits))


def _to_bits(mask: int, n: int) -> tuple:
    return tuple((mask >> i) & 1 for i in range(n))


class F2Space:
    """Subspace of ``F_2^n`` held in reduced echelon form.

    Pivots are chosen at the highest set bit, so reduction is deterministic.
    """

    def __init__(self, n: int, vectors: Iterable[Sequence[int]] = ()):
        self.n = n
        self._rows = {}  # pivot bit -> mask
        for v in vectors:
            self._insert(_to_mask(v) if not isinstance(v, int) else v)
        self._fully_reduce()

    def _insert(self, mask: int) -> None:
        mask = self._reduce_mask(mask)
        if mask:
            self._rows[mask.bit_length() - 1] = mask

    def _reduce_mask(self, mask: int) -> int:
        for p in sorted(self._rows, reverse=True):
            if (mask >> p) & 1:
                mask ^= self._rows[p]
        return mask

    def _fully_reduce(self) -> None:
        for p in sorted(self._rows):
            for q in self._rows:
                if q != p and (self._rows[q] >> p) & 1:
                    self._rows[q] ^= self._rows[p]

    @property
    def dim(self) -> int:
        return len(self._rows)

    def basis(self) -> list:
        return [_to_bits(self._rows[p], self.n) for p in sorted(self._rows)]

    def reduce(self, v: Sequence[int]) -> tuple:
        """Canonical representative of ``v`` modulo the subspace."""
        return _to_bits(self._reduce_mask(_to_mask(v)), self.n)

    def __contains__(self, v) -> bool:
        return not any(self.reduce(v))

    def elements(self) -> list:
        rows = list(self._rows.values())
        out = []
        for k in range(1 << len(rows)):
            m = 0
            for i, r in enumerate(rows):
                if (k >> i) & 1:
                    m ^= r
            out.append(_to_bits(m, self.n))
        return sorted(out)

    def intersect(self, other: "F2Space") -> "F2Space":
        """Intersection by the Zassenhaus construction."""
        n = self.n
        # shared block in the high bits so it is eliminated first
        rows = [((u << n) | u) for u in self._rows.values()]
        rows += [(v << n) for v in other._rows.values()]
        ech = {}
        for r in rows:
            for p in sorted(ech, reverse=True):
                if (r >> p) & 1:
                    r ^= ech[p]
            if r:
                ech[r.bit_length() - 1] = r
        low = (1 << n) - 1
        out = [r & low for r in ech.values() if (r >> n) == 0]
        return F2Space(n, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, F2Space) and self.n == other.n and self.basis() == other.basis()

    def __repr__(self) -> str:
        return f"F2Space(n={self.n}, basis={self.basis()})"


# ---------------------------------------------------------------------------
# m_alpha and eigenlattice quotients
# ---------------------------------------------------------------------------


def m_of_root(alpha: Sequence[int]) -> tuple:
    """Image of ``alpha^vee`` in ``M``, as bits over the simple coroots."""
    return tuple(x % 2 for x in to_simple_coroot_coords(coroot(alpha)))


def madd(x: Sequence[int], y: Sequence[int]) -> tuple:
    return tuple((a + b) % 2 for a, b in zip(x, y))


def mzero(n: int) -> tuple:
    return (0,) * n


@dataclass(frozen=True)
class LatticeSplit:
    """Mod-two images ``A+``, ``A-`` of the ``+1`` / ``-1`` eigenlattices and ``A+-``."""

    a_plus: F2Space
    a_minus: F2Space
    a_pm: F2Space


@lru_cache(maxsize=None)
def sublattices(tau: SignedPerm) -> LatticeSplit:
    n = tau.n
    t = _action_matrix(tau)
    minus_id = [[t[i][j] - int(i == j) for j in range(n)] for i in range(n)]
    plus_id = [[t[i][j] + int(i == j) for j in range(n)] for i in range(n)]
    k_plus = integer_kernel(minus_id)
    k_minus = integer_kernel(plus_id)
    a_plus = F2Space(n, [tuple(x % 2 for x in v) for v in k_plus])
    a_minus = F2Space(n, [tuple(x % 2 for x in v) for v in k_minus])
    return LatticeSplit(a_plus, a_minus, a_plus.intersect(a_minus))


def quotient_class(m: Sequence[int], tau: SignedPerm) -> tuple:
    """Canonical representative of ``m`` in ``A-(tau) / A+-(tau)``.

    Raises
    ------
    WeylError
        If ``m`` is not in ``A-(tau)``.
    """
    split = sublattices(tau)
    m = tuple(int(x) % 2 for x in m)
    if m not in split.a_minus:
        raise WeylError(f"{m} is not in A-({tau})")
    return split.a_pm.reduce(m)


def component_group_order(theta: SignedPerm) -> int:
    """``|A-(theta) / A+-(theta)|``."""
    split = sublattices(theta)
    return 2 ** (split.a_minus.dim - split.a_pm.dim)


# ---------------------------------------------------------------------------
# the cover group
# ---------------------------------------------------------------------------


def _anticommuting(i: int, j: int, n: int) -> bool:
    # adjacent long simple roots pair to -1; the short simple root commutes with all
    return abs(i - j) == 1 and max(i, j) < n - 1


@dataclass(frozen=True)
class MCoverElt:
    """Element ``sign * prod g_i^{bits_i}`` of the cover of ``M``."""

    bits: tuple
    sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(int(b) % 2 for b in self.bits))
        if self.sign not in (1, -1):
            raise WeylError("sign must be +1 or -1")

    @property
    def n(self) -> int:
        return len(self.bits)

    def __mul__(self, other: "MCoverElt") -> "MCoverElt":
        return mcover_mul(self, other)


def mcover_identity(n: int, sign: int = 1) -> MCoverElt:
    return MCoverElt((0,) * n, sign)


def mcover_mul(x: MCoverElt, y: MCoverElt) -> MCoverElt:
    """Product in canonical form.

    Moving ``g_j`` of ``y`` left past ``g_i`` of ``x`` with ``i > j`` costs the
    commutator sign; merging ``g_i g_i`` costs the square of ``g_i`` (``-1``
    for long simple roots, ``+1`` for the short one).
    """
    n = x.n
    if y.n != n:
        raise WeylError("rank mismatch")
    sign = x.sign * y.sign
    for i in range(n):
        if not x.bits[i]:
            continue
        for j in range(i):
            if y.bits[j] and _anticommuting(i, j, n):
                sign = -sign
        if y.bits[i] and i < n - 1:
            sign = -sign
    return MCoverElt(madd(x.bits, y.bits), sign)


def mcover_inverse(x: MCoverElt) -> MCoverElt:
    sq = mcover_mul(x, x)
    return MCoverElt(x.bits, x.sign * sq.sign)


def mtilde(alpha: Sequence[int]) -> MCoverElt:
    """Lift of ``m_alpha``: the canonical-form product with sign ``+1``."""
    return MCoverElt(m_of_root(alpha), 1)


def commutator_sign(x: MCoverElt, y: MCoverElt) -> int:
    """``+1`` if ``x`` and ``y`` commute, ``-1`` if they anticommute."""
    return mcover_mul(x, y).sign * mcover_mul(y, x).sign


def mcover_elements(n: int) -> list:
    out = []
    for mask in range(1 << n):
        for s in (1, -1):
            out.append(MCoverElt(_to_bits(mask, n), s))
    return out


# ---------------------------------------------------------------------------
# standard sequences and z
# ---------------------------------------------------------------------------


def q_hat(q: int) -> int:
    """``ceil((q - 1) / 2)`` for ``q >= 0``."""
    if q < 0:
        raise WeylError("q must be nonnegative")
    return max(0, -((1 - q) // 2))


@dataclass(frozen=True)
class StdSeq:
    """Standard sequence ``alpha_1 ... alpha_j beta_1 ... beta_k`` with ``k <= j <= qhat``."""

    j: int
    k: int

    def roots(self, n: int) -> list:
        out = [long_root(n, 2 * i, 2 * i + 1, -1) for i in range(self.j)]
        out += [long_root(n, 2 * i, 2 * i + 1, 1) for i in range(self.k)]
        return out


def std_sequences(q: int) -> list:
    qh = q_hat(q)
    return [StdSeq(j, k) for j in range(qh + 1) for k in range(j + 1)]


def evenly_split(n: int, q: int) -> tuple:
    """Evenly split involution and its noncompact coordinates for ``Spin(2n+1-q, q)``.

    ``2 qhat`` real coordinates come first; the remaining imaginary
    coordinates are compact when ``q`` is even and noncompact when ``q`` is odd.
    """
    qh = q_hat(q)
    if 2 * qh > n:
        raise WeylError(f"q={q} too large for rank {n}")
    bits = tuple(1 if i < 2 * qh else 0 for i in range(n))
    theta = Involution(bits, tuple(range(n)))
    nc = frozenset(range(2 * qh, n)) if q % 2 else frozenset()
    return theta, nc


def std_involution(n: int, q: int, seq: StdSeq) -> Involution:
    """Involution reached from the evenly split one along ``seq``.

    Pairs ``1..k`` become imaginary, pairs ``k+1..j`` become negated swaps,
    pairs ``j+1..qhat`` stay real.
    """
    theta, _ = evenly_split(n, q)
    if not 0 <= seq.k <= seq.j <= q_hat(q):
        raise WeylError(f"invalid standard sequence {seq}")
    cur = theta
    for alpha in seq.roots(n):
        cur = compose(reflection(alpha), cur)
    return Involution.of(cur)


def minus_one_in_identity(seq: Sequence) -> bool:
    """Whether ``-1`` lies in the identity component of the transformed cover torus.

    ``seq`` is a :class:`StdSeq` or a list of roots; the answer is true iff
    some root in it is long.
    """
    if isinstance(seq, StdSeq):
        return seq.j >= 1
    return any(is_long(a) for a in seq)


@dataclass(frozen=True)
class ZElement:
    """The almost central element ``z`` with its square and order."""

    elt: MCoverElt
    real_factors: int
    square: int
    order: int


def z_element(n: int, q: int) -> ZElement:
    """``z = prod_{i <= n/2} m~_{e_{2i-1} - e_{2i}}`` for ``Spin(2n+1-q, q)``.

    Only the first ``qhat`` factors come from real roots of the evenly split
    Cartan; the rest lie in a compact torus, where their lifts square to
    ``+1``.  Hence ``z^2`` is the product of the squares of the first ``qhat``
    factors, computed in the cover group.

    Raises
    ------
    WeylError
        If ``n`` is odd.
    """
    if n % 2:
        raise WeylError("z is defined only for even rank")
    qh = q_hat(q)
    factors = [mtilde(long_root(n, 2 * i, 2 * i + 1, -1)) for i in range(n // 2)]
    elt = mcover_identity(n)
    for f in factors:
        elt = mcover_mul(elt, f)
    real_part = mcover_identity(n)
    for f in factors[:qh]:
        real_part = mcover_mul(real_part, f)
    square = mcover_mul(real_part, real_part)
    if any(square.bits):  # pragma: no cover - factors pairwise commute and square to scalars
        raise WeylError("z^2 is not central")
    return ZElement(elt, qh, square.sign, 2 if square.sign == 1 else 4)


def root_char_at_z(n: int, delta: Sequence[int]) -> int:
    """``rho_delta(z) = (-1)^{(delta, sum_i alpha_i^vee)}``."""
    total = 0
    for i in range(n // 2):
        total += delta[2 * i] - delta[2 * i + 1]
    return -1 if total % 2 else 1


def count_genuine_exts(theta: SignedPerm) -> int:
    """Closed form ``2^{1 - i_b} 2^{r_b (1 - r_p)}``."""
    st = stats(theta)
    return 2 ** (1 - st.i_b) * 2 ** (st.r_b * (1 - st.r_p))
