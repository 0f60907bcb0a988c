"""Type-B Weyl group as signed permutations, roots, involutions and statistics.

An element of W(B_n) is stored as a bit vector and a permutation ``perm``
(0-based, ``perm[i]`` is the image of index ``i``).  The action on the
standard basis is

    w . e_i = (-1)**bits[perm[i]] * e_perm[i]

so a sign bit is attached to the *target* coordinate.  With this convention
the diagram of an involution reads left to right: position ``j`` shows where
``e_j`` is sent.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

DEFAULT_RANK_BOUND = 8

IMAGINARY = "imaginary"
REAL = "real"
COMPLEX = "complex"


class WeylError(ValueError):
    """Raised on malformed Weyl group data."""


# ---------------------------------------------------------------------------
# signed permutations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SignedPerm:
    """Element of the hyperoctahedral group W(B_n).

    Parameters
    ----------
    bits : tuple of int
        Sign bits, indexed by target coordinate.
    perm : tuple of int
        0-based permutation; ``perm[i]`` is the image of ``i``.
    """

    bits: tuple
    perm: tuple

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        perm = tuple(int(p) for p in self.perm)
        object.__setattr__(self, "bits", bits)
        object.__setattr__(self, "perm", perm)
        n = len(perm)
        if n < 1 or len(bits) != n:
            raise WeylError("bits and perm must have equal positive length")
        if sorted(perm) != list(range(n)):
            raise WeylError(f"perm {perm} is not a bijection of 0..{n - 1}")
        if any(b not in (0, 1) for b in bits):
            raise WeylError("bits must be 0 or 1")

    @property
    def n(self) -> int:
        return len(self.perm)

    def image(self, i: int) -> tuple:
        """Return ``(sign, j)`` with ``w . e_i = sign * e_j``."""
        j = self.perm[i]
        return (-1 if self.bits[j] else 1), j

    def act(self, v: Sequence) -> tuple:
        """Apply the element to a coordinate vector."""
        return act_on_vector(self, v)

    def __mul__(self, other: "SignedPerm") -> "SignedPerm":
        return compose(self, other)


def identity(n: int) -> SignedPerm:
    return SignedPerm((0,) * n, tuple(range(n)))


def minus_one(n: int) -> SignedPerm:
    return SignedPerm((1,) * n, tuple(range(n)))


def _from_images(images: Sequence[tuple]) -> SignedPerm:
    """Build from a list of ``(sign, target)`` pairs, one per source index."""
    n = len(images)
    bits = [0] * n
    perm = [0] * n
    for i, (s, j) in enumerate(images):
        perm[i] = j
        bits[j] = 0 if s > 0 else 1
    return SignedPerm(tuple(bits), tuple(perm))


@lru_cache(maxsize=1 << 16)
def compose(w1: SignedPerm, w2: SignedPerm) -> SignedPerm:
    """Return ``w1 w2`` (apply ``w2`` first).

    Raises
    ------
    WeylError
        If the ranks differ.
    """
    if w1.n != w2.n:
        raise WeylError(f"rank mismatch: {w1.n} vs {w2.n}")
    images = []
    for i in range(w1.n):
        s2, j = w2.image(i)
        s1, k = w1.image(j)
        images.append((s1 * s2, k))
    return _from_images(images)


def inverse(w: SignedPerm) -> SignedPerm:
    images = [None] * w.n
    for i in range(w.n):
        s, j = w.image(i)
        images[j] = (s, i)
    return _from_images(images)


def act_on_vector(w: SignedPerm, v: Sequence) -> tuple:
    """Apply ``w`` to a vector of numbers (ints, Fractions, ...).

    Raises
    ------
    WeylError
        If ``len(v) != w.n``.
    """
    if len(v) != w.n:
        raise WeylError(f"vector length {len(v)} does not match rank {w.n}")
    out = [0] * w.n
    for i, x in enumerate(v):
        s, j = w.image(i)
        out[j] = s * x
    return tuple(out)


def conjugate(w: SignedPerm, theta: SignedPerm) -> SignedPerm:
    """Return ``w theta w^{-1}``."""
    return compose(compose(w, theta), inverse(w))


def is_involution(w: SignedPerm) -> bool:
    return compose(w, w) == identity(w.n)


def group_elements(n: int) -> list:
    """All ``2^n n!`` elements of W(B_n) in a fixed order."""
    out = []
    for perm in itertools.permutations(range(n)):
        for bits in itertools.product((0, 1), repeat=n):
            out.append(SignedPerm(bits, perm))
    return out


# ---------------------------------------------------------------------------
# involutions and diagrams
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Involution(SignedPerm):
    """A signed permutation of order at most two."""

    def __post_init__(self):
        super().__post_init__()
        if not is_involution(SignedPerm(self.bits, self.perm)):
            raise WeylError("element is not an involution")

    @classmethod
    def of(cls, w: SignedPerm) -> "Involution":
        if type(w) is cls:
            return w
        return _involution_of(w.bits, w.perm)

    def __str__(self) -> str:
        return render_diagram(self)

    def coord_kind(self, i: int) -> str:
        """'+' (imaginary coordinate), '-' (real coordinate) or 'c' (swapped)."""
        s, j = self.image(i)
        if j != i:
            return "c"
        return "+" if s > 0 else "-"

    @property
    def imaginary_coords(self) -> tuple:
        return tuple(i for i in range(self.n) if self.coord_kind(i) == "+")

    @property
    def real_coords(self) -> tuple:
        return tuple(i for i in range(self.n) if self.coord_kind(i) == "-")

    @property
    def pairs(self) -> tuple:
        """Swapped pairs ``(i, j, negated)`` with ``i < j``."""
        out = []
        for i in range(self.n):
            s, j = self.image(i)
            if j > i:
                out.append((i, j, s < 0))
        return tuple(out)




def tokenize(text: str, extra: str = "") -> list:
    """Split diagram-like text into tokens.

    Space-separated input may use multi-digit indices; compact input such as
    ``"21+"`` is read one character (or one parenthesized index) at a time.
    ``extra`` lists additional single-character tokens to accept.
    """
    body = re.escape(extra)
    spaced = re.compile(r"\(\d+\)|\d+|[+\-−" + body + "]")
    compact = re.compile(r"\(\d+\)|\d|[+\-−" + body + "]")
    text = text.strip()
    pattern = spaced if " " in text else compact
    toks = pattern.findall(text)
    if "".join(toks) != text.replace(" ", "") or not toks:
        raise WeylError(f"malformed diagram: {text!r}")
    return toks


def render_diagram(theta: SignedPerm) -> str:
    """Render an involution as space-separated tokens ("+", "-", "k", "(k)")."""
    toks = []
    for i in range(theta.n):
        s, j = theta.image(i)
        if j == i:
            toks.append("+" if s > 0 else "-")
        elif s > 0:
            toks.append(str(j + 1))
        else:
            toks.append(f"({j + 1})")
    return " ".join(toks)


def parse_diagram(text: str) -> Involution:
    """Parse a diagram string; the Unicode minus sign is accepted.

    Raises
    ------
    WeylError
        On malformed input or if the tokens do not describe an involution.
    """
    toks = tokenize(text)
    n = len(toks)
    images = []
    for i, tok in enumerate(toks):
        if tok == "+":
            images.append((1, i))
        elif tok in ("-", "−"):
            images.append((-1, i))
        elif tok.startswith("("):
            images.append((-1, int(tok[1:-1]) - 1))
        else:
            images.append((1, int(tok) - 1))
    for s, j in images:
        if not 0 <= j < n:
            raise WeylError(f"index out of range in diagram {text!r}")
    if sorted(j for _, j in images) != list(range(n)):
        raise WeylError(f"diagram {text!r} is not a permutation")
    for i, (s, j) in enumerate(images):
        if j != i and images[j] != (s, i):
            raise WeylError(f"diagram {text!r} is not an involution")
        if j == i and toks[i] not in ("+", "-", "−"):
            raise WeylError(f"numeric token at fixed position in {text!r}")
    try:
        return Involution.of(_from_images(images))
    except WeylError as exc:
        raise WeylError(f"malformed diagram: {text!r}") from exc


def dualize_involution(theta: SignedPerm) -> Involution:
    """Return ``-theta``: every sign bit flipped, permutation unchanged."""
    return Involution(tuple(1 - b for b in theta.bits), theta.perm)


def list_involutions(n: int, bound: int = DEFAULT_RANK_BOUND) -> list:
    """All involutions of W(B_n), in a deterministic order.

    Built directly from matchings of ``{0..n-1}`` with sign choices, which
    avoids scanning the whole group.

    Raises
    ------
    WeylError
        If ``n`` exceeds ``bound``.
    """
    if n < 1:
        raise WeylError("rank must be positive")
    if n > bound:
        raise WeylError(f"rank {n} exceeds enumeration bound {bound}")
    return list(_involutions_cached(n))


@lru_cache(maxsize=None)
def _involutions_cached(n: int) -> tuple:
    out = []

    def matchings(free):
        # yields lists of pairs / singletons covering ``free``
        if not free:
            yield []
            return
        first, rest = free[0], free[1:]
        for tail in matchings(rest):
            yield [(first,)] + tail
        for k, other in enumerate(rest):
            for tail in matchings(rest[:k] + rest[k + 1:]):
                yield [(first, other)] + tail

    for blocks in matchings(tuple(range(n))):
        for signs in itertools.product((1, -1), repeat=len(blocks)):
            images = [None] * n
            for blk, s in zip(blocks, signs):
                if len(blk) == 1:
                    images[blk[0]] = (s, blk[0])
                else:
                    a, b = blk
                    images[a] = (s, b)
                    images[b] = (s, a)
            out.append(Involution.of(_from_images(images)))
    out.sort(key=lambda t: (t.perm, t.bits))
    return tuple(out)


# ---------------------------------------------------------------------------
# roots
# ---------------------------------------------------------------------------


def is_root(alpha: Sequence[int]) -> bool:
    nz = [x for x in alpha if x != 0]
    return len(nz) in (1, 2) and all(abs(x) == 1 for x in nz)


def _check_root(alpha) -> tuple:
    alpha = tuple(int(x) for x in alpha)
    if not is_root(alpha):
        raise WeylError(f"{alpha} is not a root of type B")
    return alpha


def is_long(alpha: Sequence[int]) -> bool:
    return sum(1 for x in alpha if x != 0) == 2


def is_positive(alpha: Sequence[int]) -> bool:
    for x in alpha:
        if x:
            return x > 0
    return False


def coroot(alpha: Sequence[int]) -> tuple:
    """``alpha`` if long, ``2 alpha`` if short."""
    alpha = _check_root(alpha)
    return alpha if is_long(alpha) else tuple(2 * x for x in alpha)


def neg(alpha: Sequence[int]) -> tuple:
    return tuple(-x for x in alpha)


def e(n: int, i: int, sign: int = 1) -> list:
    v = [0] * n
    v[i] = sign
    return v


def short_root(n: int, i: int) -> tuple:
    """``e_{i+1}`` in 1-based notation."""
    return tuple(e(n, i))


def long_root(n: int, i: int, j: int, sign: int = -1) -> tuple:
    """``e_i + sign * e_j`` (0-based indices)."""
    v = e(n, i)
    v[j] += sign
    return tuple(v)


@lru_cache(maxsize=None)
def positive_roots(n: int) -> tuple:
    """Positive roots in the standard order: ``e_i - e_j``, ``e_i + e_j``, ``e_i``."""
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            out.append(long_root(n, i, j, -1))
            out.append(long_root(n, i, j, 1))
        out.append(short_root(n, i))
    return tuple(out)


@lru_cache(maxsize=None)
def all_roots(n: int) -> tuple:
    pos = positive_roots(n)
    return pos + tuple(neg(a) for a in pos)


@lru_cache(maxsize=None)
def simple_roots(n: int) -> tuple:
    """``e_1 - e_2, ..., e_{n-1} - e_n, e_n``."""
    return tuple(long_root(n, i, i + 1, -1) for i in range(n - 1)) + (short_root(n, n - 1),)


def positive_form(alpha: Sequence[int]) -> tuple:
    alpha = tuple(alpha)
    return alpha if is_positive(alpha) else neg(alpha)


def pairing(u: Sequence, v: Sequence):
    """Standard inner product ``(u, v)``."""
    return sum(a * b for a, b in zip(u, v))


def reflection(alpha: Sequence[int]) -> SignedPerm:
    """The reflection ``s_alpha`` as a signed permutation."""
    return _reflection(_check_root(alpha))


@lru_cache(maxsize=None)
def _reflection(alpha: tuple) -> SignedPerm:
    n = len(alpha)
    images = []
    av = coroot(alpha)
    for i in range(n):
        ei = e(n, i)
        c = pairing(ei, av)
        img = [ei[k] - c * alpha[k] for k in range(n)]
        j = next(k for k in range(n) if img[k] != 0)
        images.append((img[j], j))
    return _from_images(images)


def root_type(theta: SignedPerm, alpha: Sequence[int]) -> str:
    """Classify ``alpha`` as imaginary, real or complex for ``theta``.

    Raises
    ------
    WeylError
        If ``alpha`` is not a root.
    """
    return _root_type(theta, _check_root(alpha))


@lru_cache(maxsize=1 << 16)
def _root_type(theta: SignedPerm, alpha: tuple) -> str:
    img = act_on_vector(theta, alpha)
    if img == alpha:
        return IMAGINARY
    if img == neg(alpha):
        return REAL
    return COMPLEX


def reflect_vector(alpha: Sequence[int], v: Sequence) -> tuple:
    """``s_alpha v`` for an arbitrary vector ``v``."""
    return act_on_vector(reflection(alpha), v)


def simple_system(roots: Iterable[tuple]) -> tuple:
    """Simple roots of a subsystem, given its positive roots.

    A positive root is simple iff it is not the sum of two positive roots of
    the subsystem.
    """
    pos = sorted(set(tuple(r) for r in roots), key=positive_roots_index)
    pset = set(pos)
    simple = []
    for r in pos:
        decomposable = False
        for a in pos:
            b = tuple(x - y for x, y in zip(r, a))
            if b in pset:
                decomposable = True
                break
        if not decomposable:
            simple.append(r)
    return tuple(simple)


def positive_roots_index(alpha: tuple) -> int:
    return positive_roots(len(alpha)).index(tuple(alpha))


def imaginary_positive_roots(theta: SignedPerm) -> tuple:
    return tuple(a for a in positive_roots(theta.n) if root_type(theta, a) == IMAGINARY)


def real_positive_roots(theta: SignedPerm) -> tuple:
    return tuple(a for a in positive_roots(theta.n) if root_type(theta, a) == REAL)


def imaginary_simple_roots(theta: SignedPerm) -> tuple:
    """Standard simple system of the imaginary root subsystem."""
    return simple_system(imaginary_positive_roots(theta))


# ---------------------------------------------------------------------------
# infinitesimal characters
# ---------------------------------------------------------------------------


def parse_half_integer(text: str) -> int:
    """Parse "3/2", "1.5" or "2" and return twice the value.

    Raises
    ------
    WeylError
        If the value is not a half-integer.
    """
    try:
        val = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise WeylError(f"cannot parse {text!r} as a number") from exc
    twice = 2 * val
    if twice.denominator != 1:
        raise WeylError(f"{text!r} is not a half-integer")
    return int(twice)


@dataclass(frozen=True)
class InfChar:
    """Regular dominant half-integral infinitesimal character, stored as ``2 lambda``.

    Parameters
    ----------
    twice : tuple of int
        Strictly decreasing positive integers ``2 lambda_1 > ... > 2 lambda_n > 0``.
    """

    twice: tuple

    def __post_init__(self):
        tw = tuple(int(x) for x in self.twice)
        object.__setattr__(self, "twice", tw)
        if not tw:
            raise WeylError("infinitesimal character must have positive rank")
        if tw[-1] <= 0 or any(a <= b for a, b in zip(tw, tw[1:])):
            raise WeylError(f"2*lambda = {tw} is not regular dominant")

    @classmethod
    def parse(cls, text: str) -> "InfChar":
        """Parse a comma-separated list such as ``"3/2,1"`` or ``"1.5,1"``."""
        parts = [p for p in text.split(",") if p.strip()]
        return cls(tuple(parse_half_integer(p) for p in parts))

    @classmethod
    def from_values(cls, values: Sequence) -> "InfChar":
        twice = []
        for v in values:
            t = 2 * Fraction(v)
            if t.denominator != 1:
                raise WeylError(f"{v} is not a half-integer")
            twice.append(int(t))
        return cls(tuple(twice))

    @property
    def n(self) -> int:
        return len(self.twice)

    @property
    def coords(self) -> tuple:
        return tuple(Fraction(t, 2) for t in self.twice)

    def is_integral_coord(self, i: int) -> bool:
        return self.twice[i] % 2 == 0

    @property
    def pattern(self) -> tuple:
        """Fractional-part pattern: 1 for a strictly half-integral coordinate."""
        return tuple(t % 2 for t in self.twice)

    def pair_twice(self, alpha: Sequence[int]) -> int:
        """``2 (lambda, alpha)``."""
        return sum(a * t for a, t in zip(alpha, self.twice))

    def is_integral_root(self, alpha: Sequence[int]) -> bool:
        """True iff ``(lambda, alpha^vee)`` is an integer."""
        av = coroot(alpha)
        return self.pair_twice(av) % 2 == 0

    def __str__(self) -> str:
        return "(" + ",".join(_fmt_half(t) for t in self.twice) + ")"


def _fmt_half(t: int) -> str:
    return str(t // 2) if t % 2 == 0 else f"{t}/2"


def integral_roots(lam: InfChar) -> tuple:
    return tuple(a for a in positive_roots(lam.n) if lam.is_integral_root(a))


def integral_simple_roots(lam: InfChar) -> tuple:
    """Simple system of the integral root subsystem (positive for the standard order)."""
    return simple_system(integral_roots(lam))


# ---------------------------------------------------------------------------
# statistics and counting
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InvStats:
    """Numerical invariants of an involution (optionally relative to ``lambda``)."""

    n_s: int
    n_r: int
    n_c: int
    i_b: int
    r_b: int
    i_p: int
    r_p: int
    f_theta: int
    length: int
    n_int: int | None = None
    n_half: int | None = None
    sym: int | None = None

    @property
    def even_parity(self) -> bool:
        return self.n_s % 2 == 0 and self.n_r % 2 == 0


@lru_cache(maxsize=None)
def _involution_of(bits: tuple, perm: tuple) -> Involution:
    return Involution(bits, perm)


def length(theta: SignedPerm) -> int:
    """``1/2 #{alpha > 0 : theta alpha < 0} + 1/2 dim(-1 eigenspace)``."""
    return _length(Involution.of(theta))


@lru_cache(maxsize=None)
def _length(theta: Involution) -> int:
    pos = positive_roots(theta.n)
    neg_count = sum(1 for a in pos if not is_positive(act_on_vector(theta, a)))
    th = Involution.of(theta)
    dim_minus = len(th.real_coords) + len(th.pairs)
    total = neg_count + dim_minus
    if total % 2:
        raise WeylError("length is not an integer; inconsistent involution")
    return total // 2


def stats(theta: SignedPerm, lam: InfChar | None = None) -> InvStats:
    return _stats(Involution.of(theta), lam)


@lru_cache(maxsize=None)
def _stats(th: Involution, lam: InfChar | None) -> InvStats:
    n_s = len(th.imaginary_coords)
    n_r = len(th.real_coords)
    n_c = th.n - n_s - n_r
    f_theta = sum(1 for (_, _, negated) in th.pairs if negated)
    n_int = n_half = sym = None
    if lam is not None:
        if lam.n != th.n:
            raise WeylError("rank mismatch between involution and infinitesimal character")
        n_int = sum(1 for i in th.imaginary_coords if lam.is_integral_coord(i))
        n_half = n_s - n_int
        sym = int(n_s > 0 and n_int == n_half)
    return InvStats(
        n_s=n_s, n_r=n_r, n_c=n_c,
        i_b=int(n_s > 0), r_b=int(n_r > 0), i_p=n_s % 2, r_p=n_r % 2,
        f_theta=f_theta, length=length(th),
        n_int=n_int, n_half=n_half, sym=sym,
    )


def conjugacy_invariants(theta: SignedPerm) -> tuple:
    """``(n_c, n_s)``, a complete conjugacy invariant."""
    st = stats(theta)
    return st.n_c, st.n_s


def num_conjugacy_classes(n: int) -> int:
    """Number of conjugacy classes of involutions in W(B_n)."""
    if n < 1:
        raise WeylError("rank must be positive")
    return sum(n - 2 * k + 1 for k in range(n // 2 + 1))


def class_size(n: int, n_c: int, n_s: int) -> int:
    """Number of involutions with the given ``(n_c, n_s)``.

    Raises
    ------
    WeylError
        If ``n_c`` is odd or ``n_c + n_s > n``.
    """
    if n_c % 2 or n_c < 0 or n_s < 0 or n_c + n_s > n:
        raise WeylError(f"invalid class invariants (n={n}, n_c={n_c}, n_s={n_s})")
    k = n_c // 2
    return math.factorial(n) // (math.factorial(n - n_c) * math.factorial(k)) * math.comb(n - n_c, n_s)


def centralizer_factor_orders(theta: SignedPerm) -> tuple:
    """Orders ``(|W_i|, |W_r|, |W_C|)`` of the centralizer factors."""
    st = stats(theta)
    k = st.n_c // 2
    w_i = 2 ** st.n_s * math.factorial(st.n_s) * 2 ** k
    w_r = 2 ** st.n_r * math.factorial(st.n_r) * 2 ** k
    w_c = math.factorial(k)
    return w_i, w_r, w_c


def weyl_order(n: int) -> int:
    return 2 ** n * math.factorial(n)


def reduced_word(w: SignedPerm) -> list:
    """A reduced word for ``w`` in the simple roots, leftmost letter first.

    Uses descents: while ``w`` has a right descent ``s``, peel it off.
    """
    n = w.n
    simples = simple_roots(n)
    word = []
    cur = w
    while cur != identity(n):
        for a in simples:
            if not is_positive(act_on_vector(cur, a)):
                word.append(a)
                cur = compose(cur, reflection(a))
                break
        else:  # pragma: no cover - identity is the only element without descents
            raise WeylError("no descent found")
    return list(reversed(word))
