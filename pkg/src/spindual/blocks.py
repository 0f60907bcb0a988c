"""Blocks of genuine parameters, structure tables and multiplicity duality.

A block here is the set of genuine parameters of one real form at one
infinitesimal character with fixed central character.  It is closed under
integral cross actions and Cayley transforms; extended cross actions leave
the infinitesimal character and are tabulated as parameters outside the
block.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Sequence

from .gradings import eval_grading
from .params import (
    GenuineParam,
    ParamError,
    cayley_down,
    cayley_up,
    cross_param,
    enumerate_params,
    ext_cross_param,
    psi,
)
from .weylb import (
    IMAGINARY,
    REAL,
    InfChar,
    integral_roots,
    integral_simple_roots,
    is_long,
    positive_roots,
    root_type,
    simple_roots,
)


class BlockError(ValueError):
    """Raised on empty or inconsistent blocks and unknown fixtures."""


FIXTURE_SHA256 = {
    "spin32_block": "ef4981ec845a9684cfb3fe3b33f2a08b1b1eefe254dad1f7fa18d06a5c6aaa94",
    "spin54_fiber": "631c78f7a46b297b930acc3d3f204a5f3cedcea84d6e9932e48a5a036a3e00b8",
}


# ---------------------------------------------------------------------------
# blocks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Block:
    """Ordered parameters with their operation tables.

    Cayley cells are tuples of block indices; ``None`` marks a cell where the
    transform is undefined or empty.
    """

    p: int
    q: int
    lam: InfChar
    chi: int
    params: tuple
    lengths: tuple
    cross_tables: dict
    ext_cross_tables: dict
    cayley_tables: dict

    def __len__(self) -> int:
        return len(self.params)

    def index(self, gamma: GenuineParam) -> int:
        try:
            return self.params.index(gamma)
        except ValueError:
            raise BlockError(f"{gamma} is not in the block") from None

    def to_record(self) -> dict:
        def root(a):
            return list(a)

        return {
            "group": [self.p, self.q],
            "lambda": str(self.lam),
            "chi": self.chi,
            "params": [g.to_record() for g in self.params],
            "cross": [{"root": root(a), "images": list(v)} for a, v in self.cross_tables.items()],
            "ext_cross": [
                {"root": root(a), "images": [g.to_record() for g in v]}
                for a, v in self.ext_cross_tables.items()
            ],
            "cayley": [
                {"root": root(a), "images": [None if c is None else list(c) for c in v]}
                for a, v in self.cayley_tables.items()
            ],
        }


def cayley_images(gamma: GenuineParam, alpha: tuple) -> list | None:
    """Cayley transform in either direction, or ``None`` where undefined."""
    kind = root_type(gamma.theta, alpha)
    if kind == IMAGINARY and eval_grading(gamma.eps, alpha) == 1:
        return cayley_up(gamma, alpha)
    if kind == REAL:
        return cayley_down(gamma, alpha)
    return None


def build_block(p: int, q: int, lam: InfChar, chi: int) -> Block:
    """Enumerate and tabulate the block of ``Spin(p, q)`` at ``(lam, chi)``.

    Raises
    ------
    BlockError
        If the rank is odd, the block is empty, or an operation leaves it.
    """
    if lam.n % 2:
        raise BlockError("blocks are built for even rank only")
    try:
        params = tuple(enumerate_params(p, q, lam, chi))
    except ParamError as exc:
        raise BlockError(str(exc)) from exc
    if not params:
        raise BlockError(f"no genuine parameters for Spin({p},{q}) at {lam}, chi={chi:+d}")
    index = {g: k for k, g in enumerate(params)}

    def locate(g):
        if g not in index:
            raise BlockError(f"{g} lies outside the block")  # pragma: no cover
        return index[g]

    cross = {}
    for alpha in integral_simple_roots(lam):
        cross[alpha] = tuple(locate(cross_param(alpha, g)) for g in params)
    ext = {}
    for alpha in simple_roots(lam.n):
        if is_long(alpha) and not lam.is_integral_root(alpha):
            ext[alpha] = tuple(ext_cross_param(alpha, g) for g in params)
    cayley = {}
    for alpha in simple_roots(lam.n):
        col = []
        for g in params:
            imgs = cayley_images(g, alpha)
            col.append(tuple(sorted(locate(x) for x in imgs)) if imgs else None)
        cayley[alpha] = tuple(col)
    lengths = tuple(g.length for g in params)
    return Block(p, q, lam, chi, params, lengths, cross, ext, cayley)


@dataclass(frozen=True)
class StructureRow:
    index: int
    length: int
    cross: dict
    cayley: dict


def structure_table(block: Block) -> list:
    """One row per parameter: length, integral cross images and Cayley cells."""
    rows = []
    for k in range(len(block)):
        rows.append(
            StructureRow(
                k,
                block.lengths[k],
                {a: col[k] for a, col in block.cross_tables.items()},
                {a: col[k] for a, col in block.cayley_tables.items()},
            )
        )
    return rows


def dual_block_of(block: Block) -> Block:
    """The block containing the images of ``block`` under ``psi``."""
    images = [psi(g) for g in block.params]
    first = images[0]
    form = first.real_form
    return build_block(form.p, form.q, block.lam, first.chi)


# ---------------------------------------------------------------------------
# intertwining
# ---------------------------------------------------------------------------


@dataclass
class Report:
    """Outcome of a verification: number of checks and violations found."""

    checks: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def record(self, good: bool, message: str) -> None:
        self.checks += 1
        if not good:
            self.violations.append(message)

    def merge(self, other: "Report") -> "Report":
        self.checks += other.checks
        self.violations.extend(other.violations)
        return self


def _psi_set(gs) -> set:
    return {psi(g) for g in gs}


def check_intertwining_at(gamma: GenuineParam) -> Report:
    """Check that ``psi`` commutes with every operation applicable at ``gamma``."""
    rep = Report()
    n = gamma.n
    top = n * (n + 1) // 2
    dg = psi(gamma)
    rep.record(dg.length == top - gamma.length, f"length of psi({gamma})")
    rep.record(psi(dg) == gamma, f"psi is not involutive at {gamma}")
    lam = gamma.kappa
    for alpha in integral_roots(lam):
        rep.record(
            psi(cross_param(alpha, gamma)) == cross_param(alpha, dg),
            f"cross {alpha} at {gamma}",
        )
    for alpha in positive_roots(n):
        if is_long(alpha) and not lam.is_integral_root(alpha):
            rep.record(
                psi(ext_cross_param(alpha, gamma)) == ext_cross_param(alpha, dg),
                f"extended cross {alpha} at {gamma}",
            )
        kind = root_type(gamma.theta, alpha)
        if kind == IMAGINARY and eval_grading(gamma.eps, alpha) == 1:
            rep.record(
                _psi_set(cayley_up(gamma, alpha)) == set(cayley_down(dg, alpha)),
                f"Cayley up {alpha} at {gamma}",
            )
        elif kind == REAL:
            rep.record(
                _psi_set(cayley_down(gamma, alpha)) == set(cayley_up(dg, alpha))
                if eval_grading(dg.eps, alpha) == 1
                else not cayley_down(gamma, alpha),
                f"Cayley down {alpha} at {gamma}",
            )
    return rep


def verify_intertwining(block: Block, dual_block: Block) -> Report:
    """Check ``psi`` against every operation on ``block``.

    Raises
    ------
    BlockError
        If the blocks are not exchanged by ``psi``.
    """
    if {psi(g) for g in block.params} != set(dual_block.params):
        raise BlockError("blocks are not paired by psi")
    rep = Report()
    for g in block.params:
        rep.merge(check_intertwining_at(g))
    return rep


# ---------------------------------------------------------------------------
# multiplicity matrices
# ---------------------------------------------------------------------------


def _matmul(a, b) -> list:
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def _identity(n: int) -> list:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def exact_inverse(a: Sequence[Sequence[int]]) -> list:
    """Inverse of an integer matrix by exact Gauss-Jordan elimination.

    Raises
    ------
    BlockError
        If the matrix is singular or the inverse is not integral.
    """
    n = len(a)
    work = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if work[r][col] != 0), None)
        if piv is None:
            raise BlockError("singular matrix")
        work[col], work[piv] = work[piv], work[col]
        pv = work[col][col]
        work[col] = [x / pv for x in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    inv = []
    for row in work:
        vals = row[n:]
        if any(v.denominator != 1 for v in vals):
            raise BlockError("inverse is not integral")
        inv.append([int(v) for v in vals])
    return inv


@dataclass(frozen=True)
class MultMatrices:
    """Inverse pair of multiplicity matrices in block order."""

    M: tuple
    m: tuple

    def check(self, lengths: Sequence[int]) -> list:
        """List of violated invariants (empty when all hold)."""
        bad = []
        n = len(lengths)
        for name, mat, nonneg in (("M", self.M, False), ("m", self.m, True)):
            for i in range(n):
                if mat[i][i] != 1:
                    bad.append(f"{name}[{i}][{i}] != 1")
                for j in range(n):
                    if i != j and mat[i][j] and not lengths[i] < lengths[j]:
                        bad.append(f"{name}[{i}][{j}] breaks triangularity")
                    if nonneg and mat[i][j] < 0:
                        bad.append(f"{name}[{i}][{j}] is negative")
        if _matmul([list(r) for r in self.m], [list(r) for r in self.M]) != _identity(n):
            bad.append("m M != I")
        return bad


def _as_tuple(mat) -> tuple:
    return tuple(tuple(r) for r in mat)


def _permute(mat, perm) -> list:
    n = len(mat)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            out[perm[i]][perm[j]] = mat[i][j]
    return out


def klv_matrices(block: Block, engine: bool = False) -> MultMatrices:
    """Multiplicity matrices for a block covered by a shipped fixture.

    Raises
    ------
    BlockError
        If no fixture covers the block, or if ``engine`` is requested.
    """
    if engine:
        raise BlockError("the recursion engine is not built; only fixture-backed blocks are supported")
    fx = load_golden("spin32_block")
    key = (block.p, block.q, block.lam, block.chi)
    if key == fx.block_key:
        big = _permute(fx.M, fx.permutation)
        return MultMatrices(_as_tuple(big), _as_tuple(exact_inverse(big)))
    if key == fx.dual_key:
        small = _permute(fx.m, fx.dual_permutation)
        return MultMatrices(_as_tuple(exact_inverse(small)), _as_tuple(small))
    raise BlockError("no fixture for this block")


def verify_duality(block: Block, dual_block: Block, mats: MultMatrices, dual_mats: MultMatrices) -> Report:
    """Check ``M(g_i, g_j) = (-1)^{l(g_j) - l(g_i)} m(d_j, d_i)`` with ``d_i = psi(g_i)``.

    Raises
    ------
    BlockError
        If the blocks have different sizes or are not paired by ``psi``.
    """
    n = len(block)
    if len(dual_block) != n or len(mats.M) != n or len(dual_mats.m) != n:
        raise BlockError("index mismatch")
    d = [dual_block.index(psi(g)) for g in block.params]
    rep = Report()
    L = block.lengths
    for i in range(n):
        for j in range(n):
            lhs = mats.M[i][j]
            rhs = (-1) ** (L[j] - L[i]) * dual_mats.m[d[j]][d[i]]
            rep.record(lhs == rhs, f"entry ({i},{j}): {lhs} != {rhs}")
    return rep


# ---------------------------------------------------------------------------
# golden fixtures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GoldenFixture:
    """Parsed fixture data; see the JSON files for field meanings."""

    name: str
    data: dict

    @property
    def block_key(self) -> tuple:
        p, q = self.data["group"]
        return (p, q, InfChar.parse(self.data["lambda"]), self.data["chi"])

    @property
    def dual_key(self) -> tuple:
        p, q = self.data["group"]
        return (p, q, InfChar.parse(self.data["lambda"]), self.data["dual_block"]["chi"])

    @property
    def M(self) -> list:
        return self.data["M"]

    @property
    def m(self) -> list:
        """Dual matrix re-indexed so that row ``k`` is the ``k``-th dual label."""
        return self.data["m"]

    @property
    def permutation(self) -> list:
        return self.data["block"]["permutation"]

    @property
    def dual_permutation(self) -> list:
        return self.data["dual_block"]["permutation"]

    @property
    def rows(self) -> list:
        return self.data["rows"]


def _read_fixture(name: str) -> bytes:
    if name not in FIXTURE_SHA256:
        raise BlockError(f"unknown fixture {name!r}")
    return resources.files("spindual").joinpath("data", f"{name}.json").read_bytes()


def _check_fixture(name: str, data: dict) -> None:
    if name == "spin32_block":
        n = len(data["M"])
        for side in ("block", "dual_block"):
            labels = data[side]["labels"]
            rows = data[side]["rows"]
            if len(labels) != n or len(rows) != n:
                raise BlockError(f"{name}: {side} size mismatch")
            for row in rows:
                cells = [row[1]] + [c for c in row[2:] if c is not None for c in c]
                if any(c not in labels for c in cells):
                    raise BlockError(f"{name}: unknown label in {side}")
        if any(data["M"][i][i] != 1 for i in range(n)) or any(data["m"][i][i] != 1 for i in range(n)):
            raise BlockError(f"{name}: matrices are not unitriangular")
        exact_inverse(data["M"])
        exact_inverse(data["m"])
    elif name == "spin54_fiber":
        if len(data["rows"]) != 12:
            raise BlockError(f"{name}: expected 12 rows")
        for _, _, imgs in data["rows"]:
            if any(not 0 <= k < 12 for k in imgs):
                raise BlockError(f"{name}: image out of range")


def load_golden(name: str) -> GoldenFixture:
    """Load and validate an embedded fixture.

    Raises
    ------
    BlockError
        If the name is unknown, the checksum fails or the data are inconsistent.
    """
    raw = _read_fixture(name)
    if hashlib.sha256(raw).hexdigest() != FIXTURE_SHA256[name]:
        raise BlockError(f"fixture {name!r} failed its checksum")
    try:
        data = json.loads(raw.decode("utf-8"))
    except ValueError as exc:
        raise BlockError(f"fixture {name!r} is not valid JSON") from exc
    _check_fixture(name, data)
    return GoldenFixture(name, data)


def fixture_table_matches(block: Block, side: dict, columns: dict) -> Report:
    """Compare fixture rows with a block after applying the recorded permutation.

    ``side`` is the ``block`` or ``dual_block`` entry of the fixture.
    """
    labels = side["labels"]
    perm = side["permutation"]
    pos = {lab: perm[k] for k, lab in enumerate(labels)}
    cross_root = tuple(columns["cross"])
    cay_roots = [tuple(columns["beta"]), tuple(columns["alpha"])]
    rep = Report()
    for k, row in enumerate(side["rows"]):
        b = perm[k]
        length, cross_lab, *cells = row
        rep.record(block.lengths[b] == length, f"{labels[k]}: length")
        rep.record(block.cross_tables[cross_root][b] == pos[cross_lab], f"{labels[k]}: cross")
        for root, cell in zip(cay_roots, cells):
            want = None if cell is None else tuple(sorted(pos[c] for c in cell))
            rep.record(block.cayley_tables[root][b] == want, f"{labels[k]}: Cayley {root}")
    return rep
