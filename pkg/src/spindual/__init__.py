"""Combinatorial engine for genuine parameters of spin double covers.

Modules
-------
weylb
    Signed permutations, involutions, roots and infinitesimal characters.
mlattice
    The coroot lattice mod 2, its eigen-sublattices and the cover of ``M``.
korbits
    Fibers of orbits over an involution.
gradings
    Imaginary and real gradings, supportability, central characters, duality.
params
    Genuine parameters, cross actions, Cayley transforms and the map ``psi``.
blocks
    Blocks, structure tables, multiplicity matrices and golden fixtures.
"""

from .blocks import (
    Block,
    BlockError,
    GoldenFixture,
    MultMatrices,
    build_block,
    dual_block_of,
    klv_matrices,
    load_golden,
    structure_table,
    verify_duality,
    verify_intertwining,
)
from .gradings import (
    AbstractBigrading,
    GradingError,
    ImGrading,
    RealForm,
    ReGrading,
    central_char,
    derive_eta,
    dual_bigrading,
    dual_group,
    is_supportable,
    parse_grading,
    real_form,
    supportable_gradings,
)
from .korbits import FiberError, enumerate_fiber, fiber_order, genuine_fiber_order, nci_type
from .params import (
    Family,
    GenuineParam,
    ParamError,
    PrincipalClassLabel,
    cayley_down,
    cayley_up,
    cross_param,
    enumerate_params,
    ext_cross_param,
    family,
    principal_class,
    psi,
)
from .weylb import InfChar, Involution, WeylError, list_involutions, parse_diagram, render_diagram, stats

__version__ = "0.1.0"

__all__ = [
    "AbstractBigrading",
    "Block",
    "BlockError",
    "build_block",
    "cayley_down",
    "cayley_up",
    "central_char",
    "cross_param",
    "derive_eta",
    "dual_bigrading",
    "dual_block_of",
    "dual_group",
    "enumerate_fiber",
    "enumerate_params",
    "ext_cross_param",
    "family",
    "Family",
    "fiber_order",
    "FiberError",
    "genuine_fiber_order",
    "GenuineParam",
    "GoldenFixture",
    "GradingError",
    "ImGrading",
    "InfChar",
    "Involution",
    "is_supportable",
    "klv_matrices",
    "list_involutions",
    "load_golden",
    "MultMatrices",
    "nci_type",
    "ParamError",
    "parse_diagram",
    "parse_grading",
    "principal_class",
    "PrincipalClassLabel",
    "psi",
    "real_form",
    "RealForm",
    "ReGrading",
    "render_diagram",
    "stats",
    "structure_table",
    "supportable_gradings",
    "verify_duality",
    "verify_intertwining",
    "WeylError",
]
