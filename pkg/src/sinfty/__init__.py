"""Semi-infinite Ext for finite-dimensional graded algebras with a triangular decomposition."""

from .exactla import rank, nullspace, solve
from .galg import AlgebraError, AxiomReport, GradedAlgebra, verify_axioms
from .gmod import GradedModule, ModuleError, coinduce, dual, induce, restrict
from .sinf import ExtTable, ext, hom_through, hom_through_table, semi_infinite_ext, tor
from . import zoo

__version__ = "0.1.0"

__all__ = [
    "AlgebraError",
    "AxiomReport",
    "ExtTable",
    "GradedAlgebra",
    "GradedModule",
    "ModuleError",
    "coinduce",
    "dual",
    "ext",
    "hom_through",
    "hom_through_table",
    "induce",
    "nullspace",
    "rank",
    "restrict",
    "semi_infinite_ext",
    "solve",
    "tor",
    "verify_axioms",
    "zoo",
]
