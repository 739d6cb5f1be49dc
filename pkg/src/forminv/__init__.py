"""Exact formal inversion of power-series maps, with the symmetric (gradient)
case, the Burgers potential, the formal Legendre transform and the binary-tree
expansion."""

from .coefficients import GaussianRational
from .errors import DimensionError, PreconditionError, TruncationError
from .inversion import (
    NSequence,
    assemble_inverse,
    compute_N_sequence,
    forward_map,
    verify_inverse,
)
from .series import FormalMap, Poly, TruncatedSeries, compose, gradient
from .symmetric import (
    QSequence,
    Verdict,
    burgers_solve,
    compute_Q_sequence,
    jc_scan,
    legendre_transform,
)
from .trees import BinaryTree, beta, enumerate_trees, tree_expansion_Q

__version__ = "0.1.0"

__all__ = [
    "GaussianRational",
    "DimensionError",
    "PreconditionError",
    "TruncationError",
    "Poly",
    "TruncatedSeries",
    "FormalMap",
    "compose",
    "gradient",
    "NSequence",
    "compute_N_sequence",
    "assemble_inverse",
    "forward_map",
    "verify_inverse",
    "QSequence",
    "compute_Q_sequence",
    "burgers_solve",
    "legendre_transform",
    "jc_scan",
    "Verdict",
    "BinaryTree",
    "enumerate_trees",
    "beta",
    "tree_expansion_Q",
]
