"""Generalized prolate spheroidal wave functions on [-1, 1] with Jacobi weights."""
from prolate.eigensystem import EigenPair, build_matrix, default_truncation, solve, symmetry_map
from prolate.gpswf import Gpswf, build_gpswfs, eval_any, eval_extended, eval_inside, make_gpswf
from prolate.specfun import DomainError, WeightParams

__all__ = [
    "DomainError",
    "EigenPair",
    "Gpswf",
    "WeightParams",
    "build_gpswfs",
    "build_matrix",
    "default_truncation",
    "eval_any",
    "eval_extended",
    "eval_inside",
    "make_gpswf",
    "solve",
    "symmetry_map",
]
__version__ = "0.1.0"
