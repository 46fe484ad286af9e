"""Exact tilting-theoretic gluing over recollements of quiver module categories.

The package computes, over a prime field, the module categories of
finite-dimensional bound quiver algebras: hom spaces, kernels and
cokernels, projective and injective resolutions, Ext groups with
explicit cocycles, approximation sequences, verification of n-tilting
and n-cotilting modules, the six functors of a recollement induced by a
triangular vertex partition, glued cotorsion pairs and glued (co)tilting
modules.  A small CLI (``quiverglue``) exposes the pipeline on text
files and reproduces the two bundled worked examples end to end.
"""

from .linalg import PrimeField, DEFAULT_PRIME
from .algebra import Quiver, RelationSum, BoundQuiverAlgebra, Path, build_algebra, relation, trivial_path
from .modcat import (
    QModule,
    QMorphism,
    Universe,
    decompose,
    direct_sum,
    dualize,
    hom_basis,
    hom_dim,
    injective,
    is_isomorphic,
    projective,
    simple,
    zero_module,
)

__all__ = [
    "PrimeField",
    "DEFAULT_PRIME",
    "Quiver",
    "RelationSum",
    "BoundQuiverAlgebra",
    "Path",
    "build_algebra",
    "relation",
    "trivial_path",
    "QModule",
    "QMorphism",
    "Universe",
    "decompose",
    "direct_sum",
    "dualize",
    "hom_basis",
    "hom_dim",
    "injective",
    "is_isomorphic",
    "projective",
    "simple",
    "zero_module",
]

__version__ = "0.1.0"
