"""Slow-entropy invariants of abelian unipotent actions, exactly over Q."""

from .catalog import (
    ExampleSpec,
    build_example,
    detect_horocyclic,
    jordan_block_sizes,
    oracle_entropy,
    product_entropy,
    semisimple_sum_entropy,
)
from .chain import ChainBasis, associated_polynomials, build_chain_basis
from .filtration import (
    EntropyValue,
    Filtration,
    centralizer,
    compute_filtration,
    slow_entropy,
)
from .lie import LieAlgebra, SubalgebraSpec, check_abelian_unipotent, validate
from .linalg import RationalMatrix, Subspace

__version__ = "0.1.0"

__all__ = [
    "ChainBasis",
    "EntropyValue",
    "ExampleSpec",
    "Filtration",
    "LieAlgebra",
    "RationalMatrix",
    "SubalgebraSpec",
    "Subspace",
    "associated_polynomials",
    "build_chain_basis",
    "build_example",
    "centralizer",
    "check_abelian_unipotent",
    "compute_filtration",
    "detect_horocyclic",
    "jordan_block_sizes",
    "oracle_entropy",
    "product_entropy",
    "semisimple_sum_entropy",
    "slow_entropy",
    "validate",
]
