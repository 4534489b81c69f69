from fractions import Fraction

import pytest

from slowent.catalog import ExampleSpec, build_example
from slowent.chain import associated_polynomials, build_chain_basis
from slowent.filtration import compute_filtration
from slowent.lie import LieAlgebra


def sl2():
    """Basis (E12, E21, H1) via the catalog builder."""
    return build_example(ExampleSpec("sl_first_row_restriction", (2, 1)))


def heisenberg():
    """Basis (E12, E13, E23) = (X, Z, Y) with [X, Y] = Z."""
    return build_example(ExampleSpec("strictly_upper_first_row", (3, 1)))


def abelian(dim=3):
    return LieAlgebra.from_sparse_brackets([f"a{i}" for i in range(dim)], [])


@pytest.fixture(scope="session")
def chain_pipeline():
    cache = {}

    def run(spec: ExampleSpec):
        if spec not in cache:
            algebra, u = build_example(spec)
            f = compute_filtration(algebra, u)
            cb = associated_polynomials(
                algebra, u, f, build_chain_basis(algebra, u, f)
            )
            cache[spec] = (algebra, u, f, cb)
        return cache[spec]

    return run


def frac(a, b=1):
    return Fraction(a, b)
