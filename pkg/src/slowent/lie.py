"""Finite-dimensional Lie algebras given by structure constants.

An algebra is a dimension, basis names, and the dense table c[i][j][k]
with [e_i, e_j] = sum_k c[i][j][k] e_k.  Vectors are plain tuples of
Fractions in that basis.  The checks here (antisymmetry, Jacobi,
abelian/ad-nilpotent subalgebras) return violation data rather than
raising, so callers can report them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import ONE, ZERO, RationalMatrix, Subspace, as_fraction

Vector = tuple[Fraction, ...]


def vector(coords: Iterable) -> Vector:
    return tuple(as_fraction(x) for x in coords)


def zero_vector(dim: int) -> Vector:
    return (ZERO,) * dim


def basis_vector(dim: int, i: int) -> Vector:
    return tuple(ONE if j == i else ZERO for j in range(dim))


def add(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def scale(c, a: Vector) -> Vector:
    c = as_fraction(c)
    return tuple(c * x for x in a)


def is_zero(a: Vector) -> bool:
    return all(x == 0 for x in a)


@dataclass(frozen=True)
class LieAlgebra:
    dim: int
    basis_names: tuple[str, ...]
    structure: tuple  # c[i][j][k], dense

    def __post_init__(self):
        if len(self.basis_names) != self.dim:
            raise ValueError("basis_names length must equal dim")

    @classmethod
    def from_table(cls, basis_names: Sequence[str], table) -> "LieAlgebra":
        dim = len(basis_names)
        structure = tuple(
            tuple(tuple(as_fraction(table[i][j][k]) for k in range(dim)) for j in range(dim))
            for i in range(dim)
        )
        return cls(dim, tuple(basis_names), structure)

    @classmethod
    def from_sparse_brackets(
        cls, basis_names: Sequence[str], brackets: Iterable[tuple[int, int, dict]]
    ) -> "LieAlgebra":
        """Build from {(i, j) -> {k: value}} entries with i < j.

        Antisymmetry holds by construction: c[j][i] is filled with the
        negated values.
        """
        dim = len(basis_names)
        table = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        for i, j, comps in brackets:
            if not (0 <= i < j < dim):
                raise ValueError(f"bracket indices ({i},{j}) need 0 <= i < j < dim")
            for k, val in comps.items():
                v = as_fraction(val)
                table[i][j][k] = v
                table[j][i][k] = -v
        return cls.from_table(basis_names, table)

    def bracket(self, a: Sequence, b: Sequence) -> Vector:
        av = vector(a)
        bv = vector(b)
        out = [ZERO] * self.dim
        for i, x in enumerate(av):
            if not x:
                continue
            ci = self.structure[i]
            for j, y in enumerate(bv):
                if not y:
                    continue
                xy = x * y
                for k, c in enumerate(ci[j]):
                    if c:
                        out[k] += xy * c
        return tuple(out)

    def ad(self, x: Sequence) -> RationalMatrix:
        """Matrix of ad_x, columns are bracket(x, e_j)."""
        xv = vector(x)
        cols = [self.bracket(xv, basis_vector(self.dim, j)) for j in range(self.dim)]
        return RationalMatrix(
            [[cols[j][k] for j in range(self.dim)] for k in range(self.dim)]
        )

    def name_of(self, i: int) -> str:
        return self.basis_names[i]


@dataclass(frozen=True)
class SubalgebraSpec:
    """Generators U_1, ..., U_k of a candidate abelian ad-unipotent subalgebra."""

    generators: tuple[Vector, ...]

    @classmethod
    def from_coords(cls, rows: Iterable[Iterable]) -> "SubalgebraSpec":
        return cls(tuple(vector(r) for r in rows))

    @property
    def k(self) -> int:
        return len(self.generators)

    def subspace(self, dim: int) -> Subspace:
        return Subspace.from_rows(dim, self.generators)


@dataclass(frozen=True)
class Violation:
    kind: str  # "antisymmetry" | "jacobi" | "dependent" | "not_abelian" | "not_nilpotent"
    where: tuple
    detail: str = ""


def validate(algebra: LieAlgebra) -> list[Violation]:
    """Antisymmetry and Jacobi on all basis triples; empty list iff clean."""
    out: list[Violation] = []
    n = algebra.dim
    c = algebra.structure
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                if c[i][j][k] != -c[j][i][k]:
                    out.append(
                        Violation("antisymmetry", (i, j), f"component {k}")
                    )
                    break
    for i in range(n):
        ei = basis_vector(n, i)
        for j in range(i + 1, n):
            ej = basis_vector(n, j)
            bij = algebra.bracket(ei, ej)
            for k in range(j + 1, n):
                ek = basis_vector(n, k)
                total = add(
                    add(
                        algebra.bracket(ei, algebra.bracket(ej, ek)),
                        algebra.bracket(ej, algebra.bracket(ek, ei)),
                    ),
                    algebra.bracket(ek, bij),
                )
                if not is_zero(total):
                    out.append(Violation("jacobi", (i, j, k)))
    return out


def nilpotency_index(m: RationalMatrix) -> int | None:
    """Smallest N with m^N = 0, or None when m^dim != 0."""
    if m.rows != m.cols:
        raise ValueError("nilpotency index needs a square matrix")
    if m.is_zero():
        return 1
    power = m
    for n in range(2, m.rows + 1):
        power = power @ m
        if power.is_zero():
            return n
    return None


def check_abelian_unipotent(
    algebra: LieAlgebra, u: SubalgebraSpec
) -> list[Violation]:
    """Empty list iff generators are independent, commute, and act nilpotently."""
    out: list[Violation] = []
    if u.k == 0:
        out.append(Violation("dependent", (), "no generators"))
        return out
    if u.subspace(algebra.dim).dim < u.k:
        out.append(Violation("dependent", tuple(range(u.k))))
    gens = u.generators
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            if not is_zero(algebra.bracket(gens[a], gens[b])):
                out.append(Violation("not_abelian", (a, b)))
    for a, g in enumerate(gens):
        if nilpotency_index(algebra.ad(g)) is None:
            out.append(Violation("not_nilpotent", (a,)))
    return out


# --- JSON schema -----------------------------------------------------------
#
# Algebra: {"dim": n, "basis": [names], "brackets": [[i, j, [[k, "p/q"], ...]], ...]}
# with 0-based indices, i < j only.  Subalgebra: {"generators": [["p/q", ...], ...]}.


def parse_rational(s) -> Fraction:
    if isinstance(s, str):
        return Fraction(s)
    if isinstance(s, int):
        return Fraction(s)
    raise ValueError(f"rationals must be strings or integers, got {type(s).__name__}")


def format_rational(x: Fraction) -> str:
    return str(x)


def algebra_from_json(obj: dict) -> LieAlgebra:
    dim = int(obj["dim"])
    names = list(obj.get("basis", [f"e{i}" for i in range(dim)]))
    if len(names) != dim:
        raise ValueError("basis name count must equal dim")
    brackets = []
    for entry in obj.get("brackets", []):
        i, j, comps = entry
        brackets.append((int(i), int(j), {int(k): parse_rational(v) for k, v in comps}))
    return LieAlgebra.from_sparse_brackets(names, brackets)


def algebra_to_json(algebra: LieAlgebra) -> dict:
    brackets = []
    for i in range(algebra.dim):
        for j in range(i + 1, algebra.dim):
            comps = [
                [k, format_rational(c)]
                for k, c in enumerate(algebra.structure[i][j])
                if c
            ]
            if comps:
                brackets.append([i, j, comps])
    return {
        "dim": algebra.dim,
        "basis": list(algebra.basis_names),
        "brackets": brackets,
    }


def subalgebra_from_json(obj: dict) -> SubalgebraSpec:
    gens = [[parse_rational(x) for x in row] for row in obj["generators"]]
    return SubalgebraSpec.from_coords(gens)


def subalgebra_to_json(u: SubalgebraSpec) -> dict:
    return {
        "generators": [[format_rational(x) for x in g] for g in u.generators]
    }


def load_problem(path: str) -> tuple[LieAlgebra, SubalgebraSpec]:
    """Read {"algebra": ..., "subalgebra": ...} from a JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    return algebra_from_json(obj["algebra"]), subalgebra_from_json(obj["subalgebra"])
