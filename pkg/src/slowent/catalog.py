"""Example families with closed-form entropies.

Each family constructs a (LieAlgebra, SubalgebraSpec) pair from matrix
commutators of a standard basis, plus the closed-form entropy the
computation must reproduce exactly.  Also houses Jordan-block recovery
from rank sequences, detection of horocyclic subalgebras via a
renormalizing element, and the weighted-average combinator for product
actions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .filtration import compute_filtration, slow_entropy
from .lie import LieAlgebra, SubalgebraSpec, Vector, vector
from .linalg import (
    ONE,
    ZERO,
    RationalMatrix,
    Subspace,
    char_poly,
    kernel,
    rref,
    solve_particular,
)


class NotNilpotentError(Exception):
    pass


class ParameterError(ValueError):
    pass


# --- small dense matrix helpers for building structure constants ------------


def _mat_zero(d: int):
    return [[ZERO] * d for _ in range(d)]


def _unit(d: int, i: int, j: int):
    m = _mat_zero(d)
    m[i][j] = ONE
    return m


def _commutator(a, b):
    d = len(a)
    out = _mat_zero(d)
    for i in range(d):
        for j in range(d):
            s = ZERO
            for t in range(d):
                s += a[i][t] * b[t][j] - b[i][t] * a[t][j]
            out[i][j] = s
    return out


def _algebra_from_matrices(names: Sequence[str], mats, decompose) -> LieAlgebra:
    """Structure constants from pairwise commutators of a matrix basis."""
    dim = len(mats)
    table = [[None] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(dim):
            if j < i:
                table[i][j] = tuple(-x for x in table[j][i])
            elif j == i:
                table[i][j] = (ZERO,) * dim
            else:
                table[i][j] = tuple(decompose(_commutator(mats[i], mats[j])))
    return LieAlgebra.from_table(names, table)


# --- sl(d) -------------------------------------------------------------------


def _sl_basis(d: int):
    """Off-diagonal units E_ij then H_i = E_ii - E_{i+1,i+1} (1-based names)."""
    names = []
    mats = []
    index = {}
    for i in range(d):
        for j in range(d):
            if i != j:
                index[(i, j)] = len(mats)
                names.append(f"E{i + 1}{j + 1}")
                mats.append(_unit(d, i, j))
    for i in range(d - 1):
        m = _mat_zero(d)
        m[i][i] = ONE
        m[i + 1][i + 1] = -ONE
        names.append(f"H{i + 1}")
        mats.append(m)
    dim = len(mats)

    def decompose(m) -> list[Fraction]:
        coords = [ZERO] * dim
        for i in range(d):
            for j in range(d):
                if i != j:
                    coords[index[(i, j)]] = m[i][j]
        partial = ZERO
        for i in range(d - 1):
            partial += m[i][i]
            coords[d * (d - 1) + i] = partial
        return coords

    return names, mats, index, decompose


def _sl_algebra(d: int) -> tuple[LieAlgebra, dict]:
    names, mats, index, decompose = _sl_basis(d)
    return _algebra_from_matrices(names, mats, decompose), index


def _strictly_upper_basis(d: int):
    names = []
    mats = []
    index = {}
    for i in range(d):
        for j in range(i + 1, d):
            index[(i, j)] = len(mats)
            names.append(f"E{i + 1}{j + 1}")
            mats.append(_unit(d, i, j))
    dim = len(mats)

    def decompose(m) -> list[Fraction]:
        coords = [ZERO] * dim
        for (i, j), idx in index.items():
            coords[idx] = m[i][j]
        return coords

    return names, mats, index, decompose


# --- the example specs -------------------------------------------------------


@dataclass(frozen=True)
class ExampleSpec:
    family: str
    params: tuple

    def label(self) -> str:
        if self.family == "direct_sum":
            inner = " + ".join(s.label() for s in self.params)
            return f"direct_sum({inner})"
        return f"{self.family}({', '.join(str(p) for p in self.params)})"


def _require(cond: bool, msg: str):
    if not cond:
        raise ParameterError(msg)


def build_example(spec: ExampleSpec) -> tuple[LieAlgebra, SubalgebraSpec]:
    if spec.family == "sl_first_row_restriction":
        d, ell = spec.params
        _require(d >= 2 and 1 <= ell <= d - 1, "need d >= 2 and 1 <= l <= d-1")
        algebra, index = _sl_algebra(d)
        gens = [
            vector([ONE if t == index[(0, j)] else ZERO for t in range(algebra.dim)])
            for j in range(1, ell + 1)
        ]
        return algebra, SubalgebraSpec(tuple(gens))
    if spec.family == "sl_horocyclic_block":
        d, i = spec.params
        _require(d >= 2 and 1 <= i <= d - 1, "need d >= 2 and 1 <= i <= d-1")
        algebra, index = _sl_algebra(d)
        gens = [
            vector([ONE if t == index[(a, b)] else ZERO for t in range(algebra.dim)])
            for a in range(i)
            for b in range(i, d)
        ]
        return algebra, SubalgebraSpec(tuple(gens))
    if spec.family == "sl_jordan_powers":
        (d,) = spec.params
        _require(d >= 3, "need d >= 3")
        algebra, index = _sl_algebra(d)
        gens = []
        for k in range(1, d):
            coords = [ZERO] * algebra.dim
            for a in range(d - k):
                coords[index[(a, a + k)]] = ONE
            gens.append(vector(coords))
        return algebra, SubalgebraSpec(tuple(gens))
    if spec.family == "strictly_upper_first_row":
        d, ell = spec.params
        _require(d >= 2 and 1 <= ell <= d - 1, "need d >= 2 and 1 <= l <= d-1")
        names, mats, index, decompose = _strictly_upper_basis(d)
        algebra = _algebra_from_matrices(names, mats, decompose)
        gens = [
            vector([ONE if t == index[(0, j)] else ZERO for t in range(algebra.dim)])
            for j in range(1, ell + 1)
        ]
        return algebra, SubalgebraSpec(tuple(gens))
    if spec.family == "rank_one_jordan":
        sizes = spec.params
        _require(len(sizes) >= 1 and all(int(m) >= 1 for m in sizes), "block sizes must be >= 1")
        names = ["U"]
        for b, m in enumerate(sizes):
            names.extend(f"X{b + 1}_{p}" for p in range(m))
        dim = 1 + sum(sizes)
        brackets = []
        at = 1
        for m in sizes:
            # ad_U sends X_{b,p} to X_{b,p-1}: [U, X_{b,p}] = X_{b,p-1}
            for p in range(1, m):
                brackets.append((0, at + p, {at + p - 1: ONE}))
            at += m
        algebra = LieAlgebra.from_sparse_brackets(names, brackets)
        gen = vector([ONE] + [ZERO] * (dim - 1))
        return algebra, SubalgebraSpec((gen,))
    if spec.family == "direct_sum":
        parts = [build_example(s) for s in spec.params]
        _require(len(parts) >= 1, "direct sum needs at least one factor")
        dims = [a.dim for a, _ in parts]
        total = sum(dims)
        names = []
        brackets = []
        gens = []
        offset = 0
        for t, (alg, u) in enumerate(parts):
            names.extend(f"g{t + 1}.{n}" for n in alg.basis_names)
            for i in range(alg.dim):
                for j in range(i + 1, alg.dim):
                    comps = {
                        offset + k: c
                        for k, c in enumerate(alg.structure[i][j])
                        if c
                    }
                    if comps:
                        brackets.append((offset + i, offset + j, comps))
            for g in u.generators:
                gens.append(
                    vector(
                        [ZERO] * offset + list(g) + [ZERO] * (total - offset - alg.dim)
                    )
                )
            offset += alg.dim
        algebra = LieAlgebra.from_sparse_brackets(names, brackets)
        return algebra, SubalgebraSpec(tuple(gens))
    raise ParameterError(f"unknown family {spec.family!r}")


def u_dim(spec: ExampleSpec) -> int:
    if spec.family == "sl_first_row_restriction":
        return spec.params[1]
    if spec.family == "sl_horocyclic_block":
        d, i = spec.params
        return i * (d - i)
    if spec.family == "sl_jordan_powers":
        return spec.params[0] - 1
    if spec.family == "strictly_upper_first_row":
        return spec.params[1]
    if spec.family == "rank_one_jordan":
        return 1
    if spec.family == "direct_sum":
        return sum(u_dim(s) for s in spec.params)
    raise ParameterError(f"unknown family {spec.family!r}")


def oracle_entropy(spec: ExampleSpec) -> Fraction:
    """Closed-form normalized entropy for each family."""
    if spec.family == "sl_first_row_restriction":
        d, ell = spec.params
        return Fraction((ell + 1) * d - 1, ell)
    if spec.family == "sl_horocyclic_block":
        d, i = spec.params
        return Fraction(d * d - 1, i * (d - i))
    if spec.family == "sl_jordan_powers":
        (d,) = spec.params
        return Fraction(d * (4 * d + 1), 6)
    if spec.family == "strictly_upper_first_row":
        d, ell = spec.params
        return Fraction(2 * d - ell - 3, 2)
    if spec.family == "rank_one_jordan":
        return Fraction(sum(math.comb(m, 2) for m in spec.params))
    if spec.family == "direct_sum":
        return product_entropy(
            [(u_dim(s), oracle_entropy(s)) for s in spec.params]
        )
    raise ParameterError(f"unknown family {spec.family!r}")


FAMILY_INFO = {
    "sl_first_row_restriction": {
        "params": "d l  (d >= 2, 1 <= l <= d-1)",
        "description": "sl(d) with the span of the first l first-row units",
        "entropy": "((l+1)d - 1)/l",
    },
    "sl_horocyclic_block": {
        "params": "d i  (d >= 2, 1 <= i <= d-1)",
        "description": "sl(d) with the full upper-right i x (d-i) block",
        "entropy": "(d^2 - 1)/(i(d-i))",
    },
    "sl_jordan_powers": {
        "params": "d  (d >= 3)",
        "description": "sl(d) with the span of the powers of the full Jordan block",
        "entropy": "d(4d+1)/6",
    },
    "strictly_upper_first_row": {
        "params": "d l  (d >= 2, 1 <= l <= d-1)",
        "description": "strictly upper triangular algebra with first-row generators",
        "entropy": "(2d - l - 3)/2",
    },
    "rank_one_jordan": {
        "params": "m1 m2 ...  (block sizes >= 1)",
        "description": "one generator acting with the given Jordan block sizes",
        "entropy": "sum_i binom(m_i, 2)",
    },
    "direct_sum": {
        "params": "family:params+family:params+...",
        "description": "block-diagonal sum of factors with concatenated generators",
        "entropy": "sum_i k_i h_i / sum_i k_i",
    },
}


def enumerate_catalog(max_d: int, include_sums: bool = False) -> Iterator[ExampleSpec]:
    """Every flat catalog spec with parameters up to max_d."""
    for d in range(2, max_d + 1):
        for ell in range(1, d):
            yield ExampleSpec("sl_first_row_restriction", (d, ell))
        for i in range(1, d):
            yield ExampleSpec("sl_horocyclic_block", (d, i))
        if d >= 3:
            yield ExampleSpec("sl_jordan_powers", (d,))
        for ell in range(1, d):
            yield ExampleSpec("strictly_upper_first_row", (d, ell))
    if include_sums:
        yield ExampleSpec(
            "direct_sum",
            (
                ExampleSpec("sl_first_row_restriction", (2, 1)),
                ExampleSpec("strictly_upper_first_row", (3, 1)),
            ),
        )


# --- Jordan blocks and rank-one coherence ------------------------------------


def jordan_block_sizes(m: RationalMatrix) -> list[int]:
    """Block sizes of a nilpotent matrix from its rank sequence.

    The number of blocks of size >= p equals rank(m^(p-1)) - rank(m^p).
    """
    if m.rows != m.cols:
        raise ValueError("square matrix required")
    n = m.rows
    ranks = [n]
    power = RationalMatrix.identity(n)
    for _ in range(n):
        power = power @ m
        ranks.append(rref(power)[1])
        if ranks[-1] == 0:
            break
    if ranks[-1] != 0:
        raise NotNilpotentError("matrix is not nilpotent")
    at_least = [ranks[p - 1] - ranks[p] for p in range(1, len(ranks))]
    sizes = []
    for p in range(len(at_least), 0, -1):
        exactly = at_least[p - 1] - (at_least[p] if p < len(at_least) else 0)
        sizes.extend([p] * exactly)
    return sorted(sizes)


def coherence_check_rank_one(
    algebra: LieAlgebra, u_gen: Sequence
) -> tuple[Fraction, Fraction, bool]:
    """Compare sum binom(m_i, 2) over ad's Jordan blocks with the filtration value."""
    ad = algebra.ad(u_gen)
    sizes = jordan_block_sizes(ad)
    jordan_value = Fraction(sum(math.comb(s, 2) for s in sizes))
    f = compute_filtration(algebra, SubalgebraSpec((vector(u_gen),)))
    filtration_value = slow_entropy(f).unnormalized_h
    return jordan_value, filtration_value, jordan_value == filtration_value


# --- horocyclic detection -----------------------------------------------------


@dataclass(frozen=True)
class HorocyclicWitness:
    x: Vector
    eigen_split_dims: tuple[int, int, int]  # (negative, zero, positive)


@dataclass(frozen=True)
class HorocyclicDetection:
    status: str  # "witness" | "not_found" | "non_integer_spectrum"
    witness: HorocyclicWitness | None = None

    @property
    def found(self) -> bool:
        return self.status == "witness"


def _rational_eigenvalues(m: RationalMatrix) -> list[tuple[Fraction, int]]:
    """Exact rational eigenvalues with algebraic multiplicities."""
    import sympy

    coeffs = char_poly(m)
    lam = sympy.Symbol("lam")
    poly = sympy.Poly(
        [sympy.Rational(c.numerator, c.denominator) for c in coeffs],
        lam,
        domain="QQ",
    )
    return [
        (Fraction(int(r.p), int(r.q)), int(mult))
        for r, mult in poly.ground_roots().items()
    ]


def detect_horocyclic(algebra: LieAlgebra, u: SubalgebraSpec) -> HorocyclicDetection:
    """Search for X with [X, U_j] = U_j whose positive part is exactly u.

    Solves the linear system for a renormalizing element, then splits the
    algebra into generalized eigenspaces of ad(X) over the exact rational
    spectrum.  Since u always sits inside the eigenvalue-1 space of any
    solution, a strictly larger positive part rules this X out even when
    irrational eigenvalues remain; the undecidable leftover case is
    reported as data, not an error.
    """
    n = algebra.dim
    rows = []
    rhs = []
    for g in u.generators:
        adg = algebra.ad(g)
        rows.extend(adg.data)
        rhs.extend(-x for x in g)
    x_sol = solve_particular(RationalMatrix(rows, cols=n), rhs)
    if x_sol is None:
        return HorocyclicDetection("not_found")
    ad_x = algebra.ad(x_sol)
    ident = RationalMatrix.identity(n)
    pos = Subspace.zero(n)
    neg = Subspace.zero(n)
    zero_part = Subspace.zero(n)
    total = 0
    for lam, mult in _rational_eigenvalues(ad_x):
        space = kernel((ad_x - ident.scale(lam)).pow(mult))
        total += space.dim
        if lam > 0:
            pos = pos.sum(space)
        elif lam < 0:
            neg = neg.sum(space)
        else:
            zero_part = space
    if pos != u.subspace(n):
        return HorocyclicDetection("not_found")
    if total < n:
        return HorocyclicDetection("non_integer_spectrum")
    witness = HorocyclicWitness(
        x=vector(x_sol),
        eigen_split_dims=(neg.dim, zero_part.dim, pos.dim),
    )
    return HorocyclicDetection("witness", witness)


# --- aggregate entropy formulas ------------------------------------------------


def semisimple_sum_entropy(
    factors: Sequence[tuple[int, bool]], dim_u: int
) -> Fraction:
    """Sum of detected factor dimensions over dim u."""
    if dim_u < 1:
        raise ValueError("dim_u must be >= 1")
    return Fraction(sum(d for d, detected in factors if detected), dim_u)


def product_entropy(components: Sequence[tuple[int, Fraction]]) -> Fraction:
    """Weighted average (1/N) sum k_i h_i with N = sum k_i."""
    if not components or any(k < 1 for k, _ in components):
        raise ValueError("components need k_i >= 1")
    total = sum(k for k, _ in components)
    return sum((Fraction(k) * Fraction(h) for k, h in components), Fraction(0)) / total
