"""Exact linear algebra over the rationals.

Dense matrices with ``fractions.Fraction`` entries, canonical reduced row
echelon forms, and the subspace lattice operations (kernel, intersection,
preimage, deterministic complement) that the rest of the package computes
on.  Subspaces are stored as canonical RREF row bases, so two equal
subspaces always compare equal structurally.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class RationalMatrix:
    """Immutable dense row-major matrix over Q."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        rows = tuple(tuple(as_fraction(x) for x in row) for row in data)
        if rows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise ValueError("ragged rows")
            if cols is not None and cols != ncols:
                raise ValueError("cols does not match row length")
        else:
            if cols is None:
                raise ValueError("empty matrix needs an explicit column count")
            ncols = cols
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", ncols)
        object.__setattr__(self, "data", rows)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable")

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls([[ZERO] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalMatrix)
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self) -> int:
        return hash((self.cols, self.data))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"RationalMatrix({self.rows}x{self.cols}: {body})"

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.data[i]

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        return self.data[ij[0]][ij[1]]

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            [[self.data[r][c] for r in range(self.rows)] for c in range(self.cols)],
            cols=self.rows,
        )

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return RationalMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ],
            cols=self.cols,
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return RationalMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ],
            cols=self.cols,
        )

    def scale(self, c) -> "RationalMatrix":
        c = as_fraction(c)
        return RationalMatrix([[c * x for x in row] for row in self.data], cols=self.cols)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        bt = other.transpose().data
        return RationalMatrix(
            [
                [_dot(row, col) for col in bt]
                for row in self.data
            ],
            cols=other.cols,
        )

    def apply(self, vec: Sequence) -> tuple[Fraction, ...]:
        """Matrix-vector product, vec as a column."""
        v = tuple(as_fraction(x) for x in vec)
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(_dot(row, v) for row in self.data)

    def pow(self, n: int) -> "RationalMatrix":
        if self.rows != self.cols:
            raise ValueError("pow needs a square matrix")
        if n < 0:
            raise ValueError("negative power")
        result = RationalMatrix.identity(self.rows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base if n > 1 else base
            n >>= 1
        return result

    def stack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.cols:
            raise ValueError("column mismatch in stack")
        return RationalMatrix(self.data + other.data, cols=self.cols)


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    s = ZERO
    for x, y in zip(a, b):
        if x and y:
            s += x * y
    return s


def rref(m: RationalMatrix) -> tuple[RationalMatrix, int]:
    """Canonical reduced row echelon form and rank.

    Pivots are scaled to 1 with zeros above and below; idempotent, and the
    result is a canonical representative of the row space.
    """
    rows = [list(r) for r in m.data]
    nr, nc = m.rows, m.cols
    pivot_row = 0
    for col in range(nc):
        sel = None
        for r in range(pivot_row, nr):
            if rows[r][col] != 0:
                sel = r
                break
        if sel is None:
            continue
        rows[pivot_row], rows[sel] = rows[sel], rows[pivot_row]
        pv = rows[pivot_row][col]
        if pv != 1:
            inv = ONE / pv
            rows[pivot_row] = [x * inv for x in rows[pivot_row]]
        prow = rows[pivot_row]
        for r in range(nr):
            if r == pivot_row:
                continue
            f = rows[r][col]
            if f:
                rows[r] = [x - f * y for x, y in zip(rows[r], prow)]
        pivot_row += 1
        if pivot_row == nr:
            break
    return RationalMatrix(rows, cols=nc), pivot_row


def pivot_columns(rref_matrix: RationalMatrix, rank: int) -> list[int]:
    cols = []
    for r in range(rank):
        row = rref_matrix.data[r]
        for c, x in enumerate(row):
            if x != 0:
                cols.append(c)
                break
    return cols


class Subspace:
    """A linear subspace of Q^n, held as a canonical RREF row basis."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: RationalMatrix):
        if basis.cols != ambient_dim:
            raise ValueError("basis columns must equal the ambient dimension")
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def from_rows(cls, ambient_dim: int, rows: Iterable[Iterable]) -> "Subspace":
        """Span of the given vectors, canonicalized."""
        mat = RationalMatrix(rows, cols=ambient_dim)
        red, rank = rref(mat)
        return cls(ambient_dim, RationalMatrix(red.data[:rank], cols=ambient_dim))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, RationalMatrix([], cols=ambient_dim))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, RationalMatrix.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim {self.dim} of Q^{self.ambient_dim})"

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def contains(self, vec: Sequence) -> bool:
        """Membership test by reducing vec against the RREF basis."""
        v = [as_fraction(x) for x in vec]
        if len(v) != self.ambient_dim:
            raise ValueError("vector length mismatch")
        pivots = pivot_columns(self.basis, self.basis.rows)
        for row, p in zip(self.basis.data, pivots):
            f = v[p]
            if f:
                v = [x - f * y for x, y in zip(v, row)]
        return all(x == 0 for x in v)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(row) for row in other.basis.data)

    def sum(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return Subspace.from_rows(
            self.ambient_dim, self.basis.data + other.basis.data
        )

    def coordinates(self, vec: Sequence) -> tuple[Fraction, ...]:
        """Coefficients of vec over the basis rows; raises if not a member."""
        v = [as_fraction(x) for x in vec]
        pivots = pivot_columns(self.basis, self.basis.rows)
        coords = []
        for row, p in zip(self.basis.data, pivots):
            f = v[p]
            coords.append(f)
            if f:
                v = [x - f * y for x, y in zip(v, row)]
        if any(x != 0 for x in v):
            raise ValueError("vector not in subspace")
        return tuple(coords)


def kernel(m: RationalMatrix) -> Subspace:
    """Null space {v : m v = 0} as a canonical subspace of Q^cols."""
    red, rank = rref(m)
    n = m.cols
    pivots = pivot_columns(red, rank)
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    basis_rows = []
    for fc in free:
        v = [ZERO] * n
        v[fc] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -red.data[r][fc]
        basis_rows.append(v)
    return Subspace.from_rows(n, basis_rows)


def constraint_matrix(s: Subspace) -> RationalMatrix:
    """Rows K with s = {x : K x = 0} (the annihilator of the row basis)."""
    if s.dim == 0:
        return RationalMatrix.identity(s.ambient_dim)
    return kernel(s.basis).basis


def intersect(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    stacked = constraint_matrix(a).stack(constraint_matrix(b))
    return kernel(stacked)


def complement_in(sub: Subspace, sup: Subspace, strategy: str = "pivot") -> Subspace:
    """Deterministic complement of sub inside sup (sub ⊕ result = sup).

    The default "pivot" rule keeps the RREF basis rows of sup whose pivot
    column is not a pivot column of sub, which is canonical given the two
    RREF bases.  "greedy_reversed" scans sup's rows backwards and keeps any
    row that grows the span; it exists so callers can check that downstream
    results do not depend on the complement choice.
    """
    if sub.ambient_dim != sup.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    if not sup.contains_subspace(sub):
        raise ValueError("sub is not contained in sup")
    if strategy == "pivot":
        sub_pivots = set(pivot_columns(sub.basis, sub.basis.rows))
        sup_pivots = pivot_columns(sup.basis, sup.basis.rows)
        keep = [
            row
            for row, p in zip(sup.basis.data, sup_pivots)
            if p not in sub_pivots
        ]
        return Subspace.from_rows(sup.ambient_dim, keep)
    if strategy == "greedy_reversed":
        chosen: list = []
        span = sub
        for row in reversed(sup.basis.data):
            grown = span.sum(Subspace.from_rows(sup.ambient_dim, [row]))
            if grown.dim > span.dim:
                chosen.append(row)
                span = grown
        return Subspace.from_rows(sup.ambient_dim, chosen)
    raise ValueError(f"unknown complement strategy {strategy!r}")


def preimage(m: RationalMatrix, target: Subspace) -> Subspace:
    """{v : m v ∈ target}."""
    if m.rows != target.ambient_dim:
        raise ValueError("matrix rows must match the target ambient dimension")
    if target.is_full():
        return Subspace.full(m.cols)
    return kernel(constraint_matrix(target) @ m)


def solve_particular(a: RationalMatrix, b: Sequence) -> tuple[Fraction, ...] | None:
    """One solution of a x = b with free variables set to zero, or None."""
    bvec = [as_fraction(x) for x in b]
    if len(bvec) != a.rows:
        raise ValueError("rhs length mismatch")
    aug = RationalMatrix(
        [list(row) + [bv] for row, bv in zip(a.data, bvec)], cols=a.cols + 1
    )
    red, rank = rref(aug)
    pivots = pivot_columns(red, rank)
    if a.cols in pivots:
        return None  # inconsistent system
    x = [ZERO] * a.cols
    for r, p in enumerate(pivots):
        x[p] = red.data[r][a.cols]
    return tuple(x)


def char_poly(m: RationalMatrix) -> list[Fraction]:
    """Characteristic polynomial coefficients [1, c_{n-1}, ..., c_0].

    Faddeev-LeVerrier recursion; exact over Q.
    """
    if m.rows != m.cols:
        raise ValueError("characteristic polynomial needs a square matrix")
    n = m.rows
    coeffs = [ONE]
    mk = m
    for k in range(1, n + 1):
        ck = -Fraction(sum(mk.data[i][i] for i in range(n)), k)
        coeffs.append(ck)
        if k < n:
            mk = m @ (mk + RationalMatrix.identity(n).scale(ck))
    return coeffs


def inverse(m: RationalMatrix) -> RationalMatrix:
    if m.rows != m.cols:
        raise ValueError("inverse needs a square matrix")
    n = m.rows
    aug = RationalMatrix(
        [
            list(m.data[i]) + [ONE if i == j else ZERO for j in range(n)]
            for i in range(n)
        ],
        cols=2 * n,
    )
    red, rank = rref(aug)
    if rank < n or pivot_columns(red, rank)[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return RationalMatrix([row[n:] for row in red.data[:n]], cols=n)
