"""Sparse multivariate polynomials with exact coefficients.

MultiPoly holds scalar Fraction coefficients keyed by exponent tuples;
VectorPoly holds tuple-of-Fraction coefficients for algebra-valued
polynomials such as Ad(exp(U_s)) applied to a vector.  Zero coefficients
are never stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .linalg import ZERO, RationalMatrix, as_fraction

Monomial = tuple[int, ...]


def _check_monomial(e: Monomial, nvars: int):
    if len(e) != nvars or any(x < 0 for x in e):
        raise ValueError(f"bad exponent tuple {e} for {nvars} variables")


@dataclass(frozen=True)
class MultiPoly:
    nvars: int
    coeffs: tuple  # sorted ((exponents, Fraction), ...)

    @classmethod
    def from_dict(cls, nvars: int, d: Mapping[Monomial, Fraction]) -> "MultiPoly":
        items = []
        for e, c in d.items():
            _check_monomial(tuple(e), nvars)
            c = as_fraction(c)
            if c:
                items.append((tuple(e), c))
        return cls(nvars, tuple(sorted(items)))

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars, ())

    @classmethod
    def constant(cls, nvars: int, c) -> "MultiPoly":
        return cls.from_dict(nvars, {(0,) * nvars: as_fraction(c)})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return cls.from_dict(nvars, {tuple(e): Fraction(1)})

    def as_dict(self) -> dict[Monomial, Fraction]:
        return dict(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Total degree; the zero polynomial reports 0."""
        if not self.coeffs:
            return 0
        return max(sum(e) for e, _ in self.coeffs)

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return MultiPoly(
            self.nvars, tuple((e, c) for e, c in self.coeffs if sum(e) == d)
        )

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        d = dict(self.coeffs)
        for e, c in other.coeffs:
            d[e] = d.get(e, ZERO) + c
        return MultiPoly.from_dict(self.nvars, d)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, tuple((e, -c) for e, c in self.coeffs))

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def scale(self, c) -> "MultiPoly":
        c = as_fraction(c)
        if not c:
            return MultiPoly.zero(self.nvars)
        return MultiPoly(self.nvars, tuple((e, c * v) for e, v in self.coeffs))

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        d: dict[Monomial, Fraction] = {}
        for e1, c1 in self.coeffs:
            for e2, c2 in other.coeffs:
                e = tuple(a + b for a, b in zip(e1, e2))
                d[e] = d.get(e, ZERO) + c1 * c2
        return MultiPoly.from_dict(self.nvars, d)

    def eval_exact(self, point: Sequence) -> Fraction:
        pt = [as_fraction(x) for x in point]
        total = ZERO
        for e, c in self.coeffs:
            term = c
            for x, p in zip(pt, e):
                term *= x**p
            total += term
        return total

    def dense_float(self) -> np.ndarray:
        """Dense coefficient array C[e_1, ..., e_k] as float64."""
        if not self.coeffs:
            return np.zeros((1,) * max(self.nvars, 1))
        shape = tuple(
            max(e[i] for e, _ in self.coeffs) + 1 for i in range(self.nvars)
        )
        out = np.zeros(shape)
        for e, c in self.coeffs:
            out[e] = float(c)
        return out

    def eval_float(self, point: Sequence[float]) -> float:
        """Evaluate at a float point, Horner-style one variable at a time."""
        arr = self.dense_float()
        for x in point:
            arr = np.polynomial.polynomial.polyval(x, arr, tensor=False)
        return float(arr)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in self.coeffs:
            mono = "*".join(
                f"s{i + 1}^{p}" if p > 1 else f"s{i + 1}"
                for i, p in enumerate(e)
                if p
            )
            parts.append(f"{c}" if not mono else f"{c}*{mono}")
        return " + ".join(parts)


@dataclass(frozen=True)
class VectorPoly:
    """Polynomial with values in Q^dim (coefficients are coordinate tuples)."""

    nvars: int
    dim: int
    coeffs: tuple  # sorted ((exponents, tuple-of-Fraction), ...)

    @classmethod
    def from_dict(cls, nvars: int, dim: int, d: Mapping[Monomial, Sequence]) -> "VectorPoly":
        items = []
        for e, vec in d.items():
            _check_monomial(tuple(e), nvars)
            v = tuple(as_fraction(x) for x in vec)
            if len(v) != dim:
                raise ValueError("coefficient vector has wrong length")
            if any(x != 0 for x in v):
                items.append((tuple(e), v))
        return cls(nvars, dim, tuple(sorted(items)))

    @classmethod
    def constant(cls, nvars: int, vec: Sequence) -> "VectorPoly":
        v = tuple(as_fraction(x) for x in vec)
        return cls.from_dict(nvars, len(v), {(0,) * nvars: v})

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        if not self.coeffs:
            return 0
        return max(sum(e) for e, _ in self.coeffs)

    def homogeneous_part(self, d: int) -> "VectorPoly":
        return VectorPoly(
            self.nvars, self.dim, tuple((e, v) for e, v in self.coeffs if sum(e) == d)
        )

    def apply_matrix(self, m: RationalMatrix) -> "VectorPoly":
        """Apply a linear map coefficient-wise."""
        return VectorPoly.from_dict(
            self.nvars, m.rows, {e: m.apply(v) for e, v in self.coeffs}
        )

    def pair_row(self, row: Sequence) -> MultiPoly:
        """Contract each coefficient vector with a functional row."""
        r = [as_fraction(x) for x in row]
        d: dict[Monomial, Fraction] = {}
        for e, v in self.coeffs:
            s = ZERO
            for a, b in zip(r, v):
                if a and b:
                    s += a * b
            d[e] = s
        return MultiPoly.from_dict(self.nvars, d)

    def coordinate(self, i: int) -> MultiPoly:
        return MultiPoly.from_dict(
            self.nvars, {e: v[i] for e, v in self.coeffs}
        )
