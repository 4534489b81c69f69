"""Centralizer filtration and the polynomial slow-entropy value.

The nested subspaces are computed by the recursion

    tilde_0 = centralizer(u),   tilde_i = ∩_j preimage(ad U_j, tilde_{i-1}),

which agrees with the definition through (i+1)-fold products of ad
operators by multilinearity (the test suite checks this against the
literal definition on small algebras).  The entropy only uses the level
dimensions; graded complements are still materialized because the chain
basis construction needs them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .lie import LieAlgebra, SubalgebraSpec, Vector, is_zero, vector, zero_vector
from .linalg import Subspace, complement_in, intersect, kernel, preimage


class NotUnipotentError(Exception):
    """The recursion failed to exhaust the algebra within dim steps."""


class SearchExhaustedError(Exception):
    """No witness tuple found; valid filtrations always admit one."""


@dataclass(frozen=True)
class Filtration:
    tilde: tuple[Subspace, ...]
    graded: tuple[Subspace, ...]
    dims: tuple[int, ...]
    m: int
    k: int

    @property
    def ambient_dim(self) -> int:
        return self.tilde[0].ambient_dim

    def level_of(self, x) -> int:
        """Smallest i with x in tilde[i]; raises for the zero vector."""
        xv = vector(x)
        if is_zero(xv):
            raise ValueError("the zero vector has no level")
        for i, t in enumerate(self.tilde):
            if t.contains(xv):
                return i
        raise ValueError("vector escapes the filtration (not in the algebra?)")


@dataclass(frozen=True)
class EntropyValue:
    unnormalized_h: Fraction
    normalized_h: Fraction


def centralizer(algebra: LieAlgebra, u: SubalgebraSpec) -> Subspace:
    """Common kernel of ad U_j over the generators."""
    out = Subspace.full(algebra.dim)
    for g in u.generators:
        out = intersect(out, kernel(algebra.ad(g)))
    return out


def compute_filtration(
    algebra: LieAlgebra,
    u: SubalgebraSpec,
    complement_strategy: str = "pivot",
) -> Filtration:
    ad_mats = [algebra.ad(g) for g in u.generators]
    tilde = [centralizer(algebra, u)]
    while not tilde[-1].is_full():
        nxt = Subspace.full(algebra.dim)
        for mat in ad_mats:
            nxt = intersect(nxt, preimage(mat, tilde[-1]))
        if nxt.dim == tilde[-1].dim:
            raise NotUnipotentError(
                "filtration stabilized below the full algebra; "
                "u is not abelian ad-unipotent"
            )
        tilde.append(nxt)
        if len(tilde) > algebra.dim + 1:
            raise NotUnipotentError("filtration failed to terminate")
    graded = [tilde[0]]
    for i in range(1, len(tilde)):
        graded.append(complement_in(tilde[i - 1], tilde[i], strategy=complement_strategy))
    dims = tuple(g.dim for g in graded)
    return Filtration(
        tilde=tuple(tilde),
        graded=tuple(graded),
        dims=dims,
        m=len(tilde) - 1,
        k=u.k,
    )


def slow_entropy(f: Filtration) -> EntropyValue:
    unnormalized = Fraction(sum(i * d for i, d in enumerate(f.dims)))
    return EntropyValue(unnormalized, unnormalized / f.k)


def witness_nonkill(
    algebra: LieAlgebra,
    u: SubalgebraSpec,
    f: Filtration,
    x,
    combination_bound: int = 2,
) -> tuple[Vector, ...]:
    """A tuple (U_1, ..., U_i) with ad_{U_1}...ad_{U_i} x in tilde[0] \\ {0}.

    x must be a nonzero member of graded[i].  Generator tuples are searched
    first; by multilinearity they always suffice, so the bounded integer
    combination sweep afterwards is a belt-and-braces fallback.
    """
    xv = vector(x)
    if is_zero(xv):
        raise ValueError("witness needs a nonzero vector")
    level = None
    for i, g in enumerate(f.graded):
        if g.contains(xv):
            level = i
            break
    if level is None:
        raise ValueError("vector does not lie in any graded piece")
    if level == 0:
        return ()
    ad_mats = [algebra.ad(g) for g in u.generators]

    def chase(mats) -> Vector | None:
        v = xv
        for m in mats:
            v = m.apply(v)
        if not is_zero(v) and f.tilde[0].contains(v):
            return v
        return None

    for combo in itertools.product(range(u.k), repeat=level):
        if chase([ad_mats[j] for j in combo]) is not None:
            return tuple(u.generators[j] for j in combo)

    coeff_range = [Fraction(c) for c in range(-combination_bound, combination_bound + 1)]
    for coeffs in itertools.product(coeff_range, repeat=u.k):
        if all(c == 0 for c in coeffs):
            continue
        w = zero_vector(algebra.dim)
        for c, g in zip(coeffs, u.generators):
            if c:
                w = tuple(a + c * b for a, b in zip(w, g))
        mat = algebra.ad(w)
        if chase([mat] * level) is not None:
            return (vector(w),) * level
    raise SearchExhaustedError(
        f"no witness tuple of length {level} found within bound {combination_bound}"
    )
