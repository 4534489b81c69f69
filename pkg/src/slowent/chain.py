"""Chain bases dual to symmetric ad-word functionals.

For each graded level i >= 1 the candidate functionals are
theta_alpha ∘ ad_{U_1}^{m_1} ... ad_{U_k}^{m_k} restricted to that level,
enumerated over exponent tuples of total degree i (descending lex) and
alpha ascending.  A greedy rank scan picks a dual basis, and the
associated polynomials come from expanding Ad(exp(sum s_j U_j)) as the
finite exponential series of the commuting nilpotent ad operators.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterator, Sequence

from .filtration import Filtration
from .lie import LieAlgebra, SubalgebraSpec, Vector, vector
from .linalg import ZERO, RationalMatrix, Subspace, inverse
from .poly import Monomial, MultiPoly, VectorPoly


class SurjectivityFailureError(Exception):
    """Word functionals failed to span a level's dual space.

    This cannot happen for a valid abelian ad-unipotent input; it signals a
    violated precondition or an internal bug.
    """

    def __init__(self, level: int):
        super().__init__(f"functionals do not span the dual at level {level}")
        self.level = level


@dataclass(frozen=True)
class TensorWord:
    multidegree: tuple[int, ...]  # exponents of U_1..U_k; total degree >= 1
    alpha: int  # index into the g_0 dual basis


@dataclass(frozen=True)
class ChainLevel:
    index: int
    elements: tuple[Vector, ...]
    alphas: tuple[int, ...]
    words: tuple[TensorWord | None, ...]  # None at level 0
    polys: tuple[MultiPoly, ...] | None = None


@dataclass(frozen=True)
class ChainBasis:
    k: int
    levels: tuple[ChainLevel, ...]

    @property
    def m(self) -> int:
        return len(self.levels) - 1

    def entries(self) -> Iterator[tuple[int, int, Vector]]:
        """(level, j, element) over the whole basis."""
        for lv in self.levels:
            for j, y in enumerate(lv.elements):
                yield lv.index, j, y


def multidegrees(k: int, total: int) -> list[tuple[int, ...]]:
    """Exponent tuples of the given total degree, descending lex."""
    if k == 1:
        return [(total,)]
    out = []
    for first in range(total, -1, -1):
        for rest in multidegrees(k - 1, total - first):
            out.append((first,) + rest)
    return out


def ad_exp_series(
    algebra: LieAlgebra, u: SubalgebraSpec
) -> dict[Monomial, RationalMatrix]:
    """Ad(exp(sum s_j U_j)) as a matrix of polynomials in s.

    The series sum_p (1/p!) (sum s_j ad_{U_j})^p terminates because the
    commuting ad operators are nilpotent; composing dim-many of them is
    already zero.
    """
    n = algebra.dim
    k = u.k
    ad_mats = [algebra.ad(g) for g in u.generators]
    series: dict[Monomial, RationalMatrix] = {}
    term: dict[Monomial, RationalMatrix] = {(0,) * k: RationalMatrix.identity(n)}
    p = 0
    while term:
        for e, mat in term.items():
            series[e] = series[e] + mat if e in series else mat
        p += 1
        if p > n:
            raise ValueError("exponential series failed to terminate; ad operators not nilpotent")
        nxt: dict[Monomial, RationalMatrix] = {}
        inv_p = Fraction(1, p)
        for e, mat in term.items():
            for j, adj in enumerate(ad_mats):
                prod = (adj @ mat).scale(inv_p)
                if prod.is_zero():
                    continue
                e2 = tuple(x + (1 if idx == j else 0) for idx, x in enumerate(e))
                nxt[e2] = nxt[e2] + prod if e2 in nxt else prod
        term = {e: m for e, m in nxt.items() if not m.is_zero()}
    return series


class _WordOperators:
    """Memoized products ad_{U_1}^{m_1} ... ad_{U_k}^{m_k}."""

    def __init__(self, algebra: LieAlgebra, u: SubalgebraSpec):
        self.ad_mats = [algebra.ad(g) for g in u.generators]
        self.n = algebra.dim
        self.cache: dict[tuple[int, ...], RationalMatrix] = {
            (0,) * u.k: RationalMatrix.identity(algebra.dim)
        }

    def get(self, e: tuple[int, ...]) -> RationalMatrix:
        if e in self.cache:
            return self.cache[e]
        j = next(i for i, x in enumerate(e) if x > 0)
        prev = tuple(x - (1 if i == j else 0) for i, x in enumerate(e))
        mat = self.ad_mats[j] @ self.get(prev)
        self.cache[e] = mat
        return mat


def phi_apply(
    algebra: LieAlgebra,
    u: SubalgebraSpec,
    word: TensorWord,
    g0: Subspace,
    gi: Subspace,
    _ops: _WordOperators | None = None,
) -> tuple[Fraction, ...]:
    """The functional theta_alpha ∘ ad-word as a row over gi's basis rows."""
    if sum(word.multidegree) < 1:
        raise ValueError("word must have total degree >= 1")
    if not 0 <= word.alpha < g0.dim:
        raise ValueError("alpha out of range for the g_0 dual basis")
    ops = _ops if _ops is not None else _WordOperators(algebra, u)
    op = ops.get(word.multidegree)
    row = []
    for b in gi.basis.data:
        img = op.apply(b)
        row.append(g0.coordinates(img)[word.alpha])
    return tuple(row)


def check_ad_commutation(algebra: LieAlgebra, u: SubalgebraSpec) -> None:
    """Word functionals are only well-defined if the ad operators commute."""
    mats = [algebra.ad(g) for g in u.generators]
    for a in range(len(mats)):
        for b in range(a + 1, len(mats)):
            if mats[a] @ mats[b] != mats[b] @ mats[a]:
                raise ValueError(
                    f"ad operators of generators {a} and {b} do not commute"
                )


def build_chain_basis(
    algebra: LieAlgebra, u: SubalgebraSpec, f: Filtration
) -> ChainBasis:
    check_ad_commutation(algebra, u)
    g0 = f.graded[0]
    n0 = g0.dim
    ops = _WordOperators(algebra, u)
    levels = [
        ChainLevel(
            index=0,
            elements=tuple(vector(r) for r in g0.basis.data),
            alphas=tuple(range(n0)),
            words=(None,) * n0,
        )
    ]
    for i in range(1, f.m + 1):
        gi = f.graded[i]
        ni = gi.dim
        selected_rows: list[tuple[Fraction, ...]] = []
        selected_words: list[TensorWord] = []
        span = Subspace.zero(ni)
        for e in multidegrees(u.k, i):
            if len(selected_rows) == ni:
                break
            op = ops.get(e)
            images = [g0.coordinates(op.apply(b)) for b in gi.basis.data]
            for alpha in range(n0):
                row = tuple(img[alpha] for img in images)
                grown = span.sum(Subspace.from_rows(ni, [row]))
                if grown.dim > span.dim:
                    span = grown
                    selected_rows.append(row)
                    selected_words.append(TensorWord(e, alpha))
                    if len(selected_rows) == ni:
                        break
        if len(selected_rows) < ni:
            raise SurjectivityFailureError(i)
        fmat = RationalMatrix(selected_rows, cols=ni)
        dual_cols = inverse(fmat)
        elements = []
        for j in range(ni):
            y = [ZERO] * algebra.dim
            for t in range(ni):
                c = dual_cols.data[t][j]
                if c:
                    for idx, b in enumerate(gi.basis.data[t]):
                        y[idx] += c * b
            elements.append(tuple(y))
        levels.append(
            ChainLevel(
                index=i,
                elements=tuple(elements),
                alphas=tuple(w.alpha for w in selected_words),
                words=tuple(selected_words),
            )
        )
    return ChainBasis(k=u.k, levels=tuple(levels))


def _graded_coordinate_map(f: Filtration) -> tuple[RationalMatrix, list[tuple[int, int]]]:
    """Inverse-transpose of the stacked graded basis plus level row spans.

    Row r of the returned matrix is the functional extracting the r-th
    stacked-basis coordinate; block (start, end) of level i gives the
    g_i-coordinates, so rows start..end-1 compose theta with the projection
    onto that level.
    """
    rows = []
    spans = []
    at = 0
    for g in f.graded:
        rows.extend(g.basis.data)
        spans.append((at, at + g.dim))
        at += g.dim
    stacked = RationalMatrix(rows, cols=f.ambient_dim)
    return inverse(stacked.transpose()), spans


def adjoint_orbit_poly(
    series: dict[Monomial, RationalMatrix], nvars: int, y: Sequence
) -> VectorPoly:
    """Ad(exp(U_s)) y as an algebra-valued polynomial."""
    yv = vector(y)
    return VectorPoly.from_dict(
        nvars, len(yv), {e: mat.apply(yv) for e, mat in series.items()}
    )


def associated_polynomials(
    algebra: LieAlgebra, u: SubalgebraSpec, f: Filtration, cb: ChainBasis
) -> ChainBasis:
    """Fill in p_{j,i} = theta_{alpha_j}(pi_0(Ad(exp U_s) Y_j))."""
    series = ad_exp_series(algebra, u)
    coord_map, spans = _graded_coordinate_map(f)
    start0, _ = spans[0]
    new_levels = []
    for lv in cb.levels:
        polys = []
        for y, alpha in zip(lv.elements, lv.alphas):
            vp = adjoint_orbit_poly(series, u.k, y)
            polys.append(vp.pair_row(coord_map.data[start0 + alpha]))
        new_levels.append(replace(lv, polys=tuple(polys)))
    return ChainBasis(k=cb.k, levels=tuple(new_levels))


def graded_projection_poly(
    coord_map: RationalMatrix,
    spans: list[tuple[int, int]],
    f: Filtration,
    vp: VectorPoly,
    i: int,
) -> VectorPoly:
    """pi_i of an algebra-valued polynomial, in ambient coordinates."""
    start, end = spans[i]
    gi_rows = f.graded[i].basis.data
    out: dict[Monomial, list] = {}
    for e, v in vp.coeffs:
        acc = [ZERO] * f.ambient_dim
        for r in range(start, end):
            c = _dot_row(coord_map.data[r], v)
            if c:
                brow = gi_rows[r - start]
                for idx, b in enumerate(brow):
                    if b:
                        acc[idx] += c * b
        out[e] = acc
    return VectorPoly.from_dict(vp.nvars, f.ambient_dim, out)


def _dot_row(row, v):
    s = ZERO
    for a, b in zip(row, v):
        if a and b:
            s += a * b
    return s


@dataclass(frozen=True)
class IndependenceRecord:
    level: int
    alpha: int
    count: int
    rank: int

    @property
    def ok(self) -> bool:
        return self.rank == self.count


def verify_homogeneous_independence(cb: ChainBasis) -> list[IndependenceRecord]:
    """Per (level, alpha): rank of the degree-i homogeneous parts."""
    if any(lv.polys is None for lv in cb.levels):
        raise ValueError("polynomials not computed; run associated_polynomials first")
    out = []
    for lv in cb.levels:
        groups: dict[int, list[MultiPoly]] = {}
        for p, alpha in zip(lv.polys, lv.alphas):
            groups.setdefault(alpha, []).append(p.homogeneous_part(lv.index))
        for alpha in sorted(groups):
            polys = groups[alpha]
            monomials = sorted({e for p in polys for e, _ in p.coeffs})
            if monomials:
                index = {e: c for c, e in enumerate(monomials)}
                rows = []
                for p in polys:
                    row = [ZERO] * len(monomials)
                    for e, c in p.coeffs:
                        row[index[e]] = c
                    rows.append(row)
                rank = Subspace.from_rows(len(monomials), rows).dim
            else:
                rank = 0
            out.append(IndependenceRecord(lv.index, alpha, len(polys), rank))
    return out


@dataclass(frozen=True)
class ProjectionDegreeRecord:
    level: int
    j: int
    projection: int
    degree: int
    is_zero: bool

    @property
    def expected_degree(self) -> int:
        return max(self.level - self.projection, 0)


def graded_projection_degrees(
    algebra: LieAlgebra, u: SubalgebraSpec, f: Filtration, cb: ChainBasis
) -> list[ProjectionDegreeRecord]:
    """Degrees of pi_i(Ad(exp U_s) Y) for every chain element and level."""
    series = ad_exp_series(algebra, u)
    coord_map, spans = _graded_coordinate_map(f)
    out = []
    for level, j, y in cb.entries():
        vp = adjoint_orbit_poly(series, u.k, y)
        for i in range(f.m + 1):
            proj = graded_projection_poly(coord_map, spans, f, vp, i)
            out.append(
                ProjectionDegreeRecord(level, j, i, proj.degree(), proj.is_zero())
            )
    return out


# --- serialization ----------------------------------------------------------


def monomial_key(e: Monomial) -> str:
    return ",".join(str(x) for x in e)


def poly_to_json(p: MultiPoly) -> dict:
    return {monomial_key(e): str(c) for e, c in p.coeffs}


def chain_basis_to_json(cb: ChainBasis) -> dict:
    levels = []
    for lv in cb.levels:
        entries = []
        for j in range(len(lv.elements)):
            entry = {
                "coords": [str(x) for x in lv.elements[j]],
                "alpha": lv.alphas[j],
                "multidegree": list(lv.words[j].multidegree) if lv.words[j] else None,
            }
            if lv.polys is not None:
                entry["poly"] = poly_to_json(lv.polys[j])
            entries.append(entry)
        levels.append({"level": lv.index, "elements": entries})
    return {"k": cb.k, "levels": levels}
