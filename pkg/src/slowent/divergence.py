"""Numeric checks for the polynomial orbit-divergence mechanism.

Everything here is floating point on corner-inclusive grids: suprema of
polynomials over boxes, the two-sided coefficient-decay test, sublevel-set
(Remez-type) margins, and the Monte-Carlo fit of the box-volume decay
exponent.  Exact data (chain bases, exponential series) is converted to
float arrays once per run; acceptance decisions and fitted constants are
reported as data with the sample counts that produced them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .chain import ChainBasis, ad_exp_series
from .filtration import Filtration
from .kernels import accept_mask, batch_sup
from .lie import LieAlgebra, SubalgebraSpec
from .poly import MultiPoly


class ChainBasisMissingError(Exception):
    pass


class InsufficientAcceptanceError(Exception):
    pass


@dataclass(frozen=True)
class BoxGrid:
    """Corner-inclusive evaluation grid on [-R, R]^k."""

    k: int
    radius: float
    points_per_axis: int = 9

    def __post_init__(self):
        if self.points_per_axis < 2:
            raise ValueError("need at least 2 points per axis to include corners")
        if self.radius <= 0:
            raise ValueError("radius must be positive")

    def axis(self) -> np.ndarray:
        return np.linspace(-self.radius, self.radius, self.points_per_axis)

    def points(self) -> np.ndarray:
        """All grid points, shape (points_per_axis**k, k)."""
        axes = np.meshgrid(*[self.axis()] * self.k, indexing="ij")
        return np.stack([a.ravel() for a in axes], axis=1)

    def refined(self) -> "BoxGrid":
        return BoxGrid(self.k, self.radius, 2 * self.points_per_axis - 1)


def sup_on_box(p: MultiPoly, grid: BoxGrid) -> float:
    """Max of |p| over the grid, evaluated Horner-style one variable at a time."""
    if p.nvars != grid.k:
        raise ValueError("variable count does not match the grid")
    if p.is_zero():
        return 0.0
    vals = p.dense_float()
    ax = grid.axis()
    # polyval contracts the leading coefficient axis and appends the point
    # axis at the back, so iterating walks through the variables in order
    for _ in range(grid.k):
        vals = np.polynomial.polynomial.polyval(ax, vals, tensor=True)
    return float(np.abs(vals).max())


def sup_with_refinement(p: MultiPoly, grid: BoxGrid) -> tuple[float, float]:
    """Sup on the doubled grid plus the relative change under refinement."""
    coarse = sup_on_box(p, grid)
    fine = sup_on_box(p, grid.refined())
    rel = abs(fine - coarse) / fine if fine > 0 else 0.0
    return fine, rel


def _monomial_values(points: np.ndarray, exponents: Sequence[tuple[int, ...]]) -> np.ndarray:
    out = np.empty((points.shape[0], len(exponents)))
    for c, e in enumerate(exponents):
        acc = np.ones(points.shape[0])
        for j, p in enumerate(e):
            if p:
                acc = acc * points[:, j] ** p
        out[:, c] = acc
    return out


def ad_grid_matrices(
    algebra: LieAlgebra,
    u: SubalgebraSpec,
    grid: BoxGrid,
    transform: np.ndarray | None = None,
) -> np.ndarray:
    """Ad(exp(U_s)) at every grid point, shape (G, n, n).

    With a transform T the result is Ad(exp(U_s)) @ T, mapping chain-basis
    coordinates straight to translated algebra coordinates.
    """
    series = ad_exp_series(algebra, u)
    exps = sorted(series.keys())
    pts = grid.points()
    mono = _monomial_values(pts, exps)
    stack = np.stack(
        [np.array([[float(x) for x in row] for row in series[e].data]) for e in exps]
    )
    mats = np.einsum("gt,tij->gij", mono, stack)
    if transform is not None:
        mats = mats @ transform
    return np.ascontiguousarray(mats)


def chain_coordinate_data(cb: ChainBasis) -> tuple[np.ndarray, np.ndarray]:
    """(transform, levels): columns of transform are the chain elements."""
    cols = []
    levels = []
    for level, _, y in cb.entries():
        cols.append([float(x) for x in y])
        levels.append(level)
    return np.array(cols).T, np.array(levels, dtype=np.int64)


def _require_polys(cb: ChainBasis):
    if any(lv.polys is None for lv in cb.levels):
        raise ChainBasisMissingError(
            "chain basis has no associated polynomials; run associated_polynomials"
        )


def verify_coefficient_decay(
    algebra: LieAlgebra,
    u: SubalgebraSpec,
    cb: ChainBasis,
    trials: int = 200,
    R_list: Sequence[float] = (4, 8, 16, 32, 64),
    epsilon: float = 1.0,
    points_per_axis: int = 9,
    stability_factor: float = 3.0,
    seed: int = 0,
) -> dict:
    """Two-sided test of the coefficient decay law.

    Forward: coordinates sampled with |x_{j,i}| <= eps * R^-i must keep the
    translated sup below a constant multiple of eps.  Reverse: scaling any
    sample to sup exactly eps must force |x_{j,i}| <= C * eps * R^-i.  The
    same unit-box draws are reused across R so the reported constants vary
    only through the geometry.
    """
    _require_polys(cb)
    transform, levels = chain_coordinate_data(cb)
    n = transform.shape[1]
    rng = np.random.default_rng(seed)
    unit = rng.uniform(-1.0, 1.0, size=(trials, n))
    forward = []
    reverse = []
    for R in R_list:
        grid = BoxGrid(u.k, float(R), points_per_axis)
        mats = ad_grid_matrices(algebra, u, grid, transform)
        weights = float(R) ** (-levels.astype(float))
        sups = batch_sup(mats, np.ascontiguousarray(unit * weights * epsilon))
        forward.append(float(sups.max()) / epsilon)
        raw_sups = batch_sup(mats, np.ascontiguousarray(unit))
        # scale each draw so its translated sup is exactly epsilon, then
        # measure how large the level-weighted coordinates can be
        scaled = np.abs(unit) * (epsilon / raw_sups)[:, None]
        reverse.append(float((scaled / weights).max()) / epsilon)
    fwd_stab = max(forward) / min(forward)
    rev_stab = max(reverse) / min(reverse)
    return {
        "radii": [float(R) for R in R_list],
        "forward_constants": forward,
        "reverse_constants": reverse,
        "forward_stability": fwd_stab,
        "reverse_stability": rev_stab,
        "stability_factor": stability_factor,
        "passed": fwd_stab <= stability_factor and rev_stab <= stability_factor,
        "trials": trials,
        "epsilon": epsilon,
        "points_per_axis": points_per_axis,
        "seed": seed,
    }


def brudnyi_ganzburg_check(
    p: MultiPoly,
    grid: BoxGrid,
    levels: Sequence[float] | None = None,
    quantiles: Sequence[float] = (0.2, 0.35, 0.5, 0.7, 0.9),
) -> dict:
    """Sublevel-set margins for sup_V |p| <= (4k|V|/|w|)^d sup_w |p|.

    |w| is estimated by counting grid points with |p| <= t; the margin is
    the bound divided by the observed sup, so every margin should be >= 1.
    """
    if p.is_zero():
        raise ValueError("sublevel margins need a nonzero polynomial")
    if p.nvars != grid.k:
        raise ValueError("variable count does not match the grid")
    pts = grid.points()
    exps = [e for e, _ in p.coeffs]
    coefs = np.array([float(c) for _, c in p.coeffs])
    vals = np.abs(_monomial_values(pts, exps) @ coefs)
    sup_v = float(vals.max())
    box_volume = (2.0 * grid.radius) ** grid.k
    degree = p.degree()
    if levels is None:
        levels = [float(np.quantile(vals, q)) for q in quantiles]
    rows = []
    for t in levels:
        count = int((vals <= t).sum())
        if count == 0 or sup_v == 0.0:
            rows.append({"level": float(t), "sublevel_fraction": 0.0, "margin": None})
            continue
        w_measure = box_volume * count / vals.size
        bound = (4.0 * grid.k * box_volume / w_measure) ** degree * t
        rows.append(
            {
                "level": float(t),
                "sublevel_fraction": count / vals.size,
                "margin": bound / sup_v,
            }
        )
    margins = [r["margin"] for r in rows if r["margin"] is not None]
    return {
        "degree": degree,
        "sup": sup_v,
        "levels": rows,
        "min_margin": min(margins) if margins else None,
        "passed": bool(margins) and all(m >= 1.0 for m in margins),
    }


@dataclass(frozen=True)
class DecayFit:
    radii: tuple[float, ...]
    log_volumes: tuple[float, ...]
    slope: float
    r_squared: float
    details: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(self.radii) < 2 or any(
            b <= a for a, b in zip(self.radii, self.radii[1:])
        ):
            raise ValueError("radii must be strictly increasing with >= 2 entries")


def _fit_loglog(radii: np.ndarray, volumes: np.ndarray) -> tuple[float, float]:
    x = np.log(radii)
    y = np.log(volumes)
    slope, intercept = np.polyfit(x, y, 1)
    pred = slope * x + intercept
    ss_res = float(((y - pred) ** 2).sum())
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return float(slope), r2


def bowen_exponent_fit(
    algebra: LieAlgebra,
    u: SubalgebraSpec,
    f: Filtration,
    cb: ChainBasis,
    eta: float = 0.5,
    R_list: Sequence[float] = (4, 8, 16, 32),
    mc_samples: int = 200_000,
    points_per_axis: int = 9,
    seed: int = 0,
    proposal: str = "scaled",
    box_factor: float | None = None,
    min_accepted: int = 50,
    probe: int = 512,
) -> DecayFit:
    """Monte-Carlo fit of the translated-box volume decay exponent.

    The volume of {Y : sup over the grid of the translated norm <= eta} is
    estimated per radius and the log-log slope compared against minus the
    unnormalized entropy.  The "scaled" proposal samples coordinates from
    boxes shrunk like R^-level (auto-calibrated cover factor, coverage
    reported); "fixed" samples the plain eta-box, which starves at large
    exponents but is kept for cross-checks.
    """
    _require_polys(cb)
    if len(R_list) < 2:
        raise ValueError("need at least two radii")
    if proposal not in ("scaled", "fixed"):
        raise ValueError(f"unknown proposal {proposal!r}")
    transform, levels = chain_coordinate_data(cb)
    n = transform.shape[1]
    rng = np.random.default_rng(seed)
    grids = [BoxGrid(u.k, float(R), points_per_axis) for R in R_list]
    mats = [ad_grid_matrices(algebra, u, g, transform) for g in grids]

    if proposal == "scaled":
        if box_factor is not None:
            factors = np.full(n, float(box_factor))
        else:
            # boundary probes: scale random directions onto sup == eta, then
            # record per coordinate how far the level-weighted values reach
            dirs = rng.uniform(-1.0, 1.0, size=(probe, n))
            worst = np.ones(n)
            for R, m in zip(R_list, mats):
                sups = batch_sup(m, np.ascontiguousarray(dirs))
                weights = float(R) ** (-levels.astype(float))
                reach = (np.abs(dirs) * (eta / sups)[:, None]) / (eta * weights)
                worst = np.maximum(worst, reach.max(axis=0))
            factors = 1.5 * worst
    else:
        factors = None

    radii = []
    log_volumes = []
    accepted_counts = []
    coverage = []
    for R, m in zip(R_list, mats):
        if proposal == "scaled":
            half = factors * eta * float(R) ** (-levels.astype(float))
        else:
            half = np.full(n, eta)
        samples = rng.uniform(-1.0, 1.0, size=(mc_samples, n)) * half
        mask = accept_mask(m, np.ascontiguousarray(samples), eta)
        count = int(mask.sum())
        if count < min_accepted:
            raise InsufficientAcceptanceError(
                f"only {count} accepted samples at R={R}; raise mc_samples or "
                "shrink the radius range"
            )
        inside = samples[mask.astype(bool)]
        coverage.append(float((np.abs(inside) / half).max()))
        volume = float(np.prod(2.0 * half)) * count / mc_samples
        radii.append(float(R))
        log_volumes.append(math.log(volume))
        accepted_counts.append(count)
    slope, r2 = _fit_loglog(np.array(radii), np.exp(np.array(log_volumes)))
    details = {
        "proposal": proposal,
        "box_factors": None if factors is None else [float(x) for x in factors],
        "mc_samples": mc_samples,
        "accepted": accepted_counts,
        "coverage": coverage,
        # accepted samples on the proposal boundary mean the Bowen set is
        # clipped by the box; the clipped set obeys the same power law
        "clipped": bool(max(coverage) > 0.99),
        "eta": eta,
        "points_per_axis": points_per_axis,
        "seed": seed,
        "expected_slope": -float(sum(i * d for i, d in enumerate(f.dims))),
    }
    return DecayFit(
        radii=tuple(radii),
        log_volumes=tuple(log_volumes),
        slope=slope,
        r_squared=r2,
        details=details,
    )
