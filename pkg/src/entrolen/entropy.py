"""Trajectory-entropy estimation along Folner schemes, certified upper
bounds via quasi-tilings, additivity checks, and zero-divisor scanning.

Estimates report the full trajectory of exact window ratios and take the
last ratio as the headline number; no extrapolation is performed and no
limit is ever claimed.  A certified upper bound is conditional on the
tilings actually verified, and the verified range is recorded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .crossed_product import CrossedElement, find_annihilator
from .exact_linalg import intersect, Subspace
from .folner import folner_set
from .shift_modules import (
    _quotient_split,
    bernoulli,
    cyclic_presentation,
    DEFAULT_STABILIZATION,
    StabilizationConfig,
    SubshiftPresentation,
    trajectory_echelon,
)
from .tiling import check_quasi_tiling, greedy_quasi_tile, ow_upper_bound, TilingFailed


@dataclass(frozen=True)
class RatioRow:
    n: int
    folner_size: int
    dim: int
    ratio: Fraction


@dataclass(frozen=True)
class EntropyEstimate:
    rows: tuple
    estimate: Fraction
    certified_upper: Fraction | None = None
    all_stabilized: bool = True

    def ratio_at(self, n: int) -> Fraction:
        for row in self.rows:
            if row.n == n:
                return row.ratio
        raise KeyError(f"no window n={n}")


def _check_scheme(p: SubshiftPresentation, scheme):
    if scheme.group != p.group:
        raise ValueError("scheme group does not match the presentation")


def estimate(p: SubshiftPresentation, scheme, n_max: int) -> EntropyEstimate:
    """Exact ratios dim T_{F_n} / |F_n| for n = 1..n_max."""
    _check_scheme(p, scheme)
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    rows = []
    for n in range(1, n_max + 1):
        F = folner_set(scheme, n)
        dim = trajectory_echelon(p, F).dim
        rows.append(RatioRow(n, len(F), dim, Fraction(dim, len(F))))
    return EntropyEstimate(tuple(rows), rows[-1].ratio)


def estimate_quotient(
    M: SubshiftPresentation,
    N: SubshiftPresentation,
    scheme,
    n_max: int,
    approx: StabilizationConfig | None = None,
) -> EntropyEstimate:
    """Window ratios of the quotient by the submodule presented by N.

    Until stabilization each quotient dimension is an upper bound; the
    all_stabilized flag records whether any window ran out of budget.
    """
    _check_scheme(M, scheme)
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    approx = approx or DEFAULT_STABILIZATION
    rows = []
    ok = True
    for n in range(1, n_max + 1):
        F = folner_set(scheme, n)
        s = _quotient_split(M, N, F, approx)
        ok = ok and s.stabilized
        rows.append(RatioRow(n, len(F), s.dim_image, Fraction(s.dim_image, len(F))))
    return EntropyEstimate(tuple(rows), rows[-1].ratio, all_stabilized=ok)


@dataclass(frozen=True)
class CertifiedBound:
    bound: Fraction
    eps: Fraction
    tile_indices: tuple
    tile_ratios: tuple
    checked_from: int
    checked_to: int


def certified_upper_bound(
    p: SubshiftPresentation,
    scheme,
    eps,
    tile_indices,
    n_check: int,
) -> CertifiedBound:
    """Tile-ratio upper bound, conditional on verified tilings.

    The windows F_n for n from max(tile_indices) to n_check must each be
    greedily tileable by the chosen Folner sets at the given eps, with the
    independent checker accepting every construction; TilingFailed
    propagates otherwise.  The bound is

        coeff_dim * eps + max_i (dim T_{F_{n_i}} / |F_{n_i}|) / (1 - eps)

    and the verified window range is recorded in the result.
    """
    _check_scheme(p, scheme)
    eps = Fraction(eps)
    indices = tuple(sorted(set(int(i) for i in tile_indices)))
    if not indices:
        raise ValueError("need at least one tile index")
    if n_check < max(indices):
        raise ValueError("n_check must reach the largest tile index")
    tiles = [folner_set(scheme, i) for i in indices]
    checked_from = max(indices)
    for n in range(checked_from, n_check + 1):
        A = folner_set(scheme, n)
        tiling = greedy_quasi_tile(A, tiles, eps)
        report = check_quasi_tiling(A, tiling)
        if not report.passed:
            raise TilingFailed(f"checker rejected tiling of window {n}: {report}")
    coeff_dim = p.coefficient_span().dim
    ratios = []
    for tile in tiles:
        dim = trajectory_echelon(p, tile).dim
        ratios.append(Fraction(dim, len(tile)))
    bound = ow_upper_bound(coeff_dim, eps, ratios)
    return CertifiedBound(bound, eps, indices, tuple(ratios), checked_from, n_check)


@dataclass(frozen=True)
class AdditionWindow:
    n: int
    folner_size: int
    dim_total: int
    dim_sub: int
    dim_intersection: int
    dim_image: int
    ses_exact: bool
    lower_bound_ok: bool
    stabilized: bool


@dataclass(frozen=True)
class AdditionReport:
    windows: tuple
    e_total: Fraction
    e_sub: Fraction
    e_quotient: Fraction
    discrepancy: Fraction
    tolerance: Fraction
    within_tolerance: bool
    ses_exact_all: bool
    lower_bound_ok_all: bool
    all_stabilized: bool
    passed: bool


def addition_check(
    M: SubshiftPresentation,
    N: SubshiftPresentation,
    scheme,
    n_max: int,
    tol,
    approx: StabilizationConfig | None = None,
) -> AdditionReport:
    """Compare e(M) against e(N) + e(M/N) at n_max and verify, window by
    window, the exact splitting dim_total = dim_intersection + dim_image
    plus the lower-bound inequality

        dim_total >= dim(T_F(N) meet T_F(M)) + dim_image,

    which holds because the left intersection sits inside T_F(M) meet N.
    When the span of N's generators lies in the span of M's generators the
    classical form dim_total >= dim_sub + dim_image is asserted as well.
    """
    _check_scheme(M, scheme)
    tol = Fraction(tol)
    approx = approx or DEFAULT_STABILIZATION
    coeff_M = M.coefficient_span()
    gens_inside = all(coeff_M.contains(w) for w in N.generators)
    windows = []
    for n in range(1, n_max + 1):
        F = folner_set(scheme, n)
        ech_T = trajectory_echelon(M, F)
        s = _quotient_split(M, N, F, approx, traj_ech=ech_T)
        ech_sub = trajectory_echelon(N, F) if N.generators else None
        dim_sub = ech_sub.dim if ech_sub is not None else 0
        ses_exact = s.dim_total == s.dim_intersection + s.dim_image
        if ech_sub is not None:
            U = Subspace.from_echelon(ech_T)
            V = Subspace.from_echelon(ech_sub)
            cap_tn = intersect(U, V).dim
        else:
            cap_tn = 0
        lower_bound_ok = s.dim_total >= cap_tn + s.dim_image
        if gens_inside:
            lower_bound_ok = lower_bound_ok and s.dim_total >= dim_sub + s.dim_image
        windows.append(
            AdditionWindow(
                n,
                len(F),
                s.dim_total,
                dim_sub,
                s.dim_intersection,
                s.dim_image,
                ses_exact,
                lower_bound_ok,
                s.stabilized,
            )
        )
    last = windows[-1]
    e_total = Fraction(last.dim_total, last.folner_size)
    e_sub = Fraction(last.dim_sub, last.folner_size)
    e_quotient = Fraction(last.dim_image, last.folner_size)
    discrepancy = e_total - e_sub - e_quotient
    within = abs(discrepancy) <= tol
    ses_all = all(w.ses_exact for w in windows)
    lower_all = all(w.lower_bound_ok for w in windows)
    stab_all = all(w.stabilized for w in windows)
    return AdditionReport(
        tuple(windows),
        e_total,
        e_sub,
        e_quotient,
        discrepancy,
        tol,
        within,
        ses_all,
        lower_all,
        stab_all,
        within and ses_all,
    )


def integrality_report(e: EntropyEstimate) -> Fraction:
    """Distance from the estimate to the nearest nonnegative integer."""
    est = e.estimate
    if est < 0:
        raise ValueError("estimates are nonnegative")
    lo = est.numerator // est.denominator
    return min(est - lo, lo + 1 - est)


@dataclass(frozen=True)
class ZeroDivisorReport:
    verdict: str  # "zero-divisor" or "no evidence up to budget"
    witness: CrossedElement | None
    submodule: EntropyEstimate
    quotient: EntropyEstimate
    integrality: Fraction
    window_radius: int

    @property
    def is_zero_divisor(self) -> bool:
        return self.witness is not None


def zero_divisor_scan(
    x: CrossedElement,
    cocycle,
    scheme,
    n_max: int,
    window_radius: int,
    approx: StabilizationConfig | None = None,
) -> ZeroDivisorReport:
    """Scan a nonzero ring element for zero-divisor behaviour.

    The verdict is "zero-divisor" exactly when an annihilator witness is
    found on the window (and verified by multiplication); the entropy
    trajectories of the principal submodule and its quotient are reported
    as corroborating evidence, never as proof.
    """
    if x.is_zero():
        raise ValueError("x must be nonzero")
    sub = cyclic_presentation(cocycle, x)
    ambient = bernoulli(cocycle, 1)
    est_sub = estimate(sub, scheme, n_max)
    est_quot = estimate_quotient(ambient, sub, scheme, n_max, approx)
    witness = find_annihilator(x, cocycle, window_radius)
    verdict = "zero-divisor" if witness is not None else "no evidence up to budget"
    return ZeroDivisorReport(
        verdict,
        witness,
        est_sub,
        est_quot,
        integrality_report(est_sub),
        window_radius,
    )
