"""Quasi-tiling combinatorics: eps-disjoint families, alpha-covers,
greedy tiling construction with an independent checker, nets, and the
tile-ratio upper bound.

The greedy constructor is a heuristic; its output is always
re-validated by check_quasi_tiling, so a heuristic failure is visible
and never silent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .groups import FiniteSubset, set_product, translate


@dataclass(frozen=True)
class QuasiTiling:
    """Tiles A_1..A_k with center sets C_1..C_k inside some target set."""

    tiles: tuple
    centers: tuple
    epsilon: Fraction

    def __post_init__(self):
        if len(self.tiles) != len(self.centers):
            raise ValueError("need one center set per tile")
        if not (0 < self.epsilon < 1):
            raise ValueError("epsilon must lie in (0, 1)")


@dataclass(frozen=True)
class DisjointnessCheck:
    ok: bool
    witnesses: tuple | None = None  # FiniteSubsets A'_i when ok


def _quota(size: int, eps: Fraction) -> int:
    """Smallest m with m/size strictly above 1 - eps."""
    return floor((1 - eps) * size) + 1


def _match_quotas(families: list, quotas: list) -> list | None:
    """Reserve quotas[i] exclusive elements for set i, or None if impossible.

    Bipartite matching (Kuhn augmenting paths) with one slot per required
    element; exact, so the eps-disjointness decision is never a false
    negative.
    """
    slot_owner_set = []
    for i, q in enumerate(quotas):
        slot_owner_set.extend([i] * q)
    owner: dict = {}

    def try_slot(s, seen):
        i = slot_owner_set[s]
        for x in families[i]:
            if x in seen:
                continue
            seen.add(x)
            t = owner.get(x)
            if t is None or try_slot(t, seen):
                owner[x] = s
                return True
        return False

    for s in range(len(slot_owner_set)):
        if not try_slot(s, set()):
            return None
    claimed = [set() for _ in families]
    for x, s in owner.items():
        claimed[slot_owner_set[s]].add(x)
    return claimed


def check_epsilon_disjoint(family, eps) -> DisjointnessCheck:
    """Decide whether subsets A'_i <= A_i exist that are pairwise disjoint
    with |A'_i|/|A_i| strictly above 1 - eps; returns witnesses when so.

    A greedy left-to-right removal is tried first (it also produces the
    largest witnesses); on greedy failure the exact matching decision
    settles the question.
    """
    eps = Fraction(eps)
    if not (0 < eps < 1):
        raise ValueError("eps must lie in (0, 1)")
    family = list(family)
    if not family:
        return DisjointnessCheck(True, ())
    group = family[0].group
    for A in family:
        if len(A) == 0:
            raise ValueError("sets must be nonempty")
        A._require_same_group(family[0])
    quotas = [_quota(len(A), eps) for A in family]

    used: set = set()
    greedy = []
    greedy_ok = True
    for A, q in zip(family, quotas):
        W = A.elements - used
        if len(W) < q:
            greedy_ok = False
            break
        greedy.append(W)
        used |= W
    if greedy_ok:
        witnesses = tuple(FiniteSubset._raw(group, frozenset(W)) for W in greedy)
        return DisjointnessCheck(True, witnesses)

    matched = _match_quotas([A.sorted_elements() for A in family], quotas)
    if matched is None:
        return DisjointnessCheck(False, None)
    witnesses = tuple(FiniteSubset._raw(group, frozenset(W)) for W in matched)
    return DisjointnessCheck(True, witnesses)


def check_alpha_cover(A: FiniteSubset, family, alpha) -> bool:
    """|A meet (union of the family)| / |A| >= alpha, evaluated exactly."""
    alpha = Fraction(alpha)
    if not (0 < alpha <= 1):
        raise ValueError("alpha must lie in (0, 1]")
    if len(A) == 0:
        raise ValueError("A must be nonempty")
    covered: set = set()
    for B in family:
        A._require_same_group(B)
        covered |= B.elements
    return Fraction(len(A.elements & covered), len(A)) >= alpha


@dataclass(frozen=True)
class TilingCondition:
    name: str
    passed: bool
    ratio: Fraction


@dataclass(frozen=True)
class TilingReport:
    conditions: tuple
    passed: bool

    def __str__(self):
        return "; ".join(
            f"{c.name}={'pass' if c.passed else 'fail'}({c.ratio})"
            for c in self.conditions
        )


def check_quasi_tiling(A: FiniteSubset, t: QuasiTiling) -> TilingReport:
    """Verify the three tiling conditions against the target set A.

    (1) every placed tile stays inside A and each tile's translates form
        an eps-disjoint family; the reported ratio is the worst witness
        fraction |A'_c| / |A_i| seen,
    (2) placed regions of different tiles are exactly disjoint; the ratio
        is the overlapping fraction of A (must be 0),
    (3) the placed regions form a (1 - eps)-cover of A; the ratio is the
        exact cover fraction.
    """
    eps = t.epsilon
    regions = []
    cond1_ok = True
    worst = Fraction(1)
    for tile, centers in zip(t.tiles, t.centers):
        A._require_same_group(tile)
        A._require_same_group(centers)
        placed = set_product(centers, tile)
        regions.append(placed)
        if len(centers) == 0:
            continue
        if not placed.is_subset(A):
            cond1_ok = False
            continue
        translates = [translate(ctr, tile) for ctr in centers]
        res = check_epsilon_disjoint(translates, eps)
        if not res.ok:
            cond1_ok = False
            continue
        for W, T in zip(res.witnesses, translates):
            worst = min(worst, Fraction(len(W), len(T)))

    overlap: set = set()
    union: set = set()
    for R in regions:
        overlap |= union & R.elements
        union |= R.elements
    cond2_ratio = Fraction(len(overlap), len(A))
    cond2_ok = not overlap

    cover_ratio = Fraction(len(union & A.elements), len(A))
    cond3_ok = cover_ratio >= 1 - eps

    conditions = (
        TilingCondition("tiles_inside_and_eps_disjoint", cond1_ok, worst),
        TilingCondition("classes_pairwise_disjoint", cond2_ok, cond2_ratio),
        TilingCondition("cover", cond3_ok, cover_ratio),
    )
    return TilingReport(conditions, cond1_ok and cond2_ok and cond3_ok)


class TilingFailed(Exception):
    """Greedy placement could not reach the required cover."""

    def __init__(self, message, cover=None):
        super().__init__(message)
        self.cover = cover


def greedy_quasi_tile(A: FiniteSubset, tiles, eps) -> QuasiTiling:
    """Greedy tiling: largest tiles first, centers scanned in canonical
    order; a center is accepted when its translate lies in A, misses every
    other tile's placed region, and overlaps its own class by strictly
    less than an eps fraction of the tile.

    Raises TilingFailed when the placed regions do not reach a
    (1 - eps)-cover of A; on success the output provably passes
    check_quasi_tiling.
    """
    eps = Fraction(eps)
    if not (0 < eps <= Fraction(1, 4)):
        raise ValueError("eps must lie in (0, 1/4]")
    tiles = list(tiles)
    if not tiles:
        raise ValueError("need at least one tile")
    for T in tiles:
        A._require_same_group(T)
        if len(T) == 0:
            raise ValueError("tiles must be nonempty")
    if len(A) == 0:
        raise ValueError("target must be nonempty")

    order = sorted(range(len(tiles)), key=lambda i: -len(tiles[i]))
    placed_by_class: list[set] = [set() for _ in tiles]
    centers: list[list] = [[] for _ in tiles]
    target = A.elements
    for i in order:
        tile = tiles[i]
        own = placed_by_class[i]
        others: set = set()
        for j, s in enumerate(placed_by_class):
            if j != i:
                others |= s
        limit = eps * len(tile)
        for ctr in A:
            cells = translate(ctr, tile).elements
            if not cells <= target:
                continue
            if cells & others:
                continue
            if len(cells & own) >= limit:
                continue
            centers[i].append(ctr)
            own |= cells

    covered: set = set()
    for s in placed_by_class:
        covered |= s
    cover = Fraction(len(covered), len(A))
    if cover < 1 - eps:
        raise TilingFailed(
            f"greedy cover {cover} below required {1 - eps}", cover=cover
        )
    tiling = QuasiTiling(
        tuple(tiles),
        tuple(
            FiniteSubset._raw(A.group, frozenset(cs)) for cs in centers
        ),
        eps,
    )
    report = check_quasi_tiling(A, tiling)
    if not report.passed:
        raise TilingFailed(f"greedy output rejected by checker: {report}")
    return tiling


@dataclass(frozen=True)
class Net:
    """Center set whose E-translates are disjoint; the F-translates are
    expected to cover the window (guaranteed when F contains E E^{-1})."""

    points: FiniteSubset
    base: FiniteSubset  # E
    cover: FiniteSubset  # F
    window: FiniteSubset
    covered: bool
    uncovered: FiniteSubset


def build_net(E: FiniteSubset, F: FiniteSubset, window: FiniteSubset) -> Net:
    """Greedy maximal subset of the window with pairwise disjoint
    E-translates (canonical scan order), plus a coverage check for F."""
    window._require_same_group(E)
    window._require_same_group(F)
    if len(E) == 0:
        raise ValueError("E must be nonempty")
    if window.group.identity not in window:
        raise ValueError("window must contain the identity")
    occupied: set = set()
    points = []
    for g in window:
        cells = translate(g, E).elements
        if cells & occupied:
            continue
        points.append(g)
        occupied |= cells
    pts = FiniteSubset._raw(window.group, frozenset(points))
    covered_cells: set = set()
    for g in points:
        covered_cells |= translate(g, F).elements
    uncovered = FiniteSubset._raw(
        window.group, frozenset(window.elements - covered_cells)
    )
    return Net(pts, E, F, window, len(uncovered) == 0, uncovered)


def net_density(net: Net, scheme, n: int) -> Fraction:
    """|F_n meet net points| / |F_n|; requires the window to contain F_n."""
    F_n = scheme.set_at(n)
    if not F_n.is_subset(net.window):
        raise ValueError(f"window too small for F_{n}")
    return Fraction(len(F_n.elements & net.points.elements), len(F_n))


def ow_upper_bound(M, eps, tile_ratios) -> Fraction:
    """M*eps + max(tile ratios)/(1 - eps), in exact rational arithmetic."""
    eps = Fraction(eps)
    if not (0 < eps < Fraction(1, 4)):
        raise ValueError("eps must lie in (0, 1/4)")
    ratios = [Fraction(r) for r in tile_ratios]
    if not ratios:
        raise ValueError("need at least one tile ratio")
    return Fraction(M) * eps + max(ratios) / (1 - eps)
