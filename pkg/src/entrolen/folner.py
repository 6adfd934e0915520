"""C-interior/exterior/boundary calculus and Folner schemes.

All set computations are exact; ratios are returned as Fractions so the
diagnostics can be asserted literally.  A scheme only provides finite-scale
evidence: nesting and ball coverage are checked up to a budget, and no
routine here ever claims a limit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .groups import (
    ball,
    FiniteSubset,
    FreeAbelian,
    Heisenberg,
    set_product,
    ZCrossZ2,
)


def exterior(A: FiniteSubset, C: FiniteSubset) -> FiniteSubset:
    """Out_C(A) = {x : xC meets A}, i.e. A C^{-1}."""
    _check_pair(A, C)
    return set_product(A, C.inverse())


def interior(A: FiniteSubset, C: FiniteSubset) -> FiniteSubset:
    """In_C(A) = {x : xC contained in A}."""
    _check_pair(A, C)
    group = A.group
    mul = group.mul
    elems = A.elements
    c0 = next(iter(C.elements))
    inv_c0 = group.inv(c0)
    candidates = (mul(a, inv_c0) for a in elems)
    cs = C.sorted_elements()
    kept = frozenset(
        x for x in candidates if all(mul(x, c) in elems for c in cs)
    )
    return FiniteSubset._raw(group, kept)


def boundary(A: FiniteSubset, C: FiniteSubset) -> FiniteSubset:
    """Boundary = exterior minus interior."""
    return exterior(A, C).difference(interior(A, C))


def _check_pair(A: FiniteSubset, C: FiniteSubset):
    A._require_same_group(C)
    if len(C) == 0:
        raise ValueError("C must be nonempty")


@dataclass(frozen=True)
class Boxes:
    """Centered boxes [-n, n]^d in Z^d; boundary counts have closed forms."""

    group: FreeAbelian

    def __post_init__(self):
        if not isinstance(self.group, FreeAbelian):
            raise ValueError("Boxes scheme requires a free abelian group")

    @property
    def name(self) -> str:
        return "boxes"

    def set_at(self, n: int) -> FiniteSubset:
        if n < 0:
            raise ValueError("index must be >= 0")
        rng = range(-n, n + 1)
        return FiniteSubset._raw(
            self.group,
            frozenset(itertools.product(rng, repeat=self.group.dim)),
        )


@dataclass(frozen=True)
class BoxTimesZ2:
    """[-n, n] x {0, 1} in Z x Z/2."""

    group: ZCrossZ2

    def __post_init__(self):
        if not isinstance(self.group, ZCrossZ2):
            raise ValueError("BoxTimesZ2 scheme requires the group ZxZ2")

    @property
    def name(self) -> str:
        return "boxz2"

    def set_at(self, n: int) -> FiniteSubset:
        if n < 0:
            raise ValueError("index must be >= 0")
        return FiniteSubset._raw(
            self.group,
            frozenset((k, t) for k in range(-n, n + 1) for t in (0, 1)),
        )


@dataclass(frozen=True)
class WordBalls:
    """F_n = B_n(S) for the group's fixed generating set."""

    group: object

    @property
    def name(self) -> str:
        return "balls"

    def set_at(self, n: int) -> FiniteSubset:
        return ball(self.group, n)


def default_scheme(group):
    if isinstance(group, FreeAbelian):
        return Boxes(group)
    if isinstance(group, ZCrossZ2):
        return BoxTimesZ2(group)
    if isinstance(group, Heisenberg):
        return WordBalls(group)
    raise ValueError(f"no default scheme for {group!r}")


def scheme_from_name(name: str, group):
    key = name.strip().lower()
    if key == "boxes":
        return Boxes(group)
    if key in ("boxz2", "boxtimesz2"):
        return BoxTimesZ2(group)
    if key in ("balls", "wordballs"):
        return WordBalls(group)
    raise ValueError(f"unknown scheme {name!r} (expected boxes, boxz2 or balls)")


def folner_set(scheme, n: int) -> FiniteSubset:
    return scheme.set_at(n)


def boundary_ratio(scheme, C: FiniteSubset, n: int) -> Fraction:
    """|boundary_C(F_n)| / |F_n| as an exact reduced fraction."""
    F_n = scheme.set_at(n)
    return Fraction(len(boundary(F_n, C)), len(F_n))


@dataclass(frozen=True)
class ExhaustionReport:
    ok: bool
    n_max: int
    first_violation: str | None = None

    def __str__(self):
        if self.ok:
            return f"pass (checked up to n={self.n_max})"
        return f"fail: {self.first_violation}"


def verify_exhaustion(scheme, n_max: int) -> ExhaustionReport:
    """Check e in F_0, nesting up to n_max, and ball coverage.

    Coverage is a bounded surrogate for exhaustion: every ball of radius
    r <= n_max must be contained in some F_m with m <= n_max.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    group = scheme.group
    sets = [scheme.set_at(n) for n in range(n_max + 1)]
    if group.identity not in sets[0]:
        return ExhaustionReport(False, n_max, "identity not in F_0")
    for n in range(n_max):
        if not sets[n].is_subset(sets[n + 1]):
            return ExhaustionReport(False, n_max, f"F_{n} not contained in F_{n + 1}")
    top = sets[n_max]
    for r in range(n_max + 1):
        if not ball(group, r).is_subset(top):
            return ExhaustionReport(
                False, n_max, f"ball({r}) not covered by any F_m with m <= {n_max}"
            )
    return ExhaustionReport(True, n_max)
