"""Presentations of shift modules, trajectory subspaces, and quotient
dimension accounting with a stabilizing window approximation.

A presentation fixes a twisted product (cocycle with field and group), an
ambient free-module rank r and finitely many generator vectors; the
presented module is the full trajectory of the generators' span.  All
window computations are exact; the only approximation anywhere is the
growing-window stopping rule for intersections with a submodule, and its
outcome carries an explicit stabilized/budget-exhausted flag.
"""

from __future__ import annotations

from dataclasses import dataclass

from .crossed_product import (
    act,
    cocycle_from_name,
    CocycleData,
    CrossedElement,
)
from .exact_linalg import Echelon, field_from_name, span, Subspace
from .groups import (
    ball,
    FiniteSubset,
    format_group_element,
    group_from_name,
    parse_group_element,
    set_product,
)


@dataclass(frozen=True)
class StabilizationConfig:
    """Stopping rule for the growing-window intersection approximation."""

    stability_window: int = 3
    max_steps: int = 30

    def __post_init__(self):
        if self.stability_window < 1:
            raise ValueError("stability_window must be >= 1")
        if self.max_steps < 0:
            raise ValueError("max_steps must be >= 0")


DEFAULT_STABILIZATION = StabilizationConfig()


class SubshiftPresentation:
    """Finitely many generators inside the rank-r free module over K*G."""

    __slots__ = ("cocycle", "rank", "generators")

    def __init__(self, cocycle: CocycleData, rank: int, generators):
        if rank < 1:
            raise ValueError("rank must be >= 1")
        gens = []
        group = cocycle.group
        for vec in generators:
            cleaned = {}
            for (g, j), c in vec.items():
                group.check(g)
                if not isinstance(j, int) or not (0 <= j < rank):
                    raise ValueError(f"coordinate {j!r} outside 0..{rank - 1}")
                if c:
                    cleaned[(g, j)] = c
            if not cleaned:
                raise ValueError("generators must be nonzero")
            gens.append(cleaned)
        self.cocycle = cocycle
        self.rank = rank
        self.generators = tuple(gens)

    @property
    def field(self):
        return self.cocycle.field

    @property
    def group(self):
        return self.cocycle.group

    def __eq__(self, other):
        return (
            isinstance(other, SubshiftPresentation)
            and self.cocycle == other.cocycle
            and self.rank == other.rank
            and self.generators == other.generators
        )

    def __repr__(self):
        return (
            f"SubshiftPresentation({self.field.name}[{self.group.name}]^"
            f"{self.rank}, {len(self.generators)} generators)"
        )

    def coefficient_span(self) -> Subspace:
        """Span of the generators themselves (the window at the identity)."""
        return span(self.field, self.generators)


def bernoulli(cocycle: CocycleData, rank: int) -> SubshiftPresentation:
    """The free module itself: one identity-supported generator per slot."""
    e = cocycle.group.identity
    one = cocycle.field.one
    return SubshiftPresentation(
        cocycle, rank, [{(e, j): one} for j in range(rank)]
    )


def cyclic_presentation(cocycle: CocycleData, x: CrossedElement) -> SubshiftPresentation:
    """Rank-1 presentation of the left principal submodule generated by x."""
    if x.is_zero():
        raise ValueError("x must be nonzero")
    if x.field != cocycle.field or x.group != cocycle.group:
        raise ValueError("element does not match the cocycle's ring")
    return SubshiftPresentation(
        cocycle, 1, [{(g, 0): c for g, c in x.terms.items()}]
    )


def _check_same_ambient(M: SubshiftPresentation, N: SubshiftPresentation):
    if M.cocycle != N.cocycle or M.rank != N.rank:
        raise ValueError("presentations must share the ambient free module")


def trajectory_echelon(p: SubshiftPresentation, F: FiniteSubset) -> Echelon:
    """Echelon of {act(g, v) : g in F, v generator}; descending scan order
    keeps fill-in low for shift-structured inputs (the result is order
    independent)."""
    if F.group != p.group:
        raise ValueError("window group does not match the presentation")
    ech = Echelon(p.field)
    c = p.cocycle
    gens = p.generators
    for g in reversed(F.sorted_elements()):
        for v in gens:
            ech.add(act(g, v, c))
    return ech


@dataclass(frozen=True)
class TrajectoryResult:
    window: FiniteSubset
    subspace: Subspace
    dim: int


def trajectory(p: SubshiftPresentation, F: FiniteSubset) -> TrajectoryResult:
    """Exact dimension and canonical basis of the F-window trajectory."""
    ech = trajectory_echelon(p, F)
    return TrajectoryResult(F, Subspace.from_echelon(ech), ech.dim)


def trajectory_dim(p: SubshiftPresentation, F: FiniteSubset) -> int:
    return trajectory_echelon(p, F).dim


@dataclass(frozen=True)
class SesDims:
    """Window dimensions of the exact sequence
    0 -> (T meet N) -> T -> image in the quotient -> 0."""

    dim_total: int
    dim_intersection: int
    dim_image: int
    stabilized: bool
    steps: int


@dataclass(frozen=True)
class QuotientDimResult:
    dim: int
    stabilized: bool
    steps: int


def _quotient_split(
    M: SubshiftPresentation,
    N: SubshiftPresentation,
    F: FiniteSubset,
    approx: StabilizationConfig,
    traj_ech: Echelon | None = None,
) -> SesDims:
    """Split the F-window trajectory of M along the submodule presented
    by N, approximating N by trajectories over growing windows
    E_m = ball(m) * F until the intersection dimension is unchanged for
    approx.stability_window consecutive steps.

    The intersection dimension comes from a tagged (Zassenhaus) echelon
    and the image dimension from reduction modulo the submodule window;
    the two routes must satisfy dim_total = intersection + image exactly,
    which is asserted.
    """
    _check_same_ambient(M, N)
    c = M.cocycle
    fld = M.field
    ech_T = traj_ech if traj_ech is not None else trajectory_echelon(M, F)
    dim_total = ech_T.dim

    if not N.generators:
        return SesDims(dim_total, 0, dim_total, True, 0)

    zass = Echelon(fld)
    for piv in sorted(ech_T.rows, reverse=True):
        row = ech_T.rows[piv]
        tagged = {}
        for l, v in row.items():
            tagged[(0, l)] = v
            tagged[(1, l)] = v
        zass.add(tagged)
    ech_N = Echelon(fld)

    cap = 0

    def add_batch(batch):
        nonlocal cap
        for g in reversed(sorted(batch)):
            for w in N.generators:
                vec = act(g, w, c)
                piv = zass.add({(0, l): v for l, v in vec.items()})
                if piv is not None and piv[0] == 1:
                    cap += 1
                ech_N.add(vec)

    S1 = ball(M.group, 1)
    window = F
    add_batch(window.elements)
    prev_cap = cap
    streak = 0
    steps = 0
    stabilized = False
    for m in range(1, approx.max_steps + 1):
        grown = set_product(S1, window)
        add_batch(grown.elements - window.elements)
        window = grown
        steps = m
        # streak counts consecutive growth steps with no new intersection
        if cap == prev_cap:
            streak += 1
        else:
            streak = 0
        prev_cap = cap
        if streak >= approx.stability_window:
            stabilized = True
            break

    ech_img = Echelon(fld)
    gens = M.generators
    for g in reversed(F.sorted_elements()):
        for v in gens:
            ech_img.add(ech_N.reduce(act(g, v, c)))
    dim_image = ech_img.dim
    if dim_total != cap + dim_image:
        raise RuntimeError(
            "internal inconsistency: "
            f"{dim_total} != {cap} + {dim_image}"
        )
    return SesDims(dim_total, cap, dim_image, stabilized, steps)


def ses_dims(
    M: SubshiftPresentation,
    N: SubshiftPresentation,
    F: FiniteSubset,
    approx: StabilizationConfig | None = None,
) -> SesDims:
    """Exact window dimensions (total, intersection, image); the identity
    dim_total = dim_intersection + dim_image holds in every output.  When
    the budget runs out before stabilization the intersection is a lower
    bound, the image an upper bound, and stabilized is False."""
    return _quotient_split(M, N, F, approx or DEFAULT_STABILIZATION)


def trajectory_dim_quotient(
    M: SubshiftPresentation,
    N: SubshiftPresentation,
    F: FiniteSubset,
    approx: StabilizationConfig | None = None,
) -> QuotientDimResult:
    """Dimension of the F-window trajectory taken in the quotient by the
    submodule presented by N (an upper bound until stabilization)."""
    s = _quotient_split(M, N, F, approx or DEFAULT_STABILIZATION)
    return QuotientDimResult(s.dim_image, s.stabilized, s.steps)


class PresentationError(ValueError):
    """Parse failure with 1-based line/column coordinates."""

    def __init__(self, line: int, col: int, message: str):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col
        self.message = message


def serialize_presentation(p: SubshiftPresentation) -> str:
    """Canonical text form; parse_presentation_text inverts it exactly.

    Header lines group=, field=, cocycle=, rank=, then one generator per
    line as ;-joined triples (g)|coeff|coord with 1-based coordinates.
    """
    lines = [
        f"group={p.group.name}",
        f"field={p.field.name}",
        f"cocycle={p.cocycle.label}",
        f"rank={p.rank}",
    ]
    fmt = p.field.fmt
    for gen in p.generators:
        parts = [
            f"{format_group_element(g)}|{fmt(c)}|{j + 1}"
            for (g, j), c in sorted(gen.items())
        ]
        lines.append(";".join(parts))
    return "\n".join(lines) + "\n"


def parse_presentation_text(text: str) -> SubshiftPresentation:
    headers: dict = {}
    generator_lines: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "|" in line:
            generator_lines.append((lineno, line))
            continue
        if "=" not in line:
            raise PresentationError(lineno, 1, f"expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip().lower()
        if key not in ("group", "field", "rank", "cocycle"):
            raise PresentationError(lineno, 1, f"unknown header key {key!r}")
        if key in headers:
            raise PresentationError(lineno, 1, f"duplicate header {key!r}")
        headers[key] = (lineno, value.strip())

    for required in ("group", "field", "rank"):
        if required not in headers:
            raise PresentationError(0, 0, f"missing header {required!r}")

    def header_error(key, msg):
        lineno, _ = headers[key]
        return PresentationError(lineno, 1, msg)

    try:
        group = group_from_name(headers["group"][1])
    except ValueError as exc:
        raise header_error("group", str(exc)) from None
    try:
        fld = field_from_name(headers["field"][1])
    except ValueError as exc:
        raise header_error("field", str(exc)) from None
    try:
        rank = int(headers["rank"][1])
    except ValueError:
        raise header_error("rank", f"bad rank {headers['rank'][1]!r}") from None
    if rank < 1:
        raise header_error("rank", "rank must be >= 1")
    cocycle_name = headers.get("cocycle", (0, "trivial"))[1]
    try:
        cocycle = cocycle_from_name(cocycle_name, fld, group)
    except ValueError as exc:
        lineno = headers.get("cocycle", (1, ""))[0]
        raise PresentationError(lineno, 1, str(exc)) from None

    generators = []
    for lineno, line in generator_lines:
        vec: dict = {}
        col = 1
        for chunk in line.split(";"):
            piece = chunk.strip()
            pos = line.find(piece) + 1
            parts = piece.split("|")
            if len(parts) != 3:
                raise PresentationError(
                    lineno, pos, f"expected (g)|coeff|coord, got {piece!r}"
                )
            g_str, coeff_str, coord_str = (q.strip() for q in parts)
            try:
                g = parse_group_element(group, g_str)
            except ValueError as exc:
                raise PresentationError(lineno, pos, str(exc)) from None
            try:
                coeff = fld.parse(coeff_str)
            except ValueError as exc:
                raise PresentationError(lineno, pos, str(exc)) from None
            if not coeff:
                raise PresentationError(lineno, pos, "zero coefficient term")
            try:
                coord = int(coord_str)
            except ValueError:
                raise PresentationError(
                    lineno, pos, f"bad coordinate {coord_str!r}"
                ) from None
            if not (1 <= coord <= rank):
                raise PresentationError(
                    lineno, pos, f"coordinate {coord} outside 1..{rank}"
                )
            key = (g, coord - 1)
            # duplicate keys: coefficients are summed, exact zeros dropped
            nv = fld.add(vec.get(key, fld.zero), coeff)
            if nv:
                vec[key] = nv
            else:
                vec.pop(key, None)
            col = pos
        if not vec:
            raise PresentationError(
                lineno, col, "generator vanishes after combining terms"
            )
        generators.append(vec)
    return SubshiftPresentation(cocycle, rank, generators)
