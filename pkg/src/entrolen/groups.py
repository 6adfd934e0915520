"""Concrete finitely generated amenable groups with exact element arithmetic.

Elements are plain tuples of ints (the order-two component of Z x Z/2 is a
0/1 bit), so equality is structural, hashing is cheap, and the built-in
lexicographic tuple order doubles as the canonical total order used for
deterministic scans and column ordering downstream.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass


@dataclass(frozen=True)
class FreeAbelian:
    """Z^d under componentwise addition."""

    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be >= 1")

    @property
    def name(self) -> str:
        return "Z" if self.dim == 1 else f"Z^{self.dim}"

    @property
    def identity(self):
        return (0,) * self.dim

    def check(self, g):
        if (
            not isinstance(g, tuple)
            or len(g) != self.dim
            or not all(isinstance(x, int) for x in g)
        ):
            raise ValueError(f"not an element of {self.name}: {g!r}")

    def mul(self, g, h):
        if len(g) != self.dim or len(h) != self.dim:
            raise ValueError("operands from a different group")
        return tuple(a + b for a, b in zip(g, h))

    def inv(self, g):
        return tuple(-a for a in g)

    def generators(self):
        """Symmetric generating set {e, +-e_i}, canonically sorted."""
        gens = {self.identity}
        for i in range(self.dim):
            e_i = tuple(1 if j == i else 0 for j in range(self.dim))
            gens.add(e_i)
            gens.add(self.inv(e_i))
        return tuple(sorted(gens))


@dataclass(frozen=True)
class ZCrossZ2:
    """Z x Z/2, elements (n, t) with t in {0, 1}."""

    @property
    def name(self) -> str:
        return "ZxZ2"

    @property
    def identity(self):
        return (0, 0)

    def check(self, g):
        if (
            not isinstance(g, tuple)
            or len(g) != 2
            or not all(isinstance(x, int) for x in g)
            or g[1] not in (0, 1)
        ):
            raise ValueError(f"not an element of ZxZ2: {g!r}")

    def mul(self, g, h):
        if len(g) != 2 or len(h) != 2:
            raise ValueError("operands from a different group")
        return (g[0] + h[0], (g[1] + h[1]) & 1)

    def inv(self, g):
        return (-g[0], g[1])

    def generators(self):
        return ((-1, 0), (0, 0), (0, 1), (1, 0))


@dataclass(frozen=True)
class Heisenberg:
    """Discrete Heisenberg group on triples (a, b, c).

    Product (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b'), the upper
    triangular integer matrix encoding; canonical forms are unique.
    """

    @property
    def name(self) -> str:
        return "Heisenberg"

    @property
    def identity(self):
        return (0, 0, 0)

    def check(self, g):
        if (
            not isinstance(g, tuple)
            or len(g) != 3
            or not all(isinstance(x, int) for x in g)
        ):
            raise ValueError(f"not an element of Heisenberg: {g!r}")

    def mul(self, g, h):
        if len(g) != 3 or len(h) != 3:
            raise ValueError("operands from a different group")
        return (g[0] + h[0], g[1] + h[1], g[2] + h[2] + g[0] * h[1])

    def inv(self, g):
        a, b, c = g
        return (-a, -b, a * b - c)

    def generators(self):
        """{e, x^{+-1}, y^{+-1}} with x=(1,0,0) and y=(0,1,0)."""
        return tuple(
            sorted(
                [
                    (0, 0, 0),
                    (1, 0, 0),
                    (-1, 0, 0),
                    (0, 1, 0),
                    (0, -1, 0),
                ]
            )
        )


_ZD_RE = re.compile(r"^z\^?(\d+)$")


def group_from_name(name: str):
    """Resolve a CLI/file group identifier ("Z", "Z^2", "ZxZ2", "Heisenberg")."""
    key = name.strip().lower()
    if key == "z":
        return FreeAbelian(1)
    m = _ZD_RE.match(key)
    if m:
        d = int(m.group(1))
        if d < 1:
            raise ValueError(f"bad group dimension in {name!r}")
        return FreeAbelian(d)
    if key in ("zxz2", "zxz/2", "z_x_z2"):
        return ZCrossZ2()
    if key in ("heisenberg", "heis", "h3"):
        return Heisenberg()
    raise ValueError(f"unknown group {name!r} (expected Z, Z^d, ZxZ2 or Heisenberg)")


def format_group_element(g) -> str:
    """Serialize as parenthesized comma-separated integers, e.g. "(1,2)"."""
    return "(" + ",".join(str(x) for x in g) + ")"


def parse_group_element(group, text: str):
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"group element must look like (a,b,...): {text!r}")
    body = s[1:-1].strip()
    if not body:
        raise ValueError(f"empty group element: {text!r}")
    try:
        g = tuple(int(part.strip()) for part in body.split(","))
    except ValueError:
        raise ValueError(f"non-integer coordinate in group element {text!r}") from None
    group.check(g)
    return g


class FiniteSubset:
    """Immutable finite set of elements of a single group.

    Iteration is in the canonical (lexicographic) element order, so every
    scan over a FiniteSubset is deterministic.
    """

    __slots__ = ("group", "elements", "_sorted")

    def __init__(self, group, elements=()):
        elems = frozenset(elements)
        for g in elems:
            group.check(g)
        self.group = group
        self.elements = elems
        self._sorted = None

    @classmethod
    def _raw(cls, group, frozen):
        """Internal constructor for already-validated elements."""
        obj = object.__new__(cls)
        obj.group = group
        obj.elements = frozen
        obj._sorted = None
        return obj

    def sorted_elements(self):
        if self._sorted is None:
            self._sorted = tuple(sorted(self.elements))
        return self._sorted

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.sorted_elements())

    def __contains__(self, g):
        return g in self.elements

    def __eq__(self, other):
        return (
            isinstance(other, FiniteSubset)
            and self.group == other.group
            and self.elements == other.elements
        )

    def __hash__(self):
        return hash((self.group, self.elements))

    def __repr__(self):
        shown = ",".join(format_group_element(g) for g in self.sorted_elements()[:8])
        more = "" if len(self) <= 8 else f",...({len(self)} total)"
        return f"FiniteSubset[{self.group.name}]{{{shown}{more}}}"

    def _require_same_group(self, other):
        if self.group != other.group:
            raise ValueError(
                f"mixed groups: {self.group.name} vs {other.group.name}"
            )

    def union(self, other):
        self._require_same_group(other)
        return FiniteSubset._raw(self.group, self.elements | other.elements)

    def difference(self, other):
        self._require_same_group(other)
        return FiniteSubset._raw(self.group, self.elements - other.elements)

    def intersection(self, other):
        self._require_same_group(other)
        return FiniteSubset._raw(self.group, self.elements & other.elements)

    def is_subset(self, other):
        self._require_same_group(other)
        return self.elements <= other.elements

    def translate(self, g):
        """Left translate gA = {g*a : a in A}; a bijection, so |gA| = |A|."""
        self.group.check(g)
        mul = self.group.mul
        return FiniteSubset._raw(
            self.group, frozenset(mul(g, a) for a in self.elements)
        )

    def inverse(self):
        inv = self.group.inv
        return FiniteSubset._raw(self.group, frozenset(inv(a) for a in self.elements))


def translate(g, A: FiniteSubset) -> FiniteSubset:
    return A.translate(g)


def set_product(A: FiniteSubset, B: FiniteSubset) -> FiniteSubset:
    """AB = {a*b : a in A, b in B}."""
    A._require_same_group(B)
    mul = A.group.mul
    return FiniteSubset._raw(
        A.group, frozenset(mul(a, b) for a in A.elements for b in B.elements)
    )


def set_inverse(A: FiniteSubset) -> FiniteSubset:
    return A.inverse()


def ball(group, r: int) -> FiniteSubset:
    """Word ball B_r(S): all products of at most r generators; B_0 = {e}.

    S is the group's fixed symmetric generating set containing e, so the
    balls are nested by construction.
    """
    if r < 0:
        raise ValueError("radius must be >= 0")
    gens = group.generators()
    cur = {group.identity}
    mul = group.mul
    for _ in range(r):
        cur = {mul(g, s) for g in cur for s in gens}
    return FiniteSubset._raw(group, frozenset(cur))
