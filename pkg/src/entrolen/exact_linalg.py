"""Exact field arithmetic and deterministic sparse subspace calculus.

Fields: GF(p), the quadratic extension GF(p^2) with its Frobenius
automorphism, and the rationals.  Field elements are plain values (small
ints for the finite fields, Fraction for the rationals) and every zero
element is falsy; the field object supplies the operations, so vectors
stay lightweight dicts from column labels to nonzero coefficients.

Column labels may be any mutually orderable hashable values.  Subspaces
expose the reduced row echelon basis, which is unique for a given row
space, so dimensions, bases and intersections do not depend on the order
spanning vectors arrive in.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from heapq import heapify, heappop, heappush


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    """GF(p), elements stored as ints in [0, p)."""

    p: int

    zero = 0
    one = 1
    auto_order = 1

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def name(self) -> str:
        return f"gf{self.p}"

    def add(self, x, y):
        return (x + y) % self.p

    def sub(self, x, y):
        return (x - y) % self.p

    def mul(self, x, y):
        return (x * y) % self.p

    def neg(self, x):
        return (-x) % self.p

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, self.p - 2, self.p)

    def submul(self, a, b, c):
        """a - b*c, the fused row-operation kernel."""
        return (a - b * c) % self.p

    def apply_auto(self, x, power):
        return x

    def elements(self):
        return range(self.p)

    def fmt(self, x) -> str:
        return str(x)

    def parse(self, s: str):
        try:
            return int(s.strip()) % self.p
        except ValueError:
            raise ValueError(f"bad GF({self.p}) element {s!r}") from None


def _quadratic_modulus(p: int) -> tuple[int, int]:
    """Lexicographically smallest (a, b) with x^2+ax+b irreducible over GF(p)."""
    for a in range(p):
        for b in range(p):
            if all((t * t + a * t + b) % p for t in range(p)):
                return a, b
    raise ValueError(f"no irreducible quadratic over GF({p})")


@dataclass(frozen=True)
class QuadraticField:
    """GF(p^2) = GF(p)[w]/(w^2 + a*w + b), elements packed as c0 + c1*p.

    The modulus is the lexicographically smallest irreducible monic
    quadratic, so the construction is deterministic; for p = 2 it is
    x^2 + x + 1 and w^2 = w + 1.  The only nontrivial automorphism is the
    Frobenius x -> x^p, of order 2.
    """

    p: int

    zero = 0
    one = 1
    auto_order = 2

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        a, b = _quadratic_modulus(self.p)
        object.__setattr__(self, "_mod_a", a)
        object.__setattr__(self, "_mod_b", b)
        object.__setattr__(self, "_frob", None)

    @property
    def name(self) -> str:
        return f"gf{self.p * self.p}"

    @property
    def modulus(self) -> tuple[int, int]:
        return (self._mod_a, self._mod_b)

    def add(self, x, y):
        p = self.p
        return (x % p + y % p) % p + ((x // p + y // p) % p) * p

    def sub(self, x, y):
        p = self.p
        return (x % p - y % p) % p + ((x // p - y // p) % p) * p

    def neg(self, x):
        p = self.p
        return (-x % p) % p + ((-(x // p)) % p) * p

    def mul(self, x, y):
        p = self.p
        a1, b1 = x % p, x // p
        a2, b2 = y % p, y // p
        # (a1 + b1 w)(a2 + b2 w) with w^2 = -(A w + B)
        cross = a1 * b2 + a2 * b1
        sq = b1 * b2
        c0 = (a1 * a2 - sq * self._mod_b) % p
        c1 = (cross - sq * self._mod_a) % p
        return c0 + c1 * p

    def submul(self, a, b, c):
        return self.sub(a, self.mul(b, c))

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        p = self.p
        a, b = x % p, x // p
        # Solve (a + b w)(c + d w) = 1; the norm is nonzero by irreducibility.
        det = (a * a - self._mod_a * a * b + self._mod_b * b * b) % p
        det_inv = pow(det, p - 2, p)
        c = ((a - self._mod_a * b) * det_inv) % p
        d = (-b * det_inv) % p
        return c + d * p

    def frobenius(self, x):
        cache = self._frob
        if cache is None:
            cache = {}
            object.__setattr__(self, "_frob", cache)
        y = cache.get(x)
        if y is None:
            # x^p by repeated multiplication; p is tiny in practice
            y = x
            for _ in range(self.p - 1):
                y = self.mul(y, x)
            cache[x] = y
        return y

    def apply_auto(self, x, power):
        return self.frobenius(x) if power % 2 else x

    def elements(self):
        return range(self.p * self.p)

    def make(self, c0: int, c1: int):
        return c0 % self.p + (c1 % self.p) * self.p

    def fmt(self, x) -> str:
        return f"{x % self.p}+{x // self.p}*w"

    _PARSE_RE = re.compile(r"^\s*(-?\d+)\s*\+\s*(-?\d+)\s*\*\s*w\s*$")

    def parse(self, s: str):
        m = self._PARSE_RE.match(s)
        if m:
            return self.make(int(m.group(1)), int(m.group(2)))
        try:
            return self.make(int(s.strip()), 0)
        except ValueError:
            raise ValueError(f"bad GF({self.p}^2) element {s!r}") from None


@dataclass(frozen=True)
class RationalField:
    """The rationals, with exact Fraction arithmetic."""

    zero = Fraction(0)
    one = Fraction(1)
    auto_order = 1

    @property
    def name(self) -> str:
        return "q"

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        return 1 / x

    def submul(self, a, b, c):
        return a - b * c

    def apply_auto(self, x, power):
        return x

    def fmt(self, x) -> str:
        return f"{x.numerator}/{x.denominator}"

    def parse(self, s: str):
        try:
            return Fraction(s.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"bad rational {s!r}") from None


def field_from_name(name: str):
    key = name.strip().lower()
    if key in ("q", "rational", "rationals"):
        return RationalField()
    if key.startswith("gf"):
        try:
            n = int(key[2:])
        except ValueError:
            raise ValueError(f"bad field name {name!r}") from None
        if _is_prime(n):
            return PrimeField(n)
        root = int(round(n ** 0.5))
        if root * root == n and _is_prime(root):
            return QuadraticField(root)
        raise ValueError(f"unsupported field size {n} (need p or p^2)")
    raise ValueError(f"unknown field {name!r}")


def _reduce(rows: dict, field, vec: dict) -> dict:
    """Fully reduce vec modulo the echelon rows; the remainder has no
    entry at any pivot label, so it is the canonical coset representative."""
    if not vec or not rows:
        return dict(vec)
    submul = field.submul
    zero = field.zero
    out = dict(vec)
    heap = [lbl for lbl in out if lbl in rows]
    if not heap:
        return out
    heapify(heap)
    queued = set(heap)
    while heap:
        lbl = heappop(heap)
        c = out.pop(lbl, None)
        if c is None:
            continue
        for l2, v2 in rows[lbl].items():
            if l2 == lbl:
                continue
            nv = submul(out.get(l2, zero), c, v2)
            if nv:
                out[l2] = nv
                if l2 not in queued and l2 in rows:
                    heappush(heap, l2)
                    queued.add(l2)
            else:
                out.pop(l2, None)
    return out


class Echelon:
    """Mutable forward-echelon accumulator: pivot label -> normalized row.

    Rows are normalized (pivot coefficient 1, pivot = min label of the
    row) but not mutually reduced; the canonical reduced basis is
    materialized on demand by rref().  The pivot label set depends only
    on the accumulated row space, never on insertion order.
    """

    __slots__ = ("field", "rows")

    def __init__(self, field):
        self.field = field
        self.rows: dict = {}

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        return _reduce(self.rows, self.field, vec)

    def add(self, vec: dict):
        """Insert vec's residue; returns the new pivot label, or None if
        vec was already in the span."""
        rem = _reduce(self.rows, self.field, vec)
        if not rem:
            return None
        piv = min(rem)
        field = self.field
        c = rem[piv]
        if c != field.one:
            inv = field.inv(c)
            mul = field.mul
            rem = {l: mul(inv, v) for l, v in rem.items()}
        self.rows[piv] = rem
        return piv

    def contains(self, vec: dict) -> bool:
        return not _reduce(self.rows, self.field, vec)

    def rref(self) -> dict:
        """Canonical reduced echelon rows (unique per row space)."""
        final: dict = {}
        field = self.field
        for piv in sorted(self.rows, reverse=True):
            row = self.rows[piv]
            tail = {l: v for l, v in row.items() if l != piv}
            rem = _reduce(final, field, tail)
            rem[piv] = field.one
            final[piv] = rem
        return final


class Subspace:
    """Immutable subspace with the canonical reduced echelon basis."""

    __slots__ = ("field", "rows")

    def __init__(self, field, rows: dict):
        self.field = field
        self.rows = rows

    @classmethod
    def from_echelon(cls, ech: Echelon) -> "Subspace":
        return cls(ech.field, ech.rref())

    @property
    def dim(self) -> int:
        return len(self.rows)

    def pivots(self):
        return tuple(sorted(self.rows))

    def column_labels(self):
        labels = set()
        for row in self.rows.values():
            labels.update(row)
        return tuple(sorted(labels))

    def basis_rows(self):
        """Rows sorted by pivot; pivot columns are strictly increasing."""
        return [dict(self.rows[p]) for p in sorted(self.rows)]

    def matrix(self):
        """(labels, dense rows) rendering of the echelon basis."""
        labels = self.column_labels()
        index = {l: i for i, l in enumerate(labels)}
        zero = self.field.zero
        dense = []
        for p in sorted(self.rows):
            row = [zero] * len(labels)
            for l, v in self.rows[p].items():
                row[index[l]] = v
            dense.append(row)
        return labels, dense

    def contains(self, vec: dict) -> bool:
        return not _reduce(self.rows, self.field, vec)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, tuple(sorted(self.rows))))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, field={self.field.name})"

    def sum(self, other: "Subspace") -> "Subspace":
        _same_field(self, other)
        ech = Echelon(self.field)
        for piv in sorted(self.rows, reverse=True):
            ech.add(self.rows[piv])
        for piv in sorted(other.rows, reverse=True):
            ech.add(other.rows[piv])
        return Subspace.from_echelon(ech)

    def intersect(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)


def _same_field(U: Subspace, V: Subspace):
    if U.field != V.field:
        raise ValueError(f"field mismatch: {U.field.name} vs {V.field.name}")


def span(field, vectors) -> Subspace:
    """Subspace spanned by sparse vectors (dicts label -> coefficient)."""
    ech = Echelon(field)
    for vec in vectors:
        ech.add(vec)
    return Subspace.from_echelon(ech)


def span_dim(field, vectors) -> int:
    ech = Echelon(field)
    for vec in vectors:
        ech.add(vec)
    return ech.dim


def intersect(U: Subspace, V: Subspace) -> Subspace:
    """U meet V by the Zassenhaus block trick.

    Rows (u, u) for U and (v, 0) for V are echelonized over tagged labels
    with every tag-0 label ordered before every tag-1 label; the rows whose
    pivot carries tag 1 are supported entirely on the tag-1 block and their
    untagged images form a basis of the intersection.
    """
    _same_field(U, V)
    ech = Echelon(U.field)
    for piv in sorted(U.rows, reverse=True):
        row = U.rows[piv]
        tagged = {}
        for l, v in row.items():
            tagged[(0, l)] = v
            tagged[(1, l)] = v
        ech.add(tagged)
    for piv in sorted(V.rows, reverse=True):
        ech.add({(0, l): v for l, v in V.rows[piv].items()})
    inter = Echelon(U.field)
    for piv, row in ech.rows.items():
        if piv[0] == 1:
            inter.add({l: v for (_, l), v in row.items()})
    return Subspace.from_echelon(inter)


def quotient_dim(U: Subspace, W: Subspace) -> int:
    """dim((U + W) / W) = dim(U + W) - dim(W)."""
    _same_field(U, W)
    ech = Echelon(U.field)
    for piv in sorted(W.rows, reverse=True):
        ech.add(W.rows[piv])
    for piv in sorted(U.rows, reverse=True):
        ech.add(U.rows[piv])
    return ech.dim - W.dim


def membership(vec: dict, U: Subspace) -> bool:
    """True iff the sparse vector lies in U (the zero vector always does)."""
    return not _reduce(U.rows, U.field, vec)
