"""Arithmetic in twisted group algebras K*G.

A ring element is a finite formal sum of group symbols with nonzero field
coefficients.  The product is twisted by a pair (sigma, rho): sigma sends
group elements to field automorphisms (realized as a Frobenius exponent,
the only automorphism we implement beyond the identity) and rho is a
unit-valued two-cocycle.  The single-symbol product rule is

    (r * g) (s * h) = r * sigma_g(s) * rho(g, h) * (g h)

extended bilinearly.  Validation of the cocycle conditions is sample
based on word balls and never a proof.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .exact_linalg import Echelon, QuadraticField, RationalField
from .groups import (
    ball,
    FiniteSubset,
    format_group_element,
    FreeAbelian,
    Heisenberg,
    parse_group_element,
    ZCrossZ2,
)


class CrossedElement:
    """Finite formal sum of group symbols with nonzero field coefficients."""

    __slots__ = ("field", "group", "terms")

    def __init__(self, field, group, terms: dict):
        cleaned = {}
        for g, c in terms.items():
            group.check(g)
            if c:
                cleaned[g] = c
        self.field = field
        self.group = group
        self.terms = cleaned

    @classmethod
    def _raw(cls, field, group, terms: dict) -> "CrossedElement":
        obj = object.__new__(cls)
        obj.field = field
        obj.group = group
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, field, group) -> "CrossedElement":
        return cls._raw(field, group, {})

    @classmethod
    def one(cls, field, group) -> "CrossedElement":
        return cls._raw(field, group, {group.identity: field.one})

    @classmethod
    def monomial(cls, field, group, g, coeff=None) -> "CrossedElement":
        group.check(g)
        c = field.one if coeff is None else coeff
        if not c:
            return cls.zero(field, group)
        return cls._raw(field, group, {g: c})

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {self.group.identity: self.field.one}

    def support(self) -> FiniteSubset:
        return FiniteSubset._raw(self.group, frozenset(self.terms))

    def _require_same_ring(self, other: "CrossedElement"):
        if self.field != other.field or self.group != other.group:
            raise ValueError("operands live in different crossed products")

    def add(self, other: "CrossedElement") -> "CrossedElement":
        self._require_same_ring(other)
        F = self.field
        out = dict(self.terms)
        for g, c in other.terms.items():
            nv = F.add(out.get(g, F.zero), c)
            if nv:
                out[g] = nv
            else:
                out.pop(g, None)
        return CrossedElement._raw(F, self.group, out)

    def neg(self) -> "CrossedElement":
        F = self.field
        return CrossedElement._raw(
            F, self.group, {g: F.neg(c) for g, c in self.terms.items()}
        )

    def sub(self, other: "CrossedElement") -> "CrossedElement":
        return self.add(other.neg())

    def scale(self, coeff) -> "CrossedElement":
        F = self.field
        if not coeff:
            return CrossedElement.zero(F, self.group)
        return CrossedElement._raw(
            F, self.group, {g: F.mul(coeff, c) for g, c in self.terms.items()}
        )

    def __eq__(self, other):
        return (
            isinstance(other, CrossedElement)
            and self.field == other.field
            and self.group == other.group
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.field, self.group, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        return f"<{format_element(self) or '0'}>"


def format_element(x: CrossedElement) -> str:
    """Canonical text form: terms sorted by group element, joined " + "."""
    fmt = x.field.fmt
    return " + ".join(
        f"{fmt(x.terms[g])}*{format_group_element(g)}" for g in sorted(x.terms)
    )


def parse_element(field, group, text: str) -> CrossedElement:
    """Parse the "coeff*(g) + coeff*(g)" format; inverse of format_element."""
    s = text.strip()
    if not s or s == "0":
        return CrossedElement.zero(field, group)
    terms: dict = {}
    for raw in s.split(" + "):
        part = raw.strip()
        if "*(" not in part:
            raise ValueError(f"bad term {part!r} (expected coeff*(g))")
        coeff_str, g_body = part.rsplit("*(", 1)
        coeff = field.parse(coeff_str)
        g = parse_group_element(group, "(" + g_body)
        if not coeff:
            raise ValueError(f"zero coefficient in term {part!r}")
        cur = terms.get(g, field.zero)
        nv = field.add(cur, coeff)
        if nv:
            terms[g] = nv
        else:
            terms.pop(g, None)
    return CrossedElement._raw(field, group, terms)


def _abelianized_degree(group, g) -> int:
    """A homomorphism to Z (mod 2 for the torsion bit) feeding the
    Frobenius exponent; the commutator coordinate of Heisenberg drops."""
    if isinstance(group, FreeAbelian):
        return sum(g)
    if isinstance(group, ZCrossZ2):
        return g[0] + g[1]
    if isinstance(group, Heisenberg):
        return g[0] + g[1]
    raise ValueError(f"no Frobenius grading for {group!r}")


class CocycleData:
    """Twist data: an automorphism map sigma (as a Frobenius exponent per
    group element) and a unit-valued rho on pairs."""

    __slots__ = ("field", "group", "sigma_exp", "rho", "label", "is_plain")

    def __init__(self, field, group, sigma_exp, rho, label="custom"):
        self.field = field
        self.group = group
        self.sigma_exp = sigma_exp
        self.rho = rho
        self.label = label
        self.is_plain = label == "trivial"

    def sigma(self, g, x):
        return self.field.apply_auto(x, self.sigma_exp(g))

    def __eq__(self, other):
        if not isinstance(other, CocycleData):
            return NotImplemented
        if self.label == "custom" or other.label == "custom":
            return self is other
        return (
            self.field == other.field
            and self.group == other.group
            and self.label == other.label
        )

    def __hash__(self):
        if self.label == "custom":
            return object.__hash__(self)
        return hash((self.field, self.group, self.label))

    def __repr__(self):
        return f"CocycleData({self.field.name}, {self.group.name}, {self.label})"


def trivial_cocycle(field, group) -> CocycleData:
    one = field.one
    return CocycleData(field, group, lambda g: 0, lambda g, h: one, label="trivial")


def frobenius_cocycle(field, group) -> CocycleData:
    """sigma(g) = Frobenius^deg(g) on GF(p^2), rho identically 1."""
    if field.auto_order != 2:
        raise ValueError("Frobenius twist needs a quadratic field")
    one = field.one
    return CocycleData(
        field,
        group,
        lambda g: _abelianized_degree(group, g),
        lambda g, h: one,
        label="frobenius",
    )


def cocycle_from_name(name: str, field, group) -> CocycleData:
    key = name.strip().lower()
    if key == "trivial":
        return trivial_cocycle(field, group)
    if key == "frobenius":
        return frobenius_cocycle(field, group)
    raise ValueError(f"unknown cocycle {name!r} (expected trivial or frobenius)")


def multiply(x: CrossedElement, y: CrossedElement, c: CocycleData) -> CrossedElement:
    """Bilinear extension of the twisted single-symbol product rule."""
    x._require_same_ring(y)
    if c.field != x.field or c.group != x.group:
        raise ValueError("cocycle data does not match the operands' ring")
    F = x.field
    group = x.group
    mul_g = group.mul
    fmul = F.mul
    fadd = F.add
    plain = c.is_plain
    one = F.one
    acc: dict = {}
    for g, r in x.terms.items():
        exp = 0 if plain else c.sigma_exp(g)
        for h, s in y.terms.items():
            coeff = s if plain else F.apply_auto(s, exp)
            if not plain:
                u = c.rho(g, h)
                if u != one:
                    coeff = fmul(coeff, u)
            coeff = fmul(r, coeff)
            k = mul_g(g, h)
            cur = acc.get(k)
            nv = coeff if cur is None else fadd(cur, coeff)
            if nv:
                acc[k] = nv
            else:
                del acc[k]
    return CrossedElement._raw(F, group, acc)


def act(g, vec: dict, c: CocycleData) -> dict:
    """Left multiplication by the symbol of g on a free-module vector.

    Labels are (group element, coordinate) pairs; the coefficient at
    (h, j) moves to sigma_g(coeff) * rho(g, h) at (g h, j).  The map is
    invertible and K-semilinear, so spans keep their dimension.
    """
    group = c.group
    mul_g = group.mul
    if c.is_plain:
        return {(mul_g(g, h), j): a for (h, j), a in vec.items()}
    F = c.field
    exp = c.sigma_exp(g)
    rho = c.rho
    one = F.one
    fmul = F.mul
    out = {}
    for (h, j), a in vec.items():
        coeff = F.apply_auto(a, exp)
        u = rho(g, h)
        if u != one:
            coeff = fmul(coeff, u)
        out[(mul_g(g, h), j)] = coeff
    return out


def _sample_coefficients(field):
    if isinstance(field, RationalField):
        return [Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(2, 3), Fraction(-7, 5)]
    elems = list(field.elements())
    return elems if len(elems) <= 9 else elems[:6] + elems[-3:]


@dataclass(frozen=True)
class CocycleReport:
    ok: bool
    checked_radius: int
    triples_checked: int
    associativity_checked: int
    failure: str | None = None

    def __str__(self):
        if self.ok:
            return (
                f"pass (radius {self.checked_radius}, "
                f"{self.triples_checked} triples, "
                f"{self.associativity_checked} associativity samples)"
            )
        return f"fail: {self.failure}"


def validate_cocycle(c: CocycleData, sample_budget: int = 2000, seed: int = 0) -> CocycleReport:
    """Check the unit conditions, the cocycle identity, the automorphism
    compatibility and multiply-associativity on deterministic samples.

    Triples are drawn from ball(2)^3 in canonical order, truncated to the
    budget.  The first violation stops the scan and is reported with its
    witnessing tuple.
    """
    F = c.field
    group = c.group
    e = group.identity
    B = ball(group, 2).sorted_elements()
    one = F.one
    coeffs = _sample_coefficients(F)

    def fail(msg, n_triples, n_assoc):
        return CocycleReport(False, 2, n_triples, n_assoc, msg)

    # unit conditions: rho(g, e) = rho(e, g) = 1 and sigma(e) = identity
    if c.sigma_exp(e) % max(F.auto_order, 1):
        return fail("sigma(identity) is not the identity automorphism", 0, 0)
    for g in B:
        if c.rho(g, e) != one:
            return fail(f"rho(g, e) != 1 at g={format_group_element(g)}", 0, 0)
        if c.rho(e, g) != one:
            return fail(f"rho(e, g) != 1 at g={format_group_element(g)}", 0, 0)

    # cocycle identity on sampled triples
    n_triples = 0
    mul_g = group.mul
    done = False
    for g1 in B:
        for g2 in B:
            for g3 in B:
                if n_triples >= sample_budget:
                    done = True
                    break
                n_triples += 1
                lhs = F.mul(c.rho(g1, g2), c.rho(mul_g(g1, g2), g3))
                rhs = F.mul(c.sigma(g1, c.rho(g2, g3)), c.rho(g1, mul_g(g2, g3)))
                if lhs != rhs:
                    return fail(
                        "cocycle identity fails at "
                        f"({format_group_element(g1)}, {format_group_element(g2)}, "
                        f"{format_group_element(g3)})",
                        n_triples,
                        0,
                    )
            if done:
                break
        if done:
            break

    # automorphism compatibility on sampled pairs and coefficients
    n_pairs = 0
    for g1 in B:
        for g2 in B:
            if n_pairs >= sample_budget:
                break
            n_pairs += 1
            u = c.rho(g1, g2)
            u_inv = F.inv(u)
            for r in coeffs:
                lhs = c.sigma(g1, c.sigma(g2, r))
                rhs = F.mul(u, F.mul(c.sigma(mul_g(g1, g2), r), u_inv))
                if lhs != rhs:
                    return fail(
                        "automorphism compatibility fails at "
                        f"({format_group_element(g1)}, {format_group_element(g2)}) "
                        f"with r={F.fmt(r)}",
                        n_triples,
                        0,
                    )

    # associativity of the bilinear product on seeded random elements
    rng = random.Random(seed)
    supp = ball(group, 1).sorted_elements()
    nonzero = [x for x in coeffs if x]
    n_assoc = min(12, max(3, sample_budget // 100))

    def random_element():
        terms = {}
        for g in supp:
            if rng.random() < 0.6:
                terms[g] = nonzero[rng.randrange(len(nonzero))]
        if not terms:
            terms[e] = nonzero[0]
        return CrossedElement._raw(F, group, terms)

    for k in range(n_assoc):
        x, y, z = random_element(), random_element(), random_element()
        left = multiply(multiply(x, y, c), z, c)
        right = multiply(x, multiply(y, z, c), c)
        if left != right:
            return fail(
                f"associativity fails on sampled elements (sample {k})",
                n_triples,
                k + 1,
            )
        xe = multiply(x, CrossedElement.one(F, group), c)
        if xe != x:
            return fail(f"x * identity != x on sample {k}", n_triples, k + 1)

    return CocycleReport(True, 2, n_triples, n_assoc)


def _canonical_scaling(x: CrossedElement) -> CrossedElement:
    """Scale so the coefficient at the minimal support element is 1."""
    piv = min(x.terms)
    c = x.terms[piv]
    if c == x.field.one:
        return x
    return x.scale(x.field.inv(c))


def find_annihilator(x: CrossedElement, c: CocycleData, window_radius: int):
    """Search for nonzero y supported on ball(window_radius) with y x = 0.

    The window grows one ball layer at a time, so the first dependency
    found has the smallest word radius.  Rows g*x are accumulated into an
    echelon augmented by coefficient-tracking labels; the first row whose
    product part dies yields the dependency, which is rescaled canonically
    and re-verified through multiply.  Returns None when the window holds
    no annihilator.
    """
    if x.is_zero():
        raise ValueError("x must be nonzero")
    if window_radius < 0:
        raise ValueError("window_radius must be >= 0")
    F = x.field
    group = x.group
    ech = Echelon(F)
    seen: frozenset = frozenset()
    for r in range(window_radius + 1):
        layer = ball(group, r).elements
        for g in sorted(layer - seen):
            gx = multiply(CrossedElement.monomial(F, group, g), x, c)
            row = {(0, h): coeff for h, coeff in gx.terms.items()}
            row[(1, g)] = F.one
            piv = ech.add(row)
            if piv is not None and piv[0] == 1:
                combo = ech.rows[piv]
                y = CrossedElement._raw(
                    F, group, {h: v for (_, h), v in combo.items()}
                )
                y = _canonical_scaling(y)
                if not multiply(y, x, c).is_zero():
                    raise RuntimeError("annihilator candidate failed verification")
                return y
        seen = layer
    return None


def check_direct_finiteness_witness(
    x: CrossedElement, y: CrossedElement, c: CocycleData
) -> str:
    """If x y = 1, report whether y x = 1; otherwise "not a witness"."""
    if not multiply(x, y, c).is_one():
        return "not a witness"
    return "consistent" if multiply(y, x, c).is_one() else "inconsistent"
