import random
from fractions import Fraction

import pytest

from entrolen.crossed_product import parse_element, trivial_cocycle
from entrolen.entropy import (
    addition_check,
    certified_upper_bound,
    estimate,
    estimate_quotient,
    EntropyEstimate,
    integrality_report,
    RatioRow,
    zero_divisor_scan,
)
from entrolen.exact_linalg import PrimeField
from entrolen.folner import Boxes, BoxTimesZ2
from entrolen.groups import FiniteSubset, FreeAbelian, set_inverse, set_product, ZCrossZ2
from entrolen.shift_modules import (
    bernoulli,
    cyclic_presentation,
    StabilizationConfig,
    SubshiftPresentation,
    trajectory_dim,
)
from entrolen.tiling import build_net, TilingFailed

GF2 = PrimeField(2)
GF3 = PrimeField(3)
Z = FreeAbelian(1)
ZZ2 = ZCrossZ2()
CZ2 = trivial_cocycle(GF2, Z)
CZ3 = trivial_cocycle(GF3, Z)
CX3 = trivial_cocycle(GF3, ZZ2)
BOXES = Boxes(Z)
BOXZ2 = BoxTimesZ2(ZZ2)

T_MINUS_1 = parse_element(GF3, Z, "2*(0) + 1*(1)")
E_PLUS_S = parse_element(GF3, ZZ2, "1*(0,0) + 1*(0,1)")


def zero_sub(ambient):
    class _Zero(SubshiftPresentation):
        def __init__(self):
            self.cocycle = ambient.cocycle
            self.rank = ambient.rank
            self.generators = ()

    return _Zero()


def test_bernoulli_ratios_exact():
    for rank in (1, 2, 3):
        est = estimate(bernoulli(CZ2, rank), BOXES, 8)
        assert all(row.ratio == rank for row in est.rows)
        assert est.estimate == rank


def test_half_ratio_subshift():
    est = estimate(cyclic_presentation(CX3, E_PLUS_S), BOXZ2, 10)
    assert all(row.ratio == Fraction(1, 2) for row in est.rows)


def test_quotient_estimates():
    M = bernoulli(CZ3, 1)
    N = cyclic_presentation(CZ3, T_MINUS_1)
    est = estimate_quotient(M, N, BOXES, 8)
    assert est.all_stabilized
    for row in est.rows:
        assert row.ratio == Fraction(1, 2 * row.n + 1)
    # M / 0 equals the plain estimate
    est0 = estimate_quotient(M, zero_sub(M), BOXES, 6)
    assert [r.ratio for r in est0.rows] == [r.ratio for r in estimate(M, BOXES, 6).rows]
    # half ratio survives in the quotient
    estx = estimate_quotient(
        bernoulli(CX3, 1), cyclic_presentation(CX3, E_PLUS_S), BOXZ2, 8
    )
    assert all(row.ratio == Fraction(1, 2) for row in estx.rows)


def test_certified_upper_bound_exact_value():
    cert = certified_upper_bound(bernoulli(CZ2, 1), BOXES, Fraction(1, 10), [5], 5)
    assert cert.bound == Fraction(109, 90)
    assert (cert.checked_from, cert.checked_to) == (5, 5)
    tighter = certified_upper_bound(bernoulli(CZ2, 1), BOXES, Fraction(1, 100), [5], 5)
    assert tighter.bound == Fraction(1, 100) + Fraction(100, 99)
    assert tighter.bound < cert.bound


def test_certified_upper_bound_dominates_estimates():
    cases = [
        (bernoulli(CZ2, 1), BOXES),
        (bernoulli(CZ2, 3), BOXES),
        (bernoulli(CX3, 1), BOXZ2),
        (cyclic_presentation(CZ3, T_MINUS_1), BOXES),
        (cyclic_presentation(CX3, E_PLUS_S), BOXZ2),
    ]
    import dataclasses

    for pres, scheme in cases:
        est = estimate(pres, scheme, 10)
        cert = certified_upper_bound(pres, scheme, Fraction(1, 10), [2], 2)
        assert cert.bound >= est.estimate
        combined = dataclasses.replace(est, certified_upper=cert.bound)
        assert combined.certified_upper >= combined.estimate


def test_certified_upper_bound_reports_tiling_failure():
    # a lone big tile cannot reach a 9/10 cover of the n=6 window
    with pytest.raises(TilingFailed):
        certified_upper_bound(bernoulli(CZ2, 1), BOXES, Fraction(1, 10), [5], 6)


def test_addition_check_polynomial_pair():
    rep = addition_check(
        bernoulli(CZ3, 1),
        cyclic_presentation(CZ3, T_MINUS_1),
        BOXES,
        10,
        Fraction(1, 10),
    )
    assert rep.passed and rep.ses_exact_all and rep.lower_bound_ok_all
    assert rep.e_total == 1 and rep.e_sub == 1
    assert rep.e_quotient == Fraction(1, 21)
    assert rep.discrepancy == -Fraction(1, 21)
    for w in rep.windows:
        assert w.dim_total == w.dim_intersection + w.dim_image


def test_addition_check_exact_split():
    rep = addition_check(
        bernoulli(CX3, 1),
        cyclic_presentation(CX3, E_PLUS_S),
        BOXZ2,
        8,
        Fraction(1, 20),
    )
    assert rep.passed
    assert rep.discrepancy == 0
    assert rep.e_sub == Fraction(1, 2) and rep.e_quotient == Fraction(1, 2)


def test_addition_check_trivial_pairs():
    M = bernoulli(CZ2, 1)
    rep0 = addition_check(M, zero_sub(M), BOXES, 6, Fraction(1, 20))
    assert rep0.passed and rep0.discrepancy == 0
    repM = addition_check(M, M, BOXES, 6, Fraction(1, 20))
    assert repM.passed and repM.discrepancy == 0


def test_addition_check_propagates_budget_flag():
    rep = addition_check(
        bernoulli(CZ3, 1),
        cyclic_presentation(CZ3, T_MINUS_1),
        BOXES,
        4,
        Fraction(1, 10),
        StabilizationConfig(stability_window=3, max_steps=0),
    )
    assert not rep.all_stabilized


def test_zero_divisor_scan_order_two():
    rep = zero_divisor_scan(E_PLUS_S, CX3, BOXZ2, 8, 6)
    assert rep.verdict == "zero-divisor"
    assert rep.is_zero_divisor
    from entrolen.crossed_product import format_element

    assert format_element(rep.witness) == "1*(0,0) + 2*(0,1)"
    assert rep.submodule.estimate == Fraction(1, 2)
    assert rep.quotient.estimate == Fraction(1, 2)
    assert rep.integrality == Fraction(1, 2)


def test_zero_divisor_scan_domain_control():
    rep = zero_divisor_scan(T_MINUS_1, CZ3, BOXES, 8, 10)
    assert rep.verdict == "no evidence up to budget"
    assert rep.witness is None
    assert all(r.ratio == 1 for r in rep.submodule.rows)
    assert all(r.ratio == Fraction(1, 2 * r.n + 1) for r in rep.quotient.rows)
    assert rep.integrality == 0


def test_zero_divisor_scan_unit():
    unit = parse_element(GF3, Z, "2*(0)")
    rep = zero_divisor_scan(unit, CZ3, BOXES, 5, 4)
    assert rep.verdict == "no evidence up to budget"
    assert [r.ratio for r in rep.submodule.rows] == [
        r.ratio for r in estimate(bernoulli(CZ3, 1), BOXES, 5).rows
    ]


def test_zero_divisor_scan_rejects_zero():
    from entrolen.crossed_product import CrossedElement

    with pytest.raises(ValueError):
        zero_divisor_scan(CrossedElement.zero(GF3, Z), CZ3, BOXES, 3, 2)


def test_integrality_report():
    def fake(est):
        return EntropyEstimate((RatioRow(1, 1, 0, est),), est)

    assert integrality_report(fake(Fraction(3))) == 0
    assert integrality_report(fake(Fraction(1, 2))) == Fraction(1, 2)
    assert integrality_report(fake(Fraction(40, 41))) == Fraction(1, 41)
    assert integrality_report(fake(Fraction(5, 4))) == Fraction(1, 4)


def test_window_ratios_bounded_by_net_count():
    """Disjoint net translates force dim T_F >= |F_n meet net| for a
    single generator, giving the positive-entropy lower bound."""
    cases = [
        (cyclic_presentation(CZ3, parse_element(GF3, Z, "1*(0) + 1*(1)")), BOXES, Z),
        (cyclic_presentation(CX3, E_PLUS_S), BOXZ2, ZZ2),
    ]
    for pres, scheme, group in cases:
        supp = pres.generators[0]
        E = FiniteSubset(group, [g for (g, _) in supp])
        F = set_product(E, set_inverse(E))
        window = scheme.set_at(14) if group is Z else scheme.set_at(14)
        net = build_net(E, F, window)
        for n in range(1, 9):
            Fn = scheme.set_at(n)
            count = len(Fn.elements & net.points.elements)
            assert trajectory_dim(pres, Fn) >= count


def test_estimate_monotone_for_nested_generators():
    """When the submodule generators lie in the span of the ambient
    generators, window ratios are monotone under submodule and quotient."""
    rng = random.Random(31)
    M = bernoulli(CZ3, 2)
    for _ in range(15):
        gens = []
        for _ in range(rng.randrange(1, 3)):
            vec = {}
            for j in range(2):
                ccoef = rng.randrange(3)
                if ccoef:
                    vec[((0,), j)] = ccoef
            if vec:
                gens.append(vec)
        if not gens:
            continue
        N = SubshiftPresentation(CZ3, 2, gens)
        n_max = 4
        est_M = estimate(M, BOXES, n_max)
        est_N = estimate(N, BOXES, n_max)
        est_Q = estimate_quotient(M, N, BOXES, n_max)
        for rm, rn, rq in zip(est_M.rows, est_N.rows, est_Q.rows):
            assert rn.ratio <= rm.ratio
            assert rq.ratio <= rm.ratio


def test_zero_module_estimate():
    M = bernoulli(CZ2, 1)
    est = estimate_quotient(M, M, BOXES, 6)
    assert all(r.ratio == 0 for r in est.rows)


def test_estimate_validation():
    with pytest.raises(ValueError):
        estimate(bernoulli(CZ2, 1), BOXES, 0)
    with pytest.raises(ValueError):
        estimate(bernoulli(CX3, 1), BOXES, 3)  # scheme group mismatch


def test_bernoulli_exactness_beyond_abelian_and_over_q():
    from entrolen.exact_linalg import RationalField
    from entrolen.folner import WordBalls
    from entrolen.groups import Heisenberg

    heis = Heisenberg()
    est = estimate(
        bernoulli(trivial_cocycle(GF2, heis), 1), WordBalls(heis), 4
    )
    assert all(row.ratio == 1 for row in est.rows)
    est_q = estimate(bernoulli(trivial_cocycle(RationalField(), Z), 2), BOXES, 5)
    assert all(row.ratio == 2 for row in est_q.rows)
