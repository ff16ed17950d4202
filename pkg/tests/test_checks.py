import json

import pytest

from hilbvertex.scalar import Scalar, ZERO, ONE, T1, T2, Q, U, A, HBAR
from hilbvertex.series import Series
from hilbvertex.characters import partitions
from hilbvertex.macdonald import MacdonaldBasis
from hilbvertex import checks
from hilbvertex.checks import (check_kernel_identity, check_mellit,
                               check_osum, check_ook, check_main,
                               check_degenerate_slice, check_rationality,
                               check_prop1, check_prop4, closed_F, build_F,
                               capped_vertex_table, candidate_denominator,
                               kernel_exponential, calibrate, run_check)


def den1():
    return (ONE - T1 ** 2) * (ONE - T2 ** 2)


def test_kernel_small_orders():
    rep = check_kernel_identity(2)
    assert rep.passed
    assert rep.orders == {"y": 2}


def test_kernel_wrong_orientation_witness_at_y2():
    basis = MacdonaldBasis(orientation="arms_t2")
    rep = check_kernel_identity(2, "arms_t2", basis)
    assert not rep.passed
    assert rep.outcome == "mismatch"
    assert rep.details["degree"] == 2
    # a mismatch always carries a concrete witness with both values
    assert "localization_side" in rep.details
    assert "exponential_side" in rep.details


def test_mellit_small_orders():
    rep = check_mellit(2)
    assert rep.passed


def test_mellit_reduces_to_kernel_at_u_zero():
    m = checks.mellit_exponential(2)
    k = kernel_exponential(2)
    for mu in [(1,), (2,), (1, 1)]:
        assert m.coefficient(mu).limit_at_zero("u") == k.coefficient(mu)


def test_osum_small_orders():
    rep = check_osum(2)
    assert rep.passed
    assert "sign_transport" in rep.conventions


def test_osum_first_order_coefficient():
    o = checks.osum_exponential(1)
    assert o.coefficient((1,)) == -(HBAR ** 2) / den1()


def test_closed_F_first_order():
    F = closed_F(1, 3)
    c = F.coefficient((1,))
    want = Series.const(HBAR ** 2 * (ONE - U) / den1(), 0, 3)
    zf = Series.term(HBAR ** 2 * (HBAR - HBAR.inverse()) / (Q * den1()),
                     0, 1, 0, 3)
    inner = Series.term(HBAR / Q, 0, 1, 0, 3)
    assert c == want + zf * inner.geom()


def test_closed_F_u1_z0_is_trivial():
    F = closed_F(2, 0)
    for mu, c in F.coeffs.items():
        if mu == ():
            continue
        v = c.coefficient(0, 0)
        # every p-coefficient carries a (1 - u^k) factor
        assert v.specialize({"u": 1}).is_zero()


def test_build_F_first_order_correction():
    F = build_F(1, 3, reading="printed")
    c = F.coefficient((1,))
    base = Series.const(HBAR ** 2 * (ONE - U) / den1(), 0, 3)
    corr = Series({(0, j): HBAR ** 3 * (HBAR - HBAR.inverse()) / den1()
                   for j in (1, 2, 3)}, 0, 3)
    assert c == base + corr


def test_build_F_at_z0_is_descendent_exponential():
    F = build_F(2, 0)
    taubar = checks.mellit_exponential(2)
    for mu in [(), (1,), (2,), (1, 1)]:
        assert F.coefficient(mu).coefficient(0, 0) == taubar.coefficient(mu)


def test_check_main_finds_unique_shift():
    rep = check_main(3, 4)
    assert rep.passed
    assert rep.details["winning_reading"] == "printed_inverse"
    assert rep.details["winning_shift"] == "+z*hbar^-1*q^1"
    assert rep.details["matches_printed_claim"] is False
    # the rule exactly as displayed admits no shift at all
    assert rep.details["printed_rule_shifts"] == []
    assert rep.details["claimed_shift"] == "-z*hbar^1*q^1"


def test_check_ook_small():
    assert check_ook(3, 4).passed


def test_degenerate_slice():
    assert check_degenerate_slice(3).passed


def test_vertex_table_n0():
    table = capped_vertex_table(0)
    (num, den), = table.entries.values()
    assert num[0] == ONE and den[0] == ONE


def test_vertex_table_n1():
    table = capped_vertex_table(1)
    num, den = table.entries[(1,)]
    # denominator divides (1 - z hbar/q)
    assert den == {0: ONE, 1: -(HBAR / Q)}
    assert num[0] == ONE - U
    assert num[1] == (ONE - U) * (-(HBAR / Q)) + (HBAR - HBAR.inverse()) / Q
    assert table.q_free


def test_vertex_table_bounds():
    with pytest.raises(ValueError):
        capped_vertex_table(5)
    with pytest.raises(ValueError):
        capped_vertex_table(2, 3)


def test_candidate_denominator_structure():
    d = candidate_denominator(2)
    w = HBAR / Q
    assert d[0] == ONE
    assert d[1] == -w
    prod = {0: ONE}
    for k in (1, 2):
        fac = {0: ONE, k: -(w ** k)}
        new = {}
        for a, ca in prod.items():
            for b, cb in fac.items():
                new[a + b] = new.get(a + b, ZERO) + ca * cb
        prod = new
    for deg, c in prod.items():
        assert d.get(deg, ZERO) == c


def test_rationality_small():
    rep = check_rationality((1, 2))
    assert rep.passed


def test_prop1_small():
    rep = check_prop1(1)
    assert rep.passed
    validated = rep.details["validated"]
    assert {"variant": "proof", "a_power": "n"} in validated
    # statement power 2n does not admit the limit
    assert {"variant": "proof", "a_power": "2n"} not in validated


def test_prop1_rhs_example():
    # at the fixed point ((1), empty) the expected limit is hbar
    from hilbvertex.characters import o_line_eigen, size
    rhs = HBAR ** (1 + size(())) * o_line_eigen((1,), (), "first")
    assert rhs == HBAR


def test_prop4_examples():
    assert check_prop4(1, 0).passed
    assert check_prop4(2, 1).passed
    rep = check_prop4(2, 2)
    assert rep.passed


def test_report_serialization():
    rep = check_prop4(1, 1)
    data = json.loads(rep.to_json())
    assert data["check"] == "chern_limit"
    assert data["outcome"] == "exact-match"


def test_run_check_dispatch():
    rep = run_check("kernel", y_order=1)
    assert rep.passed
    with pytest.raises(ValueError):
        run_check("nonsense")
