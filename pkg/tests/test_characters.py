import random

import pytest

from hilbvertex.scalar import Scalar, ZERO, ONE, T1, T2, Q, U, A, HBAR
from hilbvertex.characters import (Character, partitions, conjugate, size,
                                   boxes, arm, leg, taut_character,
                                   tangent_hilb, polarization_M2, tangent_M2,
                                   delta_11, o_line_eigen, chern_eigen,
                                   fixed_points_rank2, framing_M2)

rng = random.Random(515)


def weight_set(ch):
    out = []
    for k, m in ch.weights.items():
        out.extend([Scalar({k: 1}).render()] * abs(m))
    return sorted(out)


def test_partitions_examples():
    assert partitions(0) == [()]
    assert len(partitions(4)) == 5
    assert partitions(2) == [(2,), (1, 1)]
    # reverse-lexicographic order is deterministic
    assert partitions(4)[0] == (4,)
    assert partitions(4)[-1] == (1, 1, 1, 1)


def test_taut_character_examples():
    V = taut_character(((1,),), (ONE,))
    assert weight_set(V) == ["1"]
    V = taut_character(((2,),), (ONE,))
    # frozen row/column convention: columns carry t1
    assert weight_set(V) == sorted(["1", "t1"])
    V = taut_character(((1,), (1,)), (ONE, A))
    assert weight_set(V) == sorted(["1", "a"])


def test_tangent_hilb_examples():
    assert weight_set(tangent_hilb((1,))) == sorted(["t1", "t2"])
    assert weight_set(tangent_hilb((2,))) == sorted(
        ["t1^2", "(t2) / (t1)", "t1", "t2"])
    for n in range(7):
        for lam in partitions(n):
            assert tangent_hilb(lam).rank() == 2 * size(lam)


def test_tangent_swap_conjugate_symmetry():
    # swapping t1 <-> t2 matches conjugating the partition
    def swapped(ch):
        out = {}
        for k, m in ch.weights.items():
            from hilbvertex.scalar import decode, encode
            e = list(decode(k))
            e[0], e[1] = e[1], e[0]
            out[encode(tuple(e))] = m
        return Character(out)
    for n in range(7):
        for lam in partitions(n):
            assert swapped(tangent_hilb(lam)) == tangent_hilb(conjugate(lam))


def test_lambda_dot_examples():
    c1 = Character.from_weights([T1])
    assert c1.lambda_dot() == ONE - T1.inverse()
    c2 = Character.from_weights([T1, T2])
    assert c2.lambda_dot() == (ONE - T1.inverse()) * (ONE - T2.inverse())
    # monoid homomorphism
    assert (c1 + c2).lambda_dot() == c1.lambda_dot() * c2.lambda_dot()
    with pytest.raises(ValueError):
        Character.from_weights([ONE]).lambda_dot()


def test_character_duality_and_det():
    for _ in range(10):
        ws = [T1 ** rng.randint(-2, 2) * T2 ** rng.randint(-2, 2) * A
              for _ in range(rng.randint(1, 4))]
        c = Character.from_weights(ws)
        assert c.dual().dual() == c
        d = Character.from_weights([T2, Q])
        assert (c + d).det() == c.det() * d.det()


def test_polarization_examples():
    assert polarization_M2((), (), "proof").is_zero()
    pol = polarization_M2((), (1,), "proof")
    assert weight_set(pol) == sorted([(HBAR / A).render(), HBAR.render()])


def test_tangent_M2_rank_and_fixed_part():
    for n in (1, 2, 3):
        for (l1, l2) in fixed_points_rank2(n):
            T = tangent_M2(l1, l2, "canonical")
            assert T.rank() == 4 * n
            assert T.a_part(0) == tangent_hilb(l1) + tangent_hilb(l2)


def test_four_term_polarization_is_rank_deficient():
    # the displayed four-term half has rank 2n - n^2, not 2n; kept only for
    # the empirical comparison in the limit check
    pol = polarization_M2((1,), (1,), "four_term")
    assert pol.rank() != 2 * 2


def test_o_line_examples():
    assert o_line_eigen((1,), (), "full") == A.inverse()
    assert o_line_eigen((), (2,), "full") == T1.inverse()
    assert o_line_eigen((), ()) == ONE
    assert o_line_eigen((2, 1), (), "first") == \
        o_line_eigen((), (2, 1), "second")


def test_chern_examples():
    assert chern_eigen(((1,),), (ONE,), 0) == ONE
    assert chern_eigen(((1,),), (ONE,), 1) == ONE
    assert chern_eigen(((1,), (1,)), (ONE, A), 2) == A
    with pytest.raises(ValueError):
        chern_eigen(((1,),), (ONE,), 2)


def test_chern_dual_uses_inverse_weights():
    v = chern_eigen(((2,),), (ONE,), 1, dual=True)
    assert v == ONE + T1.inverse()


def test_delta_trivial():
    assert delta_11((), ()) == ONE


def test_delta_is_monomial_times_koszul():
    # proof variant at ((1),()): hbar^-1 * (1 - a)
    d = delta_11((1,), (), "proof")
    assert d == HBAR.inverse() * (ONE - A)


def test_framing_splits_first_summand():
    fr = framing_M2()
    assert fr[0] == A and fr[1] == ONE
