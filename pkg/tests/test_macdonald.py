import random

import pytest

from hilbvertex.scalar import (Scalar, ZERO, ONE, T1, T2, decode, encode,
                               InconsistentSystemError)
from hilbvertex.characters import partitions, conjugate
from hilbvertex.macdonald import (MacdonaldBasis, macd_H, macd_H_axioms,
                                  macd_H_gram_schmidt, fixed_point_decompose,
                                  localization_sum, euler_hilb, default_basis,
                                  Q_MACD, T_MACD)
from hilbvertex.fock import exp_linear

rng = random.Random(4242)


def swap_t(x):
    def sw(poly):
        out = {}
        for k, c in poly.items():
            e = list(decode(k))
            e[0], e[1] = e[1], e[0]
            out[encode(tuple(e))] = c
        return out
    return Scalar(sw(x.num), sw(x.den))


def test_degree_one_is_p1():
    H = macd_H((1,))
    assert H.coefficient((1,)) == ONE
    assert H.coefficient(()) == ZERO


def test_degree_two_table():
    half = Scalar.fraction(1, 2)
    H2, H11 = macd_H((2,)), macd_H((1, 1))
    assert H2.coefficient((1, 1)) == (ONE + Q_MACD) * half
    assert H2.coefficient((2,)) == (ONE - Q_MACD) * half
    assert H11.coefficient((1, 1)) == (ONE + T_MACD) * half
    assert H11.coefficient((2,)) == (ONE - T_MACD) * half


def test_homogeneity():
    for n in (1, 2, 3):
        for lam in partitions(n):
            H = macd_H(lam)
            assert all(sum(mu) == n for mu in H.coeffs)


def test_basis_nonsingular():
    basis = default_basis()
    for n in (1, 2, 3, 4):
        basis.inverse_matrix(n)  # raises on singular input


def test_conjugation_duality():
    # H_{lam'} is H_lam with t1 and t2 exchanged
    for n in (1, 2, 3, 4):
        for lam in partitions(n):
            Hl, Hc = macd_H(lam), macd_H(conjugate(lam))
            for mu in partitions(n):
                assert swap_t(Hl.coefficient(mu)) == Hc.coefficient(mu)


def test_two_routes_agree():
    for n in (1, 2, 3):
        gs = macd_H_gram_schmidt(n)
        ax = macd_H_axioms(n)
        for lam in partitions(n):
            for mu in partitions(n):
                assert ax[lam].get(mu, ZERO) == gs[lam].get(mu, ZERO)


def kernel_exp(N):
    c = {k: Scalar.monomial(t1=4 * k, t2=4 * k)
         / (Scalar.from_int(k) * (ONE - T1 ** (2 * k)) * (ONE - T2 ** (2 * k)))
         for k in range(1, N + 1)}
    return exp_linear(c, N)


def test_kernel_identity_first_order():
    # H_(1) / Euler((1)) equals the y p_1 coefficient of the exponential
    lhs = localization_sum(lambda lam: ONE, 1)
    assert lhs.coefficient((1,)) == ONE / euler_hilb((1,))
    assert lhs.coefficient((1,)) == kernel_exp(1).coefficient((1,))


def test_localization_sum_degree_zero():
    assert localization_sum(lambda lam: ONE, 0).coefficient(()) == ONE


def test_decompose_basis_roundtrip():
    for n in (1, 2, 3):
        mu0 = partitions(n)[0]
        c = fixed_point_decompose(macd_H(mu0), n)
        for lam in partitions(n):
            assert c[lam] == (ONE if lam == mu0 else ZERO)


def test_decompose_zero():
    from hilbvertex.fock import FockElement
    c = fixed_point_decompose(FockElement.zero(2), 2)
    assert all(v.is_zero() for v in c.values())


def test_decompose_localization_roundtrip_random():
    for n in (1, 2, 3):
        eig = {lam: Scalar.from_int(rng.randint(1, 7)) for lam in partitions(n)}
        f = localization_sum(lambda lam: eig[lam], n)
        c = fixed_point_decompose(f, n)
        for lam in partitions(n):
            assert c[lam] == eig[lam] / euler_hilb(lam)


def test_degree_bound_guard():
    basis = MacdonaldBasis(max_degree=2)
    with pytest.raises(ValueError):
        basis.build_degree(3)
