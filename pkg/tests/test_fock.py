import random

import pytest

from hilbvertex.scalar import Scalar, ZERO, ONE, T1, T2, U, HBAR
from hilbvertex.series import Series
from hilbvertex.characters import partitions
from hilbvertex.fock import (FockElement, TensorFockElement, HeisenbergIndex,
                             heis, heis_denominator, heis_level, exp_linear,
                             pexp, fock_exp, fock_log, tensor_exp,
                             jj0_substitute, jj0_correction, project_second)

rng = random.Random(99)


def rand_fock(deg, N):
    coeffs = {}
    for n in range(deg + 1):
        for mu in partitions(n):
            if rng.random() < 0.5:
                c = Scalar.from_int(rng.randint(-3, 3))
                if not c.is_zero():
                    coeffs[mu] = c
    return FockElement(coeffs, N)


def rand_tensor(N, nz):
    coeffs = {}
    for n1 in range(N + 1):
        for mu1 in partitions(n1):
            for n2 in range(N + 1 - n1):
                for mu2 in partitions(n2):
                    if rng.random() < 0.3:
                        s = Series({(0, rng.randint(0, nz)):
                                    Scalar.from_int(rng.randint(-2, 2))},
                                   0, nz)
                        if not s.is_zero():
                            coeffs[(mu1, mu2)] = s
    return TensorFockElement(coeffs, N)


def test_heis_examples():
    p1 = FockElement.p(1, 6)
    assert heis(1, p1).coefficient(()) == -ONE
    d1 = heis_denominator(1)
    assert heis(-1, FockElement.one(6)).coefficient((1,)) == -ONE / d1
    assert heis(2, p1).is_zero()


def test_heis_index_constants():
    idx = HeisenbergIndex(2)
    d2 = (Scalar.monomial(t1=2) - Scalar.monomial(t1=-2)) * \
         (Scalar.monomial(t2=2) - Scalar.monomial(t2=-2))
    assert idx.d == d2
    h = Scalar.monomial(t1=2, t2=2) - Scalar.monomial(t1=-2, t2=-2)
    assert idx.n == d2 * h / 2
    with pytest.raises(ValueError):
        HeisenbergIndex(0)


def test_commutator_property():
    # [heis(k), heis(-k)] = k/d_k on elements of degree <= 6 (with headroom
    # so the raising step is not clipped by the truncation bound)
    for k in range(1, 5):
        f = rand_fock(6, 6 + k)
        lhs = heis(k, heis(-k, f)) - heis(-k, heis(k, f))
        assert lhs == f * (Scalar.from_int(k) / heis_denominator(k))


def test_heis_different_indices_commute():
    f = rand_fock(5, 9)
    assert heis(1, heis(-2, f)) == heis(-2, heis(1, f))
    assert heis(3, heis(-2, f)) == heis(-2, heis(3, f))


def test_exp_linear_examples():
    x = T1
    e = exp_linear({1: x}, 2)
    assert e.coefficient(()) == ONE
    assert e.coefficient((1,)) == x
    assert e.coefficient((1, 1)) == x * x * Scalar.fraction(1, 2)
    e2 = exp_linear({1: x, 2: U}, 2)
    assert e2.coefficient((2,)) == U
    assert e2.coefficient((1, 1)) == x * x * Scalar.fraction(1, 2)


def test_exp_linear_kernel_coefficient():
    # p_1 coefficient of the kernel exponential at order y
    c1 = Scalar.monomial(t1=4, t2=4) / ((ONE - T1 ** 2) * (ONE - T2 ** 2))
    e = exp_linear({1: c1}, 1)
    assert e.coefficient((1,)) == c1


def test_pexp_examples():
    assert pexp(ZERO, 3) == FockElement.one(3)
    c, cp = T1 / (ONE - T2), T2 ** 2
    assert pexp(c + cp, 3) == pexp(c, 3) * pexp(cp, 3)
    pp = pexp(c, 4)
    for k in (1, 2, 3, 4):
        assert pp.coefficient((k,)) == c.adams(k) * Scalar.fraction(1, k)


def test_fock_exp_log_roundtrip():
    g = FockElement({(1,): T1, (2,): U / (ONE - T2)}, 4)
    assert fock_log(fock_exp(g)) == g


def test_tensor_exp_examples():
    one = Series.one(0, 1)
    d = {1: Series.const(T1, 0, 1) * Series.z(0, 1)}
    te = tensor_exp({}, d, 1)
    assert te.coefficient((), (1,)) == Series.term(T1, 0, 1, 0, 1)
    assert te.coefficient((), ()) == one
    # d = 0 reduces to a first-factor exponential
    c = {1: Series.const(T2, 0, 0)}
    te = tensor_exp(c, {}, 2)
    ref = exp_linear(c, 2)
    for mu in [(), (1,), (1, 1)]:
        assert te.coefficient(mu, ()) == ref.coefficient(mu)


def test_jj0_rule_k1():
    T = TensorFockElement({((), (1,)): Series.one(0, 3)}, 4)
    out = jj0_substitute(T)
    want = Series({(0, j): -HBAR * (HBAR - HBAR.inverse())
                   for j in range(1, 4)}, 0, 3)
    assert out.coefficient((1,), ()) == want
    assert out.coefficient((), (1,)) == Series.one(0, 3)


def test_jj0_rule_k2():
    T = TensorFockElement({((), (2,)): Series.one(0, 5)}, 4)
    out = jj0_substitute(T)
    want = Series({(0, j): HBAR ** 2 * (HBAR ** 2 - HBAR ** -2)
                   for j in (2, 4)}, 0, 5)
    assert out.coefficient((2,), ()) == want


def test_jj0_fixes_first_component():
    T = TensorFockElement({((1,), ()): Series.one(0, 3)}, 4)
    assert jj0_substitute(T) == T


def test_jj0_identity_at_z_order_zero():
    T = tensor_exp({1: Series.const(T1, 0, 0)},
                   {1: Series.const(T2, 0, 0)}, 3)
    assert jj0_substitute(T) == T


def test_jj0_is_algebra_homomorphism():
    for _ in range(8):
        a, b = rand_tensor(3, 3), rand_tensor(3, 3)
        assert jj0_substitute(a * b) == jj0_substitute(a) * jj0_substitute(b)


def test_jj0_readings_differ():
    base = jj0_correction(1, 0, 3, "printed")
    alt = jj0_correction(1, 0, 3, "printed_inverse")
    assert base != alt
    with pytest.raises(ValueError):
        jj0_correction(1, 0, 3, "nonsense")


def test_project_second():
    assert project_second(
        TensorFockElement({((), (1,)): ONE}, 3)).is_zero()
    pr = project_second(TensorFockElement({((1,), ()): ONE}, 3))
    assert pr.coefficient((1,)) == ONE
