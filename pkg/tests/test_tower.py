import random

import pytest

from zkcompare.algebra import BN_BASE_P, Fq2, Fq6, Fq12, tower_arith

P = BN_BASE_P.modulus


def rand_fq2(rng):
    return Fq2(rng.randrange(P), rng.randrange(P))


def rand_fq6(rng):
    return Fq6(rand_fq2(rng), rand_fq2(rng), rand_fq2(rng))


def rand_fq12(rng):
    return Fq12(rand_fq6(rng), rand_fq6(rng))


MAKERS = [rand_fq2, rand_fq6, rand_fq12]


@pytest.mark.parametrize("make", MAKERS, ids=["fq2", "fq6", "fq12"])
def test_square_of_one(make):
    one = type(make(random.Random(0))).one()
    assert tower_arith(one, None, "square") == one


@pytest.mark.parametrize("make", MAKERS, ids=["fq2", "fq6", "fq12"])
def test_inverse_and_ring_laws(make):
    rng = random.Random(5)
    for _ in range(10):
        a, b, c = make(rng), make(rng), make(rng)
        one = type(a).one()
        assert tower_arith(a, tower_arith(a, None, "inv"), "mul") == one
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert a.square() == a * a


def test_u_squared_is_minus_one():
    u = Fq2(0, 1)
    assert u * u == Fq2(P - 1, 0)


def test_v_cubed_is_xi():
    z = Fq2.zero()
    v = Fq6(z, Fq2.one(), z)
    assert v * v * v == Fq6(Fq2(9, 1), z, z)


def test_w_squared_is_v():
    w = Fq12(Fq6.zero(), Fq6.one())
    z = Fq2.zero()
    assert w * w == Fq12(Fq6(z, Fq2.one(), z), Fq6.zero())


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        Fq12.zero().inverse()


def test_group_order_identity():
    rng = random.Random(11)
    a = rand_fq12(rng)
    t = tower_arith(a, P**6 - 1, "exp")
    assert tower_arith(t, P**6 + 1, "exp").is_one()


def test_frobenius_is_pth_power():
    a = rand_fq12(random.Random(3))
    assert a.frobenius(1) == a**P
    assert a.frobenius(2) == a.frobenius(1).frobenius(1)
    assert a.frobenius(12) == a


def test_conjugate_is_p6_power_on_fq12():
    a = rand_fq12(random.Random(8))
    assert a.conjugate() == a.frobenius(6)


def test_level_mismatch_rejected():
    rng = random.Random(1)
    with pytest.raises(ValueError):
        tower_arith(rand_fq2(rng), rand_fq6(rng), "add")
