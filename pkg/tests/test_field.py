import random
from fractions import Fraction

import pytest

from patcoh.field import FElem, QQ, quadratic, restrict_scalars, scalar_matrix

F5 = quadratic(5)
TAU = F5.elem("1/2", "1/2")


def rand_elem(field, rng):
    a = Fraction(rng.randint(-9, 9), rng.randint(1, 7))
    b = Fraction(rng.randint(-9, 9), rng.randint(1, 7)) if field.degree == 2 else 0
    return field.elem(a, b)


def test_tau_squared_is_tau_plus_one():
    assert TAU * TAU == TAU + F5.one


def test_inverse_of_tau_is_tau_minus_one():
    assert F5.one / TAU == TAU - F5.one
    assert F5.one / TAU == F5.elem("-1/2", "1/2")


def test_rational_addition():
    assert QQ.elem("1/3") + QQ.elem("1/6") == QQ.elem("1/2")


def test_conj_of_tau():
    assert TAU.conj() == F5.elem("1/2", "-1/2")


def test_conj_is_involution():
    x = F5.elem("2/7", "-3/5")
    assert x.conj().conj() == x


def test_conj_fixes_rationals():
    assert F5.elem(5).conj() == F5.elem(5)


def test_conj_is_ring_homomorphism():
    rng = random.Random(5)
    for _ in range(40):
        x, y = rand_elem(F5, rng), rand_elem(F5, rng)
        assert (x * y).conj() == x.conj() * y.conj()
        assert (x + y).conj() == x.conj() + y.conj()


def test_field_axioms_random():
    rng = random.Random(7)
    for field in (QQ, F5):
        for _ in range(40):
            x, y, z = (rand_elem(field, rng) for _ in range(3))
            assert (x + y) + z == x + (y + z)
            assert (x * y) * z == x * (y * z)
            assert x * (y + z) == x * y + x * z
            if x:
                assert x * x.inverse() == field.one


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        F5.one / F5.zero


def test_field_mismatch():
    with pytest.raises(ValueError):
        F5.one + QQ.one


def test_irrational_component_over_q_rejected():
    with pytest.raises(ValueError):
        FElem(Fraction(1), Fraction(1), QQ)


def test_non_squarefree_discriminant_rejected():
    with pytest.raises(ValueError):
        quadratic(12)
    with pytest.raises(ValueError):
        quadratic(1)


def test_restrict_scalars_examples():
    assert restrict_scalars((TAU,)) == (Fraction(1, 2), Fraction(1, 2))
    sigma = TAU.conj()
    assert restrict_scalars((F5.one, sigma, F5.zero)) == (
        Fraction(1), Fraction(0), Fraction(1, 2), Fraction(-1, 2),
        Fraction(0), Fraction(0))
    assert restrict_scalars((QQ.elem("1/3"), QQ.elem(2))) == (
        Fraction(1, 3), Fraction(2))


def test_restrict_scalars_q_linearity():
    rng = random.Random(11)
    for _ in range(25):
        lam = rand_elem(F5, rng)
        x = [rand_elem(F5, rng) for _ in range(3)]
        y = [rand_elem(F5, rng) for _ in range(3)]
        lhs = restrict_scalars([a + lam * b for a, b in zip(x, y)])
        mat = scalar_matrix(lam)
        ry = restrict_scalars(y)
        rx = restrict_scalars(x)
        rhs = []
        for i in range(3):
            pair = ry[2 * i: 2 * i + 2]
            for row in mat:
                rhs.append(sum(r * p for r, p in zip(row, pair)))
        assert list(lhs) == [a + b for a, b in zip(rx, rhs)]
