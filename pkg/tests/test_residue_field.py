import pytest
from hypothesis import given
from hypothesis import strategies as st

from valuata.errors import UsageError
from valuata.residue_field import GF, RatFunc

F2 = GF(2)
F3 = GF(3)
F4 = GF(2, 2)
F9 = GF(3, 2)
R2 = RatFunc(GF(2))
R3 = RatFunc(GF(3))


def gf_elts(field):
    return st.builds(field.elt,
                     st.lists(st.integers(0, field.p - 1),
                              min_size=field.m, max_size=field.m))


def test_prime_field_arithmetic():
    two = F3.from_int(2)
    assert str(two + two) == "1"
    assert str(two * two) == "1"
    assert str(-two) == "1"
    assert str(F3.inv(two)) == "2"


def test_gf4_multiplication_table():
    w = F4.gen()
    one = F4.one()
    # the generator satisfies w^2 = w + 1
    assert w * w == w + one
    assert w * (w + one) == one
    assert F4.inv(w) == w + one


def test_gf9_frobenius_fixes_prime_field():
    for n in range(3):
        c = F9.from_int(n)
        assert F9.frobenius(c) == c
    g = F9.gen()
    assert F9.frobenius(g) != g
    assert F9.frobenius(F9.frobenius(g)) == g


def test_pth_root_exists_everywhere_in_gf():
    # finite fields are perfect: frobenius is onto
    for field in (F2, F3, F4, F9):
        for a in field.elements():
            r = field.pth_root(a)
            assert r is not None
            assert field.frobenius(r) == a


def test_artin_schreier_image_of_prime_field_is_zero():
    # x**p - x vanishes identically on GF(p)
    assert F2.artin_schreier_preimage(F2.one()) is None
    assert F3.artin_schreier_preimage(F3.from_int(1)) is None
    assert F3.artin_schreier_preimage(F3.from_int(2)) is None
    assert F2.artin_schreier_preimage(F2.zero()) is not None


def test_artin_schreier_preimage_in_gf4():
    w = F4.gen()
    one = F4.one()
    # w^2 + w = 1, so 1 has preimage w and w itself has none
    pre = F4.artin_schreier_preimage(one)
    assert pre is not None
    assert F4.frobenius(pre) - pre == one
    assert F4.artin_schreier_preimage(w) is None


def test_nonprime_modulus_rejected():
    with pytest.raises(UsageError):
        GF(4)


def test_ratfunc_arithmetic_reduces():
    y = R2.gen()
    one = R2.one()
    a = (y + one) * y
    b = y
    q = a * R2.inv(b)
    assert q == y + one
    assert str(q) == "y + 1"


def test_ratfunc_pth_root_detects_imperfection():
    y = R2.gen()
    assert R2.pth_root(y) is None
    assert R2.pth_root(y * y) == y
    sq = (y + R2.one()) ** 2
    assert R2.pth_root(sq) == y + R2.one()


def test_ratfunc_pth_root_of_fraction():
    y = R3.gen()
    a = (y ** 3) * R3.inv((y + R3.one()) ** 3)
    root = R3.pth_root(a)
    assert root is not None
    assert root ** 3 == a


def test_ratfunc_artin_schreier_preimage():
    y = R2.gen()
    # x = y solves x^2 - x = y^2 + y
    c = y * y + y
    x = R2.artin_schreier_preimage(c)
    assert x is not None
    assert R2.frobenius(x) - x == c
    # y itself is not in the image
    assert R2.artin_schreier_preimage(y) is None


def test_ratfunc_artin_schreier_preimage_p3():
    y = R3.gen()
    c = R3.frobenius(y) - y
    x = R3.artin_schreier_preimage(c)
    assert x is not None
    assert R3.frobenius(x) - x == c


@given(gf_elts(F9), gf_elts(F9))
def test_gf_frobenius_is_additive(a, b):
    assert F9.frobenius(a + b) == F9.frobenius(a) + F9.frobenius(b)


@given(gf_elts(F4), gf_elts(F4), gf_elts(F4))
def test_gf_distributivity(a, b, c):
    assert a * (b + c) == a * b + a * c


@given(gf_elts(F9))
def test_gf_inverse(a):
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            F9.inv(a)
    else:
        assert F9.inv(a) * a == F9.one()
