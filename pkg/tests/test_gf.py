import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hecc.errors import BadDegreeError, BothZeroError, NotPrimitiveError, ZeroPolynomialError
from hecc.gf import DEFAULT_PRIM_POLY, GF2m

from oracles import clmul_mod


FIELDS = [GF2m(m) for m in (2, 3, 4, 5, 8)]


def elem(gf):
    return st.integers(0, gf.q - 1)


@pytest.mark.parametrize("gf", FIELDS, ids=lambda g: f"m{g.m}")
def test_mul_matches_carryless_oracle(gf):
    rng = np.random.default_rng(gf.m)
    for x, y in rng.integers(0, gf.q, size=(500, 2)):
        assert gf.mul(int(x), int(y)) == clmul_mod(int(x), int(y), gf.m, gf.prim_poly)


def test_gf16_power_table(gf16):
    # beta^4 = beta + 1 for X^4 + X + 1
    assert [gf16.exp(i) for i in range(6)] == [1, 2, 4, 8, 3, 6]
    assert gf16.exp(15) == 1
    assert gf16.mul(gf16.exp(10), gf16.exp(5)) == 1


def test_every_default_polynomial_is_primitive():
    for m in range(1, 17):
        gf = GF2m(m)
        assert gf.prim_poly == DEFAULT_PRIM_POLY[m]
        assert sorted(gf.exp(i) for i in range(gf.order)) == list(range(1, gf.q))


@given(st.data())
@settings(max_examples=200)
def test_field_axioms(data):
    gf = data.draw(st.sampled_from(FIELDS))
    x, y, z = (data.draw(elem(gf)) for _ in range(3))
    assert gf.mul(x, y) == gf.mul(y, x)
    assert gf.mul(x, gf.mul(y, z)) == gf.mul(gf.mul(x, y), z)
    assert gf.mul(x, y ^ z) == gf.mul(x, y) ^ gf.mul(x, z)
    assert gf.add(x, x) == 0
    assert gf.sub(x, y) == gf.add(x, y)
    if y:
        assert gf.mul(gf.div(x, y), y) == x
        assert gf.mul(y, gf.inv(y)) == 1


@given(st.data())
def test_pow_and_log(data):
    gf = data.draw(st.sampled_from(FIELDS))
    x = data.draw(st.integers(1, gf.q - 1))
    e = data.draw(st.integers(-40, 40))
    expect = 1
    base = x if e >= 0 else gf.inv(x)
    for _ in range(abs(e)):
        expect = gf.mul(expect, base)
    assert gf.pow(x, e) == expect
    assert gf.exp(gf.log(x)) == x


def test_zero_cases(gf16):
    assert gf16.pow(0, 0) == 1
    assert gf16.pow(0, 3) == 0
    with pytest.raises(ZeroDivisionError):
        gf16.inv(0)
    with pytest.raises(ZeroDivisionError):
        gf16.div(3, 0)
    with pytest.raises(ZeroDivisionError):
        gf16.log(0)
    with pytest.raises(ZeroDivisionError):
        gf16.pow(0, -1)


def test_bad_fields():
    with pytest.raises(BadDegreeError):
        GF2m(0)
    with pytest.raises(BadDegreeError):
        GF2m(17)
    with pytest.raises(BadDegreeError):
        GF2m(4, 0x0B)  # degree 3
    with pytest.raises(NotPrimitiveError):
        GF2m(4, 0x1F)  # X^4+X^3+X^2+X+1 is irreducible, order 5
    with pytest.raises(NotPrimitiveError):
        GF2m(4, 0x15)  # reducible


def test_fmt(gf16):
    assert gf16.fmt(0) == "0"
    assert gf16.fmt(1) == "1"
    assert gf16.fmt(gf16.exp(7)) == "b^7"


def test_numpy_helpers_agree_with_scalars(gf256):
    rng = np.random.default_rng(1)
    x = rng.integers(0, 256, 1000)
    y = rng.integers(0, 256, 1000)
    expect = [gf256.mul(int(a), int(b)) for a, b in zip(x, y)]
    assert gf256.vmul(x, y).tolist() == expect
    assert gf256.vscale(x, 0x53).tolist() == [gf256.mul(int(a), 0x53) for a in x]
    assert gf256.vscale(x, 0).tolist() == [0] * 1000
    table = gf256.mul_table
    assert table[x, y].tolist() == expect


def test_mul_table_refuses_large_fields():
    with pytest.raises(ValueError):
        GF2m(9).mul_table


# ---------------------------------------------------------------- polynomials

def poly_strategy(gf, max_deg=6):
    return st.lists(st.integers(0, gf.q - 1), max_size=max_deg + 1).map(tuple)


@given(st.data())
@settings(max_examples=150)
def test_divmod_identity(data):
    gf = GF2m(4)
    a = data.draw(poly_strategy(gf))
    b = gf.poly_trim(data.draw(poly_strategy(gf)))
    if not b:
        b = (1,)
    q, r = gf.poly_divmod(a, b)
    assert gf.poly_add(gf.poly_mul(q, b), r) == gf.poly_trim(a)
    assert r == () or gf.poly_deg(r) < gf.poly_deg(b)


@given(st.data())
@settings(max_examples=100)
def test_gcd_divides_both(data):
    gf = GF2m(4)
    common = data.draw(st.lists(st.integers(0, 15), max_size=3))
    ra = data.draw(st.lists(st.integers(0, 15), max_size=3))
    rb = data.draw(st.lists(st.integers(0, 15), max_size=3))
    a = gf.poly_from_roots(common + ra)
    b = gf.poly_from_roots(common + rb)
    g = gf.poly_gcd(a, b)
    assert g[-1] == 1
    assert gf.poly_divmod(a, g)[1] == ()
    assert gf.poly_divmod(b, g)[1] == ()
    assert gf.poly_deg(g) >= len(set(common))


def test_gcd_edge_cases(gf16):
    with pytest.raises(BothZeroError):
        gf16.poly_gcd((), (0, 0))
    p = (gf16.exp(3), gf16.exp(5))
    assert gf16.poly_gcd(p, ()) == gf16.poly_monic(p)


def test_roots_and_separability(gf16):
    b = gf16.exp
    p = gf16.poly_from_roots([b(2), b(9)])
    # (X - b^2)(X - b^9) = X^2 + b^11 X + b^11
    assert p == (b(11), b(11), 1)
    assert gf16.poly_roots_in_set(p, range(16)) == {b(2), b(9)}
    assert gf16.poly_is_separable(p)
    assert not gf16.poly_is_separable(gf16.poly_from_roots([b(3), b(3)]))
    assert not gf16.poly_is_separable(())
    with pytest.raises(ZeroPolynomialError):
        gf16.poly_roots_in_set((), range(16))


def test_derivative_char2(gf16):
    # d/dX (c0 + c1 X + c2 X^2 + c3 X^3) = c1 + c3 X^2
    assert gf16.poly_derivative((5, 6, 7, 8)) == (6, 0, 8)
    assert gf16.poly_derivative((5, 0, 7)) == ()


def test_eval_matches_horner(gf16):
    p = (3, 0, 7, 1)
    for x in range(16):
        direct = 3 ^ gf16.mul(7, gf16.pow(x, 2)) ^ gf16.pow(x, 3)
        assert gf16.poly_eval(p, x) == direct


def test_poly_fmt(gf16):
    b = gf16.exp
    assert gf16.poly_fmt(()) == "0"
    assert gf16.poly_fmt((b(11), b(11), 1)) == "X^2 + b^11*X + b^11"
