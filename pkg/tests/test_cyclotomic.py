import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twisted_rings.cyclotomic import (
    CycInt,
    RootOfUnity,
    SUPPORTED_CONDUCTORS,
    galois_apply,
    is_root_of_unity,
    root_of_unity_order_brute,
    root_to_cyc,
)
from twisted_rings.errors import CapExceededError


def test_norm_identity_gaussian():
    i = CycInt.zeta(4)
    assert (1 + i) * (1 - i) == CycInt.integer(2, 4)


def test_third_root_relation():
    z = CycInt.zeta(3)
    assert z * z + z + 1 == CycInt.integer(0, 3)


def test_i_squared():
    i = CycInt.zeta(4)
    assert i * i == CycInt.integer(-1, 4)


def test_cross_conductor_coercion():
    # one modulus divides the other
    two = CycInt.integer(2, 1)
    z6 = CycInt.zeta(6)
    assert (two * z6).m == 6
    # lcm within the supported range
    z8 = CycInt.zeta(8)
    z3 = CycInt.zeta(3)
    assert (z8 * z3).m == 24


def test_embedding_consistency():
    assert CycInt.zeta(2).embed(4) == CycInt.zeta(4, 2)
    assert CycInt.zeta(3).embed(6) == CycInt.zeta(6, 2)
    assert CycInt.integer(7, 1) == CycInt.integer(7, 24)


coeff = st.integers(min_value=-8, max_value=8)
conductors = st.sampled_from(SUPPORTED_CONDUCTORS)


@st.composite
def cyc_ints(draw, m=None):
    from twisted_rings.cyclotomic import PHI_DEGREE

    mm = m if m is not None else draw(conductors)
    vec = draw(
        st.lists(coeff, min_size=PHI_DEGREE[mm], max_size=PHI_DEGREE[mm])
    )
    return CycInt(mm, tuple(vec))


@given(conductors.flatmap(lambda m: st.tuples(cyc_ints(m), cyc_ints(m), cyc_ints(m))))
@settings(max_examples=60, deadline=None)
def test_ring_axioms(triple):
    a, b, c = triple
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a


@given(conductors.flatmap(lambda m: st.tuples(cyc_ints(m), cyc_ints(m))), st.integers(1, 23))
@settings(max_examples=60, deadline=None)
def test_galois_is_ring_morphism(pair, j):
    from math import gcd

    a, b = pair
    if gcd(j, a.m) != 1:
        with pytest.raises(ValueError):
            galois_apply(a, j)
        return
    assert galois_apply(a * b, j) == galois_apply(a, j) * galois_apply(b, j)
    assert galois_apply(a + b, j) == galois_apply(a, j) + galois_apply(b, j)
    assert galois_apply(a, 1) == a


def test_galois_conjugation_on_i():
    i = CycInt.zeta(4)
    assert galois_apply(i, 3) == -i


def test_galois_fixes_rationals():
    for m in (4, 6, 8):
        x = CycInt.integer(-5, m)
        assert galois_apply(x, m - 1) == x


def test_galois_involution_on_sixth_roots():
    z = CycInt.zeta(6)
    assert galois_apply(z, 5) == z**5
    assert galois_apply(galois_apply(z, 5), 5) == z


def test_root_recognition_examples():
    assert is_root_of_unity(CycInt.integer(-1, 1)) == RootOfUnity(2, 1)
    assert is_root_of_unity(CycInt.integer(2, 1)) is None
    assert is_root_of_unity(CycInt.zeta(6)) == RootOfUnity(6, 1)
    assert is_root_of_unity(CycInt.integer(0, 4)) is None
    assert is_root_of_unity(CycInt.zeta(6, 2)) == RootOfUnity(3, 1)


def test_root_recognition_matches_brute_force():
    for m in (1, 2, 3, 4, 6, 8):
        span = 2 * m
        for k in range(span):
            for sign in (1, -1):
                x = CycInt.zeta(m, k % m) * sign
                fancy = is_root_of_unity(x)
                brute = root_of_unity_order_brute(x)
                assert fancy is not None and brute == fancy.order
    # non-roots agree too
    for value in (CycInt.integer(3, 4), CycInt.zeta(4) + 1):
        assert is_root_of_unity(value) is None
        assert root_of_unity_order_brute(value) is None


def test_root_of_unity_multiplication():
    a = RootOfUnity(4, 1)
    b = RootOfUnity(6, 1)
    assert (a * b).to_cyc() == CycInt.zeta(12, 5)
    assert a.inverse().to_cyc(4) == CycInt.zeta(4, 3)


def test_root_to_cyc_handles_minus_one_in_z():
    assert root_to_cyc(2, 1, 1) == CycInt.integer(-1, 1)
    assert root_to_cyc(2, 0, 1) == CycInt.integer(1, 1)
    assert root_to_cyc(6, 1, 3) == CycInt.zeta(6).embed(6) == CycInt.zeta(6)
    assert root_to_cyc(6, 1, 3).embed(6) == CycInt.zeta(6)
    with pytest.raises(ValueError):
        root_to_cyc(4, 1, 3)


def test_unsupported_conductor_rejected():
    with pytest.raises(CapExceededError):
        CycInt.integer(1, 5)
    with pytest.raises(CapExceededError):
        CycInt.zeta(16)
