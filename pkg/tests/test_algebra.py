"""Ternary bracket, its determinant oracle, and the identity checker."""

import pytest
from hypothesis import given, settings, strategies as st

from nambu3.algebra import (AlgElem, L, M, assoc_mul, basis_elem, bracket,
                            bracket_det, bracket_keys, check_fundamental,
                            delta, omega)
from nambu3.errors import IndexOverflow
from nambu3.scalar import LAMBDA, Scalar


def E(key):
    return basis_elem(key)


def keys(lo=-3, hi=3):
    return [L(i) for i in range(lo, hi + 1)] + [M(i) for i in range(lo, hi + 1)]


small_keys = st.sampled_from(keys(-2, 2))


@st.composite
def elems(draw):
    acc = AlgElem.zero()
    for _ in range(draw(st.integers(1, 3))):
        acc = acc + AlgElem.term(draw(small_keys), draw(st.integers(-4, 4)))
    return acc


# -- associative product, grading, involution ------------------------------


def test_product_table():
    assert assoc_mul(E(L(2)), E(L(3))) == E(L(5))
    assert assoc_mul(E(M(2)), E(M(-5))) == E(M(-3))
    assert assoc_mul(E(L(2)), E(M(3))).is_zero
    assert assoc_mul(E(M(0)), E(L(1))).is_zero


def test_delta_scales_by_index():
    assert delta(E(L(3))) == E(L(3)) * 3
    assert delta(E(M(-2))) == E(M(-2)) * (-2)
    assert delta(E(L(0))).is_zero


def test_omega_swaps_kind_and_negates_index():
    assert omega(E(L(3))) == E(M(-3))
    assert omega(E(M(-1))) == E(L(1))


@given(small_keys)
def test_omega_is_an_involution(k):
    assert omega(omega(E(k))) == E(k)


@given(small_keys)
def test_delta_omega_anticommute(k):
    x = E(k)
    assert (delta(omega(x)) + omega(delta(x))).is_zero


@given(elems(), elems())
@settings(max_examples=40)
def test_delta_is_a_product_derivation(x, y):
    lhs = delta(assoc_mul(x, y))
    rhs = assoc_mul(delta(x), y) + assoc_mul(x, delta(y))
    assert lhs == rhs


# -- bracket ----------------------------------------------------------------


def test_bracket_pinned_values():
    assert bracket(E(L(1)), E(L(2)), E(M(3))) == E(L(0))
    assert bracket(E(L(1)), E(L(1)), E(M(0))).is_zero
    assert bracket(E(L(1)), E(M(2)), E(M(5))) == E(M(6)) * 3
    assert bracket(E(L(0)), E(L(1)), E(M(0))) == E(L(1))
    assert bracket(E(L(1)), E(L(2)), E(L(3))).is_zero
    assert bracket(E(M(1)), E(M(2)), E(M(3))).is_zero


def test_bracket_structure_constants():
    for r in range(-2, 3):
        for s in range(-2, 3):
            for t in range(-2, 3):
                got = bracket(E(L(r)), E(L(s)), E(M(t)))
                assert got == E(L(r + s - t)) * (s - r)
                got = bracket(E(L(r)), E(M(s)), E(M(t)))
                assert got == E(M(s + t - r)) * (t - s)


@given(small_keys, small_keys, small_keys)
def test_bracket_total_antisymmetry(a, b, c):
    x, y, z = E(a), E(b), E(c)
    base = bracket(x, y, z)
    assert bracket(y, x, z) == -base
    assert bracket(x, z, y) == -base
    assert bracket(z, y, x) == -base


def test_bracket_is_trilinear_over_scalars():
    lam = Scalar(LAMBDA)
    x = E(L(1)) * lam + E(M(0)) * 2
    got = bracket(x, E(L(2)), E(M(3)))
    expected = (bracket(E(L(1)), E(L(2)), E(M(3))) * lam
                + bracket(E(M(0)), E(L(2)), E(M(3))) * 2)
    assert got == expected


# -- determinant oracle -------------------------------------------------------


@given(small_keys, small_keys, small_keys)
@settings(max_examples=200)
def test_det_oracle_agrees_on_keys(a, b, c):
    assert bracket(E(a), E(b), E(c)) == bracket_det(E(a), E(b), E(c))


@given(elems(), elems(), elems())
@settings(max_examples=40)
def test_det_oracle_agrees_on_combinations(x, y, z):
    assert bracket(x, y, z) == bracket_det(x, y, z)


def test_det_oracle_pinned():
    assert bracket_det(E(L(1)), E(L(2)), E(M(3))) == E(L(0))
    assert bracket_det(E(L(1)), E(M(2)), E(M(5))) == E(M(6)) * 3


# -- fundamental identity checker ---------------------------------------------


def test_fundamental_identity_small_window():
    report = check_fundamental(range(-1, 2))
    assert report.passed
    assert report.cases == 6 ** 5


def test_fundamental_identity_parallel_matches_serial():
    serial = check_fundamental(range(-1, 2), parallelism=1)
    parallel = check_fundamental(range(-1, 2), parallelism=2)
    assert serial.passed and parallel.passed
    assert serial.cases == parallel.cases


def test_fault_injection_is_detected():
    def skewed(k1, k2, k3):
        hit = bracket_keys(k1, k2, k3)
        if hit is None:
            return None
        c, key = hit
        # corrupt one structure constant family by an index shift
        if key.kind == "L":
            return c, L(key.index + 1)
        return c, key

    report = check_fundamental(range(-1, 2), key_bracket=skewed)
    assert not report.passed
    entry = report.entries[0]
    assert entry.axiom == "fundamental-identity"
    assert not entry.defect.is_zero


def test_index_overflow_guard():
    with pytest.raises(IndexOverflow):
        L(1 << 41)
    with pytest.raises(IndexOverflow):
        assoc_mul(E(L(1 << 40)), E(L(1)))


def test_report_is_deterministic():
    r1 = check_fundamental(range(-1, 2))
    r2 = check_fundamental(range(-1, 2))
    assert [e.record() for e in r1.entries] == [e.record() for e in r2.entries]
    assert r1.summary() == r2.summary()


# -- element formatting (the CLI prints these) ---------------------------------


def test_element_formatting():
    lam = Scalar(LAMBDA)
    assert str(E(L(0))) == "L[0]"
    assert str(E(M(6)) * 3) == "3 M[6]"
    assert str(E(M(-3)) * -1) == "-1 M[-3]"
    assert str(AlgElem.zero()) == "0"
    assert str(E(L(0)) * (lam + 1)) == "(lam + 1) L[0]"
    assert str(E(L(0)) * lam) == "lam L[0]"
    assert str(E(L(1)) - E(M(2)) * 2) == "L[1] - 2 M[2]"
