from __future__ import annotations

import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rtlens.cyclo import CycNum, RootOfUnitySpec, cyclotomic_poly, embed, q_power
from rtlens.errors import InvalidAutomorphismError, OrderMismatchError

ORDERS = [5, 7, 9, 11, 15, 25]


def elements(order):
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.lists(coeff, min_size=order, max_size=order).map(lambda c: CycNum.from_coeffs(order, c))


def numeric(x: CycNum, c: int = 1) -> complex:
    # oracle: evaluate the raw vector directly at a primitive root
    w = cmath.exp(2j * math.pi * c / x.order)
    return sum(a * w ** j for j, a in enumerate(x.num)) / x.den


@pytest.mark.parametrize("n,expected", [(1, (-1, 1)), (3, (1, 1, 1)), (9, (1, 0, 0, 1, 0, 0, 1)),
                                        (15, (1, -1, 0, 1, -1, 1, 0, -1, 1))])
def test_cyclotomic_poly(n, expected):
    assert cyclotomic_poly(n) == expected


def test_phi_degree_is_totient():
    for n in range(1, 60):
        totient = sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)
        assert len(cyclotomic_poly(n)) - 1 == totient


@pytest.mark.parametrize("N", ORDERS)
def test_sum_of_primitive_powers(N):
    # sum of q^k over k coprime to N is the Moebius function of N
    total = sum((q_power(N, k) for k in range(N) if math.gcd(k, N) == 1), CycNum.zero(N))
    mu = {5: -1, 7: -1, 9: 0, 11: -1, 15: 1, 25: 0}[N]
    assert total == mu


@pytest.mark.parametrize("N", ORDERS)
def test_q_to_the_n(N):
    q = q_power(N, 1)
    assert q ** N == 1
    assert q ** -1 == q_power(N, N - 1)
    assert q.shift(3) == q_power(N, 4)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(ORDERS).flatmap(lambda n: st.tuples(elements(n), elements(n), elements(n))))
def test_ring_axioms(triple):
    a, b, c = triple
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == 0
    assert abs(numeric(a * b) - numeric(a) * numeric(b)) < 1e-6 * (1 + abs(numeric(a) * numeric(b)))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([5, 7, 9, 15]).flatmap(elements))
def test_inverse(a):
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            a.inv()
        return
    assert a * a.inv() == 1


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(ORDERS).flatmap(lambda n: st.tuples(elements(n), elements(n))),
       st.integers(1, 60))
def test_galois_is_ring_hom(pair, k):
    a, b = pair
    N = a.order
    if math.gcd(k, N) != 1:
        with pytest.raises(InvalidAutomorphismError):
            a.galois(k)
        return
    assert (a * b).galois(k) == a.galois(k) * b.galois(k)
    assert (a + b).galois(k) == a.galois(k) + b.galois(k)
    assert abs(numeric(a.galois(k)) - numeric(a, k)) < 1e-6 * (1 + abs(numeric(a, k)))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(ORDERS).flatmap(elements))
def test_canonical_form_matches_numeric(a):
    assert abs(a.embed(1) - numeric(a)) < 1e-9 * (1 + abs(numeric(a)))
    assert CycNum.from_json(a.to_json()) == a
    assert hash(CycNum.from_json(a.to_json())) == hash(a)


def test_redundant_vectors_are_equal():
    N = 7
    all_ones = CycNum(N, [1] * N)
    assert all_ones == 0 and all_ones.is_zero()
    assert hash(all_ones) == hash(CycNum.zero(N))


def test_norm_and_real():
    N = 11
    q = q_power(N, 1)
    two_cos = q + q.conj()
    assert two_cos.is_real() and not q.is_real()
    assert (q - 1).norm() == 11  # Phi_11(1)
    assert (q * q.conj()) == 1


def test_rational_coercion():
    import numpy as np

    x = CycNum.from_rational(9, Fraction(3, 4))
    assert x == Fraction(3, 4)
    assert x * np.int64(4) == 3
    assert x.is_rational()


def test_order_mismatch():
    with pytest.raises(OrderMismatchError):
        q_power(5, 1) + q_power(7, 1)
    with pytest.raises(OrderMismatchError):
        embed(q_power(5, 1), RootOfUnitySpec(7))


def test_embedding_spec():
    x = q_power(7, 1)
    assert abs(embed(x, RootOfUnitySpec(7, 3)) - cmath.exp(6j * math.pi / 7)) < 1e-12
    with pytest.raises(InvalidAutomorphismError):
        RootOfUnitySpec(9, 3)


def test_json_shape():
    obj = CycNum.from_coeffs(5, [Fraction(1, 2), 0, -3]).to_json()
    assert obj == {"order": 5, "coeffs": ["1/2", "0/1", "-3/1", "0/1"]}
