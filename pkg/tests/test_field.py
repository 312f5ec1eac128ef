from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from syzlab.errors import NoSuchRoot, NotPrime, OutOfRange
from syzlab.field import (PrimeField, is_prime, make_prime_field, root_of_unity,
                          sample_verification_primes)


def trial_division(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def test_mersenne_accepted():
    assert make_prime_field(2**31 - 1).p == 2**31 - 1


def test_even_rejected():
    with pytest.raises(NotPrime):
        make_prime_field(2**21)


def test_small_prime_above_boundary_accepted():
    assert trial_division(1048583)
    assert make_prime_field(1048583).p == 1048583


def test_out_of_range():
    with pytest.raises(OutOfRange):
        make_prime_field(1048573)
    with pytest.raises((OutOfRange, NotPrime)):
        make_prime_field(2**31 + 11)


@given(st.integers(0, 200000))
def test_is_prime_matches_trial_division(n):
    assert is_prime(n) == trial_division(n)


def test_sampled_primes_congruences():
    (F,) = sample_verification_primes(1, congruence=6)
    assert F.p % 6 == 1 and 2**30 <= F.p < 2**31 and trial_division(F.p)
    (G,) = sample_verification_primes(1, congruence=8)
    assert G.p % 8 == 1 and is_prime(G.p)
    a, b = sample_verification_primes(2)
    assert a.p != b.p


def test_sampling_is_seeded():
    assert sample_verification_primes(3, seed=5) == sample_verification_primes(3, seed=5)
    assert sample_verification_primes(1, seed=5) != sample_verification_primes(1, seed=6)


@pytest.mark.parametrize("p,order", [(13, 4), (7, 6), (13, 12), (13, 2)])
def test_root_of_unity_has_exact_order(p, order):
    F = PrimeField(p)
    z = root_of_unity(F, order)
    assert pow(z, order, p) == 1
    assert all(pow(z, k, p) != 1 for k in range(1, order))


def test_root_of_unity_missing():
    with pytest.raises(NoSuchRoot):
        root_of_unity(PrimeField(13), 8)


@settings(max_examples=50)
@given(st.integers(1, 2**31 - 2), st.integers(1, 2**31 - 2))
def test_field_axioms(a, b):
    F = PrimeField(2**31 - 1)
    assert F.mul(a, F.inv(a)) == 1
    assert F.add(F.sub(a, b), b) == a % F.p
    assert F.div(F.mul(a, b), b) == a % F.p
    assert F.add(a, F.neg(a)) == 0


def test_reduce_fraction():
    F = PrimeField(13)
    assert F.reduce(Fraction(1, 2)) == 7
    assert F.reduce(-1) == 12
    assert F.signed(12) == -1
