import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from midealkit.arith import FactoredInteger, factorize, is_prime, vec_join, vec_leq, vec_meet
from midealkit.errors import DomainError

from oracles import divisors, naive_factor


def test_factorize_900():
    assert factorize(900).factors == ((2, 2), (3, 2), (5, 2))


def test_factorize_prime_input():
    assert factorize(2).factors == ((2, 1),)


def test_factorize_180_multiplies_back():
    f = factorize(180)
    assert f.factors == tuple(naive_factor(180))
    assert math.prod(p**m for p, m in f.factors) == 180


@pytest.mark.parametrize("bad", [1, 0, -5])
def test_factorize_rejects_small(bad):
    with pytest.raises(DomainError):
        factorize(bad)


def test_factorize_rejects_non_integers():
    with pytest.raises(DomainError):
        factorize(12.0)
    with pytest.raises(DomainError):
        factorize(True)


def test_factorize_large_semiprime():
    p, q = 999_983, 1_000_003
    assert factorize(p * q).factors == ((p, 1), (q, 1))


@given(st.integers(min_value=2, max_value=10**6))
@settings(max_examples=400)
def test_factorize_round_trip(n):
    f = factorize(n)
    assert math.prod(p**m for p, m in f.factors) == n
    primes = [p for p, _ in f.factors]
    assert primes == sorted(set(primes))
    assert all(is_prime(p) and m >= 1 for p, m in f.factors)


def test_factorize_matches_naive_exhaustively_small():
    for n in range(2, 3000):
        assert list(factorize(n).factors) == naive_factor(n)


def test_is_prime_small_table():
    assert [n for n in range(50) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


def test_factored_integer_validates():
    with pytest.raises(DomainError):
        FactoredInteger(12, ((2, 2), (3, 2)))
    with pytest.raises(DomainError):
        FactoredInteger(12, ((3, 1), (2, 2)))


def test_meet_in_z30():
    # (2) meet (15) is the zero ideal
    assert vec_meet((1, 0, 0), (0, 1, 1)) == (1, 1, 1)


def test_meet_in_z12():
    assert vec_meet((0, 1), (2, 0)) == (2, 1)


def test_join_examples_z12():
    assert vec_join((1, 1), (2, 0)) == (1, 0)
    assert vec_join((0, 1), (2, 0)) == (0, 0)


def test_join_with_whole_ring_absorbs():
    assert vec_join((2, 1), (0, 0)) == (0, 0)


@pytest.mark.parametrize("fn", [vec_meet, vec_join, vec_leq])
def test_length_mismatch_rejected(fn):
    with pytest.raises(DomainError):
        fn((1, 0), (1,))


def test_exponents_check_bounds():
    f = factorize(12)
    assert f.check((2, 1)) == (2, 1)
    with pytest.raises(DomainError):
        f.check((3, 0))
    with pytest.raises(DomainError):
        f.check((1,))


def test_generator_and_exponents_of_are_inverse():
    f = factorize(360)
    for d in divisors(360):
        e = f.exponents_of(d)
        assert f.generator(e) == (d if d < 360 else 0)


def _moduli():
    return st.integers(min_value=2, max_value=1000)


@given(_moduli(), st.data())
@settings(max_examples=300)
def test_meet_join_match_lcm_gcd(n, data):
    f = factorize(n)
    ds = divisors(n)
    a = data.draw(st.sampled_from(ds))
    b = data.draw(st.sampled_from(ds))
    ea, eb = f.exponents_of(a), f.exponents_of(b)
    lcm, gcd = math.lcm(a, b), math.gcd(a, b)
    # the zero ideal (n) is displayed with generator 0
    assert f.generator(vec_meet(ea, eb)) == (lcm if lcm < n else 0)
    assert f.generator(vec_join(ea, eb)) == (gcd if gcd < n else 0)


@given(_moduli(), st.data())
@settings(max_examples=300)
def test_bounded_distributive_lattice_axioms(n, data):
    vecs = list(factorize(n).vectors())
    a, b, c = (data.draw(st.sampled_from(vecs)) for _ in range(3))
    top, bottom = factorize(n).whole_vector(), factorize(n).zero_vector()
    assert vec_meet(a, b) == vec_meet(b, a) and vec_join(a, b) == vec_join(b, a)
    assert vec_meet(a, vec_meet(b, c)) == vec_meet(vec_meet(a, b), c)
    assert vec_join(a, vec_join(b, c)) == vec_join(vec_join(a, b), c)
    assert vec_meet(a, vec_join(a, b)) == a and vec_join(a, vec_meet(a, b)) == a
    assert vec_meet(a, vec_join(b, c)) == vec_join(vec_meet(a, b), vec_meet(a, c))
    assert vec_meet(a, top) == a and vec_join(a, bottom) == a
    assert vec_leq(a, b) == (vec_meet(a, b) == a)


def test_lattice_axioms_exhaustive_up_to_1000():
    for n in range(2, 1001):
        f = factorize(n)
        vecs = list(f.vectors())
        assert len(vecs) == len(divisors(n))
        for a in vecs:
            for b in vecs:
                m, j = vec_meet(a, b), vec_join(a, b)
                assert vec_meet(a, j) == a and vec_join(a, m) == a
                for c in vecs:
                    assert vec_meet(a, vec_join(b, c)) == vec_join(m, vec_meet(a, c))
