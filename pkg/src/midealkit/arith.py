"""Integer factorization and exponent-vector arithmetic.

An ideal ``(d)`` of ``Z_n`` with ``n = p_1^m_1 ... p_k^m_k`` is named by the
exponent vector ``(e_1, ..., e_k)`` of ``gcd(d, n)``.  Intersection of ideals
is the componentwise maximum of exponents, sum is the componentwise minimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

from .errors import DomainError

FACTORIZE_LIMIT = 10**12

ExponentVector = tuple  # tuple[int, ...]

# wheel modulo 30: offsets of residues coprime to 30 after 7
_WHEEL_STEPS = (4, 2, 4, 2, 4, 6, 2, 6)


def _trial_divisors() -> Iterator[int]:
    yield 2
    yield 3
    yield 5
    d = 7
    while True:
        for step in _WHEEL_STEPS:
            yield d
            d += step


def is_prime(n: int) -> bool:
    """Deterministic primality by trial division."""
    if n < 2:
        return False
    for d in _trial_divisors():
        if d * d > n:
            return True
        if n % d == 0:
            return n == d
    return True  # pragma: no cover


@dataclass(frozen=True)
class FactoredInteger:
    value: int
    factors: tuple  # ((p, m), ...) with p strictly increasing

    def __post_init__(self):
        if self.value < 2:
            raise DomainError(f"expected an integer >= 2, got {self.value}")
        prev = 1
        acc = 1
        for p, m in self.factors:
            if p <= prev or m < 1 or not is_prime(p):
                raise DomainError(f"malformed factor list {self.factors!r}")
            prev = p
            acc *= p**m
        if acc != self.value:
            raise DomainError(f"factors {self.factors!r} do not multiply to {self.value}")

    @property
    def primes(self) -> tuple:
        return tuple(p for p, _ in self.factors)

    @property
    def exponents(self) -> tuple:
        return tuple(m for _, m in self.factors)

    @property
    def k(self) -> int:
        return len(self.factors)

    def is_squarefree(self) -> bool:
        return all(m == 1 for m in self.exponents)

    def is_prime(self) -> bool:
        return self.factors[0][1] == 1 and len(self.factors) == 1

    def check(self, e: Sequence[int]) -> ExponentVector:
        """Validate ``e`` against this modulus and return it as a tuple."""
        e = tuple(int(x) for x in e)
        if len(e) != self.k:
            raise DomainError(f"exponent vector {e} has length {len(e)}, expected {self.k}")
        for x, m in zip(e, self.exponents):
            if not 0 <= x <= m:
                raise DomainError(f"exponent vector {e} out of bounds for {self.value}")
        return e

    def generator(self, e: Sequence[int]) -> int:
        """Display generator ``prod p_i^e_i``; the zero ideal is shown as 0."""
        e = self.check(e)
        if e == self.exponents:
            return 0
        return math.prod(p**x for p, x in zip(self.primes, e))

    def exponents_of(self, d: int) -> ExponentVector:
        """Exponent vector of the ideal ``(d)`` of ``Z_n``, i.e. of ``gcd(d, n)``."""
        g = math.gcd(int(d), self.value)
        out = []
        for p, m in self.factors:
            x = 0
            while x < m and g % p == 0:
                g //= p
                x += 1
            out.append(x)
        return tuple(out)

    def zero_vector(self) -> ExponentVector:
        return self.exponents

    def whole_vector(self) -> ExponentVector:
        return (0,) * self.k

    def vectors(self) -> Iterator[ExponentVector]:
        return product(*(range(m + 1) for m in self.exponents))


def factorize(n: int) -> FactoredInteger:
    """Sorted prime factorization of ``n`` by wheel trial division."""
    if isinstance(n, bool) or not isinstance(n, int):
        raise DomainError(f"expected an int, got {n!r}")
    if n < 2:
        raise DomainError(f"cannot factorize {n}: need n >= 2")
    if n > FACTORIZE_LIMIT:
        raise DomainError(f"{n} exceeds the factorization limit {FACTORIZE_LIMIT}")
    rest = n
    factors = []
    for d in _trial_divisors():
        if d * d > rest:
            break
        if rest % d == 0:
            m = 0
            while rest % d == 0:
                rest //= d
                m += 1
            factors.append((d, m))
    if rest > 1:
        factors.append((rest, 1))
    return FactoredInteger(n, tuple(factors))


def _same_length(a, b):
    if len(a) != len(b):
        raise DomainError(f"exponent vectors {tuple(a)} and {tuple(b)} differ in length")


def vec_meet(a: Sequence[int], b: Sequence[int]) -> ExponentVector:
    """Intersection of two ideals: componentwise maximum of exponents."""
    _same_length(a, b)
    return tuple(max(x, y) for x, y in zip(a, b))


def vec_join(a: Sequence[int], b: Sequence[int]) -> ExponentVector:
    """Sum of two ideals: componentwise minimum of exponents."""
    _same_length(a, b)
    return tuple(min(x, y) for x, y in zip(a, b))


def vec_leq(a: Sequence[int], b: Sequence[int]) -> bool:
    """Ideal inclusion ``a ⊆ b`` (larger exponents mean smaller ideals)."""
    _same_length(a, b)
    return all(x >= y for x, y in zip(a, b))
