"""Word-size prime fields GF(p) and the helpers that choose them.

Field elements are plain ``int`` residues in ``[0, p)``; :class:`PrimeField`
carries the modulus and the few operations that need it.  Rationals (used only
by the characteristic-zero oracle) are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import ExhaustedSearch, NoSuchRoot, NotPrime, OutOfRange

MIN_PRIME = 1 << 20
MAX_PRIME = 1 << 31
SAMPLE_LOW = 1 << 30

# Deterministic Miller-Rabin for n < 3_215_031_751.
_MR_WITNESSES = (2, 3, 5, 7)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if n % q == 0:
            return n == q
    if n >= 3_215_031_751:
        raise OutOfRange(f"primality witnesses not certified for {n}")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1 if q == 2 else 2
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class PrimeField:
    """GF(p) for an odd prime ``2^20 < p < 2^31``.

    Construct through :func:`make_prime_field` to get the range and primality
    checks; the bare constructor trusts its argument (used for tiny test
    fields such as GF(7)).
    """

    p: int

    def __call__(self, value) -> int:
        return self.reduce(value)

    def reduce(self, value) -> int:
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator of {value} vanishes mod {self.p}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        if isinstance(value, float):
            raise TypeError("floating point values have no exact residue")
        return int(value) % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def div(self, a: int, b: int) -> int:
        return a * self.inv(b) % self.p

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def signed(self, a: int) -> int:
        """Symmetric representative in ``(-p/2, p/2]``."""
        a %= self.p
        return a - self.p if a > self.p // 2 else a

    def generator(self) -> int:
        """Smallest primitive root of GF(p)."""
        factors = _prime_factors(self.p - 1)
        g = 2
        while True:
            if all(pow(g, (self.p - 1) // q, self.p) != 1 for q in factors):
                return g
            g += 1


def make_prime_field(p: int) -> PrimeField:
    if p % 2 == 0 or not is_prime(p):
        raise NotPrime(f"{p} is not an odd prime")
    if not MIN_PRIME < p < MAX_PRIME:
        raise OutOfRange(f"{p} outside (2^20, 2^31)")
    return PrimeField(p)


def root_of_unity(field: PrimeField, order: int) -> int:
    """Primitive ``order``-th root of unity: g^((p-1)/order) for the smallest primitive root g."""
    if order < 1 or (field.p - 1) % order:
        raise NoSuchRoot(f"{field.p} is not 1 mod {order}")
    return pow(field.generator(), (field.p - 1) // order, field.p)


def sample_verification_primes(count: int, congruence: int | None = None,
                               seed: int = 0, exclude=()) -> list[PrimeField]:
    """``count`` distinct primes in (2^30, 2^31), deterministic in ``seed``.

    With ``congruence = m`` every prime is 1 mod m.  ``exclude`` lists primes
    that must not be returned (used when resampling after a consensus miss).
    """
    if count < 1:
        raise ValueError("count must be positive")
    if congruence is not None and congruence < 6:
        raise ValueError("congruence modulus must be >= 6")
    m = congruence or 2
    rng = random.Random(seed)
    seen = set(exclude)
    out: list[PrimeField] = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 64 * count + 64:
            raise ExhaustedSearch(f"no primes = 1 mod {m} found")
        start = rng.randrange(SAMPLE_LOW, MAX_PRIME)
        cand = start - (start - 1) % m  # cand = 1 mod m
        if cand <= SAMPLE_LOW:
            cand += m
        for _ in range(100_000):
            if cand >= MAX_PRIME:
                break
            if cand not in seen and is_prime(cand):
                seen.add(cand)
                out.append(PrimeField(cand))
                break
            cand += m
    return out
