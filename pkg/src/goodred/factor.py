"""Integer factorization: batched trial division followed by Pollard rho (Brent).

Factorizations that run out of budget are returned with the unfactored
cofactor attached instead of being guessed at.
"""

from __future__ import annotations

import math
import os
import random
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

DEFAULT_TRIAL_BOUND = 10**6
DEFAULT_RHO_BUDGET = 200_000
BUDGET_ENV = "GOODRED_FACTOR_BUDGET"

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71)


@dataclass(frozen=True)
class Factorization:
    """Prime factorization of ``|n|``.

    ``primes`` is the sorted multiset of prime factors found. When the
    budget ran out, ``cofactor`` is the composite part left unsplit
    (``cofactor == 1`` means the factorization is complete).
    """

    n: int
    primes: tuple[int, ...] = ()
    cofactor: int = 1
    unsplit: tuple[int, ...] = field(default=())

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    def distinct(self) -> list[int]:
        return sorted(set(self.primes))

    def counts(self) -> Counter:
        return Counter(self.primes)


def rho_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_RHO_BUDGET
    value = int(raw)
    if value < 0:
        raise ValueError(f"{BUDGET_ENV} must be non-negative, got {raw!r}")
    return value


@lru_cache(maxsize=None)
def primes_up_to(bound: int) -> tuple[int, ...]:
    if bound < 2:
        return ()
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for q in range(2, math.isqrt(bound) + 1):
        if sieve[q]:
            sieve[q * q :: q] = bytearray(len(range(q * q, bound + 1, q)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


@lru_cache(maxsize=None)
def _prime_blocks(bound: int, block_bits: int = 2048) -> tuple[tuple[int, tuple[int, ...]], ...]:
    # products of consecutive primes, so one gcd screens a whole block
    blocks = []
    prod, members = 1, []
    for q in primes_up_to(bound):
        prod *= q
        members.append(q)
        if prod.bit_length() >= block_bits:
            blocks.append((prod, tuple(members)))
            prod, members = 1, []
    if members:
        blocks.append((prod, tuple(members)))
    return tuple(blocks)


def is_probable_prime(n: int) -> bool:
    """Strong-pseudoprime test to the first 20 prime bases.

    Deterministic below 3.3e24; beyond that a composite passing all 20
    bases has never been exhibited.
    """
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
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


def _brent(n: int, budget: int, rng: random.Random) -> tuple[int | None, int]:
    """One Brent cycle search; returns (nontrivial divisor or None, steps used)."""
    y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
    g, r, q = 1, 1, 1
    steps = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        steps += r
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        steps += min(m, r)
        r *= 2
        if steps > budget:
            return None, steps
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    if g == n:
        return None, steps
    return g, steps


def factor_integer(n: int, trial_bound: int = DEFAULT_TRIAL_BOUND, budget: int | None = None,
                   seed: int = 0) -> Factorization:
    """Factor ``|n|`` into primes.

    >>> factor_integer(12).primes
    (2, 2, 3)
    >>> factor_integer(-1).primes
    ()
    """
    if n == 0:
        raise ValueError("cannot factor zero")
    if budget is None:
        budget = rho_budget()
    m = abs(n)
    found: list[int] = []
    for prod, members in _prime_blocks(trial_bound):
        if m == 1:
            break
        if math.gcd(m, prod) == 1:
            continue
        for q in members:
            while m % q == 0:
                m //= q
                found.append(q)

    rng = random.Random(seed)
    stack = [m] if m > 1 else []
    unsplit: list[int] = []
    remaining = budget
    while stack:
        k = stack.pop()
        if is_probable_prime(k):
            found.append(k)
            continue
        r = math.isqrt(k)
        if r * r == k:
            stack.extend((r, r))
            continue
        divisor = None
        while divisor is None and remaining > 0:
            divisor, used = _brent(k, remaining, rng)
            remaining -= used
        if divisor is None:
            unsplit.append(k)
            continue
        stack.extend((divisor, k // divisor))

    cofactor = math.prod(unsplit)
    return Factorization(n=n, primes=tuple(sorted(found)), cofactor=cofactor,
                         unsplit=tuple(sorted(unsplit)))


def prime_divisors(n: int, **kwargs) -> tuple[list[int], Factorization]:
    """Distinct prime divisors of ``n`` (as far as factored) and the full record."""
    fac = factor_integer(n, **kwargs)
    return fac.distinct(), fac
