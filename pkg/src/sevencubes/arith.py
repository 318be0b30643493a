"""Exact integer arithmetic: primality, factorization, integer roots,
Chinese remaindering, and cube roots to moduli of the form 6n with n a
squarefree product of primes congruent to 5 mod 6.

Everything operates on plain Python ints (arbitrary precision).  Integers
serialize as decimal strings with no separators.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import count
from typing import Iterable, Sequence

__all__ = [
    "FactorBudgetError",
    "PROBABLE_PRIME_THRESHOLD",
    "crt",
    "cube_root_mod_6n",
    "factorize",
    "integer_cbrt",
    "is_perfect_square",
    "is_prime",
    "primes_upto",
    "xgcd",
]


class FactorBudgetError(Exception):
    """A factorization candidate exceeds the configured size budget."""


# Above this bound a "prime" verdict is a strong probable-prime result, not a
# deterministic one; callers surface such primes with a "probable" flag.
PROBABLE_PRIME_THRESHOLD = 1 << 64

# The first twelve primes witness every composite below this bound (which is
# comfortably past 2**64), so the Miller-Rabin test is deterministic there.

# The first 13 prime bases decide primality for everything below the bound
# (the smallest composite passing all of them is the bound itself).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)

# squares mod 256, as a 0/1 table for a cheap pre-filter
_SQ256 = bytes(1 if i in {(j * j) & 255 for j in range(256)} else 0 for i in range(256))


def primes_upto(n: int) -> list[int]:
    """All primes <= n, by a byte sieve."""
    if n < 2:
        return []
    sieve = bytearray(b"\x01") * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            start = p * p
            sieve[start::p] = b"\x00" * ((n - start) // p + 1)
    return [i for i, flag in enumerate(sieve) if flag]


@lru_cache(maxsize=None)
def _trial_primes(bound: int) -> tuple[int, ...]:
    return tuple(primes_upto(bound))


def _mr_witness(n: int, a: int, d: int, s: int) -> bool:
    """True if base a certifies n composite."""
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def _jacobi(a: int, n: int) -> int:
    # n odd and positive
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas_prp(n: int) -> bool:
    """Strong Lucas probable-prime test with the standard parameter search
    D = 5, -7, 9, -11, ... until (D|n) = -1, P = 1, Q = (1-D)/4."""
    r = math.isqrt(n)
    if r * r == n:
        return False
    d = 5
    while True:
        j = _jacobi(d % n, n)
        if j == -1:
            break
        if j == 0 and abs(d) % n != 0:
            return False
        d = -(d + 2) if d > 0 else -(d - 2)
    q = (1 - d) // 4

    # n + 1 = k * 2**s with k odd
    k = n + 1
    s = (k & -k).bit_length() - 1
    k >>= s

    inv2 = (n + 1) >> 1
    u, v, qm = 1, 1, q % n  # U_1, V_1, Q^1
    for bit in bin(k)[3:]:
        # index doubling: U_2m = U V, V_2m = V^2 - 2 Q^m
        u, v = u * v % n, (v * v - 2 * qm) % n
        qm = qm * qm % n
        if bit == "1":
            # index +1: U' = (U + V)/2, V' = (D U + V)/2
            u, v = (u + v) * inv2 % n, (d * u + v) * inv2 % n
            qm = qm * q % n
    if u == 0 or v == 0:
        return True
    for _ in range(s - 1):
        v = (v * v - 2 * qm) % n
        if v == 0:
            return True
        qm = qm * qm % n
    return False


def is_prime(n: int, *, extra_rounds: int = 0) -> bool:
    """Primality test.

    Deterministic for n below the thirteen-base Miller-Rabin bound (past
    2**64).  Above it this is a strong probable-prime test (Miller-Rabin on
    the fixed bases plus a strong Lucas test), optionally reinforced by
    `extra_rounds` further Miller-Rabin bases.  No known composite passes.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_BASES:
        if _mr_witness(n, a, d, s):
            return False
    if n < _MR_DETERMINISTIC_BOUND:
        return True
    if not _strong_lucas_prp(n):
        return False
    for i in range(extra_rounds):
        if _mr_witness(n, 41 + 2 * i, d, s):
            return False
    return True


def _brent_cycle(n: int, c: int) -> int:
    """One Pollard-rho round (Brent's cycle finding) with increment c.
    Returns a nontrivial factor, or 0 if this increment fails."""
    y, r, q, g = 2, 1, 1, 1
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(128, r - k)):
                y = (y * y + c) % n
                q = q * (x - y) % n
            g = math.gcd(q, n)
            k += 128
        r <<= 1
    if g == n:
        g = 1
        y = ys
        while g == 1:
            y = (y * y + c) % n
            g = math.gcd(x - y, n)
    return 0 if g == n else g


def _pollard_brent(n: int) -> int:
    # n odd, composite, with no factors below the trial-division bound;
    # increments are tried in a fixed order so results are reproducible
    for c in count(1):
        g = _brent_cycle(n, c)
        if g:
            return g
    raise AssertionError("unreachable")


def factorize(n: int, *, bit_budget: int = 96, trial_bound: int = 10_000) -> list[tuple[int, int]]:
    """Full factorization of n as a sorted list of (prime, exponent).

    Trial division up to `trial_bound`, then Pollard rho on what remains.
    Raises FactorBudgetError when n has more than `bit_budget` bits; callers
    treat that as "reject this candidate" rather than waiting on a hard
    factorization.
    """
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    if n.bit_length() > bit_budget:
        raise FactorBudgetError(
            f"{n.bit_length()}-bit value exceeds the {bit_budget}-bit factorization budget"
        )
    counts: dict[int, int] = {}
    m = n
    for p in _trial_primes(trial_bound):
        if p * p > m:
            break
        while m % p == 0:
            counts[p] = counts.get(p, 0) + 1
            m //= p
    if m > 1:
        stack = [m]
        while stack:
            v = stack.pop()
            if is_prime(v):
                counts[v] = counts.get(v, 0) + 1
                continue
            g = _pollard_brent(v)
            stack.append(g)
            stack.append(v // g)
    factors = sorted(counts.items())
    check = 1
    for p, e in factors:
        check *= p**e
    assert check == n, "factorization failed to multiply back"
    return factors


def integer_cbrt(n: int) -> int:
    """floor(n ** (1/3)), exact for any nonnegative int."""
    if n < 0:
        raise ValueError("integer_cbrt requires n >= 0")
    if n == 0:
        return 0
    x = 1 << ((n.bit_length() + 2) // 3)  # x**3 >= n
    while True:
        y = (2 * x + n // (x * x)) // 3
        if y >= x:
            break
        x = y
    while x * x * x > n:
        x -= 1
    while (x + 1) ** 3 <= n:
        x += 1
    return x


def is_perfect_square(n: int) -> int | None:
    """sqrt(n) when n is a perfect square, else None."""
    if n < 0:
        return None
    if not _SQ256[n & 255]:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b)."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def crt(pairs: Iterable[tuple[int, int]]) -> int:
    """The unique x mod prod(m_i) with x = r_i (mod m_i) for each pair
    (r_i, m_i); the moduli must be pairwise coprime."""
    x, m = 0, 1
    for r, mod in pairs:
        if mod < 1:
            raise ValueError("moduli must be positive")
        try:
            inv = pow(m % mod, -1, mod) if mod > 1 else 0
        except ValueError as exc:
            raise ValueError("moduli are not pairwise coprime") from exc
        x += (r - x) * inv % mod * m
        m *= mod
        x %= m
    return x


def cube_root_mod_6n(a: int, primes: Sequence[int]) -> int:
    """The unique x in [0, 6n) with x**3 = a (mod 6n), where n is the
    product of `primes`: distinct primes all congruent to 5 mod 6.

    Cubing is a bijection mod 2 and mod 3 (x**3 = x there) and mod every
    prime p = 5 (mod 6), where the inverse map is c -> c**((2p-1)/3): note
    3 | 2p - 1 and (c**((2p-1)/3))**3 = c**(2(p-1)) * c = c (mod p).
    """
    n = 1
    prev = 0
    for p in primes:
        if p % 6 != 5:
            raise ValueError(f"{p} is not congruent to 5 mod 6")
        if p <= prev:
            raise ValueError("primes must be strictly increasing")
        prev = p
        n *= p
    a %= 6 * n
    pairs = [(a % 2, 2), (a % 3, 3)]
    for p in primes:
        pairs.append((pow(a % p, (2 * p - 1) // 3, p), p))
    return crt(pairs)
