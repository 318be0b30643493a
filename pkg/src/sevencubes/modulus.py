"""Selection of the auxiliary modulus m used by the seven-cube construction.

Admissible moduli are squarefree products of primes congruent to 5 mod 6
(including the empty product 1); cubing is then a bijection mod 6m.  For an
input n = 2 (mod 4) the construction needs

    1618 * m**3 < n < 1786 * m**3        (so the residual quotient q
                                          satisfies 0 < q < 16 m**2)
    m = n/2 (mod 4)                      (so the quotient is an integer)
    m = b  (mod 25) for a steering
      residue b                          (so q dodges the classes the
                                          ternary form cannot represent)

This module picks steering residues, scans the valid interval directly, and
provides a two-factor route m = m0 * p through a precomputed window of base
moduli, which avoids factoring anything large: p only needs a primality test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import (
    FactorBudgetError,
    crt,
    factorize,
    integer_cbrt,
    is_prime,
)

__all__ = [
    "VALID_LO",
    "VALID_HI",
    "AuxModulus",
    "NoWindowError",
    "SteeringChoice",
    "admissible_factors",
    "base_window_table",
    "find_covering_window",
    "find_modulus_composite",
    "find_modulus_direct",
    "is_admissible_modulus",
    "iter_moduli_composite",
    "iter_moduli_direct",
    "modulus_interval",
    "modulus_valid",
    "steering_residues",
    "table2_text",
]

# Bounds on n / m**3 for a usable modulus: the quotient
# q = (n - x0**3 - 1402 m**3) / (24 m) is positive when n > (1402 + 6**3) m**3
# (worst case x0 = 6m) and below 16 m**2 when n < (1402 + 24*16) m**3.
VALID_LO = 1618
VALID_HI = 1786

_IDENTITY_CONSTANT = 1402  # = 2 * (4**3 + 5**3 + 8**3), see construct.py


class NoWindowError(Exception):
    """No covering window exists below the search ceiling."""


@dataclass(frozen=True)
class AuxModulus:
    """An admissible modulus together with its (certified) prime factors."""

    value: int
    primes: tuple[int, ...]

    def __post_init__(self) -> None:
        prod = 1
        prev = 0
        for p in self.primes:
            if p <= prev:
                raise ValueError("prime factors must be strictly increasing")
            if p % 6 != 5:
                raise ValueError(f"factor {p} is not congruent to 5 mod 6")
            prev = p
            prod *= p
        if prod != self.value:
            raise ValueError("value does not match its factorization")

    @classmethod
    def from_value(cls, value: int, *, bit_budget: int = 96) -> "AuxModulus":
        fac = admissible_factors(value, bit_budget=bit_budget)
        if fac is None:
            raise ValueError(f"{value} is not an admissible modulus")
        return cls(value, fac)


@dataclass(frozen=True)
class SteeringChoice:
    """Candidate residues mod 25 for the modulus, by 5-adic branch of n."""

    branch: str  # "unit" | "five" | "twentyfive"
    candidates: tuple[int, ...]  # ascending, all nonzero mod 25


@lru_cache(maxsize=1 << 17)
def admissible_factors(n: int, *, bit_budget: int = 96) -> tuple[int, ...] | None:
    """The prime factors of n if n is an admissible modulus, else None.

    Admissible: squarefree with every prime factor congruent to 5 mod 6.
    The empty product n = 1 is admissible.  Raises FactorBudgetError for
    values beyond the factorization budget.
    """
    if n < 1:
        raise ValueError("modulus candidates must be positive")
    if n == 1:
        return ()
    if n % 2 == 0 or n % 3 == 0:
        return None
    fac = factorize(n, bit_budget=bit_budget)
    if all(e == 1 and p % 6 == 5 for p, e in fac):
        return tuple(p for p, _ in fac)
    return None


def is_admissible_modulus(n: int, *, bit_budget: int = 96) -> bool:
    """True iff n is squarefree with all prime factors = 5 (mod 6)."""
    return admissible_factors(n, bit_budget=bit_budget) is not None


def steering_residues(n: int) -> SteeringChoice:
    """Residues b mod 25 such that steering the modulus into b keeps the
    residual quotient q out of the classes 0, 10, 15 (mod 25) that the
    ternary form misses.

    For 5 not dividing n there are exactly two such units b, one for each
    sign in q = +-5 (mod 25); for 5 | n the viable residues are multiples
    of 5, split by n mod 125.  Requires 125 not dividing n.
    """
    if n % 125 == 0:
        raise ValueError("reduce factors of 125 out of n first")
    if n % 5:
        cands = []
        for b in range(1, 25):
            if b % 5 == 0:
                continue
            if (n - _IDENTITY_CONSTANT * b**3) % 5:
                continue
            q0 = (n - _IDENTITY_CONSTANT * b**3) * pow(24 * b, -1, 25) % 25
            if q0 in (5, 20):
                cands.append(b)
        if len(cands) != 2:
            raise AssertionError(f"steering residues for {n % 25} mod 25: {cands}")
        return SteeringChoice("unit", tuple(cands))
    if n % 25:
        return SteeringChoice("five", (5, 10, 15, 20))
    if n % 125 in (25, 100):
        return SteeringChoice("twentyfive", (5, 20))
    return SteeringChoice("twentyfive", (10, 15))


def modulus_valid(n: int, m: int) -> bool:
    """True iff 1618 * m**3 < n < 1786 * m**3 (exact integer comparisons)."""
    m3 = m**3
    return VALID_LO * m3 < n < VALID_HI * m3


def modulus_interval(n: int) -> tuple[int, int]:
    """Inclusive range [lo, hi] of integers m with modulus_valid(n, m);
    lo > hi when the range is empty."""
    lo = integer_cbrt(n // VALID_HI)
    while VALID_HI * lo**3 <= n:
        lo += 1
    hi = integer_cbrt(n // VALID_LO)
    while hi > 0 and VALID_LO * hi**3 >= n:
        hi -= 1
    return lo, hi


def iter_moduli_direct(
    n: int,
    residue_mod25: int | None = None,
    *,
    scan_limit: int | None = None,
    bit_budget: int = 96,
):
    """Admissible moduli for n in ascending order, scanned directly.

    Candidates obey the size interval and m = n/2 (mod 4); when
    `residue_mod25` is given they are further pinned to that class mod 25.
    Candidates whose factorization exceeds the bit budget are skipped; if
    even the smallest candidate is over budget the scan yields nothing.
    """
    if n % 4 != 2:
        raise ValueError("the construction applies to n = 2 (mod 4)")
    lo, hi = modulus_interval(n)
    if lo > hi or lo.bit_length() > bit_budget:
        return
    r4 = (n // 2) % 4
    if residue_mod25 is None:
        step, target = 4, r4
    else:
        if residue_mod25 % 25 == 0:
            raise ValueError("steering residue must be nonzero mod 25")
        step, target = 100, crt([(residue_mod25, 25), (r4, 4)])
    first = lo + (target - lo) % step
    examined = 0
    for cand in range(first, hi + 1, step):
        if scan_limit is not None and examined >= scan_limit:
            return
        examined += 1
        try:
            fac = admissible_factors(cand, bit_budget=bit_budget)
        except FactorBudgetError:
            continue
        if fac is not None:
            yield AuxModulus(cand, fac)


def find_modulus_direct(
    n: int,
    residue_mod25: int | None = None,
    *,
    scan_limit: int | None = None,
    bit_budget: int = 96,
) -> AuxModulus | None:
    """Smallest admissible m with modulus_valid(n, m) and m = n/2 (mod 4),
    optionally pinned to a class mod 25; None when the interval holds none."""
    return next(
        iter_moduli_direct(n, residue_mod25, scan_limit=scan_limit, bit_budget=bit_budget),
        None,
    )


# -- the base window ---------------------------------------------------------

WINDOW_RESIDUE_MOD4 = 1
WINDOW_RATIO_CAP = Fraction(1021, 1000)


def _iter_admissible_in_class(residue_mod4: int, ceiling: int):
    start = residue_mod4 if residue_mod4 % 4 else 4
    for cand in range(start, ceiling + 1, 4):
        fac = admissible_factors(cand)
        if fac is not None:
            yield cand, fac


def find_covering_window(
    residue_mod4: int,
    ratio_cap: Fraction,
    *,
    ceiling: int = 100_000,
) -> tuple[int, int]:
    """Smallest hi such that the admissible moduli in [lo, hi], restricted
    to the class residue_mod4 (mod 4), cover all 24 nonzero residues mod 25
    with hi/lo <= ratio_cap; lo is then pushed as high as coverage allows.

    Raises NoWindowError when no such window exists below `ceiling`.
    """
    if not isinstance(ratio_cap, Fraction):
        if isinstance(ratio_cap, float):
            raise TypeError("pass the ratio cap as an exact Fraction, not a float")
        ratio_cap = Fraction(ratio_cap)
    num, den = ratio_cap.numerator, ratio_cap.denominator
    elems: list[int] = []
    counts = [0] * 25
    covered = 0
    i = 0
    for x, _fac in _iter_admissible_in_class(residue_mod4, ceiling):
        elems.append(x)
        r = x % 25
        counts[r] += 1
        if counts[r] == 1:
            covered += 1
        # shrink from the left while the ratio cap is violated
        while elems[i] * num < x * den:
            rr = elems[i] % 25
            counts[rr] -= 1
            if counts[rr] == 0:
                covered -= 1
            i += 1
        if covered == 24:
            j = i
            while counts[elems[j] % 25] > 1:
                counts[elems[j] % 25] -= 1
                j += 1
            return elems[j], x
    raise NoWindowError(
        f"no window with ratio <= {ratio_cap} covering all residues below {ceiling}"
    )


@lru_cache(maxsize=None)
def base_window_table() -> tuple[tuple[int, tuple[tuple[int, tuple[int, ...]], ...]], ...]:
    """Base moduli for the two-factor route, regenerated from first
    principles: the admissible moduli = 1 (mod 4) inside the covering
    window, grouped by residue mod 25.

    Returns ((residue, ((value, prime_factors), ...)), ...) with residues
    1..24 ascending and values ascending inside each class.
    """
    lo, hi = find_covering_window(WINDOW_RESIDUE_MOD4, WINDOW_RATIO_CAP)
    groups: dict[int, list[tuple[int, tuple[int, ...]]]] = {r: [] for r in range(1, 25)}
    for value, fac in _iter_admissible_in_class(WINDOW_RESIDUE_MOD4, hi):
        if value < lo:
            continue
        groups[value % 25].append((value, fac))
    out = []
    for r in range(1, 25):
        if not groups[r]:
            raise AssertionError(f"window [{lo}, {hi}] misses residue {r} mod 25")
        out.append((r, tuple(sorted(groups[r]))))
    return tuple(out)


def window_bounds() -> tuple[int, int]:
    """(min, max) over all base-window moduli."""
    table = base_window_table()
    values = [v for _r, entries in table for v, _f in entries]
    return min(values), max(values)


def table2_text() -> str:
    """Render the base window as lines 'residue value factors'."""
    lines = ["# base moduli = 1 (mod 4) covering all nonzero residues mod 25"]
    for r, entries in base_window_table():
        for value, fac in entries:
            shown = "*".join(str(p) for p in fac) if fac else "1"
            lines.append(f"{r} {value} {shown}")
    return "\n".join(lines) + "\n"


# -- the two-factor route ----------------------------------------------------


def composite_prime_bounds(n: int) -> tuple[int, int]:
    """Inclusive bounds [p_lo, p_hi] for the prime cofactor p such that
    m0 * p is size-valid for every base modulus m0 in the window.

    Endpoints are rounded inward with exact integer arithmetic; the range
    is empty (p_lo > p_hi) when n is too small for this route.
    """
    w_lo, w_hi = window_bounds()
    d_lo = VALID_HI * w_lo**3
    p_lo = integer_cbrt(n // d_lo)
    while d_lo * p_lo**3 <= n:
        p_lo += 1
    d_hi = VALID_LO * w_hi**3
    p_hi = integer_cbrt(n // d_hi)
    while p_hi > 0 and d_hi * p_hi**3 >= n:
        p_hi -= 1
    return max(p_lo, w_hi + 1), p_hi


def iter_moduli_composite(
    n: int,
    residue_mod25: int,
    *,
    scan_limit: int | None = None,
):
    """Moduli m = m0 * p with m0 from the base window and p prime, scanned
    by ascending p.  Needs no factorization: p is primality-tested only,
    and m0 carries its factors.

    p runs over the class p = 5 (mod 6), p = n/2 (mod 4) inside the
    conservative size interval; m0 is pinned by m0 = b * p**-1 (mod 25).
    """
    if n % 4 != 2:
        raise ValueError("the construction applies to n = 2 (mod 4)")
    if residue_mod25 % 25 == 0:
        raise ValueError("steering residue must be nonzero mod 25")
    p_lo, p_hi = composite_prime_bounds(n)
    if p_lo > p_hi:
        return
    r4 = (n // 2) % 4
    target = 5 if 5 % 4 == r4 else 11  # the class mod 12 with p = 5 (mod 6)
    table = dict(base_window_table())
    first = p_lo + (target - p_lo) % 12
    examined = 0
    for p in range(first, p_hi + 1, 12):
        if scan_limit is not None and examined >= scan_limit:
            return
        examined += 1
        if not is_prime(p):
            continue
        row = residue_mod25 * pow(p, -1, 25) % 25
        for m0, m0_factors in table[row]:
            m = m0 * p
            if not modulus_valid(n, m):
                raise AssertionError("conservative prime bounds admitted an invalid modulus")
            yield AuxModulus(m, tuple(sorted(m0_factors + (p,))))


def find_modulus_composite(
    n: int,
    residue_mod25: int,
    *,
    scan_limit: int | None = None,
) -> AuxModulus | None:
    """First modulus from the two-factor route, or None when the prime
    interval is empty or the scan budget runs out."""
    return next(iter_moduli_composite(n, residue_mod25, scan_limit=scan_limit), None)
