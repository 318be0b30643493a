"""Constructive decomposition of integers into seven nonnegative cubes.

The workhorse is an exact identity: for any integers p, x1, x3, y,

    (4p+x1)^3 + (4p-x1)^3 + (5p+2y)^3 + (5p-2y)^3 + (8p+x3)^3 + (8p-x3)^3
        = 1402*p**3 + 24*p*(x1*x1 + 2*x3*x3 + 5*y*y).

So an even target n == 2 (mod 4) splits into seven nonnegative cubes

    n = x0**3 + 1402*p**3 + 24*p*q,        q = x1**2 + 2*x3**2 + 5*y**2,

once three ingredients line up:

* an auxiliary modulus p: squarefree, every prime factor == 5 (mod 6),
  p == n/2 (mod 4), inside the window 1618*p**3 < n < 1786*p**3;
* the anchor x0: the unique cube root of n - 1402*p**3 modulo 6*p
  (taken in (0, 6p], so x0**3 <= 216*p**3 and the residual q stays in
  0 <= q < 16*p**2, which keeps all six offsets small enough for the
  bases above to be nonnegative);
* a ternary representation of q, which exists whenever q is not of the
  shape 25**k * (25*m + 10) or 25**k * (25*m + 15).

The modulus window forces exact divisibility of n - x0**3 - 1402*p**3 by
24*p: the factor 6*p is the root congruence, and the remaining factor 4
follows from x0 even and p == n/2 (mod 4).

Residues n with small targets, n !== 2 (mod 4), or the handful of true
exceptions are routed to the exhaustive search / stored tables instead.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import isqrt
from typing import Iterator, NamedTuple

from .arith import (
    PROBABLE_PRIME_THRESHOLD,
    cube_root_mod_6n,
    is_perfect_square,
    is_prime,
)
from .modulus import (
    AuxModulus,
    composite_prime_bounds,
    iter_moduli_composite,
    iter_moduli_direct,
    modulus_interval,
    steering_residues,
)
from .search import (
    EXCEPTIONS,
    SearchBudget,
    SearchLimitError,
    exceptional_cube_tables,
    search_seven,
)

__all__ = [
    "IDENTITY_CONSTANT",
    "ConstructionError",
    "DecomposeConfig",
    "NotRepresentableError",
    "OutOfScopeError",
    "TernaryRep",
    "Trace",
    "anchor_root",
    "assemble_cubes",
    "decompose",
    "dickson_excluded",
    "reduce_125",
    "represent_ternary",
    "residual_quotient",
    "verify",
]

# 2 * (4**3 + 5**3 + 8**3): the cube-free part of the six-term identity.
IDENTITY_CONSTANT = 1402


class ConstructionError(Exception):
    """An exact algebraic step of the constructive route failed."""


class NotRepresentableError(Exception):
    """The input provably has no representation as seven nonnegative cubes."""


class OutOfScopeError(Exception):
    """No decomposition route applies within the configured budgets."""


def reduce_125(n: int) -> tuple[int, int]:
    """Write n = 125**e * n0 with 125 not dividing n0; return (n0, e).

    Scaling a cube representation of n0 by 5**e recovers one of n, so the
    engine only ever has to handle targets with 5-adic valuation < 3.
    """
    if n <= 0:
        raise ValueError("n must be positive")
    e = 0
    while n % 125 == 0:
        n //= 125
        e += 1
    return n, e


def anchor_root(n: int, modulus: AuxModulus) -> int:
    """The anchor x0 for target n and auxiliary modulus p.

    x0 is the unique cube root of n - 1402*p**3 modulo 6*p, normalised to
    (0, 6p] so that x0**3 never exceeds 216*p**3.  For even n the root is
    automatically even; an odd root means the inputs were invalid.
    """
    p = modulus.value
    x0 = cube_root_mod_6n(n - IDENTITY_CONSTANT * p**3, modulus.primes)
    if x0 == 0:
        x0 = 6 * p
    if x0 % 2:
        raise ConstructionError(f"anchor root {x0} for n={n}, p={p} is odd")
    return x0


def residual_quotient(n: int, p_value: int, x0: int) -> int:
    """q with n == x0**3 + 1402*p**3 + 24*p*q, or ConstructionError.

    Raises if n - x0**3 - 1402*p**3 is negative or not divisible by 24*p;
    both are impossible when p sits in its validity window and in the
    residue class n/2 mod 4.
    """
    numerator = n - x0**3 - IDENTITY_CONSTANT * p_value**3
    q, rem = divmod(numerator, 24 * p_value)
    if rem:
        raise ConstructionError(
            f"n - x0**3 - 1402*p**3 = {numerator} is not divisible by 24*p = {24 * p_value}"
        )
    if q < 0:
        raise ConstructionError(f"negative residual {q}: p={p_value} is above its window")
    return q


def dickson_excluded(q: int) -> bool:
    """True when q = 25**k * m with m == 10 or 15 (mod 25).

    Exactly these nonnegative integers have no representation as
    x**2 + 2*z**2 + 5*y**2; everything else is representable.
    """
    if q <= 0:
        return False
    while q % 25 == 0:
        q //= 25
    return q % 25 in (10, 15)


class TernaryRep(NamedTuple):
    """Witness for q = x1**2 + 2*x3**2 + 5*y**2 (all components >= 0)."""

    x1: int
    x3: int
    y: int

    def q(self) -> int:
        return self.x1 * self.x1 + 2 * self.x3 * self.x3 + 5 * self.y * self.y


def _represent_brute(q: int) -> TernaryRep | None:
    """Complete ascending scan over y, then x3, solving for x1."""
    y = 0
    while 5 * y * y <= q:
        r1 = q - 5 * y * y
        x3 = 0
        while 2 * x3 * x3 <= r1:
            x1 = is_perfect_square(r1 - 2 * x3 * x3)
            if x1 is not None:
                return TernaryRep(x1, x3, y)
            x3 += 1
        y += 1
    return None


def _sqrt_mod_prime(a: int, p: int) -> int | None:
    """A square root of a modulo an odd prime p, or None for non-residues."""
    a %= p
    if p == 2:
        return a
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    if p % 8 == 5:
        r = pow(a, (p + 3) // 8, p)
        if r * r % p != a:
            r = r * pow(2, (p - 1) // 4, p) % p
        return r
    # Tonelli-Shanks for p == 1 (mod 8).
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t = t * c % p
        r = r * b % p
    return r


def _cornacchia_two(p: int) -> tuple[int, int]:
    """(x, y) with x*x + 2*y*y == p for a prime p == 1 or 3 (mod 8)."""
    if p == 2:
        return 0, 1
    root = _sqrt_mod_prime(p - 2, p)  # square root of -2
    if root is None:
        raise ConstructionError(f"-2 is not a square modulo {p}")
    for r in (root, p - root):
        a, b = p, r
        while b * b > p:
            a, b = b, a % b
        y2, rem = divmod(p - b * b, 2)
        if rem == 0:
            y = is_perfect_square(y2)
            if y is not None:
                return b, y
    raise ConstructionError(f"descent found no x**2 + 2*y**2 = {p}")


def _binary_part(m: int) -> tuple[int, int] | None:
    """(a, b) with a*a + 2*b*b == m for cheaply certifiable shapes, else None.

    Accepts 0, perfect squares, and 4**j times either 2, a prime == 1, 3
    (mod 8), or twice such a prime (the form scales by 4, and
    2*(a*a + 2*b*b) == (2b)**2 + 2*a*a).  None is not a proof that m has no
    such form, only that this shortcut does not certify one.
    """
    if m == 0:
        return (0, 0)
    s = is_perfect_square(m)
    if s is not None:
        return (s, 0)
    t, scale = m, 1
    while t % 4 == 0:
        t //= 4
        scale *= 2
    if t == 2:
        return (0, scale)
    if t % 2:
        if t % 8 in (1, 3) and is_prime(t):
            a, b = _cornacchia_two(t)
            return (a * scale, b * scale)
        return None
    u = t // 2
    if u % 8 in (1, 3) and is_prime(u):
        a, b = _cornacchia_two(u)
        return (2 * b * scale, a * scale)
    return None


def represent_ternary(
    q: int,
    *,
    brute_limit: int = 10**8,
    fiber_budget: int = 50_000,
    random_budget: int = 50_000,
    seed: int = 0,
) -> TernaryRep:
    """A witness for q = x1**2 + 2*x3**2 + 5*y**2.

    Raises ConstructionError for the excluded shapes 25**k * (10 or 15 mod 25);
    every other nonnegative q is representable and a witness is returned.
    Small q get a complete ascending scan.  Large q first peel their 5-adic
    part, then split along fibers in y whose binary remainder is certified
    by cheap shape tests (squares, primes == 1, 3 mod 8, twice or 4**j times
    those); ascending fibers up to `fiber_budget`, then seeded random fibers,
    then — as a last resort — the complete scan, so the function is
    deterministic and total.
    """
    if q < 0:
        raise ValueError("q must be nonnegative")
    if dickson_excluded(q):
        raise ConstructionError(f"{q} = 25**k * (25*m + 10 or 15) has no ternary witness")
    if q == 0:
        return TernaryRep(0, 0, 0)
    if q <= brute_limit:
        rep = _represent_brute(q)
        if rep is None:
            raise ConstructionError(f"complete scan found no witness for {q}")
        assert rep.q() == q
        return rep

    # peel the 5-adic part: the whole form scales by 25, and when exactly one
    # factor 5 remains, x1 and x3 are forced to multiples of 5 (2 is not a
    # square mod 5), leaving a*a + 2*b*b = (q/5 - y*y)/5 with y*y == q/5 (mod 5)
    scale5, core = 1, q
    while core % 25 == 0:
        core //= 25
        scale5 *= 5
    if core % 5:
        y_max = isqrt(core // 5)

        def fiber(y: int) -> TernaryRep | None:
            m = core - 5 * y * y
            if m < 0:
                return None
            pair = _binary_part(m)
            if pair is None:
                return None
            return TernaryRep(pair[0], pair[1], y)

        def valid(y: int) -> bool:
            return True

    else:
        q0 = core // 5
        y_max = isqrt(q0)

        def fiber(y: int) -> TernaryRep | None:
            m, rem = divmod(q0 - y * y, 5)
            if rem or m < 0:
                return None
            pair = _binary_part(m)
            if pair is None:
                return None
            return TernaryRep(5 * pair[0], 5 * pair[1], y)

        def valid(y: int) -> bool:
            return (q0 - y * y) % 5 == 0

    tried = 0
    y = 0
    while y <= y_max and tried < fiber_budget:
        if valid(y):
            tried += 1
            rep = fiber(y)
            if rep is not None:
                rep = TernaryRep(*(scale5 * c for c in rep))
                assert rep.q() == q
                return rep
        y += 1
    rng = random.Random(seed)
    for _ in range(random_budget):
        rep = fiber(rng.randint(0, y_max))
        if rep is not None:
            rep = TernaryRep(*(scale5 * c for c in rep))
            assert rep.q() == q
            return rep
    rep = _represent_brute(q)
    if rep is None:
        raise ConstructionError(f"complete scan found no witness for {q}")
    assert rep.q() == q
    return rep


def assemble_cubes(
    n: int, p_value: int, x0: int, rep: TernaryRep
) -> tuple[int, int, int, int, int, int, int]:
    """The seven cube bases for n from modulus p, anchor x0 and witness rep.

    Every step is checked exactly; ConstructionError means the ingredients
    do not actually satisfy the identity or produce a negative base.
    """
    p = p_value
    if x0 <= 0 or x0 % 2:
        raise ConstructionError(f"anchor {x0} must be positive and even")
    q = rep.q()
    if n != x0**3 + IDENTITY_CONSTANT * p**3 + 24 * p * q:
        raise ConstructionError(
            f"identity does not balance: n={n}, p={p}, x0={x0}, q={q}"
        )
    x1, x3, y = rep
    x2 = 2 * y
    cubes = (x0, 4 * p + x1, 4 * p - x1, 5 * p + x2, 5 * p - x2, 8 * p + x3, 8 * p - x3)
    if min(cubes) < 0:
        raise ConstructionError(f"negative cube base in {cubes}")
    if sum(c**3 for c in cubes) != n:
        raise ConstructionError("cube sum does not reproduce n")
    return cubes


def verify(cubes, n: int) -> bool:
    """True when `cubes` is a sequence of 7 nonnegative ints summing (cubed) to n."""
    cubes = tuple(cubes)
    return (
        len(cubes) == 7
        and all(isinstance(c, int) and c >= 0 for c in cubes)
        and sum(c**3 for c in cubes) == n
    )


@dataclass(frozen=True)
class DecomposeConfig:
    """Budgets and determinism knobs for decompose().

    seed              seeds the (rarely reached) random fiber phase;
    scan_limit        candidate values examined per direct modulus scan;
    prime_scan_limit  candidate primes examined per composite scan;
    factor_bits       size cap for exact factorisation of candidates;
    ternary_brute_limit  largest q handled by the complete ternary scan;
    fiber_budget / fiber_random_budget  fiber attempts for large q;
    search_max_n / search_window  budget of the exhaustive seven-cube search.
    """

    seed: int = 0
    scan_limit: int = 500_000
    prime_scan_limit: int = 200_000
    factor_bits: int = 96
    ternary_brute_limit: int = 10**8
    fiber_budget: int = 50_000
    fiber_random_budget: int = 50_000
    search_max_n: int = 10**8
    search_window: int = 10**6


@dataclass
class Trace:
    """Full audit record of one decomposition.

    `branch` is "construction" (identity route on n itself), "fallback"
    (exhaustive search or stored exceptional tables), or "scaled" (any route
    applied to n0 < n and scaled by a power of 5).  Construction-specific
    fields are None on the other branches.  `probable_primes` lists factors
    above the deterministic primality threshold (never serialised).
    """

    n: int
    n0: int
    e: int
    branch: str
    cubes: tuple[int, ...]
    p_value: int | None = None
    p_factors: tuple[int, ...] | None = None
    b: int | None = None
    x0: int | None = None
    q: int | None = None
    x1: int | None = None
    x2: int | None = None
    x3: int | None = None
    verified: bool = False
    probable_primes: tuple[int, ...] = field(default=(), repr=False, compare=False)

    def recheck(self) -> bool:
        self.verified = verify(self.cubes, self.n)
        return self.verified

    def to_record(self) -> dict:
        """Serialisable record with a fixed 14-key layout."""
        return {
            "n": self.n,
            "n0": self.n0,
            "e": self.e,
            "branch": self.branch,
            "p_value": self.p_value,
            "p_factors": list(self.p_factors) if self.p_factors is not None else None,
            "b": self.b,
            "x0": self.x0,
            "q": self.q,
            "x1": self.x1,
            "x2": self.x2,
            "x3": self.x3,
            "cubes": list(self.cubes),
            "verified": self.verified,
        }


def _candidate_moduli(n: int, config: DecomposeConfig) -> Iterator[AuxModulus]:
    """Moduli to try for n == 2 (mod 4): the direct window scan first
    (smallest admissible value wins), then steered composites p0 * prime."""
    yield from iter_moduli_direct(
        n, scan_limit=config.scan_limit, bit_budget=config.factor_bits
    )
    p_lo, p_hi = composite_prime_bounds(n)
    if p_lo <= p_hi:
        for b in steering_residues(n).candidates:
            yield from iter_moduli_composite(n, b, scan_limit=config.prime_scan_limit)


def _construct(n: int, config: DecomposeConfig) -> Trace | None:
    """Identity route for n == 2 (mod 4), 125 not dividing n; None if no
    admissible modulus in the window yields an admissible residual."""
    if n % 4 != 2:
        raise ValueError("the constructive route needs n == 2 (mod 4)")
    lo, hi = modulus_interval(n)
    p_lo, p_hi = composite_prime_bounds(n)
    if lo > hi and p_lo > p_hi:
        return None
    for modulus in _candidate_moduli(n, config):
        x0 = anchor_root(n, modulus)
        try:
            q = residual_quotient(n, modulus.value, x0)
        except ConstructionError:  # pragma: no cover - parity pinning prevents this
            continue
        if dickson_excluded(q):
            continue
        rep = represent_ternary(
            q,
            brute_limit=config.ternary_brute_limit,
            fiber_budget=config.fiber_budget,
            random_budget=config.fiber_random_budget,
            seed=config.seed,
        )
        cubes = assemble_cubes(n, modulus.value, x0, rep)
        return Trace(
            n=n,
            n0=n,
            e=0,
            branch="construction",
            cubes=cubes,
            p_value=modulus.value,
            p_factors=modulus.primes,
            b=modulus.value % 25,
            x0=x0,
            q=q,
            x1=rep.x1,
            x2=2 * rep.y,
            x3=rep.x3,
            probable_primes=tuple(
                f for f in modulus.primes if f > PROBABLE_PRIME_THRESHOLD
            ),
        )
    return None


def decompose(n: int, config: DecomposeConfig | None = None) -> Trace:
    """Decompose n into seven nonnegative cubes with a full audit trace.

    Routing: strip powers of 125; stored tables handle the scaled images of
    the true exceptions; the identity route handles n0 == 2 (mod 4); the
    exhaustive search covers everything else within its budget.  Raises
    NotRepresentableError for the 17 true exceptions, OutOfScopeError when
    only the exhaustive search applies and n0 exceeds its budget.
    """
    cfg = config or DecomposeConfig()
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError("n must be an int")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        trace = Trace(n=0, n0=0, e=0, branch="fallback", cubes=(0,) * 7)
        trace.recheck()
        return trace

    n0, e = reduce_125(n)
    scale = 5**e

    if n0 in EXCEPTIONS:
        if e == 0:
            raise NotRepresentableError(
                f"{n} is not a sum of seven nonnegative cubes"
            )
        # 125 * n0 always has a seven-positive-cube table entry; scale it.
        _, seven_pos = exceptional_cube_tables()[n0]
        factor = 5 ** (e - 1)
        trace = Trace(
            n=n,
            n0=n0,
            e=e,
            branch="fallback" if e == 1 else "scaled",
            cubes=tuple(c * factor for c in seven_pos),
        )
        trace.recheck()
        return trace

    if n0 % 4 == 2:
        inner = _construct(n0, cfg)
        if inner is not None:
            trace = Trace(
                n=n,
                n0=n0,
                e=e,
                branch="scaled" if e else "construction",
                cubes=tuple(c * scale for c in inner.cubes),
                p_value=inner.p_value,
                p_factors=inner.p_factors,
                b=inner.b,
                x0=inner.x0,
                q=inner.q,
                x1=inner.x1,
                x2=inner.x2,
                x3=inner.x3,
                probable_primes=inner.probable_primes,
            )
            trace.recheck()
            return trace

    budget = SearchBudget(max_n=cfg.search_max_n, window=cfg.search_window)
    try:
        found = search_seven(n0, budget)
    except SearchLimitError as exc:
        raise OutOfScopeError(
            f"no constructive route for {n} and {n0} exceeds the search budget"
        ) from exc
    if found is None:  # complete search: a genuine non-representable value
        raise NotRepresentableError(f"{n} is not a sum of seven nonnegative cubes")
    trace = Trace(
        n=n,
        n0=n0,
        e=e,
        branch="scaled" if e else "fallback",
        cubes=tuple(c * scale for c in found),
    )
    trace.recheck()
    return trace
