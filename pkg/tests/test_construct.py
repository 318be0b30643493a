"""Cube engine tests.

The worked decomposition of 202258 (modulus 5, anchor 2, residual 225) is
frozen end to end, and the ternary-form exclusion predicate is checked
against a brute-force three-square scan.
"""

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sevencubes.construct import (
    IDENTITY_CONSTANT,
    ConstructionError,
    DecomposeConfig,
    NotRepresentableError,
    OutOfScopeError,
    TernaryRep,
    Trace,
    _cornacchia_two,
    anchor_root,
    assemble_cubes,
    decompose,
    dickson_excluded,
    reduce_125,
    represent_ternary,
    residual_quotient,
    verify,
)
from sevencubes.modulus import AuxModulus, modulus_interval
from sevencubes.arith import primes_upto

P5 = AuxModulus.from_value(5)
P1 = AuxModulus.from_value(1)


# -- identity -----------------------------------------------------------------


def test_identity_constant():
    assert IDENTITY_CONSTANT == 1402 == 2 * (4**3 + 5**3 + 8**3)


@settings(max_examples=400, deadline=None)
@given(
    st.integers(min_value=1, max_value=10**9),
    st.integers(min_value=-(10**6), max_value=10**6),
    st.integers(min_value=-(10**6), max_value=10**6),
    st.integers(min_value=-(10**6), max_value=10**6),
)
def test_six_cube_identity(p, a, b, c):
    total = sum(
        base**3
        for base in (4 * p + a, 4 * p - a, 5 * p + b, 5 * p - b, 8 * p + c, 8 * p - c)
    )
    assert total == IDENTITY_CONSTANT * p**3 + 6 * p * (4 * a * a + 5 * b * b + 8 * c * c)


# -- reduction ----------------------------------------------------------------


def test_reduce_125():
    assert reduce_125(202258) == (202258, 0)
    assert reduce_125(2750) == (22, 1)
    assert reduce_125(125**3 * 6) == (6, 3)
    with pytest.raises(ValueError):
        reduce_125(0)
    with pytest.raises(ValueError):
        reduce_125(-125)


# -- anchor -------------------------------------------------------------------


def test_anchor_root_worked_examples():
    assert anchor_root(202258, P5) == 2
    assert anchor_root(1626, P1) == 2


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=0, max_value=10**12))
def test_anchor_root_properties(k):
    n = 4 * k + 2
    for modulus in (P1, P5, AuxModulus.from_value(55)):
        p = modulus.value
        x0 = anchor_root(n, modulus)
        assert 0 < x0 <= 6 * p
        assert x0 % 2 == 0
        assert (x0**3 - (n - IDENTITY_CONSTANT * p**3)) % (6 * p) == 0


def test_anchor_root_divisibility_in_window():
    # inside the validity window the full 24*p divisibility must hold
    n = 202258
    lo, hi = modulus_interval(n)
    assert (lo, hi) == (5, 5)
    x0 = anchor_root(n, P5)
    assert (n - x0**3 - IDENTITY_CONSTANT * 125) % (24 * 5) == 0


# -- residual -----------------------------------------------------------------


def test_residual_quotient_worked_example():
    assert residual_quotient(202258, 5, 2) == 225


def test_residual_quotient_rejects_bad_anchor():
    # the anchor for 202262 (mod 30) is 18, but 24*5 does not divide the rest
    with pytest.raises(ConstructionError):
        residual_quotient(202262, 5, 18)


def test_residual_quotient_rejects_negative():
    with pytest.raises(ConstructionError):
        residual_quotient(1500, 1, 2)


# -- exclusion predicate -------------------------------------------------------


def brute_has_representation(q):
    y = 0
    while 5 * y * y <= q:
        x3 = 0
        while 5 * y * y + 2 * x3 * x3 <= q:
            r = q - 5 * y * y - 2 * x3 * x3
            s = int(r**0.5)
            if any((s + d) ** 2 == r for d in (-1, 0, 1, 2)):
                return True
            x3 += 1
        y += 1
    return False


def test_dickson_excluded_matches_brute_force():
    for q in range(0, 4000):
        assert dickson_excluded(q) == (q > 0 and not brute_has_representation(q)), q


def test_dickson_excluded_spot():
    assert dickson_excluded(10) and dickson_excluded(15)
    assert dickson_excluded(25 * 10) and dickson_excluded(625 * 15)
    assert not dickson_excluded(0)
    assert not dickson_excluded(225)
    assert not dickson_excluded(-10)


# -- ternary representation ----------------------------------------------------


def test_represent_ternary_frozen():
    assert represent_ternary(6) == TernaryRep(2, 1, 0)
    assert represent_ternary(225) == TernaryRep(15, 0, 0)
    assert represent_ternary(0) == TernaryRep(0, 0, 0)


def test_represent_ternary_rejects_excluded():
    for q in (10, 15, 250, 375):
        with pytest.raises(ConstructionError):
            represent_ternary(q)


@settings(max_examples=500, deadline=None)
@given(st.integers(min_value=0, max_value=10**7))
def test_represent_ternary_roundtrip(q):
    if dickson_excluded(q):
        return
    rep = represent_ternary(q)
    assert rep.q() == q
    assert rep.x1 >= 0 and rep.x3 >= 0 and rep.y >= 0


def test_represent_ternary_deterministic():
    reps = {represent_ternary(123456789, brute_limit=10**6) for _ in range(3)}
    assert len(reps) == 1
    assert reps.pop().q() == 123456789


def test_represent_ternary_large_fiber():
    # too large for the complete scan: exercises the prime-fiber route
    q = 10**16 + 1
    assert not dickson_excluded(q)
    rep = represent_ternary(q)
    assert rep.q() == q


def test_represent_ternary_large_five_adic():
    # v5(q) == 1 forces x1 and x3 to multiples of 5: the fiber must peel the
    # 5-adic part or every remainder stays divisible by 5 and nothing certifies
    for q in (587535151394650, 5 * (10**14 + 1), 25 * (10**14 + 2)):
        rep = represent_ternary(q)
        assert rep.q() == q


def test_represent_ternary_large_even_classes():
    # q == 2 (mod 8) admits no odd-prime fiber; needs the 2*prime shape
    q = 10**15 + 2
    assert q % 8 == 2
    rep = represent_ternary(q)
    assert rep.q() == q


def test_binary_part_shapes():
    from sevencubes.construct import _binary_part

    assert _binary_part(0) == (0, 0)
    assert _binary_part(49) == (7, 0)
    assert _binary_part(2) == (0, 1)
    assert _binary_part(8) == (0, 2)
    for m in range(0, 3000):
        got = _binary_part(m)
        if got is not None:
            a, b = got
            assert a * a + 2 * b * b == m, m
    # odd primes == 5, 7 (mod 8) have no such form
    assert _binary_part(5) is None
    assert _binary_part(7) is None


def test_cornacchia_two_exhaustive():
    for p in primes_upto(4000):
        if p % 8 not in (1, 3):
            continue
        a, b = _cornacchia_two(p)
        assert a * a + 2 * b * b == p, p


# -- assembly -----------------------------------------------------------------


def test_assemble_cubes_worked_example():
    cubes = assemble_cubes(202258, 5, 2, TernaryRep(15, 0, 0))
    assert cubes == (2, 35, 5, 25, 25, 40, 40)
    assert verify(cubes, 202258)


def test_assemble_cubes_rejects_mismatch():
    with pytest.raises(ConstructionError):
        assemble_cubes(202258, 5, 2, TernaryRep(15, 1, 0))
    with pytest.raises(ConstructionError):
        assemble_cubes(202258, 5, 3, TernaryRep(15, 0, 0))


def test_verify_shape_checks():
    assert verify((2, 35, 5, 25, 25, 40, 40), 202258)
    assert not verify((2, 35, 5, 25, 25, 40), 202258 - 64000)
    assert not verify((2, 35, 5, 25, 25, 40, -40), 202258 - 2 * 64000)
    assert not verify((2.0, 35, 5, 25, 25, 40, 40), 202258)


# -- decompose ----------------------------------------------------------------


def test_decompose_worked_example_full_pin():
    tr = decompose(202258)
    assert tr.branch == "construction"
    assert tr.p_value == 5 and tr.p_factors == (5,)
    assert tr.x0 == 2 and tr.q == 225
    assert (tr.x1, tr.x2, tr.x3) == (15, 0, 0)
    assert tr.cubes == (2, 35, 5, 25, 25, 40, 40)
    assert tr.verified and tr.recheck()


def test_decompose_smallest_window():
    tr = decompose(1626)
    assert tr.branch == "construction" and tr.p_value == 1
    assert tr.cubes == (2, 7, 1, 5, 5, 8, 8)
    assert tr.verified


def test_decompose_exceptions_raise():
    for n in (15, 22, 23, 50, 239, 454):
        with pytest.raises(NotRepresentableError):
            decompose(n)


def test_decompose_exceptional_scaled():
    tr = decompose(2750)  # 125 * 22: five positive cubes exist at this scale
    assert tr.branch == "fallback" and tr.e == 1 and tr.n0 == 22
    assert tr.verified and min(tr.cubes) >= 0

    tr2 = decompose(125 * 125 * 22)
    assert tr2.branch == "scaled" and tr2.e == 2
    assert tr2.verified
    assert tuple(c // 5 for c in tr2.cubes) == tr.cubes


def test_decompose_midrange_fallback():
    tr = decompose(10**6 + 2)
    assert tr.branch == "fallback"
    assert tr.p_value is None
    assert tr.verified


def test_decompose_out_of_scope():
    # window between direct and composite coverage, beyond search budget
    with pytest.raises(OutOfScopeError):
        decompose(10**12 + 2)


def test_decompose_trivial_and_invalid():
    assert decompose(0).cubes == (0,) * 7
    assert decompose(3).cubes == (1, 1, 1, 0, 0, 0, 0)
    with pytest.raises(ValueError):
        decompose(-8)
    with pytest.raises(TypeError):
        decompose(2.0)
    with pytest.raises(TypeError):
        decompose(True)


def test_decompose_large_construction():
    tr = decompose(10**18 + 2)
    assert tr.branch == "construction"
    lo, hi = modulus_interval(10**18 + 2)
    assert lo <= tr.p_value <= hi
    assert tr.verified and tr.recheck()
    assert tr.b == tr.p_value % 25


def test_decompose_scaled_construction():
    n = 125 * (10**18 + 2)
    tr = decompose(n)
    assert tr.branch == "scaled" and tr.e == 1
    assert tr.cubes == tuple(5 * c for c in decompose(10**18 + 2).cubes)
    assert tr.verified


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=10**18 // 4, max_value=10**19 // 4))
def test_decompose_large_random(k):
    n = 4 * k + 2
    tr = decompose(n)
    assert tr.verified
    assert sum(c**3 for c in tr.cubes) == n
    if tr.branch == "construction":
        assert tr.q == tr.x1**2 + 2 * tr.x3**2 + 5 * (tr.x2 // 2) ** 2
        assert not dickson_excluded(tr.q)


def test_decompose_respects_config():
    cfg = DecomposeConfig(search_max_n=100)
    with pytest.raises(OutOfScopeError):
        decompose(1004, cfg)  # even, == 0 mod 4, search capped below it


# -- trace serialisation -------------------------------------------------------


def test_trace_record_layout():
    record = decompose(202258).to_record()
    assert list(record) == [
        "n",
        "n0",
        "e",
        "branch",
        "p_value",
        "p_factors",
        "b",
        "x0",
        "q",
        "x1",
        "x2",
        "x3",
        "cubes",
        "verified",
    ]
    assert json.loads(json.dumps(record)) == record
    assert record["cubes"] == [2, 35, 5, 25, 25, 40, 40]
    assert record["verified"] is True


def test_trace_recheck_detects_tampering():
    tr = decompose(1626)
    tr.cubes = (2, 7, 1, 5, 5, 8, 9)
    assert not tr.recheck() and not tr.verified
