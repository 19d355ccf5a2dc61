from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import coprime_pairs
from torisol import euclid
from torisol.errors import InvalidParams, NoSolution, OutOfRange


def brute_minimal(n, m, b0, l):
    """Smallest a in [0, n) with n*d + l*a = m*b0 and d >= 0."""
    for a in range(n):
        num = m * b0 - l * a
        if num % n == 0 and num // n >= 0:
            return num // n, a
    return None


def test_trace_of_golden_pair():
    t = euclid.successive_division(225, 328)
    assert t.h == (1, 2, 5, 2, 2, 1, 2)
    assert t.r == (225, 103, 19, 8, 3, 2, 1)
    assert t.q == 6


def test_trace_small_and_json():
    t = euclid.successive_division(2, 3)
    assert t.to_dict() == {"h": [1, 2], "r": [2, 1]}
    assert euclid.EuclidTrace.from_dict(t.to_dict()) == t


@pytest.mark.parametrize("n,m", [(2, 4), (1, 5), (5, 3), (6, 9), (0, 1)])
def test_trace_rejects_bad_pairs(n, m):
    with pytest.raises(InvalidParams):
        euclid.successive_division(n, m)


@given(coprime_pairs(2000))
def test_trace_invariants(pair):
    n, m = pair
    t = euclid.successive_division(n, m)
    t.validate()
    assert euclid.EuclidTrace.from_dict(t.to_dict()) == t
    assert t.h[t.q] >= 2 or t.q == 1


def test_from_dict_rejects_broken_trace():
    with pytest.raises(InvalidParams):
        euclid.EuclidTrace.from_dict({"h": [1, 3], "r": [2, 1]})


def test_boundary_collapse_gives_m_and_n():
    # the last step has a = 0, so (d, b) = (m, n)
    for n, m in [(225, 328), (2, 3), (7, 30), (13, 21)]:
        t = euclid.successive_division(n, m)
        b, d = euclid.boundary_values(t)
        assert (d[t.q], b[t.q]) == (m, n)
        rows = euclid.exponent_sequences(t)
        assert rows[-1].a == 0


def test_exponent_rows_golden_block():
    t = euclid.successive_division(225, 328)
    rows = {(r.k, r.j): r for r in euclid.exponent_sequences(t)}
    assert (rows[1, 2].a, rows[1, 2].b, rows[1, 2].d) == (19, 2, 3)
    assert (rows[3, 2].a, rows[3, 2].b, rows[3, 2].d) == (3, 24, 35)
    assert (rows[6, 1].a, rows[6, 1].b, rows[6, 1].d) == (1, 142, 207)


def test_c_sequence_golden():
    t = euclid.successive_division(225, 328)
    c = euclid.c_sequence(t)
    assert c[-1] == 1 and c[0] == 0
    assert c[1] == 1  # c_{1,h1} = c_0*h1 + c_{-1}
    assert c[2] == t.h[2] * c[1] + c[0]
    assert all(euclid.c_identity_holds(t, k) for k in range(t.q + 1))


@given(coprime_pairs(3000))
def test_c_identity_everywhere(pair):
    t = euclid.successive_division(*pair)
    assert all(euclid.c_identity_holds(t, k) for k in range(t.q + 1))


def test_minimal_diophantine_examples():
    s = euclid.minimal_diophantine(225, 328, 1, 1)
    assert (s.d, s.a) == (1, 103)
    s = euclid.minimal_diophantine(225, 328, 1, -1)
    assert (s.d, s.a) == (2, 122)
    s = euclid.minimal_diophantine(225, 328, 0, -1)
    assert (s.d, s.a) == (1, 225)


def test_minimal_diophantine_zero_plus():
    with pytest.raises(NoSolution) as info:
        euclid.minimal_diophantine(225, 328, 0, 1)
    assert (info.value.degenerate.d, info.value.degenerate.a) == (0, 0)


@given(coprime_pairs(300), st.integers(1, 600), st.sampled_from([1, -1]))
def test_minimal_diophantine_matches_brute_force(pair, b0, l):
    n, m = pair
    s = euclid.minimal_diophantine(n, m, b0, l)
    assert (s.d, s.a) == brute_minimal(n, m, b0, l)


@given(coprime_pairs(200), st.integers(1, 300), st.sampled_from([1, -1]), st.integers(0, 20))
def test_solution_family(pair, b0, l, t):
    n, m = pair
    base = euclid.minimal_diophantine(n, m, b0, l)
    try:
        s = euclid.solution_family(base, t)
    except OutOfRange:
        assert l == 1 and base.d - t < 0
        return
    assert n * s.d + l * s.a == m * b0


def test_solution_family_out_of_range():
    base = euclid.minimal_diophantine(225, 328, 1, 1)
    with pytest.raises(OutOfRange):
        euclid.solution_family(base, 2)
    assert euclid.solution_family(base, 0) == base


@given(st.integers(-10**6, 10**6), st.integers(1, 1000))
def test_divmod_negative(c, d):
    k, s = euclid.divmod_negative(c, d)
    assert c == k * d - s and 0 <= s < d


@given(coprime_pairs(2000))
def test_b_strictly_increases_along_the_table(pair):
    rows = euclid.exponent_sequences(euclid.successive_division(*pair))
    bs = [r.b for r in rows]
    assert bs == sorted(set(bs)) and bs[0] == 1 and bs[-1] == pair[0]
