from __future__ import annotations

from functools import reduce
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torisol import semigroup as sg
from torisol.errors import InvalidParams, NotPrenormalized, WrongCount, WrongRank
from torisol.semigroup import SemigroupSpec, SqParams, SurfaceParams, Verdict

EXAMPLE_SQ = SqParams(3, 2, ((2, 3), (3, 4, 5)), ((1, 1),), ((0, 1), (1, 0)))


@st.composite
def pure_power_lists(draw):
    k = draw(st.integers(2, 3))
    vals = draw(
        st.lists(st.integers(2, 13), min_size=k, max_size=k, unique=True).filter(
            lambda v: reduce(gcd, v) == 1
        )
    )
    return tuple(sorted(vals))


@st.composite
def sq_params(draw, max_s=4):
    s = draw(st.integers(2, max_s))
    q = draw(st.integers(1, s))
    m = tuple(draw(pure_power_lists()) for _ in range(q))
    coef = st.integers(1, 4)
    lam = tuple(tuple(draw(coef) for _ in range(q)) for _ in range(s - q))
    mu = tuple(tuple(0 if j == t else draw(coef) for t in range(q)) for j in range(q))
    return SqParams(s, q, m, lam, mu)


def test_spec_validation():
    with pytest.raises(InvalidParams):
        SemigroupSpec(2, ((1, 0), (0, 0)))
    with pytest.raises(InvalidParams):
        SemigroupSpec(2, ((1, 0, 0),))
    S = SemigroupSpec(2, ((1, 0), (1, 0), (0, 1)))
    assert S.duplicates() == [(1, 0)]
    assert SemigroupSpec.from_dict(S.to_dict()) == S


def test_surface_params_lambda_zero_policy():
    with pytest.raises(InvalidParams):
        SurfaceParams(0, 2, 3)
    assert SurfaceParams(0, 2, 3, allow_lambda_zero=True).lam == 0
    with pytest.raises(InvalidParams):
        SurfaceParams(1, 4, 6)


def test_embedding_bound_examples():
    assert sg.embedding_bound_check(SemigroupSpec(2, ((1, 0), (1, 1), (0, 2), (0, 3))))
    assert not sg.embedding_bound_check(SemigroupSpec(2, ((1, 0), (0, 2), (0, 3))))
    assert sg.embedding_bound_check(SemigroupSpec(3, ((1, 0, 0),) * 6))


def test_corank_examples():
    assert sg.corank(SurfaceParams(3, 225, 328).semigroup()) == 1
    assert sg.corank(SemigroupSpec(2, ((2, 0), (3, 0), (0, 2), (0, 3), (1, 1)))) == 2
    assert sg.corank(SemigroupSpec(2, ((1, 0), (0, 1)))) == 0
    with pytest.raises(NotPrenormalized):
        sg.corank(SemigroupSpec(2, ((1, 0), (-1, 1))))


def test_classify_surface_normal_form():
    r = sg.classify_surface(SurfaceParams(3, 225, 328).semigroup())
    assert r.verdict is Verdict.SURFACE_CORANK1
    assert (r.params["lambda"], r.params["l"], r.params["m"]) == (3, 2, [225, 328])


def test_classify_surface_free_monomial():
    r = sg.classify_surface(SemigroupSpec(2, ((1, 0), (0, 2), (0, 3), (1, 1), (5, 7))))
    assert r.verdict is Verdict.SURFACE_CORANK1
    assert r.params["free"] == [[5, 7]]


def test_classify_surface_lattice_failure():
    r = sg.classify_surface(SemigroupSpec(2, ((2, 0), (0, 2))))
    assert r.verdict is Verdict.NOT_ISOLATED
    assert r.check("lattice_span").passed is False


def test_classify_surface_swaps_axes():
    r = sg.classify_surface(SemigroupSpec(2, ((0, 1), (1, 4), (2, 0), (5, 0), (3, 0))))
    assert r.verdict is Verdict.SURFACE_CORANK1
    assert r.params["axes_swapped"] and r.params["lambda"] == 4 and r.params["m"] == [2, 3, 5]


def test_classify_surface_corank2():
    r = sg.classify_surface(SemigroupSpec(2, ((2, 0), (3, 0), (0, 2), (0, 3), (1, 1))))
    assert r.verdict is Verdict.SURFACE_CORANK2
    assert (r.params["lambda"], r.params["b1"]) == (1, 1)
    assert r.check("single_mixed_generator").passed


def test_classify_surface_singular_normalization():
    # extreme rays (1,0) and (1,2) span an index-2 sublattice
    r = sg.classify_surface(SemigroupSpec(2, ((1, 0), (1, 1), (1, 2), (2, 3))))
    assert r.verdict is Verdict.NOT_ISOLATED
    assert r.check("smooth_normalization").passed is False


def test_classify_surface_wrong_rank():
    with pytest.raises(WrongRank):
        sg.classify_surface(SemigroupSpec(3, ((1, 0, 0),)))


def test_classify_2s_examples():
    r = sg.classify_2s(SemigroupSpec(2, ((1, 0), (7, 1), (0, 2), (0, 5))))
    assert r.verdict is Verdict.NORMAL_FORM_2S
    assert (r.params["lambda"], r.params["n"], r.params["m"]) == ([7], 2, 5)
    assert r.params["surface"] == {"lambda": 7, "n": 2, "m": 5}

    S3 = SemigroupSpec(3, ((1, 0, 0), (0, 1, 0), (2, 0, 1), (0, 3, 1), (0, 0, 2), (0, 0, 5)))
    r = sg.classify_2s(S3)
    assert r.verdict is Verdict.NORMAL_FORM_2S
    assert (r.params["lambda"], r.params["n"], r.params["m"]) == ([2, 3], 2, 5)

    r = sg.classify_2s(SemigroupSpec(2, ((1, 0), (1, 1), (0, 2), (0, 4))))
    assert r.verdict is Verdict.NOT_ISOLATED
    assert "gcd(n, m) = 2" in r.check("pure_powers").detail


def test_classify_2s_wrong_count():
    with pytest.raises(WrongCount):
        sg.classify_2s(SemigroupSpec(2, ((1, 0), (1, 1), (0, 2))))


@given(st.permutations(range(6)))
def test_classify_2s_permutation_invariant(perm):
    gens = ((1, 0, 0), (0, 1, 0), (2, 0, 1), (0, 3, 1), (0, 0, 2), (0, 0, 5))
    r = sg.classify_2s(SemigroupSpec(3, tuple(gens[i] for i in perm)))
    assert r.verdict is Verdict.NORMAL_FORM_2S
    assert (r.params["lambda"], r.params["n"], r.params["m"]) == ([2, 3], 2, 5)


@given(st.integers(1, 5), st.integers(2, 30), st.integers(3, 60), st.integers(-6, 6))
def test_classify_2s_shear_invariant(lam, n, m, c):
    if not (n < m and gcd(n, m) == 1):
        return
    gens = SurfaceParams(lam, n, m).semigroup().generators
    sheared = tuple((x, y + c * x) for x, y in gens)
    r = sg.classify_2s(SemigroupSpec(2, sheared))
    assert r.verdict is Verdict.NORMAL_FORM_2S
    assert (r.params["n"], r.params["m"]) == (n, m)


def test_build_sq_surface_case():
    p = SqParams(2, 1, ((5, 7),), ((3,),), ((0,),))
    assert sg.build_sq(p).generators == ((1, 0), (0, 5), (0, 7), (3, 1))
    b = sg.embedding_dim_bounds(p)
    assert (b["lower"], b["upper"]) == (4, 4)


def test_build_sq_ten_generators():
    S = sg.build_sq(EXAMPLE_SQ)
    assert S.p == 10
    assert S.generators == (
        (1, 0, 0), (0, 2, 0), (0, 3, 0), (0, 0, 3), (0, 0, 4), (0, 0, 5),
        (1, 1, 0), (1, 0, 1), (0, 1, 1), (0, 1, 1),
    )
    b = sg.embedding_dim_bounds(EXAMPLE_SQ)
    assert (b["lower"], b["upper"], b["embedded"]) == (8, 10, 9)


def test_build_sq_rejects_curve_case():
    with pytest.raises(InvalidParams):
        SqParams(1, 1, ((2, 3),), (), ((0,),))


@pytest.mark.parametrize(
    "m,lam,mu",
    [
        (((2, 4),), ((1,),), ((0,),)),  # gcd 2
        (((3, 2),), ((1,),), ((0,),)),  # not increasing
        (((3,),), ((1,),), ((0,),)),  # k < 2
        (((1, 2),), ((1,),), ((0,),)),  # exponent 1
        (((2, 3),), ((0,),), ((0,),)),  # lambda 0
    ],
)
def test_sq_params_validation(m, lam, mu):
    with pytest.raises(InvalidParams):
        SqParams(2, 1, m, lam, mu)


def test_contains_sq_examples():
    w = sg.contains_sq(SurfaceParams(2, 3, 5).semigroup(), 1)
    assert w is not None and w.indices == (0, 1, 2, 3)
    w = sg.contains_sq(SemigroupSpec(2, ((1, 0), (0, 2), (0, 3), (1, 1), (5, 7))), 1)
    assert w is not None and w.indices == (0, 1, 2, 3)
    assert sg.contains_sq(SemigroupSpec(2, ((2, 0), (3, 0), (0, 2), (0, 3))), 2) is None


def test_minimal_generators():
    assert sg.minimal_generators([(2,), (3,), (4,), (5,)]) == [(2,), (3,)]
    assert sg.in_semigroup((7, 1), [(1, 0), (3, 1)])
    assert not sg.in_semigroup((2, 1), [(3, 1), (0, 2)])


def test_indeterminate_when_search_fails():
    # a shear too large for the default bound of 1 would need depth 2 as well
    S = sg.build_sq(EXAMPLE_SQ)
    T = ((1, 5, 0), (0, 1, 0), (0, 0, 1))
    moved = SemigroupSpec(3, tuple(sg.apply(T, g) for g in S.generators))
    r = sg.classify(moved, shear_bound=1, depth=1, budget=200)
    assert r.verdict is Verdict.INDETERMINATE
    assert sg.classify(moved).verdict is Verdict.CONTAINS_SQ


def test_smooth_semigroup_is_indeterminate():
    r = sg.classify(SemigroupSpec(2, ((1, 0), (0, 1), (1, 1), (2, 3))))
    assert r.verdict is Verdict.INDETERMINATE
    assert r.check("corank").detail.startswith("corank 0")


def expected_round_trip(p: SqParams):
    if p.q == 1 and p.k == (2,):
        return Verdict.NORMAL_FORM_2S
    if p.s == 2:
        return Verdict.SURFACE_CORANK1 if p.q == 1 else Verdict.SURFACE_CORANK2
    return Verdict.CONTAINS_SQ


def recovered(p: SqParams, r) -> bool:
    if r.verdict is Verdict.NORMAL_FORM_2S:
        return (r.params["lambda"], [r.params["n"], r.params["m"]]) == (
            [row[0] for row in p.lam], list(p.m[0])
        )
    if r.verdict is Verdict.SURFACE_CORANK1:
        return (r.params["lambda"], r.params["m"]) == (p.lam[0][0], list(p.m[0]))
    if r.verdict is Verdict.SURFACE_CORANK2:
        return (r.params["n"], r.params["m"], r.params["lambda"], r.params["b1"]) == (
            list(p.m[0]), list(p.m[1]), p.mu[0][1], p.mu[1][0]
        )
    return SqParams.from_dict(r.params["params"]) == p


def check_round_trip(p: SqParams) -> bool:
    S = sg.build_sq(p)
    r = sg.classify(S)
    return r.verdict is expected_round_trip(p) and recovered(p, r) and sg.corank(S) == p.q


@given(sq_params())
@settings(max_examples=150, deadline=None)
def test_round_trip(p):
    assert check_round_trip(p)
    b = sg.embedding_dim_bounds(p)
    assert b["lower"] == p.s * (p.q + 1) - p.q * (p.q - 1) // 2
    assert b["upper"] >= 2 * p.s and b["lower"] <= b["embedded"] <= b["upper"]
    assert sg.embedding_bound_check(sg.build_sq(p))


@given(
    st.integers(1, 4).flatmap(
        lambda s: st.tuples(
            st.just(s),
            st.lists(
                st.lists(st.integers(-5, 5), min_size=s, max_size=s).filter(any),
                min_size=1,
                max_size=2 * s - 1,
            ),
        )
    )
)
def test_embedding_gate(data):
    s, gens = data
    S = SemigroupSpec(s, tuple(map(tuple, gens)))
    r = sg.classify(S)
    assert r.verdict is Verdict.NOT_ISOLATED
    assert r.check("embedding_bound").passed is False


def test_result_json_round_trip():
    r = sg.classify(sg.build_sq(EXAMPLE_SQ))
    assert sg.ClassificationResult.from_dict(r.to_dict()) == r
