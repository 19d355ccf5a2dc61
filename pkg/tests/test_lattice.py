from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torisol import lattice
from torisol.errors import SearchBudgetExceeded

small = st.integers(-6, 6)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@given(st.integers(1, 5).flatmap(lambda r: st.integers(1, 5).flatmap(lambda c: matrices(r, c))))
@settings(max_examples=200)
def test_hnf_is_unimodular_transform(M):
    H, U = lattice.hermite_normal_form(M)
    assert lattice.matmul(U, M) == tuple(map(tuple, H))
    assert abs(lattice.det(U)) == 1
    # echelon shape with positive, reducing pivots
    last = -1
    for i, row in enumerate(H):
        if not any(row):
            assert all(not any(r) for r in H[i:])
            break
        c = next(j for j, x in enumerate(row) if x)
        assert c > last and row[c] > 0
        assert all(0 <= H[r][c] < row[c] for r in range(i))
        last = c


def test_det_matches_permutation_expansion():
    M = ((2, -1, 0, 3), (1, 4, -2, 0), (0, 5, 1, 1), (3, 0, 2, -4))

    def leibniz(A):
        n = len(A)
        total = 0
        for perm in itertools.permutations(range(n)):
            inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
            prod = 1
            for i in range(n):
                prod *= A[i][perm[i]]
            total += (-1) ** inv * prod
        return total

    assert lattice.det(M) == leibniz(M)
    assert lattice.det(((0, 1), (1, 0))) == -1
    assert lattice.det(((1, 2), (2, 4))) == 0


def test_kernel_of_surface_generators():
    gens = ((1, 0), (1, 1), (0, 2), (0, 3))
    basis = lattice.kernel_basis(gens)
    assert len(basis) == 2
    for v in basis:
        assert lattice.in_kernel(gens, v)
    # the basis must generate (0, 0, 3, -2) and (-2, 2, -1, 0) over Z
    H, _ = lattice.hermite_normal_form(basis)
    for target in ((0, 0, 3, -2), (-2, 2, -1, 0)):
        H2, _ = lattice.hermite_normal_form(basis + (target,))
        assert [r for r in H2 if any(r)] == [r for r in H if any(r)]


def test_kernel_of_basis_is_empty():
    assert lattice.kernel_basis(((1, 0), (0, 1))) == ()


def test_spans_full_lattice():
    assert lattice.spans_full_lattice(((1, 0), (1, 1), (0, 2), (0, 3)))
    assert not lattice.spans_full_lattice(((2, 0), (0, 2)))
    assert not lattice.spans_full_lattice(((1, 0, 0), (0, 1, 0)))


def test_canonical_sign():
    assert lattice.canonical_sign((3, -1, 2, 0)) == (-3, 1, -2, 0)
    assert lattice.canonical_sign((0, 0, -3, 2)) == (0, 0, 3, -2)
    assert lattice.canonical_sign((0, 0, 0, 0)) == (0, 0, 0, 0)


def test_split_kernel_vector():
    kv = lattice.split_kernel_vector((-2, 2, -1, 0))
    assert kv.plus == (0, 2, 0, 0) and kv.minus == (2, 0, 1, 0)
    with pytest.raises(ValueError):
        lattice.KernelVector((1, 0), (1, 1), (0, 1))


def test_extreme_rays_2d():
    assert lattice.extreme_rays_2d([(1, 0), (3, 1), (0, 2)]) == ((1, 0), (0, 1))
    assert lattice.extreme_rays_2d([(2, 1), (4, 6), (1, 3)]) == ((2, 1), (1, 3))
    assert lattice.extreme_rays_2d([(1, 0), (-1, 0), (0, 1)]) is None
    assert lattice.extreme_rays_2d([(1, 1), (-1, 1), (0, -1)]) is None


def test_cone_checks():
    rep = lattice.cone_checks(((1, 0, 0), (0, 1, 0), (2, 0, 1), (0, 0, 2)))
    assert rep.strongly_convex and rep.cone_is_orthant and rep.saturation_orthant
    rep = lattice.cone_checks(((1, 0, 0), (0, 1, 0), (1, -1, 1), (0, 0, 1)))
    assert rep.strongly_convex and not rep.cone_is_orthant
    rep = lattice.cone_checks(((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, 0, 1)))
    assert not rep.strongly_convex


def test_strong_convexity_needs_large_functional():
    # the only separating functionals are steep, e.g. (-19, 2, 1)
    assert lattice.cone_checks(((1, 10, 0), (-1, -9, 0), (0, 0, 1))).strongly_convex


def test_strong_convexity_budget():
    with pytest.raises(SearchBudgetExceeded):
        lattice.cone_checks(((1, 10, 0), (-1, -9, 0), (0, 0, 1)), budget=10)
