"""Exact integer linear algebra for semigroup homomorphisms.

Vectors are tuples of Python ints and matrices are tuples of row tuples, so
nothing here ever rounds or overflows.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional, Sequence, Tuple

from .errors import SearchBudgetExceeded

IntVector = Tuple[int, ...]
IntMatrix = Tuple[IntVector, ...]


def _generators(S) -> IntMatrix:
    gens = getattr(S, "generators", S)
    return tuple(tuple(int(x) for x in g) for g in gens)


def _ambient_rank(S, gens: IntMatrix) -> int:
    s = getattr(S, "s", None)
    if s is not None:
        return s
    if not gens:
        raise ValueError("cannot infer ambient rank from an empty generator list")
    return len(gens[0])


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> IntMatrix:
    cols = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A)


def det(M: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (Bareiss, fraction free)."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def hermite_normal_form(M: Sequence[Sequence[int]]) -> Tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ M == H``. ``H`` is upper
    echelon, every pivot is positive and the entries above a pivot lie in
    ``[0, pivot)``.
    """
    if not M or not M[0]:
        raise ValueError("hermite_normal_form needs a nonempty matrix")
    rows, cols = len(M), len(M[0])
    H = [list(map(int, r)) for r in M]
    U = [list(r) for r in identity(rows)]

    def sub(i, r, q):
        H[i] = [a - q * b for a, b in zip(H[i], H[r])]
        U[i] = [a - q * b for a, b in zip(U[i], U[r])]

    def swap(i, j):
        H[i], H[j] = H[j], H[i]
        U[i], U[j] = U[j], U[i]

    r = 0
    for c in range(cols):
        if r == rows:
            break
        while True:
            nonzero = [i for i in range(r, rows) if H[i][c] != 0]
            if not nonzero:
                break
            swap(r, min(nonzero, key=lambda i: abs(H[i][c])))
            clean = True
            for i in range(r + 1, rows):
                if H[i][c]:
                    sub(i, r, H[i][c] // H[r][c])
                    clean = clean and H[i][c] == 0
            if clean:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        for i in range(r):
            sub(i, r, H[i][c] // H[r][c])
        r += 1
    return tuple(map(tuple, H)), tuple(map(tuple, U))


def hnf_rank(H: IntMatrix) -> int:
    return sum(1 for row in H if any(row))


def canonical_sign(alpha: Sequence[int]) -> IntVector:
    """Orient a kernel vector so its second entry is >= 0.

    When the second entry vanishes the first nonzero entry is made positive.
    """
    alpha = tuple(int(x) for x in alpha)
    if len(alpha) >= 2 and alpha[1] != 0:
        return alpha if alpha[1] > 0 else tuple(-x for x in alpha)
    for x in alpha:
        if x != 0:
            return alpha if x > 0 else tuple(-x for x in alpha)
    return alpha


def evaluate(S, alpha: Sequence[int]) -> IntVector:
    """The image sum(alpha_i * gamma_i) of ``alpha`` under the semigroup map."""
    gens = _generators(S)
    if len(alpha) != len(gens):
        raise ValueError(f"vector has {len(alpha)} entries, semigroup has {len(gens)} generators")
    s = _ambient_rank(S, gens)
    return tuple(sum(a * g[i] for a, g in zip(alpha, gens)) for i in range(s))


def in_kernel(S, alpha: Sequence[int]) -> bool:
    return not any(evaluate(S, alpha))


def kernel_basis(S) -> Tuple[IntVector, ...]:
    """A Z-basis of the kernel of ``alpha -> sum(alpha_i * gamma_i)``.

    Each basis vector is returned in canonical sign.
    """
    gens = _generators(S)
    if not gens:
        raise ValueError("semigroup has no generators")
    H, U = hermite_normal_form(gens)
    rank = hnf_rank(H)
    return tuple(canonical_sign(U[i]) for i in range(rank, len(gens)))


def spans_full_lattice(S) -> bool:
    gens = _generators(S)
    s = _ambient_rank(S, gens)
    if not gens:
        return False
    H, _ = hermite_normal_form(gens)
    pivots = [next(x for x in row if x) for row in H if any(row)]
    return len(pivots) == s and all(p == 1 for p in pivots)


@dataclass(frozen=True)
class KernelVector:
    alpha: IntVector
    plus: IntVector
    minus: IntVector

    def __post_init__(self):
        if any(a != p - m for a, p, m in zip(self.alpha, self.plus, self.minus)):
            raise ValueError("alpha must equal plus - minus")
        if any(p and m for p, m in zip(self.plus, self.minus)):
            raise ValueError("plus and minus must have disjoint supports")
        if any(x < 0 for x in self.plus + self.minus):
            raise ValueError("plus and minus must be nonnegative")


def split_kernel_vector(alpha: Sequence[int]) -> KernelVector:
    alpha = tuple(int(x) for x in alpha)
    return KernelVector(
        alpha=alpha,
        plus=tuple(max(a, 0) for a in alpha),
        minus=tuple(max(-a, 0) for a in alpha),
    )


# -- cone geometry ---------------------------------------------------------


def _cross(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _dot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def extreme_rays_2d(gens: Iterable[Sequence[int]]) -> Optional[Tuple[IntVector, IntVector]]:
    """Clockwise and counter-clockwise boundary generators of a planar cone.

    Returns ``None`` when the cone contains a line. For a cone spanned by a
    single direction both rays coincide.
    """
    gens = [tuple(g) for g in gens if any(g)]
    if not gens:
        return None

    def bounds_cw(u):
        return all(_cross(u, g) > 0 or (_cross(u, g) == 0 and _dot(u, g) > 0) for g in gens)

    def bounds_ccw(u):
        return all(_cross(g, u) > 0 or (_cross(g, u) == 0 and _dot(u, g) > 0) for g in gens)

    first = next((g for g in gens if bounds_cw(g)), None)
    last = next((g for g in gens if bounds_ccw(g)), None)
    if first is None or last is None:
        return None
    return _primitive(first), _primitive(last)


def _primitive(v: Sequence[int]) -> IntVector:
    g = 0
    for x in v:
        g = gcd(g, x)
    return tuple(x // g for x in v) if g else tuple(v)


def _strongly_convex_search(gens: IntMatrix, s: int, budget: int) -> bool:
    # Certificate for pointedness: an integer functional positive on every generator.
    # Certificate against: a nontrivial nonnegative combination summing to zero.
    if all(all(x >= 0 for x in g) for g in gens) or all(all(x <= 0 for x in g) for g in gens):
        return True
    tried = 0
    for box in itertools.count(1):
        for w in itertools.product(range(-box, box + 1), repeat=s):
            if max(map(abs, w)) != box:
                continue
            tried += 1
            if all(_dot(w, g) > 0 for g in gens):
                return True
        for coeffs in itertools.product(range(box + 1), repeat=len(gens)):
            if max(coeffs) != box:
                continue
            tried += 1
            if not any(sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(s)):
                return False
        if tried > budget:
            raise SearchBudgetExceeded(
                f"strong convexity undecided after {tried} candidates", partial={"box": box}
            )


def is_orthant_position(gens: Iterable[Sequence[int]], s: int) -> bool:
    """All generators in N^s and every coordinate axis carries one."""
    gens = [g for g in gens if any(g)]
    if not gens or any(x < 0 for g in gens for x in g):
        return False
    axes = {next(i for i, x in enumerate(g) if x) for g in gens if sum(1 for x in g if x) == 1}
    return len(axes) == s


@dataclass(frozen=True)
class ConeReport:
    strongly_convex: bool
    cone_is_orthant: bool
    saturation_orthant: bool


def cone_checks(S, budget: int = 200_000) -> ConeReport:
    """Exact cone tests.

    ``cone_is_orthant`` holds iff every generator is nonnegative and each
    coordinate axis carries a generator; the saturation test coincides with it
    because a rational cone is the closed hull of its lattice points.
    """
    gens = tuple(g for g in _generators(S) if any(g))
    s = _ambient_rank(S, gens)
    if s == 1:
        convex = all(g[0] > 0 for g in gens) or all(g[0] < 0 for g in gens)
    elif s == 2:
        convex = extreme_rays_2d(gens) is not None
    else:
        convex = _strongly_convex_search(gens, s, budget)
    orthant = is_orthant_position(gens, s)
    return ConeReport(strongly_convex=convex, cone_is_orthant=orthant, saturation_orthant=orthant)
