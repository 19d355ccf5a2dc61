from __future__ import annotations

from math import gcd

from hypothesis import strategies as st

from torisol.semigroup import SurfaceParams


@st.composite
def coprime_pairs(draw, max_m=400):
    m = draw(st.integers(3, max_m))
    n = draw(st.integers(2, m - 1).filter(lambda n: gcd(n, m) == 1))
    return n, m


@st.composite
def surface_params(draw, max_m=400, max_lam=5):
    n, m = draw(coprime_pairs(max_m))
    return SurfaceParams(draw(st.integers(1, max_lam)), n, m)


def all_coprime(max_m):
    return [(n, m) for m in range(3, max_m + 1) for n in range(2, m) if gcd(n, m) == 1]
