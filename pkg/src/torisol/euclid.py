"""Successive division of coprime (n, m) and the exponent recursions it drives.

Sequences indexed by the division step ``k`` are stored in dicts keyed by
``k in {-1, 0, 1, ..., q}`` so the seed values sit at their own indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Dict, List, Tuple

from .errors import InvalidParams, NoSolution, OutOfRange

# Seeds at k = -1 and k = 0 for the b, d and c recursions.
B_SEED = {-1: 0, 0: 1}
C_SEED = {-1: 1, 0: 0}


def check_coprime_pair(n: int, m: int) -> None:
    if not (isinstance(n, int) and isinstance(m, int)):
        raise InvalidParams("n and m must be integers")
    if n <= 1:
        raise InvalidParams(f"need n > 1, got n={n}")
    if m <= n:
        raise InvalidParams(f"need m > n, got n={n}, m={m}")
    if gcd(n, m) != 1:
        raise InvalidParams(f"need gcd(n, m) = 1, got gcd({n}, {m}) = {gcd(n, m)}")


@dataclass(frozen=True)
class EuclidTrace:
    """Quotients ``h[0..q]`` and remainders ``r[0..q]`` (``r[0] = n``, ``r[q] = 1``)."""

    n: int
    m: int
    h: Tuple[int, ...]
    r: Tuple[int, ...]

    @property
    def q(self) -> int:
        return len(self.h) - 1

    def remainder(self, k: int) -> int:
        """``r_k`` with ``r_{q+1} = 0`` (the division terminates exactly)."""
        if k == self.q + 1:
            return 0
        return self.r[k]

    def validate(self) -> None:
        n, m, h, r = self.n, self.m, self.h, self.r
        check_coprime_pair(n, m)
        q = self.q
        if q < 1 or len(r) != q + 1 or r[0] != n or r[q] != 1:
            raise InvalidParams("malformed trace")
        if not (m == h[0] * n + r[1] and 0 < r[1] < n):
            raise InvalidParams("first division step does not hold")
        for k in range(2, q + 1):
            if not (r[k - 2] == h[k - 1] * r[k - 1] + r[k] and 0 < r[k] < r[k - 1]):
                raise InvalidParams(f"division step {k} does not hold")
        if r[q - 1] != h[q] * r[q]:
            raise InvalidParams("last division step does not hold")

    def to_dict(self) -> dict:
        return {"h": list(self.h), "r": list(self.r)}

    @classmethod
    def from_dict(cls, data: dict) -> "EuclidTrace":
        h, r = tuple(data["h"]), tuple(data["r"])
        trace = cls(n=r[0], m=h[0] * r[0] + r[1], h=h, r=r)
        trace.validate()
        return trace


def successive_division(n: int, m: int) -> EuclidTrace:
    check_coprime_pair(n, m)
    h0, r1 = divmod(m, n)
    h, r = [h0], [n, r1]
    while r[-1] != 1:
        quot, rem = divmod(r[-2], r[-1])
        h.append(quot)
        r.append(rem)
    # last step: r_{q-1} = h_q * r_q with r_q = 1
    h.append(r[-2])
    return EuclidTrace(n=n, m=m, h=tuple(h), r=tuple(r))


@dataclass(frozen=True)
class ExponentRow:
    k: int
    j: int
    a: int
    b: int
    d: int


def boundary_values(t: EuclidTrace) -> Tuple[Dict[int, int], Dict[int, int]]:
    """``b_{k,h_k}`` and ``d_{k,h_k}`` for k = -1..q, seeds included."""
    b = dict(B_SEED)
    d = {-1: 1, 0: t.h[0]}
    for k in range(1, t.q + 1):
        b[k] = b[k - 1] * t.h[k] + b[k - 2]
        d[k] = d[k - 1] * t.h[k] + d[k - 2]
    return b, d


def exponent_sequences(t: EuclidTrace) -> List[ExponentRow]:
    b_end, d_end = boundary_values(t)
    rows = []
    for k in range(1, t.q + 1):
        for j in range(1, t.h[k] + 1):
            rows.append(
                ExponentRow(
                    k=k,
                    j=j,
                    a=t.r[k - 1] - t.r[k] * j,
                    b=b_end[k - 1] * j + b_end[k - 2],
                    d=d_end[k - 1] * j + d_end[k - 2],
                )
            )
    return rows


def c_sequence(t: EuclidTrace) -> Dict[int, int]:
    """``c_{k,h_k}`` for k = -1..q (seeds c_{-1} = 1, c_0 = 0 included)."""
    c = dict(C_SEED)
    for k in range(1, t.q + 1):
        c[k] = c[k - 1] * t.h[k] + c[k - 2]
    return c


def c_identity_holds(t: EuclidTrace, k: int) -> bool:
    """Check ``r_1 * b_{k,h_k} == n * c_{k,h_k} + (-1)^k * r_{k+1}``."""
    b_end, _ = boundary_values(t)
    c = c_sequence(t)
    sign = 1 if k % 2 == 0 else -1
    return t.r[1] * b_end[k] == t.n * c[k] + sign * t.remainder(k + 1)


# -- linear Diophantine equation n*d + l*a = m*b0 --------------------------


@dataclass(frozen=True)
class DiophantineSolution:
    n: int
    m: int
    d: int
    a: int
    b0: int
    l: int

    def __post_init__(self):
        if self.l not in (1, -1):
            raise InvalidParams("l must be +1 or -1")
        if self.n * self.d + self.l * self.a != self.m * self.b0:
            raise InvalidParams(
                f"{self.n}*{self.d} + ({self.l})*{self.a} != {self.m}*{self.b0}"
            )


def divmod_negative(c: int, d: int) -> Tuple[int, int]:
    """Division with a subtracted remainder: ``c == k*d - s`` with ``0 <= s < d``."""
    if d <= 0:
        raise ValueError("divisor must be positive")
    k = -(-c // d)
    return k, k * d - c


def minimal_diophantine(n: int, m: int, b0: int, l: int) -> DiophantineSolution:
    """The nonnegative solution of ``n*d + l*a = m*b0`` with ``0 <= a < n``.

    Built as in the existence argument: write ``m = h0*n + r1`` and split
    ``r1*b0 = k*n + l*s``, giving ``d = h0*b0 + k`` and ``a = s``.

    ``b0 = 0`` is special. With ``l = -1`` the zero solution is not a
    binomial, so the least nonzero one ``(d, a) = (1, n)`` is returned. With
    ``l = +1`` only the zero solution exists and :class:`NoSolution` is raised
    carrying it as ``degenerate``.
    """
    check_coprime_pair(n, m)
    if l not in (1, -1):
        raise InvalidParams("l must be +1 or -1")
    if b0 < 0:
        raise InvalidParams("b0 must be nonnegative")
    if b0 == 0:
        if l == -1:
            return DiophantineSolution(n, m, d=1, a=n, b0=0, l=-1)
        raise NoSolution(
            "n*d + a = 0 has only the zero solution",
            degenerate=DiophantineSolution(n, m, d=0, a=0, b0=0, l=1),
        )
    h0, r1 = divmod(m, n)
    if l == 1:
        k, s = divmod(r1 * b0, n)
    else:
        k, s = divmod_negative(r1 * b0, n)
    return DiophantineSolution(n, m, d=h0 * b0 + k, a=s, b0=b0, l=l)


def solution_family(base: DiophantineSolution, t: int) -> DiophantineSolution:
    """Shift along the solution line: ``(d - l*t, a + n*t)``."""
    d = base.d - base.l * t
    a = base.a + base.n * t
    if d < 0 or a < 0:
        raise OutOfRange(f"shift t={t} leaves the nonnegative quadrant (d={d}, a={a})")
    return DiophantineSolution(base.n, base.m, d=d, a=a, b0=base.b0, l=base.l)
