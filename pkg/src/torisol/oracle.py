"""Brute-force verification of generator tables.

Two independent tools: an exhaustive enumeration of small kernel vectors, and
a Buchberger completion specialised to pure binomials, where a Groebner basis
is a monomial rewrite system and ideal membership of x^u - x^v reduces to
comparing the normal forms of x^u and x^v.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from . import lattice
from .errors import DegreeCapExceeded, RankTooHigh
from .ideal import Binomial, GeneratorTable, generators_c4
from .lattice import IntVector
from .semigroup import SurfaceParams

ORDER = "grlex X>Y>Z>W"

Monomial = Tuple[int, ...]
Rule = Tuple[Monomial, Monomial]


def order_key(mon: Sequence[int]):
    # graded, ties broken lexicographically with the first variable largest
    return (sum(mon), tuple(mon))


def orient(u: Sequence[int], v: Sequence[int]) -> Optional[Rule]:
    """The rule lead -> trail for x^u - x^v, or None when the two coincide."""
    u, v = tuple(u), tuple(v)
    if u == v:
        return None
    return (u, v) if order_key(u) > order_key(v) else (v, u)


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


@dataclass(frozen=True)
class RewriteSystem:
    rules: Tuple[Rule, ...]
    order: str = ORDER
    capped: bool = False

    def __len__(self) -> int:
        return len(self.rules)


def normal_form(mon: Sequence[int], rules: Sequence[Rule], rng=None) -> Monomial:
    """Rewrite ``mon`` until no lead divides it.

    Each step applies one rule as many times as it divides. With ``rng`` the
    rule is picked at random among the applicable ones, otherwise the first.
    """
    mon = tuple(mon)
    while True:
        applicable = [r for r in rules if _divides(r[0], mon)]
        if not applicable:
            return mon
        lead, trail = rng.choice(applicable) if rng is not None else applicable[0]
        t = min(m // x for m, x in zip(mon, lead) if x)
        mon = tuple(m - t * x + t * y for m, x, y in zip(mon, lead, trail))


def _rules_of(binomials) -> List[Rule]:
    rules = []
    for b in binomials:
        plus, minus = (b.plus, b.minus) if hasattr(b, "plus") else b
        r = orient(plus, minus)
        if r is not None:
            rules.append(r)
    return rules


def _interreduce(rules: List[Rule]) -> List[Rule]:
    rules = sorted(set(rules), key=lambda r: (order_key(r[0]), order_key(r[1])))
    minimal: List[Rule] = []
    for r in rules:
        if not any(_divides(g[0], r[0]) for g in minimal):
            minimal.append(r)
    return [(lead, normal_form(trail, minimal)) for lead, trail in minimal]


def complete(binomials: Iterable, degree_cap: int) -> RewriteSystem:
    """Groebner completion of a binomial ideal, truncated at ``degree_cap``.

    S-pairs whose lcm has total degree above the cap are skipped. If anything
    was skipped :class:`DegreeCapExceeded` is raised with the partial system,
    which still certifies membership whenever it reduces something to zero.
    """
    G = _rules_of(binomials)
    capped = any(sum(lead) > degree_cap for lead, _ in G)
    heap: list = []

    def push(i, j):
        li, lj = G[i][0], G[j][0]
        if not any(x and y for x, y in zip(li, lj)):
            return  # coprime leads: the S-pair reduces to zero
        L = _lcm(li, lj)
        heapq.heappush(heap, (sum(L), L, i, j))

    for i, j in itertools.combinations(range(len(G)), 2):
        push(i, j)
    while heap:
        deg, L, i, j = heapq.heappop(heap)
        if deg > degree_cap:
            capped = True
            break
        (ui, vi), (uj, vj) = G[i], G[j]
        left = tuple(l - a + b for l, a, b in zip(L, ui, vi))
        right = tuple(l - a + b for l, a, b in zip(L, uj, vj))
        new = orient(normal_form(left, G), normal_form(right, G))
        if new is not None:
            G.append(new)
            for k in range(len(G) - 1):
                push(k, len(G) - 1)
    if capped:
        raise DegreeCapExceeded(
            f"completion skipped S-pairs above degree {degree_cap}",
            partial=RewriteSystem(tuple(G), capped=True),
        )
    return RewriteSystem(tuple(_interreduce(G)))


def complete_or_partial(binomials: Iterable, degree_cap: int) -> RewriteSystem:
    try:
        return complete(binomials, degree_cap)
    except DegreeCapExceeded as exc:
        return exc.partial


def reduces_to_zero(b, system: RewriteSystem, rng=None) -> bool:
    plus, minus = (b.plus, b.minus) if hasattr(b, "plus") else b
    rules = system.rules
    return normal_form(plus, rules, rng) == normal_form(minus, rules, rng)


# -- kernel enumeration ------------------------------------------------------


@dataclass(frozen=True)
class BoundedKernelSet:
    semigroup: object
    bound: int
    vectors: Tuple[IntVector, ...]

    def __len__(self) -> int:
        return len(self.vectors)

    def __contains__(self, alpha) -> bool:
        return lattice.canonical_sign(alpha) in set(self.vectors)


def _solve(M: Sequence[Sequence[int]], rhs: Sequence[int]) -> Optional[List[Fraction]]:
    """Solve c @ M = rhs for a square M by Gauss-Jordan over Q."""
    n = len(M)
    # work on the transpose: M^T c = rhs
    A = [[Fraction(M[j][i]) for j in range(n)] + [Fraction(rhs[i])] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col] / A[col][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [A[i][n] / A[i][i] for i in range(n)]


def enumerate_kernel(S, bound: int) -> BoundedKernelSet:
    """Every canonical-sign kernel vector with max-norm at most ``bound``.

    The kernel has a basis of r <= 2 vectors. Pick r coordinates on which the
    basis restricts to an invertible r x r block; those coordinates of any
    kernel vector determine it, so sweeping them over the box [-bound, bound]^r
    and keeping the integral solutions is exhaustive.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    sg = S.semigroup() if hasattr(S, "semigroup") else S
    basis = lattice.kernel_basis(sg)
    r = len(basis)
    if r > 2:
        raise RankTooHigh(f"kernel rank {r} is too high for exhaustive enumeration")
    if r == 0:
        return BoundedKernelSet(sg, bound, ())
    p = len(basis[0])
    cols = min(
        (c for c in itertools.combinations(range(p), r)
         if lattice.det([[row[i] for i in c] for row in basis]) != 0),
        key=lambda c: abs(lattice.det([[row[i] for i in c] for row in basis])),
    )
    M = [[row[i] for i in cols] for row in basis]
    found = set()
    for coords in itertools.product(range(-bound, bound + 1), repeat=r):
        if not any(coords):
            continue
        c = _solve(M, coords)
        if any(x.denominator != 1 for x in c):
            continue
        alpha = tuple(sum(int(ci) * row[i] for ci, row in zip(c, basis)) for i in range(p))
        if max(map(abs, alpha)) <= bound:
            found.add(lattice.canonical_sign(alpha))
    return BoundedKernelSet(sg, bound, tuple(sorted(found)))


# -- reports -----------------------------------------------------------------


@dataclass(frozen=True)
class ProbeEntry:
    index: int
    binomial: Tuple[Monomial, Monomial]
    status: str  # "redundant", "irredundant" or "inconclusive"


@dataclass(frozen=True)
class MinimalityReport:
    entries: Tuple[ProbeEntry, ...]

    def count(self, status: str) -> int:
        return sum(1 for e in self.entries if e.status == status)

    @property
    def all_irredundant(self) -> bool:
        return self.count("irredundant") == len(self.entries)

    def to_dict(self) -> dict:
        return {
            "irredundant": self.count("irredundant"),
            "redundant": self.count("redundant"),
            "inconclusive": self.count("inconclusive"),
            "entries": [
                {"index": e.index, "plus": list(e.binomial[0]), "minus": list(e.binomial[1]), "status": e.status}
                for e in self.entries
            ],
        }


def _pairs(binomials) -> List[Tuple[Monomial, Monomial]]:
    if isinstance(binomials, GeneratorTable):
        binomials = [e.binomial for e in binomials.entries]
    out = []
    for b in binomials:
        plus, minus = (b.plus, b.minus) if hasattr(b, "plus") else b
        out.append((tuple(plus), tuple(minus)))
    return out


def minimality_probe(table, degree_cap: int) -> MinimalityReport:
    """Leave-one-out membership test for each generator.

    ``table`` may be a :class:`GeneratorTable` or a list of binomials given
    as objects with ``plus``/``minus`` or as (plus, minus) pairs.
    """
    pairs = _pairs(table)
    entries = []
    for i, g in enumerate(pairs):
        others = pairs[:i] + pairs[i + 1:]
        try:
            system, capped = complete(others, degree_cap), False
        except DegreeCapExceeded as exc:
            system, capped = exc.partial, True
        if reduces_to_zero(g, system):
            status = "redundant"
        else:
            status = "inconclusive" if capped else "irredundant"
        entries.append(ProbeEntry(i, g, status))
    return MinimalityReport(tuple(entries))


@dataclass(frozen=True)
class CrossCheckReport:
    params: SurfaceParams
    bound: int
    degree_cap: int
    enumerated: int
    capped: bool
    unreduced: Tuple[IntVector, ...]
    missing: Tuple[IntVector, ...]
    system_size: int = 0
    minimality: Optional[MinimalityReport] = field(default=None, compare=False)

    @property
    def status(self) -> str:
        if self.missing or (self.unreduced and not self.capped):
            return "fail"
        if self.minimality is not None and self.minimality.count("redundant"):
            return "fail"
        if self.unreduced or (self.minimality is not None and self.minimality.count("inconclusive")):
            return "inconclusive"
        return "pass"

    def to_dict(self) -> dict:
        out = {
            "status": self.status,
            "params": self.params.to_dict(),
            "bound": self.bound,
            "degree_cap": self.degree_cap,
            "order": ORDER,
            "enumerated": self.enumerated,
            "system_size": self.system_size,
            "capped": self.capped,
            "unreduced": [list(v) for v in self.unreduced],
            "missing": [list(v) for v in self.missing],
        }
        if self.minimality is not None:
            out["minimality"] = self.minimality.to_dict()
        return out


def cross_check(
    params: SurfaceParams,
    bound: Optional[int] = None,
    degree_cap: Optional[int] = None,
    table: Optional[GeneratorTable] = None,
    minimality: bool = False,
) -> CrossCheckReport:
    """Compare a generator table against the enumerated kernel.

    (a) every enumerated vector must reduce to zero under the completed table;
    (b) every table vector inside the bound must appear in the enumeration.
    Defaults: ``bound = n*m`` and ``degree_cap = 10*m``.
    """
    bound = params.n * params.m if bound is None else bound
    degree_cap = 10 * params.m if degree_cap is None else degree_cap
    table = table or generators_c4(params)
    binomials = [e.binomial for e in table.entries]
    try:
        system, capped = complete(binomials, degree_cap), False
    except DegreeCapExceeded as exc:
        system, capped = exc.partial, True
    kernel = enumerate_kernel(params, bound)
    unreduced = tuple(
        alpha for alpha in kernel.vectors if not reduces_to_zero(Binomial.from_alpha(alpha), system)
    )
    present = set(kernel.vectors)
    missing = tuple(
        e.alpha for e in table.entries if max(map(abs, e.alpha)) <= bound and e.alpha not in present
    )
    probe = minimality_probe(table, degree_cap) if minimality else None
    return CrossCheckReport(
        params=params,
        bound=bound,
        degree_cap=degree_cap,
        enumerated=len(kernel),
        capped=capped,
        unreduced=unreduced,
        missing=missing,
        system_size=len(system),
        minimality=probe,
    )
