"""Semigroup data model and classification against the isolated-singularity normal forms.

Every classifier first moves the generators into *orthant position*: all
generators in N^s and every coordinate axis carrying a generator, so that the
saturation of the cone is exactly N^s. In that position the only lattice
automorphisms preserving N^s are coordinate permutations, which the matchers
below handle directly; a failed structural check there is therefore decisive.

For s <= 2 the position is computed exactly from the extreme rays of the cone.
For s >= 3 it is found by a bounded search over sign flips and elementary
shears; exhausting that search yields an ``Indeterminate`` verdict.
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from . import lattice
from .errors import (
    InvalidParams,
    NotPrenormalized,
    SearchBudgetExceeded,
    WrongCount,
    WrongRank,
)
from .euclid import check_coprime_pair
from .lattice import IntMatrix, IntVector

SCHEMA_VERSION = 1


# -- data model ------------------------------------------------------------


@dataclass(frozen=True)
class SemigroupSpec:
    s: int
    generators: Tuple[IntVector, ...]

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        if self.s < 1:
            raise InvalidParams("ambient rank s must be positive")
        if not gens:
            raise InvalidParams("a semigroup needs at least one generator")
        for g in gens:
            if len(g) != self.s:
                raise InvalidParams(f"generator {g} does not lie in Z^{self.s}")
            if not any(g):
                raise InvalidParams("generators must be nonzero")

    @property
    def p(self) -> int:
        return len(self.generators)

    def duplicates(self) -> List[IntVector]:
        seen, dups = set(), []
        for g in self.generators:
            if g in seen:
                dups.append(g)
            seen.add(g)
        return dups

    def deduplicated(self) -> "SemigroupSpec":
        return SemigroupSpec(self.s, tuple(dict.fromkeys(self.generators)))

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "s": self.s,
            "generators": [list(g) for g in self.generators],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SemigroupSpec":
        return cls(s=int(data["s"]), generators=tuple(tuple(g) for g in data["generators"]))


@dataclass(frozen=True)
class SurfaceParams:
    """Parameters of the semigroup <(1,0), (lam,1), (0,n), (0,m)>."""

    lam: int
    n: int
    m: int
    allow_lambda_zero: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.lam, int) or self.lam < 0:
            raise InvalidParams(f"lambda must be a nonnegative integer, got {self.lam!r}")
        if self.lam == 0 and not self.allow_lambda_zero:
            raise InvalidParams("lambda = 0 is refused unless explicitly allowed")
        check_coprime_pair(self.n, self.m)

    def semigroup(self) -> SemigroupSpec:
        return SemigroupSpec(2, ((1, 0), (self.lam, 1), (0, self.n), (0, self.m)))

    def to_dict(self) -> dict:
        return {"lambda": self.lam, "n": self.n, "m": self.m}

    @classmethod
    def from_dict(cls, data: dict, allow_lambda_zero: bool = False) -> "SurfaceParams":
        return cls(int(data["lambda"]), int(data["n"]), int(data["m"]), allow_lambda_zero)


@dataclass(frozen=True)
class SqParams:
    """Data of the semigroup S_q in Z^s.

    ``m[j]`` lists the pure-power exponents on axis ``s-q+j`` (strictly
    increasing, each > 1, at least two, gcd 1). ``lam[i][j]`` is the shear
    exponent of ``e_i`` toward axis ``s-q+j``; ``mu[j][t]`` the cross exponent
    of ``e_{s-q+j}`` toward ``e_{s-q+t}`` (diagonal stored as 0). Indices are
    zero-based.
    """

    s: int
    q: int
    m: Tuple[Tuple[int, ...], ...]
    lam: Tuple[Tuple[int, ...], ...]
    mu: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(tuple(int(x) for x in row) for row in self.m))
        object.__setattr__(self, "lam", tuple(tuple(int(x) for x in row) for row in self.lam))
        object.__setattr__(self, "mu", tuple(tuple(int(x) for x in row) for row in self.mu))
        s, q = self.s, self.q
        if not (1 <= q <= s):
            raise InvalidParams(f"need 1 <= q <= s, got q={q}, s={s}")
        if s == q == 1:
            raise InvalidParams("s = q = 1 leaves a curve with no shear generators")
        if len(self.m) != q:
            raise InvalidParams(f"need {q} pure-power lists, got {len(self.m)}")
        for j, row in enumerate(self.m):
            if len(row) < 2:
                raise InvalidParams(f"pure-power list {j} needs at least two exponents")
            if any(x <= 1 for x in row):
                raise InvalidParams(f"pure-power exponents must exceed 1: {row}")
            if any(a >= b for a, b in zip(row, row[1:])):
                raise InvalidParams(f"pure-power exponents must be strictly increasing: {row}")
            if reduce(gcd, row) != 1:
                raise InvalidParams(f"pure-power exponents {row} are not coprime")
        if len(self.lam) != s - q or any(len(row) != q for row in self.lam):
            raise InvalidParams(f"shear table must be {s - q} x {q}")
        if any(x < 1 for row in self.lam for x in row):
            raise InvalidParams("shear exponents must be >= 1")
        if len(self.mu) != q or any(len(row) != q for row in self.mu):
            raise InvalidParams(f"cross table must be {q} x {q}")
        for j in range(q):
            for t in range(q):
                if j == t and self.mu[j][t] != 0:
                    raise InvalidParams("cross table diagonal must be 0")
                if j != t and self.mu[j][t] < 1:
                    raise InvalidParams("cross exponents must be >= 1")

    @property
    def k(self) -> Tuple[int, ...]:
        return tuple(len(row) for row in self.m)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "s": self.s,
            "q": self.q,
            "m": [list(r) for r in self.m],
            "lambda": [list(r) for r in self.lam],
            "mu": [list(r) for r in self.mu],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SqParams":
        s, q = int(data["s"]), int(data["q"])
        mu = data.get("mu") or [[0] * q for _ in range(q)]
        return cls(s=s, q=q, m=data["m"], lam=data.get("lambda", []), mu=mu)


class Verdict(str, enum.Enum):
    SURFACE_CORANK1 = "SurfaceCorank1"
    SURFACE_CORANK2 = "SurfaceCorank2"
    NORMAL_FORM_2S = "NormalForm2s"
    CONTAINS_SQ = "ContainsSq"
    NOT_ISOLATED = "NotIsolatedOrNotSmoothNormalization"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class Check:
    name: str
    passed: Optional[bool]
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class ClassificationResult:
    verdict: Verdict
    params: Optional[dict]
    evidence: Tuple[Check, ...]

    def failed(self) -> List[Check]:
        return [c for c in self.evidence if c.passed is False]

    def check(self, name: str) -> Optional[Check]:
        return next((c for c in self.evidence if c.name == name), None)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "verdict": self.verdict.value,
            "params": self.params,
            "evidence": [c.to_dict() for c in self.evidence],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ClassificationResult":
        return cls(
            verdict=Verdict(data["verdict"]),
            params=data["params"],
            evidence=tuple(Check(**c) for c in data["evidence"]),
        )


# -- simple invariants -----------------------------------------------------


def embedding_bound_check(S: SemigroupSpec) -> bool:
    """Lower bound p >= 2s on generators for a lone singular point with smooth normalization."""
    return S.p >= 2 * S.s


def _unit_axes(gens: Sequence[IntVector]) -> List[int]:
    axes = set()
    for g in gens:
        support = [i for i, x in enumerate(g) if x]
        if len(support) == 1 and g[support[0]] == 1:
            axes.add(support[0])
    return sorted(axes)


def corank(S: SemigroupSpec) -> int:
    """s minus the number of distinct unit vectors among the generators."""
    if any(x < 0 for g in S.generators for x in g):
        raise NotPrenormalized("corank needs generators in N^s")
    return S.s - len(_unit_axes(S.generators))


def in_semigroup(target: Sequence[int], gens: Sequence[Sequence[int]]) -> bool:
    """Membership of ``target`` in the semigroup spanned by ``gens`` (all in N^s)."""
    gens = tuple(tuple(g) for g in gens if any(g))
    if any(x < 0 for g in gens for x in g):
        raise NotPrenormalized("membership search needs generators in N^s")

    @lru_cache(maxsize=None)
    def reach(t):
        if not any(t):
            return True
        for g in gens:
            rest = tuple(a - b for a, b in zip(t, g))
            if min(rest) >= 0 and reach(rest):
                return True
        return False

    target = tuple(target)
    return min(target) >= 0 and reach(target)


def minimal_generators(gens: Sequence[Sequence[int]]) -> List[IntVector]:
    """Irreducible generators of a semigroup in N^s, in input order, duplicates removed."""
    distinct = list(dict.fromkeys(tuple(g) for g in gens))
    return [g for g in distinct if not in_semigroup(g, [h for h in distinct if h != g])]


# -- S_q construction ------------------------------------------------------


def _unit(s: int, i: int, scale: int = 1) -> List[int]:
    v = [0] * s
    v[i] = scale
    return v


def build_sq(params: SqParams) -> SemigroupSpec:
    """Generators of S_q: units, pure powers, shears, then cross terms."""
    s, q = params.s, params.q
    f = s - q
    gens = [tuple(_unit(s, i)) for i in range(f)]
    for j, row in enumerate(params.m):
        gens.extend(tuple(_unit(s, f + j, mj)) for mj in row)
    for i in range(f):
        for j in range(q):
            v = _unit(s, i, params.lam[i][j])
            v[f + j] += 1
            gens.append(tuple(v))
    for j in range(q):
        for t in range(q):
            if j != t:
                v = _unit(s, f + j, params.mu[j][t])
                v[f + t] += 1
                gens.append(tuple(v))
    return SemigroupSpec(s, tuple(gens))


def embedding_dim_bounds(params: SqParams) -> dict:
    s, q = params.s, params.q
    lower = s * (q + 1) - q * (q - 1) // 2
    r = s * (q + 1) - 2 * q + sum(params.k)
    embedded = len(minimal_generators(build_sq(params).generators))
    assert lower <= embedded <= r, (lower, embedded, r)
    assert r >= 2 * s
    return {"lower": lower, "upper": r, "r": r, "embedded": embedded}


# -- orthant position ------------------------------------------------------


def apply(T: IntMatrix, v: Sequence[int]) -> IntVector:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in T)


def _is_orthant_position(gens: Sequence[IntVector], s: int) -> bool:
    return lattice.is_orthant_position(gens, s)


class _NoSmoothNormalization(Exception):
    def __init__(self, check: Check):
        self.check = check


def _elementary_shears(s: int, bound: int):
    for i, j in itertools.permutations(range(s), 2):
        for c in range(-bound, bound + 1):
            if c:
                T = [list(r) for r in lattice.identity(s)]
                T[i][j] = c
                yield tuple(map(tuple, T))


def orthant_transform(
    S: SemigroupSpec, shear_bound: Optional[int] = None, depth: int = 2, budget: int = 50_000
) -> IntMatrix:
    """A unimodular ``T`` moving the generators of S into orthant position.

    Raises ``_NoSmoothNormalization`` when no such ``T`` can exist (s <= 2) and
    :class:`SearchBudgetExceeded` when the bounded search gives up (s >= 3).
    """
    s, gens = S.s, S.generators
    ident = lattice.identity(s)
    if _is_orthant_position(gens, s):
        return ident
    if s == 1:
        if all(g[0] < 0 for g in gens):
            return ((-1,),)
        raise _NoSmoothNormalization(Check("strongly_convex", False, "cone contains a line"))
    if s == 2:
        rays = lattice.extreme_rays_2d(gens)
        if rays is None:
            raise _NoSmoothNormalization(Check("strongly_convex", False, "cone contains a line"))
        (a, b), (c, d) = rays
        D = a * d - b * c
        if D == 0:
            raise _NoSmoothNormalization(Check("full_dimensional", False, "cone is a single ray"))
        if abs(D) != 1:
            raise _NoSmoothNormalization(
                Check(
                    "smooth_normalization",
                    False,
                    f"extreme rays {rays[0]}, {rays[1]} span an index-{abs(D)} sublattice",
                )
            )
        # inverse of the matrix with columns (a, b), (c, d)
        return ((d * D, -c * D), (-b * D, a * D))

    bound = shear_bound if shear_bound is not None else max(abs(x) for g in gens for x in g)
    flips = [
        tuple(tuple(sign[i] if i == j else 0 for j in range(s)) for i in range(s))
        for sign in itertools.product((1, -1), repeat=s)
    ]
    shears = list(_elementary_shears(s, bound))
    seen = set()
    frontier = deque((F, 0) for F in flips)
    tried = 0
    while frontier:
        T, level = frontier.popleft()
        if T in seen:
            continue
        seen.add(T)
        tried += 1
        if tried > budget:
            break
        if _is_orthant_position([apply(T, g) for g in gens], s):
            return T
        if level < depth:
            frontier.extend((lattice.matmul(E, T), level + 1) for E in shears)
    raise SearchBudgetExceeded(
        f"no orthant position found after {tried} transforms "
        f"(shear bound {bound}, depth {depth})",
        partial={"tried": tried},
    )


# -- matchers in orthant position -----------------------------------------


def _support(v: Sequence[int]) -> Tuple[int, ...]:
    return tuple(i for i, x in enumerate(v) if x)


def _pure_powers(gens, axis) -> List[int]:
    return sorted(g[axis] for g in gens if _support(g) == (axis,) and g[axis] > 1)


def _cross_candidates(gens, i, t) -> List[int]:
    """Coefficients c >= 1 with c*e_i + e_t among the generators."""
    return sorted(
        g[i] for g in gens if _support(g) == tuple(sorted((i, t))) and g[t] == 1 and g[i] >= 1
    )


def _cross_pair(gens, j, t) -> Optional[Tuple[int, int]]:
    """Pick (mu_jt, mu_tj) using as many distinct generators as possible."""
    A, B = _cross_candidates(gens, j, t), _cross_candidates(gens, t, j)
    if not A or not B:
        return None
    best = None
    for a, b in itertools.product(A, B):
        distinct = 1 if a == b == 1 else 2
        key = (-distinct, a, b)
        if best is None or key < best[0]:
            best = (key, (a, b))
    return best[1]


def _gcd_check(name, axis, powers) -> Check:
    g = reduce(gcd, powers, 0)
    ok = len(powers) >= 2 and g == 1
    return Check(name, ok, f"pure powers on axis {axis}: {powers}, gcd {g}")


def _match_sq(gens: Sequence[IntVector], s: int, q: int, evidence: List[Check]):
    """Match S_q inside ``gens`` (orthant position); returns (SqParams, perm, used) or None."""
    units = _unit_axes(gens)
    if len(units) != s - q:
        evidence.append(Check("corank", False, f"{len(units)} unit vectors, expected {s - q}"))
        return None
    free = units
    sing = [a for a in range(s) if a not in units]
    m_rows = []
    for t in sing:
        powers = _pure_powers(gens, t)
        chk = _gcd_check("pure_powers", t, powers)
        evidence.append(chk)
        if not chk.passed:
            return None
        m_rows.append(tuple(powers))
    lam = []
    for i in free:
        row = []
        for t in sing:
            cands = _cross_candidates(gens, i, t)
            if not cands:
                evidence.append(Check("shear", False, f"no generator c*e_{i} + e_{t} with c >= 1"))
                return None
            row.append(cands[0])
        lam.append(tuple(row))
    qn = len(sing)
    mu = [[0] * qn for _ in range(qn)]
    for a, b in itertools.combinations(range(qn), 2):
        pair = _cross_pair(gens, sing[a], sing[b])
        if pair is None:
            evidence.append(
                Check("cross", False, f"missing a cross generator between axes {sing[a]} and {sing[b]}")
            )
            return None
        mu[a][b], mu[b][a] = pair
    evidence.append(Check("shear", True, f"shear exponents {lam}"))
    if qn > 1:
        evidence.append(Check("cross", True, f"cross exponents {mu}"))
    perm = free + sing
    params = SqParams(s=s, q=qn, m=tuple(m_rows), lam=tuple(lam), mu=tuple(map(tuple, mu)))
    used = set(map(tuple, build_sq(params).generators))
    permuted = {tuple(g[a] for a in perm): g for g in gens}
    return params, perm, {permuted[u] for u in used}


# -- classification --------------------------------------------------------


def _gate(S: SemigroupSpec, evidence: List[Check]) -> SemigroupSpec:
    """Deduplicate and run the cheap necessary conditions, recording each."""
    dups = S.duplicates()
    if dups:
        evidence.append(Check("distinct_generators", None, f"dropped duplicates {dups}"))
        S = S.deduplicated()
    evidence.append(
        Check(
            "embedding_bound",
            embedding_bound_check(S),
            f"p = {S.p}, s = {S.s}: a singular point only at the origin with smooth normalization needs p >= 2s",
        )
    )
    span = lattice.spans_full_lattice(S)
    evidence.append(Check("lattice_span", span, "generators span Z^s" if span else "Z S != Z^s"))
    return S


def _prepare(S: SemigroupSpec, evidence: List[Check], **search):
    """Gate checks plus orthant position; returns (gens, T, S) or a final verdict."""
    S = _gate(S, evidence)
    if any(c.passed is False for c in evidence):
        return ClassificationResult(Verdict.NOT_ISOLATED, None, tuple(evidence))
    try:
        T = orthant_transform(S, **search)
    except _NoSmoothNormalization as exc:
        evidence.append(exc.check)
        return ClassificationResult(Verdict.NOT_ISOLATED, None, tuple(evidence))
    except SearchBudgetExceeded as exc:
        evidence.append(Check("orthant_position", None, str(exc)))
        return ClassificationResult(Verdict.INDETERMINATE, None, tuple(evidence))
    gens = tuple(apply(T, g) for g in S.generators)
    evidence.append(
        Check("orthant_position", True, f"transform {[list(r) for r in T]} gives saturation N^{S.s}")
    )
    return gens, T, S


def _free(gens, used) -> List[List[int]]:
    return [list(g) for g in gens if g not in used]


def _surface_match(gens, evidence: List[Check]) -> ClassificationResult:
    units = _unit_axes(gens)
    q = 2 - len(units)
    evidence.append(Check("corank", q > 0, f"corank {q}"))
    if q == 0:
        evidence[-1] = Check("corank", None, "corank 0: X(S) is smooth")
        return ClassificationResult(Verdict.INDETERMINATE, None, tuple(evidence))
    swap = q == 1 and units == [1]
    if swap:
        gens = tuple((g[1], g[0]) for g in gens)
    if q == 1:
        powers = _pure_powers(gens, 1)
        chk = _gcd_check("pure_powers", 1, powers)
        evidence.append(chk)
        shears = _cross_candidates(gens, 0, 1)
        evidence.append(
            Check("shear", bool(shears), f"shear (lambda, 1) with lambda = {shears[0]}" if shears else "no generator (lambda, 1) with lambda >= 1")
        )
        if not chk.passed or not shears:
            return ClassificationResult(Verdict.NOT_ISOLATED, None, tuple(evidence))
        used = {(1, 0), (shears[0], 1)} | {(0, x) for x in powers}
        free = _free(gens, used)
        _note_redundant_free(gens, free, evidence)
        params = {
            "case": 1,
            "lambda": shears[0],
            "m": powers,
            "l": len(powers),
            "free": free,
            "axes_swapped": swap,
        }
        return ClassificationResult(Verdict.SURFACE_CORANK1, params, tuple(evidence))

    n_powers, m_powers = _pure_powers(gens, 0), _pure_powers(gens, 1)
    checks = [_gcd_check("pure_powers", 0, n_powers), _gcd_check("pure_powers", 1, m_powers)]
    evidence.extend(checks)
    pair = _cross_pair(gens, 0, 1)
    evidence.append(
        Check(
            "mixed_generators",
            pair is not None,
            f"(lambda, 1) with lambda = {pair[0]} and (1, b1) with b1 = {pair[1]}"
            if pair
            else "need generators (lambda, 1) and (1, b1)",
        )
    )
    if pair is None or not all(c.passed for c in checks):
        return ClassificationResult(Verdict.NOT_ISOLATED, None, tuple(evidence))
    lam, b1 = pair
    used = {(lam, 1), (1, b1)} | {(x, 0) for x in n_powers} | {(0, x) for x in m_powers}
    free = _free(gens, used)
    if len(n_powers) + len(m_powers) == len(gens) - 1:
        # a single mixed generator serves as both (lambda, 1) and (1, b1)
        evidence.append(
            Check(
                "single_mixed_generator",
                lam == b1 == 1,
                f"k + l = p - 1 forces lambda = b1 = 1; found lambda={lam}, b1={b1}",
            )
        )
    _note_redundant_free(gens, free, evidence)
    params = {"case": 2, "n": n_powers, "m": m_powers, "lambda": lam, "b1": b1, "free": free}
    return ClassificationResult(Verdict.SURFACE_CORANK2, params, tuple(evidence))


def _note_redundant_free(gens, free, evidence):
    for f in free:
        others = [g for g in gens if list(g) != f]
        if in_semigroup(f, others):
            evidence.append(Check("free_monomial", None, f"{tuple(f)} lies in the semigroup of the others"))


def classify_surface(S: SemigroupSpec, **search) -> ClassificationResult:
    """Match a surface semigroup against the corank 1 and corank 2 prenormal forms."""
    if S.s != 2:
        raise WrongRank(f"surface classification needs s = 2, got s = {S.s}")
    evidence: List[Check] = []
    prepared = _prepare(S, evidence, **search)
    if isinstance(prepared, ClassificationResult):
        return prepared
    gens, _, _ = prepared
    return _surface_match(gens, evidence)


def _match_2s(gens, s, evidence: List[Check]) -> ClassificationResult:
    units = _unit_axes(gens)
    if len(units) != s - 1:
        evidence.append(Check("corank", False, f"{len(units)} unit vectors, need {s - 1}"))
        return ClassificationResult(Verdict.NOT_ISOLATED, None, tuple(evidence))
    (t,) = [a for a in range(s) if a not in units]
    powers = _pure_powers(gens, t)
    if len(powers) != 2:
        evidence.append(Check("pure_powers", False, f"need exactly two pure powers on axis {t}, got {powers}"))
        return ClassificationResult(Verdict.NOT_ISOLATED, None, tuple(evidence))
    n, m = powers
    coprime = gcd(n, m) == 1
    evidence.append(Check("pure_powers", coprime, f"n = {n}, m = {m}, gcd(n, m) = {gcd(n, m)}"))
    lams = []
    for i in units:
        cands = _cross_candidates(gens, i, t)
        if not cands:
            evidence.append(Check("shear", False, f"no generator c*e_{i} + e_{t} with c >= 1"))
            return ClassificationResult(Verdict.NOT_ISOLATED, None, tuple(evidence))
        lams.append(cands[0])
    evidence.append(Check("shear", True, f"shear exponents {lams}"))
    if not coprime:
        return ClassificationResult(Verdict.NOT_ISOLATED, None, tuple(evidence))
    params = {"lambda": lams, "n": n, "m": m, "axis_order": units + [t]}
    if s == 2:
        params["surface"] = {"lambda": lams[0], "n": n, "m": m}
    return ClassificationResult(Verdict.NORMAL_FORM_2S, params, tuple(evidence))


def classify_2s(S: SemigroupSpec, **search) -> ClassificationResult:
    """Match a semigroup with p = 2s generators against the unique normal form."""
    if S.deduplicated().p != 2 * S.s:
        raise WrongCount(f"need p = 2s = {2 * S.s} distinct generators, got {S.deduplicated().p}")
    evidence: List[Check] = []
    prepared = _prepare(S, evidence, **search)
    if isinstance(prepared, ClassificationResult):
        return prepared
    gens, _, S = prepared
    return _match_2s(gens, S.s, evidence)


@dataclass(frozen=True)
class SqWitness:
    indices: Tuple[int, ...]
    params: SqParams
    axis_order: Tuple[int, ...]
    transform: IntMatrix

    def to_dict(self) -> dict:
        return {
            "indices": list(self.indices),
            "params": self.params.to_dict(),
            "axis_order": list(self.axis_order),
            "transform": [list(r) for r in self.transform],
        }


def contains_sq(S: SemigroupSpec, q: int, **search) -> Optional[SqWitness]:
    """Find generators of S forming an S_q (q must equal the corank).

    Among admissible witnesses the one with the most distinct generators is
    returned; remaining ties go to the smallest shear and cross exponents.
    """
    if not lattice.spans_full_lattice(S):
        raise InvalidParams("contains_sq needs generators spanning Z^s")
    D = S.deduplicated()
    try:
        T = orthant_transform(D, **search)
    except _NoSmoothNormalization:
        return None
    gens = tuple(apply(T, g) for g in D.generators)
    if q < 1 or q > S.s or S.s == q == 1:
        return None
    found = _match_sq(gens, S.s, q, [])
    if found is None:
        return None
    params, perm, used = found
    image = {apply(T, g): idx for idx, g in reversed(list(enumerate(S.generators)))}
    indices = tuple(sorted(image[u] for u in used))
    return SqWitness(indices=indices, params=params, axis_order=tuple(perm), transform=T)


def classify(S: SemigroupSpec, **search) -> ClassificationResult:
    """Dispatch on (s, p): the 2s normal form, the surface forms, or an S_q witness."""
    evidence: List[Check] = []
    prepared = _prepare(S, evidence, **search)
    if isinstance(prepared, ClassificationResult):
        return prepared
    gens, T, D = prepared
    s = D.s
    q = s - len(_unit_axes(gens))
    if q == 0:
        evidence.append(Check("corank", None, "corank 0: X(S) is smooth"))
        return ClassificationResult(Verdict.INDETERMINATE, None, tuple(evidence))
    if D.p == 2 * s:
        return _match_2s(gens, s, evidence)
    if s == 2:
        return _surface_match(gens, evidence)
    evidence.append(Check("corank", True, f"corank {q}"))
    if s == 1:
        evidence.append(Check("sq_family", None, "curves fall outside the S_q family"))
        return ClassificationResult(Verdict.INDETERMINATE, None, tuple(evidence))
    found = _match_sq(gens, s, q, evidence)
    if found is None:
        return ClassificationResult(Verdict.NOT_ISOLATED, None, tuple(evidence))
    params, perm, used = found
    image = {apply(T, g): idx for idx, g in reversed(list(enumerate(D.generators)))}
    witness = SqWitness(
        indices=tuple(sorted(image[u] for u in used)), params=params, axis_order=tuple(perm), transform=T
    )
    evidence.append(Check("contains_sq", True, f"S_{q} found on {len(used)} generators"))
    result = witness.to_dict()
    result["q"] = q
    result["embedding"] = embedding_dim_bounds(params)
    return ClassificationResult(Verdict.CONTAINS_SQ, result, tuple(evidence))
