"""Binomial generators of the toric ideal of <(1,0), (lam,1), (0,n), (0,m)>.

Variables are ordered (X, Y, Z, W), matching the generators (1,0), (lam,1),
(0,n), (0,m). A kernel vector alpha gives the binomial x^alpha_+ - x^alpha_-,
always stored with the Y-exponent on the leading side.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import lattice
from .errors import InvalidParams, IsGenerator, NoSolution, NotInKernel
from .euclid import (
    DiophantineSolution,
    EuclidTrace,
    boundary_values,
    exponent_sequences,
    minimal_diophantine,
    successive_division,
)
from .lattice import IntVector, KernelVector
from .semigroup import SurfaceParams

VARIABLES = ("X", "Y", "Z", "W")
SCHEMA_VERSION = 1


def _monomial(exps: Sequence[int], latex: bool = False) -> str:
    parts = []
    for name, e in zip(VARIABLES, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{{{e}}}" if latex else f"{name}^{e}")
    if not parts:
        return "1"
    return "".join(parts) if latex else " ".join(parts)


@dataclass(frozen=True)
class Binomial:
    plus: IntVector
    minus: IntVector

    def __post_init__(self):
        if type(self.plus) is not tuple or type(self.minus) is not tuple:
            object.__setattr__(self, "plus", tuple(int(x) for x in self.plus))
            object.__setattr__(self, "minus", tuple(int(x) for x in self.minus))
        if len(self.plus) != len(self.minus):
            raise InvalidParams("both monomials need the same number of variables")
        for p, m in zip(self.plus, self.minus):
            if p < 0 or m < 0:
                raise InvalidParams("exponents must be nonnegative")
            if p and m:
                raise InvalidParams("monomials of a binomial must have disjoint supports")

    @classmethod
    def from_alpha(cls, alpha: Sequence[int], canonical: bool = True) -> "Binomial":
        if canonical:
            alpha = lattice.canonical_sign(alpha)
        return cls(tuple(x if x > 0 else 0 for x in alpha), tuple(-x if x < 0 else 0 for x in alpha))

    @property
    def alpha(self) -> IntVector:
        return tuple(p - m for p, m in zip(self.plus, self.minus))

    @property
    def kernel(self) -> KernelVector:
        return lattice.split_kernel_vector(self.alpha)

    def render(self, latex: bool = False) -> str:
        sep = "-" if latex else " - "
        return f"{_monomial(self.plus, latex)}{sep}{_monomial(self.minus, latex)}"

    def __str__(self) -> str:
        return self.render()


class Kind(str, enum.Enum):
    PURE_POWER_Y = "PurePowerY"
    SEED = "Seed"
    TYPE1 = "Type1"
    TYPE2 = "Type2"


# l = -1 shapes put Z on the trailing side, l = +1 shapes on the leading side.
_SIGN = {Kind.PURE_POWER_Y: -1, Kind.TYPE1: -1, Kind.SEED: 1, Kind.TYPE2: 1}


def shape_vector(kind: Kind, a: int, b: int, d: int, lam: int) -> IntVector:
    """(-lam*a, a, -d, b) for the l = -1 shapes, (-lam*a, a, d, -b) for l = +1."""
    l = _SIGN[kind]
    return (-lam * a, a, l * d, -l * b)


@dataclass(frozen=True)
class GeneratorEntry:
    kind: Kind
    k: int
    j: int
    a: int
    b: int
    d: int
    binomial: Binomial

    @property
    def l(self) -> int:
        return _SIGN[self.kind]

    @property
    def alpha(self) -> IntVector:
        return self.binomial.alpha

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "k": self.k,
            "j": self.j,
            "a": self.a,
            "b": self.b,
            "d": self.d,
            "plus": list(self.binomial.plus),
            "minus": list(self.binomial.minus),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GeneratorEntry":
        return cls(
            kind=Kind(data["kind"]),
            k=int(data["k"]),
            j=int(data["j"]),
            a=int(data["a"]),
            b=int(data["b"]),
            d=int(data["d"]),
            binomial=Binomial(tuple(data["plus"]), tuple(data["minus"])),
        )


def _entry(kind: Kind, k: int, j: int, a: int, b: int, d: int, lam: int) -> GeneratorEntry:
    if a == 0:
        binomial = Binomial.from_alpha(shape_vector(kind, a, b, d, lam))
    elif _SIGN[kind] == -1:
        binomial = Binomial((0, a, 0, b), (lam * a, 0, d, 0))
    else:
        binomial = Binomial((0, a, d, 0), (lam * a, 0, 0, b))
    return GeneratorEntry(kind, k, j, a, b, d, binomial)


@dataclass(frozen=True)
class GeneratorTable:
    params: SurfaceParams
    trace: EuclidTrace
    entries: Tuple[GeneratorEntry, ...]
    _index: Dict[Tuple[int, int], GeneratorEntry] = field(
        default=None, init=False, repr=False, compare=False
    )

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        object.__setattr__(self, "_index", {(e.k, e.j): e for e in self.entries})

    def __len__(self) -> int:
        return len(self.entries)

    def entry(self, k: int, j: int) -> GeneratorEntry:
        """Look up by index; (0, 1) and (0, 2) are the pure Y power and the seed."""
        return self._index[(k, j)]

    def semigroup(self):
        return self.params.semigroup()

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "params": self.params.to_dict(),
            "trace": self.trace.to_dict(),
            "entries": [e.to_dict() for e in self.entries],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GeneratorTable":
        params = SurfaceParams.from_dict(data["params"], allow_lambda_zero=True)
        return cls(
            params=params,
            trace=EuclidTrace.from_dict(data["trace"]),
            entries=tuple(GeneratorEntry.from_dict(e) for e in data["entries"]),
        )


def generators_c4(params: SurfaceParams) -> GeneratorTable:
    """The generator table: pure Y power, seed, then one binomial per (k, j)."""
    lam, n = params.lam, params.n
    t = successive_division(params.n, params.m)
    entries = [
        _entry(Kind.PURE_POWER_Y, 0, 1, a=n, b=0, d=1, lam=lam),
        _entry(Kind.SEED, 0, 2, a=t.r[1], b=1, d=t.h[0], lam=lam),
    ]
    for row in exponent_sequences(t):
        kind = Kind.TYPE1 if row.k % 2 else Kind.TYPE2
        entries.append(_entry(kind, row.k, row.j, row.a, row.b, row.d, lam))
    return GeneratorTable(params=params, trace=t, entries=tuple(entries))


def alpha_n(params: SurfaceParams) -> IntVector:
    """Kernel vector of Y^n - X^(lam n) Z, the step between solutions of one family."""
    return (-params.lam * params.n, params.n, -1, 0)


# -- typing of kernel vectors -------------------------------------------------


class BinomialType(str, enum.Enum):
    TYPE1 = "Type1"
    TYPE2 = "Type2"
    PURE_ZW = "PureZW"
    PURE_Y = "PureY"
    REDUCIBLE_HINT = "ReducibleHint"


def binomial_type(alpha, params: SurfaceParams) -> BinomialType:
    """Sign-pattern type of a nonzero kernel vector (canonical sign is imposed first)."""
    alpha = getattr(alpha, "alpha", alpha)
    if not lattice.in_kernel(params.semigroup(), alpha):
        raise NotInKernel(f"{tuple(alpha)} is not in the kernel")
    if not any(alpha):
        raise InvalidParams("the zero vector has no binomial type")
    a1, a2, a3, a4 = lattice.canonical_sign(alpha)
    if a1 == a2 == 0:
        return BinomialType.PURE_ZW
    # a2 > 0 here, so n*a3 + m*a4 = -a2 < 0 rules out a3, a4 >= 0
    if a4 == 0:
        return BinomialType.PURE_Y
    if a3 < 0 < a4:
        return BinomialType.TYPE1
    if a4 < 0 < a3:
        return BinomialType.TYPE2
    return BinomialType.REDUCIBLE_HINT


# -- certificates ------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    index: int
    k: int
    j: int
    reason: str


@dataclass(frozen=True)
class CertificateReport:
    checked: int
    violations: Tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "checked": self.checked,
            "ok": self.ok,
            "violations": [vars(v) for v in self.violations],
        }


def verify_kernel_certificates(table: GeneratorTable) -> CertificateReport:
    """Recheck each entry from its (a, b, d) exponents alone.

    The correspondence vector must map to zero, satisfy the linear equation of
    its sign, and agree with the stored binomial.
    """
    S = table.semigroup()
    n, m, lam = table.params.n, table.params.m, table.params.lam
    bad = []
    for idx, e in enumerate(table.entries):
        alpha = shape_vector(e.kind, e.a, e.b, e.d, lam)
        image = lattice.evaluate(S, alpha)
        if any(image):
            bad.append(Violation(idx, e.k, e.j, f"image of {alpha} is {image}, not zero"))
        if n * e.d + e.l * e.a != m * e.b:
            bad.append(Violation(idx, e.k, e.j, f"{n}*{e.d} + ({e.l})*{e.a} != {m}*{e.b}"))
        if lattice.canonical_sign(alpha) != e.alpha:
            bad.append(Violation(idx, e.k, e.j, "stored binomial disagrees with its exponents"))
    return CertificateReport(checked=len(table.entries), violations=tuple(bad))


# -- solution families and redundancy ----------------------------------------


def _as_alpha(v) -> IntVector:
    return tuple(getattr(v, "alpha", v))


def family_shift_check(base, t: int, params: SurfaceParams) -> KernelVector:
    """``base + t * alpha_n``, checked to stay in the kernel."""
    S = params.semigroup()
    alpha = _as_alpha(base)
    if not lattice.in_kernel(S, alpha):
        raise NotInKernel(f"{alpha} is not in the kernel")
    shifted = tuple(x + t * y for x, y in zip(alpha, alpha_n(params)))
    if not lattice.in_kernel(S, shifted):
        raise NotInKernel(f"shifted vector {shifted} left the kernel")
    return lattice.split_kernel_vector(shifted)


@dataclass(frozen=True)
class Term:
    coefficient: int
    label: str
    vector: IntVector


@dataclass(frozen=True)
class Decomposition:
    """``target`` written as a nonnegative combination of table vectors.

    ``minimal`` is the least solution for the same (b0, l); ``target`` equals
    its vector plus ``shift`` times ``step`` (the pure Y power vector).
    """

    b0: int
    l: int
    target: KernelVector
    terms: Tuple[Term, ...]
    minimal: DiophantineSolution
    minimal_vector: IntVector
    step: IntVector
    shift: int

    def combination(self) -> IntVector:
        total = [0, 0, 0, 0]
        for term in self.terms:
            total = [x + term.coefficient * y for x, y in zip(total, term.vector)]
        return tuple(total)

    def verify(self) -> bool:
        shifted = tuple(x + self.shift * y for x, y in zip(self.minimal_vector, self.step))
        return self.combination() == self.target.alpha == shifted

    def to_dict(self) -> dict:
        return {
            "b0": self.b0,
            "l": self.l,
            "target": list(self.target.alpha),
            "terms": [
                {"coefficient": t.coefficient, "label": t.label, "vector": list(t.vector)}
                for t in self.terms
            ],
            "minimal": {"d": self.minimal.d, "a": self.minimal.a},
            "shift": self.shift,
            "verified": self.verify(),
        }


def _solution_vector(sol: DiophantineSolution, lam: int) -> IntVector:
    return (-lam * sol.a, sol.a, sol.l * sol.d, -sol.l * sol.b0)


def _locate(b0: int, table: GeneratorTable) -> Tuple[int, int]:
    """The (k, j) with b_{k,j} <= b0 < next b, over the Type1/Type2 entries."""
    grid = [e for e in table.entries if e.kind in (Kind.TYPE1, Kind.TYPE2)]
    found = grid[0]
    for e in grid:
        if e.b > b0:
            break
        found = e
    return found.k, found.j


def redundancy_decomposition(
    b0: int, l: int, params: SurfaceParams, table: Optional[GeneratorTable] = None
) -> Decomposition:
    """Express the non-generator solution for (b0, l) through table vectors.

    With ``b0 = b_{k,j} + theta`` (``theta = 0`` allowed when the sign disagrees
    with the parity of k), the target solution and its combination are:

    * k odd, l = -1: alpha_{k,j} + theta * alpha_{n-r1}
    * k even, l = +1: beta_{k,j} + theta * beta_{r1}
    * k odd, l = +1: sum_{i=0}^{(k-3)/2} h_{2i+1} beta_{r_{2i+1}} + j beta_{r_k} + theta * beta_{r1}
    * k even, l = -1: alpha_{n-r1} + sum_{i=1}^{(k-2)/2} h_{2i} alpha_{r_{2i}} + j alpha_{r_k}
      + theta * alpha_{n-r1}

    Here beta_{r_i} and alpha_{r_i} are the table entries whose a-exponent is r_i.
    """
    if l not in (1, -1):
        raise InvalidParams("l must be +1 or -1")
    if b0 < 0:
        raise InvalidParams("b0 must be nonnegative")
    table = table or generators_c4(params)
    t = table.trace
    n, lam, h, r = params.n, params.lam, t.h, t.r
    if b0 == 0:
        if l == -1:
            raise IsGenerator("b0 = 0 with l = -1 is the pure Y power")
        raise NoSolution("n*d + a = 0 has only the zero solution")
    if b0 == 1 and l == 1:
        raise IsGenerator("b0 = 1 with l = +1 is the seed")
    if b0 == n:
        raise IsGenerator("b0 = n gives the pure binomial Z^m - W^n")

    k, j = _locate(b0, table)
    base = table.entry(k, j)
    theta = b0 - base.b
    parity_l = -1 if k % 2 else 1
    if theta == 0 and l == parity_l:
        raise IsGenerator(f"b0 = {b0} with l = {l:+d} is the entry ({k}, {j})")

    b_end, d_end = boundary_values(t)
    seed = table.entry(0, 2)
    first = table.entry(1, 1)  # alpha_{n - r1}

    def beta_r(i):
        # entry with a = r_i for odd i: the seed (i = 1) or the (i-1, h_{i-1}) entry
        return seed if i == 1 else table.entry(i - 1, h[i - 1])

    def alpha_r(i):
        # entry with a = r_i for even i: the (i-1, h_{i-1}) entry
        return table.entry(i - 1, h[i - 1])

    terms: List[Term] = []

    def add(coef, entry, label):
        if coef:
            terms.append(Term(coef, label, shape_vector(entry.kind, entry.a, entry.b, entry.d, lam)))

    if l == parity_l:
        # sign agrees with the parity: shift the bracketing entry
        d = base.d + ((h[0] + 1) * theta if l == -1 else h[0] * theta)
        a = base.a + ((n - r[1]) * theta if l == -1 else r[1] * theta)
        add(1, base, f"({k},{j})")
        if l == -1:
            add(theta, first, "alpha_{n-r1}")
        else:
            add(theta, seed, "beta_{r1}")
    elif l == 1:
        # k odd
        d = d_end[k - 1] * j + d_end[k - 2] - 1 + h[0] * theta
        a = n - r[k - 1] + r[k] * j + r[1] * theta
        for i in range(0, (k - 3) // 2 + 1):
            add(h[2 * i + 1], beta_r(2 * i + 1), f"beta_{{r{2 * i + 1}}}")
        add(j, beta_r(k), f"beta_{{r{k}}}")
        add(theta, seed, "beta_{r1}")
    else:
        # k even, l = -1
        d = d_end[k - 1] * j + d_end[k - 2] + 1 + (h[0] + 1) * theta
        a = n - r[k - 1] + r[k] * j + (n - r[1]) * theta
        add(1, first, "alpha_{n-r1}")
        for i in range(1, (k - 2) // 2 + 1):
            add(h[2 * i], alpha_r(2 * i), f"alpha_{{r{2 * i}}}")
        add(j, alpha_r(k), f"alpha_{{r{k}}}")
        add(theta, first, "alpha_{n-r1}")

    target_sol = DiophantineSolution(n, params.m, d=d, a=a, b0=b0, l=l)
    target = lattice.split_kernel_vector(_solution_vector(target_sol, lam))
    minimal = minimal_diophantine(n, params.m, b0, l)
    shift, rem = divmod(a - minimal.a, n)
    if rem:
        raise AssertionError("target and minimal solution are not in one family")
    dec = Decomposition(
        b0=b0,
        l=l,
        target=target,
        terms=tuple(terms),
        minimal=minimal,
        minimal_vector=_solution_vector(minimal, lam),
        step=alpha_n(params),
        shift=shift,
    )
    if not dec.verify():
        raise AssertionError(f"decomposition for b0={b0}, l={l:+d} does not add up")
    return dec


def applicable_pairs(table: GeneratorTable) -> List[Tuple[int, int]]:
    """Every (b0, l) with 1 <= b0 < n that is not itself a table entry."""
    out = []
    for b0 in range(1, table.params.n):
        for l in (1, -1):
            try:
                redundancy_decomposition(b0, l, table.params, table)
            except IsGenerator:
                continue
            out.append((b0, l))
    return out
