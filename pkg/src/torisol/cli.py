"""Command-line interface: ``torisol <command> ...``.

Exit codes: 0 success, 1 invalid input, 2 verification failure,
3 inconclusive (degree cap hit or undecided classification).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import gcd
from typing import List, Optional

from . import euclid, ideal, oracle, semigroup
from .errors import IsGenerator, NoSolution, NotInKernel, ParseError, TorisolError
from .ideal import GeneratorTable
from .semigroup import SemigroupSpec, SqParams, SurfaceParams, Verdict

EXIT_OK, EXIT_INVALID, EXIT_FAILED, EXIT_INCONCLUSIVE = 0, 1, 2, 3

# Tests swap this to inject a corrupted table into ``verify``.
TABLE_BUILDER = ideal.generators_c4


def _color_enabled(stream) -> bool:
    mode = os.environ.get("TORISOL_COLOR", "").lower()
    if mode in ("1", "always", "true", "yes"):
        return True
    if mode == "auto":
        return stream.isatty()
    return False


def status_word(status: str, stream=sys.stdout) -> str:
    if not _color_enabled(stream):
        return status
    code = {"pass": "32", "fail": "31", "inconclusive": "33"}.get(status, "0")
    return f"\033[{code}m{status}\033[0m"


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


# -- input parsing -----------------------------------------------------------


def _load_json(path: str) -> dict:
    try:
        if path == "-":
            data = json.load(sys.stdin)
        else:
            with open(path) as fh:
                data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("top-level JSON value must be an object")
    version = data.get("schema_version", 1)
    if version != 1:
        raise ParseError(f"unsupported schema_version {version}")
    return data


def parse_semigroup(data: dict) -> SemigroupSpec:
    if "generators" in data:
        try:
            gens = [tuple(int(x) for x in g) for g in data["generators"]]
            s = int(data.get("s", len(gens[0]) if gens else 0))
        except (TypeError, ValueError, IndexError) as exc:
            raise ParseError(f"malformed generator list: {exc}") from exc
        return SemigroupSpec(s, tuple(gens))
    if {"lambda", "n", "m"} <= data.keys():
        return SurfaceParams.from_dict(data).semigroup()
    raise ParseError('expected {"s", "generators"} or {"lambda", "n", "m"}')


def parse_sq(data: dict) -> SqParams:
    try:
        return SqParams.from_dict(data)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed S_q parameters: {exc}") from exc


# -- renderers ---------------------------------------------------------------


def render_trace(t: euclid.EuclidTrace, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(t.to_dict())
    lines = []
    dividend = t.m
    for k in range(t.q + 1):
        divisor, rem = t.r[k], t.remainder(k + 1)
        tail = f" + {rem}" if rem else ""
        lines.append((dividend, f"{t.h[k]} · {divisor}{tail}"))
        dividend = divisor
    if fmt == "latex":
        body = [f"{a} = & " + b.replace("·", "\\cdot") + " \\\\" for a, b in lines]
        params = [f"h_{k}={t.h[k]},\\ r_{k + 1}={t.r[k + 1]},\\\\" for k in range(t.q)]
        params.append(f"h_{t.q}={t.h[t.q]}")
        return "\n".join(
            ["\\begin{array}{rl}", *body, "\\end{array}", "\\begin{array}{l}", *params, "\\end{array}"]
        )
    width = len(str(t.m))
    out = [f"{a:>{width}} = {b}" for a, b in lines]
    out.append("")
    out.extend(f"h_{k} = {t.h[k]}, r_{k + 1} = {t.r[k + 1]}" for k in range(t.q))
    out.append(f"h_{t.q} = {t.h[t.q]}")
    return "\n".join(out)


def _linear(coef: int, const: int) -> str:
    return f"{coef}j+{const}" if const else f"{coef}j"


def render_table(table: GeneratorTable, fmt: str) -> str:
    if fmt == "json":
        return _dump(table.to_dict())
    if fmt == "latex":
        return _table_latex(table)
    p = table.params
    out = [f"generators for S = <(1,0), ({p.lam},1), (0,{p.n}), (0,{p.m})>: {len(table)} binomials"]
    for e in table.entries:
        idx = f"k={e.k} j={e.j}"
        out.append(f"  {e.kind.value:<10} {idx:<10} a={e.a:<6} b={e.b:<6} d={e.d:<6} {e.binomial}")
    return "\n".join(out)


def _table_latex(table: GeneratorTable) -> str:
    t = table.trace
    b_end, d_end = euclid.boundary_values(t)
    p = table.params
    out = [
        f"% S = <(1,0),({p.lam},1),(0,{p.n}),(0,{p.m})>",
        f"% {table.entry(0, 1).binomial.render(latex=True)}, {table.entry(0, 2).binomial.render(latex=True)}",
        "\\begin{array}{l|l}",
        "a_{k,j},\\ b_{k,j},\\ d_{k,j} & \\mbox{Binomials in}\\ I_S \\\\ \\hline",
    ]
    for k in range(1, t.q + 1):
        left = [
            f"a_{{{k},j}}={t.r[k - 1]}-{t.r[k]}j,\\ j=1,\\ldots,{t.h[k]}",
            f"b_{{{k},j}}={_linear(b_end[k - 1], b_end[k - 2])}",
            f"d_{{{k},j}}={_linear(d_end[k - 1], d_end[k - 2])}",
        ]
        right = [table.entry(k, j).binomial.render(latex=True) for j in range(1, t.h[k] + 1)]
        rows = max(len(left), len(right))
        left += [""] * (rows - len(left))
        right += [""] * (rows - len(right))
        out.extend(f"{a} & {b} \\\\" for a, b in zip(left, right))
        out[-1] += " \\hline"
    out.append("\\end{array}")
    return "\n".join(out)


def render_classification(result: semigroup.ClassificationResult, fmt: str) -> str:
    if fmt == "json":
        return _dump(result.to_dict())
    out = [f"verdict: {result.verdict.value}"]
    if result.params is not None:
        out.append(f"params: {json.dumps(result.params)}")
    out.append("evidence:")
    mark = {True: "ok", False: "FAILED", None: "note"}
    for c in result.evidence:
        out.append(f"  [{mark[c.passed]}] {c.name}: {c.detail}")
    return "\n".join(out)


# -- verify ------------------------------------------------------------------


@dataclass
class VerifyReport:
    params: SurfaceParams
    checks: dict
    failures: List[str]

    @property
    def status(self) -> str:
        return "fail" if self.failures else "pass"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "params": self.params.to_dict(),
            "checks": self.checks,
            "failures": self.failures,
        }


def run_verify(params: SurfaceParams) -> VerifyReport:
    """Kernel certificates plus every successive-division identity for one instance."""
    table = TABLE_BUILDER(params)
    t = euclid.successive_division(params.n, params.m)
    checks, failures = {}, []

    def tally(name, ok, what, weight=1):
        checks[name] = checks.get(name, 0) + weight
        if not ok:
            failures.append(f"{name}: {what}")

    report = ideal.verify_kernel_certificates(table)
    tally("kernel_certificates", report.ok, [vars(v) for v in report.violations], report.checked)
    tally("count", len(table) == sum(t.h[1:]) + 2, f"{len(table)} entries")
    for k in range(0, t.q + 1):
        tally("c_identity", euclid.c_identity_holds(t, k), f"k={k}")
    for e in table.entries:
        if e.kind in (ideal.Kind.TYPE1, ideal.Kind.TYPE2):
            sol = euclid.minimal_diophantine(params.n, params.m, e.b, e.l)
            tally("minimal_solution", (sol.d, sol.a) == (e.d, e.a), f"({e.k},{e.j})")
        for shift in (1, 2):
            try:
                ideal.family_shift_check(e.alpha, shift, params)
                tally("family_shift", True, "")
            except NotInKernel as exc:
                tally("family_shift", False, f"({e.k},{e.j}) t={shift}: {exc}")
    for b0 in range(0, params.n + 1):
        for l in (1, -1):
            try:
                ideal.redundancy_decomposition(b0, l, params, table)
                tally("decomposition", True, "")
            except (IsGenerator, NoSolution):
                continue
            except (AssertionError, KeyError) as exc:
                tally("decomposition", False, f"b0={b0} l={l:+d}: {exc}")
    return VerifyReport(params, checks, failures)


def _sweep_params(limit: int):
    for m in range(3, limit + 1):
        for n in range(2, m):
            if gcd(n, m) == 1:
                for lam in (1, 2, 3):
                    yield SurfaceParams(lam, n, m)


# -- commands ----------------------------------------------------------------


def _surface(args) -> SurfaceParams:
    if args.lam == 0 and args.allow_lambda_zero:
        print("warning: lambda = 0 lies outside the shear family (lambda >= 1)", file=sys.stderr)
    return SurfaceParams(args.lam, args.n, args.m, allow_lambda_zero=args.allow_lambda_zero)


def cmd_trace(args) -> int:
    print(render_trace(euclid.successive_division(args.n, args.m), args.format))
    return EXIT_OK


def cmd_generators(args) -> int:
    print(render_table(ideal.generators_c4(_surface(args)), args.format))
    return EXIT_OK


def cmd_classify(args) -> int:
    S = parse_semigroup(_load_json(args.file))
    result = semigroup.classify(S)
    print(render_classification(result, args.format))
    return EXIT_INCONCLUSIVE if result.verdict is Verdict.INDETERMINATE else EXIT_OK


def cmd_build_sq(args) -> int:
    params = parse_sq(_load_json(args.file))
    S = semigroup.build_sq(params)
    bounds = semigroup.embedding_dim_bounds(params)
    if args.format == "json":
        print(_dump({**S.to_dict(), "embedding": bounds}))
    else:
        print(f"S_{params.q} in Z^{params.s}: {S.p} generators")
        for g in S.generators:
            print(f"  {g}")
        print(f"embedding dimension: {bounds['embedded']} (bounds {bounds['lower']}..{bounds['upper']})")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.sweep:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(run_verify, _sweep_params(args.sweep)))
        failed = [r for r in reports if r.failures]
        if args.format == "json":
            print(_dump({"instances": len(reports), "failed": [r.to_dict() for r in failed]}))
        else:
            for r in failed:
                print(f"{status_word('fail')} {r.params.to_dict()}: {r.failures[:3]}")
            print(f"{len(reports) - len(failed)}/{len(reports)} instances pass")
        return EXIT_FAILED if failed else EXIT_OK
    if args.lam is None or args.n is None or args.m is None:
        raise TorisolError("verify needs --lambda, --n and --m, or --sweep")
    report = run_verify(_surface(args))
    if args.format == "json":
        print(_dump(report.to_dict()))
    else:
        for name, count in report.checks.items():
            print(f"  {name}: {count} checked")
        for f in report.failures:
            print(f"  FAILED {f}")
        print(status_word(report.status))
    return EXIT_FAILED if report.failures else EXIT_OK


def cmd_oracle(args) -> int:
    report = oracle.cross_check(
        _surface(args), bound=args.bound, degree_cap=args.cap, minimality=args.minimality
    )
    if args.format == "json":
        print(_dump(report.to_dict()))
    else:
        d = report.to_dict()
        print(f"enumerated {d['enumerated']} kernel vectors with max-norm <= {d['bound']}")
        print(f"completed system: {d['system_size']} rules ({oracle.ORDER}), cap {d['degree_cap']}"
              + (", capped" if d["capped"] else ""))
        for v in d["unreduced"]:
            print(f"  not reduced: {v}")
        for v in d["missing"]:
            print(f"  table vector missing from enumeration: {v}")
        if "minimality" in d:
            mm = d["minimality"]
            print(f"minimality: {mm['irredundant']} irredundant, {mm['redundant']} redundant, "
                  f"{mm['inconclusive']} inconclusive")
            for e in mm["entries"]:
                if e["status"] != "irredundant":
                    print(f"  entry {e['index']}: {e['status']}")
        print(status_word(report.status))
    return {"pass": EXIT_OK, "fail": EXIT_FAILED, "inconclusive": EXIT_INCONCLUSIVE}[report.status]



def _add_surface_flags(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--lambda", dest="lam", type=int, required=required)
    p.add_argument("--n", type=int, required=required)
    p.add_argument("--m", type=int, required=required)
    p.add_argument("--allow-lambda-zero", action="store_true", help="accept lambda = 0")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torisol",
        description="Classify affine semigroups and compute binomial generators of surface toric ideals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, formats=("text", "json")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--format", choices=formats, default="text")
        p.set_defaults(func=func)
        return p

    p = add("trace", cmd_trace, "successive division of coprime n < m", ("text", "json", "latex"))
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)

    p = add("generators", cmd_generators, "binomial generators of the surface ideal", ("text", "json", "latex"))
    _add_surface_flags(p)

    p = add("classify", cmd_classify, "classify a semigroup given as JSON")
    p.add_argument("file", help="JSON file, or - for stdin")

    p = add("build-sq", cmd_build_sq, "build the semigroup S_q from JSON parameters")
    p.add_argument("file", help="JSON file, or - for stdin")

    p = add("verify", cmd_verify, "recheck certificates and identities")
    _add_surface_flags(p, required=False)
    p.add_argument("--sweep", type=int, metavar="MAX_M", help="all coprime n < m <= MAX_M, lambda in 1..3")
    p.add_argument("--jobs", type=int, default=4)

    p = add("oracle", cmd_oracle, "cross-check the generators against brute force")
    _add_surface_flags(p)
    p.add_argument("--bound", type=int, default=None, help="max-norm of enumerated vectors (default n*m)")
    p.add_argument("--cap", type=int, default=None, help="completion degree cap (default 10*m)")
    p.add_argument("--minimality", action="store_true", help="also run the leave-one-out probe")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (TorisolError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
