"""Command-line driver for the verification suites.

Exit status: 0 when every requested check passes, 1 when any check fails,
2 for a configuration error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from typing import Callable, Dict, List, Optional, Sequence

from . import __version__
from .report import CheckReport, CheckRow

SCHEMA_VERSION = 1


@dataclass
class RunConfig:
    degree: int = 10
    n_max: int = 6
    k_max: int = 6
    sym_max: int = 8
    telescope_max: int = 12
    cz3_bound: int = 4
    ext_n: List[int] = field(default_factory=lambda: [1, 2, 3, 4, 5])
    samples: int = 20
    asai_n: List[int] = field(default_factory=lambda: [1, 2, 3])
    asai_m: List[int] = field(default_factory=lambda: [0, 1])
    diagram_n: List[int] = field(default_factory=lambda: [1, 2, 3])
    jobs: int = 1
    output: str = "text"
    negative_control: bool = False

    def validate(self) -> None:
        from .series import MAX_DEGREE
        for name in ("degree", "n_max", "k_max", "sym_max", "telescope_max", "cz3_bound", "samples"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")
        if self.degree > MAX_DEGREE:
            raise ValueError(f"degree {self.degree} exceeds the cap {MAX_DEGREE}")
        if any(n < 1 or n > 6 for n in self.ext_n):
            raise ValueError("exterior power n must lie in 1..6")
        if any(n not in (1, 2, 3) for n in self.asai_n + self.diagram_n):
            raise ValueError("asai and diagram n must lie in {1, 2, 3}")
        if any(m not in (0, 1) for m in self.asai_m):
            raise ValueError("asai m must be 0 or 1")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")
        if self.output not in ("text", "json"):
            raise ValueError("output must be text or json")


@dataclass
class SuiteResult:
    name: str
    rows: List[CheckRow]
    findings: List[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    def first_failure(self) -> Optional[CheckRow]:
        return next((r for r in self.rows if not r.ok), None)

    def to_dict(self, timings: bool = True) -> dict:
        out = {"name": self.name, "ok": self.ok, "checks": [asdict(r) for r in self.rows],
               "findings": self.findings,
               "first_failure": asdict(self.first_failure()) if self.first_failure() else None}
        if timings:
            out["seconds"] = round(self.seconds, 3)
        return out


# ---------------------------------------------------------------------------
# suites


def suite_determinant(cfg: RunConfig) -> SuiteResult:
    from .laurent import var
    from .lfactors import SatakeParam, determinant_oracle, extcube_factor_inert, extcube_factor_split
    from .localfactor import LocalFactor
    rep = CheckReport("extcube-determinant")
    p = SatakeParam.generic("inert")
    formula = extcube_factor_inert(p)
    if cfg.negative_control:
        # exponent tweak on one quadratic factor
        roots = list(formula.factors)
        r, k = roots[8]
        roots[8] = (r * var("a1"), k)
        formula = LocalFactor.from_roots(roots)
    oracle = determinant_oracle(p)
    rep.add("inert: product formula = det(1 - T rho(t))", formula == oracle, _mismatch(formula, oracle))
    s = SatakeParam.generic("split")
    f, o = extcube_factor_split(s), determinant_oracle(s)
    rep.add("split: product formula = det(1 - T a0 /\\^3(diag a))", f == o, _mismatch(f, o))
    return SuiteResult("extcube-determinant", rep.rows)


def _mismatch(a, b) -> str:
    mm = a.first_mismatch(b)
    return "" if mm is None else f"first mismatch at T^{mm[0]} monomial {mm[1]}: {mm[2]} vs {mm[3]}"


def suite_lst_spin(cfg: RunConfig) -> SuiteResult:
    from .laurent import ONE, var
    from .lfactors import HalfTwist, normalization_in_t, std_factor, verify_lst_spin
    from .localfactor import LocalFactor
    rep = CheckReport("lst-spin")
    for sign in (1, -1):
        h = HalfTwist(sign=sign)
        std = None
        if cfg.negative_control:
            roots = list(std_factor(h).factors)
            roots[1] = (roots[1][0] * h.a[1], roots[1][1])
            std = LocalFactor.from_roots(roots, h.t)
        chk = verify_lst_spin(h, std)
        rep.add(f"ext-cube (1 - t^2) = spin std, chi'_0 sign {sign:+d}", chk.ok, chk.message())
    w, q = var("w"), var("q")
    f1, f2 = normalization_in_t(w, q)
    rep.add("normalization factors become (1 - q^-1 t^2)(1 - t^4)",
            f1 == LocalFactor.from_roots([(q.inverse(), 2)], "t") and f2 == LocalFactor.from_roots([(ONE, 4)], "t"))
    return SuiteResult("lst-spin", rep.rows)


def suite_identity(cfg: RunConfig) -> SuiteResult:
    from .series import lhs_series, verify_main_identity
    lhs = (lambda D: lhs_series(D, 3)) if cfg.negative_control else None
    rep = verify_main_identity(cfg.degree, lhs)
    rows = [CheckRow(f"deg={r.deg}", r.status == "pass",
                     f"{r.lhs_dim} {r.rhs_dim} {r.n_irreducibles}" + (f" first mismatch {r.mismatch}" if r.mismatch else ""))
            for r in rep.rows]
    return SuiteResult("identity", rows, [f"coefficients checked through t^{cfg.degree} only"])


def suite_pieri(cfg: RunConfig) -> SuiteResult:
    from .pieri import pieri_closed_form, pieri_crosscheck
    closed = pieri_closed_form
    if cfg.negative_control:
        def closed(n, k):
            return pieri_closed_form(n, k - 1) if (n, k) == (1, 1) else pieri_closed_form(n, k)
    rep = pieri_crosscheck(cfg.n_max, cfg.k_max, closed)
    rows = [CheckRow(f"n={r.n} k={r.k}", r.status == "pass", r.detail) for r in rep.rows]
    return SuiteResult("pieri", rows)


def suite_sympowers(cfg: RunConfig) -> SuiteResult:
    from .series import (c_r, pieri_sum, verify_chain, verify_cz3_coefficients,
                         verify_sym_decompositions, verify_telescoping)
    rows: List[CheckRow] = []
    for report in (verify_sym_decompositions(cfg.sym_max, cfg.sym_max), verify_telescoping(cfg.telescope_max),
                   verify_cz3_coefficients(cfg.cz3_bound)):
        rows += [CheckRow(f"{report.name}: {r.label}", r.ok, r.detail) for r in report.rows]
    chain = verify_chain(min(cfg.degree, 10))
    rows += [CheckRow(f"chain deg={r.deg}", r.status == "pass", r.mismatch or "") for r in chain.rows]
    if cfg.negative_control:
        # sign flip in the telescoping sum
        for r in range(cfg.telescope_max + 1):
            lhs = c_r(r) - c_r(r - 2) + c_r(r - 4) + c_r(r - 6)
            diff = lhs.first_difference(pieri_sum(r))
            rows.append(CheckRow(f"sign-flipped telescoping r={r}", diff is None,
                                 "" if diff is None else f"{diff[0]}: {diff[1]} vs {diff[2]}"))
    return SuiteResult("sympowers", rows)


def suite_extcube(cfg: RunConfig) -> SuiteResult:
    from .exterior import explicit_n3_report, s_matrix, structure_report
    from .linalg import SparseMatrix
    rows: List[CheckRow] = []
    for n in cfg.ext_n:
        rep = structure_report(n, cfg.samples)
        rows += [CheckRow(f"n={n}: {r.label}", r.ok, r.detail) for r in rep.rows]
        if cfg.negative_control:
            s = s_matrix(n)
            ok = s @ s == SparseMatrix.identity(s.nrows).scale((-1) ** (n + 1))
            rows.append(CheckRow(f"n={n}: S^2 = (-1)^(n+1) I (sign flip)", ok))
    if 3 in cfg.ext_n:
        rows += [CheckRow(f"n=3: {r.label}", r.ok, r.detail) for r in explicit_n3_report(cfg.negative_control).rows]
    return SuiteResult("extcube", rows)


def suite_diagram(cfg: RunConfig) -> SuiteResult:
    from .lmaps import (all_maps, check_cocycle, check_group_law, check_homomorphism, check_projection,
                        diagram_up_to_conjugacy, map_b_ef_xi, sign_flipped, verify_diagram)
    rows: List[CheckRow] = []
    findings: List[str] = []
    for n in cfg.diagram_n:
        rows.append(CheckRow(f"n={n}: xi-cocycle identity", check_cocycle(n)))
        for degenerate in (False, True):
            tag = f"n={n}" + (" E+=E" if degenerate else "")
            maps = all_maps(n, degenerate)
            groups = {m.source.name: m.source for m in maps}
            groups.update({m.target.name: m.target for m in maps})
            for g in groups.values():
                rep = check_group_law(g)
                rows.append(CheckRow(f"{tag}: group law {g.name}", rep.ok, "; ".join(f.line() for f in rep.findings[:3])))
            for phi in maps:
                for rep in (check_homomorphism(phi), check_projection(phi)):
                    if not rep.ok:
                        findings += [f"{tag}: {f.line()}" for f in rep.findings]
            if cfg.negative_control:
                rep = check_homomorphism(sign_flipped(map_b_ef_xi(n, degenerate)))
                rows.append(CheckRow(f"{tag}: sign-flipped b_E/F,xi respects relations", rep.ok,
                                     rep.findings[0].line() if rep.findings else ""))
            d = verify_diagram(n, degenerate)
            detail = "; ".join(f.where for f in d.findings)
            rows.append(CheckRow(f"{tag}: diagram commutes on generators", d.ok,
                                 f"at {detail}" if detail else ""))
            findings += [f"{tag}: {f.line()}" for f in d.findings]
            if not d.ok:
                c = diagram_up_to_conjugacy(n, degenerate)
                findings.append(f"{tag}: " + ("no diagonal sign conjugator relates the two paths" if c is None else
                                "the two paths agree after conjugating by diag"
                                f"({', '.join(str(c[0][(k, k)]) for k in range(2 * n))}) on both GL factors"))
    return SuiteResult("diagram", rows, findings)


def suite_composite(cfg: RunConfig) -> SuiteResult:
    from .exterior import PLAIN
    from .lmaps import EXTCUBE_TWIST, decompose_extcube_composite, verify_lfunction_factorization
    twist = PLAIN if cfg.negative_control else EXTCUBE_TWIST
    rows: List[CheckRow] = []
    findings: List[str] = []
    for degenerate in (False, True):
        tag = "E+=E" if degenerate else "E+!=E"
        rep = decompose_extcube_composite(degenerate, twist)
        rows.append(CheckRow(f"{tag}: W and W-perp invariant, W-block = i_F image", rep.ok, "; ".join(rep.failures)))
        findings += [f"{tag}: {f}" for f in rep.findings]
        for chk in verify_lfunction_factorization(degenerate, twist):
            rows.append(CheckRow(f"{tag}: 20 = 2 + 18 factorization at {chk.name}", chk.ok))
    return SuiteResult("composite", rows, findings)


def suite_asai(cfg: RunConfig) -> SuiteResult:
    from .asai import Pattern, closed_form_checks, split_twist_trivial, verify_lemma62
    rows: List[CheckRow] = []
    for p in Pattern:
        for m in cfg.asai_m:
            for n in cfg.asai_n:
                for s in ((1, -1) if p is Pattern.SPLIT_IN_E_NOT_K else (1,)):
                    c = verify_lemma62(p, n, m, s, mutate_rhs=cfg.negative_control)
                    rows.append(CheckRow(c.line().rsplit(" ", 1)[0] if c.ok else c.line(), c.ok, "; ".join(c.notes)))
    for n in cfg.asai_n:
        for p in (Pattern.TOTALLY_SPLIT, Pattern.SPLIT_IN_E_NOT_K):
            rows.append(CheckRow(f"{p.value} n={n}: delta twist trivial at split places", split_twist_trivial(p, n)))
        rows += [CheckRow(label, ok) for label, ok in closed_form_checks(n)]
    return SuiteResult("asai", rows)


SUITES: Dict[str, Callable[[RunConfig], SuiteResult]] = {
    "extcube-determinant": suite_determinant,
    "lst-spin": suite_lst_spin,
    "identity": suite_identity,
    "pieri": suite_pieri,
    "sympowers": suite_sympowers,
    "extcube": suite_extcube,
    "diagram": suite_diagram,
    "composite": suite_composite,
    "asai": suite_asai,
}


def run_suite(name: str, cfg: RunConfig) -> SuiteResult:
    start = time.perf_counter()
    try:
        res = SUITES[name](cfg)
    except Exception as exc:  # a crashing suite becomes a failed check
        res = SuiteResult(name, [CheckRow("suite raised", False, f"{type(exc).__name__}: {exc}")],
                          [traceback.format_exc(limit=3)])
    res.seconds = time.perf_counter() - start
    return res


@dataclass
class Report:
    config: RunConfig
    suites: List[SuiteResult]

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.suites)

    def to_dict(self, timings: bool = True) -> dict:
        return {"schema_version": SCHEMA_VERSION, "version": __version__, "ok": self.ok,
                "config": asdict(self.config), "suites": [s.to_dict(timings) for s in self.suites]}

    def text(self, verbose: bool = False) -> str:
        lines = []
        for s in self.suites:
            lines.append(f"== {s.name}: {'PASS' if s.ok else 'FAIL'} "
                         f"({sum(r.ok for r in s.rows)}/{len(s.rows)} checks, {s.seconds:.2f}s)")
            for r in s.rows:
                if verbose or not r.ok:
                    lines.append("  " + r.line())
            for f in s.findings:
                lines.append(f"  finding: {f}")
        lines.append(f"overall: {'PASS' if self.ok else 'FAIL'}")
        return "\n".join(lines)


def run(cfg: RunConfig, suites: Sequence[str]) -> Report:
    cfg.validate()
    unknown = [s for s in suites if s not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s): {', '.join(unknown)}")
    if cfg.jobs > 1 and len(suites) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(run_suite, suites, [cfg] * len(suites)))
    else:
        results = [run_suite(s, cfg) for s in suites]
    return Report(cfg, results)


# ---------------------------------------------------------------------------
# argument handling


def read_config_file(path: str) -> Dict[str, str]:
    """Plain key=value lines; '#' starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            k, v = (x.strip() for x in line.split("=", 1))
            out[k.replace("-", "_")] = v
    return out


def _int_list(text: str) -> List[int]:
    """'3', '1,2,3' or '1-5'."""
    out: List[int] = []
    for part in str(text).split(","):
        part = part.strip()
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out += list(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return out


def _coerce(name: str, value):
    kind = {f.name: f.type for f in fields(RunConfig)}[name]
    if kind == "bool":
        if isinstance(value, bool):
            return value
        if str(value).lower() in ("1", "true", "yes", "on"):
            return True
        if str(value).lower() in ("0", "false", "no", "off"):
            return False
        raise ValueError(f"{name}: not a boolean: {value}")
    if kind == "int":
        return int(value)
    if kind == "List[int]":
        return value if isinstance(value, list) else _int_list(value)
    return value


def build_config(args: argparse.Namespace) -> RunConfig:
    values = {}
    if getattr(args, "config", None):
        for k, v in read_config_file(args.config).items():
            if k not in {f.name for f in fields(RunConfig)}:
                raise ValueError(f"unknown config key {k!r}")
            values[k] = _coerce(k, v)
    for f in fields(RunConfig):
        v = getattr(args, f.name, None)
        if v is not None:
            values[f.name] = _coerce(f.name, v)
    return RunConfig(**values)


def _add_run_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key=value file; command-line flags win")
    p.add_argument("--degree", type=int, help="truncation degree D for the character identity (<= 16)")
    p.add_argument("--n-max", dest="n_max", type=int)
    p.add_argument("--k-max", dest="k_max", type=int)
    p.add_argument("--sym-max", dest="sym_max", type=int)
    p.add_argument("--telescope-max", dest="telescope_max", type=int)
    p.add_argument("--cz3-bound", dest="cz3_bound", type=int)
    p.add_argument("--n", dest="ext_n", type=_int_list, help="exterior power ranks, e.g. 3 or 1-5")
    p.add_argument("--samples", type=int, help="random monomial samples per identity")
    p.add_argument("--asai-n", dest="asai_n", type=_int_list)
    p.add_argument("--m", dest="asai_m", type=_int_list)
    p.add_argument("--diagram-n", dest="diagram_n", type=_int_list)
    p.add_argument("--jobs", type=int, help="worker processes for independent suites")
    p.add_argument("--format", dest="output", choices=["text", "json"])
    p.add_argument("--json", dest="json_path", help="also write the JSON report here")
    p.add_argument("--negative-control", dest="negative_control", action="store_const", const=True,
                   help="inject the perturbed fixture of each suite")
    p.add_argument("-v", "--verbose", action="store_true", help="list passing checks too")


VERIFY_CHOICES = ["all"] + list(SUITES)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="extcube", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("suite", choices=VERIFY_CHOICES)
    _add_run_options(v)
    r = sub.add_parser("report", help="run every suite and write a JSON report")
    _add_run_options(r)
    lf = sub.add_parser("lfactor", help="print an unramified exterior-cube factor")
    lf.add_argument("--kind", choices=["inert", "split"], required=True)
    lf.add_argument("--params", nargs="*", default=[],
                    help="a0=.. a1=.. entries (integers, fractions or symbol names); unset ones stay symbolic")
    lf.add_argument("--expand", action="store_true", help="also print the expanded polynomial")
    return parser


def _lfactor(args) -> int:
    from .laurent import parse, var
    from .lfactors import SatakeParam, determinant_oracle, extcube_factor
    k = 3 if args.kind == "inert" else 6
    vals = {f"a{i}": var(f"a{i}") for i in range(k + 1)}
    for item in args.params:
        if "=" not in item:
            raise ValueError(f"parameter {item!r} is not key=value")
        key, text = item.split("=", 1)
        if key not in vals:
            raise ValueError(f"unknown parameter {key!r}; expected a0..a{k}")
        vals[key] = parse(text)
    p = SatakeParam(args.kind, tuple(vals[f"a{i}"] for i in range(1, k + 1)), vals["a0"])
    f = extcube_factor(p)
    print(f"L(s, pi, /\\^3)^-1 = {f}")
    if args.expand:
        print(f"  = {f.invpoly}")
    if f != determinant_oracle(p):
        print("warning: product formula disagrees with the determinant", file=sys.stderr)
        return 1
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "lfactor":
            return _lfactor(args)
        cfg = build_config(args)
        suites = list(SUITES) if args.command == "report" or args.suite == "all" else [args.suite]
        cfg.validate()
        if args.command == "report" and not args.json_path:
            raise ValueError("report needs --json PATH")
    except (ValueError, OSError) as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    report = run(cfg, suites)
    if cfg.output == "json":
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(report.text(args.verbose))
    if args.json_path:
        with open(args.json_path, "w", encoding="utf-8") as fh:
            json.dump(report.to_dict(), fh, indent=2)
    return 0 if report.ok else 1
