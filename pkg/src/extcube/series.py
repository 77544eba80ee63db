"""The character identity behind the unramified zeta-integral computation.

Series are truncated at a degree D and carry one IrrDecomposition per power
of t.  The left side is pure index bookkeeping; the right side is computed
by multiplying characters and peeling, so the two routes share nothing but
the irreducible characters themselves.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple

from .characters import (
    FormalCharacter,
    IrrDecomposition,
    ch,
    decompose,
    decompose_virtual,
    multiply,
    sym_power,
)
from .pieri import pieri_terms
from .report import CheckReport, CheckRow
from .weights import DominantWeight

MAX_DEGREE = 16


def _check_degree(D: int) -> None:
    if D < 0:
        raise ValueError("truncation degree must be nonnegative")
    if D > MAX_DEGREE:
        raise ValueError(f"truncation degree {D} exceeds the cap {MAX_DEGREE}")


@dataclass
class CharSeries:
    coeffs: List[IrrDecomposition]

    @classmethod
    def zero(cls, D: int) -> "CharSeries":
        return cls([IrrDecomposition() for _ in range(D + 1)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, d: int) -> IrrDecomposition:
        return self.coeffs[d]

    def add_at(self, d: int, dec: IrrDecomposition) -> None:
        if d <= self.degree:
            self.coeffs[d] = self.coeffs[d] + dec

    def __eq__(self, other) -> bool:
        return isinstance(other, CharSeries) and self.coeffs == other.coeffs


def lhs_series(D: int, n3_weight: int = 4) -> CharSeries:
    """sum ch(n2,n3,n1) * sum_{i<=n1} t^{n1+2i+2n2+4n3}.

    ``n3_weight`` replaces the 4 in front of n3; anything but 4 is a
    deliberately broken control.
    """
    _check_degree(D)
    out = CharSeries.zero(D)
    for n3 in range(D // max(n3_weight, 1) + 1):
        for n2 in range(D // 2 + 1):
            for n1 in range(D + 1):
                base = n1 + 2 * n2 + n3_weight * n3
                if base > D:
                    break
                for i in range(n1 + 1):
                    out.add_at(base + 2 * i, IrrDecomposition.of((n2, n3, n1)))
    return out


@lru_cache(maxsize=None)
def product_decomposition(m: int, k: int) -> IrrDecomposition:
    """decompose(ch(0,0,m) * ch(k,0,0)) by character multiplication."""
    return decompose(multiply(ch(0, 0, m), ch(k, 0, 0)))


def rhs_series(D: int) -> CharSeries:
    """(sum ch(0,0,m) t^m)(sum ch(k,0,0) t^2k), truncated at D."""
    _check_degree(D)
    out = CharSeries.zero(D)
    for k in range(D // 2 + 1):
        for m in range(D - 2 * k + 1):
            out.add_at(m + 2 * k, product_decomposition(m, k))
    return out


@dataclass
class DegreeRow:
    deg: int
    status: str
    lhs_dim: int
    rhs_dim: int
    n_irreducibles: int
    mismatch: Optional[str] = None

    def line(self) -> str:
        s = f"deg={self.deg} {self.status} {self.lhs_dim} {self.rhs_dim} {self.n_irreducibles}"
        return s if self.mismatch is None else f"{s} first mismatch {self.mismatch}"


@dataclass
class SeriesReport:
    name: str
    D: int
    rows: List[DegreeRow] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.status == "pass" for r in self.rows)

    def first_failure(self) -> Optional[DegreeRow]:
        return next((r for r in self.rows if r.status != "pass"), None)

    def lines(self) -> List[str]:
        out = [r.line() for r in self.rows]
        out.append(f"{self.name}: {'pass' if self.ok else 'fail'} "
                   f"(coefficients checked through t^{self.D} only)")
        return out

    def to_json(self) -> str:
        return json.dumps({"name": self.name, "D": self.D, "ok": self.ok,
                           "rows": [asdict(r) for r in self.rows]}, indent=2)


def compare_series(name: str, lhs: CharSeries, rhs: CharSeries) -> SeriesReport:
    report = SeriesReport(name, lhs.degree)
    for d in range(lhs.degree + 1):
        a, b = lhs[d], rhs[d]
        diff = a.first_difference(b)
        mismatch = None if diff is None else f"{diff[0]}: {diff[1]} vs {diff[2]}"
        report.rows.append(DegreeRow(d, "pass" if diff is None else "fail",
                                     a.dimension(), b.dimension(), len(a.parts), mismatch))
    return report


def verify_main_identity(D: int = 10, lhs: Optional[Callable[[int], CharSeries]] = None) -> SeriesReport:
    lhs = lhs_series if lhs is None else lhs
    # cheap dimension shadow first; the full comparison follows regardless
    return compare_series("main identity", lhs(D), rhs_series(D))


def dimension_shadow(D: int) -> List[Tuple[int, int, int]]:
    l, r = lhs_series(D), rhs_series(D)
    return [(d, l[d].dimension(), r[d].dimension()) for d in range(D + 1)]


# ---------------------------------------------------------------------------
# symmetric powers and the telescoping sum


def a_k(k: int) -> IrrDecomposition:
    """sum_{2i + k1 = k} ch(k1, 0, 0)."""
    return IrrDecomposition.of(*[(k - 2 * i, 0, 0) for i in range(k // 2 + 1)])


def b_m(m: int) -> IrrDecomposition:
    return IrrDecomposition.of(*[(0, 0, m - 2 * j) for j in range(m // 2 + 1)])


def verify_sym_decompositions(k_max: int = 8, m_max: int = 8) -> CheckReport:
    report = CheckReport("symmetric powers")
    st, spin = ch(1, 0, 0), ch(0, 0, 1)
    for k in range(k_max + 1):
        got = decompose(sym_power(st, k))
        want = a_k(k)
        report.rows.append(CheckRow(f"Sym^{k}(St)", got == want, "" if got == want else f"{got} != {want}"))
    for m in range(m_max + 1):
        got = decompose(sym_power(spin, m))
        want = b_m(m)
        report.rows.append(CheckRow(f"Sym^{m}(Spin)", got == want, "" if got == want else f"{got} != {want}"))
    return report


@lru_cache(maxsize=None)
def _decomposed_product(x: Tuple, y: Tuple) -> IrrDecomposition:
    return decompose(multiply(ch(*x), ch(*y)))


def product_of(a: IrrDecomposition, b: IrrDecomposition) -> IrrDecomposition:
    """Decomposition of a product of (virtual) sums of irreducibles."""
    out = IrrDecomposition()
    for d, m in a.parts.items():
        for e, n in b.parts.items():
            out = out + _decomposed_product(d.k, e.k).scaled(m * n)
    return out


def c_r(r: int) -> IrrDecomposition:
    if r < 0:
        return IrrDecomposition()
    out = IrrDecomposition()
    for k in range(r // 2 + 1):
        out = out + product_of(a_k(k), b_m(r - 2 * k))
    return out


def telescoped(r: int) -> IrrDecomposition:
    return c_r(r) - c_r(r - 2) - c_r(r - 4) + c_r(r - 6)


def pieri_sum(r: int) -> IrrDecomposition:
    """sum_{2k + m = r} ch(k,0,0) * ch(0,0,m)."""
    out = IrrDecomposition()
    for k in range(r // 2 + 1):
        out = out + product_decomposition(r - 2 * k, k)
    return out


def verify_telescoping(r_max: int = 12) -> CheckReport:
    report = CheckReport("telescoping")
    for r in range(r_max + 1):
        lhs, rhs = telescoped(r), pieri_sum(r)
        diff = lhs.first_difference(rhs)
        report.rows.append(CheckRow(f"r={r}", diff is None,
                                    "" if diff is None else f"{diff[0]}: {diff[1]} vs {diff[2]}"))
    return report


def chain_series(D: int) -> CharSeries:
    """(1-t^2)(1-t^4) L(St) L(Spin) with both L-series built from genuine
    symmetric powers, i.e. sum_r (C_r - C_{r-2} - C_{r-4} + C_{r-6}) t^r."""
    _check_degree(D)
    sym_st = [decompose(sym_power(ch(1, 0, 0), k)) for k in range(D // 2 + 1)]
    sym_spin = [decompose(sym_power(ch(0, 0, 1), m)) for m in range(D + 1)]
    c = [IrrDecomposition() for _ in range(D + 1)]
    for k in range(D // 2 + 1):
        for m in range(D - 2 * k + 1):
            c[m + 2 * k] = c[m + 2 * k] + product_of(sym_st[k], sym_spin[m])
    out = CharSeries.zero(D)
    for r in range(D + 1):
        acc = c[r]
        for shift, sign in ((2, -1), (4, -1), (6, 1)):
            if r - shift >= 0:
                acc = acc + c[r - shift].scaled(sign)
        out.coeffs[r] = acc
    return out


def verify_chain(D: int = 10) -> SeriesReport:
    """Left side against the symmetric-power form of the right side."""
    return compare_series("symmetric-power chain", lhs_series(D), chain_series(D))


# ---------------------------------------------------------------------------
# coefficient bookkeeping


def cz3_powers_enumerated(target: Tuple[int, int, int]) -> List[int]:
    """t-powers m + 2k of every Pieri term equal to ch(target), by search."""
    n2, n3, n1 = target
    top = n1 + 2 * n2 + 4 * n3 + 2 * n1
    powers = []
    for k in range(top // 2 + 1):
        for m in range(top - 2 * k + 1):
            for term in pieri_terms(m, k):
                if term.weight.k == (n2, n3, n1):
                    powers.append(m + 2 * k)
    return sorted(powers)


def cz3_powers_solved(target: Tuple[int, int, int]) -> List[int]:
    """Same powers via k = n2+n3+eps+2a, m = n1+2n3, r = n3+a and the parity split."""
    n2, n3, n1 = target
    powers = []
    for eps in (0, 1):
        a_top = n1 // 2 - eps if n1 % 2 == 0 else (n1 - 1) // 2
        for a in range(a_top + 1):
            k, m = n2 + n3 + eps + 2 * a, n1 + 2 * n3
            powers.append(m + 2 * k)
    return sorted(powers)


def cz3_target(target: Tuple[int, int, int]) -> List[int]:
    n2, n3, n1 = target
    return [n1 + 2 * i + 2 * n2 + 4 * n3 for i in range(n1 + 1)]


def verify_cz3_coefficients(bound: int = 4) -> CheckReport:
    report = CheckReport("coefficient bookkeeping")
    for n1 in range(bound + 1):
        for n2 in range(bound + 1):
            for n3 in range(bound + 1):
                tgt = (n2, n3, n1)
                want = cz3_target(tgt)
                enum = cz3_powers_enumerated(tgt)
                solved = cz3_powers_solved(tgt)
                ok = enum == want and solved == want
                detail = "" if ok else f"target {want} enumerated {enum} solved {solved}"
                report.rows.append(CheckRow(f"ch{tgt}", ok, detail))
    return report
