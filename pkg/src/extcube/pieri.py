"""Pieri-type rule for rho(0,0,n) (x) rho(k,0,0) on Spin7.

Three routes to the same decomposition: the closed form summed over
(eps, r, a), Sundaram's horizontal-strip count (even n only), and brute
force via character products.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from .characters import IrrDecomposition, ch, decompose, multiply
from .weights import DominantWeight, weyl_dim


@dataclass(frozen=True)
class Partition3:
    parts: Tuple[int, int, int]

    def __post_init__(self):
        p = tuple(self.parts)
        if len(p) != 3 or not p[0] >= p[1] >= p[2] >= 0:
            raise ValueError(f"not a partition of length <= 3: {p}")
        object.__setattr__(self, "parts", p)

    @classmethod
    def from_weight(cls, d: DominantWeight) -> "Partition3":
        k1, k2, k3 = d.k
        if k3 % 2:
            raise ValueError(f"{d} is a spin weight; it has no associated partition")
        h = k3 // 2
        return cls((k1 + k2 + h, k2 + h, h))

    def size(self) -> int:
        return sum(self.parts)

    def length(self) -> int:
        return sum(1 for p in self.parts if p)

    def contains(self, other: "Partition3") -> bool:
        return all(a >= b for a, b in zip(self.parts, other.parts))


def is_horizontal_strip(outer: Partition3, inner: Partition3) -> bool:
    """outer / inner has at most one box per column: inner interleaves outer."""
    mu, nu = outer.parts, inner.parts
    if not outer.contains(inner):
        return False
    return all(nu[i] >= mu[i + 1] for i in range(2))


@dataclass(frozen=True)
class PieriTerm:
    weight: DominantWeight
    eps: int
    r: int
    a: int


def pieri_terms(n: int, k: int) -> Iterator[PieriTerm]:
    m, odd = divmod(n, 2)
    for eps in (0, 1):
        r_top = min(k - eps, m if odd else m - eps)
        for r in range(0, r_top + 1):
            for a in range(0, min(k - eps - r, r) + 1):
                yield PieriTerm(DominantWeight((k - eps - a - r, r - a, 2 * (m - r + a) + odd)), eps, r, a)


def pieri_closed_form(n: int, k: int) -> IrrDecomposition:
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    out: Dict[DominantWeight, int] = {}
    for term in pieri_terms(n, k):
        out[term.weight] = out.get(term.weight, 0) + 1
    return IrrDecomposition(out)


def brute_force_pieri(n: int, k: int) -> IrrDecomposition:
    return decompose(multiply(ch(0, 0, n), ch(k, 0, 0)))


def _partitions_inside(p: Partition3) -> Iterator[Partition3]:
    a, b, c = p.parts
    for x in range(a + 1):
        for y in range(min(x, b) + 1):
            for z in range(min(y, c) + 1):
                yield Partition3((x, y, z))


def sundaram_multiplicity(alpha: DominantWeight, beta: DominantWeight, k: int) -> int:
    """Count partitions nu inside alpha~ and beta~ with both skews horizontal
    strips and either |skews| = k, or nu of length 3 and |skews| = k - 1."""
    if alpha.k[0] or alpha.k[1] or alpha.k[2] % 2:
        raise ValueError("the count is implemented for alpha = (0,0,2m) only")
    if beta.k[2] % 2:
        raise ValueError(f"{beta} has an odd w3 coefficient; its multiplicity vanishes by parity")
    at = Partition3.from_weight(alpha)
    bt = Partition3.from_weight(beta)
    count = 0
    for nu in _partitions_inside(at):
        if not bt.contains(nu):
            continue
        if not (is_horizontal_strip(at, nu) and is_horizontal_strip(bt, nu)):
            continue
        boxes = at.size() - nu.size() + bt.size() - nu.size()
        if boxes == k or (nu.length() == 3 and boxes == k - 1):
            count += 1
    return count


def sundaram_decomposition(n: int, k: int) -> IrrDecomposition:
    """Sundaram counts over every candidate beta of matching size (n even)."""
    if n % 2:
        raise ValueError("Sundaram counting is implemented for even n")
    alpha = DominantWeight((0, 0, n))
    out: Dict[DominantWeight, int] = {}
    # beta~ is alpha~ plus/minus at most k boxes, so beta1 <= m + k
    m = n // 2
    for b1 in range(m + k + 1):
        for b2 in range(b1 + 1):
            for b3 in range(b2 + 1):
                beta = DominantWeight((b1 - b2, b2 - b3, 2 * b3))
                mult = sundaram_multiplicity(alpha, beta, k)
                if mult:
                    out[beta] = mult
    return IrrDecomposition(out)


@dataclass
class PieriRow:
    n: int
    k: int
    status: str
    lhs_terms: int
    rhs_terms: int
    detail: str = ""

    def line(self) -> str:
        return f"{self.n} {self.k} {self.status} {self.lhs_terms} {self.rhs_terms}"


@dataclass
class PieriReport:
    rows: List[PieriRow] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.status == "pass" for r in self.rows)

    def first_failure(self) -> Optional[PieriRow]:
        return next((r for r in self.rows if r.status != "pass"), None)


def pieri_crosscheck(n_max: int, k_max: int,
                     closed_form: Callable[[int, int], IrrDecomposition] = pieri_closed_form) -> PieriReport:
    """Compare closed form, brute force and (even n) Sundaram on a grid."""
    report = PieriReport()
    for n in range(n_max + 1):
        for k in range(k_max + 1):
            closed = closed_form(n, k)
            brute = brute_force_pieri(n, k)
            problems = []
            if closed != brute:
                diff = closed.first_difference(brute)
                problems.append(f"closed form vs product differ at {diff[0]}: {diff[1]} != {diff[2]}")
            if not brute.is_multiplicity_free():
                problems.append("product decomposition has a multiplicity > 1")
            if brute.dimension() != weyl_dim(DominantWeight((0, 0, n))) * weyl_dim(DominantWeight((k, 0, 0))):
                problems.append("dimension bookkeeping fails")
            if any(d.k[2] % 2 != n % 2 for d in brute.parts):
                problems.append("w3 parity differs from n")
            if n % 2 == 0 and sundaram_decomposition(n, k) != closed:
                problems.append("Sundaram count disagrees with closed form")
            report.rows.append(PieriRow(
                n, k, "fail" if problems else "pass",
                len(closed.parts), len(brute.parts), "; ".join(problems)))
    return report
