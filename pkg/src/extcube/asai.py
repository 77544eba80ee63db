"""Asai factors of an induced representation in the biquadratic tower K/F.

At an unramified place every factor is det(1 - T^f M) for an explicit
Frobenius matrix M, with f the residue degree over F of the place where the
factor lives.  Both sides of the place-by-place identity are built that way,
and the closed forms (inert Asai product, Rankin-Selberg pairing) are kept as
cross-checks.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from .laurent import ONE, LaurentPoly, var
from .linalg import SparseMatrix, char_poly
from .localfactor import LocalFactor


class Pattern(Enum):
    TOTALLY_SPLIT = "TotallySplit"
    SPLIT_IN_E_NOT_K = "SplitInENotK"
    INERT_IN_E_SPLIT_IN_E_PLUS = "InertInESplitInK(E+)"
    INERT_IN_E_SPLIT_IN_L = "InertInESplitInK(L)"


MAIN_PATTERNS = (Pattern.TOTALLY_SPLIT, Pattern.SPLIT_IN_E_NOT_K, Pattern.INERT_IN_E_SPLIT_IN_E_PLUS)


def _lp(x) -> LaurentPoly:
    return x if isinstance(x, LaurentPoly) else LaurentPoly.const(x)


def _diag(b: Sequence[LaurentPoly]) -> SparseMatrix:
    return SparseMatrix.diag(list(b))


def kron(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    data = {}
    for (i, j), v in a.data.items():
        for (k, l), w in b.data.items():
            data[(i * b.nrows + k, j * b.ncols + l)] = v * w
    return SparseMatrix(a.nrows * b.nrows, a.ncols * b.ncols, data)


def asai_matrix(g: SparseMatrix, h: SparseMatrix) -> SparseMatrix:
    """(g, h) x| sigma on C^N (x) C^N: x (x) y -> g y (x) h x."""
    n = g.nrows
    if g.shape != (n, n) or h.shape != (n, n):
        raise ValueError("Asai matrix needs two square matrices of the same size")
    data = {}
    for i in range(n):
        for j in range(n):
            col = i * n + j
            # e_i (x) e_j -> g e_j (x) h e_i
            for (k, jj), gv in g.data.items():
                if jj != j:
                    continue
                for (l, ii), hv in h.data.items():
                    if ii == i:
                        data[(k * n + l, col)] = gv * hv
    return SparseMatrix(n * n, n * n, data)


def _in_degree(f: LocalFactor, degree: int) -> LocalFactor:
    return f if degree == 1 else f.in_variable(degree)


def asai_factor(g: SparseMatrix, h: Optional[SparseMatrix] = None, eta: int = 1, degree: int = 1) -> LocalFactor:
    """det(1 - eta T^degree M) for the Asai Frobenius (g, h) x| sigma at an inert place."""
    if eta not in (1, -1):
        raise ValueError("the twist sign is +1 or -1")
    h = SparseMatrix.identity(g.nrows) if h is None else h
    m = asai_matrix(g, h)
    return _in_degree(char_poly(m.scale(eta)), degree)


def rankin_selberg(a: SparseMatrix, b: SparseMatrix, degree: int = 1) -> LocalFactor:
    """det(1 - T^degree (a (x) b)); also the Asai factor at a split place."""
    return _in_degree(char_poly(kron(a, b)), degree)


def asai_inert_closed_form(b: Sequence[LaurentPoly], eta: int = 1, degree: int = 1) -> LocalFactor:
    """prod_i (1 - eta b_i T) prod_{i<j} (1 - b_i b_j T^2)."""
    roots = [(_lp(x) * eta, degree) for x in b]
    roots += [(_lp(x) * _lp(y), 2 * degree) for x, y in itertools.combinations(b, 2)]
    return LocalFactor.from_roots(roots)


def rankin_selberg_closed_form(b: Sequence[LaurentPoly], c: Sequence[LaurentPoly], degree: int = 1) -> LocalFactor:
    return LocalFactor.from_roots([(_lp(x) * _lp(y), degree) for x in b for y in c])


def induced_frobenius(c: SparseMatrix) -> SparseMatrix:
    """Frobenius of the induction through an unramified quadratic step: ((0, c), (1, 0))."""
    n = c.nrows
    return SparseMatrix.blocks([[None, c], [SparseMatrix.identity(n), None]], [n, n])


# ---------------------------------------------------------------------------
# Satake data


def symbols(prefix: str, n: int) -> Tuple[LaurentPoly, ...]:
    return tuple(var(f"{prefix}{k}") for k in range(1, n + 1))


@dataclass(frozen=True)
class ExtensionSatake:
    """Unramified data of tau_K at the places of K over nu.

    ``places`` maps a place label to its Satake tuple.  For the split-in-E
    pattern the data are square-root units s with Satake s^2.
    """

    pattern: Pattern
    n: int
    places: Dict[str, Tuple[LaurentPoly, ...]]

    @classmethod
    def generic(cls, pattern: Pattern, n: int) -> "ExtensionSatake":
        if n < 1:
            raise ValueError("n must be positive")
        if pattern is Pattern.TOTALLY_SPLIT:
            labels = ("v1", "v2", "w1", "w2")
            return cls(pattern, n, {p: symbols(f"b{p}_", n) for p in labels})
        if pattern is Pattern.SPLIT_IN_E_NOT_K:
            return cls(pattern, n, {p: symbols(f"s{p}_", n) for p in ("V", "W")})
        return cls(pattern, n, {p: symbols(f"c{p}_", n) for p in ("V", "W")})

    def satake(self, place: str) -> Tuple[LaurentPoly, ...]:
        vals = self.places[place]
        if self.pattern is Pattern.SPLIT_IN_E_NOT_K:
            return tuple(s * s for s in vals)
        return vals


def induction_satake(data: ExtensionSatake, sqrt_sign: int = 1) -> Dict[str, Tuple[LaurentPoly, ...]]:
    """Satake multiset of the induced representation at each place of E over nu."""
    p = data.pattern
    if p is Pattern.TOTALLY_SPLIT:
        return {"v_E": data.places["v1"] + data.places["v2"], "w_E": data.places["w1"] + data.places["w2"]}
    if p is Pattern.SPLIT_IN_E_NOT_K:
        out = {}
        for place, label in (("V", "v_E"), ("W", "w_E")):
            roots = tuple(s * sqrt_sign for s in data.places[place])
            out[label] = roots + tuple(-r for r in roots)
        return out
    return {"nu": data.places["V"] + data.places["W"]}


# ---------------------------------------------------------------------------
# the two sides as Frobenius matrices
#
# A factor det(1 - T^2 M) at a place of residue degree 2 is det(1 - T R(M))
# with R(M) = ((0, M), (1, 0)), so each side of the identity is a single
# matrix over the places above nu and the factors multiply as a direct sum.


def residue_lift(m: SparseMatrix, degree: int) -> SparseMatrix:
    if degree == 1:
        return m
    if degree != 2:
        raise ValueError("only residue degrees 1 and 2 occur in a biquadratic tower")
    return induced_frobenius(m)


def lhs_frobenius(data: ExtensionSatake, m: int, sqrt_sign: int = 1, via_matrix: bool = False) -> SparseMatrix:
    """Frobenius for Asai_{E/F} (x) delta^m of the induced representation at nu."""
    p = data.pattern
    if p in (Pattern.TOTALLY_SPLIT, Pattern.SPLIT_IN_E_NOT_K):
        # nu splits in E: Rankin-Selberg of the two E-places, delta trivial
        if via_matrix and p is Pattern.SPLIT_IN_E_NOT_K:
            return kron(induced_frobenius(_diag(data.satake("V"))), induced_frobenius(_diag(data.satake("W"))))
        sat = induction_satake(data, sqrt_sign)
        return kron(_diag(sat["v_E"]), _diag(sat["w_E"]))
    g = _diag(induction_satake(data)["nu"])
    return asai_matrix(g, SparseMatrix.identity(g.nrows)).scale((-1) ** m)


def rhs_frobenius(data: ExtensionSatake, m: int, mutate: bool = False) -> Tuple[SparseMatrix, SparseMatrix]:
    """(Asai_{K/E+} (x) delta^m, Asai_{K/L} (x) delta^m) over the places above nu.

    ``mutate`` is a negative control: the L side reuses the E+ pairing when
    nu splits completely, the residue degree drops to 1 when nu splits in E
    only, and the split side gets the opposite twist when nu is inert in E.
    """
    eta = (-1) ** m
    p = data.pattern
    if p is Pattern.TOTALLY_SPLIT:
        d = {k: _diag(v) for k, v in data.places.items()}
        e_plus = SparseMatrix.block_diag(kron(d["v1"], d["w1"]), kron(d["v2"], d["w2"]))
        ell = SparseMatrix.block_diag(kron(d["v1"], d["w2"]), kron(d["v2"], d["w1"]))
        return e_plus, e_plus if mutate else ell
    cv, cw = _diag(data.satake("V")), _diag(data.satake("W"))
    if p is Pattern.SPLIT_IN_E_NOT_K:
        # nu inert in E+ and in L (residue degree 2), each split in K
        rs = residue_lift(kron(cv, cw), 2)
        if mutate:
            wrong = kron(cv, cw)
            return SparseMatrix.block_diag(wrong, wrong), rs
        return rs, rs
    one = SparseMatrix.identity(data.n)
    s = -eta if mutate else eta
    split_side = SparseMatrix.block_diag(asai_matrix(cv, one).scale(s), asai_matrix(cw, one).scale(s))
    inert_side = residue_lift(kron(cv, cw), 2)
    if p is Pattern.INERT_IN_E_SPLIT_IN_E_PLUS:
        return split_side, inert_side
    return inert_side, split_side


def lhs_factor(data: ExtensionSatake, m: int, sqrt_sign: int = 1, via_matrix: bool = False) -> LocalFactor:
    return char_poly(lhs_frobenius(data, m, sqrt_sign, via_matrix))


def rhs_factors(data: ExtensionSatake, m: int) -> Tuple[LocalFactor, LocalFactor]:
    a, b = rhs_frobenius(data, m)
    return char_poly(a), char_poly(b)


def power_traces(m: SparseMatrix, k_max: Optional[int] = None) -> List[LaurentPoly]:
    """tr(M^k) for k = 1..k_max (default the size of M)."""
    k_max = m.nrows if k_max is None else k_max
    out, p = [], m
    for k in range(k_max):
        out.append(p.trace())
        if k + 1 < k_max:
            p = p @ m
    return out


def same_factor(a: SparseMatrix, b: SparseMatrix) -> Optional[Tuple[int, LaurentPoly, LaurentPoly]]:
    """None iff det(1 - T a) = det(1 - T b); else the first k with tr(a^k) != tr(b^k).

    Over a field of characteristic 0 the power sums tr(M^k), k <= N, fix the
    characteristic polynomial of an N x N matrix (Newton's identities).
    """
    if a.shape != b.shape:
        return (0, LaurentPoly.const(a.nrows), LaurentPoly.const(b.nrows))
    for k, (x, y) in enumerate(zip(power_traces(a), power_traces(b)), start=1):
        if x != y:
            return (k, x, y)
    return None


# full expansion of det(1 - T M) is only attempted up to this size
EXPAND_LIMIT = 16


@dataclass
class LemmaCheck:
    pattern: Pattern
    n: int
    m: int
    sqrt_sign: int
    ok: bool
    mismatch: Optional[tuple] = None
    notes: List[str] = field(default_factory=list)

    def line(self) -> str:
        s = f"{self.pattern.value} n={self.n} m={self.m} sqrt={'+' if self.sqrt_sign > 0 else '-'} "
        s += "pass" if self.ok else f"fail at tr(Frob^{self.mismatch[0]})"
        return s


def verify_lemma62(pattern: Pattern, n: int, m: int, sqrt_sign: int = 1,
                   perturb: bool = False, mutate_rhs: bool = False) -> LemmaCheck:
    """Place-by-place identity.

    ``perturb`` flips the twist on the left and ``mutate_rhs`` breaks the
    right side (see rhs_frobenius); both are negative controls.
    """
    if m not in (0, 1):
        raise ValueError("m is 0 or 1")
    data = ExtensionSatake.generic(pattern, n)
    lhs = lhs_frobenius(data, (m + 1) % 2 if perturb else m, sqrt_sign)
    a, b = rhs_frobenius(data, m, mutate_rhs)
    rhs = SparseMatrix.block_diag(a, b)
    diff = same_factor(lhs, rhs)
    check = LemmaCheck(pattern, n, m, sqrt_sign, diff is None, diff)
    if pattern is Pattern.SPLIT_IN_E_NOT_K and same_factor(lhs, lhs_frobenius(data, m, via_matrix=True)) is not None:
        check.ok = False
        check.notes.append("square-root Satake and induced Frobenius disagree")
    if check.ok and lhs.nrows <= EXPAND_LIMIT:
        if char_poly(lhs) != char_poly(a) * char_poly(b):
            check.ok = False
            check.notes.append("expanded factors disagree")
    if perturb and pattern in (Pattern.TOTALLY_SPLIT, Pattern.SPLIT_IN_E_NOT_K):
        # delta is trivial at split places, so the flip cannot be seen there
        check.notes.append("twist flip is invisible at places split in E")
    return check


def split_twist_trivial(pattern: Pattern, n: int) -> bool:
    """At places split in E the m = 0 and m = 1 factors coincide on both sides."""
    data = ExtensionSatake.generic(pattern, n)
    same_lhs = same_factor(lhs_frobenius(data, 0), lhs_frobenius(data, 1)) is None
    r0 = SparseMatrix.block_diag(*rhs_frobenius(data, 0))
    r1 = SparseMatrix.block_diag(*rhs_frobenius(data, 1))
    return same_lhs and same_factor(r0, r1) is None


def closed_form_checks(n: int) -> List[Tuple[str, bool]]:
    """Matrix factors against the closed-form products."""
    b = symbols("b", n)
    c = symbols("c", n)
    out = []
    for eta in (1, -1):
        out.append((f"inert Asai n={n} eta={eta}",
                    asai_factor(_diag(b), eta=eta) == asai_inert_closed_form(b, eta)))
    out.append((f"Rankin-Selberg n={n}", rankin_selberg(_diag(b), _diag(c)) == rankin_selberg_closed_form(b, c)))
    return out


def lemma_table(ns: Sequence[int] = (1, 2, 3), patterns: Sequence[Pattern] = tuple(Pattern)) -> List[LemmaCheck]:
    out = []
    for p in patterns:
        for m in (0, 1):
            for n in ns:
                signs = (1, -1) if p is Pattern.SPLIT_IN_E_NOT_K else (1,)
                for s in signs:
                    out.append(verify_lemma62(p, n, m, s))
    return out


def summary_table(checks: Sequence[LemmaCheck]) -> List[str]:
    """Pattern x m grid, each cell pass iff every n and sign passes."""
    cells: Dict[Tuple[str, int], bool] = {}
    for c in checks:
        key = (c.pattern.value, c.m)
        cells[key] = cells.get(key, True) and c.ok
    patterns = list(dict.fromkeys(c.pattern.value for c in checks))
    width = max(len(p) for p in patterns)
    lines = [f"{'pattern':<{width}}  m=0   m=1"]
    for p in patterns:
        row = [("pass" if cells.get((p, m)) else "fail") if (p, m) in cells else "-" for m in (0, 1)]
        lines.append(f"{p:<{width}}  {row[0]:<5} {row[1]}")
    return lines
