"""The middle exterior power of GL(2n) and its two extensions to the L-group.

Basis vectors of /\\^n C^{2n} are strictly increasing index tuples over
1..2n in lexicographic order.  ``q`` is the pairing v /\\ w = q(v, w) e_1 /\\ ... /\\ e_2n,
``S`` the map attached to it, and ``A = S * /\\^n(J_2n)`` the image of the
Galois element for the untwisted extension.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .laurent import ONE, ZERO, LaurentPoly
from .linalg import SingularMatrix, SparseMatrix, char_poly
from .localfactor import LocalFactor

WedgeIndex = Tuple[int, ...]

PLAIN = "plain"
OMEGA = "omega"


def perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (0 if there is a repeat)."""
    if len(set(seq)) != len(seq):
        return 0
    inv = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return -1 if inv % 2 else 1


@lru_cache(maxsize=None)
def wedge_basis(n: int) -> Tuple[WedgeIndex, ...]:
    if n < 1:
        raise ValueError("n must be positive")
    return tuple(itertools.combinations(range(1, 2 * n + 1), n))


@lru_cache(maxsize=None)
def basis_position(n: int) -> Dict[WedgeIndex, int]:
    return {v: k for k, v in enumerate(wedge_basis(n))}


def complement(v: WedgeIndex, n: int) -> WedgeIndex:
    return tuple(i for i in range(1, 2 * n + 1) if i not in v)


def q_form(v: WedgeIndex, w: WedgeIndex) -> int:
    if len(v) != len(w):
        raise ValueError("q pairs vectors of the same degree")
    return perm_sign(tuple(v) + tuple(w))


# ---------------------------------------------------------------------------
# forms on C^{2n}


def antidiagonal(n: int) -> SparseMatrix:
    """w_n: ones on the antidiagonal (w_1 = (1), w_n = ((0, w_{n-1}), (1, 0)))."""
    return SparseMatrix(n, n, {(i, n - 1 - i): ONE for i in range(n)})


@lru_cache(maxsize=None)
def j_form(n: int) -> SparseMatrix:
    """J_2n = ((0, w_n), (-w_n, 0))."""
    w = antidiagonal(n)
    return SparseMatrix.blocks([[None, w], [-w, None]], [n, n])


@lru_cache(maxsize=None)
def j_prime(n: int) -> SparseMatrix:
    """J'_n = ((0, J'_{n-1}), ((-1)^{n-1}, 0)), J'_1 = (1)."""
    if n == 1:
        return SparseMatrix.identity(1)
    inner = j_prime(n - 1)
    data = {(i, j + 1): v for (i, j), v in inner.data.items()}
    data[(n - 1, 0)] = LaurentPoly.const((-1) ** (n - 1))
    return SparseMatrix(n, n, data)


# ---------------------------------------------------------------------------
# the exterior power functor


def ext_matrix(g: SparseMatrix, n: Optional[int] = None) -> SparseMatrix:
    """/\\^n(g): entry (v, w) is the minor of g on rows v, columns w.

    Minors are built row by row with a subset DP (Laplace expansion along
    the newest row), skipping zero entries, so sparse inputs stay cheap.
    """
    size = g.nrows
    if g.ncols != size or size % 2:
        raise ValueError("ext_matrix expects a square matrix of even size")
    n = size // 2 if n is None else n
    basis = wedge_basis(n) if 2 * n == size else tuple(itertools.combinations(range(1, size + 1), n))
    pos = {v: k for k, v in enumerate(basis)}
    rows = g.row_entries()
    data: Dict[Tuple[int, int], LaurentPoly] = {}
    for v in basis:
        dp: Dict[Tuple[int, ...], LaurentPoly] = {(): ONE}
        for r in v:
            entries = rows.get(r - 1, {})
            nxt: Dict[Tuple[int, ...], LaurentPoly] = {}
            for cols, val in dp.items():
                for j, a in entries.items():
                    c = j + 1
                    if c in cols:
                        continue
                    greater = sum(1 for x in cols if x > c)
                    new = tuple(sorted(cols + (c,)))
                    term = a * val
                    if greater % 2:
                        term = -term
                    nxt[new] = nxt.get(new, ZERO) + term
            dp = {k: x for k, x in nxt.items() if not x.is_zero()}
            if not dp:
                break
        for w, val in dp.items():
            data[(pos[v], pos[w])] = val
    return SparseMatrix(len(basis), len(basis), data)


@lru_cache(maxsize=None)
def s_matrix(n: int) -> SparseMatrix:
    """S: e_I -> q(e_{I^-}, e_I) e_{I^-}, with I^- the complementary indices."""
    pos = basis_position(n)
    data = {}
    for v in wedge_basis(n):
        c = complement(v, n)
        data[(pos[c], pos[v])] = LaurentPoly.const(q_form(c, v))
    N = len(pos)
    return SparseMatrix(N, N, data)


@lru_cache(maxsize=None)
def a_matrix(n: int) -> SparseMatrix:
    return s_matrix(n) @ ext_matrix(j_form(n))


def galois_matrix(form: SparseMatrix, twist: str = PLAIN) -> SparseMatrix:
    """Image of the Galois element for the L-group attached to ``form``.

    For a general form J the intertwiner is /\\^n(J) * S; it agrees with
    S * /\\^n(J) for J = J_2n.  The omega twist negates it.
    """
    n = form.nrows // 2
    a = ext_matrix(form) @ s_matrix(n)
    if a @ a != SparseMatrix.identity(a.nrows):
        raise ValueError("the Galois image does not square to the identity for this form")
    return a if twist == PLAIN else -a


# ---------------------------------------------------------------------------
# the L-group of GU(2n)


@dataclass(frozen=True)
class LGroupElement:
    """(g, a, sigma^galois) in (GL_2n x GL_1) x| <sigma>."""

    g: SparseMatrix
    a: LaurentPoly
    galois: int = 0

    def __post_init__(self):
        if self.galois not in (0, 1):
            raise ValueError("galois part is 0 (identity) or 1 (sigma)")
        if not isinstance(self.a, LaurentPoly):
            object.__setattr__(self, "a", LaurentPoly.const(self.a))

    @classmethod
    def identity(cls, n: int) -> "LGroupElement":
        return cls(SparseMatrix.identity(2 * n), ONE, 0)


def det_matrix(g: SparseMatrix) -> LaurentPoly:
    from .linalg import det
    return det(g)


def sigma_action(g: SparseMatrix, a: LaurentPoly, form: SparseMatrix) -> Tuple[SparseMatrix, LaurentPoly]:
    """sigma(g, a) = (J tg^-1 J^-1, a det g)."""
    return form @ g.inverse().transpose() @ form.inverse(), a * det_matrix(g)


def lgroup_multiply(x: LGroupElement, y: LGroupElement, form: Optional[SparseMatrix] = None) -> LGroupElement:
    form = j_form(x.g.nrows // 2) if form is None else form
    hg, ha = (y.g, y.a) if not x.galois else sigma_action(y.g, y.a, form)
    return LGroupElement(x.g @ hg, x.a * ha, (x.galois + y.galois) % 2)


def rep_image(x: LGroupElement, n: Optional[int] = None, twist: str = PLAIN,
              form: Optional[SparseMatrix] = None) -> SparseMatrix:
    """a * /\\^n(g) * (+-A)^galois."""
    if twist not in (PLAIN, OMEGA):
        raise ValueError(f"twist must be {PLAIN!r} or {OMEGA!r}")
    n = x.g.nrows // 2 if n is None else n
    try:
        x.g.inverse()
    except SingularMatrix as exc:
        raise SingularMatrix(f"g is not invertible: {exc}") from exc
    m = ext_matrix(x.g, n).scale(x.a)
    if x.galois:
        if form is None:
            a = a_matrix(n)
            a = a if twist == PLAIN else -a
        else:
            a = galois_matrix(form, twist)
        m = m @ a
    return m


# ---------------------------------------------------------------------------
# structure of A


@dataclass(frozen=True)
class EigenStructure:
    count_plus: int
    count_minus: int
    sign: int
    fixed_plus: int
    fixed_minus: int
    paired: int


def eigen_structure(n: int) -> EigenStructure:
    """Eigenvalue counts of A, read off its signed-permutation structure.

    A is a signed permutation of order 2: fixed basis vectors carry their
    sign as eigenvalue, each swapped pair contributes one +1 and one -1.
    """
    a = a_matrix(n)
    basis = wedge_basis(n)
    plus = minus = paired = 0
    for j in range(len(basis)):
        col = a.column(j)
        if len(col) != 1:
            raise ArithmeticError("A is not a signed permutation")
        (i, v), = col.items()
        if i == j:
            if v == ONE:
                plus += 1
            elif v == -ONE:
                minus += 1
            else:
                raise ArithmeticError(f"unexpected diagonal entry {v}")
        else:
            paired += 1
    if paired % 2:
        raise ArithmeticError("odd number of swapped basis vectors")
    if plus and minus:
        raise ArithmeticError("both B+ and B- are nonempty")
    sign = 1 if plus else -1
    return EigenStructure(plus + paired // 2, minus + paired // 2, sign, plus, minus, paired)


def fixed_set_sign(n: int) -> int:
    return (-1) ** (n + n // 2)


def self_complementary(v: WedgeIndex, n: int) -> bool:
    """{i_k} and {2n+1-i_k} partition 1..2n."""
    return not set(v) & {2 * n + 1 - i for i in v}


def extendable(r: Sequence[int], m: int) -> bool:
    """The GL_2n x GL_1 irreducible (r, m) extends iff r_i + r_{2n+1-i} = m."""
    r = list(r)
    if len(r) % 2 or any(r[i] < r[i + 1] for i in range(len(r) - 1)):
        raise ValueError("r must be a weakly decreasing sequence of even length")
    L = len(r)
    return all(r[i] + r[L - 1 - i] == m for i in range(L))


def wedge_vector(n: int, terms: Dict[WedgeIndex, int]) -> Dict[int, LaurentPoly]:
    pos = basis_position(n)
    return {pos[tuple(v)]: LaurentPoly.const(c) for v, c in terms.items() if c}


def stabilizer_check(v0: Dict[int, LaurentPoly], generators: Sequence[LGroupElement], n: int = 3,
                     twist: str = PLAIN) -> bool:
    """True iff every generator's image fixes v0."""
    for x in generators:
        if rep_image(x, n, twist).apply(v0) != v0:
            return False
    return True


def action_sign(v0: Dict[int, LaurentPoly], x: LGroupElement, n: int = 3, twist: str = PLAIN) -> Optional[LaurentPoly]:
    """The scalar c with rep_image(x) v0 = c v0, or None if v0 is not an eigenvector."""
    image = rep_image(x, n, twist).apply(v0)
    k = next(iter(v0))
    if k not in image:
        return None
    from .laurent import exact_div, NotDivisible
    try:
        c = exact_div(image[k], v0[k])
    except NotDivisible:
        return None
    scaled = {i: val * c for i, val in v0.items()}
    return c if scaled == image else None


def ginzburg_rallis_vector() -> Dict[int, LaurentPoly]:
    """Candidate v0 = e1^e2^e3 + e4^e5^e6."""
    return wedge_vector(3, {(1, 2, 3): 1, (4, 5, 6): 1})


def monomial_matrix(perm: Sequence[int], entries: Sequence[LaurentPoly]) -> SparseMatrix:
    """Column j has ``entries[j]`` in row ``perm[j]``."""
    n = len(perm)
    return SparseMatrix(n, n, {(perm[j], j): entries[j] for j in range(n)})


def extcube_char_poly(x: LGroupElement, twist: str = PLAIN) -> LocalFactor:
    return char_poly(rep_image(x, twist=twist))


def dimension(n: int) -> int:
    return comb(2 * n, n)


# ---------------------------------------------------------------------------
# matrix-level checks


def random_monomial_matrix(size: int, rng, max_exp: int = 2, prefix: str = "g") -> SparseMatrix:
    """Signed permutation with Laurent monomial entries in g1..g<size>."""
    from .laurent import var
    perm = list(range(size))
    rng.shuffle(perm)
    entries = []
    for j in range(size):
        x = var(f"{prefix}{j + 1}") ** rng.randint(-max_exp, max_exp)
        entries.append(x if rng.random() < 0.5 else -x)
    return monomial_matrix(perm, entries)


def random_lgroup_element(n: int, rng) -> LGroupElement:
    from .laurent import var
    a = var("a") ** rng.randint(-2, 2)
    return LGroupElement(random_monomial_matrix(2 * n, rng), a, rng.randint(0, 1))


def structure_report(n: int, samples: int = 20, seed: int = 0):
    """All matrix identities for /\\^n(C^2n) at one n, on seeded random monomial data."""
    import random
    from .report import CheckReport
    rng = random.Random(seed * 1000 + n)
    sign = (-1) ** n
    N = dimension(n)
    eye = SparseMatrix.identity(N)
    s, a, wj = s_matrix(n), a_matrix(n), ext_matrix(j_form(n))
    rep = CheckReport(f"exterior power n={n}")
    rep.add("S^2 = (-1)^n I", s @ s == eye.scale(sign))
    rep.add("S = (-1)^n tS", s == s.transpose().scale(sign))
    rep.add("A^2 = I", a @ a == eye)
    rep.add("A = tA", a == a.transpose())
    rep.add("S /\\(J) = /\\(J) S", s @ wj == wj @ s)
    rep.add("/\\(J)^2 = (-1)^n I", wj @ wj == eye.scale(sign))
    rep.add("/\\(J) = (-1)^n t/\\(J)", wj == wj.transpose().scale(sign))
    es = eigen_structure(n)
    rep.add("fixed-set sign", es.sign == fixed_set_sign(n), f"{es.sign} vs {fixed_set_sign(n)}")
    rep.add("count_plus != count_minus", es.count_plus != es.count_minus)
    rep.add("char poly of A from the eigen counts",
            char_poly(a) == LocalFactor.from_roots([(ONE, 1)] * es.count_plus + [(-ONE, 1)] * es.count_minus))
    rep.add("plain and omega sigma-images have different traces", a.trace() != (-a).trace())
    j = j_form(n)
    wedge_ok = rho_ok = func_ok = True
    for _ in range(samples):
        g, h = random_monomial_matrix(2 * n, rng), random_monomial_matrix(2 * n, rng)
        eg = ext_matrix(g)
        d = det_matrix(g)
        wedge_ok &= eg.transpose() @ s @ eg == s.scale(d)
        rho_ok &= ext_matrix(j @ g.inverse().transpose() @ j.inverse()).scale(d) == a @ eg @ a.inverse()
        func_ok &= ext_matrix(g @ h) == eg @ ext_matrix(h)
    rep.add(f"t/\\(g) S /\\(g) = det(g) S on {samples} samples", wedge_ok)
    rep.add(f"det(g) /\\(J tg^-1 J^-1) = A /\\(g) A^-1 on {samples} samples", rho_ok)
    rep.add(f"/\\(gh) = /\\(g) /\\(h) on {samples} samples", func_ok)
    hom_ok = True
    for _ in range(samples):
        x, y = random_lgroup_element(n, rng), random_lgroup_element(n, rng)
        for twist in (PLAIN, OMEGA):
            hom_ok &= rep_image(lgroup_multiply(x, y), n, twist) == rep_image(x, n, twist) @ rep_image(y, n, twist)
    rep.add(f"rho(xy) = rho(x) rho(y) on {samples} pairs, both twists", hom_ok)
    return rep


# the six swapped pairs of A for n = 3 as (source, target, sign); A = tA gives the reverse images
SWAPPED_IMAGES_N3 = (
    ((1, 2, 6), (2, 3, 4), 1), ((1, 3, 6), (2, 3, 5), -1),
    ((1, 4, 6), (2, 4, 5), -1), ((1, 5, 6), (3, 4, 5), 1),
    ((1, 2, 5), (1, 3, 4), -1), ((2, 5, 6), (3, 4, 6), -1),
)


def conjugate_form_factor(x: LaurentPoly, y: LaurentPoly, z: LaurentPoly, a: LaurentPoly) -> LocalFactor:
    """det(1 - T M) for M = a diag(xyz, xy, xz, yz, x, y, z, 1) plus six antidiagonal 2x2 blocks."""
    linear = [x * y * z, x * y, x * z, y * z, x, y, z, ONE]
    blocks = [(x * y, y * z), (x * z, y * z), (x * y, x * z), (x, y), (x, z), (y, z)]
    roots = [(a * v, 1) for v in linear] + [(a * a * p * q, 2) for p, q in blocks]
    return LocalFactor.from_roots(roots)


def explicit_n3_report(negative: bool = False):
    from .laurent import var
    from .report import CheckReport
    rep = CheckReport("explicit images n=3")
    a = a_matrix(3)
    pos = basis_position(3)
    for src, tgt, sign in SWAPPED_IMAGES_N3:
        if negative:
            sign = -sign
        for u, v in ((src, tgt), (tgt, src)):
            got = a.apply({pos[u]: ONE})
            want = {pos[v]: LaurentPoly.const(sign)}
            rep.add(f"A(e{''.join(map(str, u))})", got == want, f"{got} vs {want}")
    for v in wedge_basis(3):
        if self_complementary(v, 3):
            rep.add(f"A fixes e{''.join(map(str, v))}", a.apply({pos[v]: ONE}) == {pos[v]: ONE})
    x, y, z, s = var("x"), var("y"), var("z"), var("a")
    g = SparseMatrix.diag([x, y, z, ONE, ONE, ONE])
    rep.add("sigma-twisted torus image conjugate to the block form",
            extcube_char_poly(LGroupElement(g, s, 1)) == conjugate_form_factor(x, y, z, s))
    return rep
