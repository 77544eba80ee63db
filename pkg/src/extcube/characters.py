"""Formal characters of Spin7: Freudenthal, Weyl quotient, products, peeling.

Characters are sparse maps from doubled-coordinate weights to integer
multiplicities.  Irreducible characters come from Freudenthal's recursion;
:func:`weyl_quotient_character` recomputes them by exact division of the
Weyl alternants and serves as the independent referee.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

from .laurent import LaurentPoly, ONE, exact_div
from .weights import (
    POSITIVE_ROOTS,
    RHO,
    WEYL_GROUP,
    DominantWeight,
    WeightVector,
    dominant_to_epsilon,
    dominant_weights_below,
    height,
    inner,
)

Key = Tuple[int, int, int]
WeightLike = Union[WeightVector, Key]


class NotACharacter(ValueError):
    """Peeling met a negative multiplicity: the input was virtual."""


def _key(w: WeightLike) -> Key:
    return w.c if isinstance(w, WeightVector) else tuple(w)


def _dominant_key(c: Key) -> Key:
    return tuple(sorted((abs(x) for x in c), reverse=True))


class FormalCharacter:
    """Element of the group ring of the B3 weight lattice."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[WeightLike, int] | None = None):
        self._terms: Dict[Key, int] = {}
        for w, m in (terms or {}).items():
            if m:
                k = _key(w)
                WeightVector(k)  # validates parity
                self._terms[k] = self._terms.get(k, 0) + m
        self._terms = {k: m for k, m in self._terms.items() if m}

    @classmethod
    def _wrap(cls, terms: Dict[Key, int]) -> "FormalCharacter":
        obj = cls.__new__(cls)
        obj._terms = {k: m for k, m in terms.items() if m}
        return obj

    @classmethod
    def trivial(cls) -> "FormalCharacter":
        return cls._wrap({(0, 0, 0): 1})

    @classmethod
    def zero(cls) -> "FormalCharacter":
        return cls._wrap({})

    # mapping-ish access
    def __getitem__(self, w: WeightLike) -> int:
        return self._terms.get(_key(w), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[WeightVector]:
        return (WeightVector(k) for k in self._terms)

    def items(self) -> Iterator[Tuple[WeightVector, int]]:
        return ((WeightVector(k), m) for k, m in self._terms.items())

    def raw_items(self):
        return self._terms.items()

    def dimension(self) -> int:
        return sum(self._terms.values())

    def is_weyl_invariant(self) -> bool:
        for k, m in self._terms.items():
            for g in WEYL_GROUP:
                if self._terms.get(g.act(WeightVector(k)).c, 0) != m:
                    return False
        return True

    def dominant_part(self) -> Dict[Key, int]:
        return {k: m for k, m in self._terms.items() if k[0] >= k[1] >= k[2] >= 0}

    def __eq__(self, other) -> bool:
        return isinstance(other, FormalCharacter) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "FormalCharacter") -> "FormalCharacter":
        out = dict(self._terms)
        for k, m in other._terms.items():
            out[k] = out.get(k, 0) + m
        return FormalCharacter._wrap(out)

    def __sub__(self, other: "FormalCharacter") -> "FormalCharacter":
        return self + other.scaled(-1)

    def scaled(self, c: int) -> "FormalCharacter":
        return FormalCharacter._wrap({k: c * m for k, m in self._terms.items()})

    def __mul__(self, other: "FormalCharacter") -> "FormalCharacter":
        return multiply(self, other)

    def __repr__(self) -> str:
        return f"FormalCharacter({len(self._terms)} weights, dim {self.dimension()})"

    def to_lines(self) -> str:
        """Serialize as ``c1 c2 c3 mult`` lines, sorted descending."""
        return "".join(f"{a} {b} {c} {m}\n" for (a, b, c), m in sorted(self._terms.items(), reverse=True))

    @classmethod
    def from_lines(cls, text: str) -> "FormalCharacter":
        terms = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            a, b, c, m = (int(x) for x in line.split())
            terms[(a, b, c)] = terms.get((a, b, c), 0) + m
        return cls(terms)


@dataclass
class IrrDecomposition:
    """Signed multiplicities of irreducibles; genuine when all are positive."""

    parts: Dict[DominantWeight, int] = field(default_factory=dict)

    def __post_init__(self):
        self.parts = {d: m for d, m in self.parts.items() if m}

    @classmethod
    def of(cls, *weights: Tuple[int, int, int], mult: int = 1) -> "IrrDecomposition":
        out: Dict[DominantWeight, int] = {}
        for k in weights:
            d = DominantWeight(tuple(k))
            out[d] = out.get(d, 0) + mult
        return cls(out)

    def is_genuine(self) -> bool:
        return all(m > 0 for m in self.parts.values())

    def is_multiplicity_free(self) -> bool:
        return all(m == 1 for m in self.parts.values())

    def __add__(self, other: "IrrDecomposition") -> "IrrDecomposition":
        out = dict(self.parts)
        for d, m in other.parts.items():
            out[d] = out.get(d, 0) + m
        return IrrDecomposition(out)

    def __sub__(self, other: "IrrDecomposition") -> "IrrDecomposition":
        return self + other.scaled(-1)

    def scaled(self, c: int) -> "IrrDecomposition":
        return IrrDecomposition({d: c * m for d, m in self.parts.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, IrrDecomposition) and self.parts == other.parts

    def dimension(self) -> int:
        from .weights import weyl_dim
        return sum(m * weyl_dim(d) for d, m in self.parts.items())

    def character(self) -> FormalCharacter:
        acc: Dict[Key, int] = defaultdict(int)
        for d, m in self.parts.items():
            for k, v in irreducible_character(d).raw_items():
                acc[k] += m * v
        return FormalCharacter._wrap(acc)

    def first_difference(self, other: "IrrDecomposition"):
        """Largest dominant weight whose multiplicities differ, or None."""
        keys = set(self.parts) | set(other.parts)
        diffs = [d for d in keys if self.parts.get(d, 0) != other.parts.get(d, 0)]
        if not diffs:
            return None
        d = max(diffs, key=lambda x: dominant_to_epsilon(x).c)
        return d, self.parts.get(d, 0), other.parts.get(d, 0)

    def __str__(self) -> str:
        if not self.parts:
            return "0"
        items = sorted(self.parts.items(), key=lambda kv: dominant_to_epsilon(kv[0]).c, reverse=True)
        out = []
        for d, m in items:
            coef = "" if m == 1 else ("-" if m == -1 else f"{m}*")
            out.append(f"{coef}{d}")
        return " + ".join(out).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# irreducible characters


@lru_cache(maxsize=None)
def dominant_multiplicities(d: DominantWeight) -> Dict[Key, int]:
    """Freudenthal's recursion on the dominant chamber."""
    lam = dominant_to_epsilon(d)
    dominant = sorted(dominant_weights_below(lam), key=height, reverse=True)
    known = {mu.c for mu in dominant}
    mult: Dict[Key, int] = {}
    lr = lam + RHO
    norm_top = inner(lr, lr)
    for mu in dominant:
        if mu == lam:
            mult[mu.c] = 1
            continue
        total = 0
        for alpha in POSITIVE_ROOTS:
            k = 1
            while True:
                nu = tuple(x + k * y for x, y in zip(mu.c, alpha.c))
                dk = _dominant_key(nu)
                if dk not in known:
                    break
                total += sum(x * y for x, y in zip(nu, alpha.c)) * mult[dk]
                k += 1
        mr = mu + RHO
        denom = norm_top - inner(mr, mr)
        value = Fraction(2 * total, denom)
        if value.denominator != 1 or value < 0:
            raise ArithmeticError(f"Freudenthal produced {value} at {mu.c} for {d}")
        mult[mu.c] = int(value)
    return mult


def _expand_orbits(dominant: Mapping[Key, int]) -> Dict[Key, int]:
    out: Dict[Key, int] = {}
    for k, m in dominant.items():
        w = WeightVector(k)
        for g in WEYL_GROUP:
            out[g.act(w).c] = m
    return out


@lru_cache(maxsize=None)
def irreducible_character(d: DominantWeight) -> FormalCharacter:
    return FormalCharacter._wrap(_expand_orbits(dominant_multiplicities(d)))


def ch(k1: int, k2: int, k3: int) -> FormalCharacter:
    """Irreducible character with highest weight k1*w1 + k2*w2 + k3*w3."""
    return irreducible_character(DominantWeight((k1, k2, k3)))


U_NAMES = ("u1", "u2", "u3")


@dataclass(frozen=True)
class TorusAssignment:
    """Evaluation e_i -> u_i**2, so a doubled weight c maps to u^c."""

    names: Tuple[str, str, str] = U_NAMES

    def monomial(self, c: Key, coeff: int = 1) -> LaurentPoly:
        return LaurentPoly(self.names, {tuple(c): coeff})


def _alternant(lam_plus_rho: WeightVector, t: TorusAssignment) -> LaurentPoly:
    terms: Dict[Key, int] = {}
    for g in WEYL_GROUP:
        terms[g.act(lam_plus_rho).c] = g.sign()
    return LaurentPoly(t.names, terms)


@lru_cache(maxsize=None)
def weyl_denominator(t: TorusAssignment = TorusAssignment()) -> LaurentPoly:
    return _alternant(RHO, t)


def weyl_quotient_character(d: DominantWeight, t: TorusAssignment = TorusAssignment()) -> LaurentPoly:
    """Independent route: alternant(lambda+rho) / alternant(rho) by exact division."""
    return exact_div(_alternant(dominant_to_epsilon(d) + RHO, t), weyl_denominator(t))


def character_from_poly(p: LaurentPoly, t: TorusAssignment = TorusAssignment()) -> FormalCharacter:
    terms = {}
    for exps, c in p.items():
        if isinstance(c, Fraction):
            raise ValueError(f"non-integral multiplicity {c}")
        terms[tuple(exps.get(n, 0) for n in t.names)] = c
    return FormalCharacter(terms)


# ---------------------------------------------------------------------------
# ring operations


def multiply(a: FormalCharacter, b: FormalCharacter) -> FormalCharacter:
    if len(a) < len(b):
        a, b = b, a
    out: Dict[Key, int] = defaultdict(int)
    bi = list(b.raw_items())
    for (x, y, z), m in a.raw_items():
        for (p, q, r), n in bi:
            out[(x + p, y + q, z + r)] += m * n
    return FormalCharacter._wrap(out)


def adams(c: FormalCharacter, k: int) -> FormalCharacter:
    if k < 1:
        raise ValueError("Adams operation needs k >= 1")
    return FormalCharacter._wrap({tuple(k * x for x in w): m for w, m in c.raw_items()})


def sym_power(c: FormalCharacter, k: int) -> FormalCharacter:
    """Symmetric power via Newton: h_k = (1/k) sum_{i=1..k} psi^i(c) h_{k-i}."""
    if k < 0:
        raise ValueError("symmetric power needs k >= 0")
    h = [{(0, 0, 0): Fraction(1)}]
    powers = [None] + [adams(c, i) for i in range(1, k + 1)]
    for j in range(1, k + 1):
        acc: Dict[Key, Fraction] = defaultdict(Fraction)
        for i in range(1, j + 1):
            for (x, y, z), m in powers[i].raw_items():
                for (p, q, r), n in h[j - i].items():
                    acc[(x + p, y + q, z + r)] += m * n
        h.append({w: v / j for w, v in acc.items() if v})
    out = {}
    for w, v in h[k].items():
        if v.denominator != 1:
            raise ArithmeticError(f"non-integral multiplicity {v} at {w} in Sym^{k}")
        out[w] = int(v)
    return FormalCharacter._wrap(out)


def evaluate(c: FormalCharacter, t: TorusAssignment = TorusAssignment()) -> LaurentPoly:
    return LaurentPoly(t.names, dict(c.raw_items()))


# ---------------------------------------------------------------------------
# decomposition


def _peel(dominant: Dict[Key, int], allow_negative: bool) -> IrrDecomposition:
    rest = dict(dominant)
    parts: Dict[DominantWeight, int] = {}
    while rest:
        top = max(rest)
        m = rest[top]
        if m < 0 and not allow_negative:
            raise NotACharacter(f"negative multiplicity {m} at highest remaining weight {top}")
        d = WeightVector(top).to_dominant_weight()
        parts[d] = m
        for k, v in dominant_multiplicities(d).items():
            nv = rest.get(k, 0) - m * v
            if nv:
                rest[k] = nv
            else:
                rest.pop(k, None)
    return IrrDecomposition(parts)


def decompose(c: FormalCharacter) -> IrrDecomposition:
    """Strip the lexicographically largest dominant weight until nothing is left."""
    return _peel(c.dominant_part(), allow_negative=False)


def decompose_virtual(c: FormalCharacter) -> IrrDecomposition:
    return _peel(c.dominant_part(), allow_negative=True)


def from_decomposition(parts: Mapping[Tuple[int, int, int], int] | IrrDecomposition) -> FormalCharacter:
    if isinstance(parts, IrrDecomposition):
        return parts.character()
    return IrrDecomposition({DominantWeight(tuple(k)): m for k, m in parts.items()}).character()


def sum_characters(chars: Iterable[FormalCharacter]) -> FormalCharacter:
    acc: Dict[Key, int] = defaultdict(int)
    for c in chars:
        for k, m in c.raw_items():
            acc[k] += m
    return FormalCharacter._wrap(acc)


def trivial() -> FormalCharacter:
    return FormalCharacter.trivial()


def sym_generating_coefficients(c: FormalCharacter, degree: int,
                                t: TorusAssignment = TorusAssignment()) -> list:
    """Coefficients of prod_w (1 - x_w T)^-1 up to T^degree, by series inversion.

    Computed from the weight list alone, independent of the Newton recursion.
    """
    # product of (1 - x_w T) as a list of coefficients in T
    poly = [ONE]
    for k, m in c.raw_items():
        x = t.monomial(k)
        for _ in range(m):
            nxt = poly + [LaurentPoly()]
            for j in range(len(poly) - 1, -1, -1):
                nxt[j + 1] = nxt[j + 1] - x * poly[j]
            poly = nxt
    # invert the power series (constant term 1)
    inv = [ONE]
    for j in range(1, degree + 1):
        acc = LaurentPoly()
        for i in range(1, min(j, len(poly) - 1) + 1):
            acc = acc - poly[i] * inv[j - i]
        inv.append(acc)
    return inv
