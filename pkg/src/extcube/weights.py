"""Root datum of type B3 (the dual group Spin7) in doubled coordinates.

Weights are stored as integer triples ``(2*l1, 2*l2, 2*l3)`` in the
epsilon basis so spin weights stay integral.  Dominant weights are given by
their coefficients on the fundamental weights w1 = e1, w2 = e1+e2,
w3 = (e1+e2+e3)/2.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import FrozenSet, Iterator, Tuple


@dataclass(frozen=True, order=True)
class WeightVector:
    c: Tuple[int, int, int]

    def __post_init__(self):
        c = tuple(int(x) for x in self.c)
        if len(c) != 3:
            raise ValueError(f"B3 weights have three coordinates, got {c}")
        if not (c[0] - c[1]) % 2 == (c[1] - c[2]) % 2 == 0:
            raise ValueError(f"mixed integral/half-integral coordinates in {c}")
        object.__setattr__(self, "c", c)

    def __add__(self, other: "WeightVector") -> "WeightVector":
        return WeightVector(tuple(x + y for x, y in zip(self.c, other.c)))

    def __sub__(self, other: "WeightVector") -> "WeightVector":
        return WeightVector(tuple(x - y for x, y in zip(self.c, other.c)))

    def __neg__(self) -> "WeightVector":
        return WeightVector(tuple(-x for x in self.c))

    def scale(self, k: int) -> "WeightVector":
        return WeightVector(tuple(k * x for x in self.c))

    def is_spin(self) -> bool:
        return self.c[0] % 2 == 1

    def is_dominant(self) -> bool:
        a, b, c = self.c
        return a >= b >= c >= 0

    def dominant(self) -> "WeightVector":
        """The dominant element of the Weyl orbit: absolute values, sorted down."""
        return WeightVector(tuple(sorted((abs(x) for x in self.c), reverse=True)))

    def to_dominant_weight(self) -> "DominantWeight":
        if not self.is_dominant():
            raise ValueError(f"{self.c} is not dominant")
        a, b, c = self.c
        return DominantWeight(((a - b) // 2, (b - c) // 2, c))


@dataclass(frozen=True, order=True)
class DominantWeight:
    k: Tuple[int, int, int]

    def __post_init__(self):
        k = tuple(int(x) for x in self.k)
        if len(k) != 3 or min(k) < 0:
            raise ValueError(f"dominant weight needs three nonnegative entries, got {k}")
        object.__setattr__(self, "k", k)

    def __str__(self) -> str:
        return "ch({},{},{})".format(*self.k)


def dw(k1: int, k2: int, k3: int) -> DominantWeight:
    return DominantWeight((k1, k2, k3))


def dominant_to_epsilon(d: DominantWeight) -> WeightVector:
    k1, k2, k3 = d.k
    return WeightVector((2 * k1 + 2 * k2 + k3, 2 * k2 + k3, k3))


def epsilon_to_dominant(w: WeightVector) -> DominantWeight:
    return w.to_dominant_weight()


@dataclass(frozen=True)
class WeylElement:
    """Signed permutation: (w.v)[perm[j]] = signs[j] * v[j]."""

    perm: Tuple[int, int, int]
    signs: Tuple[int, int, int]

    def act(self, w: WeightVector) -> WeightVector:
        out = [0, 0, 0]
        for j in range(3):
            out[self.perm[j]] = self.signs[j] * w.c[j]
        return WeightVector(tuple(out))

    def compose(self, other: "WeylElement") -> "WeylElement":
        """self ∘ other."""
        perm = tuple(self.perm[other.perm[j]] for j in range(3))
        signs = tuple(self.signs[other.perm[j]] * other.signs[j] for j in range(3))
        return WeylElement(perm, signs)

    def inverse(self) -> "WeylElement":
        perm = [0, 0, 0]
        signs = [0, 0, 0]
        for j in range(3):
            perm[self.perm[j]] = j
            signs[self.perm[j]] = self.signs[j]
        return WeylElement(tuple(perm), tuple(signs))

    def sign(self) -> int:
        """Determinant of the signed permutation matrix."""
        p = self.perm
        inversions = sum(1 for a in range(3) for b in range(a + 1, 3) if p[a] > p[b])
        s = -1 if inversions % 2 else 1
        return s * self.signs[0] * self.signs[1] * self.signs[2]


IDENTITY = WeylElement((0, 1, 2), (1, 1, 1))

WEYL_GROUP: Tuple[WeylElement, ...] = tuple(
    WeylElement(perm, signs)
    for perm in itertools.permutations(range(3))
    for signs in itertools.product((1, -1), repeat=3)
)

# positive roots in doubled coordinates: e_i +- e_j (i<j) and e_i
POSITIVE_ROOTS: Tuple[WeightVector, ...] = tuple(
    [WeightVector(tuple(2 * ((k == i) + s * (k == j)) for k in range(3)))
     for i in range(3) for j in range(i + 1, 3) for s in (1, -1)]
    + [WeightVector(tuple(2 * (k == i) for k in range(3))) for i in range(3)]
)

RHO = WeightVector((5, 3, 1))


def inner(a: WeightVector, b: WeightVector) -> int:
    """Standard form on epsilon coordinates, times 4 (doubled on both sides)."""
    return sum(x * y for x, y in zip(a.c, b.c))


def weyl_orbit(w: WeightVector) -> FrozenSet[WeightVector]:
    return frozenset(g.act(w) for g in WEYL_GROUP)


@lru_cache(maxsize=None)
def weyl_dim(d: DominantWeight) -> int:
    lam = dominant_to_epsilon(d) + RHO
    num = Fraction(1)
    for a in POSITIVE_ROOTS:
        num *= Fraction(inner(lam, a), inner(RHO, a))
    if num.denominator != 1:
        raise ArithmeticError(f"non-integral Weyl dimension for {d}")
    return int(num)


def is_below(mu: WeightVector, lam: WeightVector) -> bool:
    """mu <= lam in dominance order (lam - mu a nonnegative sum of simple roots)."""
    d = [(x - y) for x, y in zip(lam.c, mu.c)]
    if any(x % 2 for x in d):
        return False
    s = 0
    for x in d:
        s += x
        if s < 0:
            return False
    return True


def dominant_weights_below(lam: WeightVector) -> Iterator[WeightVector]:
    """Every dominant weight mu <= lam (all are weights of V(lam))."""
    top = lam.c[0]
    par = lam.c[0] % 2
    for a in range(par, top + 1, 2):
        for b in range(par, a + 1, 2):
            for c in range(par, b + 1, 2):
                mu = WeightVector((a, b, c))
                if is_below(mu, lam):
                    yield mu


def height(w: WeightVector) -> int:
    """Sum of simple-root coordinates of w (in doubled units)."""
    a, b, c = w.c
    return a + (a + b) + (a + b + c)
