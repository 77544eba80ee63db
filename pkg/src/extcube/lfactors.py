"""Unramified exterior-cube L-factors of GU(6) from Satake parameters.

All factors are inverse Euler factors in T = q^-s (see LocalFactor).  The
half-twist variable t of the zeta-integral computation is handled through
square-root units u_i with a_i = u_i^2.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple

from .characters import ch, evaluate
from .exterior import LGroupElement, rep_image
from .laurent import ONE, LaurentPoly, var
from .linalg import SparseMatrix, char_poly
from .localfactor import LocalFactor


def _lp(x) -> LaurentPoly:
    return x if isinstance(x, LaurentPoly) else LaurentPoly.const(x)


@dataclass(frozen=True)
class SatakeParam:
    """Inert: a = (a1, a2, a3), split: a = (a1, ..., a6); a0 the similitude value."""

    kind: str
    a: Tuple[LaurentPoly, ...]
    a0: LaurentPoly

    def __post_init__(self):
        if self.kind not in ("inert", "split"):
            raise ValueError(f"kind must be inert or split, not {self.kind!r}")
        want = 3 if self.kind == "inert" else 6
        if len(self.a) != want:
            raise ValueError(f"{self.kind} parameters need {want} entries, got {len(self.a)}")
        a = tuple(_lp(x) for x in self.a)
        a0 = _lp(self.a0)
        for x in a + (a0,):
            if not x.is_unit():
                raise ValueError(f"Satake entry {x} is not a unit")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "a0", a0)

    @classmethod
    def generic(cls, kind: str = "inert") -> "SatakeParam":
        k = 3 if kind == "inert" else 6
        return cls(kind, tuple(var(f"a{i}") for i in range(1, k + 1)), var("a0"))

    def torus_element(self) -> LGroupElement:
        """The Satake parameter as an element of the L-group of GU(6)."""
        if self.kind == "inert":
            return LGroupElement(SparseMatrix.diag(list(self.a) + [ONE] * 3), self.a0, 1)
        return LGroupElement(SparseMatrix.diag(list(self.a)), self.a0, 0)


def _prod(xs) -> LaurentPoly:
    acc = ONE
    for x in xs:
        acc = acc * x
    return acc


def extcube_factor_inert(p: SatakeParam, var_name: str = "T") -> LocalFactor:
    """Eight linear factors a_S a0 over S in {1,2,3}, six quadratic ones."""
    if p.kind != "inert":
        raise ValueError("inert factor needs an inert Satake parameter")
    a1, a2, a3 = p.a
    a0 = p.a0
    roots = []
    for size in (3, 2, 1, 0):
        for s in itertools.combinations((a1, a2, a3), size):
            roots.append((_prod(s) * a0, 1))
    a02 = a0 * a0
    roots += [(a1 * a1 * a2 * a3 * a02, 2), (a1 * a2 * a2 * a3 * a02, 2), (a1 * a2 * a3 * a3 * a02, 2),
              (a1 * a2 * a02, 2), (a2 * a3 * a02, 2), (a1 * a3 * a02, 2)]
    return LocalFactor.from_roots(roots, var_name)


def extcube_factor_split(p: SatakeParam, var_name: str = "T") -> LocalFactor:
    if p.kind != "split":
        raise ValueError("split factor needs a split Satake parameter")
    roots = [(_prod(s) * p.a0, 1) for s in itertools.combinations(p.a, 3)]
    return LocalFactor.from_roots(roots, var_name)


def extcube_factor(p: SatakeParam, var_name: str = "T") -> LocalFactor:
    return extcube_factor_inert(p, var_name) if p.kind == "inert" else extcube_factor_split(p, var_name)


def determinant_oracle(p: SatakeParam, var_name: str = "T") -> LocalFactor:
    """det(1 - T rho(t_pi)) from the explicit 20x20 representation."""
    return char_poly(rep_image(p.torus_element()), var_name)


# ---------------------------------------------------------------------------
# half-twisted factors in t


@dataclass(frozen=True)
class HalfTwist:
    """Square roots u_i of a_i, and the sign of chi'_0 = sign / (u1 u2 u3)."""

    u: Tuple[LaurentPoly, LaurentPoly, LaurentPoly] = field(
        default_factory=lambda: (var("u1"), var("u2"), var("u3")))
    sign: int = 1
    t: str = "t"

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        object.__setattr__(self, "u", tuple(_lp(x) for x in self.u))

    @property
    def a(self) -> Tuple[LaurentPoly, ...]:
        return tuple(x * x for x in self.u)

    @property
    def chi0_prime(self) -> LaurentPoly:
        return (self.u[0] * self.u[1] * self.u[2]).inverse() * self.sign


def spin_factor(h: HalfTwist) -> LocalFactor:
    """Roots chi'_0 * prod_{i in S} a_i over the 8 subsets S."""
    roots = []
    for size in (3, 2, 1, 0):
        for s in itertools.combinations(h.a, size):
            roots.append((_prod(s) * h.chi0_prime, 1))
    return LocalFactor.from_roots(roots, h.t)


def std_factor(h: HalfTwist) -> LocalFactor:
    roots = [(ONE, 2)]
    for x in h.a:
        roots += [(x, 2), (x.inverse(), 2)]
    return LocalFactor.from_roots(roots, h.t)


def spin_character_roots(h: HalfTwist) -> Dict[LaurentPoly, int]:
    """Reciprocal roots of the Spin factor read off from evaluate(ch(0,0,1))."""
    return _character_roots(evaluate(ch(0, 0, 1)), h)


def std_character_roots(h: HalfTwist) -> Dict[LaurentPoly, int]:
    return _character_roots(evaluate(ch(1, 0, 0)), h)


def _character_roots(poly: LaurentPoly, h: HalfTwist) -> Dict[LaurentPoly, int]:
    # evaluate() uses eps_i -> u_i^2 on doubled coordinates, i.e. weight c -> u^c
    out: Dict[LaurentPoly, int] = {}
    mapping = {"u1": h.u[0], "u2": h.u[1], "u3": h.u[2]}
    for exps, c in poly.items():
        mono = LaurentPoly.monomial(exps) if exps else ONE
        out[mono.subs(mapping)] = c
    return out


def factor_roots(f: LocalFactor) -> Dict[Tuple[LaurentPoly, int], int]:
    out: Dict[Tuple[LaurentPoly, int], int] = {}
    for r, p in f.factors or []:
        out[(r, p)] = out.get((r, p), 0) + 1
    return out


@dataclass
class IdentityCheck:
    ok: bool
    lhs: LocalFactor
    rhs: LocalFactor
    mismatch: Optional[tuple] = None

    def message(self) -> str:
        if self.ok:
            return "identity holds"
        k, mono, lhs, rhs = self.mismatch
        return f"mismatch at t^{k}, monomial {mono}: {lhs} != {rhs}"


def extcube_in_t(h: HalfTwist, a0: Optional[LaurentPoly] = None) -> LocalFactor:
    """Inverse of L(s/2 + 1/2, pi (x) chi, /\\^3) written in t.

    Twisting by chi multiplies a0 by chi(varpi) and the shift s -> s/2+1/2
    makes T = q^{-(s+1)/2}; with omega^{1/2} = a0 / chi'_0 this is
    a0 * chi * T = chi'_0 * t, so T -> t chi'_0 / (a0 chi) with chi folded
    into a0.
    """
    a0 = var("a0") if a0 is None else _lp(a0)
    p = SatakeParam("inert", h.a, a0)
    f = extcube_factor_inert(p, "T")
    t = var(h.t)
    poly = f.invpoly.subs({"T": t * h.chi0_prime * a0.inverse()})
    return LocalFactor(poly, h.t)


def verify_lst_spin(h: Optional[HalfTwist] = None, std: Optional[LocalFactor] = None) -> IdentityCheck:
    """inv L(/\\^3) * (1 - t^2) == inv L(Spin) * inv L(Std), exactly in t."""
    h = HalfTwist() if h is None else h
    std = std_factor(h) if std is None else std
    lhs = extcube_in_t(h) * LocalFactor.from_roots([(ONE, 2)], h.t)
    rhs = spin_factor(h) * std
    return IdentityCheck(lhs == rhs, lhs, rhs, lhs.first_mismatch(rhs))


def normalization_factors(w: LaurentPoly, q: LaurentPoly) -> Tuple[LocalFactor, LocalFactor]:
    """Inverse zeta factors (1 - w q^-2 T) and (1 - w^2 q^-2 T^2), w = omega chi^2 (varpi)."""
    w, q = _lp(w), _lp(q)
    qi2 = q.inverse() ** 2
    return (LocalFactor.from_roots([(w * qi2, 1)]), LocalFactor.from_roots([(w * w * qi2, 2)]))


def normalization_in_t(w: LaurentPoly, q: LaurentPoly, t_name: str = "t") -> Tuple[LocalFactor, LocalFactor]:
    """The normalization factors under T = t^2 q / w (t^2 = w q^{-(s+1)})."""
    w, q = _lp(w), _lp(q)
    t = var(t_name)
    sub = {"T": t * t * q * w.inverse()}
    return tuple(LocalFactor(f.invpoly.subs(sub), t_name) for f in normalization_factors(w, q))
