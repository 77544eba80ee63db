"""Inverse Euler factors: polynomials in T = q^-s with constant term 1."""
from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, Tuple

from .laurent import ONE, LaurentPoly, var


class LocalFactor:
    """``invpoly`` is det(1 - T * Frob); the L-factor is its reciprocal."""

    __slots__ = ("invpoly", "var", "factors")

    def __init__(self, invpoly: LaurentPoly, var: str = "T",
                 factors: Optional[Sequence[Tuple[LaurentPoly, int]]] = None):
        lo, _ = invpoly.degree_in(var)
        if lo < 0:
            raise ValueError(f"negative power of {var} in inverse factor")
        if invpoly.coefficient(var, 0) != ONE:
            raise ValueError(f"constant term of an inverse factor must be 1, got {invpoly.coefficient(var, 0)}")
        self.invpoly = invpoly
        self.var = var
        # (root, T-power) pairs for display as prod (1 - root * T^power)
        self.factors = list(factors) if factors is not None else None

    @classmethod
    def from_roots(cls, roots: Iterable[Tuple[LaurentPoly, int]], var_name: str = "T") -> "LocalFactor":
        """prod (1 - root * T^power) over ``(root, power)`` pairs."""
        roots = [(r if isinstance(r, LaurentPoly) else LaurentPoly.const(r), p) for r, p in roots]
        t = var(var_name)
        acc = ONE
        for r, p in roots:
            acc = acc * (ONE - r * t ** p)
        return cls(acc, var_name, roots)

    @classmethod
    def one(cls, var_name: str = "T") -> "LocalFactor":
        return cls(ONE, var_name, [])

    def degree(self) -> int:
        return self.invpoly.degree_in(self.var)[1]

    def coefficient(self, k: int) -> LaurentPoly:
        return self.invpoly.coefficient(self.var, k)

    def coefficients(self) -> List[LaurentPoly]:
        return [self.coefficient(k) for k in range(self.degree() + 1)]

    def __mul__(self, other: "LocalFactor") -> "LocalFactor":
        if self.var != other.var:
            raise ValueError(f"cannot multiply factors in {self.var} and {other.var}")
        factors = None
        if self.factors is not None and other.factors is not None:
            factors = self.factors + other.factors
        return LocalFactor(self.invpoly * other.invpoly, self.var, factors)

    def __pow__(self, k: int) -> "LocalFactor":
        out = LocalFactor.one(self.var)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, LocalFactor) and self.var == other.var and self.invpoly == other.invpoly

    def __hash__(self):
        return hash((self.var, self.invpoly))

    def subs(self, mapping) -> "LocalFactor":
        factors = None
        if self.factors is not None and self.var not in mapping:
            factors = [(r.subs(mapping), p) for r, p in self.factors]
        new_var = self.var
        return LocalFactor(self.invpoly.subs(mapping), new_var, factors)

    def in_variable(self, power: int) -> "LocalFactor":
        """Substitute T -> T^power (a place of residue degree ``power``)."""
        t = var(self.var)
        factors = None if self.factors is None else [(r, p * power) for r, p in self.factors]
        return LocalFactor(self.invpoly.subs({self.var: t ** power}), self.var, factors)

    def first_mismatch(self, other: "LocalFactor"):
        """(T-degree, monomial, lhs coeff, rhs coeff) of the first difference."""
        diff = self.invpoly - other.invpoly
        if diff.is_zero():
            return None
        by_deg = diff.coefficients_in(self.var)
        k = min(by_deg)
        exps, _ = max(by_deg[k].items(), key=lambda it: sorted(it[0].items()))
        mono = LaurentPoly.monomial(exps) if exps else ONE
        lhs = _coeff_of(self.coefficient(k), mono)
        rhs = _coeff_of(other.coefficient(k), mono)
        return k, str(mono), lhs, rhs

    def __str__(self) -> str:
        if self.factors is None:
            return str(self.invpoly)
        if not self.factors:
            return "1"
        out = []
        for r, p in self.factors:
            tp = self.var if p == 1 else f"{self.var}^{p}"
            if r.is_constant():
                c = r.constant_value()
                body = f"(1 - {tp})" if c == 1 else f"(1 - {c}*{tp})" if c > 0 else f"(1 + {-c}*{tp})" if c != -1 else f"(1 + {tp})"
            else:
                body = f"(1 - {_paren(r)} {tp})"
            out.append(body)
        return "".join(out)

    def __repr__(self) -> str:
        return f"LocalFactor({self.invpoly}; {self.var})"


def _paren(r: LaurentPoly) -> str:
    s = str(r)
    return f"({s})" if len(r.terms) > 1 else s


def _coeff_of(p: LaurentPoly, mono: LaurentPoly):
    target = dict(next(iter(mono.items()))[0]) if mono.names else {}
    for exps, c in p.items():
        if exps == target:
            return c
    return 0
