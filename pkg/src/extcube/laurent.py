"""Sparse multivariate Laurent polynomials with exact rational coefficients.

A :class:`LaurentPoly` is stored as a dense exponent tuple per term over a
sorted tuple of variable names.  Binary operations re-embed both operands
over the union of their variables, so polynomials built in different
"rings" mix freely.

The variable named ``i`` is reserved for a square root of -1; exponents of
``i`` are reduced modulo 2 with the sign rule ``i**2 == -1``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

IMAG = "i"

Coeff = Union[int, Fraction]
Exps = Tuple[int, ...]


class NotDivisible(ArithmeticError):
    """Raised when an exact division has a nonzero remainder."""


def _norm_coeff(c) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


def _canonical(names: Tuple[str, ...], terms: Dict[Exps, Coeff]):
    """Drop zero terms and unused variables; reduce powers of ``i``."""
    if IMAG in names:
        k = names.index(IMAG)
        reduced: Dict[Exps, Coeff] = {}
        for e, c in terms.items():
            p = e[k]
            if p < 0 or p > 1:
                if (p // 2) % 2:
                    c = -c
                e = e[:k] + (p % 2,) + e[k + 1:]
            reduced[e] = reduced.get(e, 0) + c
        terms = reduced
    terms = {e: _norm_coeff(c) for e, c in terms.items() if c != 0}
    used = [k for k in range(len(names)) if any(e[k] for e in terms)]
    if len(used) != len(names):
        names = tuple(names[k] for k in used)
        terms = {tuple(e[k] for k in used): c for e, c in terms.items()}
    return names, terms


class LaurentPoly:
    __slots__ = ("names", "terms", "_hash")

    def __init__(self, names: Iterable[str] = (), terms: Mapping[Exps, Coeff] | None = None,
                 _raw: bool = False):
        names = tuple(names)
        terms = dict(terms or {})
        if not _raw:
            if list(names) != sorted(set(names)):
                order = sorted(range(len(names)), key=lambda k: names[k])
                if len(set(names)) != len(names):
                    raise ValueError(f"duplicate variable names in {names}")
                names = tuple(names[k] for k in order)
                terms = {tuple(e[k] for k in order): c for e, c in terms.items()}
            names, terms = _canonical(names, terms)
        self.names: Tuple[str, ...] = names
        self.terms: Dict[Exps, Coeff] = terms
        self._hash = None

    # -- constructors ---------------------------------------------------
    @classmethod
    def const(cls, c) -> "LaurentPoly":
        if isinstance(c, LaurentPoly):
            return c
        if not isinstance(c, Rational):
            raise TypeError(f"coefficient must be rational, got {type(c).__name__}")
        return cls((), {(): c})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "LaurentPoly":
        return cls((name,), {(power,): 1})

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coeff: Coeff = 1) -> "LaurentPoly":
        names = tuple(sorted(exps))
        return cls(names, {tuple(exps[n] for n in names): coeff})

    # -- structure ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.names

    def constant_value(self) -> Coeff:
        if self.names:
            raise ValueError(f"{self} is not constant")
        return self.terms.get((), 0)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_unit(self) -> bool:
        """A unit of Q[x^+-1, i]: a single term (possibly times a power of i)."""
        return len(self.terms) == 1

    def items(self) -> Iterator[Tuple[Dict[str, int], Coeff]]:
        for e, c in self.terms.items():
            yield {n: p for n, p in zip(self.names, e) if p}, c

    def degree_in(self, name: str) -> Tuple[int, int]:
        """(min, max) exponent of ``name``; (0, 0) if absent."""
        if name not in self.names or not self.terms:
            return (0, 0)
        k = self.names.index(name)
        vals = [e[k] for e in self.terms]
        return min(vals), max(vals)

    def coefficient(self, name: str, power: int) -> "LaurentPoly":
        """Coefficient of ``name**power`` viewed as a polynomial in ``name``."""
        if name not in self.names:
            return self if power == 0 else ZERO
        k = self.names.index(name)
        names = self.names[:k] + self.names[k + 1:]
        terms = {e[:k] + e[k + 1:]: c for e, c in self.terms.items() if e[k] == power}
        return LaurentPoly(names, terms, _raw=False)

    def coefficients_in(self, name: str) -> Dict[int, "LaurentPoly"]:
        if name not in self.names:
            return {0: self} if self.terms else {}
        k = self.names.index(name)
        names = self.names[:k] + self.names[k + 1:]
        buckets: Dict[int, Dict[Exps, Coeff]] = {}
        for e, c in self.terms.items():
            buckets.setdefault(e[k], {})[e[:k] + e[k + 1:]] = c
        return {p: LaurentPoly(names, t) for p, t in buckets.items()}

    # -- embedding ------------------------------------------------------
    def _embed(self, names: Tuple[str, ...]) -> Dict[Exps, Coeff]:
        if names == self.names:
            return self.terms
        pos = [names.index(n) for n in self.names]
        width = len(names)
        out = {}
        for e, c in self.terms.items():
            full = [0] * width
            for k, p in zip(pos, e):
                full[k] = p
            out[tuple(full)] = c
        return out

    @staticmethod
    def _union(a: "LaurentPoly", b: "LaurentPoly") -> Tuple[str, ...]:
        if a.names == b.names:
            return a.names
        return tuple(sorted(set(a.names) | set(b.names)))

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        names = self._union(self, other)
        terms = dict(self._embed(names))
        for e, c in other._embed(names).items():
            terms[e] = terms.get(e, 0) + c
        return LaurentPoly(names, terms, _raw=True)._clean()

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.names, {e: -c for e, c in self.terms.items()}, _raw=True)

    def __sub__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return ZERO
        if not other.names:
            c = other.terms[()]
            return LaurentPoly(self.names, {e: v * c for e, v in self.terms.items()}, _raw=True)._clean()
        if not self.names:
            return other * self
        names = self._union(self, other)
        ta = self._embed(names)
        tb = other._embed(names)
        out: Dict[Exps, Coeff] = {}
        for ea, ca in ta.items():
            for eb, cb in tb.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        if IMAG in names:
            return LaurentPoly(names, out)
        return LaurentPoly(names, out, _raw=True)._clean()

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> "LaurentPoly":
        if len(self.terms) != 1:
            raise NotDivisible(f"{self} is not a unit")
        (e, c), = self.terms.items()
        if IMAG in self.names:
            k = self.names.index(IMAG)
            if e[k]:
                # (c i x^e)^-1 = -i c^-1 x^-e
                ne = tuple(-p if j != k else 1 for j, p in enumerate(e))
                return LaurentPoly(self.names, {ne: -Fraction(1) / c})
        return LaurentPoly(self.names, {tuple(-p for p in e): Fraction(1) / c})

    def __truediv__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other.is_unit():
            return self * other.inverse()
        return exact_div(self, other)

    def _clean(self) -> "LaurentPoly":
        names, terms = _canonical(self.names, self.terms)
        self.names, self.terms = names, terms
        return self

    # -- substitution ---------------------------------------------------
    def subs(self, mapping: Mapping[str, Union["LaurentPoly", int, Fraction]]) -> "LaurentPoly":
        """Substitute polynomials for variables (negative powers need units)."""
        mapping = {k: _coerce(v) for k, v in mapping.items() if k in self.names}
        if not mapping:
            return self
        keep = [k for k, n in enumerate(self.names) if n not in mapping]
        keep_names = tuple(self.names[k] for k in keep)
        powers_cache: Dict[Tuple[str, int], LaurentPoly] = {}

        def power(name: str, p: int) -> LaurentPoly:
            key = (name, p)
            if key not in powers_cache:
                powers_cache[key] = mapping[name] ** p
            return powers_cache[key]

        acc = ZERO
        subs_idx = [(k, n) for k, n in enumerate(self.names) if n in mapping]
        groups: Dict[Exps, Dict[Exps, Coeff]] = {}
        for e, c in self.terms.items():
            key = tuple(e[k] for k, _ in subs_idx)
            groups.setdefault(key, {})[tuple(e[k] for k in keep)] = c
        for key, rest in groups.items():
            factor = ONE
            for (k, n), p in zip(subs_idx, key):
                if p:
                    factor = factor * power(n, p)
            acc = acc + factor * LaurentPoly(keep_names, rest)
        return acc

    def map_coefficients(self, fn) -> "LaurentPoly":
        return LaurentPoly(self.names, {e: fn(c) for e, c in self.terms.items()})

    # -- comparison / hashing -------------------------------------------
    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.names == other.names and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.names, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def sort_key(self):
        return (self.names, sorted(self.terms.items()))

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                n if p == 1 else f"{n}^{p}" for n, p in zip(self.names, e) if p)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, Rational):
        return LaurentPoly.const(x)
    return NotImplemented


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)


def var(name: str, power: int = 1) -> LaurentPoly:
    return LaurentPoly.var(name, power)


def variables(*names: str) -> Tuple[LaurentPoly, ...]:
    return tuple(LaurentPoly.var(n) for n in names)


def const(c) -> LaurentPoly:
    return LaurentPoly.const(c)


def exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact quotient ``a / b`` by leading-term elimination in lex order.

    Lex order on Z^k is a total group order, so leading terms multiply; when
    the division is exact the remainder's leading term strictly decreases
    and every quotient term lies between lead(a)/lead(b) and
    trail(a)/trail(b).  Leaving that window means ``b`` does not divide ``a``.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if a.is_zero():
        return ZERO
    if b.is_unit():
        return a * b.inverse()
    if IMAG in a.names or IMAG in b.names:
        raise NotDivisible("exact division over Q(i) needs a unit divisor")
    names = LaurentPoly._union(a, b)
    ra = dict(a._embed(names))
    tb = b._embed(names)
    lead_b = max(tb)
    lead_cb = tb[lead_b]
    floor = tuple(x - y for x, y in zip(min(ra), min(tb)))
    quotient: Dict[Exps, Coeff] = {}
    while ra:
        lead_r = max(ra)
        t = tuple(x - y for x, y in zip(lead_r, lead_b))
        if t < floor:
            raise NotDivisible(f"{b} does not divide {a}")
        c = Fraction(ra[lead_r]) / lead_cb
        c = _norm_coeff(c)
        quotient[t] = c
        for e, cb in tb.items():
            key = tuple(x + y for x, y in zip(t, e))
            v = ra.get(key, 0) - c * cb
            if v:
                ra[key] = v
            else:
                ra.pop(key, None)
    return LaurentPoly(names, quotient)


_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*)\s*(?:\^\s*(-?\d+))?\s*")


def parse(text: str) -> LaurentPoly:
    """Parse a sum of terms like ``2*a1*a0^-1 - 3/2*x^2 + 1``."""
    text = text.replace(" ", "")
    if not text:
        raise ValueError("empty polynomial")
    terms = re.findall(r"[+-]?[^+-]+", _protect_negative_powers(text))
    acc = ZERO
    for raw in terms:
        raw = raw.replace("~", "-")
        sign = -1 if raw.startswith("-") else 1
        raw = raw.lstrip("+-")
        term = const(sign)
        for factor in raw.split("*"):
            if not factor:
                raise ValueError(f"malformed term in {text!r}")
            if re.fullmatch(r"\d+(/\d+)?", factor):
                term = term * Fraction(factor)
                continue
            m = _TOKEN.fullmatch(factor)
            if not m:
                raise ValueError(f"cannot parse factor {factor!r}")
            term = term * var(m.group(1), int(m.group(2) or 1))
        acc = acc + term
    return acc


def _protect_negative_powers(text: str) -> str:
    return re.sub(r"\^-(\d+)", r"^~\1", text)
