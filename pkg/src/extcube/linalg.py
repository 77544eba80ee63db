"""Sparse matrices over LaurentPoly, Bareiss determinants, char polys."""
from __future__ import annotations

from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

from .laurent import ONE, ZERO, LaurentPoly, NotDivisible, exact_div, var
from .localfactor import LocalFactor

Entry = Tuple[int, int]


def _lp(x) -> LaurentPoly:
    return x if isinstance(x, LaurentPoly) else LaurentPoly.const(x)


class SingularMatrix(ArithmeticError):
    pass


class SparseMatrix:
    """Immutable-by-convention dict-of-entries matrix."""

    __slots__ = ("nrows", "ncols", "data")

    def __init__(self, nrows: int, ncols: int, data: Dict[Entry, LaurentPoly] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.data: Dict[Entry, LaurentPoly] = {}
        for (i, j), v in (data or {}).items():
            v = _lp(v)
            if not v.is_zero():
                if not (0 <= i < nrows and 0 <= j < ncols):
                    raise IndexError((i, j))
                self.data[(i, j)] = v

    # constructors
    @classmethod
    def identity(cls, n: int, scalar=1) -> "SparseMatrix":
        s = _lp(scalar)
        return cls(n, n, {(i, i): s for i in range(n)})

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "SparseMatrix":
        return cls(n, n if m is None else m)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "SparseMatrix":
        n = len(rows)
        m = len(rows[0]) if rows else 0
        return cls(n, m, {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row)})

    @classmethod
    def diag(cls, entries: Sequence) -> "SparseMatrix":
        return cls(len(entries), len(entries), {(i, i): v for i, v in enumerate(entries)})

    @classmethod
    def block_diag(cls, *blocks: "SparseMatrix") -> "SparseMatrix":
        r = c = 0
        data = {}
        for b in blocks:
            for (i, j), v in b.data.items():
                data[(r + i, c + j)] = v
            r += b.nrows
            c += b.ncols
        return cls(r, c, data)

    @classmethod
    def blocks(cls, grid: Sequence[Sequence["SparseMatrix | None"]], sizes: Sequence[int]) -> "SparseMatrix":
        """Square block matrix with ``None`` for zero blocks."""
        offs = [0]
        for s in sizes:
            offs.append(offs[-1] + s)
        data = {}
        for bi, row in enumerate(grid):
            for bj, b in enumerate(row):
                if b is None:
                    continue
                for (i, j), v in b.data.items():
                    data[(offs[bi] + i, offs[bj] + j)] = v
        return cls(offs[-1], offs[-1], data)

    # access
    def __getitem__(self, ij: Entry) -> LaurentPoly:
        return self.data.get(ij, ZERO)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def rows(self) -> List[List[LaurentPoly]]:
        return [[self[i, j] for j in range(self.ncols)] for i in range(self.nrows)]

    def row_entries(self) -> Dict[int, Dict[int, LaurentPoly]]:
        out: Dict[int, Dict[int, LaurentPoly]] = {}
        for (i, j), v in self.data.items():
            out.setdefault(i, {})[j] = v
        return out

    def column(self, j: int) -> Dict[int, LaurentPoly]:
        return {i: v for (i, jj), v in self.data.items() if jj == j}

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "SparseMatrix":
        ri = {r: a for a, r in enumerate(rows)}
        ci = {c: b for b, c in enumerate(cols)}
        return SparseMatrix(len(rows), len(cols), {
            (ri[i], ci[j]): v for (i, j), v in self.data.items() if i in ri and j in ci})

    # arithmetic
    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        orows = other.row_entries()
        out: Dict[Entry, LaurentPoly] = {}
        for (i, k), v in self.data.items():
            for j, w in orows.get(k, {}).items():
                key = (i, j)
                out[key] = out.get(key, ZERO) + v * w
        return SparseMatrix(self.nrows, other.ncols, out)

    def apply(self, vec: Dict[int, LaurentPoly]) -> Dict[int, LaurentPoly]:
        out: Dict[int, LaurentPoly] = {}
        for (i, j), v in self.data.items():
            if j in vec:
                out[i] = out.get(i, ZERO) + v * vec[j]
        return {i: v for i, v in out.items() if not v.is_zero()}

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        out = dict(self.data)
        for k, v in other.data.items():
            out[k] = out.get(k, ZERO) + v
        return SparseMatrix(self.nrows, self.ncols, out)

    def __neg__(self) -> "SparseMatrix":
        return self.scale(-1)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + (-other)

    def scale(self, s) -> "SparseMatrix":
        s = _lp(s)
        return SparseMatrix(self.nrows, self.ncols, {k: v * s for k, v in self.data.items()})

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.ncols, self.nrows, {(j, i): v for (i, j), v in self.data.items()})

    T = property(transpose)

    def __pow__(self, k: int) -> "SparseMatrix":
        if k < 0:
            return self.inverse() ** (-k)
        out = SparseMatrix.identity(self.nrows)
        for _ in range(k):
            out = out @ self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, SparseMatrix) and self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.shape, frozenset(self.data.items())))

    def subs(self, mapping) -> "SparseMatrix":
        return SparseMatrix(self.nrows, self.ncols, {k: v.subs(mapping) for k, v in self.data.items()})

    def trace(self) -> LaurentPoly:
        acc = ZERO
        for i in range(min(self.shape)):
            acc = acc + self[i, i]
        return acc

    def is_diagonal(self) -> bool:
        return all(i == j for i, j in self.data)

    def first_difference(self, other: "SparseMatrix"):
        keys = sorted(set(self.data) | set(other.data))
        for k in keys:
            if self[k] != other[k]:
                return k, self[k], other[k]
        return None

    def inverse(self) -> "SparseMatrix":
        """Gauss-Jordan with unit (single-term) pivots.

        Works for monomial, triangular-with-unit-diagonal and block inputs of
        those kinds; anything else raises :class:`SingularMatrix`.
        """
        n = self.nrows
        if n != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        left = [dict() for _ in range(n)]
        for (i, j), v in self.data.items():
            left[i][j] = v
        right = [{i: ONE} for i in range(n)]
        for col in range(n):
            piv = None
            for r in range(col, n):
                v = left[r].get(col)
                if v is not None and v.is_unit():
                    piv = r
                    break
            if piv is None:
                raise SingularMatrix(f"no unit pivot in column {col}; matrix not invertible over the Laurent ring")
            left[col], left[piv] = left[piv], left[col]
            right[col], right[piv] = right[piv], right[col]
            inv = left[col][col].inverse()
            left[col] = {j: v * inv for j, v in left[col].items()}
            right[col] = {j: v * inv for j, v in right[col].items()}
            for r in range(n):
                if r == col:
                    continue
                f = left[r].get(col)
                if f is None:
                    continue
                for j, v in left[col].items():
                    nv = left[r].get(j, ZERO) - f * v
                    if nv.is_zero():
                        left[r].pop(j, None)
                    else:
                        left[r][j] = nv
                for j, v in right[col].items():
                    nv = right[r].get(j, ZERO) - f * v
                    if nv.is_zero():
                        right[r].pop(j, None)
                    else:
                        right[r][j] = nv
        return SparseMatrix(n, n, {(i, j): v for i, row in enumerate(right) for j, v in row.items()})

    def to_triplets(self) -> str:
        """Sparse dump: ``row col coeff-string`` per nonzero entry."""
        return "".join(f"{i} {j} {v}\n" for (i, j), v in sorted(self.data.items()))

    def __repr__(self) -> str:
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={len(self.data)})"


def components(m: SparseMatrix) -> List[List[int]]:
    """Connected components of the symmetric support graph of a square matrix."""
    n = m.nrows
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in m.data:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
    groups: Dict[int, List[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def bareiss_det(rows: List[List[LaurentPoly]]) -> LaurentPoly:
    """Fraction-free elimination; every division is exact."""
    n = len(rows)
    if n == 0:
        return ONE
    a = [list(r) for r in rows]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if a[k][k].is_zero():
            cands = [r for r in range(k + 1, n) if not a[r][k].is_zero()]
            if not cands:
                return ZERO
            r = min(cands, key=lambda r: len(a[r][k].terms))
            a[k], a[r] = a[r], a[k]
            sign = -sign
        p = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                num = a[i][j] * p
                if not aik.is_zero() and not a[k][j].is_zero():
                    num = num - aik * a[k][j]
                a[i][j] = num if prev == ONE else exact_div(num, prev)
            a[i][k] = ZERO
        prev = p
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


def det(m: SparseMatrix) -> LaurentPoly:
    if m.nrows != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    acc = ONE
    for comp in components(m):
        sub = m.submatrix(comp, comp)
        acc = acc * bareiss_det(sub.rows())
        if acc.is_zero():
            return acc
    return acc


def char_poly(m: SparseMatrix, var_name: str = "T") -> LocalFactor:
    """det(I - T*M) as a LocalFactor of degree <= N.

    Simultaneous row/column permutation into the connected components of the
    support graph leaves the determinant unchanged, so each block is
    eliminated separately.
    """
    if m.nrows != m.ncols:
        raise ValueError("char poly of a non-square matrix")
    t = var(var_name)
    for v in m.data.values():
        if var_name in v.names:
            raise ValueError(f"matrix entries already involve {var_name}")
    shifted = SparseMatrix.identity(m.nrows) - m.scale(t)
    return LocalFactor(det(shifted), var_name)
