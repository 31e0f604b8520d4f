"""Exact linear algebra over Q for graded and filtered polynomial pieces.

The workhorse is :class:`EchelonBasis`, an incrementally maintained reduced
row echelon form over the integers. Rows are sparse ``{column: int}`` dicts
kept primitive (content 1, positive pivot), so elimination is fraction free.
A reduced echelon form is unique, which makes kernels and ranks independent
of insertion order. :func:`bareiss_rank` is a dense Bareiss elimination kept
as an independent cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from .polyring import Monomial, Poly, monomials_of_degree, monomials_up_to_degree

Vector = tuple[Fraction, ...]


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class QMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionError("entry array does not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> QMatrix:
        data = tuple(tuple(Fraction(v) for v in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> QMatrix:
        data = [[Fraction(0)] * len(columns) for _ in range(rows)]
        for j, col in enumerate(columns):
            for i, v in enumerate(col):
                data[i][j] = Fraction(v)
        return cls(rows, len(columns), tuple(tuple(r) for r in data))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> QMatrix:
        return cls(rows, cols, tuple((Fraction(0),) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> QMatrix:
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} for {self.cols} columns")
        return tuple(sum((a * b for a, b in zip(row, v) if a and b), Fraction(0)) for row in self.entries)

    def transpose(self) -> QMatrix:
        return QMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else ())


# -- sparse integer rows --------------------------------------------------------

def _primitive(row: dict[int, int], pivot: int) -> dict[int, int]:
    g = reduce(math.gcd, row.values(), 0)
    if row[pivot] < 0:
        g = -g
    if g != 1:
        row = {j: v // g for j, v in row.items()}
    return row


def _integer_row(values: Iterable) -> dict[int, int]:
    """Scale a rational row to a sparse integer row with the same span."""
    items = [(j, Fraction(v)) for j, v in enumerate(values) if v]
    if not items:
        return {}
    den = reduce(math.lcm, (v.denominator for _, v in items), 1)
    return {j: int(v * den) for j, v in items}


def _integer_row_sparse(values: dict[int, Fraction]) -> dict[int, int]:
    items = [(j, Fraction(v)) for j, v in values.items() if v]
    if not items:
        return {}
    den = reduce(math.lcm, (v.denominator for _, v in items), 1)
    return {j: int(v * den) for j, v in items}


class EchelonBasis:
    """Reduced row echelon form of a growing set of rows of fixed width."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict[int, int]] = {}  # pivot column -> row

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _reduce(self, row: dict[int, int]) -> dict[int, int]:
        row = dict(row)
        for p in sorted(c for c in row if c in self.pivots):
            c = row.get(p)
            if not c:
                continue
            b = self.pivots[p]
            bp = b[p]
            g = math.gcd(bp, c)
            mr, mb = bp // g, c // g
            out = {j: v * mr for j, v in row.items()}
            for j, v in b.items():
                w = out.get(j, 0) - mb * v
                if w:
                    out[j] = w
                else:
                    out.pop(j, None)
            row = out
        return row

    def add_sparse(self, row: dict[int, int]) -> bool:
        """Insert an integer row; return True iff the rank grew."""
        if any(j < 0 or j >= self.ncols for j in row):
            raise DimensionError("row entry outside the basis width")
        row = self._reduce(row)
        if not row:
            return False
        p = min(row)
        row = _primitive(row, p)
        # keep the echelon form reduced: clear column p from existing rows
        for q, b in list(self.pivots.items()):
            c = b.get(p)
            if not c:
                continue
            g = math.gcd(row[p], c)
            mr, mb = row[p] // g, c // g
            out = {j: v * mr for j, v in b.items()}
            for j, v in row.items():
                w = out.get(j, 0) - mb * v
                if w:
                    out[j] = w
                else:
                    out.pop(j, None)
            self.pivots[q] = _primitive(out, q)
        self.pivots[p] = row
        return True

    def add(self, values: Sequence) -> bool:
        if len(values) != self.ncols:
            raise DimensionError(f"row of length {len(values)} for width {self.ncols}")
        return self.add_sparse(_integer_row(values))

    def contains(self, values: Sequence) -> bool:
        if len(values) != self.ncols:
            raise DimensionError(f"vector of length {len(values)} for width {self.ncols}")
        return not self._reduce(_integer_row(values))

    def rows(self) -> list[Vector]:
        """Rows of the reduced echelon form with pivot entries scaled to 1."""
        out = []
        for p in sorted(self.pivots):
            b = self.pivots[p]
            piv = b[p]
            vec = [Fraction(0)] * self.ncols
            for j, v in b.items():
                vec[j] = Fraction(v, piv)
            out.append(tuple(vec))
        return out

    def nullspace(self) -> list[Vector]:
        """Basis of {x : r . x = 0 for every row r}, one vector per free column."""
        pivcols = sorted(self.pivots)
        free = [j for j in range(self.ncols) if j not in self.pivots]
        basis = []
        for j in free:
            vec = [Fraction(0)] * self.ncols
            vec[j] = Fraction(1)
            for p in pivcols:
                b = self.pivots[p]
                if j in b:
                    vec[p] = Fraction(-b[j], b[p])
            basis.append(tuple(vec))
        return basis


PRIME = 2**61 - 1


class ModularEchelon:
    """Row echelon form of integer rows reduced modulo a prime.

    The rank mod p never exceeds the rank over Q, so reaching a known upper
    bound mod p settles the rational rank without rational arithmetic.
    """

    def __init__(self, ncols: int, prime: int = PRIME):
        self.ncols = ncols
        self.prime = prime
        self.pivots: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add_sparse(self, row: dict[int, int]) -> bool:
        p = self.prime
        r = {j: v % p for j, v in row.items() if v % p}
        while r:
            j = min(r)
            b = self.pivots.get(j)
            if b is None:
                inv = pow(r[j], -1, p)
                self.pivots[j] = {k: v * inv % p for k, v in r.items()}
                return True
            c = r[j]
            for k, v in b.items():
                w = (r.get(k, 0) - c * v) % p
                if w:
                    r[k] = w
                else:
                    r.pop(k, None)
        return False


def _as_rows(M) -> tuple[list[Sequence], int]:
    if isinstance(M, QMatrix):
        return list(M.entries), M.cols
    rows = [list(r) for r in M]
    return rows, (len(rows[0]) if rows else 0)


def row_echelon(M: QMatrix) -> EchelonBasis:
    eb = EchelonBasis(M.cols)
    for r in M.entries:
        eb.add(r)
    return eb


def kernel_basis(M: QMatrix) -> list[Vector]:
    """Exact basis of the right null space, normalized to a 1 in each free column."""
    return row_echelon(M).nullspace()


def rank(M: QMatrix) -> int:
    return row_echelon(M).rank


def bareiss_rank(M: QMatrix) -> int:
    """Rank by dense Bareiss fraction-free elimination (first nonzero pivot)."""
    if M.rows == 0 or M.cols == 0:
        return 0
    a = []
    for r in M.entries:
        den = reduce(math.lcm, (v.denominator for v in r), 1)
        a.append([int(v * den) for v in r])
    m, n = M.rows, M.cols
    prev = 1
    r = 0
    for k in range(n):
        piv = next((i for i in range(r, m) if a[i][k] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][k]
        for i in range(r + 1, m):
            ai = a[i]
            c = ai[k]
            ar = a[r]
            a[i] = [(p * ai[j] - c * ar[j]) // prev for j in range(n)]
        prev = p
        r += 1
        if r == m:
            break
    return r


def bareiss_determinant(M: QMatrix) -> Fraction:
    if M.rows != M.cols:
        raise DimensionError("determinant needs a square matrix")
    n = M.rows
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    a = []
    for r in M.entries:
        den = reduce(math.lcm, (v.denominator for v in r), 1)
        scale /= den
        a.append([int(v * den) for v in r])
    sign, prev = 1, 1
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        p = a[k][k]
        for i in range(k + 1, n):
            c = a[i][k]
            a[i] = [(p * a[i][j] - c * a[k][j]) // prev for j in range(n)]
        prev = p
    return sign * a[n - 1][n - 1] * scale


def _basis_of(vectors: Sequence[Sequence], width: int | None) -> EchelonBasis:
    if width is None:
        if not vectors:
            raise DimensionError("cannot infer the width of an empty vector set")
        width = len(vectors[0])
    eb = EchelonBasis(width)
    for v in vectors:
        eb.add(v)
    return eb


def in_span(v: Sequence, basis: Sequence[Sequence]) -> bool:
    return _basis_of(basis, len(v)).contains(v)


def span_sum_dim(U: Sequence[Sequence], V: Sequence[Sequence], width: int | None = None) -> int:
    vectors = list(U) + list(V)
    if width is None and not vectors:
        return 0
    return _basis_of(vectors, width).rank


def independent_subset(vectors: Sequence[Sequence], width: int,
                       start: EchelonBasis | None = None) -> list[int]:
    """Indices of a greedy maximal independent subset (independent of ``start``)."""
    eb = start if start is not None else EchelonBasis(width)
    return [i for i, v in enumerate(vectors) if eb.add(v)]


def solve(M: QMatrix, rhs: Sequence) -> Vector | None:
    """One solution of ``M x = rhs`` (free variables set to 0), or None."""
    if len(rhs) != M.rows:
        raise DimensionError("right-hand side has the wrong length")
    eb = EchelonBasis(M.cols + 1)
    for row, b in zip(M.entries, rhs):
        eb.add(tuple(row) + (Fraction(b),))
    if M.cols in eb.pivots:
        return None
    x = [Fraction(0)] * M.cols
    for p, b in eb.pivots.items():
        x[p] = Fraction(b.get(M.cols, 0), b[p])
    return tuple(x)


def sparse_solve(columns: Sequence[dict[int, Fraction]], nrows: int,
                 rhs: dict[int, Fraction]) -> Vector | None:
    """Like :func:`solve`, for a matrix given by sparse columns and a sparse right-hand side."""
    n = len(columns)
    rows: list[dict[int, Fraction]] = [dict() for _ in range(nrows)]
    for j, col in enumerate(columns):
        for i, v in col.items():
            rows[i][j] = v
    for i, v in rhs.items():
        if v:
            rows[i][n] = Fraction(v)
    eb = EchelonBasis(n + 1)
    for r in rows:
        if r:
            eb.add_sparse(_integer_row_sparse(r))
    if n in eb.pivots:
        return None
    x = [Fraction(0)] * n
    for p, b in eb.pivots.items():
        x[p] = Fraction(b.get(n, 0), b[p])
    return tuple(x)


# -- monomial coordinates ----------------------------------------------------------

class MonomialIndex:
    """Coordinates on S_s (mode ``"homogeneous"``) or R_{<=s} (mode ``"filtered"``)."""

    def __init__(self, arity: int, degree: int, mode: str = "homogeneous"):
        if mode not in ("homogeneous", "filtered"):
            raise ValueError(f"unknown mode {mode!r}")
        self.arity = arity
        self.degree = degree
        self.mode = mode
        if mode == "homogeneous":
            self.monomials: list[Monomial] = monomials_of_degree(degree, arity)
        else:
            self.monomials = monomials_up_to_degree(degree, arity)
        self.position = {m: i for i, m in enumerate(self.monomials)}

    def __len__(self) -> int:
        return len(self.monomials)

    def encode(self, p: Poly) -> list[Fraction]:
        vec = [Fraction(0)] * len(self.monomials)
        for m, c in p.terms():
            try:
                vec[self.position[m]] = c
            except KeyError:
                raise DimensionError(f"monomial {m} is outside this piece") from None
        return vec

    def encode_sparse(self, p: Poly, offset: int = 0) -> dict[int, Fraction]:
        out = {}
        for m, c in p.terms():
            try:
                out[offset + self.position[m]] = c
            except KeyError:
                raise DimensionError(f"monomial {m} is outside this piece") from None
        return out

    def decode(self, vec: Sequence) -> Poly:
        if len(vec) != len(self.monomials):
            raise DimensionError("vector length does not match the monomial index")
        return Poly._raw({m: Fraction(c) for m, c in zip(self.monomials, vec) if c}, self.arity)


def encode_tuple(index: MonomialIndex, polys: Sequence[Poly]) -> list[Fraction]:
    """Concatenated coordinates of a tuple of polynomials in ``index``."""
    out: list[Fraction] = []
    for p in polys:
        out.extend(index.encode(p))
    return out


def decode_tuple(index: MonomialIndex, vec: Sequence, k: int) -> list[Poly]:
    n = len(index)
    if len(vec) != k * n:
        raise DimensionError("vector length does not match k copies of the index")
    return [index.decode(vec[i * n:(i + 1) * n]) for i in range(k)]


def sparse_matrix_rank(columns: Sequence[dict[int, Fraction]], nrows: int) -> int:
    """Rank of a matrix given as sparse columns (rank of the transpose)."""
    eb = EchelonBasis(nrows)
    for col in columns:
        eb.add_sparse(_integer_row_sparse(col))
    return eb.rank


def sparse_kernel(columns: Sequence[dict[int, Fraction]], nrows: int) -> list[Vector]:
    """Kernel of the matrix whose j-th column is ``columns[j]``."""
    ncols = len(columns)
    rows: list[dict[int, Fraction]] = [dict() for _ in range(nrows)]
    for j, col in enumerate(columns):
        for i, v in col.items():
            rows[i][j] = v
    eb = EchelonBasis(ncols)
    for r in rows:
        if r:
            eb.add_sparse(_integer_row_sparse(r))
    return eb.nullspace()
