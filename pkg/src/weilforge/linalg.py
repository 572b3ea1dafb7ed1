"""Exact rational linear algebra on sparse rows.

Vectors are tuples of :class:`fractions.Fraction`; matrices are lists of rows.
Elimination works on ``dict`` rows (column -> nonzero value), which keeps the
Leibniz systems of derivation spaces cheap even when they have thousands of
equations.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

Vector = Tuple[Fraction, ...]
SparseRow = Dict[int, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_fraction(x) -> Fraction:
    """Parse ints, Fractions and ``"p/q"`` strings. Floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def fraction_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    v = [ZERO] * n
    v[i] = ONE
    return tuple(v)


def is_zero(v: Sequence[Fraction]) -> bool:
    return not any(v)


def add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c: Fraction, v: Sequence[Fraction]) -> Vector:
    return tuple(c * a for a in v)


def to_sparse(v: Sequence[Fraction]) -> SparseRow:
    return {i: a for i, a in enumerate(v) if a}


def to_dense(row: SparseRow, n: int) -> Vector:
    v = [ZERO] * n
    for i, a in row.items():
        v[i] = a
    return tuple(v)


def mat_vec(m: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    nz = [(j, a) for j, a in enumerate(v) if a]
    return tuple(sum((row[j] * a for j, a in nz), ZERO) for row in m)


def mat_mul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> List[Vector]:
    if not a:
        return []
    cols = list(zip(*b)) if b else []
    inner = len(b)
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x]
        out.append(tuple(sum((x * b[k][j] for k, x in nz), ZERO) for j in range(len(cols))))
    if inner == 0:
        return [tuple() for _ in a]
    return out


def mat_add(a, b) -> List[Vector]:
    return [add(r, s) for r, s in zip(a, b)]


def mat_sub(a, b) -> List[Vector]:
    return [sub(r, s) for r, s in zip(a, b)]


def mat_scale(c: Fraction, a) -> List[Vector]:
    return [scale(c, r) for r in a]


def identity(n: int) -> List[Vector]:
    return [unit_vector(n, i) for i in range(n)]


def transpose(m: Sequence[Sequence[Fraction]], ncols: Optional[int] = None) -> List[Vector]:
    if not m:
        return [tuple() for _ in range(ncols or 0)]
    return [tuple(col) for col in zip(*m)]


def freeze(m: Iterable[Iterable]) -> Tuple[Vector, ...]:
    return tuple(tuple(to_fraction(x) for x in row) for row in m)


class Eliminator:
    """Incremental Gaussian elimination over the rationals.

    Rows are reduced against the pivots collected so far as they arrive, so
    redundant equations are discarded immediately. ``pivot_order="last"``
    picks the highest nonzero column as pivot, which is what the ideal code
    wants (leading term = largest basis index in graded order).
    """

    def __init__(self, ncols: int, pivot_order: str = "first"):
        if pivot_order not in ("first", "last"):
            raise ValueError(pivot_order)
        self.ncols = ncols
        self.pivot_order = pivot_order
        self._rows: Dict[int, SparseRow] = {}
        self._order: List[int] = []
        self._reduced = True

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> List[int]:
        return sorted(self._rows)

    def reduce(self, row: SparseRow) -> SparseRow:
        """Return ``row`` minus its projection on the current pivot rows."""
        row = dict(row)
        # pivots are eliminated in the order they were inserted; every stored
        # row is zero on all pivots inserted before it
        for p in self._order:
            c = row.get(p)
            if c:
                for j, a in self._rows[p].items():
                    v = row.get(j, ZERO) - c * a
                    if v:
                        row[j] = v
                    else:
                        row.pop(j, None)
        return row

    def add(self, row) -> bool:
        """Insert a row (dense or sparse). Returns True if the rank grew."""
        if not isinstance(row, dict):
            row = to_sparse(row)
        row = self.reduce(row)
        if not row:
            return False
        p = max(row) if self.pivot_order == "last" else min(row)
        c = row[p]
        if c != ONE:
            row = {j: a / c for j, a in row.items()}
        self._rows[p] = row
        self._order.append(p)
        self._reduced = False
        return True

    def contains(self, row) -> bool:
        if not isinstance(row, dict):
            row = to_sparse(row)
        return not self.reduce(row)

    def _back_substitute(self) -> None:
        if self._reduced:
            return
        done: List[int] = []
        for p in reversed(self._order):
            row = self._rows[p]
            for q in done:
                c = row.get(q)
                if c:
                    for j, a in self._rows[q].items():
                        v = row.get(j, ZERO) - c * a
                        if v:
                            row[j] = v
                        else:
                            row.pop(j, None)
            done.append(p)
        self._reduced = True

    def rref(self) -> List[SparseRow]:
        """Fully reduced rows sorted by pivot column (canonical form)."""
        self._back_substitute()
        return [dict(self._rows[p]) for p in sorted(self._rows)]

    def rref_dense(self) -> List[Vector]:
        return [to_dense(r, self.ncols) for r in self.rref()]

    def nullspace(self) -> List[Vector]:
        """Basis of {x : row . x = 0 for every inserted row}.

        One vector per free column, with a 1 there and 0 on the other free
        columns, so coordinates in this basis are read off the free columns.
        """
        self._back_substitute()
        free = [j for j in range(self.ncols) if j not in self._rows]
        basis = []
        for f in free:
            v = [ZERO] * self.ncols
            v[f] = ONE
            for p, row in self._rows.items():
                a = row.get(f)
                if a:
                    v[p] = -a
            basis.append(tuple(v))
        return basis

    def free_columns(self) -> List[int]:
        return [j for j in range(self.ncols) if j not in self._rows]


def rank(rows: Iterable[Sequence[Fraction]], ncols: int) -> int:
    e = Eliminator(ncols)
    for r in rows:
        e.add(r)
    return e.rank


def nullspace(rows: Iterable[Sequence[Fraction]], ncols: int) -> List[Vector]:
    e = Eliminator(ncols)
    for r in rows:
        e.add(r)
    return e.nullspace()


def solve(m: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> Optional[Vector]:
    """One solution x of m x = b, or None when the system is inconsistent."""
    ncols = len(m[0]) if m else 0
    e = Eliminator(ncols + 1)
    for row, rhs in zip(m, b):
        e.add(tuple(row) + (to_fraction(rhs),))
    rows = e.rref()
    x = [ZERO] * ncols
    for row in rows:
        p = min(row)
        if p == ncols:
            return None
        x[p] = row.get(ncols, ZERO)
    return tuple(x)


def inverse(m: Sequence[Sequence[Fraction]]) -> Optional[List[Vector]]:
    n = len(m)
    e = Eliminator(2 * n)
    for i, row in enumerate(m):
        e.add(tuple(row) + unit_vector(n, i))
    rows = e.rref()
    if e.rank < n or any(min(r) >= n for r in rows):
        return None
    return [to_dense(r, 2 * n)[n:] for r in rows]


def column_space_basis(vectors: Iterable[Sequence[Fraction]], n: int) -> List[Vector]:
    """Canonical echelon basis of span(vectors), pivots on the last coordinate."""
    e = Eliminator(n, pivot_order="last")
    for v in vectors:
        e.add(v)
    return e.rref_dense()
