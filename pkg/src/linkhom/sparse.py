"""Exact sparse matrices: rank over fields and Smith normal form over Z.

Matrices are small by the time they reach these routines (the chain
complexes have already been squeezed by unit-pivot elimination), so the
implementations favour correctness and determinism over asymptotics.
F2 work is done on bit-packed rows; Q ranks use fraction-free (Bareiss)
elimination when the matrix is integral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .rings import F2, Ring, NotAField


class SparseMatrix:
    """A rows x cols matrix holding only its nonzero entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimension")
        self.rows = rows
        self.cols = cols
        self.entries = {}
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise ValueError(f"entry ({r},{c}) outside {rows}x{cols}")
                if v:
                    self.entries[(r, c)] = v

    @classmethod
    def from_dense(cls, dense) -> "SparseMatrix":
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        ent = {}
        for r, row in enumerate(dense):
            for c, v in enumerate(row):
                if v:
                    ent[(r, c)] = v
        return cls(rows, cols, ent)

    def to_dense(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(
            self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()}
        )

    def __mul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        by_row = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out = {}
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, ()):
                key = (r, c)
                out[key] = out.get(key, 0) + v * w
        return SparseMatrix(self.rows, other.cols, out)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        return (
            isinstance(other, SparseMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, {len(self.entries)} entries)"


def _rows_as_bitmasks(m: SparseMatrix) -> list[int]:
    """Bit-packed rows of m reduced mod 2."""
    packed = [0] * m.rows
    for (r, c), v in m.entries.items():
        if int(v) & 1:
            packed[r] ^= 1 << c
    return packed


def rank_f2(rows: list[int]) -> int:
    """Rank of bit-packed rows over F2 by Gaussian elimination."""
    rank = 0
    basis: list[int] = []
    for row in rows:
        for b in basis:
            low = b & -b
            if row & low:
                row ^= b
        if row:
            basis.append(row)
            rank += 1
    return rank


def _rank_fp(m: SparseMatrix, p: int) -> int:
    by_row: dict[int, dict[int, int]] = {}
    for (r, c), v in m.entries.items():
        vv = int(v) % p
        if vv:
            by_row.setdefault(r, {})[c] = vv
    rows = [row for row in by_row.values() if row]
    rank = 0
    while rows:
        # shortest row as pivot keeps fill-in low
        rows.sort(key=len)
        piv = rows.pop(0)
        pc = min(piv)
        pinv = pow(piv[pc], -1, p)
        rank += 1
        nxt = []
        for row in rows:
            f = row.get(pc)
            if f:
                mult = (f * pinv) % p
                for c, v in piv.items():
                    nv = (row.get(c, 0) - mult * v) % p
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
            if row:
                nxt.append(row)
        rows = nxt
    return rank


def _rank_exact_q(m: SparseMatrix) -> int:
    rows: list[dict[int, object]] = []
    by_row: dict[int, dict[int, object]] = {}
    for (r, c), v in m.entries.items():
        by_row.setdefault(r, {})[c] = v
    rows = [row for row in by_row.values() if row]
    rank = 0
    while rows:
        rows.sort(key=len)
        piv = rows.pop(0)
        pc = min(piv)
        pv = piv[pc]
        rank += 1
        nxt = []
        for row in rows:
            f = row.get(pc)
            if f:
                mult = Fraction(f) / Fraction(pv)
                for c, v in piv.items():
                    nv = row.get(c, 0) - mult * v
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
            if row:
                nxt.append(row)
        rows = nxt
    return rank


def rank_over_field(m: SparseMatrix, ring: Ring) -> int:
    """Exact rank of m over the given field.

    Raises NotAField over Z; over F2 entries are reduced mod 2 first, so
    integer matrices can be ranked in any characteristic.
    """
    if not ring.is_field:
        raise NotAField("rank_over_field needs a field; use smith_normal_form over Z")
    if ring is F2 or ring.characteristic == 2:
        return rank_f2([r for r in _rows_as_bitmasks(m) if r])
    if ring.characteristic:
        return _rank_fp(m, ring.characteristic)
    return _rank_exact_q(m)


@dataclass(frozen=True)
class SnfResult:
    """Diagonal of a Smith normal form: d1 | d2 | ... , all positive."""

    diagonal: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    @property
    def torsion_orders(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d > 1)


def smith_normal_form(m: SparseMatrix, pivot="min-abs") -> SnfResult:
    """Invariant factors of an integer matrix.

    Standard elimination: pick a pivot (smallest absolute value by
    default; `pivot` is the hook for swapping in a sparser strategy),
    clear its row and column with exact integer row/column operations,
    recurse on the rest, then repair the divisibility chain.
    """
    # dense-on-dict elimination; matrices here are small and integral
    a: dict[tuple[int, int], int] = {k: int(v) for k, v in m.entries.items() if v}
    diag: list[int] = []
    while a:
        if pivot == "min-abs":
            (pr, pc) = min(a, key=lambda k: (abs(a[k]), k))
        else:
            (pr, pc) = pivot(a)
        while True:
            pval = a[(pr, pc)]
            # clear the pivot column with row operations
            col_hits = [r for (r, c) in a if c == pc and r != pr]
            progress = False
            for r in col_hits:
                q, rem = divmod(a[(r, pc)], pval)
                if q:
                    row_p = {c: v for (rr, c), v in a.items() if rr == pr}
                    for c, v in row_p.items():
                        key = (r, c)
                        nv = a.get(key, 0) - q * v
                        if nv:
                            a[key] = nv
                        else:
                            a.pop(key, None)
                if rem:
                    progress = True
            # and the pivot row with column operations
            row_hits = [c for (r, c) in a if r == pr and c != pc]
            for c in row_hits:
                q, rem = divmod(a[(pr, c)], pval)
                if q:
                    col_p = {r: v for (r, cc), v in a.items() if cc == pc}
                    for r, v in col_p.items():
                        key = (r, c)
                        nv = a.get(key, 0) - q * v
                        if nv:
                            a[key] = nv
                        else:
                            a.pop(key, None)
                if rem:
                    progress = True
            if not progress:
                break
            # a remainder smaller than the pivot exists somewhere in the
            # pivot row/column; move to it and continue
            cand = [
                k
                for k in a
                if (k[0] == pr or k[1] == pc) and k != (pr, pc) and a[k]
            ]
            if not cand:
                break
            k = min(cand, key=lambda k: (abs(a[k]), k))
            pr, pc = k
        d = abs(a.pop((pr, pc)))
        # drop the cleared row/column remnants (all zero by now)
        a = {k: v for k, v in a.items() if k[0] != pr and k[1] != pc}
        diag.append(d)
    # repair divisibility: gcd/lcm sweep
    changed = True
    while changed:
        changed = False
        for i in range(len(diag) - 1):
            x, y = diag[i], diag[i + 1]
            if y % x:
                g = math.gcd(x, y)
                diag[i], diag[i + 1] = g, x * y // g
                changed = True
        diag.sort()
    return SnfResult(tuple(diag))


def solve_f2(equations: list[tuple[int, int]], nvars: int, free_bits=None):
    """Solve a linear system over F2 by Gauss-Jordan on bitmask rows.

    equations: list of (mask, rhs) where mask's set bits are the
    variables appearing in the equation.  Returns one solution as a
    bitmask, with free variables taken from `free_bits` (a callable
    var_index -> 0/1, default all zero), or None if inconsistent.
    """
    pivots: dict[int, tuple[int, int]] = {}  # pivot bit index -> (mask, rhs)
    for mask, rhs in equations:
        for pbit, (bm, br) in pivots.items():
            if (mask >> pbit) & 1:
                mask ^= bm
                rhs ^= br
        if not mask:
            if rhs:
                return None
            continue
        pbit = (mask & -mask).bit_length() - 1
        # knock the new pivot out of every existing row
        for obit, (bm, br) in list(pivots.items()):
            if (bm >> pbit) & 1:
                pivots[obit] = (bm ^ mask, br ^ rhs)
        pivots[pbit] = (mask, rhs)
    sol = 0
    if free_bits is not None:
        for v in range(nvars):
            if v not in pivots and free_bits(v):
                sol |= 1 << v
    for pbit, (mask, rhs) in pivots.items():
        # mask now holds the pivot plus free variables only
        parity = bin((mask & ~(1 << pbit)) & sol).count("1") & 1
        if rhs ^ parity:
            sol |= 1 << pbit
    return sol
